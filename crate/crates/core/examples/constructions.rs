// Every explicit construction, printed as a parameter tuple.

use std::error::Error;

use rwedf::analysis::DisjointFamily;
use rwedf::classify::classify;
use rwedf::construct::*;

fn show(label: &str, f: &DisjointFamily) -> Result<(), Box<dyn Error>> {
    let r = classify(f)?;
    let sizes: Vec<String> = r.sizes.iter().map(|k| k.to_string()).collect();
    let ell = r.rwedf.map_or("-".into(), |l| l.to_string());
    println!("{label:<28} ({},{}; {}; {ell})", r.n, r.m, sizes.join(","));
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    show("cyclotomic q=13", &cyclotomic_squares(13)?)?;
    show("cyclotomic q=9", &cyclotomic_squares(9)?)?;
    show("m2_sedf k=3", &m2_sedf(3)?)?;
    show("m2_edf k=3", &m2_edf(3)?)?;
    show("m2_gsedf 2,3", &m2_gsedf(2, 3)?)?;
    show(
        "two prime powers 3,1,2,2",
        &two_prime_power_construction(3, 1, 2, 2)?,
    )?;
    show("desarguesian 2,2,2", &desarguesian_star_partition(2, 2, 2)?)?;
    show("heisenberg p=3", &heisenberg_partition(3)?)?;
    show("dihedral n=5", &dihedral_star_partition(5)?)?;
    let (g, d) = f21_fixture()?;
    show("F21 complement pair", &complement_pair(&g, &d)?)?;
    show("F21 singletons", &singletons_from_difference_set(&g, &d)?)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
