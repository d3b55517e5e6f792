// External difference counts N_i(δ), e_δ and the R-bound for one family.

use std::error::Error;

use rwedf::analysis::{
    difference_profile, e_delta_table, e_hat, is_bimodal, r_bound, DisjointFamily,
};
use rwedf::group::make_cyclic;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let z10 = make_cyclic(10)?;
    let f = DisjointFamily::from_vecs(&z10, &[vec![0], vec![5], vec![1, 9], vec![2, 3]])?;
    let p = difference_profile(&f);

    println!("N_i(δ) as CSV:");
    p.write_csv(std::io::stdout())?;

    let e = e_delta_table(&p);
    for (d, v) in p.deltas().zip(&e) {
        println!("e_{d} = {v}");
    }
    println!(
        "ê = {}, R-bound = {}",
        e_hat(&f),
        r_bound(f.n(), f.m(), f.total())?
    );

    let b = is_bimodal(&p);
    if let Some(w) = b.witness {
        println!("not bimodal: N_{}({}) = {}", w.set + 1, w.delta, w.count);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
