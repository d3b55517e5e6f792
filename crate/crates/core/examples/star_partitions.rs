// Subgroup *-partitions found by exact cover.

use std::error::Error;

use rwedf::group::{
    make_cyclic, make_dihedral, make_elementary_abelian, make_heisenberg, FiniteGroup,
};
use rwedf::search::enumerate_star_partitions;

fn list(label: &str, g: &FiniteGroup) -> Result<(), Box<dyn Error>> {
    let parts = enumerate_star_partitions(g)?;
    println!("{label}: {} partitions", parts.len());
    for p in parts {
        let orders: Vec<usize> = p.iter().map(|s| s.order()).collect();
        println!("  subgroup orders {orders:?}");
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    list("Z12", &make_cyclic(12)?)?;
    list("Z3 x Z3", &make_elementary_abelian(3, 2)?)?;
    list("Z2^3", &make_elementary_abelian(2, 3)?)?;
    list("D10", &make_dihedral(5)?)?;
    list("Heisenberg(3)", &make_heisenberg(3)?)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
