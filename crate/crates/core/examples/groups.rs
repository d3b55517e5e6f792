// Groups on dense indices: products, subgroups, cosets.

use std::error::Error;

use rwedf::group::{
    closure, enumerate_subgroups, left_cosets, make_cyclic, make_dihedral, make_direct_product,
    make_heisenberg,
};
use rwedf::ElementSet;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let z2 = make_cyclic(2)?;
    let z4 = make_cyclic(4)?;
    let g = make_direct_product(&z2, &z4);
    println!("Z2 x Z4: order {}, abelian {}", g.order(), g.is_abelian());
    println!("(1,3) + (1,2) = {}", g.compose(7, 6));
    println!("descriptor {}", serde_json::to_string(&g.descriptor())?);

    let d10 = make_dihedral(5)?;
    // y = 5, x = 1
    println!(
        "D10: y·x = {}, x·y = {}",
        d10.compose(5, 1),
        d10.compose(1, 5)
    );
    let rotations = closure(&d10, &ElementSet::new(vec![1]));
    println!("<x> = {:?}", rotations.carrier().members());
    for c in left_cosets(&d10, &rotations) {
        println!("  coset {:?}", c.members());
    }

    let subs = enumerate_subgroups(&d10)?;
    let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
    println!("D10 subgroup orders {orders:?}");

    let h = make_heisenberg(3)?;
    let max_order = h.elements().map(|x| h.element_order(x)).max().unwrap_or(1);
    println!("Heisenberg(3): order {}, exponent {max_order}", h.order());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
