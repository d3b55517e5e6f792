// GF(p^a) arithmetic and the squares / non-squares split.

use std::error::Error;

use rwedf::field::FieldGF;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for q in [5, 9, 13, 25] {
        let f = FieldGF::with_order(q)?;
        let primitive = (1..f.order()).find(|&x| f.multiplicative_order(x) == f.order() - 1);
        println!(
            "GF({q}): modulus {:?}, primitive {:?}, squares {:?}",
            f.modulus(),
            primitive,
            f.squares()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
