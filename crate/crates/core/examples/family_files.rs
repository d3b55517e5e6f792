// Writing and re-reading a family file.

use std::error::Error;

use rwedf::construct::m2_gsedf;
use rwedf::io::{Expectations, Expected, FamilyFile, Metadata};
use rwedf::Rational;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = m2_gsedf(2, 3)?;
    let file = FamilyFile::from_family(&f).with_metadata(Metadata {
        name: Some("gsedf_2_3".into()),
        provenance: None,
        expect: Some(Expectations {
            rwedf: Some(Expected::Value(Rational::new(5, 6))),
            ..Default::default()
        }),
    });
    let text = file.to_json();
    print!("{text}");
    let back = FamilyFile::from_json(&text)?;
    assert_eq!(back.to_json(), text);
    println!("round trip ok");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
