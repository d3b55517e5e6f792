// Classifies every family file shipped in `fixtures/`.

use std::error::Error;
use std::path::Path;

use rwedf::io::{verify_file, FamilyFile};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    for path in paths {
        let file = FamilyFile::read(&path)?;
        let (r, mismatches) = verify_file(&file)?;
        let ell = r.rwedf.as_ref().map_or("-".to_string(), |l| l.to_string());
        println!(
            "{:<24} n={:<3} m={:<3} ℓ={:<6} edf={:?} bimodal={} ok={}",
            file.name().unwrap_or("?"),
            r.n,
            r.m,
            ell,
            r.edf,
            r.bimodal.holds,
            mismatches.is_empty()
        );
        if !mismatches.is_empty() {
            return Err(format!("{}: {mismatches:?}", path.display()).into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
