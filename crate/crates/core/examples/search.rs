// Exhaustive RWEDF search with translation dedup, plus a streaming count.

use std::error::Error;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rwedf::group::{make_cyclic, make_dihedral};
use rwedf::search::{enumerate, for_each_family, Dedup, Requirements, SearchSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let z10 = Arc::new(make_cyclic(10)?);
    let spec = SearchSpec::new(z10, vec![2, 2, 1, 1])
        .require(Requirements::rwedf())
        .dedup(Dedup::Translation);
    let out = enumerate(&spec)?;
    println!(
        "Z10 sizes 2,2,1,1: {} translation classes, {:?}",
        out.families.len(),
        out.stats
    );
    for f in &out.families {
        let sets: Vec<_> = f.sets().iter().map(|s| s.members().to_vec()).collect();
        println!("  {sets:?}");
    }

    let d10 = Arc::new(make_dihedral(5)?);
    let count = AtomicUsize::new(0);
    let stats = for_each_family(
        &SearchSpec::new(d10, vec![3, 3]).require(Requirements::rwedf()),
        |_| {
            count.fetch_add(1, Ordering::Relaxed);
            Ok(())
        },
    )?;
    println!(
        "D10 sizes 3,3: {} RWEDFs after {} nodes",
        count.into_inner(),
        stats.nodes
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
