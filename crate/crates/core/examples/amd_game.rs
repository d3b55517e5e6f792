// Simulated weak AMD game against fixed, best and random shifts.

use std::error::Error;

use rwedf::analysis::DisjointFamily;
use rwedf::group::make_cyclic;
use rwedf::sim::{play, play_best_response, play_random_delta};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let z8 = make_cyclic(8)?;
    let f = DisjointFamily::from_vecs(&z8, &[vec![0, 1, 3], vec![4, 5, 7], vec![2, 6]])?;
    let trials = 100_000;
    for d in [1, 4] {
        let r = play(&f, d, trials, 42)?;
        println!(
            "δ={d}: {:.4} vs e_δ = {} (z = {:.2})",
            r.empirical_rate, r.analytic_rate, r.z_score
        );
    }
    let best = play_best_response(&f, trials, 42)?;
    println!(
        "best δ={:?}: {:.4} vs {}",
        best.delta, best.empirical_rate, best.analytic_rate
    );
    let random = play_random_delta(&f, trials, 42)?;
    println!(
        "random δ: {:.4} vs R-bound {}",
        random.empirical_rate, random.analytic_rate
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
