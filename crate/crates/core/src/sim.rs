//! Monte Carlo play of the weak AMD game.
//!
//! One round: a source `i` is drawn uniformly from `1..m`, an encoding `g`
//! uniformly from `A_i`, and the adversary's shift turns `g` into `δ⁻¹·g`.
//! The adversary wins when the result lands in another source's set. Under
//! the left-difference convention this happens exactly for the pairs
//! counted by `N_i(δ)`, so the expected win rate is `e_δ` in every group.
//!
//! Randomness is ChaCha8 seeded with [`ChaCha8Rng::seed_from_u64`]. Trials
//! are cut into shards of [`SHARD`] rounds; shard `s` against shift `δ` uses
//! stream `δ·2^40 + s` (`δ = 0` for random shifts). A result therefore
//! depends only on `(family, δ, trials, seed)` and not on threads.

use rand::distributions::Uniform;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{difference_profile, e_delta, e_delta_table, r_bound, DisjointFamily};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::rational::Rational;

pub const SHARD: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameResult {
    /// The shift played; `None` when a fresh `δ` was drawn every round.
    pub delta: Option<Element>,
    pub trials: u64,
    pub successes: u64,
    pub empirical_rate: f64,
    pub analytic_rate: Rational,
    pub z_score: f64,
}

impl GameResult {
    fn new(delta: Option<Element>, trials: u64, successes: u64, analytic_rate: Rational) -> Self {
        let empirical_rate = successes as f64 / trials as f64;
        let z_score = z_score(empirical_rate, analytic_rate.to_f64(), trials);
        GameResult {
            delta,
            trials,
            successes,
            empirical_rate,
            analytic_rate,
            z_score,
        }
    }

    /// `|z| ≤ sigmas`.
    pub fn within(&self, sigmas: f64) -> bool {
        self.z_score.abs() <= sigmas
    }
}

/// Deviation of `empirical` from `p` in binomial standard deviations. A
/// degenerate `p` (0 or 1) gives 0 on an exact match and ±∞ otherwise.
pub fn z_score(empirical: f64, p: f64, trials: u64) -> f64 {
    let var = p * (1.0 - p) / trials as f64;
    let diff = empirical - p;
    if var > 0.0 {
        diff / var.sqrt()
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// Lookup tables shared by all rounds.
struct Board<'a> {
    f: &'a DisjointFamily,
    /// `owner[x]`: index of the set holding `x`, or `u32::MAX`.
    owner: Vec<u32>,
    // precomputed samplers; `gen_range` redoes the setup every call
    pick_set: Uniform<usize>,
    pick_member: Vec<Uniform<usize>>,
}

impl<'a> Board<'a> {
    fn new(f: &'a DisjointFamily) -> Self {
        let owner = f
            .group()
            .elements()
            .map(|x| f.owner(x).map_or(u32::MAX, |i| i as u32))
            .collect();
        Board {
            f,
            owner,
            pick_set: Uniform::new(0, f.m()),
            pick_member: f.sets().iter().map(|s| Uniform::new(0, s.len())).collect(),
        }
    }

    /// `hit[g]` for a fixed `δ`: whether `δ⁻¹·g` lies in another set.
    fn hits(&self, delta: Element) -> Vec<bool> {
        let g = self.f.group();
        let inv = g.inverse(delta);
        g.elements()
            .map(|x| {
                let own = self.owner[x as usize];
                let lands = self.owner[g.compose(inv, x) as usize];
                own != u32::MAX && lands != u32::MAX && lands != own
            })
            .collect()
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Element {
        let i = rng.sample(self.pick_set);
        self.f.sets()[i].members()[rng.sample(self.pick_member[i])]
    }
}

fn run_shards(
    trials: u64,
    seed: u64,
    lane: u64,
    round: impl Fn(&mut ChaCha8Rng) -> bool + Sync,
) -> u64 {
    let shards = trials.div_ceil(SHARD);
    (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(lane << 40 | s);
            let len = SHARD.min(trials - s * SHARD);
            (0..len).filter(|_| round(&mut rng)).count() as u64
        })
        .sum()
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidParameters("trials must be ≥ 1".into()));
    }
    Ok(())
}

/// Plays `trials` rounds against the fixed shift `δ`.
pub fn play(f: &DisjointFamily, delta: Element, trials: u64, seed: u64) -> Result<GameResult> {
    check_trials(trials)?;
    let p = difference_profile(f);
    let analytic = e_delta(f, &p, delta)?;
    let board = Board::new(f);
    let hit = board.hits(delta);
    let successes = run_shards(trials, seed, delta as u64, |rng| {
        hit[board.draw(rng) as usize]
    });
    Ok(GameResult::new(Some(delta), trials, successes, analytic))
}

/// The shift with the largest exact `e_δ`, smallest index on ties.
pub fn best_response(f: &DisjointFamily) -> Result<Element> {
    if f.n() < 2 {
        return Err(Error::DegenerateGroup(f.n()));
    }
    let table = e_delta_table(&difference_profile(f));
    let mut best = 0;
    for (i, e) in table.iter().enumerate() {
        if *e > table[best] {
            best = i;
        }
    }
    Ok(best as Element + 1)
}

/// Plays the best response computed from exact `e_δ` values.
pub fn play_best_response(f: &DisjointFamily, trials: u64, seed: u64) -> Result<GameResult> {
    play(f, best_response(f)?, trials, seed)
}

/// Draws a fresh `δ` uniformly from `G*` every round. The analytic rate is
/// the R-bound `(m − 1)T / (m(n − 1))`.
pub fn play_random_delta(f: &DisjointFamily, trials: u64, seed: u64) -> Result<GameResult> {
    check_trials(trials)?;
    let analytic = r_bound(f.n(), f.m(), f.total())?;
    let board = Board::new(f);
    let g = f.group();
    let n = g.order() as Element;
    let pick_delta = Uniform::new(1, n);
    let successes = run_shards(trials, seed, 0, |rng| {
        let delta = rng.sample(pick_delta);
        let x = board.draw(rng);
        let own = board.owner[x as usize];
        let lands = board.owner[g.compose(g.inverse(delta), x) as usize];
        lands != u32::MAX && lands != own
    });
    Ok(GameResult::new(None, trials, successes, analytic))
}

/// Plays every `δ ∈ G*` with the same seed.
pub fn play_all(f: &DisjointFamily, trials: u64, seed: u64) -> Result<Vec<GameResult>> {
    f.group()
        .nonidentity()
        .map(|d| play(f, d, trials, seed))
        .collect()
}
