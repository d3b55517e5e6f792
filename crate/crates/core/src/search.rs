//! Exhaustive enumeration of disjoint families with prescribed set sizes.
//!
//! Families are generated canonically: sets are ordered by size (largest
//! first), each set is filled with ascending elements, and among
//! consecutive interchangeable sets (same size and, for WEDF searches, same
//! weight) the least elements increase. Every unordered family therefore
//! appears exactly once, and the output is sorted lexicographically.
//!
//! External difference counts are maintained incrementally. Any requirement
//! that fixes a weighted column sum (RWEDF, WEDF, EDF) or a row constant
//! (SEDF, GSEDF) has its value determined by the sizes alone, and counts only
//! grow as elements are placed, so a partial family exceeding that value in
//! any column is cut.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    difference_profile, is_bimodal, validate_weights, DifferenceProfile, DisjointFamily,
};
use crate::classify::{check_edf, check_gsedf, check_rwedf, check_sedf, check_wedf};
use crate::error::{Error, Result};
use crate::group::{enumerate_subgroups_bounded, Element, ElementSet, FiniteGroup, Subgroup};
use crate::rational::Rational;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_FULL_ENUMERATION_BOUND: usize = 24;
pub const STAR_PARTITION_BOUND: usize = 128;

/// Classification filters; a family is reported when it passes all of them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Requirements {
    pub rwedf: bool,
    pub bimodal: bool,
    pub edf: bool,
    pub sedf: bool,
    pub gsedf: bool,
    /// Weights in the order of the spec's `sizes`.
    pub wedf: Option<Vec<Rational>>,
    /// Sets partition `G*` and each set plus the identity is a subgroup.
    pub star_partition: bool,
}

impl Requirements {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn rwedf() -> Self {
        Requirements {
            rwedf: true,
            ..Self::default()
        }
    }

    pub fn bimodal() -> Self {
        Requirements {
            bimodal: true,
            ..Self::default()
        }
    }

    /// Parses a comma-separated flag list such as `rwedf,bimodal`.
    pub fn parse_flags(flags: &str) -> Result<Self> {
        let mut r = Self::default();
        for flag in flags.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match flag {
                "rwedf" => r.rwedf = true,
                "bimodal" => r.bimodal = true,
                "edf" => r.edf = true,
                "sedf" => r.sedf = true,
                "gsedf" => r.gsedf = true,
                "star_partition" | "star-partition" => r.star_partition = true,
                "none" | "all" => {}
                other => {
                    return Err(Error::InvalidParameters(format!(
                        "unknown requirement {other:?}"
                    )))
                }
            }
        }
        Ok(r)
    }

    /// Whether `f` (with profile `p`) passes every filter. `weights` are in
    /// the family's own set order.
    pub fn accepts(
        &self,
        f: &DisjointFamily,
        p: &DifferenceProfile,
        weights: Option<&[Rational]>,
    ) -> Result<bool> {
        if self.rwedf && check_rwedf(p).is_none() {
            return Ok(false);
        }
        if self.gsedf && check_gsedf(p).is_none() {
            return Ok(false);
        }
        if self.edf && check_edf(p).is_none() {
            return Ok(false);
        }
        if self.sedf && check_sedf(p).is_none() {
            return Ok(false);
        }
        if self.wedf.is_some() {
            let w = weights
                .ok_or_else(|| Error::InvalidParameters("WEDF filter without weights".into()))?;
            if check_wedf(p, w)?.is_none() {
                return Ok(false);
            }
        }
        if self.bimodal && !is_bimodal(p).holds {
            return Ok(false);
        }
        if self.star_partition && !is_star_partition(f) {
            return Ok(false);
        }
        Ok(true)
    }
}

fn is_star_partition(f: &DisjointFamily) -> bool {
    let g = f.group();
    f.partitions_nonidentity()
        && f.sets().iter().all(|s| {
            s.iter().all(|x| {
                s.iter().all(|y| {
                    let z = g.compose(x, y);
                    z == 0 || s.contains(z)
                })
            })
        })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dedup {
    #[default]
    None,
    /// Keep one representative per orbit under right translation `x ↦ x·t`.
    Translation,
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub group: Arc<FiniteGroup>,
    /// Multiset of set sizes; the order given only matters for `wedf` weights.
    pub sizes: Vec<usize>,
    pub require: Requirements,
    pub target_ell: Option<Rational>,
    pub dedup: Dedup,
    pub node_budget: u64,
    pub result_cap: Option<usize>,
    /// Worker threads; `0` or `1` runs serially.
    pub threads: usize,
    /// Largest group order accepted.
    pub order_bound: usize,
}

impl SearchSpec {
    pub fn new(group: Arc<FiniteGroup>, sizes: Vec<usize>) -> Self {
        SearchSpec {
            group,
            sizes,
            require: Requirements::none(),
            target_ell: None,
            dedup: Dedup::None,
            node_budget: DEFAULT_NODE_BUDGET,
            result_cap: None,
            threads: 1,
            order_bound: DEFAULT_FULL_ENUMERATION_BOUND,
        }
    }

    pub fn require(mut self, require: Requirements) -> Self {
        self.require = require;
        self
    }

    pub fn target_ell(mut self, ell: Rational) -> Self {
        self.target_ell = Some(ell);
        self
    }

    pub fn dedup(mut self, dedup: Dedup) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn result_cap(mut self, cap: usize) -> Self {
        self.result_cap = Some(cap);
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn order_bound(mut self, bound: usize) -> Self {
        self.order_bound = bound;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Element placements tried.
    pub nodes: u64,
    /// Placements rejected by a bound.
    pub pruned: u64,
    /// Complete families examined.
    pub leaves: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Found families, sets ordered as generated (size descending).
    pub families: Vec<DisjointFamily>,
    /// Weights aligned with each family's set order, for WEDF searches.
    pub weights: Option<Vec<Rational>>,
    pub stats: SearchStats,
}

/// Sizes sorted for generation, with weights carried along.
struct Shape {
    sizes: Vec<usize>,
    weights: Option<Vec<Rational>>,
    /// `tied[i]`: set `i` is interchangeable with set `i − 1`.
    tied: Vec<bool>,
}

fn shape(sizes: &[usize], weights: Option<&[Rational]>) -> Shape {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| {
        sizes[b].cmp(&sizes[a]).then_with(|| match weights {
            Some(w) => w[a].cmp(&w[b]),
            None => std::cmp::Ordering::Equal,
        })
    });
    let sorted: Vec<usize> = order.iter().map(|&i| sizes[i]).collect();
    let w: Option<Vec<Rational>> = weights.map(|w| order.iter().map(|&i| w[i].clone()).collect());
    let tied = (0..sorted.len())
        .map(|i| {
            i > 0 && sorted[i] == sorted[i - 1] && w.as_ref().is_none_or(|w| w[i] == w[i - 1])
        })
        .collect();
    Shape {
        sizes: sorted,
        weights: w,
        tied,
    }
}

/// Column cut: `Σ_i inc[i]·N_i(δ) ≤ bound / (n − 1)` for every `δ`.
#[derive(Clone)]
struct ColumnCut {
    inc: Vec<u64>,
    /// Compared against `(n − 1)·Σ_i inc[i]·N_i(δ)`.
    bound: u128,
}

impl ColumnCut {
    /// Integer weights `inc`, with the forced constant derived from summing
    /// over all `δ`: `(n − 1)·c = Σ_i inc[i]·k_i·(T − k_i)`.
    fn from_weights(inc: Vec<u64>, sizes: &[usize]) -> Self {
        let t = sizes.iter().sum::<usize>() as u128;
        let bound = inc
            .iter()
            .zip(sizes)
            .map(|(&w, &k)| w as u128 * k as u128 * (t - k as u128))
            .sum();
        ColumnCut { inc, bound }
    }
}

struct Plan {
    g: Arc<FiniteGroup>,
    n: usize,
    shape: Shape,
    diff: Vec<Element>,
    columns: Vec<ColumnCut>,
    /// Row cut `(n − 1)·N_i(δ) ≤ row_bound[i]`.
    row_bound: Option<Vec<u128>>,
    /// Bimodal cut: `N_i(δ) = 0` whenever `δ` is an internal difference of
    /// `A_i`, since such a `δ` sends some element of `A_i` back into `A_i`.
    bimodal_cut: bool,
    require: Requirements,
    dedup: Dedup,
    node_budget: u64,
    result_cap: Option<usize>,
}

fn scaled_integer_weights(weights: &[Rational]) -> Option<Vec<u64>> {
    let mut l = num_bigint::BigInt::from(1);
    for w in weights {
        l = l.lcm(w.denom());
    }
    weights
        .iter()
        .map(|w| {
            let scaled = w.numer() * (&l / w.denom());
            u64::try_from(scaled).ok().filter(|&v| v <= u32::MAX as u64)
        })
        .collect()
}

impl Plan {
    fn new(spec: &SearchSpec) -> Result<Option<Self>> {
        let g = spec.group.clone();
        let n = g.order();
        if n > spec.order_bound {
            return Err(Error::GroupTooLarge {
                order: n,
                bound: spec.order_bound,
            });
        }
        if spec.sizes.is_empty() || spec.sizes.contains(&0) {
            return Err(Error::InvalidParameters(
                "sizes must be a non-empty list of positive integers".into(),
            ));
        }
        let m = spec.sizes.len();
        if m > u8::MAX as usize {
            return Err(Error::InvalidParameters("at most 255 sets".into()));
        }
        let t: usize = spec.sizes.iter().sum();
        if t > n {
            return Err(Error::InfeasibleParameters(format!(
                "total size {t} exceeds group order {n}"
            )));
        }
        if let Some(ell) = &spec.target_ell {
            let lhs = ell * &Rational::from((n as i64) - 1);
            let rhs = Rational::from(((m - 1) * t) as i64);
            if lhs != rhs {
                return Err(Error::InfeasibleParameters(format!(
                    "(n−1)ℓ = {lhs} but (m−1)T = {rhs}"
                )));
            }
        }
        if let Some(w) = &spec.require.wedf {
            validate_weights(m, w)?;
        }
        let shape = shape(&spec.sizes, spec.require.wedf.as_deref());
        let equal = shape.sizes.iter().all(|&k| k == shape.sizes[0]);
        if (spec.require.edf || spec.require.sedf) && !equal {
            return Ok(None);
        }

        let mut columns = Vec::new();
        let mut row_bound = None;
        if n >= 2 {
            let l = shape
                .sizes
                .iter()
                .fold(1u64, |acc, &k| acc.lcm(&(k as u64)));
            let wants_rwedf = spec.require.rwedf || spec.target_ell.is_some();
            if wants_rwedf && l <= u32::MAX as u64 {
                let inc = shape.sizes.iter().map(|&k| l / k as u64).collect();
                columns.push(ColumnCut::from_weights(inc, &shape.sizes));
            }
            if spec.require.edf {
                columns.push(ColumnCut::from_weights(vec![1; m], &shape.sizes));
            }
            if let Some(w) = &shape.weights {
                if let Some(inc) = scaled_integer_weights(w) {
                    columns.push(ColumnCut::from_weights(inc, &shape.sizes));
                }
            }
            if spec.require.sedf || spec.require.gsedf {
                row_bound = Some(
                    shape
                        .sizes
                        .iter()
                        .map(|&k| k as u128 * (t - k) as u128)
                        .collect(),
                );
            }
        }
        Ok(Some(Plan {
            diff: g.difference_table(),
            g,
            n,
            shape,
            columns,
            row_bound,
            bimodal_cut: spec.require.bimodal && n >= 2,
            require: spec.require.clone(),
            dedup: spec.dedup,
            node_budget: spec.node_budget,
            result_cap: spec.result_cap,
        }))
    }

    fn m(&self) -> usize {
        self.shape.sizes.len()
    }
}

struct Shared {
    nodes: AtomicU64,
    found: AtomicU64,
    stop: AtomicBool,
}

const FLUSH: u64 = 1 << 12;
const FREE: u8 = u8::MAX;

struct Worker<'a, F> {
    plan: &'a Plan,
    shared: &'a Shared,
    visit: &'a F,
    owner: Vec<u8>,
    members: Vec<Vec<Element>>,
    counts: Vec<u32>,
    /// `internal[i·n + δ]`: ordered pairs of `A_i` with difference `δ`.
    internal: Vec<u32>,
    sums: Vec<Vec<u64>>,
    pending: u64,
    stats: SearchStats,
    error: Option<Error>,
}

impl<'a, F> Worker<'a, F>
where
    F: Fn(DisjointFamily) -> Result<()> + Sync,
{
    fn new(plan: &'a Plan, shared: &'a Shared, visit: &'a F) -> Self {
        let (n, m) = (plan.n, plan.m());
        Worker {
            plan,
            shared,
            visit,
            owner: vec![FREE; n],
            members: plan
                .shape
                .sizes
                .iter()
                .map(|&k| Vec::with_capacity(k))
                .collect(),
            counts: vec![0; m * n],
            internal: if plan.bimodal_cut {
                vec![0; m * n]
            } else {
                Vec::new()
            },
            sums: plan.columns.iter().map(|_| vec![0; n]).collect(),
            pending: 0,
            stats: SearchStats::default(),
            error: None,
        }
    }

    fn flush(&mut self) {
        let total = self
            .shared
            .nodes
            .fetch_add(self.pending, AtomicOrdering::Relaxed)
            + self.pending;
        self.pending = 0;
        if total > self.plan.node_budget {
            self.shared.stop.store(true, AtomicOrdering::Relaxed);
        }
    }

    fn bump(&mut self, i: usize, delta: Element, sign: bool) -> bool {
        let n = self.plan.n;
        let cell = &mut self.counts[i * n + delta as usize];
        let mut ok = true;
        if sign {
            *cell += 1;
            if let Some(rows) = &self.plan.row_bound {
                ok &= (n as u128 - 1) * *cell as u128 <= rows[i];
            }
            if self.plan.bimodal_cut {
                ok &= self.internal[i * n + delta as usize] == 0;
            }
        } else {
            *cell -= 1;
        }
        for (cut, sums) in self.plan.columns.iter().zip(self.sums.iter_mut()) {
            let s = &mut sums[delta as usize];
            if sign {
                *s += cut.inc[i];
                ok &= (n as u128 - 1) * *s as u128 <= cut.bound;
            } else {
                *s -= cut.inc[i];
            }
        }
        ok
    }

    /// Adds or removes `x` in set `i`, updating counts against every element
    /// already placed in another set.
    fn toggle(&mut self, x: Element, i: usize, add: bool) -> bool {
        let n = self.plan.n;
        let mut ok = true;
        for j in 0..self.members.len() {
            if j == i {
                continue;
            }
            for idx in 0..self.members[j].len() {
                let y = self.members[j][idx];
                let d_out = self.plan.diff[x as usize * n + y as usize];
                let d_in = self.plan.diff[y as usize * n + x as usize];
                ok &= self.bump(i, d_out, add);
                ok &= self.bump(j, d_in, add);
            }
        }
        if self.plan.bimodal_cut {
            for idx in 0..self.members[i].len() {
                let y = self.members[i][idx];
                if y == x {
                    continue;
                }
                for d in [
                    self.plan.diff[x as usize * n + y as usize],
                    self.plan.diff[y as usize * n + x as usize],
                ] {
                    let cell = &mut self.internal[i * n + d as usize];
                    if add {
                        *cell += 1;
                        ok &= self.counts[i * n + d as usize] == 0;
                    } else {
                        *cell -= 1;
                    }
                }
            }
        }
        if add {
            self.owner[x as usize] = i as u8;
            self.members[i].push(x);
        } else {
            self.owner[x as usize] = FREE;
            self.members[i].pop();
        }
        ok
    }

    fn place(&mut self, x: Element, i: usize) -> bool {
        self.stats.nodes += 1;
        self.pending += 1;
        if self.pending >= FLUSH {
            self.flush();
        }
        let ok = self.toggle(x, i, true);
        if !ok {
            self.stats.pruned += 1;
        }
        ok
    }

    fn unplace(&mut self, x: Element, i: usize) {
        self.toggle(x, i, false);
    }

    fn halted(&self) -> bool {
        self.error.is_some() || self.shared.stop.load(AtomicOrdering::Relaxed)
    }

    /// Fill set `i` starting at slot `members[i].len()`, elements `≥ from`.
    fn fill(&mut self, i: usize, from: Element) {
        if self.halted() {
            return;
        }
        let sizes = &self.plan.shape.sizes;
        let m = sizes.len();
        if i == m {
            self.leaf();
            return;
        }
        let k = sizes[i];
        let have = self.members[i].len();
        if have == k {
            if self.plan.dedup == Dedup::Translation
                && self.plan.shape.tied[1..=i].iter().all(|&t| t)
                && !self.first_run_minimal(i)
            {
                self.stats.pruned += 1;
                return;
            }
            let next_from = if i + 1 < m && self.plan.shape.tied[i + 1] {
                self.members[i][0] + 1
            } else {
                0
            };
            self.fill(i + 1, next_from);
            return;
        }
        let n = self.plan.n as Element;
        let need = (k - have) as Element;
        let mut x = from;
        while x + need <= n {
            if self.owner[x as usize] == FREE {
                if self.place(x, i) {
                    self.fill(i, x + 1);
                }
                self.unplace(x, i);
                if self.halted() {
                    return;
                }
            }
            x += 1;
        }
    }

    /// Translating by `a⁻¹` for `a ∈ A_i` moves `0` into `A_i`; when `A_i`
    /// belongs to the leading run of interchangeable sets the translate must
    /// not sort below `A_0`, or this family is not the class minimum.
    fn first_run_minimal(&self, i: usize) -> bool {
        let g = &self.plan.g;
        let set = &self.members[i];
        let mut moved = Vec::with_capacity(set.len());
        set.iter().all(|&a| {
            moved.clear();
            moved.extend(set.iter().map(|&x| g.difference(x, a)));
            moved.sort_unstable();
            moved.as_slice() >= self.members[0].as_slice()
        })
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        match self.accept() {
            Ok(Some(f)) => {
                let found = self.shared.found.fetch_add(1, AtomicOrdering::Relaxed) + 1;
                if let Err(e) = (self.visit)(f) {
                    self.error = Some(e);
                }
                if self.plan.result_cap.is_some_and(|cap| found >= cap as u64) {
                    self.shared.stop.store(true, AtomicOrdering::Relaxed);
                }
            }
            Ok(None) => {}
            Err(e) => self.error = Some(e),
        }
    }

    fn accept(&self) -> Result<Option<DisjointFamily>> {
        let sets: Vec<ElementSet> = self
            .members
            .iter()
            .map(|s| ElementSet::new(s.clone()))
            .collect();
        let f = DisjointFamily::new(self.plan.g.clone(), sets)?;
        let p = difference_profile(&f);
        if !self
            .plan
            .require
            .accepts(&f, &p, self.plan.shape.weights.as_deref())?
        {
            return Ok(None);
        }
        if self.plan.dedup == Dedup::Translation && !is_translation_minimal(&f, &self.plan.shape) {
            return Ok(None);
        }
        Ok(Some(f))
    }
}

/// Canonical key of a set list: sets reordered the way the search generates
/// them (size descending, weight ascending, then lexicographic).
fn canonical_key(sets: &[ElementSet], shape: &Shape) -> Vec<ElementSet> {
    // sets arrive in shape order; reorder within runs of interchangeable sets
    let mut out = sets.to_vec();
    let mut start = 0;
    while start < out.len() {
        let mut end = start + 1;
        while end < out.len() && shape.tied[end] {
            end += 1;
        }
        out[start..end].sort();
        start = end;
    }
    out
}

fn is_translation_minimal(f: &DisjointFamily, shape: &Shape) -> bool {
    let own = canonical_key(f.sets(), shape);
    let g = f.group();
    g.nonidentity().all(|t| {
        let moved: Vec<ElementSet> = f.sets().iter().map(|s| s.right_translate(g, t)).collect();
        canonical_key(&moved, shape) >= own
    })
}

fn family_key(f: &DisjointFamily) -> Vec<Vec<Element>> {
    f.sets().iter().map(|s| s.members().to_vec()).collect()
}

/// Runs the search, handing every accepted family to `visit` as it is found.
///
/// `visit` may be called from several threads and in any order. Returns the
/// statistics, or `BudgetExceeded` (with an empty partial family list) when
/// the node budget or result cap stopped the run.
pub fn for_each_family<F>(spec: &SearchSpec, visit: F) -> Result<SearchStats>
where
    F: Fn(DisjointFamily) -> Result<()> + Sync,
{
    let Some(plan) = Plan::new(spec)? else {
        return Ok(SearchStats::default());
    };
    let shared = Shared {
        nodes: AtomicU64::new(0),
        found: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let k0 = plan.shape.sizes[0];
    // every translation class has a member with 0 in the first set
    let anchors: Vec<Element> = match plan.dedup {
        Dedup::Translation => vec![0],
        Dedup::None => (0..=(plan.n - k0) as Element).collect(),
    };
    let run = |anchor: Element| -> Result<SearchStats> {
        let mut w = Worker::new(&plan, &shared, &visit);
        if w.place(anchor, 0) {
            w.fill(0, anchor + 1);
        }
        w.unplace(anchor, 0);
        w.flush();
        match w.error {
            Some(e) => Err(e),
            None => Ok(w.stats),
        }
    };
    let results: Vec<Result<SearchStats>> = if spec.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.threads)
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?;
        pool.install(|| anchors.par_iter().map(|&a| run(a)).collect())
    } else {
        anchors.iter().map(|&a| run(a)).collect()
    };
    let mut stats = SearchStats::default();
    for r in results {
        let s = r?;
        stats.nodes += s.nodes;
        stats.pruned += s.pruned;
        stats.leaves += s.leaves;
    }
    if shared.stop.load(AtomicOrdering::Relaxed) {
        return Err(Error::BudgetExceeded {
            partial: Box::new(SearchOutcome {
                families: Vec::new(),
                weights: plan.shape.weights.clone(),
                stats,
            }),
        });
    }
    Ok(stats)
}

/// All families matching `spec`, sorted lexicographically.
///
/// When the node budget or result cap stops the run, the families found so
/// far are returned inside [`Error::BudgetExceeded`].
pub fn enumerate(spec: &SearchSpec) -> Result<SearchOutcome> {
    let found = std::sync::Mutex::new(Vec::new());
    let result = for_each_family(spec, |f| {
        found.lock().expect("result list poisoned").push(f);
        Ok(())
    });
    let mut families = found.into_inner().expect("result list poisoned");
    families.sort_by_cached_key(family_key);
    let weights = spec
        .require
        .wedf
        .as_deref()
        .map(|w| shape(&spec.sizes, Some(w)).weights.expect("weights given"));
    match result {
        Ok(stats) => Ok(SearchOutcome {
            families,
            weights,
            stats,
        }),
        Err(Error::BudgetExceeded { partial }) => {
            if let Some(cap) = spec.result_cap {
                families.truncate(cap);
            }
            Err(Error::BudgetExceeded {
                partial: Box::new(SearchOutcome {
                    families,
                    weights,
                    stats: partial.stats,
                }),
            })
        }
        Err(e) => Err(e),
    }
}

/// All multisets of positive sizes (descending) with `m` parts and total at
/// most `max_total`; `m = None` allows any number of parts.
pub fn size_multisets(max_total: usize, m: Option<usize>) -> Vec<Vec<usize>> {
    fn rec(
        left: usize,
        cap: usize,
        parts: Option<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        match parts {
            Some(0) => {
                if !cur.is_empty() {
                    out.push(cur.clone());
                }
                return;
            }
            None if !cur.is_empty() => out.push(cur.clone()),
            _ => {}
        }
        for k in (1..=cap.min(left)).rev() {
            cur.push(k);
            rec(left - k, k, parts.map(|p| p - 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_total, max_total, m, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Every collection of subgroups whose stars partition `G*`, by exact cover.
///
/// Each collection is sorted by order (descending) then carrier, and the
/// collections are sorted by their carriers. The whole group alone is always
/// one of them.
pub fn enumerate_star_partitions(g: &FiniteGroup) -> Result<Vec<Vec<Subgroup>>> {
    let subs: Vec<Subgroup> = enumerate_subgroups_bounded(g, STAR_PARTITION_BOUND)?
        .into_iter()
        .filter(|s| g.order() == 1 || !s.is_trivial())
        .collect();
    let n = g.order();
    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, s) in subs.iter().enumerate() {
        for x in s.star().iter() {
            covering[x as usize].push(idx);
        }
    }
    let mut covered = vec![false; n];
    covered[0] = true;
    let mut found = BTreeSet::new();
    if n == 1 {
        found.insert(vec![0]);
    } else {
        exact_cover(&subs, &covering, &mut covered, &mut Vec::new(), &mut found);
    }
    let mut out: Vec<Vec<Subgroup>> = found
        .into_iter()
        .map(|idxs| {
            let mut part: Vec<Subgroup> = idxs.into_iter().map(|i| subs[i].clone()).collect();
            part.sort_by(|a, b| {
                b.order()
                    .cmp(&a.order())
                    .then_with(|| a.carrier().cmp(b.carrier()))
            });
            part
        })
        .collect();
    out.sort_by_cached_key(|part| part.iter().map(|s| s.carrier().clone()).collect::<Vec<_>>());
    Ok(out)
}

fn exact_cover(
    subs: &[Subgroup],
    covering: &[Vec<usize>],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    let Some(x) = covered.iter().position(|&c| !c) else {
        let mut c = chosen.clone();
        c.sort_unstable();
        out.insert(c);
        return;
    };
    for &idx in &covering[x] {
        let star = subs[idx].star();
        if star.iter().any(|y| covered[y as usize]) {
            continue;
        }
        for y in star.iter() {
            covered[y as usize] = true;
        }
        chosen.push(idx);
        exact_cover(subs, covering, covered, chosen, out);
        chosen.pop();
        for y in star.iter() {
            covered[y as usize] = false;
        }
    }
}
