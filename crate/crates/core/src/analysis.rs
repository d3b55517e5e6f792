//! External and internal difference statistics of a family of disjoint sets.
//!
//! `N_i(δ)` counts ordered pairs `(a, b)` with `a ∈ A_i`, `b` in some other
//! set of the family, and `a·b⁻¹ = δ`. In additive notation this is
//! `a − b = δ`. Everything here is exact: counts are integers and all
//! derived probabilities are [`Rational`]s.

use std::io::Write;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{closure, Element, ElementSet, FiniteGroup, Subgroup};
use crate::rational::Rational;

const NO_OWNER: u32 = u32::MAX;

/// Ordered collection of pairwise-disjoint, non-empty subsets `A_1..A_m` of
/// one group.
#[derive(Clone, Debug)]
pub struct DisjointFamily {
    group: Arc<FiniteGroup>,
    sets: Vec<ElementSet>,
    owner: Vec<u32>,
}

impl DisjointFamily {
    pub fn new(group: Arc<FiniteGroup>, sets: Vec<ElementSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidFamily(
                "a family needs at least one set".into(),
            ));
        }
        let mut owner = vec![NO_OWNER; group.order()];
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidFamily(format!("set {} is empty", i + 1)));
            }
            group.check_set(set)?;
            for x in set.iter() {
                let slot = &mut owner[x as usize];
                if *slot != NO_OWNER {
                    return Err(Error::InvalidFamily(format!(
                        "element {x} lies in sets {} and {}",
                        *slot + 1,
                        i + 1
                    )));
                }
                *slot = i as u32;
            }
        }
        Ok(DisjointFamily { group, sets, owner })
    }

    /// Convenience constructor from plain vectors.
    pub fn from_vecs(group: &FiniteGroup, sets: &[Vec<Element>]) -> Result<Self> {
        Self::new(
            Arc::new(group.clone()),
            sets.iter().map(|s| ElementSet::new(s.clone())).collect(),
        )
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    /// Number of sets `m`.
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Group order `n`.
    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(ElementSet::len).collect()
    }

    /// `T = Σ k_i`.
    pub fn total(&self) -> usize {
        self.sets.iter().map(ElementSet::len).sum()
    }

    /// Index of the set containing `x`.
    pub fn owner(&self, x: Element) -> Option<usize> {
        match self.owner[x as usize] {
            NO_OWNER => None,
            i => Some(i as usize),
        }
    }

    /// `B_i`: union of all sets other than `A_i`.
    pub fn complement_of(&self, i: usize) -> ElementSet {
        self.group
            .elements()
            .filter(|&x| matches!(self.owner(x), Some(j) if j != i))
            .collect()
    }

    /// Union of all sets.
    pub fn support(&self) -> ElementSet {
        self.group
            .elements()
            .filter(|&x| self.owner(x).is_some())
            .collect()
    }

    /// True when the sets cover every element of the group.
    pub fn partitions_group(&self) -> bool {
        self.total() == self.n()
    }

    /// True when the sets cover exactly the non-identity elements.
    pub fn partitions_nonidentity(&self) -> bool {
        self.owner(0).is_none() && self.total() == self.n() - 1
    }

    /// Same sets, in the canonical order: size descending, then smallest
    /// element.
    pub fn canonical_sets(&self) -> Vec<ElementSet> {
        let mut sets = self.sets.clone();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets
    }

    /// Image of the family under right translation `x ↦ x·t`, which
    /// preserves every left difference.
    pub fn right_translate(&self, t: Element) -> DisjointFamily {
        let sets = self
            .sets
            .iter()
            .map(|s| s.right_translate(&self.group, t))
            .collect();
        DisjointFamily::new(self.group.clone(), sets).expect("translation preserves disjointness")
    }
}

/// The `m × (n−1)` table of `N_i(δ)`, `δ` running over `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceProfile {
    n: usize,
    sizes: Vec<usize>,
    counts: Vec<u32>,
}

impl DifferenceProfile {
    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `N_i(δ)` for set index `i` (0-based) and `δ ≠ 0`.
    pub fn count(&self, i: usize, delta: Element) -> u32 {
        debug_assert!(delta != 0);
        self.counts[i * (self.n - 1) + delta as usize - 1]
    }

    /// Row `i`: `N_i(1), …, N_i(n−1)`.
    pub fn row(&self, i: usize) -> &[u32] {
        let w = self.n - 1;
        &self.counts[i * w..(i + 1) * w]
    }

    /// `Σ_i N_i(δ)`.
    pub fn column_total(&self, delta: Element) -> u64 {
        (0..self.m()).map(|i| self.count(i, delta) as u64).sum()
    }

    pub fn deltas(&self) -> impl Iterator<Item = Element> {
        1..self.n as Element
    }

    /// Writes the profile as CSV: a header `set,1,2,…,n−1`, then one row per
    /// set labelled `1..m`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["set".to_string()];
        header.extend(self.deltas().map(|d| d.to_string()));
        w.write_record(&header)?;
        for i in 0..self.m() {
            let mut rec = vec![(i + 1).to_string()];
            rec.extend(self.row(i).iter().map(u32::to_string));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Exact `N_i(δ)` by enumerating all `T(T−1)`-ish ordered cross pairs.
pub fn difference_profile(f: &DisjointFamily) -> DifferenceProfile {
    let n = f.n();
    let w = n.saturating_sub(1);
    let g = f.group();
    let mut counts = vec![0u32; f.m() * w];
    let members: Vec<(Element, usize)> = f
        .sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |x| (x, i)))
        .collect();
    for &(b, j) in &members {
        let b_inv = g.inverse(b);
        for &(a, i) in &members {
            if i != j {
                let delta = g.compose(a, b_inv);
                counts[i * w + delta as usize - 1] += 1;
            }
        }
    }
    DifferenceProfile {
        n,
        sizes: f.sizes(),
        counts,
    }
}

/// `Σ_i N_i(δ)/k_i` scaled by `L = lcm(k_i)`, for every `δ`, in integers.
#[derive(Clone, Debug)]
pub(crate) struct ScaledSums {
    pub scale: u128,
    pub values: Vec<u128>,
}

pub(crate) fn reciprocal_sums(p: &DifferenceProfile) -> Option<ScaledSums> {
    let mut scale: u128 = 1;
    for &k in &p.sizes {
        scale = scale.lcm(&(k as u128));
        if scale > u64::MAX as u128 {
            return None;
        }
    }
    let factors: Vec<u128> = p.sizes.iter().map(|&k| scale / k as u128).collect();
    let values = p
        .deltas()
        .map(|d| (0..p.m()).map(|i| p.count(i, d) as u128 * factors[i]).sum())
        .collect();
    Some(ScaledSums { scale, values })
}

/// `Σ_i N_i(δ)/k_i` as an exact rational.
pub(crate) fn reciprocal_sum(p: &DifferenceProfile, delta: Element) -> Rational {
    (0..p.m())
        .map(|i| Rational::new(p.count(i, delta), p.sizes[i] as u64))
        .sum()
}

/// Adversary success probability for shift `δ`:
/// `e_δ = (1/m) Σ_i N_i(δ)/k_i`.
pub fn e_delta(f: &DisjointFamily, p: &DifferenceProfile, delta: Element) -> Result<Rational> {
    if delta == 0 {
        return Err(Error::IdentityDelta);
    }
    if !f.group().contains(delta) {
        return Err(Error::ElementOutOfRange {
            element: delta,
            order: f.n(),
        });
    }
    Ok(reciprocal_sum(p, delta) / Rational::from(f.m() as i64))
}

/// All `e_δ` in `δ` order.
pub fn e_delta_table(p: &DifferenceProfile) -> Vec<Rational> {
    let m = Rational::from(p.m() as i64);
    match reciprocal_sums(p) {
        Some(s) => {
            let den = s.scale * p.m() as u128;
            s.values.iter().map(|&v| Rational::new(v, den)).collect()
        }
        None => p
            .deltas()
            .map(|d| reciprocal_sum(p, d) / m.clone())
            .collect(),
    }
}

/// `ê = max_δ e_δ`. Zero for the trivial group.
pub fn e_hat(f: &DisjointFamily) -> Rational {
    e_hat_of_profile(&difference_profile(f))
}

pub fn e_hat_of_profile(p: &DifferenceProfile) -> Rational {
    match reciprocal_sums(p) {
        Some(s) => {
            let max = s.values.iter().copied().max().unwrap_or(0);
            Rational::new(max, s.scale * p.m() as u128)
        }
        None => e_delta_table(p)
            .into_iter()
            .max()
            .unwrap_or_else(Rational::zero),
    }
}

/// The R-bound `(m−1)T / (m(n−1))`: success of an adversary drawing `δ`
/// uniformly from the non-identity elements.
pub fn r_bound(n: usize, m: usize, total: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::DegenerateGroup(n));
    }
    if m == 0 {
        return Err(Error::InvalidParameters("m must be ≥ 1".into()));
    }
    Ok(Rational::new(
        ((m - 1) * total) as u64,
        (m * (n - 1)) as u64,
    ))
}

/// `I(A) = { x·y⁻¹ : x, y ∈ A, x ≠ y }`.
pub fn internal_differences(g: &FiniteGroup, a: &ElementSet) -> ElementSet {
    let mut out = Vec::with_capacity(a.len() * a.len());
    for x in a.iter() {
        for y in a.iter() {
            if x != y {
                out.push(g.difference(x, y));
            }
        }
    }
    ElementSet::new(out)
}

/// `H = ⟨I(A)⟩`, the smallest subgroup with `A` inside one of its cosets.
pub fn internal_difference_group(g: &FiniteGroup, a: &ElementSet) -> Subgroup {
    closure(g, &internal_differences(g, a))
}

/// A cell of the profile that is neither `0` nor the row's set size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BimodalWitness {
    /// 0-based set index.
    pub set: usize,
    pub delta: Element,
    pub count: u32,
}

/// Bimodality verdict. The witness is the first failing cell in row-major
/// `(set, δ)` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bimodality {
    pub holds: bool,
    pub witness: Option<BimodalWitness>,
}

/// Every `N_j(δ)` is `0` or `k_j`.
pub fn is_bimodal(p: &DifferenceProfile) -> Bimodality {
    for i in 0..p.m() {
        let k = p.sizes[i] as u32;
        if let Some(pos) = p.row(i).iter().position(|&c| c != 0 && c != k) {
            return Bimodality {
                holds: false,
                witness: Some(BimodalWitness {
                    set: i,
                    delta: pos as Element + 1,
                    count: p.row(i)[pos],
                }),
            };
        }
    }
    Bimodality {
        holds: true,
        witness: None,
    }
}

/// Weights must number `m` and lie in `(0, 1]`.
pub fn validate_weights(m: usize, weights: &[Rational]) -> Result<()> {
    if weights.len() != m {
        return Err(Error::WeightCount {
            expected: m,
            found: weights.len(),
        });
    }
    let one = Rational::one();
    for (index, w) in weights.iter().enumerate() {
        if !w.is_positive() || *w > one {
            return Err(Error::BadWeight {
                index,
                weight: w.to_string(),
            });
        }
    }
    Ok(())
}

/// `Σ_i w_i N_i(δ)`.
pub fn weighted_sum(
    p: &DifferenceProfile,
    weights: &[Rational],
    delta: Element,
) -> Result<Rational> {
    validate_weights(p.m(), weights)?;
    if delta == 0 {
        return Err(Error::IdentityDelta);
    }
    Ok(weights
        .iter()
        .enumerate()
        .map(|(i, w)| w * &Rational::from(p.count(i, delta) as i64))
        .sum())
}
