//! Explicit constructions of difference families.
//!
//! Every constructor returns a validated [`DisjointFamily`]. When a
//! construction names its sets in a fixed order, that order is kept;
//! otherwise sets are sorted by size (descending) and then by smallest
//! element.

use std::sync::Arc;

use crate::analysis::DisjointFamily;
use crate::classify::check_difference_set;
use crate::error::{Error, Result};
use crate::field::{prime_power, FieldGF};
use crate::group::{
    closure, is_prime, make_cyclic, make_dihedral, make_elementary_abelian, make_from_cayley_table,
    make_heisenberg, Element, ElementSet, FiniteGroup, Subgroup,
};

fn family(g: &Arc<FiniteGroup>, sets: Vec<ElementSet>) -> Result<DisjointFamily> {
    DisjointFamily::new(g.clone(), sets)
}

fn sorted_by_size_then_min(mut sets: Vec<ElementSet>) -> Vec<ElementSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets
}

/// The whole group as one set, and all singletons.
pub fn trivial_families(g: &Arc<FiniteGroup>) -> Result<[DisjointFamily; 2]> {
    let whole = family(g, vec![g.elements().collect()])?;
    let singles = family(g, g.elements().map(|x| ElementSet::new(vec![x])).collect())?;
    Ok([whole, singles])
}

/// Singletons of all non-identity elements.
pub fn nonzero_singletons(g: &Arc<FiniteGroup>) -> Result<DisjointFamily> {
    if g.order() < 2 {
        return Err(Error::DegenerateGroup(g.order()));
    }
    family(
        g,
        g.nonidentity().map(|x| ElementSet::new(vec![x])).collect(),
    )
}

/// Singletons `{d_1}, …, {d_m}` of a difference set; an RWEDF with `ℓ = λ`.
pub fn singletons_from_difference_set(
    g: &Arc<FiniteGroup>,
    d: &ElementSet,
) -> Result<DisjointFamily> {
    if d.is_empty() || check_difference_set(g, d).is_none() {
        return Err(Error::NotADifferenceSet);
    }
    g.check_set(d)?;
    family(g, d.iter().map(|x| ElementSet::new(vec![x])).collect())
}

/// `{D, G ∖ D}` for a difference set `D` with `1 < |D| < n`.
pub fn complement_pair(g: &Arc<FiniteGroup>, d: &ElementSet) -> Result<DisjointFamily> {
    g.check_set(d)?;
    if d.len() <= 1 || d.len() >= g.order() || check_difference_set(g, d).is_none() {
        return Err(Error::NotADifferenceSet);
    }
    let rest: ElementSet = g.elements().filter(|&x| !d.contains(x)).collect();
    family(g, vec![d.clone(), rest])
}

/// The additive group of `GF(q)`: `Z_q` for prime `q`, otherwise
/// `Z_p^a` with indices matching [`FieldGF`] element indices.
pub fn field_additive_group(field: &FieldGF) -> Result<FiniteGroup> {
    if field.degree() == 1 {
        make_cyclic(field.order() as usize)
    } else {
        make_elementary_abelian(field.characteristic(), field.degree())
    }
}

/// Stars of `⟨y x^i⟩` for `0 ≤ i < n` (single reflections) followed by the
/// star of `⟨x⟩` in the dihedral group of order `2n`.
pub fn dihedral_star_partition(n: u32) -> Result<DisjointFamily> {
    if n < 2 {
        return Err(Error::InvalidParameters(
            "dihedral partition needs n ≥ 2".into(),
        ));
    }
    let g = Arc::new(make_dihedral(n)?);
    let mut subs: Vec<Subgroup> = (0..n)
        .map(|i| closure(&g, &ElementSet::new(vec![n + i])))
        .collect();
    subs.push(closure(&g, &ElementSet::new(vec![1])));
    subgroup_star_family(&g, &subs)
}

/// Non-zero squares and non-squares of `GF(q)`, `q ≡ 1 (mod 4)`.
pub fn cyclotomic_squares(q: u64) -> Result<DisjointFamily> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q % 4 != 1 {
        return Err(Error::BadResidueClass { q });
    }
    let field = FieldGF::with_order(q)?;
    let g = Arc::new(field_additive_group(&field)?);
    let squares = ElementSet::new(field.squares());
    let rest: ElementSet = g.nonidentity().filter(|&x| !squares.contains(x)).collect();
    family(&g, vec![squares, rest])
}

fn progression_pair(n: usize, k1: usize, k2: usize) -> Result<DisjointFamily> {
    let g = Arc::new(make_cyclic(n)?);
    let first: ElementSet = (0..k1 as Element).collect();
    let second: ElementSet = (1..=k2 as Element).map(|j| j * k1 as Element).collect();
    family(&g, vec![first, second])
}

/// `{0, …, k−1}`, `{k, 2k, …, k²}` in `Z_{k²+1}`: an SEDF with `λ = 1`.
pub fn m2_sedf(k: usize) -> Result<DisjointFamily> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be ≥ 1".into()));
    }
    progression_pair(k * k + 1, k, k)
}

/// The same two sets in `Z_{2k²+1}`: an EDF with `λ = 1`.
pub fn m2_edf(k: usize) -> Result<DisjointFamily> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be ≥ 1".into()));
    }
    progression_pair(2 * k * k + 1, k, k)
}

/// `{0, …, k1−1}`, `{k1, 2k1, …, k1·k2}` in `Z_{k1·k2+1}`: a GSEDF.
pub fn m2_gsedf(k1: usize, k2: usize) -> Result<DisjointFamily> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidParameters("sizes must be ≥ 1".into()));
    }
    progression_pair(k1 * k2 + 1, k1, k2)
}

/// Stars `S_i ∖ {0}` of subgroups meeting pairwise in the identity, in the
/// given order, followed by every uncovered non-identity element as a
/// singleton. The result is a bimodal RWEDF with `ℓ = m − 1`.
///
/// Trivial subgroups contribute nothing.
pub fn subgroup_star_family(
    g: &Arc<FiniteGroup>,
    subgroups: &[Subgroup],
) -> Result<DisjointFamily> {
    if g.order() < 2 {
        return Err(Error::DegenerateGroup(g.order()));
    }
    let mut covered = vec![false; g.order()];
    let mut sets = Vec::new();
    for s in subgroups {
        g.check_set(s.carrier())?;
        let star = s.star();
        if star.is_empty() {
            continue;
        }
        for x in star.iter() {
            if std::mem::replace(&mut covered[x as usize], true) {
                return Err(Error::OverlappingSubgroups { element: x });
            }
        }
        sets.push(star);
    }
    sets.extend(
        g.nonidentity()
            .filter(|&x| !covered[x as usize])
            .map(|x| ElementSet::new(vec![x])),
    );
    family(g, sets)
}

/// `Z_n` with `n = p^α q^β`: stars of the subgroups of orders `p^α` and
/// `q^β` (larger first), then the remaining non-zero elements as singletons.
pub fn two_prime_power_construction(
    p: u32,
    alpha: u32,
    q: u32,
    beta: u32,
) -> Result<DisjointFamily> {
    for r in [p, q] {
        if !is_prime(r as u64) {
            return Err(Error::NotPrime(r as u64));
        }
    }
    if p == q {
        return Err(Error::InvalidParameters(
            "the two primes must differ".into(),
        ));
    }
    if alpha == 0 || beta == 0 {
        return Err(Error::InvalidParameters("exponents must be ≥ 1".into()));
    }
    let pa = (p as usize).pow(alpha);
    let qb = (q as usize).pow(beta);
    let g = Arc::new(make_cyclic(pa * qb)?);
    // ⟨q^β⟩ has order p^α and ⟨p^α⟩ has order q^β
    let mut subs = vec![
        closure(&g, &ElementSet::new(vec![qb as Element])),
        closure(&g, &ElementSet::new(vec![pa as Element])),
    ];
    subs.sort_by_key(|s| std::cmp::Reverse(s.order()));
    subgroup_star_family(&g, &subs)
}

/// One-dimensional `GF(p^a)`-subspaces of `GF(p^a)^b`, each without zero,
/// realized in `Z_p^{ab}`.
///
/// The subspaces are enumerated as `{λ(x_1, …, x_j, 1, 0, …, 0)}` for
/// `j = 0..b` and all `x_1..x_j`, so no deduplication is needed. A vector
/// `(v_1, …, v_b)` is stored at index `Σ idx(v_i)·q^(b−i)`, where `idx` is
/// the [`FieldGF`] index and `q = p^a`.
pub fn desarguesian_star_partition(p: u32, a: u32, b: u32) -> Result<DisjointFamily> {
    if a == 0 || b == 0 || a * b < 2 {
        return Err(Error::InvalidParameters("need a, b ≥ 1 and ab ≥ 2".into()));
    }
    let field = FieldGF::new(p, a)?;
    let g = Arc::new(make_elementary_abelian(p, a * b)?);
    let q = field.order();
    let encode = |v: &[u32]| v.iter().fold(0u64, |acc, &c| acc * q as u64 + c as u64) as Element;
    let mut sets = Vec::new();
    for j in 0..b as usize {
        let prefixes = (q as u64).pow(j as u32);
        for code in 0..prefixes {
            let mut v = vec![0u32; b as usize];
            let mut rest = code;
            for slot in v.iter_mut().take(j) {
                *slot = (rest % q as u64) as u32;
                rest /= q as u64;
            }
            v[j] = 1;
            let line: ElementSet = (1..q)
                .map(|lambda| {
                    let scaled: Vec<u32> = v.iter().map(|&c| field.mul(lambda, c)).collect();
                    encode(&scaled)
                })
                .collect();
            sets.push(line);
        }
    }
    family(&g, sorted_by_size_then_min(sets))
}

/// Cyclic subgroups of order `p`, without the identity, partitioning the
/// non-identity elements of the order-`p³` Heisenberg group. Requires every
/// non-identity element to have order `p` (fails for `p = 2`).
pub fn heisenberg_partition(p: u32) -> Result<DisjointFamily> {
    let g = Arc::new(make_heisenberg(p)?);
    exponent_p_partition(&g, p)
}

/// Partition of `G*` into the stars of its order-`p` subgroups, for a group
/// of exponent `p`.
pub fn exponent_p_partition(g: &Arc<FiniteGroup>, p: u32) -> Result<DisjointFamily> {
    if let Some(x) = g.nonidentity().find(|&x| g.element_order(x) != p as usize) {
        return Err(Error::NotExponentP {
            p: p as u64,
            element: x,
            order: g.element_order(x),
        });
    }
    let mut covered = vec![false; g.order()];
    let mut sets = Vec::new();
    for x in g.nonidentity() {
        if covered[x as usize] {
            continue;
        }
        let star = closure(g, &ElementSet::new(vec![x])).star();
        for y in star.iter() {
            if std::mem::replace(&mut covered[y as usize], true) {
                return Err(Error::PartitionFailure(format!(
                    "element {y} covered twice"
                )));
            }
        }
        sets.push(star);
    }
    family(g, sets)
}

/// The order-21 group `⟨a, b | a^7 = b^3 = 1, b a b⁻¹ = a^2⟩` and the
/// difference set `{1, a, a³, b, a²b²}`.
///
/// Elements are normal forms `a^i b^j` stored at index `3i + j`; the table is
/// generated from `b^j a^k = a^(k·2^j) b^j` and validated.
pub fn f21_fixture() -> Result<(Arc<FiniteGroup>, ElementSet)> {
    let idx = |i: u32, j: u32| (3 * (i % 7) + j % 3) as Element;
    let table: Vec<Vec<Element>> = (0..21u32)
        .map(|x| {
            let (i, j) = (x / 3, x % 3);
            (0..21u32)
                .map(|y| {
                    let (k, l) = (y / 3, y % 3);
                    idx(i + k * 2u32.pow(j), j + l)
                })
                .collect()
        })
        .collect();
    let g = make_from_cayley_table(table)?;
    let d = ElementSet::new(vec![idx(0, 0), idx(1, 0), idx(3, 0), idx(0, 1), idx(2, 2)]);
    Ok((Arc::new(g), d))
}
