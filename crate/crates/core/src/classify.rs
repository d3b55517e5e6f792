//! Exact classifiers: EDF, SEDF, GSEDF, WEDF, RWEDF, difference sets and
//! partial difference sets, rolled up into a [`ClassificationReport`].

use std::cmp::Ordering;

use serde::Serialize;

use crate::analysis::{
    difference_profile, e_delta_table, e_hat_of_profile, is_bimodal, r_bound, reciprocal_sum,
    reciprocal_sums, validate_weights, weighted_sum, Bimodality, DifferenceProfile, DisjointFamily,
};
use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, FiniteGroup};
use crate::rational::Rational;

/// The single value of `values` when all entries agree.
fn constant<T: PartialEq + Clone>(mut values: impl Iterator<Item = T>) -> Option<T> {
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}

fn equal_sizes(p: &DifferenceProfile) -> bool {
    p.sizes().windows(2).all(|w| w[0] == w[1])
}

fn whole_group_single_set(p: &DifferenceProfile) -> bool {
    p.m() == 1 && p.sizes()[0] == p.n()
}

/// `λ` when `Σ_i N_i(δ) = λ` for every `δ`.
///
/// Requires equal set sizes. For `m = 1` only the whole-group family counts
/// (as the trivial `λ = 0` case).
pub fn check_edf(p: &DifferenceProfile) -> Option<u64> {
    if p.n() < 2 || !equal_sizes(p) || (p.m() == 1 && !whole_group_single_set(p)) {
        return None;
    }
    constant(p.deltas().map(|d| p.column_total(d)))
}

/// `λ` when every cell `N_i(δ)` equals `λ`. Same size and `m = 1`
/// conventions as [`check_edf`].
pub fn check_sedf(p: &DifferenceProfile) -> Option<u64> {
    if p.n() < 2 || !equal_sizes(p) || (p.m() == 1 && !whole_group_single_set(p)) {
        return None;
    }
    constant((0..p.m()).flat_map(|i| p.row(i).iter().map(|&c| c as u64)))
}

/// Per-row constants `λ_i` when each row of the profile is constant.
pub fn check_gsedf(p: &DifferenceProfile) -> Option<Vec<u64>> {
    if p.n() < 2 {
        return None;
    }
    (0..p.m())
        .map(|i| constant(p.row(i).iter().map(|&c| c as u64)))
        .collect()
}

/// First `δ` whose reciprocal sum differs from that at `δ = 1`.
pub fn rwedf_witness(p: &DifferenceProfile) -> Option<Element> {
    match reciprocal_sums(p) {
        Some(s) => {
            let first = *s.values.first()?;
            s.values
                .iter()
                .position(|&v| v != first)
                .map(|i| i as Element + 1)
        }
        None => {
            let first = reciprocal_sum(p, 1);
            p.deltas().find(|&d| reciprocal_sum(p, d) != first)
        }
    }
}

/// `ℓ` when `Σ_i N_i(δ)/k_i = ℓ` for every `δ`.
pub fn check_rwedf(p: &DifferenceProfile) -> Option<Rational> {
    if p.n() < 2 {
        return None;
    }
    match reciprocal_sums(p) {
        Some(s) => constant(s.values.iter().copied()).map(|v| Rational::new(v, s.scale)),
        None => constant(p.deltas().map(|d| reciprocal_sum(p, d))),
    }
}

/// `ℓ` when `Σ_i w_i N_i(δ) = ℓ` for every `δ`.
pub fn check_wedf(p: &DifferenceProfile, weights: &[Rational]) -> Result<Option<Rational>> {
    validate_weights(p.m(), weights)?;
    if p.n() < 2 {
        return Ok(None);
    }
    let sums = p
        .deltas()
        .map(|d| weighted_sum(p, weights, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(constant(sums.into_iter()))
}

/// Multiplicity of each `δ` among internal left differences `x·y⁻¹`,
/// `x ≠ y ∈ d`, indexed by `δ` (slot 0 unused).
pub fn internal_multiplicities(g: &FiniteGroup, d: &ElementSet) -> Vec<u64> {
    let mut counts = vec![0u64; g.order()];
    for x in d.iter() {
        for y in d.iter() {
            if x != y {
                counts[g.difference(x, y) as usize] += 1;
            }
        }
    }
    counts
}

/// `λ` when every non-identity element occurs exactly `λ` times as an
/// internal difference of `d`.
pub fn check_difference_set(g: &FiniteGroup, d: &ElementSet) -> Option<u64> {
    if g.order() < 2 {
        return None;
    }
    let counts = internal_multiplicities(g, d);
    constant(counts[1..].iter().copied())
}

/// `(λ, μ)` when internal differences of `d` hit each element of `d ∖ {0}`
/// exactly `λ` times and each element of `G* ∖ d` exactly `μ` times.
///
/// Abelian groups only; sets of size ≤ 1 and sets covering all of `G*`
/// report `None`.
pub fn check_partial_difference_set(g: &FiniteGroup, d: &ElementSet) -> Option<(u64, u64)> {
    if !g.is_abelian() || d.len() <= 1 || g.order() < 2 {
        return None;
    }
    let counts = internal_multiplicities(g, d);
    let lambda = constant(
        g.nonidentity()
            .filter(|&x| d.contains(x))
            .map(|x| counts[x as usize]),
    )?;
    let mu = constant(
        g.nonidentity()
            .filter(|&x| !d.contains(x))
            .map(|x| counts[x as usize]),
    )?;
    Some((lambda, mu))
}

/// Compares `ℓ²` with `2/(n−1)`, the minimum for two-set families, in exact
/// integer arithmetic. `Less` means no `(n,2;·,·;ℓ)`-RWEDF can exist.
pub fn compare_ell_to_m2_bound(n: usize, ell: &Rational) -> Ordering {
    assert!(n >= 3, "bound is stated for n ≥ 3");
    // ℓ² ≥ 2/(n−1)  ⇔  p²(n−1) ≥ 2q²
    let lhs = ell.numer() * ell.numer() * (n as u64 - 1);
    let rhs = ell.denom() * ell.denom() * 2u32;
    lhs.cmp(&rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum M2Structure {
    Edf,
    Gsedf,
    /// Neither; a two-set RWEDF should never land here.
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmdSummary {
    pub e_hat: Rational,
    pub r_bound: Rational,
    pub r_optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedfVerdict {
    pub weights: Vec<Rational>,
    pub ell: Option<Rational>,
}

/// `λ` = number of sets with `N_i(δ) ≠ 0`, `μ` = number with `N_i(δ) = 0`;
/// `λ + μ = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SupportConstants {
    pub lambda: u64,
    pub mu: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub m: usize,
    pub sizes: Vec<usize>,
    pub total: usize,
    pub abelian: bool,
    pub edf: Option<u64>,
    pub sedf: Option<u64>,
    pub gsedf: Option<Vec<u64>>,
    pub wedf: Option<WedfVerdict>,
    pub rwedf: Option<Rational>,
    /// First `δ` breaking RWEDF constancy.
    pub rwedf_witness: Option<Element>,
    pub bimodal: Bimodality,
    /// `(n−1)ℓ = (m−1)T`; vacuously true when not an RWEDF.
    pub param_identity_ok: bool,
    /// One of the two trivial shapes: a single set equal to the group, or
    /// all singletons covering the group.
    pub trivial: bool,
    /// A non-trivial RWEDF with `ℓ ≥ m`, or integer `ℓ > m−1`.
    pub ell_bound_violation: bool,
    pub amd: AmdSummary,
    pub m2_structure: Option<M2Structure>,
    pub support_constants: Option<SupportConstants>,
}

impl ClassificationReport {
    pub fn is_rwedf(&self) -> bool {
        self.rwedf.is_some()
    }
}

/// Full classification without WEDF weights.
pub fn classify(f: &DisjointFamily) -> Result<ClassificationReport> {
    classify_with_weights(f, None)
}

pub fn classify_with_weights(
    f: &DisjointFamily,
    weights: Option<&[Rational]>,
) -> Result<ClassificationReport> {
    let n = f.n();
    if n < 2 {
        return Err(Error::DegenerateGroup(n));
    }
    let p = difference_profile(f);
    classify_profile(f, &p, weights)
}

/// Classification from a precomputed profile of `f`.
pub fn classify_profile(
    f: &DisjointFamily,
    p: &DifferenceProfile,
    weights: Option<&[Rational]>,
) -> Result<ClassificationReport> {
    let (n, m, total) = (f.n(), f.m(), f.total());
    if n < 2 {
        return Err(Error::DegenerateGroup(n));
    }
    let sizes = f.sizes();
    let trivial = (m == 1 && total == n) || (m == n && sizes.iter().all(|&k| k == 1));

    let rwedf = if m == 1 {
        Some(Rational::zero())
    } else {
        check_rwedf(p)
    };
    let rwedf_witness = if rwedf.is_some() {
        None
    } else {
        rwedf_witness(p)
    };

    let wedf = match weights {
        Some(w) => Some(WedfVerdict {
            weights: w.to_vec(),
            ell: check_wedf(p, w)?,
        }),
        None => None,
    };

    let e_hat = e_hat_of_profile(p);
    let bound = r_bound(n, m, total)?;
    let r_optimal = e_hat == bound;

    let param_identity_ok = match &rwedf {
        Some(ell) => {
            ell * &Rational::from((n - 1) as i64) == Rational::from(((m - 1) * total) as i64)
        }
        None => true,
    };
    let ell_bound_violation = match &rwedf {
        // integer ℓ > m−1 is the same as ℓ ≥ m
        Some(ell) if !trivial => *ell >= Rational::from(m as i64),
        _ => false,
    };

    let edf = check_edf(p);
    let gsedf = check_gsedf(p);
    let m2_structure = match (&rwedf, m) {
        (Some(_), 2) if edf.is_some() && sizes[0] == sizes[1] => Some(M2Structure::Edf),
        (Some(_), 2) if gsedf.is_some() => Some(M2Structure::Gsedf),
        (Some(_), 2) => Some(M2Structure::Neither),
        _ => None,
    };

    let bimodal = is_bimodal(p);
    let support_constants = if bimodal.holds {
        constant(
            p.deltas()
                .map(|d| (0..m).filter(|&i| p.count(i, d) != 0).count() as u64),
        )
        .map(|lambda| SupportConstants {
            lambda,
            mu: m as u64 - lambda,
        })
    } else {
        None
    };

    Ok(ClassificationReport {
        n,
        m,
        sizes,
        total,
        abelian: f.group().is_abelian(),
        edf,
        sedf: check_sedf(p),
        gsedf,
        wedf,
        rwedf,
        rwedf_witness,
        bimodal,
        param_identity_ok,
        trivial,
        ell_bound_violation,
        amd: AmdSummary {
            e_hat,
            r_bound: bound,
            r_optimal,
        },
        m2_structure,
        support_constants,
    })
}

/// `e_δ` for every `δ`, exposed for reports and the simulator.
pub fn e_delta_values(f: &DisjointFamily) -> Vec<Rational> {
    e_delta_table(&difference_profile(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_direct_product, make_elementary_abelian};

    fn fam(g: &FiniteGroup, sets: &[Vec<Element>]) -> DisjointFamily {
        DisjointFamily::from_vecs(g, sets).unwrap()
    }

    fn z3sq() -> FiniteGroup {
        let z3 = make_cyclic(3).unwrap();
        make_direct_product(&z3, &z3)
    }

    fn z3sq_family() -> DisjointFamily {
        // (1,1),(2,2) | (0,1),(0,2) | (1,2),(2,1) | (1,0),(2,0)
        fam(&z3sq(), &[vec![4, 8], vec![1, 2], vec![5, 7], vec![3, 6]])
    }

    fn z8_family() -> DisjointFamily {
        fam(
            &make_cyclic(8).unwrap(),
            &[vec![0, 1, 3], vec![4, 5, 7], vec![2, 6]],
        )
    }

    fn z10_family() -> DisjointFamily {
        fam(
            &make_cyclic(10).unwrap(),
            &[vec![0], vec![5], vec![1, 9], vec![2, 3]],
        )
    }

    fn z12_family() -> DisjointFamily {
        fam(
            &make_cyclic(12).unwrap(),
            &[
                vec![3, 6, 9],
                vec![4, 8],
                vec![1],
                vec![2],
                vec![5],
                vec![7],
                vec![10],
                vec![11],
            ],
        )
    }

    fn squares_mod(q: u32) -> Vec<Element> {
        let mut s: Vec<Element> = (1..q).map(|x| x * x % q).collect();
        s.sort();
        s.dedup();
        s
    }

    #[test]
    fn edf_examples() {
        assert_eq!(check_edf(&difference_profile(&z3sq_family())), Some(6));
        assert_eq!(check_edf(&difference_profile(&z8_family())), None);
        let sq = squares_mod(13);
        let non: Vec<Element> = (1..13).filter(|x| !sq.contains(x)).collect();
        let f = fam(&make_cyclic(13).unwrap(), &[sq, non]);
        // 2k²/(n−1) with k = 6, n = 13
        assert_eq!(check_edf(&difference_profile(&f)), Some(6));
    }

    #[test]
    fn sedf_examples() {
        let z10 = make_cyclic(10).unwrap();
        let f = fam(&z10, &[vec![0, 1, 2], vec![3, 6, 9]]);
        assert_eq!(check_sedf(&difference_profile(&f)), Some(1));
        assert_eq!(check_sedf(&difference_profile(&z3sq_family())), None);
        let single = fam(&z10, &[vec![0, 1, 2]]);
        assert_eq!(check_sedf(&difference_profile(&single)), None);
        let whole = fam(&z10, &[(0..10).collect()]);
        assert_eq!(check_sedf(&difference_profile(&whole)), Some(0));
    }

    #[test]
    fn gsedf_examples() {
        let z7 = make_cyclic(7).unwrap();
        let f = fam(&z7, &[vec![0, 1], vec![2, 4, 6]]);
        assert_eq!(check_gsedf(&difference_profile(&f)), Some(vec![1, 1]));
        let pair = fam(&z7, &[vec![0, 1, 3], vec![2, 4, 5, 6]]);
        assert_eq!(check_gsedf(&difference_profile(&pair)), Some(vec![2, 2]));
        assert_eq!(check_gsedf(&difference_profile(&z8_family())), None);
    }

    #[test]
    fn rwedf_examples() {
        let p = difference_profile(&z10_family());
        assert_eq!(check_rwedf(&p), Some(Rational::from(2)));
        let p8 = difference_profile(&z8_family());
        assert_eq!(check_rwedf(&p8), None);
        // reciprocal sums: δ = 1 gives 2/3+2/3+1, δ = 4 gives 1+1+0
        assert_eq!(rwedf_witness(&p8), Some(4));
    }

    #[test]
    fn wedf_examples() {
        let p = difference_profile(&z8_family());
        let half = vec![Rational::new(1, 2); 3];
        assert_eq!(check_wedf(&p, &half).unwrap(), Some(Rational::from(3)));
        // oracle: N-columns are (3,3,0) at δ = 4 and (2,2,2) elsewhere, both summing to 6
        assert_eq!(
            check_wedf(&p, &vec![Rational::one(); 3]).unwrap(),
            Some(Rational::from(6))
        );
        let uneven = vec![Rational::one(), Rational::new(1, 2), Rational::new(1, 2)];
        assert_eq!(check_wedf(&p, &uneven).unwrap(), None);
        assert!(check_wedf(&p, &[Rational::from(2), Rational::one(), Rational::one()]).is_err());

        // SEDF: ℓ = λ Σ w_i for any valid weights
        let f = fam(&make_cyclic(10).unwrap(), &[vec![0, 1, 2], vec![3, 6, 9]]);
        let w = vec![Rational::new(1, 3), Rational::new(3, 4)];
        let ell = check_wedf(&difference_profile(&f), &w).unwrap().unwrap();
        assert_eq!(ell, Rational::new(1, 3) + Rational::new(3, 4));
    }

    #[test]
    fn difference_set_examples() {
        let z7 = make_cyclic(7).unwrap();
        assert_eq!(
            check_difference_set(&z7, &ElementSet::new(vec![1, 2, 4])),
            Some(1)
        );
        assert_eq!(
            check_difference_set(&z7, &ElementSet::new((0..7).collect())),
            Some(7)
        );
        assert_eq!(
            check_difference_set(&z7, &ElementSet::new(vec![0, 1])),
            None
        );
    }

    #[test]
    fn partial_difference_set_examples() {
        let z13 = make_cyclic(13).unwrap();
        let sq = ElementSet::new(squares_mod(13));
        // oracle: brute-force multiplicities over the 30 ordered pairs
        let mut on = Vec::new();
        let mut off = Vec::new();
        for delta in 1..13u32 {
            let mut c = 0;
            for &x in sq.members() {
                for &y in sq.members() {
                    if x != y && (x + 13 - y) % 13 == delta {
                        c += 1;
                    }
                }
            }
            if sq.contains(delta) {
                on.push(c)
            } else {
                off.push(c)
            }
        }
        assert!(on.iter().all(|&c| c == on[0]) && off.iter().all(|&c| c == off[0]));
        assert_eq!(
            check_partial_difference_set(&z13, &sq),
            Some((on[0], off[0]))
        );
        assert_eq!(check_partial_difference_set(&z13, &sq), Some((2, 3)));

        let z5 = make_cyclic(5).unwrap();
        assert_eq!(
            check_partial_difference_set(&z5, &ElementSet::new(vec![1, 2])),
            None
        );
        assert_eq!(
            check_partial_difference_set(&z5, &ElementSet::new(vec![0])),
            None
        );
    }

    #[test]
    fn classify_z12() {
        let r = classify(&z12_family()).unwrap();
        assert_eq!(r.rwedf, Some(Rational::from(7)));
        assert!(r.bimodal.holds);
        assert_eq!(
            r.support_constants,
            Some(SupportConstants { lambda: 7, mu: 1 })
        );
        assert!(r.amd.r_optimal && r.param_identity_ok && !r.ell_bound_violation);
    }

    #[test]
    fn classify_z3sq() {
        let r = classify(&z3sq_family()).unwrap();
        assert_eq!(r.rwedf, Some(Rational::from(3)));
        assert_eq!(r.edf, Some(6));
        assert_eq!(
            r.support_constants,
            Some(SupportConstants { lambda: 3, mu: 1 })
        );
        let same = classify(&fam(
            &make_elementary_abelian(3, 2).unwrap(),
            &[vec![4, 8], vec![1, 2], vec![5, 7], vec![3, 6]],
        ))
        .unwrap();
        assert_eq!(same.rwedf, r.rwedf);
    }

    #[test]
    fn classify_z7_pair() {
        let r = classify(&fam(
            &make_cyclic(7).unwrap(),
            &[vec![0, 1, 3], vec![2, 4, 5, 6]],
        ))
        .unwrap();
        assert_eq!(r.rwedf, Some(Rational::new(7, 6)));
        assert_eq!(r.m2_structure, Some(M2Structure::Gsedf));
    }

    #[test]
    fn classify_z8_is_not_r_optimal() {
        let r = classify_with_weights(&z8_family(), Some(&vec![Rational::new(1, 2); 3])).unwrap();
        assert_eq!(r.rwedf, None);
        assert_eq!(r.rwedf_witness, Some(4));
        assert_eq!(r.wedf.unwrap().ell, Some(Rational::from(3)));
        assert_eq!(r.amd.e_hat, Rational::new(7, 9));
        assert_eq!(r.amd.r_bound, Rational::new(16, 21));
        assert!(!r.amd.r_optimal);
    }

    #[test]
    fn m1_conventions() {
        let z6 = make_cyclic(6).unwrap();
        let whole = classify(&fam(&z6, &[(0..6).collect()])).unwrap();
        assert!(whole.trivial);
        assert_eq!(
            (whole.edf, whole.sedf, whole.rwedf.clone()),
            (Some(0), Some(0), Some(Rational::zero()))
        );
        let part = classify(&fam(&z6, &[vec![1, 2]])).unwrap();
        assert!(!part.trivial);
        assert_eq!(
            (part.edf, part.sedf, part.rwedf),
            (None, None, Some(Rational::zero()))
        );
        assert!(part.amd.r_optimal);
    }

    #[test]
    fn m2_bound_comparisons() {
        for k in 1..6i64 {
            let n = (2 * k * k + 1) as usize;
            assert_eq!(
                compare_ell_to_m2_bound(n, &Rational::new(1, k)),
                Ordering::Equal
            );
        }
        assert_eq!(
            compare_ell_to_m2_bound(7, &Rational::new(7, 6)),
            Ordering::Greater
        );
        assert_eq!(
            compare_ell_to_m2_bound(9, &Rational::new(1, 4)),
            Ordering::Less
        );
    }

    #[test]
    fn degenerate_group_is_rejected() {
        let g = make_cyclic(1).unwrap();
        assert!(matches!(
            classify(&fam(&g, &[vec![0]])),
            Err(Error::DegenerateGroup(1))
        ));
    }
}
