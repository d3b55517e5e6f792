// Shared helpers for the integration tests: a battery of small groups and an
// unpruned generate-and-test enumerator used as an oracle for the search.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rwedf::group::{
    make_cyclic, make_dihedral, make_direct_product, make_elementary_abelian,
    make_from_cayley_table,
};
use rwedf::{Element, FiniteGroup, Rational};

pub type Family = Vec<Vec<Element>>;

/// `Z_n ⋊ Z_m` with `b a b⁻¹ = a^r`; element `a^i b^j` at index `i·m + j`.
pub fn metacyclic(n: u32, m: u32, r: u32) -> FiniteGroup {
    let pow = |j: u32| (0..j).fold(1u32, |acc, _| acc * r % n);
    let table = (0..n * m)
        .map(|x| {
            let (i, j) = (x / m, x % m);
            (0..n * m)
                .map(|y| {
                    let (k, l) = (y / m, y % m);
                    ((i + k * pow(j)) % n) * m + (j + l) % m
                })
                .collect()
        })
        .collect();
    make_from_cayley_table(table).expect("metacyclic table")
}

/// Quaternion group from signed units: index `2·u + s` for unit
/// `u ∈ {1, i, j, k}` and sign `s`.
pub fn quaternion() -> FiniteGroup {
    // unit products: (unit, negate)
    let unit = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let table = (0..8u32)
        .map(|x| {
            (0..8u32)
                .map(|y| {
                    let (u, v) = (x / 2, y / 2);
                    let (w, neg) = unit[u as usize][v as usize];
                    let sign = (x % 2) ^ (y % 2) ^ neg as u32;
                    2 * w + sign
                })
                .collect()
        })
        .collect();
    make_from_cayley_table(table).expect("quaternion table")
}

/// `A_4` as `Z_2² ⋊ Z_3`, the generator cycling the three involutions.
pub fn alternating4() -> FiniteGroup {
    // v ∈ Z_2² as 2 bits; φ(a, b) = (b, a + b)
    let phi = |v: u32| {
        let (a, b) = (v >> 1, v & 1);
        (b << 1) | (a ^ b)
    };
    let phi_pow = |v: u32, j: u32| (0..j).fold(v, |acc, _| phi(acc));
    let table = (0..12u32)
        .map(|x| {
            let (v, j) = (x / 3, x % 3);
            (0..12u32)
                .map(|y| {
                    let (w, l) = (y / 3, y % 3);
                    (v ^ phi_pow(w, j)) * 3 + (j + l) % 3
                })
                .collect()
        })
        .collect();
    make_from_cayley_table(table).expect("A4 table")
}

fn product(factors: &[usize]) -> FiniteGroup {
    let mut it = factors.iter().map(|&n| make_cyclic(n).unwrap());
    let first = it.next().unwrap();
    it.fold(first, |acc, g| make_direct_product(&acc, &g))
}

/// Every group of order `2..=12` up to isomorphism, and a selection of order
/// 13 to 16: all abelian groups plus dihedral, quaternion-type and
/// metacyclic ones.
pub fn group_battery(max_order: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 2..=16 {
        out.push((format!("Z{n}"), make_cyclic(n).unwrap()));
    }
    out.push(("Z2^2".into(), make_elementary_abelian(2, 2).unwrap()));
    out.push(("S3".into(), make_dihedral(3).unwrap()));
    out.push(("Z2xZ4".into(), product(&[2, 4])));
    out.push(("Z2^3".into(), make_elementary_abelian(2, 3).unwrap()));
    out.push(("D8".into(), make_dihedral(4).unwrap()));
    out.push(("Q8".into(), quaternion()));
    out.push(("Z3^2".into(), make_elementary_abelian(3, 2).unwrap()));
    out.push(("D10".into(), make_dihedral(5).unwrap()));
    out.push(("Z2xZ6".into(), product(&[2, 6])));
    out.push(("D12".into(), make_dihedral(6).unwrap()));
    out.push(("A4".into(), alternating4()));
    out.push(("Dic12".into(), metacyclic(3, 4, 2)));
    out.push(("D14".into(), make_dihedral(7).unwrap()));
    out.push(("Z2xZ8".into(), product(&[2, 8])));
    out.push(("Z4^2".into(), product(&[4, 4])));
    out.push(("Z2^2xZ4".into(), product(&[2, 2, 4])));
    out.push(("Z2^4".into(), make_elementary_abelian(2, 4).unwrap()));
    out.push(("D16".into(), make_dihedral(8).unwrap()));
    out.push((
        "Z2xQ8".into(),
        make_direct_product(&make_cyclic(2).unwrap(), &quaternion()),
    ));
    out.push((
        "Z2xD8".into(),
        make_direct_product(&make_cyclic(2).unwrap(), &make_dihedral(4).unwrap()),
    ));
    out.push(("Z4:Z4".into(), metacyclic(4, 4, 3)));
    out.push(("M16".into(), metacyclic(8, 2, 5)));
    out.push(("SD16".into(), metacyclic(8, 2, 3)));
    out.retain(|(_, g)| g.order() <= max_order);
    out.sort_by_key(|(_, g)| g.order());
    out.into_iter()
        .map(|(name, g)| (name, Arc::new(g)))
        .collect()
}

/// `N_i(δ)` by definition, indexed `[i][δ]`.
pub fn brute_counts(g: &FiniteGroup, sets: &[Vec<Element>]) -> Vec<Vec<u64>> {
    sets.iter()
        .enumerate()
        .map(|(i, a)| {
            let mut row = vec![0u64; g.order()];
            for (j, b) in sets.iter().enumerate() {
                if i == j {
                    continue;
                }
                for &x in a {
                    for &y in b {
                        row[g.compose(x, g.inverse(y)) as usize] += 1;
                    }
                }
            }
            row
        })
        .collect()
}

/// `Σ_i w_i N_i(δ)` is the same for every `δ ≠ 0`.
pub fn brute_weighted_constant(g: &FiniteGroup, sets: &[Vec<Element>], w: &[Rational]) -> bool {
    let counts = brute_counts(g, sets);
    let sums: BTreeSet<Rational> = (1..g.order())
        .map(|d| {
            counts
                .iter()
                .zip(w)
                .map(|(row, wi)| wi * &Rational::from(row[d] as i64))
                .sum()
        })
        .collect();
    sums.len() <= 1
}

pub fn brute_rwedf(g: &FiniteGroup, sets: &[Vec<Element>]) -> bool {
    let w: Vec<Rational> = sets
        .iter()
        .map(|s| Rational::new(1, s.len() as i64))
        .collect();
    g.order() >= 2 && brute_weighted_constant(g, sets, &w)
}

pub fn brute_bimodal(g: &FiniteGroup, sets: &[Vec<Element>]) -> bool {
    let counts = brute_counts(g, sets);
    counts
        .iter()
        .zip(sets)
        .all(|(row, s)| row[1..].iter().all(|&c| c == 0 || c == s.len() as u64))
}

fn choose(
    pool: &[Element],
    k: usize,
    start: usize,
    cur: &mut Vec<Element>,
    out: &mut Vec<Vec<Element>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for idx in start..pool.len() {
        cur.push(pool[idx]);
        choose(pool, k, idx + 1, cur, out);
        cur.pop();
    }
}

/// Sets ordered by size (descending) then lexicographically.
pub fn canonical(mut f: Family) -> Family {
    f.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    f
}

/// Every family with the given sizes by unpruned generate-and-test: each set
/// is any subset of what earlier sets left over, duplicates removed after
/// sorting.
pub fn naive_families(
    g: &FiniteGroup,
    sizes: &[usize],
    keep: &dyn Fn(&Family) -> bool,
) -> Vec<Family> {
    fn rec(
        g: &FiniteGroup,
        sizes: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Family,
        keep: &dyn Fn(&Family) -> bool,
        out: &mut BTreeSet<Family>,
    ) {
        if cur.len() == sizes.len() {
            let f = canonical(cur.clone());
            if !out.contains(&f) && keep(&f) {
                out.insert(f);
            }
            return;
        }
        let pool: Vec<Element> = g.elements().filter(|&x| !used[x as usize]).collect();
        let mut subsets = Vec::new();
        choose(&pool, sizes[cur.len()], 0, &mut Vec::new(), &mut subsets);
        for s in subsets {
            for &x in &s {
                used[x as usize] = true;
            }
            cur.push(s.clone());
            rec(g, sizes, used, cur, keep, out);
            cur.pop();
            for &x in &s {
                used[x as usize] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(
        g,
        sizes,
        &mut vec![false; g.order()],
        &mut Vec::new(),
        keep,
        &mut out,
    );
    out.into_iter().collect()
}

/// Bell numbers `B_0..=B_n` from the Bell triangle.
pub fn bell(n: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        out.push(next[0]);
        row = next;
    }
    out
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
