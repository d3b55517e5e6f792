//! Finite groups on dense element indices.
//!
//! Every group has elements `0..n` with the identity pinned at `0`. The
//! structured constructors compute composition arithmetically; groups given
//! by a Cayley table keep the table. All difference computations elsewhere in
//! the crate go through [`FiniteGroup::difference`], which is the left
//! difference `x·y⁻¹` (`x − y` in additive notation).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense element index. The identity is always `0`.
pub type Element = u32;

/// Cayley tables up to this order are fully validated (associativity is
/// cubic), and [`enumerate_subgroups`] refuses larger groups.
pub const DEFAULT_ORDER_BOUND: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic,
    DirectProduct,
    ElementaryAbelian,
    Dihedral,
    Heisenberg,
    CayleyTable,
}

#[derive(Clone)]
enum Law {
    Cyclic,
    Product {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
    Elementary {
        p: u32,
        e: u32,
    },
    Dihedral {
        n: u32,
    },
    Heisenberg {
        p: u32,
    },
    Table(Vec<Element>),
}

/// A finite group of order `n` on elements `0..n`.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    law: Law,
    inverses: Vec<Element>,
    abelian: bool,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("kind", &self.kind())
            .field("order", &self.order)
            .field("abelian", &self.abelian)
            .finish()
    }
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn kind(&self) -> GroupKind {
        match self.law {
            Law::Cyclic => GroupKind::Cyclic,
            Law::Product { .. } => GroupKind::DirectProduct,
            Law::Elementary { .. } => GroupKind::ElementaryAbelian,
            Law::Dihedral { .. } => GroupKind::Dihedral,
            Law::Heisenberg { .. } => GroupKind::Heisenberg,
            Law::Table(_) => GroupKind::CayleyTable,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        0..self.order as Element
    }

    /// Non-identity elements in index order.
    pub fn nonidentity(&self) -> impl Iterator<Item = Element> + '_ {
        1..self.order as Element
    }

    pub fn contains(&self, x: Element) -> bool {
        (x as usize) < self.order
    }

    pub fn compose(&self, x: Element, y: Element) -> Element {
        debug_assert!(self.contains(x) && self.contains(y));
        match &self.law {
            Law::Cyclic => ((x as u64 + y as u64) % self.order as u64) as Element,
            Law::Product { left, right } => {
                let w = right.order as Element;
                let a = left.compose(x / w, y / w);
                let b = right.compose(x % w, y % w);
                a * w + b
            }
            Law::Elementary { p: 2, .. } => x ^ y,
            Law::Elementary { p, e } => {
                let (mut x, mut y) = (x, y);
                let (mut out, mut place) = (0, 1);
                for _ in 0..*e {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                out
            }
            Law::Dihedral { n } => {
                // y^r x^k · y^s x^l = y^(r+s) x^((-1)^s k + l)
                let (r, k) = (x / n, x % n);
                let (s, l) = (y / n, y % n);
                let k = if s == 1 { (n - k) % n } else { k };
                ((r + s) % 2) * n + (k + l) % n
            }
            Law::Heisenberg { p } => {
                let (a, b, c) = (x / (p * p), (x / p) % p, x % p);
                let (a2, b2, c2) = (y / (p * p), (y / p) % p, y % p);
                let na = (a + a2) % p;
                let nb = (b + b2 + a * c2) % p;
                let nc = (c + c2) % p;
                (na * p + nb) * p + nc
            }
            Law::Table(t) => t[x as usize * self.order + y as usize],
        }
    }

    pub fn inverse(&self, x: Element) -> Element {
        self.inverses[x as usize]
    }

    /// Left difference `x·y⁻¹`.
    pub fn difference(&self, x: Element, y: Element) -> Element {
        self.compose(x, self.inverse(y))
    }

    /// Element order (smallest `k ≥ 1` with `x^k = 0`).
    pub fn element_order(&self, x: Element) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.compose(acc, x);
            k += 1;
        }
        k
    }

    pub fn power(&self, x: Element, k: usize) -> Element {
        (0..k).fold(0, |acc, _| self.compose(acc, x))
    }

    /// Full multiplication table, row `x` column `y` holding `x·y`.
    pub fn cayley_table(&self) -> Vec<Vec<Element>> {
        self.elements()
            .map(|x| self.elements().map(|y| self.compose(x, y)).collect())
            .collect()
    }

    /// Dense `n × n` table of left differences, `table[x * n + y] = x·y⁻¹`.
    pub fn difference_table(&self) -> Vec<Element> {
        let n = self.order;
        let mut out = Vec::with_capacity(n * n);
        for x in self.elements() {
            for y in self.elements() {
                out.push(self.difference(x, y));
            }
        }
        out
    }

    /// Exhaustive check of the group axioms and the abelian flag.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order as Element;
        for x in 0..n {
            if self.compose(0, x) != x || self.compose(x, 0) != x {
                return Err(Error::NotAGroup(format!("0 is not an identity for {x}")));
            }
            let inv = self.inverse(x);
            if self.compose(x, inv) != 0 || self.compose(inv, x) != 0 {
                return Err(Error::NotAGroup(format!("{inv} is not an inverse of {x}")));
            }
            for y in 0..n {
                let xy = self.compose(x, y);
                if self.abelian && xy != self.compose(y, x) {
                    return Err(Error::NotAGroup(format!("{x} and {y} do not commute")));
                }
                for z in 0..n {
                    if self.compose(xy, z) != self.compose(x, self.compose(y, z)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        if !self.abelian && commutes_everywhere(self) {
            return Err(Error::NotAGroup("abelian flag is wrong".into()));
        }
        Ok(())
    }

    /// The JSON descriptor that rebuilds this group.
    pub fn descriptor(&self) -> GroupDescriptor {
        match &self.law {
            Law::Cyclic => GroupDescriptor::Cyclic { n: self.order },
            Law::Product { left, right } => {
                let mut factors = Vec::new();
                for g in [left, right] {
                    match g.descriptor() {
                        GroupDescriptor::Product { factors: inner } => factors.extend(inner),
                        d => factors.push(d),
                    }
                }
                GroupDescriptor::Product { factors }
            }
            Law::Elementary { p, e } => GroupDescriptor::ElementaryAbelian { p: *p, e: *e },
            Law::Dihedral { n } => GroupDescriptor::Dihedral { n: *n },
            Law::Heisenberg { p } => GroupDescriptor::Heisenberg { p: *p },
            Law::Table(_) => GroupDescriptor::CayleyTable {
                table: self.cayley_table(),
            },
        }
    }

    /// Checks that every member of `set` is an element of this group.
    pub fn check_set(&self, set: &ElementSet) -> Result<()> {
        match set.iter().find(|&x| !self.contains(x)) {
            Some(element) => Err(Error::ElementOutOfRange {
                element,
                order: self.order,
            }),
            None => Ok(()),
        }
    }

    /// Membership mask over the group's elements.
    pub fn mask(&self, set: &ElementSet) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for x in set.iter() {
            bits.insert(x as usize);
        }
        bits
    }

    fn from_law(order: usize, law: Law, abelian: bool) -> Self {
        let mut g = FiniteGroup {
            order,
            law,
            inverses: Vec::new(),
            abelian,
        };
        g.inverses = match &g.law {
            Law::Cyclic => (0..order as Element)
                .map(|x| ((order as Element) - x) % order as Element)
                .collect(),
            Law::Product { left, right } => {
                let w = right.order as Element;
                (0..order as Element)
                    .map(|x| left.inverse(x / w) * w + right.inverse(x % w))
                    .collect()
            }
            _ => (0..order as Element)
                .map(|x| {
                    let k = g.element_order(x);
                    g.power(x, k - 1)
                })
                .collect(),
        };
        g
    }
}

fn commutes_everywhere(g: &FiniteGroup) -> bool {
    g.elements()
        .all(|x| g.elements().all(|y| g.compose(x, y) == g.compose(y, x)))
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Z_n` under addition mod `n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "cyclic group order must be ≥ 1".into(),
        ));
    }
    Ok(FiniteGroup::from_law(n, Law::Cyclic, true))
}

/// `g × h`, with the pair `(a, b)` stored at index `a·|h| + b`.
pub fn make_direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    FiniteGroup::from_law(
        g.order * h.order,
        Law::Product {
            left: Arc::new(g.clone()),
            right: Arc::new(h.clone()),
        },
        g.abelian && h.abelian,
    )
}

/// `Z_p^e`. The digit vector `(x_1, …, x_e)` is stored at index
/// `Σ x_i p^(e−i)`, so `x_1` is the most significant digit and the encoding
/// agrees with iterated [`make_direct_product`] of `Z_p`.
pub fn make_elementary_abelian(p: u32, e: u32) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if e == 0 {
        return Err(Error::InvalidParameters("exponent must be ≥ 1".into()));
    }
    let order = (p as usize)
        .checked_pow(e)
        .filter(|&n| n <= Element::MAX as usize)
        .ok_or_else(|| Error::InvalidParameters(format!("{p}^{e} is too large")))?;
    Ok(FiniteGroup::from_law(order, Law::Elementary { p, e }, true))
}

/// Dihedral group of order `2n` with `ord(x) = n`, `ord(y) = 2`,
/// `xy = yx⁻¹`. The element `y^r x^k` is stored at index `r·n + k`.
pub fn make_dihedral(n: u32) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "dihedral parameter must be ≥ 1".into(),
        ));
    }
    Ok(FiniteGroup::from_law(
        2 * n as usize,
        Law::Dihedral { n },
        n <= 2,
    ))
}

/// Upper unitriangular 3×3 matrices over `GF(p)`. The matrix with
/// superdiagonal `a`, `c` and corner `b` is stored at index `a·p² + b·p + c`;
/// composition is `(a,b,c)·(a',b',c') = (a+a', b+b'+a·c', c+c')`.
pub fn make_heisenberg(p: u32) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    Ok(FiniteGroup::from_law(
        (p as usize).pow(3),
        Law::Heisenberg { p },
        false,
    ))
}

/// A group from its multiplication table (`table[x][y] = x·y`).
///
/// The identity must sit at index 0. Tables up to [`DEFAULT_ORDER_BOUND`]
/// are checked for associativity; larger tables are checked for identity,
/// inverses and the Latin-square property only.
pub fn make_from_cayley_table(table: Vec<Vec<Element>>) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!(
                "row {x} has length {}",
                row.len()
            )));
        }
        for &v in row {
            if v as usize >= n {
                return Err(Error::NotAGroup(format!(
                    "entry {v} out of range in row {x}"
                )));
            }
        }
        flat.extend_from_slice(row);
    }
    for x in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for y in 0..n {
            row_seen[flat[x * n + y] as usize] = true;
            col_seen[flat[y * n + x] as usize] = true;
        }
        if row_seen.contains(&false) || col_seen.contains(&false) {
            return Err(Error::NotAGroup(format!(
                "row or column {x} is not a permutation"
            )));
        }
    }
    let is_identity =
        |e: usize| (0..n).all(|x| flat[e * n + x] as usize == x && flat[x * n + e] as usize == x);
    if !is_identity(0) {
        return match (1..n).find(|&e| is_identity(e)) {
            Some(e) => Err(Error::IdentityNotZero {
                found: e as Element,
            }),
            None => Err(Error::NotAGroup("no identity element".into())),
        };
    }
    let mut inverses = vec![0; n];
    for x in 0..n {
        let y = (0..n)
            .find(|&y| flat[x * n + y] == 0)
            .ok_or_else(|| Error::NotAGroup(format!("{x} has no inverse")))?;
        if flat[y * n + x] != 0 {
            return Err(Error::NotAGroup(format!("{x} has no two-sided inverse")));
        }
        inverses[x] = y as Element;
    }
    let abelian = (0..n).all(|x| (0..n).all(|y| flat[x * n + y] == flat[y * n + x]));
    let g = FiniteGroup {
        order: n,
        law: Law::Table(flat),
        inverses,
        abelian,
    };
    if n <= DEFAULT_ORDER_BOUND {
        g.verify_axioms()?;
    }
    Ok(g)
}

/// A sorted, duplicate-free set of element indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Element>", into = "Vec<Element>")]
pub struct ElementSet(Vec<Element>);

impl ElementSet {
    pub fn new(mut members: Vec<Element>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSet(members)
    }

    pub fn empty() -> Self {
        ElementSet(Vec::new())
    }

    pub fn members(&self) -> &[Element] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<Element> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.iter().filter(|&x| other.contains(x)).collect())
    }

    /// This set with the identity removed.
    pub fn star(&self) -> ElementSet {
        ElementSet(self.iter().filter(|&x| x != 0).collect())
    }

    /// Image under right translation `x ↦ x·t`.
    pub fn right_translate(&self, g: &FiniteGroup, t: Element) -> ElementSet {
        ElementSet::new(self.iter().map(|x| g.compose(x, t)).collect())
    }
}

impl From<Vec<Element>> for ElementSet {
    fn from(v: Vec<Element>) -> Self {
        ElementSet::new(v)
    }
}

impl From<ElementSet> for Vec<Element> {
    fn from(s: ElementSet) -> Self {
        s.0
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        ElementSet::new(iter.into_iter().collect())
    }
}

/// A subgroup together with a generating set for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    carrier: ElementSet,
    generators: ElementSet,
}

impl Subgroup {
    pub fn carrier(&self) -> &ElementSet {
        &self.carrier
    }

    pub fn generators(&self) -> &ElementSet {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.carrier.contains(x)
    }

    pub fn star(&self) -> ElementSet {
        self.carrier.star()
    }

    pub fn is_trivial(&self) -> bool {
        self.carrier.len() == 1
    }
}

/// The subgroup generated by `gens`.
///
/// Breadth-first closure from the identity under right multiplication by the
/// generators; in a finite group this also yields all inverses.
pub fn closure(g: &FiniteGroup, gens: &ElementSet) -> Subgroup {
    let bits = closure_bits(g, gens.members());
    Subgroup {
        carrier: bits.ones().map(|x| x as Element).collect(),
        generators: gens.clone(),
    }
}

fn closure_bits(g: &FiniteGroup, gens: &[Element]) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut queue = VecDeque::from([0]);
    seen.insert(0);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.compose(x, s);
            if !seen.put(y as usize) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Left cosets `x·H`, each sorted. The coset containing `0` comes first and
/// the rest are ordered by smallest member.
pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> Vec<ElementSet> {
    let mut covered = FixedBitSet::with_capacity(g.order());
    let mut out = Vec::with_capacity(g.order() / h.order().max(1));
    for x in g.elements() {
        if covered.contains(x as usize) {
            continue;
        }
        let coset: ElementSet = h.carrier.iter().map(|s| g.compose(x, s)).collect();
        for y in coset.iter() {
            covered.insert(y as usize);
        }
        out.push(coset);
    }
    out
}

/// All subgroups of `g`, sorted by order and then lexicographically by
/// carrier. Refuses groups larger than [`DEFAULT_ORDER_BOUND`].
pub fn enumerate_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_bounded(g, DEFAULT_ORDER_BOUND)
}

/// [`enumerate_subgroups`] with an explicit order bound.
///
/// Cyclic extension: start from the cyclic subgroups, then repeatedly join
/// each known subgroup with one more cyclic subgroup until no new subgroup
/// appears.
pub fn enumerate_subgroups_bounded(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound,
        });
    }
    let mut found: HashSet<FixedBitSet> = HashSet::new();
    let mut gens_of: Vec<(FixedBitSet, Vec<Element>)> = Vec::new();
    let mut frontier = Vec::new();
    for x in g.elements() {
        let bits = closure_bits(g, &[x]);
        if found.insert(bits.clone()) {
            let gens = if x == 0 { vec![] } else { vec![x] };
            gens_of.push((bits.clone(), gens));
            frontier.push(gens_of.len() - 1);
        }
    }
    // one representative generator per cyclic subgroup
    let cyclic_reps: Vec<Element> = gens_of
        .iter()
        .filter_map(|(_, gens)| gens.first().copied())
        .collect();
    while let Some(idx) = frontier.pop() {
        let (bits, gens) = gens_of[idx].clone();
        for &x in &cyclic_reps {
            if bits.contains(x as usize) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let joined = closure_bits(g, &new_gens);
            if found.insert(joined.clone()) {
                gens_of.push((joined, new_gens));
                frontier.push(gens_of.len() - 1);
            }
        }
    }
    let mut out: Vec<Subgroup> = gens_of
        .into_iter()
        .map(|(bits, gens)| Subgroup {
            carrier: bits.ones().map(|x| x as Element).collect(),
            generators: ElementSet::new(gens),
        })
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.carrier.cmp(&b.carrier))
    });
    Ok(out)
}

/// Serializable description of a group, e.g. `{"kind":"cyclic","n":8}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDescriptor {
    Cyclic { n: usize },
    Product { factors: Vec<GroupDescriptor> },
    ElementaryAbelian { p: u32, e: u32 },
    Dihedral { n: u32 },
    Heisenberg { p: u32 },
    CayleyTable { table: Vec<Vec<Element>> },
}

impl GroupDescriptor {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupDescriptor::Cyclic { n } => make_cyclic(*n),
            GroupDescriptor::Product { factors } => {
                let mut iter = factors.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::InvalidParameters("product needs factors".into()))?
                    .build()?;
                iter.try_fold(first, |acc, d| Ok(make_direct_product(&acc, &d.build()?)))
            }
            GroupDescriptor::ElementaryAbelian { p, e } => make_elementary_abelian(*p, *e),
            GroupDescriptor::Dihedral { n } => make_dihedral(*n),
            GroupDescriptor::Heisenberg { p } => make_heisenberg(*p),
            GroupDescriptor::CayleyTable { table } => make_from_cayley_table(table.clone()),
        }
    }
}
