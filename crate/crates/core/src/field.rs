//! Small finite fields `GF(p^a)` on dense indices.
//!
//! The element with coefficient vector `(c_0, …, c_{a−1})` (polynomial
//! `c_0 + c_1 x + … `) is stored at index `Σ c_i p^i`. The modulus is the
//! lexicographically least monic irreducible polynomial of degree `a`, read
//! from the highest non-leading coefficient down.

use crate::error::{Error, Result};
use crate::group::is_prime;

#[derive(Clone, Debug)]
pub struct FieldGF {
    p: u32,
    degree: u32,
    /// Monic modulus, lowest coefficient first, length `degree + 1`.
    modulus: Vec<u32>,
    mul_table: Vec<u32>,
}

fn poly_degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of `num` modulo monic `den` over `Z_p`.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = poly_degree(den).expect("non-zero divisor");
    debug_assert_eq!(den[dd], 1);
    while let Some(rd) = poly_degree(&r) {
        if rd < dd {
            break;
        }
        let c = r[rd];
        let shift = rd - dd;
        for (i, &dc) in den.iter().enumerate().take(dd + 1) {
            r[i + shift] = (r[i + shift] + p - (c * dc) % p) % p;
        }
    }
    r.truncate(dd.max(1));
    r
}

fn digits(mut x: u64, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (x % p as u64) as u32;
            x /= p as u64;
            d
        })
        .collect()
}

/// Irreducibility over `Z_p` by trial division by every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(deg) = poly_degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldGF {
    /// `GF(p^degree)`.
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if degree == 0 {
            return Err(Error::InvalidParameters("field degree must be ≥ 1".into()));
        }
        let q = (p as u64)
            .checked_pow(degree)
            .filter(|&q| q <= 1 << 16)
            .ok_or_else(|| Error::InvalidParameters(format!("GF({p}^{degree}) is too large")))?;
        let modulus = (0..q)
            .map(|low| {
                let mut f = digits(low, p, degree as usize);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial exists for every degree");
        let mut field = FieldGF {
            p,
            degree,
            modulus,
            mul_table: Vec::new(),
        };
        let q = q as usize;
        if q <= 1 << 10 {
            let mut t = vec![0; q * q];
            for x in 0..q as u32 {
                for y in 0..q as u32 {
                    t[x as usize * q + y as usize] = field.mul_slow(x, y);
                }
            }
            field.mul_table = t;
        }
        Ok(field)
    }

    /// `GF(q)` for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, a) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p as u32, a)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn coeffs(&self, x: u32) -> Vec<u32> {
        digits(x as u64, self.p, self.degree as usize)
    }

    fn index(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.coeffs(x), self.coeffs(y));
        let s: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.index(&s)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if self.mul_table.is_empty() {
            self.mul_slow(x, y)
        } else {
            self.mul_table[x as usize * self.order() as usize + y as usize]
        }
    }

    fn mul_slow(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.coeffs(x), self.coeffs(y));
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.degree as usize, 0);
        self.index(&r)
    }

    /// Multiplicative order of a non-zero element.
    pub fn multiplicative_order(&self, x: u32) -> u32 {
        assert!(x != 0);
        let mut acc = x;
        let mut k = 1;
        while acc != 1 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// Non-zero squares, sorted.
    pub fn squares(&self) -> Vec<u32> {
        let mut s: Vec<u32> = (1..self.order()).map(|x| self.mul(x, x)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// `(p, a)` with `q = p^a`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut a = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        a += 1;
    }
    (rest == 1).then_some((p, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldGF::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldGF::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldGF::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldGF::new(7, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn irreducibility() {
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)²
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[2, 0, 1], 3)); // x² − 1
        assert!(!is_irreducible(&[0, 0, 1], 5));
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for (p, a) in [
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (5, 2),
            (7, 2),
        ] {
            let f = FieldGF::new(p, a).unwrap();
            let q = f.order();
            assert!(
                (1..q).any(|x| f.multiplicative_order(x) == q - 1),
                "GF({p}^{a}) has no primitive element"
            );
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = FieldGF::new(3, 2).unwrap();
        let q = f.order();
        for x in 0..q {
            for y in 0..q {
                assert_eq!(f.mul(x, y), f.mul(y, x));
                for z in 0..q {
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
            if x != 0 {
                assert!((1..q).any(|y| f.mul(x, y) == 1));
            }
        }
    }

    #[test]
    fn squares_mod_5() {
        assert_eq!(FieldGF::new(5, 1).unwrap().squares(), vec![1, 4]);
        assert_eq!(FieldGF::new(3, 2).unwrap().squares().len(), 4);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
