//! Finite fields `F_q`, `q = p^e`, as precomputed tables.
//!
//! An element is encoded as the integer whose base-`p` digits are the
//! coefficients of its polynomial representative, constant term least
//! significant. The modulus is the monic irreducible polynomial of degree
//! `e` whose coefficient vector `(c_0, c_1, ..., c_{e-1})` is
//! lexicographically smallest.

use alloc::vec;
use alloc::vec::Vec;

use crate::{guard, Error, Guards, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl core::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

/// Prime factorization as `(p, multiplicity)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// Polynomials over F_p as coefficient vectors, constant term first.

fn poly_trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let g = poly_trim(g.to_vec());
    let mut r = poly_trim(f.to_vec());
    let dg = g.len() - 1;
    let lead_inv = pow_mod(g[dg], p - 2, p);
    while r.len() > dg {
        let shift = r.len() - 1 - dg;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &gi) in g.iter().enumerate() {
            let t = &mut r[shift + i];
            *t = (*t + p - c * gi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn pow_mod(mut b: u32, mut e: u32, m: u32) -> u32 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Whether the monic polynomial `f` (constant term first) is irreducible
/// over `F_p`, by trial division with every monic polynomial of degree at
/// most `deg f / 2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = poly_trim(f.to_vec());
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest (low degree first) monic irreducible
/// polynomial of degree `e` over `F_p`.
pub fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = p.pow(e);
    let mut candidates: Vec<Vec<u32>> = (0..count).map(|x| digits(x, p, e as usize)).collect();
    candidates.sort();
    for mut c in candidates {
        c.push(1);
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(p: u32, e: u32, guards: &Guards) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::Incompatible("field degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        guard::check("field order", q, guards.max_field_order as u128)?;
        let q = q as u32;
        let modulus = smallest_irreducible(p, e);
        let n = q as usize;
        let el = e as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a, p, el);
            for b in 0..q {
                let db = digits(b, p, el);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p);
                let mut prod = vec![0; 2 * el];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(el, 0);
                mul[(a * q + b) as usize] = undigits(&r, p);
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        Ok(FiniteField {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    /// The field of order `q`, which must be a prime power.
    pub fn with_order(q: u64, guards: &Guards) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e, guards)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, e: u32) -> FiniteField {
        FiniteField::new(p, e, &Guards::default()).unwrap()
    }

    #[test]
    fn prime_fields() {
        let f2 = field(2, 1);
        assert_eq!(f2.add(1, 1), 0);
        let f3 = field(3, 1);
        assert_eq!(f3.mul(2, 2), 1);
    }

    #[test]
    fn f4_modulus_and_product() {
        let f4 = field(2, 2);
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f4.mul(2, 2), 3);
    }

    #[test]
    fn f8_modulus_is_low_degree_lex_smallest() {
        // (1,0,1) < (1,1,0): x^3 + x^2 + 1 precedes x^3 + x + 1.
        assert_eq!(field(2, 3).modulus(), &[1, 0, 1, 1]);
        assert_eq!(field(3, 2).modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = Guards::default();
        assert_eq!(FiniteField::new(4, 1, &g), Err(Error::NotPrime(4)));
        assert!(matches!(FiniteField::new(2, 11, &g), Err(Error::GuardExceeded { .. })));
        assert_eq!(FiniteField::with_order(6, &g), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 0, 1], 3));
    }

    #[test]
    fn helpers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
    }
}
