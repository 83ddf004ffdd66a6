//! Finite unital rings as element-index tables.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{self, FiniteField};
use crate::matrix::Matrix;
use crate::{Error, Guards, Result};

/// How a ring's element indices were assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    /// `M_m(F_q)`; an element is its row-major base-`q` encoding, first
    /// entry most significant.
    Matrix { m: usize, field: Arc<FiniteField> },
    /// `Z/n`; an element is its residue.
    ModN(u32),
    /// Direct product; an element is the mixed-radix encoding of its
    /// components, leftmost factor most significant.
    Product(Vec<Arc<Ring>>),
    /// Given (or derived) tables with no further structure.
    Table,
}

/// A ring descriptor, as read from spec files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Matrix { m: usize, q: u64 },
    ModN(u32),
    Product(Vec<RingSpec>),
    Table { add: Vec<Vec<u32>>, mul: Vec<Vec<u32>> },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Ring {
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    kind: RingKind,
}

impl core::fmt::Debug for Ring {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Ring({}, order {})", self.describe(), self.order)
    }
}

impl Ring {
    pub fn make(spec: &RingSpec, guards: &Guards) -> Result<Ring> {
        match spec {
            RingSpec::Matrix { m, q } => {
                let field = Arc::new(FiniteField::with_order(*q, guards)?);
                Ring::matrix(*m, field, guards)
            }
            RingSpec::ModN(n) => Ring::mod_n(*n, guards),
            RingSpec::Product(factors) => {
                let factors = factors
                    .iter()
                    .map(|f| Ring::make(f, guards).map(Arc::new))
                    .collect::<Result<Vec<_>>>()?;
                Ring::product(factors, guards)
            }
            RingSpec::Table { add, mul } => Ring::from_tables(add, mul, guards),
        }
    }

    pub fn matrix(m: usize, field: Arc<FiniteField>, guards: &Guards) -> Result<Ring> {
        if m == 0 {
            return Err(Error::Incompatible("matrix size must be positive".into()));
        }
        let q = field.order() as u128;
        let order = q.checked_pow((m * m) as u32).unwrap_or(u128::MAX);
        guards.check_table("matrix ring order", order)?;
        let n = order as usize;
        let mats: Vec<Matrix> = (0..n as u64).map(|c| Matrix::decode(field.clone(), m, m, c)).collect();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for (i, a) in mats.iter().enumerate() {
            for (j, b) in mats.iter().enumerate() {
                add[i * n + j] = a.add(b).expect("same shape").encode() as u32;
                mul[i * n + j] = a.mul(b).expect("same shape").encode() as u32;
            }
        }
        let one = Matrix::identity(field.clone(), m).encode() as u32;
        Ok(Ring::assemble(n, add, mul, 0, one, RingKind::Matrix { m, field }))
    }

    pub fn mod_n(n: u32, guards: &Guards) -> Result<Ring> {
        if n < 2 {
            return Err(Error::Incompatible("Z/n needs n >= 2".into()));
        }
        guards.check_table("Z/n order", n as u128)?;
        let order = n as usize;
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a in 0..n {
            for b in 0..n {
                add[(a * n + b) as usize] = (a + b) % n;
                mul[(a * n + b) as usize] = ((a as u64 * b as u64) % n as u64) as u32;
            }
        }
        Ok(Ring::assemble(order, add, mul, 0, 1, RingKind::ModN(n)))
    }

    pub fn product(factors: Vec<Arc<Ring>>, guards: &Guards) -> Result<Ring> {
        if factors.is_empty() {
            return Err(Error::Incompatible("product needs at least one factor".into()));
        }
        let order = factors
            .iter()
            .try_fold(1u128, |acc, r| acc.checked_mul(r.order as u128))
            .unwrap_or(u128::MAX);
        guards.check_table("product ring order", order)?;
        let n = order as usize;
        let radices: Vec<usize> = factors.iter().map(|r| r.order).collect();
        let tuples: Vec<Vec<u32>> = (0..n).map(|x| mixed_radix_digits(x, &radices)).collect();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for (i, a) in tuples.iter().enumerate() {
            for (j, b) in tuples.iter().enumerate() {
                let s: Vec<u32> = (0..factors.len()).map(|t| factors[t].add(a[t], b[t])).collect();
                let p: Vec<u32> = (0..factors.len()).map(|t| factors[t].mul(a[t], b[t])).collect();
                add[i * n + j] = mixed_radix_index(&s, &radices) as u32;
                mul[i * n + j] = mixed_radix_index(&p, &radices) as u32;
            }
        }
        let zero: Vec<u32> = factors.iter().map(|r| r.zero).collect();
        let one: Vec<u32> = factors.iter().map(|r| r.one).collect();
        let zero = mixed_radix_index(&zero, &radices) as u32;
        let one = mixed_radix_index(&one, &radices) as u32;
        Ok(Ring::assemble(n, add, mul, zero, one, RingKind::Product(factors)))
    }

    /// A ring from explicit tables, validated against every ring axiom.
    pub fn from_tables(add: &[Vec<u32>], mul: &[Vec<u32>], guards: &Guards) -> Result<Ring> {
        let n = add.len();
        if n == 0 {
            return Err(Error::AxiomViolation("empty ring".into()));
        }
        guards.check_enum("table ring order", n)?;
        let flat_add = flatten_square(add, n, "addition")?;
        let flat_mul = flatten_square(mul, n, "multiplication")?;
        let at = |t: &[u32], a: usize, b: usize| t[a * n + b] as usize;
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| at(&flat_add, z, x) == x && at(&flat_add, x, z) == x))
            .ok_or_else(|| Error::AxiomViolation("no additive identity".into()))?;
        let one = (0..n)
            .find(|&u| (0..n).all(|x| at(&flat_mul, u, x) == x && at(&flat_mul, x, u) == x))
            .ok_or_else(|| Error::AxiomViolation("no multiplicative identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| at(&flat_add, a, b) == zero) {
                return Err(Error::AxiomViolation(format!("{a} has no additive inverse")));
            }
            for b in 0..n {
                if at(&flat_add, a, b) != at(&flat_add, b, a) {
                    return Err(Error::AxiomViolation(format!("addition not commutative at ({a},{b})")));
                }
                for c in 0..n {
                    if at(&flat_add, at(&flat_add, a, b), c) != at(&flat_add, a, at(&flat_add, b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "addition not associative at ({a},{b},{c})"
                        )));
                    }
                    if at(&flat_mul, at(&flat_mul, a, b), c) != at(&flat_mul, a, at(&flat_mul, b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "multiplication not associative at ({a},{b},{c})"
                        )));
                    }
                    if at(&flat_mul, a, at(&flat_add, b, c)) != at(&flat_add, at(&flat_mul, a, b), at(&flat_mul, a, c))
                        || at(&flat_mul, at(&flat_add, b, c), a)
                            != at(&flat_add, at(&flat_mul, b, a), at(&flat_mul, c, a))
                    {
                        return Err(Error::AxiomViolation(format!("distributivity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Ring::assemble(
            n,
            flat_add,
            flat_mul,
            zero as u32,
            one as u32,
            RingKind::Table,
        ))
    }

    /// Tables already known to form a ring.
    pub(crate) fn from_tables_unchecked(n: usize, add: Vec<u32>, mul: Vec<u32>, zero: u32, one: u32) -> Ring {
        Ring::assemble(n, add, mul, zero, one, RingKind::Table)
    }

    fn assemble(n: usize, add: Vec<u32>, mul: Vec<u32>, zero: u32, one: u32, kind: RingKind) -> Ring {
        let mut neg = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == zero).expect("additive inverse") as u32;
        }
        Ring {
            order: n,
            add,
            mul,
            neg,
            zero,
            one,
            kind,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.order as u32
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    /// Membership mask of the units.
    pub fn units(&self) -> Vec<bool> {
        self.elements()
            .map(|a| {
                self.elements()
                    .any(|b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
            })
            .collect()
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.elements()
            .any(|b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Exponent of the additive group.
    pub fn additive_exponent(&self) -> u32 {
        self.elements()
            .map(|a| self.additive_order(a))
            .fold(1, |acc, k| acc / gcd(acc, k) * k)
    }

    /// The matrix behind an element of a matrix ring.
    pub fn as_matrix(&self, a: u32) -> Option<Matrix> {
        match &self.kind {
            RingKind::Matrix { m, field } => Some(Matrix::decode(field.clone(), *m, *m, a as u64)),
            _ => None,
        }
    }

    /// Component indices of an element of a product ring.
    pub fn components(&self, a: u32) -> Option<Vec<u32>> {
        match &self.kind {
            RingKind::Product(factors) => {
                let radices: Vec<usize> = factors.iter().map(|r| r.order).collect();
                Some(mixed_radix_digits(a as usize, &radices))
            }
            _ => None,
        }
    }

    /// Short human-readable description of the construction.
    pub fn describe(&self) -> String {
        match &self.kind {
            RingKind::Matrix { m, field } => format!("M_{}(F_{})", m, field.order()),
            RingKind::ModN(n) => format!("Z/{n}"),
            RingKind::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|r| r.describe()).collect();
                parts.join(" x ")
            }
            RingKind::Table => format!("table ring of order {}", self.order),
        }
    }

    /// Whether `proj` (indexed by this ring's elements) is a unital ring
    /// homomorphism into `target`.
    pub fn is_hom_into(&self, target: &Ring, proj: &[u32]) -> bool {
        proj.len() == self.order
            && proj[self.one as usize] == target.one
            && self.elements().all(|a| {
                self.elements().all(|b| {
                    proj[self.add(a, b) as usize] == target.add(proj[a as usize], proj[b as usize])
                        && proj[self.mul(a, b) as usize] == target.mul(proj[a as usize], proj[b as usize])
                })
            })
    }
}

fn flatten_square(rows: &[Vec<u32>], n: usize, what: &str) -> Result<Vec<u32>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::AxiomViolation(format!("{what} table is not {n}x{n}")));
    }
    let flat: Vec<u32> = rows.iter().flatten().copied().collect();
    if let Some(&bad) = flat.iter().find(|&&x| x as usize >= n) {
        return Err(Error::InvalidElement {
            element: bad as u64,
            order: n as u64,
        });
    }
    Ok(flat)
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Digits of `x` in the mixed radix `radices`, first digit most significant.
pub fn mixed_radix_digits(mut x: usize, radices: &[usize]) -> Vec<u32> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = (x % r) as u32;
        x /= r;
    }
    out
}

pub fn mixed_radix_index(digits: &[u32], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d as usize)
}

/// Parameters `(mu, q)` of one simple block `M_mu(F_q)` of `R / rad R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub mu: u32,
    pub q: u64,
}

/// A structural surjection `R -> M_mu(F_q)` onto one block of the
/// semisimple quotient.
#[derive(Debug, Clone)]
pub struct BlockProjection {
    pub block: Block,
    /// The target ring `M_mu(F_q)`.
    pub target: Arc<Ring>,
    /// Image of every element of the source ring.
    pub map: Vec<u32>,
}

/// Block projections read off the construction of the ring.
///
/// Available for matrix, `Z/n` and product rings; `None` for table rings.
/// The result is sorted by `(q, mu)`.
pub fn block_projections(ring: &Ring, guards: &Guards) -> Result<Option<Vec<BlockProjection>>> {
    let mut out = match &ring.kind {
        RingKind::Matrix { m, field } => {
            let target = Arc::new(ring.clone());
            vec![BlockProjection {
                block: Block {
                    mu: *m as u32,
                    q: field.order() as u64,
                },
                target,
                map: ring.elements().collect(),
            }]
        }
        RingKind::ModN(n) => {
            let mut out = Vec::new();
            for (p, _) in field::factorize(*n as u64) {
                let f = Arc::new(FiniteField::new(p as u32, 1, guards)?);
                let target = Arc::new(Ring::matrix(1, f, guards)?);
                let map = ring.elements().map(|r| (r as u64 % p) as u32).collect();
                out.push(BlockProjection {
                    block: Block { mu: 1, q: p },
                    target,
                    map,
                });
            }
            out
        }
        RingKind::Product(factors) => {
            let mut out = Vec::new();
            for (t, factor) in factors.iter().enumerate() {
                let Some(inner) = block_projections(factor, guards)? else {
                    return Ok(None);
                };
                for bp in inner {
                    let map = ring
                        .elements()
                        .map(|r| bp.map[ring.components(r).expect("product")[t] as usize])
                        .collect();
                    out.push(BlockProjection { map, ..bp });
                }
            }
            out
        }
        RingKind::Table => return Ok(None),
    };
    out.sort_by_key(|bp| (bp.block.q, bp.block.mu));
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> Guards {
        Guards::default()
    }

    #[test]
    fn z4_arithmetic() {
        let r = Ring::mod_n(4, &g()).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.mul(2, 2), 0);
        assert_eq!(r.neg(1), 3);
        assert_eq!(r.additive_exponent(), 4);
    }

    #[test]
    fn matrix_ring_identity_is_one() {
        let r = Ring::make(&RingSpec::Matrix { m: 2, q: 2 }, &g()).unwrap();
        assert_eq!(r.order(), 16);
        assert_eq!(r.one(), 9);
        for a in r.elements() {
            assert_eq!(r.mul(r.one(), a), a);
            assert_eq!(r.mul(a, r.one()), a);
        }
        assert_eq!(r.units().iter().filter(|&&u| u).count(), 6);
    }

    #[test]
    fn product_encoding_is_leftmost_most_significant() {
        let r = Ring::make(&RingSpec::Product(vec![RingSpec::ModN(2), RingSpec::ModN(3)]), &g()).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.one(), 4); // (1, 1) = 1*3 + 1
        assert_eq!(r.components(5), Some(vec![1, 2]));
    }

    #[test]
    fn table_rings_are_validated() {
        let z2 = Ring::mod_n(2, &g()).unwrap();
        let rows = |t: &[u32]| t.chunks(2).map(|c| c.to_vec()).collect::<Vec<_>>();
        let ok = Ring::from_tables(&rows(z2.add_table()), &rows(z2.mul_table()), &g()).unwrap();
        assert_eq!(ok.one(), 1);
        // multiplication by zero everywhere has no identity
        let bad = Ring::from_tables(&rows(z2.add_table()), &[vec![0, 0], vec![0, 0]], &g());
        assert!(matches!(bad, Err(Error::AxiomViolation(_))));
        let bad = Ring::from_tables(&rows(z2.add_table()), &[vec![0, 0], vec![0, 2]], &g());
        assert!(matches!(bad, Err(Error::InvalidElement { .. })));
    }

    #[test]
    fn guard_is_enforced() {
        let guards = Guards {
            max_table_order: 8,
            ..Guards::default()
        };
        assert!(matches!(
            Ring::make(&RingSpec::Matrix { m: 2, q: 2 }, &guards),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn block_projections_are_ring_homs() {
        for spec in [
            RingSpec::ModN(12),
            RingSpec::Matrix { m: 2, q: 2 },
            RingSpec::Product(vec![RingSpec::ModN(4), RingSpec::Matrix { m: 1, q: 3 }]),
        ] {
            let r = Ring::make(&spec, &g()).unwrap();
            for bp in block_projections(&r, &g()).unwrap().unwrap() {
                assert!(r.is_hom_into(&bp.target, &bp.map), "{spec:?}");
            }
        }
        let z12 = Ring::mod_n(12, &g()).unwrap();
        let blocks: Vec<Block> = block_projections(&z12, &g())
            .unwrap()
            .unwrap()
            .iter()
            .map(|b| b.block)
            .collect();
        assert_eq!(blocks, vec![Block { mu: 1, q: 2 }, Block { mu: 1, q: 3 }]);
    }
}
