//! Left ideals, the Jacobson radical and quotient rings.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::ring::Ring;
use crate::set::{additive_closure, subgroup_sum, ElemSet};
use crate::{Error, Guards, Result};

/// A left ideal, stored as its canonically sorted member set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeftIdeal {
    members: ElemSet,
}

impl LeftIdeal {
    pub(crate) fn from_set(members: ElemSet) -> Self {
        LeftIdeal { members }
    }

    pub fn members(&self) -> &[u32] {
        self.members.members()
    }

    pub fn as_set(&self) -> &ElemSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x)
    }

    pub fn is_subset(&self, other: &LeftIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn principal(ring: &Ring, g: u32, side: Side) -> ElemSet {
    let mut mask = vec![false; ring.order()];
    for s in ring.elements() {
        let x = match side {
            Side::Left => ring.mul(s, g),
            Side::Right => ring.mul(g, s),
        };
        mask[x as usize] = true;
    }
    ElemSet::from_mask(&mask)
}

/// The principal left ideal `R g`.
pub fn principal_left_ideal(ring: &Ring, g: u32) -> LeftIdeal {
    LeftIdeal::from_set(principal(ring, g, Side::Left))
}

/// Smallest left ideal containing `gens`.
pub fn ideal_generated(ring: &Ring, gens: &[u32]) -> LeftIdeal {
    let mut acc = ElemSet::from_sorted(vec![ring.zero()]);
    for &g in gens {
        let p = principal(ring, g, Side::Left);
        acc = subgroup_sum(ring.order(), &acc, &p, |a, b| ring.add(a, b));
    }
    LeftIdeal::from_set(acc)
}

fn all_ideals(ring: &Ring, side: Side, guards: &Guards) -> Result<Vec<ElemSet>> {
    guards.check_enum("ideal enumeration", ring.order())?;
    let principals: BTreeSet<ElemSet> = ring.elements().map(|g| principal(ring, g, side)).collect();
    let principals: Vec<ElemSet> = principals.into_iter().collect();
    let mut seen: BTreeSet<ElemSet> = principals.iter().cloned().collect();
    let mut queue: Vec<ElemSet> = principals.clone();
    while let Some(x) = queue.pop() {
        for p in &principals {
            let y = subgroup_sum(ring.order(), &x, p, |a, b| ring.add(a, b));
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every left ideal of `ring`, canonically sorted (by size, then members).
///
/// Built from the principal left ideals `R r` by closing under sums.
pub fn left_ideals(ring: &Ring, guards: &Guards) -> Result<Vec<LeftIdeal>> {
    Ok(all_ideals(ring, Side::Left, guards)?
        .into_iter()
        .map(LeftIdeal::from_set)
        .collect())
}

/// Every right ideal, as member sets in canonical order.
pub fn right_ideals(ring: &Ring, guards: &Guards) -> Result<Vec<ElemSet>> {
    all_ideals(ring, Side::Right, guards)
}

fn is_pir(ring: &Ring, side: Side, guards: &Guards) -> Result<bool> {
    let all = all_ideals(ring, side, guards)?;
    let principals: BTreeSet<ElemSet> = ring.elements().map(|g| principal(ring, g, side)).collect();
    Ok(all.iter().all(|i| principals.contains(i)))
}

/// Whether every left ideal is of the form `R g`.
pub fn is_left_pir(ring: &Ring, guards: &Guards) -> Result<bool> {
    is_pir(ring, Side::Left, guards)
}

/// Whether every right ideal is of the form `g R`.
pub fn is_right_pir(ring: &Ring, guards: &Guards) -> Result<bool> {
    is_pir(ring, Side::Right, guards)
}

/// Smallest-index `g` with `R g = I`.
///
/// Such a `g` lies in a left ideal `J` only if `I ⊆ J`, which is the
/// property the annihilator peeling relies on.
pub fn principal_generator(ring: &Ring, ideal: &LeftIdeal) -> Result<u32> {
    ideal
        .members()
        .iter()
        .copied()
        .find(|&g| principal(ring, g, Side::Left) == ideal.members)
        .ok_or(Error::NotPrincipal)
}

/// `{ r : 1 - s r is a unit for every s }`.
pub fn jacobson_radical(ring: &Ring) -> LeftIdeal {
    let units = ring.units();
    let members = ring
        .elements()
        .filter(|&r| {
            ring.elements()
                .all(|s| units[ring.sub(ring.one(), ring.mul(s, r)) as usize])
        })
        .collect();
    LeftIdeal::from_set(ElemSet::from_sorted(members))
}

/// Whether `set` is closed under multiplication on both sides by `ring`.
pub fn is_two_sided(ring: &Ring, set: &ElemSet) -> bool {
    set.members().iter().all(|&x| {
        ring.elements()
            .all(|s| set.contains(ring.mul(s, x)) && set.contains(ring.mul(x, s)))
    })
}

/// Whether some power of the ideal `set` is zero.
pub fn is_nilpotent(ring: &Ring, set: &ElemSet) -> bool {
    let mut power = set.clone();
    loop {
        if power.len() == 1 {
            return true;
        }
        let products: Vec<u32> = power
            .members()
            .iter()
            .flat_map(|&x| set.members().iter().map(move |&y| ring.mul(x, y)))
            .collect();
        let next = ElemSet::from_mask(&additive_closure(
            ring.order(),
            core::iter::once(ring.zero()).chain(products),
            |a, b| ring.add(a, b),
        ));
        if next == power {
            return false;
        }
        power = next;
    }
}

/// A quotient ring `R / I` with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub ring: Ring,
    /// Image in the quotient of every element of `R`.
    pub projection: Vec<u32>,
    /// Coset representative (smallest index) of each quotient element.
    pub representatives: Vec<u32>,
}

/// Quotient by a two-sided ideal, materialized over the smallest coset
/// representatives.
pub fn quotient(ring: &Ring, ideal: &LeftIdeal) -> Result<Quotient> {
    if !is_two_sided(ring, &ideal.members) {
        return Err(Error::Incompatible("quotient needs a two-sided ideal".into()));
    }
    let n = ring.order();
    let mut rep = vec![u32::MAX; n];
    let mut representatives = Vec::new();
    for r in ring.elements() {
        if rep[r as usize] != u32::MAX {
            continue;
        }
        for &i in ideal.members() {
            rep[ring.add(r, i) as usize] = r;
        }
        representatives.push(r);
    }
    let index_of = |r: u32| representatives.binary_search(&rep[r as usize]).unwrap() as u32;
    let projection: Vec<u32> = ring.elements().map(index_of).collect();
    let m = representatives.len();
    let mut add = vec![0; m * m];
    let mut mul = vec![0; m * m];
    for (i, &a) in representatives.iter().enumerate() {
        for (j, &b) in representatives.iter().enumerate() {
            add[i * m + j] = projection[ring.add(a, b) as usize];
            mul[i * m + j] = projection[ring.mul(a, b) as usize];
        }
    }
    let qring = Ring::from_tables_unchecked(
        m,
        add,
        mul,
        projection[ring.zero() as usize],
        projection[ring.one() as usize],
    );
    Ok(Quotient {
        ring: qring,
        projection,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn ring(spec: RingSpec) -> Ring {
        Ring::make(&spec, &Guards::default()).unwrap()
    }

    fn sets(ideals: &[LeftIdeal]) -> Vec<Vec<u32>> {
        ideals.iter().map(|i| i.members().to_vec()).collect()
    }

    #[test]
    fn z4_ideals_radical_generators() {
        let r = ring(RingSpec::ModN(4));
        let g = Guards::default();
        assert_eq!(jacobson_radical(&r).members(), &[0, 2]);
        let ideals = left_ideals(&r, &g).unwrap();
        assert_eq!(sets(&ideals), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(ideal_generated(&r, &[2]).members(), &[0, 2]);
        assert_eq!(ideal_generated(&r, &[3]).len(), 4);
        assert_eq!(principal_generator(&r, &ideals[1]), Ok(2));
        assert_eq!(principal_generator(&r, &ideals[2]), Ok(1));
        assert_eq!(principal_generator(&r, &ideals[0]), Ok(0));
        assert!(is_left_pir(&r, &g).unwrap());
    }

    #[test]
    fn radical_of_semisimple_rings_is_zero() {
        assert!(jacobson_radical(&ring(RingSpec::Matrix { m: 2, q: 2 })).is_zero());
        assert!(jacobson_radical(&ring(RingSpec::ModN(6))).is_zero());
    }

    #[test]
    fn m2f2_left_ideals() {
        let r = ring(RingSpec::Matrix { m: 2, q: 2 });
        let g = Guards::default();
        let ideals = left_ideals(&r, &g).unwrap();
        assert_eq!(ideals.len(), 5);
        assert!(is_left_pir(&r, &g).unwrap());
        assert!(is_right_pir(&r, &g).unwrap());
        // E_11 = [[1,0],[0,0]] encodes as 8; R E_11 has zero second column.
        let i = ideal_generated(&r, &[8]);
        assert_eq!(i.len(), 4);
        for &x in i.members() {
            let m = r.as_matrix(x).unwrap();
            assert_eq!((m.get(0, 1), m.get(1, 1)), (0, 0));
        }
    }

    #[test]
    fn z6_has_four_ideals() {
        let r = ring(RingSpec::ModN(6));
        assert_eq!(left_ideals(&r, &Guards::default()).unwrap().len(), 4);
    }

    #[test]
    fn non_principal_ideal_is_reported() {
        // F_2[x,y]/(x,y)^2 has the non-principal maximal ideal (x, y).
        // Basis 1, x, y with x^2 = xy = y^2 = 0; element = a + 2b + 4c for a + bx + cy.
        let n = 8usize;
        let mut add = vec![vec![0u32; n]; n];
        let mut mul = vec![vec![0u32; n]; n];
        for a in 0..n {
            for b in 0..n {
                add[a][b] = (a ^ b) as u32;
                let (a0, b0) = (a & 1, b & 1);
                let lin = ((a0 * (b >> 1)) ^ (b0 * (a >> 1))) << 1;
                mul[a][b] = ((a0 & b0) | lin) as u32;
            }
        }
        let r = Ring::from_tables(&add, &mul, &Guards::default()).unwrap();
        assert!(!is_left_pir(&r, &Guards::default()).unwrap());
        let maximal = jacobson_radical(&r);
        assert_eq!(maximal.members(), &[0, 2, 4, 6]);
        assert_eq!(principal_generator(&r, &maximal), Err(Error::NotPrincipal));
    }

    #[test]
    fn quotient_of_z4_by_radical_is_f2() {
        let r = ring(RingSpec::ModN(4));
        let q = quotient(&r, &jacobson_radical(&r)).unwrap();
        assert_eq!(q.ring.order(), 2);
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
        assert!(r.is_hom_into(&q.ring, &q.projection));
        assert!(jacobson_radical(&q.ring).is_zero());
    }

    #[test]
    fn guard_blocks_large_enumeration() {
        let r = ring(RingSpec::Matrix { m: 2, q: 3 });
        assert!(matches!(
            left_ideals(&r, &Guards::default()),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
