//! Automorphism groups and the partitions `~` (automorphism orbits) and
//! `≈` (equal annihilators) of a module.
//!
//! Automorphisms act on the right: `a τ`, and `compose(i, j)` is "first
//! `i`, then `j`".

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::hom::for_each_hom_on;
use crate::ideal::LeftIdeal;
use crate::module::{annihilator, Module, Submodule};
use crate::{Error, Guards, Result};

/// A group of automorphisms, each a permutation of module elements, listed
/// in lexicographic order (so the identity is element 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    elements: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl AutGroup {
    /// The full group `Aut_R(A)`.
    pub fn full(module: &Module, guards: &Guards) -> Result<Self> {
        let mut elements = Vec::new();
        for_each_hom_on(module, &Submodule::whole(module), module, true, None, guards, |pm| {
            elements.push(pm.image().to_vec());
            ControlFlow::Continue(())
        })?;
        Ok(Self::from_sorted(elements))
    }

    /// An explicitly listed subgroup; fails with [`Error::NotClosed`] when
    /// the list is not closed under composition.
    pub fn from_elements(module: &Module, elements: Vec<Vec<u32>>) -> Result<Self> {
        for e in &elements {
            check_automorphism(module, e)?;
        }
        let group = Self::from_sorted(elements);
        if !group.index.contains_key(&identity(module)) || !group.is_closed() {
            return Err(Error::NotClosed);
        }
        Ok(group)
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(module: &Module, gens: &[Vec<u32>], guards: &Guards) -> Result<Self> {
        for e in gens {
            check_automorphism(module, e)?;
        }
        let mut seen: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
        let id = identity(module);
        seen.insert(id.clone(), ());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y: Vec<u32> = x.iter().map(|&v| g[v as usize]).collect();
                if seen.insert(y.clone(), ()).is_none() {
                    crate::guard::check(
                        "generated group size",
                        seen.len() as u128,
                        guards.max_search_nodes as u128,
                    )?;
                    queue.push(y);
                }
            }
        }
        Ok(Self::from_sorted(seen.into_keys().collect()))
    }

    fn from_sorted(mut elements: Vec<Vec<u32>>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        AutGroup { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    /// `a τ_i`.
    #[inline]
    pub fn apply(&self, i: usize, a: u32) -> u32 {
        self.elements[i][a as usize]
    }

    pub fn position(&self, perm: &[u32]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// Index of "first `i`, then `j`".
    pub fn compose(&self, i: usize, j: usize) -> Option<usize> {
        let p: Vec<u32> = self.elements[i].iter().map(|&v| self.elements[j][v as usize]).collect();
        self.position(&p)
    }

    pub fn inverse(&self, i: usize) -> Option<usize> {
        let e = &self.elements[i];
        let mut inv = vec![0; e.len()];
        for (a, &b) in e.iter().enumerate() {
            inv[b as usize] = a as u32;
        }
        self.position(&inv)
    }

    pub fn is_closed(&self) -> bool {
        (0..self.len()).all(|i| self.inverse(i).is_some() && (0..self.len()).all(|j| self.compose(i, j).is_some()))
    }
}

fn identity(module: &Module) -> Vec<u32> {
    module.elements().collect()
}

fn check_automorphism(module: &Module, perm: &[u32]) -> Result<()> {
    let mut hit = vec![false; module.order()];
    if perm.len() != module.order()
        || perm
            .iter()
            .any(|&v| (v as usize) >= module.order() || core::mem::replace(&mut hit[v as usize], true))
    {
        return Err(Error::Incompatible("not a permutation of the module".into()));
    }
    if !module.is_linear_map(module, perm) {
        return Err(Error::IllDefined("permutation is not R-linear".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartitionKind {
    /// Orbits of a group of automorphisms (`~`).
    AutOrbit,
    /// Classes of equal annihilators (`≈`).
    Annihilator,
    /// `{0}` and everything else; the classes behind Hamming weight.
    ZeroNonzero,
}

/// A partition of module elements, each labelled by its smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitIndex {
    kind: PartitionKind,
    labels: Vec<u32>,
}

impl OrbitIndex {
    fn from_keys<K: Ord>(kind: PartitionKind, keys: impl Iterator<Item = K>) -> Self {
        let mut first: BTreeMap<K, u32> = BTreeMap::new();
        let labels = keys
            .enumerate()
            .map(|(a, k)| *first.entry(k).or_insert(a as u32))
            .collect();
        OrbitIndex { kind, labels }
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, a: u32) -> u32 {
        self.labels[a as usize]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Classes in order of their labels.
    pub fn classes(&self) -> Vec<Vec<u32>> {
        let mut by: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (a, &l) in self.labels.iter().enumerate() {
            by.entry(l).or_default().push(a as u32);
        }
        by.into_values().collect()
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().enumerate().filter(|(a, &l)| *a as u32 == l).count()
    }

    /// Every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &OrbitIndex) -> bool {
        self.labels.len() == other.labels.len()
            && self
                .labels
                .iter()
                .enumerate()
                .all(|(a, &l)| other.labels[a] == other.labels[l as usize])
    }

    /// Same underlying partition (kinds may differ).
    pub fn same_partition(&self, other: &OrbitIndex) -> bool {
        self.labels == other.labels
    }

    /// First pair `(a, b)` in the same class of `self` but different
    /// classes of `other`.
    pub fn refinement_witness(&self, other: &OrbitIndex) -> Option<(u32, u32)> {
        self.labels
            .iter()
            .enumerate()
            .find(|(a, &l)| other.labels[*a] != other.labels[l as usize])
            .map(|(a, &l)| (l, a as u32))
    }
}

/// Orbits under the group generated by `gens`.
pub fn orbit_partition(module: &Module, gens: &[Vec<u32>]) -> OrbitIndex {
    let n = module.order();
    let mut labels = vec![u32::MAX; n];
    for a in 0..n as u32 {
        if labels[a as usize] != u32::MAX {
            continue;
        }
        labels[a as usize] = a;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g[x as usize];
                if labels[y as usize] == u32::MAX {
                    labels[y as usize] = a;
                    stack.push(y);
                }
            }
        }
    }
    OrbitIndex {
        kind: PartitionKind::AutOrbit,
        labels,
    }
}

pub fn annihilator_partition(module: &Module) -> OrbitIndex {
    OrbitIndex::from_keys(
        PartitionKind::Annihilator,
        module.elements().map(|a| annihilator(module, a)),
    )
}

pub fn zero_partition(module: &Module) -> OrbitIndex {
    let zero = module.zero();
    OrbitIndex::from_keys(PartitionKind::ZeroNonzero, module.elements().map(|a| a != zero))
}

/// The partition of the given kind. Automorphism orbits use `group` when
/// given and the full automorphism group otherwise.
pub fn partition(
    module: &Module,
    kind: PartitionKind,
    group: Option<&AutGroup>,
    guards: &Guards,
) -> Result<OrbitIndex> {
    Ok(match kind {
        PartitionKind::AutOrbit => match group {
            Some(g) => orbit_partition(module, g.elements()),
            None => orbit_partition(module, AutGroup::full(module, guards)?.elements()),
        },
        PartitionKind::Annihilator => annihilator_partition(module),
        PartitionKind::ZeroNonzero => zero_partition(module),
    })
}

/// Annihilator of each annihilator class, keyed by class label.
pub fn annihilators_by_class(module: &Module, index: &OrbitIndex) -> BTreeMap<u32, LeftIdeal> {
    index
        .classes()
        .into_iter()
        .map(|c| (c[0], annihilator(module, c[0])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::ModuleSpec;
    use crate::ring::{Ring, RingSpec};
    use alloc::sync::Arc;

    fn g() -> Guards {
        Guards::default()
    }

    fn module(r: RingSpec, m: ModuleSpec) -> Module {
        let ring = Arc::new(Ring::make(&r, &g()).unwrap());
        Module::make(ring, &m, &g()).unwrap()
    }

    #[test]
    fn group_orders() {
        let f2sq = module(RingSpec::Matrix { m: 1, q: 2 }, ModuleSpec::Column { k: 2 });
        let aut = AutGroup::full(&f2sq, &g()).unwrap();
        assert_eq!(aut.len(), 6);
        assert_eq!(aut.get(0), &[0, 1, 2, 3]);
        assert!(aut.is_closed());
        let z4 = module(RingSpec::ModN(4), ModuleSpec::Regular);
        assert_eq!(AutGroup::full(&z4, &g()).unwrap().len(), 2);
    }

    #[test]
    fn gl3_f2_acts_on_two_by_three_matrices() {
        let a = module(RingSpec::Matrix { m: 2, q: 2 }, ModuleSpec::Column { k: 3 });
        let aut = AutGroup::full(&a, &g()).unwrap();
        assert_eq!(aut.len(), 168);
        assert!(aut.is_closed());
    }

    #[test]
    fn partitions_of_small_modules() {
        let f2sq = module(RingSpec::Matrix { m: 1, q: 2 }, ModuleSpec::Column { k: 2 });
        let orbits = partition(&f2sq, PartitionKind::AutOrbit, None, &g()).unwrap();
        assert_eq!(orbits.classes(), vec![vec![0], vec![1, 2, 3]]);

        let z4 = module(RingSpec::ModN(4), ModuleSpec::Regular);
        let ann = annihilator_partition(&z4);
        assert_eq!(ann.classes(), vec![vec![0], vec![1, 3], vec![2]]);
        let orb = partition(&z4, PartitionKind::AutOrbit, None, &g()).unwrap();
        assert!(orb.same_partition(&ann));
        assert!(orb.refines(&ann));
    }

    #[test]
    fn subgroup_from_generators_and_explicit_sets() {
        let f2sq = module(RingSpec::Matrix { m: 1, q: 2 }, ModuleSpec::Column { k: 2 });
        // swap of coordinates: (a,b) -> (b,a); encodings 1=(0,1), 2=(1,0)
        let swap = vec![0, 2, 1, 3];
        let h = AutGroup::generated_by(&f2sq, core::slice::from_ref(&swap), &g()).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(
            orbit_partition(&f2sq, h.elements()).classes(),
            vec![vec![0], vec![1, 2], vec![3]]
        );
        assert_eq!(
            AutGroup::from_elements(&f2sq, vec![swap.clone()]),
            Err(Error::NotClosed)
        );
        assert!(AutGroup::from_elements(&f2sq, vec![vec![0, 1, 2, 3], swap]).is_ok());
        assert!(AutGroup::from_elements(&f2sq, vec![vec![0, 1, 1, 3]]).is_err());
    }

    #[test]
    fn compose_is_first_then_second() {
        let f2sq = module(RingSpec::Matrix { m: 1, q: 2 }, ModuleSpec::Column { k: 2 });
        let aut = AutGroup::full(&f2sq, &g()).unwrap();
        for i in 0..aut.len() {
            for j in 0..aut.len() {
                let k = aut.compose(i, j).unwrap();
                for a in f2sq.elements() {
                    assert_eq!(aut.apply(k, a), aut.apply(j, aut.apply(i, a)));
                }
            }
            let inv = aut.inverse(i).unwrap();
            assert_eq!(aut.compose(i, inv), Some(0));
        }
    }
}
