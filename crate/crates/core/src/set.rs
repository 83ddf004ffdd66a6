//! Sorted element-index sets and additive closure.

use alloc::vec;
use alloc::vec::Vec;

/// A canonically sorted set of element indices.
///
/// Ordered first by cardinality and then lexicographically, which is the
/// canonical order used for every list of ideals and submodules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    members: Vec<u32>,
}

impl ElemSet {
    pub fn from_sorted(members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        ElemSet { members }
    }

    pub fn from_unsorted(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElemSet { members }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        ElemSet {
            members: mask
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| i as u32)
                .collect(),
        }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.len() <= other.len() && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            members: self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }

    pub fn mask(&self, universe: usize) -> Vec<bool> {
        let mut mask = vec![false; universe];
        for &x in &self.members {
            mask[x as usize] = true;
        }
        mask
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

/// Closes `start` under the binary operation `add` (a finite abelian group
/// law), returning the membership mask. `start` must already contain zero.
pub(crate) fn additive_closure(
    universe: usize,
    start: impl IntoIterator<Item = u32>,
    add: impl Fn(u32, u32) -> u32,
) -> Vec<bool> {
    let mut mask = vec![false; universe];
    let mut members = Vec::new();
    for x in start {
        if !mask[x as usize] {
            mask[x as usize] = true;
            members.push(x);
        }
    }
    let gens = members.clone();
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in &gens {
            let y = add(x, g);
            if !mask[y as usize] {
                mask[y as usize] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    mask
}

/// Sum of two subgroups given as sorted sets.
pub(crate) fn subgroup_sum(universe: usize, a: &ElemSet, b: &ElemSet, add: impl Fn(u32, u32) -> u32) -> ElemSet {
    let mut mask = vec![false; universe];
    for &x in a.members() {
        for &y in b.members() {
            mask[add(x, y) as usize] = true;
        }
    }
    ElemSet::from_mask(&mask)
}
