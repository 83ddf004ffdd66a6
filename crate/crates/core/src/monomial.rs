//! Monomial transformations of `A^n` and the search for one extending a
//! code map.
//!
//! Inputs sit on the left: `(x_1, …, x_n) T = (x_{σ(1)} τ_1, …, x_{σ(n)} τ_n)`.
//! Coordinates are 0-based throughout.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::aut::{orbit_partition, AutGroup, OrbitIndex};
use crate::code::{Code, CodeMap};
use crate::guard::Budget;
use crate::{Error, Guards, Result};

/// A permutation `sigma` with one automorphism per coordinate, given by
/// its position in an [`AutGroup`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialTransform {
    sigma: Vec<usize>,
    taus: Vec<usize>,
}

impl MonomialTransform {
    pub fn new(sigma: Vec<usize>, taus: Vec<usize>, group: &AutGroup) -> Result<Self> {
        let n = sigma.len();
        if taus.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: taus.len(),
            });
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || core::mem::replace(&mut seen[s], true) {
                return Err(Error::Incompatible(format!("{sigma:?} is not a permutation")));
            }
        }
        if let Some(&t) = taus.iter().find(|&&t| t >= group.len()) {
            return Err(Error::Incompatible(format!(
                "automorphism {t} outside a group of order {}",
                group.len()
            )));
        }
        Ok(MonomialTransform { sigma, taus })
    }

    /// The identity of `A^n` (the identity automorphism is element 0).
    pub fn identity(n: usize) -> Self {
        MonomialTransform {
            sigma: (0..n).collect(),
            taus: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn taus(&self) -> &[usize] {
        &self.taus
    }

    /// Component `i` of the result is `τ_i` applied to component `σ(i)`.
    pub fn apply(&self, group: &AutGroup, word: &[u32]) -> Result<Vec<u32>> {
        if word.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: word.len(),
            });
        }
        Ok(self
            .sigma
            .iter()
            .zip(&self.taus)
            .map(|(&s, &t)| group.apply(t, word[s]))
            .collect())
    }

    /// `self` followed by `other`: `x (self.then(other)) = (x self) other`.
    pub fn then(&self, other: &Self, group: &AutGroup) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let mut sigma = Vec::with_capacity(self.len());
        let mut taus = Vec::with_capacity(self.len());
        for (&s2, &t2) in other.sigma.iter().zip(&other.taus) {
            sigma.push(self.sigma[s2]);
            taus.push(group.compose(self.taus[s2], t2).ok_or(Error::NotClosed)?);
        }
        Ok(MonomialTransform { sigma, taus })
    }

    /// Whether `c T = f(c)` for every source codeword.
    pub fn extends(&self, f: &CodeMap, group: &AutGroup) -> Result<bool> {
        for (c, fc) in f.pairs() {
            if self.apply(group, c)? != fc {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sorted orbit labels of column `i` over all codewords.
pub fn column_fingerprint(code: &Code, i: usize, index: &OrbitIndex) -> Vec<u32> {
    let mut fp: Vec<u32> = code.words().iter().map(|w| index.label(w[i])).collect();
    fp.sort_unstable();
    fp
}

/// How an extension search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSearch {
    /// The lexicographically least extending `(σ, τ)`, if any.
    pub transform: Option<MonomialTransform>,
    /// Column fingerprint multisets of source and target differ.
    pub fingerprint_mismatch: bool,
    /// Numbers of identically zero columns in source and target.
    pub zero_columns: (usize, usize),
    /// Matching-oracle calls made during the search.
    pub nodes: u64,
}

/// Finds a `G`-monomial transformation extending `f`, if one exists.
///
/// For each target coordinate `i` and source coordinate `j` the admissible
/// `τ` are solved from the generators (`g_j τ = f(g)_i`). Since the choices
/// for different coordinates are independent once `σ` is fixed, `σ` is
/// built coordinate by coordinate, each time taking the smallest source
/// column that still leaves a perfect matching of the remaining columns.
pub fn extension_search(f: &CodeMap, group: &AutGroup, guards: &Guards) -> Result<ExtensionSearch> {
    let (src, dst) = (f.source(), f.target());
    let n = src.length();
    if dst.length() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: dst.length(),
        });
    }
    let zero_columns = (src.zero_columns().len(), dst.zero_columns().len());
    let index = orbit_partition(src.alphabet(), group.elements());
    let src_fp: Vec<Vec<u32>> = (0..n).map(|j| column_fingerprint(src, j, &index)).collect();
    let dst_fp: Vec<Vec<u32>> = (0..n).map(|i| column_fingerprint(dst, i, &index)).collect();
    let (mut a, mut b) = (src_fp.clone(), dst_fp.clone());
    a.sort();
    b.sort();
    let mut outcome = ExtensionSearch {
        transform: None,
        fingerprint_mismatch: a != b,
        zero_columns,
        nodes: 0,
    };
    if outcome.fingerprint_mismatch {
        return Ok(outcome);
    }

    // cand[i][j]: smallest τ with g_j τ = f(g)_i for every generator g.
    let gens = src.generators();
    let imgs = f.gen_images();
    let mut budget = Budget::new(guards, "extension search");
    let mut cand: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if src_fp[j] != dst_fp[i] {
                continue;
            }
            for t in 0..group.len() {
                budget.tick()?;
                if gens.iter().zip(imgs).all(|(g, h)| group.apply(t, g[j]) == h[i]) {
                    cand[i][j] = Some(t);
                    break;
                }
            }
        }
    }

    let mut fixed: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut chosen = None;
        for j in 0..n {
            if cand[i][j].is_none() || fixed.contains(&Some(j)) {
                continue;
            }
            fixed[i] = Some(j);
            budget.tick()?;
            outcome.nodes += 1;
            if has_perfect_matching(&cand, &fixed) {
                chosen = Some(j);
                break;
            }
        }
        if chosen.is_none() {
            return Ok(outcome);
        }
    }
    let sigma: Vec<usize> = fixed.into_iter().map(|j| j.unwrap_or_default()).collect();
    let taus: Vec<usize> = sigma
        .iter()
        .enumerate()
        .map(|(i, &j)| cand[i][j].unwrap_or_default())
        .collect();
    let t = MonomialTransform { sigma, taus };
    if !t.extends(f, group)? {
        return Err(Error::Inconsistent(
            "extension search produced a non-extending transform".into(),
        ));
    }
    outcome.transform = Some(t);
    Ok(outcome)
}

/// Kuhn's algorithm on the rows not yet fixed, with fixed columns removed.
fn has_perfect_matching(cand: &[Vec<Option<usize>>], fixed: &[Option<usize>]) -> bool {
    let n = cand.len();
    let mut used_col = vec![false; n];
    for j in fixed.iter().flatten() {
        used_col[*j] = true;
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        i: usize,
        cand: &[Vec<Option<usize>>],
        used_col: &[bool],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..cand.len() {
            if cand[i][j].is_none() || used_col[j] || seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, cand, used_col, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for (i, f) in fixed.iter().enumerate() {
        if f.is_some() {
            continue;
        }
        let mut seen = vec![false; n];
        if !augment(i, cand, &used_col, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

/// Every `(σ, τ)` in lexicographic order, each checked on all codewords.
/// Returns the first extension and the number of candidates examined.
pub fn extension_search_naive(
    f: &CodeMap,
    group: &AutGroup,
    guards: &Guards,
) -> Result<(Option<MonomialTransform>, u64)> {
    let n = f.source().length();
    let total = (1..=n as u128)
        .fold(1u128, |acc, i| acc.saturating_mul(i))
        .saturating_mul((group.len() as u128).saturating_pow(n as u32));
    crate::guard::check("naive extension candidates", total, guards.max_search_nodes as u128)?;
    let mut count = 0u64;
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        let mut taus = vec![0usize; n];
        loop {
            count += 1;
            let t = MonomialTransform {
                sigma: sigma.clone(),
                taus: taus.clone(),
            };
            if t.extends(f, group)? {
                return Ok((Some(t), count));
            }
            if !next_tuple(&mut taus, group.len()) {
                break;
            }
        }
        if !next_permutation(&mut sigma) {
            return Ok((None, count));
        }
    }
}

fn next_tuple(t: &mut [usize], base: usize) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap_or(i);
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{Module, ModuleSpec};
    use crate::ring::{Ring, RingSpec};
    use alloc::sync::Arc;

    fn g() -> Guards {
        Guards::default()
    }

    fn f2sq() -> Arc<Module> {
        let ring = Arc::new(Ring::make(&RingSpec::Matrix { m: 1, q: 2 }, &g()).unwrap());
        Arc::new(Module::make(ring, &ModuleSpec::Column { k: 2 }, &g()).unwrap())
    }

    #[test]
    fn apply_convention() {
        let a = f2sq();
        let aut = AutGroup::full(&a, &g()).unwrap();
        let swap = MonomialTransform::new(vec![1, 0], vec![0, 0], &aut).unwrap();
        assert_eq!(swap.apply(&aut, &[1, 2]).unwrap(), vec![2, 1]);
        assert_eq!(
            MonomialTransform::identity(3).apply(&aut, &[1, 2, 3]).unwrap(),
            vec![1, 2, 3]
        );
        let t = MonomialTransform::new(vec![2, 0, 1], vec![1, 3, 5], &aut).unwrap();
        assert_eq!(t.apply(&aut, &[0, 0, 0]).unwrap(), vec![0, 0, 0]);
        // Component i is τ_i of component σ(i).
        assert_eq!(
            t.apply(&aut, &[1, 2, 3]).unwrap(),
            vec![aut.apply(1, 3), aut.apply(3, 1), aut.apply(5, 2)]
        );
        assert!(MonomialTransform::new(vec![0, 0], vec![0, 0], &aut).is_err());
    }

    #[test]
    fn composition_matches_sequential_application() {
        let a = f2sq();
        let aut = AutGroup::full(&a, &g()).unwrap();
        let s = MonomialTransform::new(vec![2, 0, 1], vec![1, 3, 5], &aut).unwrap();
        let t = MonomialTransform::new(vec![1, 0, 2], vec![2, 4, 1], &aut).unwrap();
        let st = s.then(&t, &aut).unwrap();
        for x in [[1, 2, 3], [3, 0, 1], [2, 2, 1]] {
            let seq = t.apply(&aut, &s.apply(&aut, &x).unwrap()).unwrap();
            assert_eq!(st.apply(&aut, &x).unwrap(), seq);
        }
    }

    #[test]
    fn identity_map_extends_by_identity() {
        let a = f2sq();
        let aut = AutGroup::full(&a, &g()).unwrap();
        let c = Arc::new(Code::generate(&a, 3, &[vec![1, 2, 3], vec![2, 0, 1]], &g()).unwrap());
        let r = extension_search(&CodeMap::identity(c), &aut, &g()).unwrap();
        assert_eq!(r.transform, Some(MonomialTransform::identity(3)));
    }

    #[test]
    fn diagonal_twist() {
        let a = f2sq();
        let aut = AutGroup::full(&a, &g()).unwrap();
        let c = Arc::new(Code::generate(&a, 2, &[vec![1, 1], vec![2, 2]], &g()).unwrap());
        let u = 4;
        let imgs = c
            .generators()
            .iter()
            .map(|w| w.iter().map(|&x| aut.apply(u, x)).collect())
            .collect();
        let f = CodeMap::new(c.clone(), c, imgs).unwrap();
        let r = extension_search(&f, &aut, &g()).unwrap();
        assert_eq!(
            r.transform,
            Some(MonomialTransform::new(vec![0, 1], vec![u, u], &aut).unwrap())
        );
        let (naive, _) = extension_search_naive(&f, &aut, &g()).unwrap();
        assert_eq!(naive, r.transform);
    }

    #[test]
    fn permutations_enumerate_in_order() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
