//! Linear codes `C ⊆ A^n`, linear maps between them, and weight profiles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::aut::{OrbitIndex, PartitionKind};
use crate::module::{same_ring, Module};
use crate::{Error, Guards, Result};

/// Componentwise sum in `A^n`.
pub fn word_add(alphabet: &Module, x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).map(|(&a, &b)| alphabet.add(a, b)).collect()
}

/// Diagonal action `r·x` on `A^n`.
pub fn word_act(alphabet: &Module, r: u32, x: &[u32]) -> Vec<u32> {
    x.iter().map(|&a| alphabet.act(r, a)).collect()
}

fn check_word(alphabet: &Module, n: usize, w: &[u32]) -> Result<()> {
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: w.len(),
        });
    }
    match w.iter().find(|&&a| a as usize >= alphabet.order()) {
        Some(&a) => Err(Error::InvalidElement {
            element: a as u64,
            order: alphabet.order() as u64,
        }),
        None => Ok(()),
    }
}

/// A submodule of `A^n`, materialized and sorted.
#[derive(Debug, Clone)]
pub struct Code {
    alphabet: Arc<Module>,
    length: usize,
    generators: Vec<Vec<u32>>,
    words: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length && self.words == other.words && Arc::ptr_eq(&self.alphabet, &other.alphabet)
    }
}

impl Code {
    /// The submodule of `A^n` generated by `gens`.
    pub fn generate(alphabet: &Arc<Module>, length: usize, gens: &[Vec<u32>], guards: &Guards) -> Result<Code> {
        let a = alphabet.as_ref();
        for g in gens {
            check_word(a, length, g)?;
        }
        let ring = a.ring();
        let mut span: BTreeSet<Vec<u32>> = BTreeSet::new();
        span.insert(vec![a.zero(); length]);
        for g in gens {
            if span.contains(g) {
                continue;
            }
            let multiples: BTreeSet<Vec<u32>> = ring.elements().map(|r| word_act(a, r, g)).collect();
            let mut next = BTreeSet::new();
            for x in &span {
                for y in &multiples {
                    next.insert(word_add(a, x, y));
                }
                crate::guard::check("code size", next.len() as u128, guards.max_code_size as u128)?;
            }
            span = next;
        }
        let words: Vec<Vec<u32>> = span.into_iter().collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(Code {
            alphabet: alphabet.clone(),
            length,
            generators: gens.to_vec(),
            words,
            index,
        })
    }

    pub fn alphabet(&self) -> &Arc<Module> {
        &self.alphabet
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Codewords in lexicographic order; the zero word is first.
    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        self.index.contains_key(w)
    }

    pub fn position(&self, w: &[u32]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Entries of coordinate `i` across all codewords, in word order.
    pub fn column(&self, i: usize) -> Vec<u32> {
        self.words.iter().map(|w| w[i]).collect()
    }

    pub fn is_zero_column(&self, i: usize) -> bool {
        let z = self.alphabet.zero();
        self.words.iter().all(|w| w[i] == z)
    }

    /// Coordinates that vanish on every codeword.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.length).filter(|&i| self.is_zero_column(i)).collect()
    }
}

/// A linear isomorphism between codes, fixed by generator images.
#[derive(Debug, Clone)]
pub struct CodeMap {
    source: Arc<Code>,
    target: Arc<Code>,
    gen_images: Vec<Vec<u32>>,
    /// `induced[i]` is the target position of the image of source word `i`.
    induced: Vec<usize>,
}

impl CodeMap {
    /// Materializes the map `gens[k] ↦ gen_images[k]` over all of the
    /// source and checks that it is a well-defined bijection onto the
    /// target.
    pub fn new(source: Arc<Code>, target: Arc<Code>, gen_images: Vec<Vec<u32>>) -> Result<CodeMap> {
        if !same_ring(source.alphabet.ring(), target.alphabet.ring()) {
            return Err(Error::Incompatible("codes over different rings".into()));
        }
        if gen_images.len() != source.generators.len() {
            return Err(Error::LengthMismatch {
                expected: source.generators.len(),
                got: gen_images.len(),
            });
        }
        let (a, b) = (source.alphabet.as_ref(), target.alphabet.as_ref());
        for img in &gen_images {
            check_word(b, target.length, img)?;
            if !target.contains(img) {
                return Err(Error::Incompatible("generator image outside the target code".into()));
            }
        }
        let ring = a.ring();
        let mut map: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
        map.insert(vec![a.zero(); source.length], vec![b.zero(); target.length]);
        for (g, img) in source.generators.iter().zip(&gen_images) {
            let current: Vec<(Vec<u32>, Vec<u32>)> = map.iter().map(|(x, y)| (x.clone(), y.clone())).collect();
            for r in ring.elements() {
                let (rg, rimg) = (word_act(a, r, g), word_act(b, r, img));
                for (x, y) in &current {
                    let w = word_add(a, x, &rg);
                    let v = word_add(b, y, &rimg);
                    match map.get(&w) {
                        Some(prev) if *prev != v => {
                            return Err(Error::IllDefined(format!("word {w:?} has images {prev:?} and {v:?}")));
                        }
                        Some(_) => {}
                        None => {
                            map.insert(w, v);
                        }
                    }
                }
            }
        }
        let mut induced = vec![0; source.len()];
        let mut hit = vec![false; target.len()];
        for (w, v) in &map {
            let i = source
                .position(w)
                .ok_or_else(|| Error::Inconsistent("span exceeds source code".into()))?;
            let j = target
                .position(v)
                .ok_or_else(|| Error::Inconsistent("image outside target".into()))?;
            if hit[j] {
                return Err(Error::NotInjective);
            }
            hit[j] = true;
            induced[i] = j;
        }
        if source.len() != target.len() {
            return Err(Error::NotOnto);
        }
        Ok(CodeMap {
            source,
            target,
            gen_images,
            induced,
        })
    }

    pub fn identity(code: Arc<Code>) -> CodeMap {
        CodeMap {
            gen_images: code.generators.clone(),
            induced: (0..code.len()).collect(),
            target: code.clone(),
            source: code,
        }
    }

    pub fn source(&self) -> &Arc<Code> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Code> {
        &self.target
    }

    pub fn gen_images(&self) -> &[Vec<u32>] {
        &self.gen_images
    }

    pub fn induced(&self) -> &[usize] {
        &self.induced
    }

    /// Pairs `(c, f(c))` in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (&[u32], &[u32])> {
        self.source
            .words
            .iter()
            .zip(&self.induced)
            .map(|(w, &j)| (w.as_slice(), self.target.words[j].as_slice()))
    }

    pub fn image(&self, w: &[u32]) -> Option<&[u32]> {
        let i = self.source.position(w)?;
        Some(&self.target.words[self.induced[i]])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightKind {
    Hamming,
    /// Symmetrized weight composition over an automorphism group.
    Swc,
    /// Annihilator weight.
    Aw,
}

impl WeightKind {
    pub fn partition_kind(self) -> PartitionKind {
        match self {
            WeightKind::Hamming => PartitionKind::ZeroNonzero,
            WeightKind::Swc => PartitionKind::AutOrbit,
            WeightKind::Aw => PartitionKind::Annihilator,
        }
    }
}

/// Component counts per class label. Classes with no components are
/// omitted; for Hamming weight the labels are those of the zero/nonzero
/// partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightProfile {
    pub kind: WeightKind,
    pub counts: BTreeMap<u32, usize>,
}

impl WeightProfile {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Number of components in the class labelled `label`.
    pub fn count(&self, label: u32) -> usize {
        self.counts.get(&label).copied().unwrap_or(0)
    }
}

/// Counts components of `word` per class of `index`.
pub fn profile_with(kind: WeightKind, index: &OrbitIndex, word: &[u32]) -> WeightProfile {
    let mut counts = BTreeMap::new();
    for &a in word {
        *counts.entry(index.label(a)).or_insert(0) += 1;
    }
    WeightProfile { kind, counts }
}

/// Hamming weight: number of nonzero components.
pub fn hamming_weight(alphabet: &Module, word: &[u32]) -> usize {
    word.iter().filter(|&&a| a != alphabet.zero()).count()
}

fn check_index(alphabet: &Module, kind: WeightKind, index: &OrbitIndex) -> Result<()> {
    if index.len() != alphabet.order() {
        return Err(Error::Incompatible(format!(
            "partition of {} elements for an alphabet of order {}",
            index.len(),
            alphabet.order()
        )));
    }
    if index.kind() != kind.partition_kind() {
        return Err(Error::Incompatible(format!(
            "{:?} partition used for {kind:?} weight",
            index.kind()
        )));
    }
    Ok(())
}

/// The weight profile of `word`. Swc and aw need a partition of the
/// matching kind over `alphabet`; Hamming ignores `index`.
pub fn weight_profile(
    alphabet: &Module,
    word: &[u32],
    kind: WeightKind,
    index: Option<&OrbitIndex>,
) -> Result<WeightProfile> {
    match (kind, index) {
        (WeightKind::Hamming, _) => Ok(profile_with(kind, &crate::aut::zero_partition(alphabet), word)),
        (_, Some(ix)) => {
            check_index(alphabet, kind, ix)?;
            Ok(profile_with(kind, ix, word))
        }
        (_, None) => Err(Error::Incompatible(format!("{kind:?} weight needs a partition"))),
    }
}

/// First source word whose profile differs from that of its image.
pub fn preservation_witness(f: &CodeMap, kind: WeightKind, index: Option<&OrbitIndex>) -> Result<Option<Vec<u32>>> {
    let (a, b) = (f.source.alphabet.as_ref(), f.target.alphabet.as_ref());
    let zero_a;
    let zero_b;
    let (ia, ib) = match (kind, index) {
        (WeightKind::Hamming, _) => {
            zero_a = crate::aut::zero_partition(a);
            zero_b = crate::aut::zero_partition(b);
            (&zero_a, &zero_b)
        }
        (_, Some(ix)) => {
            check_index(a, kind, ix)?;
            check_index(b, kind, ix)?;
            (ix, ix)
        }
        (_, None) => return Err(Error::Incompatible(format!("{kind:?} weight needs a partition"))),
    };
    for (c, fc) in f.pairs() {
        if profile_with(kind, ia, c) != profile_with(kind, ib, fc) {
            return Ok(Some(c.to_vec()));
        }
    }
    Ok(None)
}

/// Whether every codeword and its image have equal profiles.
pub fn map_preserves(f: &CodeMap, kind: WeightKind, index: Option<&OrbitIndex>) -> Result<bool> {
    Ok(preservation_witness(f, kind, index)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{annihilator_partition, partition, AutGroup};
    use crate::module::ModuleSpec;
    use crate::ring::{Ring, RingSpec};

    fn g() -> Guards {
        Guards::default()
    }

    fn module(r: RingSpec, m: ModuleSpec) -> Arc<Module> {
        let ring = Arc::new(Ring::make(&r, &g()).unwrap());
        Arc::new(Module::make(ring, &m, &g()).unwrap())
    }

    fn f2sq() -> Arc<Module> {
        module(RingSpec::Matrix { m: 1, q: 2 }, ModuleSpec::Column { k: 2 })
    }

    #[test]
    fn generate_examples() {
        // (1,0) in F_2^2 is encoded 2 (first entry most significant).
        let a = f2sq();
        let c = Code::generate(&a, 2, &[vec![2, 2]], &g()).unwrap();
        assert_eq!(c.len(), 2);
        let c = Code::generate(&a, 2, &[vec![2, 2], vec![1, 1]], &g()).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(Code::generate(&a, 3, &[], &g()).unwrap().words(), &[vec![0, 0, 0]]);
        let z4 = module(RingSpec::ModN(4), ModuleSpec::Regular);
        assert_eq!(
            Code::generate(&z4, 1, &[vec![2]], &g()).unwrap().words(),
            &[vec![0], vec![2]]
        );
    }

    #[test]
    fn generate_rejects_bad_words() {
        let a = f2sq();
        assert!(matches!(
            Code::generate(&a, 2, &[vec![1]], &g()),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            Code::generate(&a, 1, &[vec![4]], &g()),
            Err(Error::InvalidElement { .. })
        ));
    }

    #[test]
    fn code_maps() {
        let a = f2sq();
        let c4 = Arc::new(Code::generate(&a, 2, &[vec![2, 2], vec![1, 1]], &g()).unwrap());
        let c2 = Arc::new(Code::generate(&a, 2, &[vec![2, 2]], &g()).unwrap());
        let id = CodeMap::identity(c4.clone());
        assert!(map_preserves(&id, WeightKind::Hamming, None).unwrap());
        assert!(matches!(
            CodeMap::new(c4.clone(), c2.clone(), vec![vec![2, 2], vec![2, 2]]),
            Err(Error::NotInjective)
        ));
        assert!(matches!(
            CodeMap::new(c2, c4.clone(), vec![vec![2, 2]]),
            Err(Error::NotOnto)
        ));
        // Swapping the two generators is a valid automorphism of the code.
        let swap = CodeMap::new(c4.clone(), c4, vec![vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(swap.image(&[3, 3]), Some(&[3u32, 3][..]));
    }

    #[test]
    fn ill_defined_map() {
        let z4 = module(RingSpec::ModN(4), ModuleSpec::Regular);
        let c = Arc::new(Code::generate(&z4, 1, &[vec![2]], &g()).unwrap());
        let d = Arc::new(Code::generate(&z4, 1, &[vec![1]], &g()).unwrap());
        // 2 has additive order 2 but its proposed image 1 has order 4.
        assert!(matches!(CodeMap::new(c, d, vec![vec![1]]), Err(Error::IllDefined(_))));
    }

    #[test]
    fn profile_examples() {
        let a = f2sq();
        let aut = AutGroup::full(&a, &g()).unwrap();
        let ix = partition(&a, PartitionKind::AutOrbit, Some(&aut), &g()).unwrap();
        let p = weight_profile(&a, &[0, 2, 3], WeightKind::Swc, Some(&ix)).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 1), (1, 2)]));

        let z4 = module(RingSpec::ModN(4), ModuleSpec::Regular);
        let aw = annihilator_partition(&z4);
        let p = weight_profile(&z4, &[1, 2, 3, 0], WeightKind::Aw, Some(&aw)).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(p.total(), 4);

        let p = weight_profile(&z4, &[0, 0], WeightKind::Hamming, None).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 2)]));
        assert!(weight_profile(&z4, &[0], WeightKind::Swc, Some(&aw)).is_err());
    }
}
