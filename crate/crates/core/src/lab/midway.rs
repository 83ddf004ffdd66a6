//! The peeling argument: for a Hamming-preserving linear map over a left
//! principal ideal ring, repeatedly take a maximal annihilator `I` among
//! the remaining components, multiply by a generator `e_I` of `I`, and
//! compare the new zeros on both sides.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::aut::{annihilator_partition, orbit_partition, zero_partition, AutGroup, OrbitIndex};
use crate::code::CodeMap;
use crate::hom::{for_each_hom_on, is_pseudo_injective};
use crate::ideal::{is_left_pir, principal_generator, LeftIdeal};
use crate::module::{annihilator, submodule_generated, Module};
use crate::{Error, Guards, Result};

use super::verdict::{Bounds, VerdictReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    /// Members of the annihilator `I` peeled in this step.
    pub ideal: Vec<u32>,
    /// `e_I`.
    pub generator: u32,
    /// Zero components of `e_I x` and `e_I y`.
    pub zeros: (usize, usize),
    /// Remaining components killed by `e_I`, on each side.
    pub removed: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelTrace {
    pub steps: Vec<PeelStep>,
    /// Every step balanced and all components were peeled.
    pub balanced: bool,
}

/// Annihilators and their generators, cached per module element.
struct Peeler<'a> {
    src: &'a Module,
    dst: &'a Module,
    ann_src: Vec<LeftIdeal>,
    ann_dst: Vec<LeftIdeal>,
    generators: BTreeMap<LeftIdeal, u32>,
}

impl<'a> Peeler<'a> {
    fn new(src: &'a Module, dst: &'a Module) -> Self {
        Peeler {
            src,
            dst,
            ann_src: src.elements().map(|a| annihilator(src, a)).collect(),
            ann_dst: dst.elements().map(|a| annihilator(dst, a)).collect(),
            generators: BTreeMap::new(),
        }
    }

    fn generator(&mut self, ideal: &LeftIdeal) -> Result<u32> {
        if let Some(&g) = self.generators.get(ideal) {
            return Ok(g);
        }
        let g = principal_generator(self.src.ring(), ideal)?;
        self.generators.insert(ideal.clone(), g);
        Ok(g)
    }

    fn peel(&mut self, x: &[u32], y: &[u32]) -> Result<PeelTrace> {
        let (mut left_x, mut left_y) = (vec![true; x.len()], vec![true; y.len()]);
        let mut steps = Vec::new();
        loop {
            let remaining = x
                .iter()
                .zip(&left_x)
                .filter(|p| *p.1)
                .map(|(&a, _)| &self.ann_src[a as usize]);
            let remaining = remaining.chain(
                y.iter()
                    .zip(&left_y)
                    .filter(|p| *p.1)
                    .map(|(&b, _)| &self.ann_dst[b as usize]),
            );
            // Largest first, so the choice is maximal under inclusion.
            let Some(ideal) = remaining.min_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b))).cloned() else {
                return Ok(PeelTrace { steps, balanced: true });
            };
            let e = self.generator(&ideal)?;
            let ex: Vec<u32> = x.iter().map(|&a| self.src.act(e, a)).collect();
            let ey: Vec<u32> = y.iter().map(|&b| self.dst.act(e, b)).collect();
            let zeros = (
                ex.iter().filter(|&&a| a == self.src.zero()).count(),
                ey.iter().filter(|&&b| b == self.dst.zero()).count(),
            );
            let mut removed = (0, 0);
            for (i, &a) in ex.iter().enumerate() {
                if left_x[i] && a == self.src.zero() {
                    if self.ann_src[x[i] as usize] != ideal {
                        return Err(Error::Inconsistent(
                            "peeled a component with a different annihilator".into(),
                        ));
                    }
                    left_x[i] = false;
                    removed.0 += 1;
                }
            }
            for (i, &b) in ey.iter().enumerate() {
                if left_y[i] && b == self.dst.zero() {
                    if self.ann_dst[y[i] as usize] != ideal {
                        return Err(Error::Inconsistent(
                            "peeled a component with a different annihilator".into(),
                        ));
                    }
                    left_y[i] = false;
                    removed.1 += 1;
                }
            }
            let balanced = zeros.0 == zeros.1 && removed.0 == removed.1;
            steps.push(PeelStep {
                ideal: ideal.members().to_vec(),
                generator: e,
                zeros,
                removed,
            });
            if !balanced {
                return Ok(PeelTrace { steps, balanced: false });
            }
        }
    }
}

/// Peels the pair `(x, y)`; a balanced trace certifies equal annihilator
/// weights.
pub fn peel_pair(src: &Module, dst: &Module, x: &[u32], y: &[u32]) -> Result<PeelTrace> {
    Peeler::new(src, dst).peel(x, y)
}

/// Runs the peeling on every pair `(c, f(c))`.
pub fn midway_peeling(f: &CodeMap, guards: &Guards) -> Result<VerdictReport> {
    VerdictReport::run("midway-peeling", |r| {
        let (src, dst) = (f.source().alphabet().as_ref(), f.target().alphabet().as_ref());
        let hamming = crate::code::map_preserves(f, crate::code::WeightKind::Hamming, None)?;
        let pir = is_left_pir(src.ring(), guards)?;
        if !(r.hypothesis("hamming_preserving", hamming) & r.hypothesis("left_pir", pir)) {
            return Ok(());
        }
        let mut peeler = Peeler::new(src, dst);
        for (c, fc) in f.pairs() {
            let trace = peeler.peel(c, fc)?;
            r.bump("pairs");
            *r.counts.entry("steps".into()).or_insert(0) += trace.steps.len() as u64;
            if !trace.balanced {
                r.refute("unbalanced_pair", vec![c.to_vec(), fc.to_vec()]);
                return Ok(());
            }
        }
        Ok(())
    })
}

/// Sorted class labels of each element of `A^n`.
fn profiles(words: &[Vec<u32>], index: &OrbitIndex) -> Vec<Vec<u32>> {
    words
        .iter()
        .map(|w| {
            let mut p: Vec<u32> = w.iter().map(|&a| index.label(a)).collect();
            p.sort_unstable();
            p
        })
        .collect()
}

/// Hamming preservation is equivalent to swc preservation over the full
/// automorphism group, checked on every code in `A^n` (`n <= max_n`, at
/// most `max_gens` generators) and every linear monomorphism from it into
/// `A^n`. Each Hamming-preserving map is also peeled, and the peeling
/// verdict is compared with a direct annihilator-weight comparison.
pub fn verify_midway(module: &Arc<Module>, bounds: Bounds, guards: &Guards) -> Result<VerdictReport> {
    VerdictReport::run("midway", |r| {
        let a = module.as_ref();
        let pir = is_left_pir(a.ring(), guards)?;
        let pi = is_pseudo_injective(a, guards)?;
        if !(r.hypothesis("left_pir", pir) & r.hypothesis("pseudo_injective", pi)) {
            return Ok(());
        }
        super::check_scope(a, bounds, guards)?;
        let aut = AutGroup::full(a, guards)?;
        let (sim, ann, zero) = (
            orbit_partition(a, aut.elements()),
            annihilator_partition(a),
            zero_partition(a),
        );
        r.count("aut_order", aut.len() as u64);
        r.count("orbit_partitions_equal", sim.same_partition(&ann) as u64);
        for n in 1..=bounds.max_n {
            let power = Module::power(module, n, guards)?;
            let words: Vec<Vec<u32>> = power
                .elements()
                .map(|x| {
                    power
                        .components(x)
                        .ok_or_else(|| Error::Inconsistent("A^n without components".into()))
                })
                .collect::<Result<_>>()?;
            let (hp, sp, ap) = (profiles(&words, &zero), profiles(&words, &sim), profiles(&words, &ann));
            let mut peeler = Peeler::new(a, a);
            let mut seen = alloc::collections::BTreeSet::new();
            let nonzero: Vec<u32> = power.elements().filter(|&x| x != power.zero()).collect();
            let mut gens: Vec<u32> = Vec::new();
            let mut failure: Option<Error> = None;
            for_each_subset(&nonzero, bounds.max_gens, &mut gens, &mut |gens| {
                if failure.is_some() {
                    return;
                }
                let code = submodule_generated(&power, gens);
                if !seen.insert(code.members().to_vec()) {
                    return;
                }
                r.bump("codes");
                let res = for_each_hom_on(&power, &code, &power, true, None, guards, |pm| {
                    r.bump("maps");
                    let pairs = || code.members().iter().map(|&c| (c, pm.get(c).unwrap_or(c)));
                    let h = pairs().all(|(c, d)| hp[c as usize] == hp[d as usize]);
                    let s = pairs().all(|(c, d)| sp[c as usize] == sp[d as usize]);
                    let w = pairs().all(|(c, d)| ap[c as usize] == ap[d as usize]);
                    let data = || vec![code.members().to_vec(), pairs().map(|p| p.1).collect()];
                    if s {
                        r.bump("swc_preserving");
                        if !h {
                            r.refute("swc_but_not_hamming", data());
                            return ControlFlow::Break(());
                        }
                    }
                    if !h {
                        return ControlFlow::Continue(());
                    }
                    r.bump("hamming_preserving");
                    if w {
                        r.bump("aw_preserving");
                    }
                    let mut peeled = true;
                    for (c, d) in pairs() {
                        match peeler.peel(&words[c as usize], &words[d as usize]) {
                            Ok(t) => {
                                *r.counts.entry("peel_steps".into()).or_insert(0) += t.steps.len() as u64;
                                peeled &= t.balanced;
                            }
                            Err(e) => {
                                failure = Some(e);
                                return ControlFlow::Break(());
                            }
                        }
                    }
                    if peeled != w {
                        r.refute("peeling_disagrees_with_aw", data());
                        return ControlFlow::Break(());
                    }
                    if peeled {
                        r.bump("peeling_balanced");
                    }
                    if !s {
                        r.refute("hamming_but_not_swc", data());
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                });
                if let Err(e) = res {
                    failure = Some(e);
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            if r.outcome != super::Outcome::Verified {
                return Ok(());
            }
        }
        Ok(())
    })
}

/// Calls `visit` on every strictly increasing sequence from `pool` of
/// length `0..=max`.
pub(crate) fn for_each_subset(pool: &[u32], max: usize, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    visit(cur);
    if cur.len() == max {
        return;
    }
    let start = cur.last().map_or(0, |&l| pool.partition_point(|&x| x <= l));
    for i in start..pool.len() {
        cur.push(pool[i]);
        for_each_subset(pool, max, cur, visit);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Code;
    use crate::lab::{build_counterexample, Outcome};
    use crate::module::ModuleSpec;
    use crate::ring::{Ring, RingSpec};

    fn g() -> Guards {
        Guards::default()
    }

    fn module(r: RingSpec, m: ModuleSpec) -> Arc<Module> {
        Arc::new(Module::make(Arc::new(Ring::make(&r, &g()).unwrap()), &m, &g()).unwrap())
    }

    #[test]
    fn peels_counterexample() {
        let pack = build_counterexample(1, 2, 2, &g()).unwrap();
        let r = midway_peeling(&pack.map, &g()).unwrap();
        assert_eq!(r.outcome, Outcome::Verified);
        assert_eq!(r.counts["pairs"], 4);
    }

    #[test]
    fn rejects_non_hamming_map() {
        let a = module(RingSpec::ModN(4), ModuleSpec::Regular);
        let c = Arc::new(Code::generate(&a, 2, &[vec![1, 0]], &g()).unwrap());
        let d = Arc::new(Code::generate(&a, 2, &[vec![1, 1]], &g()).unwrap());
        let f = CodeMap::new(c, d, vec![vec![1, 1]]).unwrap();
        assert_eq!(midway_peeling(&f, &g()).unwrap().outcome, Outcome::HypothesesUnmet);
    }

    #[test]
    fn small_midway() {
        let a = module(RingSpec::Matrix { m: 1, q: 2 }, ModuleSpec::Column { k: 2 });
        let r = verify_midway(&a, Bounds { max_n: 2, max_gens: 2 }, &g()).unwrap();
        assert_eq!(r.outcome, Outcome::Verified, "{r:?}");
        let mixed = module(
            RingSpec::ModN(4),
            ModuleSpec::DirectSum(vec![ModuleSpec::ModM(2), ModuleSpec::Regular]),
        );
        assert_eq!(
            verify_midway(&mixed, Bounds::default(), &g()).unwrap().outcome,
            Outcome::HypothesesUnmet
        );
    }

    #[test]
    fn subsets() {
        let mut out = Vec::new();
        for_each_subset(&[1, 2, 3], 2, &mut Vec::new(), &mut |s| out.push(s.to_vec()));
        assert_eq!(out.len(), 7);
    }
}
