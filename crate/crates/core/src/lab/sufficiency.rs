use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::aut::{orbit_partition, AutGroup};
use crate::code::{Code, CodeMap};
use crate::hom::for_each_hom_on;
use crate::module::{submodule_generated, Module};
use crate::monomial::extension_search;
use crate::socle::socle_report;
use crate::{Error, Guards, Result};

use super::midway::for_each_subset;
use super::verdict::{Bounds, Outcome, VerdictReport};

/// For `A` with cyclic socle, every swc-preserving linear isomorphism
/// between codes in `A^n` (`n <= max_n`, at most `max_gens` generators)
/// extends to a monomial transformation over the full automorphism group.
pub fn verify_sufficiency(module: &Arc<Module>, bounds: Bounds, guards: &Guards) -> Result<VerdictReport> {
    VerdictReport::run("sufficiency", |r| {
        let a = module.as_ref();
        let soc = socle_report(a, guards)?;
        if !r.hypothesis("cyclic_socle", soc.cyclic) {
            return Ok(());
        }
        super::check_scope(a, bounds, guards)?;
        let aut = AutGroup::full(a, guards)?;
        let sim = orbit_partition(a, aut.elements());
        r.count("aut_order", aut.len() as u64);
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
            let profile: Vec<Vec<u32>> = words
                .iter()
                .map(|w| {
                    let mut p: Vec<u32> = w.iter().map(|&x| sim.label(x)).collect();
                    p.sort_unstable();
                    p
                })
                .collect();
            let nonzero: Vec<u32> = power.elements().filter(|&x| x != power.zero()).collect();
            let mut seen = BTreeSet::new();
            let mut failure: Option<Error> = None;
            for_each_subset(&nonzero, bounds.max_gens, &mut Vec::new(), &mut |gens| {
                if failure.is_some() || r.outcome != Outcome::Verified {
                    return;
                }
                let sub = submodule_generated(&power, gens);
                if !seen.insert(sub.members().to_vec()) {
                    return;
                }
                r.bump("codes");
                let gen_words: Vec<Vec<u32>> = gens.iter().map(|&g| words[g as usize].clone()).collect();
                let source = match Code::generate(module, n, &gen_words, guards) {
                    Ok(c) => Arc::new(c),
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                let res = for_each_hom_on(&power, &sub, &power, true, None, guards, |pm| {
                    r.bump("maps");
                    let swc = sub
                        .members()
                        .iter()
                        .all(|&c| profile[c as usize] == profile[pm.get(c).unwrap_or(c) as usize]);
                    if !swc {
                        return ControlFlow::Continue(());
                    }
                    r.bump("swc_preserving");
                    let images: Vec<Vec<u32>> = gens
                        .iter()
                        .map(|&g| words[pm.get(g).unwrap_or(g) as usize].clone())
                        .collect();
                    let outcome = Code::generate(module, n, &images, guards)
                        .and_then(|t| CodeMap::new(source.clone(), Arc::new(t), images.clone()))
                        .and_then(|f| extension_search(&f, &aut, guards));
                    match outcome {
                        Ok(s) if s.transform.is_some() => {
                            r.bump("extended");
                            ControlFlow::Continue(())
                        }
                        Ok(_) => {
                            r.refute("unextendable_map", vec![gen_words.concat(), images.concat()]);
                            ControlFlow::Break(())
                        }
                        Err(e) => {
                            failure = Some(e);
                            ControlFlow::Break(())
                        }
                    }
                });
                if let Err(e) = res {
                    failure = Some(e);
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            if r.outcome != Outcome::Verified {
                return Ok(());
            }
        }
        Ok(())
    })
}
