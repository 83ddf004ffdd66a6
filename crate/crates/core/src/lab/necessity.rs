use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::aut::AutGroup;
use crate::code::{Code, CodeMap};
use crate::hom::{find_embedding, hom_count};
use crate::module::Module;
use crate::ring::{block_projections, Ring, RingKind};
use crate::socle::{exact_log, socle_report};
use crate::{Error, Guards, Result};

use super::counterexample::{
    build_counterexample, build_counterexample_brute, counterexample_length, verify_pack, Construction,
    CounterexamplePack,
};
use super::verdict::{Outcome, VerdictReport};

/// Longest pair tried by the direct search over `A`.
const MAX_BRUTE_LENGTH: usize = 10;

#[derive(Debug, Clone)]
pub struct Necessity {
    pub report: VerdictReport,
    /// The verified pair over `A`, when the socle is not cyclic.
    pub pack: Option<CounterexamplePack>,
}

/// For `A` with non-cyclic socle, builds a verified swc-isometric pair in
/// `A^N` without monomial extension.
///
/// Picks the first block `M_mu(F_q)` of `R / rad R` whose simple module
/// occurs in the socle more than `mu` times, builds the pair over
/// `M_{mu x (mu+1)}(F_q)`, pulls it back to `R` and embeds it into `A`.
pub fn verify_necessity(module: &Arc<Module>, guards: &Guards) -> Result<Necessity> {
    let mut pack = None;
    let report = VerdictReport::run("necessity", |r| {
        let a = module.as_ref();
        let ring: &Arc<Ring> = a.ring();
        let soc = socle_report(a, guards)?;
        if !r.hypothesis("non_cyclic_socle", !soc.cyclic) {
            return Ok(());
        }
        let Some(blocks) = block_projections(ring, guards)? else {
            return Err(Error::Unsupported(format!(
                "no structural block projections for {}",
                ring.describe()
            )));
        };
        let mut chosen = None;
        for bp in &blocks {
            let simple = Module::pullback(ring.clone(), &bp.map, &Module::column(bp.target.clone(), 1, guards)?)?;
            let homs = hom_count(&simple, a, guards)?;
            let s = exact_log(homs, bp.block.q)
                .ok_or_else(|| Error::Inconsistent(format!("|Hom(T, A)| = {homs} is not a power of {}", bp.block.q)))?;
            r.witness("block_mu_q_s", vec![vec![bp.block.mu, bp.block.q as u32, s]]);
            if s > bp.block.mu && chosen.is_none() {
                chosen = Some(bp);
            }
        }
        let bp = chosen.ok_or_else(|| Error::Inconsistent("non-cyclic socle but every s_i <= mu_i".into()))?;
        let (mu, q) = (bp.block.mu as usize, bp.block.q);
        let k = mu + 1;
        r.count("mu", mu as u64);
        r.count("q", q);
        r.count("k", k as u64);
        let RingKind::Matrix { .. } = bp.target.kind() else {
            return Err(Error::Inconsistent("block target is not a matrix ring".into()));
        };
        let base = build_counterexample(mu, k, q, guards)?;
        let pulled = Module::pullback(ring.clone(), &bp.map, &base.alphabet)?;
        let emb = find_embedding(&pulled, a, guards)?
            .ok_or_else(|| Error::Inconsistent("M_{mu x k}(F_q) does not embed into A".into()))?;
        r.witness("embedding", vec![emb.clone()]);
        let push = |ws: &[Vec<u32>]| -> Vec<Vec<u32>> {
            ws.iter()
                .map(|w| w.iter().map(|&x| emb[x as usize]).collect())
                .collect()
        };
        let n = base.length();
        let plus_gens = push(base.c_plus.generators());
        let minus_gens = push(base.map.gen_images());
        let c_plus = Arc::new(Code::generate(module, n, &plus_gens, guards)?);
        let c_minus = Arc::new(Code::generate(module, n, &minus_gens, guards)?);
        let map = CodeMap::new(c_plus.clone(), c_minus.clone(), minus_gens)?;
        let aut = AutGroup::full(a, guards)?;
        let expected = counterexample_length(q, k as u32)?;
        let mut transcript = verify_pack(
            &map,
            &aut,
            Construction::Pullback,
            Some(expected),
            pulled.order(),
            guards,
        )?;
        let (mut c_plus, mut c_minus, mut map) = (c_plus, c_minus, map);
        if !transcript.passed() {
            // Automorphisms of A may separate socle elements that those of
            // the embedded copy identify; search directly over A instead.
            r.notes
                .push("pulled-back pair is not swc-isometric over Aut(A); searched directly".into());
            let brute = build_counterexample_brute(&pulled, module, MAX_BRUTE_LENGTH, guards)?;
            c_plus = brute.c_plus;
            c_minus = brute.c_minus;
            map = brute.map;
            transcript = brute.transcript;
        }
        r.count("length", c_plus.length() as u64);
        r.count("aut_order", aut.len() as u64);
        r.count("search_nodes", transcript.search_nodes);
        if !transcript.passed() {
            return Err(Error::Inconsistent(format!(
                "pair over A failed verification: {transcript:?}"
            )));
        }
        r.witness("c_plus_generators", c_plus.generators().to_vec());
        r.witness("c_minus_generators", c_minus.generators().to_vec());
        r.outcome = Outcome::Counterexample;
        pack = Some(CounterexamplePack {
            ring: ring.clone(),
            alphabet: module.clone(),
            c_plus,
            c_minus,
            map,
            transcript,
        });
        Ok(())
    })?;
    Ok(Necessity { report, pack })
}
