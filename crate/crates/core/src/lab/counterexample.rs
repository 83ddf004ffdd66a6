//! Code pairs `C±` that are Hamming- and swc-isometric but not monomially
//! equivalent.
//!
//! Over `R = M_m(F_q)`, `A = M_{m x k}(F_q)` with `k > m`, there is one
//! coordinate `x ↦ x P_V` per subspace `V ⊆ F_q^k` of dimension `d`,
//! repeated `q^(d(d-1)/2)` times, where `P_V` is an idempotent with column
//! space `V`. Even `d` go to `C+`, odd `d` to `C-`. Every pack is machine
//! checked before it is returned.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::aut::{partition, AutGroup, PartitionKind};
use crate::code::{map_preserves, Code, CodeMap, WeightKind};
use crate::field::FiniteField;
use crate::guard::{check, Budget};
use crate::hom::homs;
use crate::matrix::{subspaces, Matrix};
use crate::module::{generating_chain, Module, Submodule};
use crate::monomial::{extension_search, extension_search_naive};
use crate::ring::Ring;
use crate::{Error, Guards, Result};

/// Largest candidate space the naive extension enumeration is run on.
const NAIVE_LIMIT: u128 = 2_000_000;

/// `N = Π_{i=1}^{k-1} (1 + q^i)`.
pub fn counterexample_length(q: u64, k: u32) -> Result<u128> {
    let mut n: u128 = 1;
    for i in 1..k {
        let term = (q as u128)
            .checked_pow(i)
            .and_then(|p| p.checked_add(1))
            .and_then(|t| n.checked_mul(t));
        n = term.ok_or_else(|| Error::guard("counterexample length", u128::MAX, u128::MAX - 1))?;
    }
    Ok(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Even/odd subspace coordinates.
    Subspace,
    /// Search over multisets of endomorphism kernels.
    BruteForce,
    /// Pulled back from a pack over a smaller alphabet.
    Pullback,
}

/// What certifies that `f` has no monomial extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Different numbers of identically zero columns.
    ZeroColumn,
    /// The complete extension search found nothing.
    Search,
}

/// Results of the six checks on a pack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub construction: Construction,
    pub length: usize,
    pub expected_length: Option<u128>,
    /// (1) both codes have the expected length.
    pub length_ok: bool,
    /// Order of the module both codes are images of.
    pub message_order: usize,
    /// (2) both encodings are bijections onto their codes.
    pub bijective: bool,
    /// (3)
    pub hamming_preserved: bool,
    /// (4) over the listed automorphism group.
    pub swc_preserved: bool,
    pub aut_order: usize,
    /// (5) `C+` needs at least one, `C-` none.
    pub zero_columns_plus: Vec<usize>,
    pub zero_columns_minus: Vec<usize>,
    /// (6)
    pub fingerprint_mismatch: bool,
    pub search_found_extension: bool,
    pub search_nodes: u64,
    /// Candidates examined by the naive enumeration, when it ran.
    pub naive_candidates: Option<u64>,
    pub naive_found_extension: bool,
    pub certificate: Option<Certificate>,
}

impl Transcript {
    pub fn passed(&self) -> bool {
        self.length_ok
            && self.bijective
            && self.hamming_preserved
            && self.swc_preserved
            && !self.zero_columns_plus.is_empty()
            && self.zero_columns_minus.is_empty()
            && !self.search_found_extension
            && !self.naive_found_extension
            && self.certificate.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct CounterexamplePack {
    pub ring: Arc<Ring>,
    pub alphabet: Arc<Module>,
    pub c_plus: Arc<Code>,
    pub c_minus: Arc<Code>,
    /// `C+ -> C-`.
    pub map: CodeMap,
    pub transcript: Transcript,
}

impl CounterexamplePack {
    pub fn length(&self) -> usize {
        self.c_plus.length()
    }
}

/// Runs checks (1) and (3)-(6) on `map: C+ -> C-`; (2) is reduced to the
/// code sizes matching `message_order`.
pub fn verify_pack(
    map: &CodeMap,
    group: &AutGroup,
    construction: Construction,
    expected_length: Option<u128>,
    message_order: usize,
    guards: &Guards,
) -> Result<Transcript> {
    let (plus, minus) = (map.source(), map.target());
    let length = plus.length();
    let alphabet = plus.alphabet();
    let orbits = partition(alphabet, PartitionKind::AutOrbit, Some(group), guards)?;
    let search = extension_search(map, group, guards)?;
    let candidates = (1..=length as u128)
        .fold(1u128, |acc, i| acc.saturating_mul(i))
        .saturating_mul((group.len() as u128).saturating_pow(length as u32));
    let (naive_candidates, naive_found_extension) = if candidates <= NAIVE_LIMIT {
        let (t, count) = extension_search_naive(map, group, guards)?;
        (Some(count), t.is_some())
    } else {
        (None, false)
    };
    let zero_columns_plus = plus.zero_columns();
    let zero_columns_minus = minus.zero_columns();
    let certificate = if zero_columns_plus.len() != zero_columns_minus.len() {
        Some(Certificate::ZeroColumn)
    } else if search.transform.is_none() {
        Some(Certificate::Search)
    } else {
        None
    };
    Ok(Transcript {
        construction,
        length,
        expected_length,
        length_ok: minus.length() == length && expected_length.is_none_or(|e| e == length as u128),
        message_order,
        bijective: plus.len() == message_order && minus.len() == message_order,
        hamming_preserved: map_preserves(map, WeightKind::Hamming, None)?,
        swc_preserved: map_preserves(map, WeightKind::Swc, Some(&orbits))?,
        aut_order: group.len(),
        zero_columns_plus,
        zero_columns_minus,
        fingerprint_mismatch: search.fingerprint_mismatch,
        search_found_extension: search.transform.is_some(),
        search_nodes: search.nodes,
        naive_candidates,
        naive_found_extension,
        certificate,
    })
}

/// Encodes every element of `alphabet` through the coordinate maps and
/// assembles the codes and the map between them.
fn assemble(
    message: &Module,
    alphabet: &Arc<Module>,
    plus: &[Vec<u32>],
    minus: &[Vec<u32>],
    guards: &Guards,
) -> Result<(CodeMap, bool)> {
    let encode = |coords: &[Vec<u32>], x: u32| -> Vec<u32> { coords.iter().map(|c| c[x as usize]).collect() };
    let injective = |coords: &[Vec<u32>]| {
        let mut words: Vec<Vec<u32>> = message.elements().map(|x| encode(coords, x)).collect();
        words.sort();
        words.dedup();
        words.len() == message.order()
    };
    let bijective = injective(plus) && injective(minus);
    let gens = generating_chain(message, &Submodule::zero(message), None);
    let gp: Vec<Vec<u32>> = gens.iter().map(|&g| encode(plus, g)).collect();
    let gm: Vec<Vec<u32>> = gens.iter().map(|&g| encode(minus, g)).collect();
    let c_plus = Arc::new(Code::generate(alphabet, plus.len(), &gp, guards)?);
    let c_minus = Arc::new(Code::generate(alphabet, minus.len(), &gm, guards)?);
    Ok((CodeMap::new(c_plus, c_minus, gm)?, bijective))
}

/// Builds and verifies the pair for `R = M_m(F_q)`, `A = M_{m x k}(F_q)`.
///
/// Falls back to [`build_counterexample_brute`] if the subspace
/// construction fails a check; never returns an unverified pack.
pub fn build_counterexample(m: usize, k: usize, q: u64, guards: &Guards) -> Result<CounterexamplePack> {
    if m == 0 || k <= m {
        return Err(Error::HypothesisUnmet(alloc::format!(
            "need 1 <= m < k, got m = {m}, k = {k}"
        )));
    }
    let field = Arc::new(FiniteField::with_order(q, guards)?);
    let ring = Arc::new(Ring::matrix(m, field.clone(), guards)?);
    let alphabet = Arc::new(Module::column(ring.clone(), k, guards)?);
    guards.check_enum("counterexample alphabet", alphabet.order())?;
    let n = counterexample_length(q, k as u32)?;
    check("counterexample length", n, guards.max_table_order as u128)?;

    let elems: Vec<Matrix> = alphabet
        .elements()
        .map(|x| Matrix::decode(field.clone(), m, k, x as u64))
        .collect();
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for d in 0..=k {
        let mult = q.pow((d * d.saturating_sub(1) / 2) as u32);
        for basis in subspaces(&field, k, d) {
            let p = Matrix::projector_onto_rows(&basis);
            let coord: Vec<u32> = elems
                .iter()
                .map(|x| x.mul(&p).map(|y| y.encode() as u32))
                .collect::<Result<_>>()?;
            let side = if d % 2 == 0 { &mut plus } else { &mut minus };
            for _ in 0..mult {
                side.push(coord.clone());
            }
        }
    }
    let (map, bijective) = assemble(&alphabet, &alphabet, &plus, &minus, guards)?;
    let group = AutGroup::full(&alphabet, guards)?;
    let mut transcript = verify_pack(&map, &group, Construction::Subspace, Some(n), alphabet.order(), guards)?;
    transcript.bijective &= bijective;
    if transcript.passed() {
        return Ok(CounterexamplePack {
            ring,
            c_plus: map.source().clone(),
            c_minus: map.target().clone(),
            alphabet,
            map,
            transcript,
        });
    }
    build_counterexample_brute(&alphabet, &alphabet, n as usize, guards)
}

/// First multiset seen for each signature, split by zero-column presence.
type SidePair = (Option<Vec<usize>>, Option<Vec<usize>>);

/// Searches pairs of multisets of linear maps `message -> alphabet`,
/// shortest first, whose coordinatewise automorphism-orbit labels agree on
/// every message element, with the zero map on the `C+` side only. Such a
/// pair preserves swc over the full automorphism group of `alphabet` and
/// the zero column rules out a monomial extension; the full checks are run
/// before returning.
pub fn build_counterexample_brute(
    message: &Module,
    alphabet: &Arc<Module>,
    max_len: usize,
    guards: &Guards,
) -> Result<CounterexamplePack> {
    guards.check_enum("counterexample alphabet", alphabet.order())?;
    let maps = homs(message, alphabet, guards)?;
    let zero_map = maps
        .iter()
        .position(|m| m.iter().all(|&x| x == alphabet.zero()))
        .ok_or_else(|| Error::Inconsistent("the zero map is missing".into()))?;
    let group = AutGroup::full(alphabet, guards)?;
    let orbits = crate::aut::orbit_partition(alphabet, group.elements());
    let labels: Vec<Vec<u32>> = maps
        .iter()
        .map(|m| m.iter().map(|&x| orbits.label(x)).collect())
        .collect();
    let zero_label = orbits.label(alphabet.zero());
    let mut budget = Budget::new(guards, "brute-force counterexample search");

    for n in 1..=max_len {
        // Signature: per message element, the sorted labels of its coordinates.
        let mut found: BTreeMap<Vec<u32>, SidePair> = BTreeMap::new();
        let mut multiset = vec![0usize; n];
        let mut hit = None;
        loop {
            budget.tick()?;
            let mut sig = Vec::with_capacity(n * message.order());
            let mut faithful = true;
            for b in message.elements() {
                let start = sig.len();
                sig.extend(multiset.iter().map(|&i| labels[i][b as usize]));
                sig[start..].sort_unstable();
                if b != message.zero() && sig[start..].iter().all(|&l| l == zero_label) {
                    faithful = false;
                    break;
                }
            }
            if faithful {
                let entry = found.entry(sig).or_default();
                let slot = if multiset.contains(&zero_map) {
                    &mut entry.0
                } else {
                    &mut entry.1
                };
                slot.get_or_insert_with(|| multiset.clone());
                if let (Some(p), Some(m)) = entry {
                    hit = Some((p.clone(), m.clone()));
                    break;
                }
            }
            if !next_multiset(&mut multiset, maps.len()) {
                break;
            }
        }
        if let Some((p, m)) = hit {
            let coords = |s: &[usize]| -> Vec<Vec<u32>> { s.iter().map(|&i| maps[i].clone()).collect() };
            let (map, bijective) = assemble(message, alphabet, &coords(&p), &coords(&m), guards)?;
            let mut t = verify_pack(&map, &group, Construction::BruteForce, None, message.order(), guards)?;
            t.bijective &= bijective;
            if !t.passed() {
                return Err(Error::Inconsistent(alloc::format!(
                    "brute-force pair failed verification: {t:?}"
                )));
            }
            return Ok(CounterexamplePack {
                ring: alphabet.ring().clone(),
                alphabet: alphabet.clone(),
                c_plus: map.source().clone(),
                c_minus: map.target().clone(),
                map,
                transcript: t,
            });
        }
    }
    Err(Error::Unsupported(alloc::format!(
        "no verified pair of length <= {max_len} over {}",
        alphabet.describe()
    )))
}

/// Next nondecreasing sequence over `0..base`.
fn next_multiset(s: &mut [usize], base: usize) -> bool {
    let Some(i) = (0..s.len()).rev().find(|&i| s[i] + 1 < base) else {
        return false;
    };
    let v = s[i] + 1;
    s[i..].iter_mut().for_each(|x| *x = v);
    true
}
