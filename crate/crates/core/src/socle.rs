//! Socles, simple modules and the cyclic-socle criteria.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::character::character_module;
use crate::hom::{find_embedding, for_each_hom_on, hom_count};
use crate::ideal::{jacobson_radical, quotient};
use crate::module::{cyclic_submodule, Module, Submodule};
use crate::ring::{block_projections, Block, Ring};
use crate::set::ElemSet;
use crate::{Error, Guards, Result};

/// `{ a : r·a = 0 for every r in rad R }`.
pub fn socle(module: &Module) -> Submodule {
    let rad = jacobson_radical(module.ring());
    let members = module
        .elements()
        .filter(|&a| rad.members().iter().all(|&r| module.act(r, a) == module.zero()))
        .collect();
    Submodule::from_set(ElemSet::from_sorted(members))
}

/// One isomorphism class of simple left `R`-modules.
#[derive(Debug, Clone)]
pub struct SimpleEntry {
    /// A representative `T`, realized as a minimal left ideal of
    /// `R / rad R` pulled back to `R`.
    pub module: Arc<Module>,
    /// Multiplicity of `T` in `R / rad R`.
    pub mu: u32,
    /// `|End_R(T)|`.
    pub endo_order: u64,
}

/// Every simple left `R`-module up to isomorphism.
#[derive(Debug, Clone)]
pub struct SimpleCatalog {
    pub entries: Vec<SimpleEntry>,
}

/// Exact integer logarithm.
pub fn exact_log(value: u64, base: u64) -> Option<u32> {
    if base < 2 {
        return None;
    }
    let (mut v, mut k) = (value, 0);
    while v > 1 {
        if v % base != 0 {
            return None;
        }
        v /= base;
        k += 1;
    }
    (v == 1).then_some(k)
}

/// Builds the catalog from the minimal left ideals of `R / rad R`.
pub fn simple_catalog(ring: &Arc<Ring>, guards: &Guards) -> Result<SimpleCatalog> {
    guards.check_table("simple catalog ring", ring.order() as u128)?;
    let rad = jacobson_radical(ring);
    let q = quotient(ring, &rad)?;
    let qring = Arc::new(q.ring);
    let qreg = Module::regular(qring.clone());
    let regular_pullback = Module::pullback(ring.clone(), &q.projection, &qreg)?;

    // Minimal left ideals are exactly the minimal nonzero principal ones.
    let mut principals: Vec<Submodule> = qring
        .elements()
        .filter(|&x| x != qring.zero())
        .map(|x| cyclic_submodule(&qreg, x))
        .collect();
    principals.sort();
    principals.dedup();
    let minimal: Vec<&Submodule> = principals
        .iter()
        .filter(|p| !principals.iter().any(|o| o.len() < p.len() && o.is_subset(p)))
        .collect();

    let mut reps: Vec<Arc<Module>> = Vec::new();
    for ideal in minimal {
        let (t, _) = qreg.from_submodule(ideal);
        let t = Module::pullback(ring.clone(), &q.projection, &t)?;
        let mut known = false;
        for r in &reps {
            if r.order() == t.order() && find_embedding(&t, r, guards)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(Arc::new(t));
        }
    }

    let mut entries = Vec::new();
    for t in reps {
        let endo_order = hom_count(&t, &t, guards)?;
        let homs_into_regular = hom_count(&t, &regular_pullback, guards)?;
        let mu = exact_log(homs_into_regular, endo_order).ok_or_else(|| {
            Error::Inconsistent(format!(
                "|Hom(T, R/rad R)| = {homs_into_regular} is not a power of |End(T)| = {endo_order}"
            ))
        })?;
        entries.push(SimpleEntry {
            module: t,
            mu,
            endo_order,
        });
    }
    entries.sort_by_key(|e| (e.endo_order, e.mu, e.module.order()));

    let product: u128 = entries.iter().map(|e| (e.module.order() as u128).pow(e.mu)).product();
    if product != qring.order() as u128 {
        return Err(Error::Inconsistent(format!(
            "simple multiplicities give order {product}, R/rad R has order {}",
            qring.order()
        )));
    }
    Ok(SimpleCatalog { entries })
}

/// Block parameters `(mu_i, q_i)` of `R / rad R ≅ ⊕ M_{mu_i}(F_{q_i})`,
/// sorted by `(q_i, mu_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedderburnData {
    pub blocks: Vec<Block>,
}

impl WedderburnData {
    /// `Π q_i^(mu_i^2)`.
    pub fn semisimple_order(&self) -> u128 {
        self.blocks.iter().map(|b| (b.q as u128).pow(b.mu * b.mu)).product()
    }
}

/// Structural for matrix, `Z/n` and product rings; from the simple catalog
/// otherwise.
pub fn wedderburn_data(ring: &Arc<Ring>, guards: &Guards) -> Result<WedderburnData> {
    let mut blocks: Vec<Block> = match block_projections(ring, guards)? {
        Some(bps) => bps.into_iter().map(|b| b.block).collect(),
        None => simple_catalog(ring, guards)?
            .entries
            .iter()
            .map(|e| Block {
                mu: e.mu,
                q: e.endo_order,
            })
            .collect(),
    };
    blocks.sort_by_key(|b| (b.q, b.mu));
    Ok(WedderburnData { blocks })
}

/// `s_i` with `|Hom_R(T_i, A)| = |End(T_i)|^(s_i)`, aligned with the catalog.
pub fn socle_multiplicities(module: &Module, catalog: &SimpleCatalog, guards: &Guards) -> Result<Vec<u32>> {
    catalog
        .entries
        .iter()
        .map(|e| {
            let count = hom_count(&e.module, module, guards)?;
            exact_log(count, e.endo_order).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "|Hom(T, A)| = {count} is not a power of |End(T)| = {}",
                    e.endo_order
                ))
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SocleReport {
    pub socle: Submodule,
    /// `s_i`, aligned with `mus`.
    pub multiplicities: Vec<u32>,
    /// `mu_i` from the simple catalog.
    pub mus: Vec<u32>,
    /// `|T_i|`, aligned with `mus`.
    pub simple_orders: Vec<usize>,
    /// `|End(T_i)|`, aligned with `mus`.
    pub endo_orders: Vec<u64>,
    /// Criterion (a): `s_i <= mu_i` for all `i`.
    pub by_multiplicity: bool,
    /// Criterion (b): some single element generates the socle.
    pub by_generator: bool,
    /// Smallest-index generator of the socle, when (b) holds.
    pub generator: Option<u32>,
    /// Criterion (c): `A` embeds into `R̂`; `None` when `R` is too large
    /// for the character module.
    pub by_embedding: Option<bool>,
    pub cyclic: bool,
    pub methods_agree: bool,
}

/// Socle analysis with the three cyclic-socle criteria cross-checked.
///
/// Disagreement between the criteria is reported as
/// [`Error::Inconsistent`].
pub fn socle_report(module: &Module, guards: &Guards) -> Result<SocleReport> {
    let ring = module.ring();
    let catalog = simple_catalog(ring, guards)?;
    let soc = socle(module);
    let multiplicities = socle_multiplicities(module, &catalog, guards)?;
    let expected: u128 = catalog
        .entries
        .iter()
        .zip(&multiplicities)
        .map(|(e, &s)| (e.module.order() as u128).pow(s))
        .product();
    if expected != soc.len() as u128 {
        return Err(Error::Inconsistent(format!(
            "multiplicities predict a socle of order {expected}, found {}",
            soc.len()
        )));
    }
    let mus: Vec<u32> = catalog.entries.iter().map(|e| e.mu).collect();
    let by_multiplicity = multiplicities.iter().zip(&mus).all(|(s, m)| s <= m);
    let generator = soc
        .members()
        .iter()
        .copied()
        .find(|&g| cyclic_submodule(module, g) == soc);
    let by_generator = generator.is_some();
    let by_embedding = if ring.order() <= guards.max_enum_order {
        let hat = character_module(ring, guards)?;
        Some(find_embedding(module, &hat, guards)?.is_some())
    } else {
        None
    };
    let methods_agree = by_multiplicity == by_generator && by_embedding.is_none_or(|e| e == by_multiplicity);
    if !methods_agree {
        return Err(Error::Inconsistent(format!(
            "cyclic-socle criteria disagree: multiplicity {by_multiplicity}, generator {by_generator}, embedding {by_embedding:?}"
        )));
    }
    Ok(SocleReport {
        socle: soc,
        multiplicities,
        simple_orders: catalog.entries.iter().map(|e| e.module.order()).collect(),
        endo_orders: catalog.entries.iter().map(|e| e.endo_order).collect(),
        mus,
        by_multiplicity,
        by_generator,
        generator,
        by_embedding,
        cyclic: by_multiplicity,
        methods_agree,
    })
}

/// Number of linear maps `T -> A` with `T` simple, by counting images of a
/// single generator. Used as a cheap independent count in tests.
pub fn simple_hom_count(t: &Module, a: &Module, guards: &Guards) -> Result<u64> {
    let mut n = 0;
    for_each_hom_on(t, &Submodule::whole(t), a, false, None, guards, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}
