//! Enumeration of `R`-linear maps by generator images.
//!
//! A linear map defined on a submodule `D` extends to `D + R g` with
//! `g ↦ b` exactly when `s·b = φ(s·g)` for every `s` with `s·g ∈ D`. All
//! searches here grow maps one generator at a time under that test, so
//! every map they produce is linear by construction.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::guard::Budget;
use crate::module::{generating_chain, same_ring, submodules, Module, Submodule};
use crate::{Error, Guards, Result};

/// Marks elements outside the domain of a [`PartialMap`].
pub const UNDEF: u32 = u32::MAX;

/// A linear map defined on a submodule of its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap {
    image: Vec<u32>,
    domain: Vec<u32>,
}

impl PartialMap {
    /// The zero map on the zero submodule.
    pub fn zero(src: &Module, dst: &Module) -> Self {
        let mut image = vec![UNDEF; src.order()];
        image[src.zero() as usize] = dst.zero();
        PartialMap {
            image,
            domain: vec![src.zero()],
        }
    }

    /// The map `sub[i] ↦ values[i]`, checked to be linear (and injective
    /// when asked).
    pub fn on_submodule(
        src: &Module,
        sub: &Submodule,
        dst: &Module,
        values: &[u32],
        require_injective: bool,
    ) -> Result<Self> {
        if values.len() != sub.len() {
            return Err(Error::LengthMismatch {
                expected: sub.len(),
                got: values.len(),
            });
        }
        let mut image = vec![UNDEF; src.order()];
        for (&x, &y) in sub.members().iter().zip(values) {
            if y as usize >= dst.order() {
                return Err(Error::InvalidElement {
                    element: y as u64,
                    order: dst.order() as u64,
                });
            }
            image[x as usize] = y;
        }
        let f = |x: u32| image[x as usize];
        for &x in sub.members() {
            for &y in sub.members() {
                let s = f(src.add(x, y));
                if s == UNDEF {
                    return Err(Error::IllDefined("domain is not closed under addition".into()));
                }
                if s != dst.add(f(x), f(y)) {
                    return Err(Error::IllDefined("map is not additive".into()));
                }
            }
            for r in src.ring().elements() {
                let s = f(src.act(r, x));
                if s == UNDEF || s != dst.act(r, f(x)) {
                    return Err(Error::IllDefined("map does not commute with the action".into()));
                }
            }
        }
        if require_injective {
            let mut hit = vec![false; dst.order()];
            for &y in values {
                if core::mem::replace(&mut hit[y as usize], true) {
                    return Err(Error::NotInjective);
                }
            }
        }
        Ok(PartialMap {
            image,
            domain: sub.members().to_vec(),
        })
    }

    pub fn get(&self, x: u32) -> Option<u32> {
        let y = self.image[x as usize];
        (y != UNDEF).then_some(y)
    }

    /// Image table indexed by source elements; [`UNDEF`] off the domain.
    pub fn image(&self) -> &[u32] {
        &self.image
    }

    /// Domain members, in discovery order.
    pub fn domain(&self) -> &[u32] {
        &self.domain
    }

    pub fn is_total(&self) -> bool {
        self.domain.len() == self.image.len()
    }

    pub fn into_total(self) -> Vec<u32> {
        assert!(self.is_total(), "map is only partial");
        self.image
    }

    fn is_injective(&self, dst_order: usize) -> bool {
        let mut hit = vec![false; dst_order];
        self.domain
            .iter()
            .all(|&x| !core::mem::replace(&mut hit[self.image[x as usize] as usize], true))
    }
}

/// Extends `pm` by `g ↦ b`, or `None` when that is not well defined (or
/// not injective, when asked).
pub fn try_extend(src: &Module, dst: &Module, pm: &PartialMap, g: u32, b: u32, injective: bool) -> Option<PartialMap> {
    if let Some(y) = pm.get(g) {
        return (y == b).then(|| pm.clone());
    }
    let ring = src.ring();
    let mut cyclic: Vec<(u32, u32)> = Vec::with_capacity(ring.order());
    let mut seen = vec![UNDEF; src.order()];
    for s in ring.elements() {
        let (sg, sb) = (src.act(s, g), dst.act(s, b));
        if let Some(v) = pm.get(sg) {
            if v != sb {
                return None;
            }
        }
        match seen[sg as usize] {
            UNDEF => {
                seen[sg as usize] = sb;
                cyclic.push((sg, sb));
            }
            v if v != sb => return None,
            _ => {}
        }
    }
    let mut image = pm.image.clone();
    let mut domain = pm.domain.clone();
    let mut hit = if injective {
        let mut hit = vec![false; dst.order()];
        for &x in &pm.domain {
            hit[pm.image[x as usize] as usize] = true;
        }
        Some(hit)
    } else {
        None
    };
    let old = pm.domain.len();
    for &(sg, sb) in &cyclic {
        for i in 0..old {
            let x = domain[i];
            let y = src.add(x, sg);
            if image[y as usize] != UNDEF {
                continue;
            }
            let v = dst.add(image[x as usize], sb);
            image[y as usize] = v;
            domain.push(y);
            if let Some(hit) = hit.as_mut() {
                if core::mem::replace(&mut hit[v as usize], true) {
                    return None;
                }
            }
        }
    }
    Some(PartialMap { image, domain })
}

/// Depth-first search over images of `gens`, starting from `start`.
///
/// Images are drawn from `targets` (all of `dst` when `None`), in
/// increasing index order, so the visiting order is lexicographic in the
/// generator images.
#[allow(clippy::too_many_arguments)]
pub(crate) fn search<F>(
    src: &Module,
    dst: &Module,
    start: &PartialMap,
    gens: &[u32],
    injective: bool,
    targets: Option<&[u32]>,
    budget: &mut Budget,
    visit: &mut F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&PartialMap) -> ControlFlow<()>,
{
    let Some((&g, rest)) = gens.split_first() else {
        return Ok(visit(start));
    };
    if start.get(g).is_some() {
        return search(src, dst, start, rest, injective, targets, budget, visit);
    }
    let all: Vec<u32>;
    let pool = match targets {
        Some(t) => t,
        None => {
            all = dst.elements().collect();
            &all
        }
    };
    for &b in pool {
        budget.tick()?;
        if let Some(next) = try_extend(src, dst, start, g, b, injective) {
            if search(src, dst, &next, rest, injective, targets, budget, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

fn require_same_ring(a: &Module, b: &Module) -> Result<()> {
    if same_ring(a.ring(), b.ring()) {
        Ok(())
    } else {
        Err(Error::Incompatible("modules over different rings".into()))
    }
}

/// Calls `visit` on every linear map `sub -> dst` (injective ones only, if
/// asked), with images restricted to `targets` when given.
pub fn for_each_hom_on<F>(
    src: &Module,
    sub: &Submodule,
    dst: &Module,
    injective: bool,
    targets: Option<&[u32]>,
    guards: &Guards,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&PartialMap) -> ControlFlow<()>,
{
    require_same_ring(src, dst)?;
    let gens = generating_chain(src, &Submodule::zero(src), Some(sub));
    let mut budget = Budget::new(guards, "linear map search");
    let _ = search(
        src,
        dst,
        &PartialMap::zero(src, dst),
        &gens,
        injective,
        targets,
        &mut budget,
        &mut visit,
    )?;
    Ok(())
}

/// Every linear map `src -> dst`, as image tables, in lexicographic order
/// of generator images.
pub fn homs(src: &Module, dst: &Module, guards: &Guards) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for_each_hom_on(src, &Submodule::whole(src), dst, false, None, guards, |pm| {
        out.push(pm.image().to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn hom_count(src: &Module, dst: &Module, guards: &Guards) -> Result<u64> {
    let mut n = 0u64;
    for_each_hom_on(src, &Submodule::whole(src), dst, false, None, guards, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// The first injective linear map `src -> dst`, if any.
pub fn find_embedding(src: &Module, dst: &Module, guards: &Guards) -> Result<Option<Vec<u32>>> {
    require_same_ring(src, dst)?;
    if src.order() > dst.order() {
        return Ok(None);
    }
    let mut found = None;
    for_each_hom_on(src, &Submodule::whole(src), dst, true, None, guards, |pm| {
        found = Some(pm.image().to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Whether some injective `R`-linear map `a -> b` exists.
pub fn embeds_into(a: &Module, b: &Module, guards: &Guards) -> Result<bool> {
    Ok(find_embedding(a, b, guards)?.is_some())
}

/// Extensions of the partial map `pm` to all of `module`, visited in
/// lexicographic order of the extra generator images.
fn for_each_extension<F>(module: &Module, pm: &PartialMap, guards: &Guards, visit: F) -> Result<()>
where
    F: FnMut(&PartialMap) -> ControlFlow<()>,
{
    let mut visit = visit;
    let base = Submodule::from_set(crate::set::ElemSet::from_unsorted(pm.domain().to_vec()));
    let gens = generating_chain(module, &base, None);
    let mut budget = Budget::new(guards, "extension search");
    let _ = search(module, module, pm, &gens, false, None, &mut budget, &mut visit)?;
    Ok(())
}

/// Extends the injective map `sub[i] ↦ values[i]` to an endomorphism of
/// `module`, preferring an automorphism when one exists.
pub fn extend_mono(module: &Module, sub: &Submodule, values: &[u32], guards: &Guards) -> Result<Option<Vec<u32>>> {
    let pm = PartialMap::on_submodule(module, sub, module, values, true)?;
    extend_partial(module, &pm, guards)
}

fn extend_partial(module: &Module, pm: &PartialMap, guards: &Guards) -> Result<Option<Vec<u32>>> {
    let mut first: Option<Vec<u32>> = None;
    let mut bijective: Option<Vec<u32>> = None;
    for_each_extension(module, pm, guards, |ext| {
        if first.is_none() {
            first = Some(ext.image().to_vec());
        }
        if ext.is_injective(module.order()) {
            bijective = Some(ext.image().to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(bijective.or(first))
}

/// A monomorphism from a submodule into the module that no endomorphism
/// extends, if one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnextendableMono {
    pub submodule: Submodule,
    /// Images of `submodule.members()`, in order.
    pub values: Vec<u32>,
}

/// Searches every submodule and every monomorphism from it for one that
/// does not extend to an endomorphism.
pub fn pseudo_injectivity_witness(module: &Module, guards: &Guards) -> Result<Option<UnextendableMono>> {
    let subs = submodules(module, guards)?;
    for sub in subs {
        let mut monos: Vec<PartialMap> = Vec::new();
        for_each_hom_on(module, &sub, module, true, None, guards, |pm| {
            monos.push(pm.clone());
            ControlFlow::Continue(())
        })?;
        for mono in monos {
            let mut extends = false;
            for_each_extension(module, &mono, guards, |_| {
                extends = true;
                ControlFlow::Break(())
            })?;
            if !extends {
                let values = sub.members().iter().map(|&x| mono.image()[x as usize]).collect();
                return Ok(Some(UnextendableMono { submodule: sub, values }));
            }
        }
    }
    Ok(None)
}

/// Every monomorphism from a submodule into `module` extends to an
/// endomorphism of `module`.
pub fn is_pseudo_injective(module: &Module, guards: &Guards) -> Result<bool> {
    Ok(pseudo_injectivity_witness(module, guards)?.is_none())
}
