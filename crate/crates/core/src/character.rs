//! The character module `R̂ = Hom_Z(R, Q/Z)`.
//!
//! Characters take values in `(1/e)Z / Z ≅ Z/e` where `e` is the exponent
//! of `(R, +)`; that subgroup contains every character's image. The left
//! module structure is `(r χ)(x) = χ(x r)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::hom::homs;
use crate::module::Module;
use crate::ring::Ring;
use crate::{Error, Guards, Result};

/// The characters of `(R, +)` as value vectors over `Z/e`, sorted
/// lexicographically (the trivial character first).
pub fn characters(ring: &Ring, guards: &Guards) -> Result<(u32, Vec<Vec<u32>>)> {
    guards.check_enum("character group", ring.order())?;
    let e = ring.additive_exponent();
    if e < 2 {
        return Err(Error::Incompatible("the zero ring has no character module".into()));
    }
    let ze = Arc::new(Ring::mod_n(e, guards)?);
    // (R, +) as a Z/e-module.
    let n = ring.order();
    let mut act = vec![0; e as usize * n];
    for x in ring.elements() {
        let mut acc = ring.zero();
        for s in 0..e {
            act[s as usize * n + x as usize] = acc;
            acc = ring.add(acc, x);
        }
    }
    let group = Module::from_tables_unchecked(ze.clone(), n, ring.add_table().to_vec(), act, ring.zero());
    let circle = Module::regular(ze);
    let mut chars = homs(&group, &circle, guards)?;
    chars.sort();
    if chars.len() != n {
        return Err(Error::Inconsistent(format!(
            "found {} characters of a group of order {}",
            chars.len(),
            n
        )));
    }
    Ok((e, chars))
}

/// `R̂` as a left `R`-module; element `i` is the `i`-th character in
/// [`characters`] order.
pub fn character_module(ring: &Arc<Ring>, guards: &Guards) -> Result<Module> {
    let (e, chars) = characters(ring, guards)?;
    let index: BTreeMap<&[u32], u32> = chars
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i as u32))
        .collect();
    let n = chars.len();
    let mut add = vec![0; n * n];
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % e).collect();
            add[i * n + j] = index[s.as_slice()];
        }
    }
    let mut act = vec![0; ring.order() * n];
    for r in ring.elements() {
        for (j, chi) in chars.iter().enumerate() {
            let v: Vec<u32> = ring.elements().map(|x| chi[ring.mul(x, r) as usize]).collect();
            act[r as usize * n + j] = index[v.as_slice()];
        }
    }
    Ok(Module::from_tables_unchecked(ring.clone(), n, add, act, 0))
}
