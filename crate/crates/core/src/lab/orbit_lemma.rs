use alloc::vec;

use crate::aut::{annihilator_partition, orbit_partition, AutGroup};
use crate::hom::pseudo_injectivity_witness;
use crate::module::Module;
use crate::{Guards, Result};

use super::verdict::VerdictReport;

/// `~` always refines `≈`; for pseudo-injective `A` they coincide.
pub fn verify_orbit_lemma(module: &Module, guards: &Guards) -> Result<VerdictReport> {
    VerdictReport::run("orbit-lemma", |r| {
        let aut = AutGroup::full(module, guards)?;
        let sim = orbit_partition(module, aut.elements());
        let ann = annihilator_partition(module);
        r.count("module_order", module.order() as u64);
        r.count("aut_order", aut.len() as u64);
        r.count("aut_orbits", sim.class_count() as u64);
        r.count("annihilator_classes", ann.class_count() as u64);
        for c in sim.classes() {
            r.witness("aut_orbit", vec![c]);
        }
        for c in ann.classes() {
            r.witness("annihilator_class", vec![c]);
        }
        let refines = sim.refines(&ann);
        r.count("refinement_holds", refines as u64);
        let bad_mono = pseudo_injectivity_witness(module, guards)?;
        if let Some(w) = &bad_mono {
            r.witness(
                "unextendable_mono",
                vec![w.submodule.members().to_vec(), w.values.clone()],
            );
        }
        if let Some((a, b)) = sim.refinement_witness(&ann) {
            r.refute("same_orbit_different_annihilator", vec![vec![a, b]]);
        }
        if r.hypothesis("pseudo_injective", bad_mono.is_none()) {
            r.count("partitions_equal", sim.same_partition(&ann) as u64);
            if let Some((a, b)) = ann.refinement_witness(&sim) {
                r.refute("same_annihilator_different_orbit", vec![vec![a, b]]);
            }
        }
        Ok(())
    })
}
