//! Executable checks of the main results, at desk scale.
//!
//! Every verifier enumerates a declared finite scope completely and reports
//! what it counted; a guard trip turns into [`Outcome::GuardExceeded`]
//! instead of a partial verdict.

mod counterexample;
mod midway;
mod necessity;
mod orbit_lemma;
mod sufficiency;
mod verdict;

pub use counterexample::{
    build_counterexample, build_counterexample_brute, counterexample_length, verify_pack, Certificate, Construction,
    CounterexamplePack, Transcript,
};
pub use midway::{midway_peeling, peel_pair, verify_midway, PeelStep, PeelTrace};
pub use necessity::{verify_necessity, Necessity};
pub use orbit_lemma::verify_orbit_lemma;
pub use sufficiency::verify_sufficiency;
pub use verdict::{Bounds, Outcome, VerdictReport, Witness};

/// Fails early when `A^max_n` is larger than the guard allows.
fn check_scope(module: &crate::module::Module, bounds: Bounds, guards: &crate::Guards) -> crate::Result<()> {
    let order = (module.order() as u128)
        .checked_pow(bounds.max_n as u32)
        .unwrap_or(u128::MAX);
    crate::guard::check("ambient space A^n", order, guards.max_power_order as u128)
}
