//! JSON views of core results. Every collection is emitted in a canonical
//! order and objects use sorted keys, so reports are byte-stable.

use serde_json::{json, Value};
use swcep_core::code::WeightProfile;
use swcep_core::lab::{Certificate, Construction, Outcome, Transcript, VerdictReport};
use swcep_core::monomial::MonomialTransform;
use swcep_core::Guards;

use crate::format::SCHEMA_VERSION;

pub fn envelope(command: &str, inputs: Value, guards: &Guards, result: Value, exit_code: i32) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "swcep",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs,
        "guards": guards_json(guards),
        "result": result,
        "exit_code": exit_code,
    })
}

pub fn guards_json(g: &Guards) -> Value {
    json!({
        "max_table_order": g.max_table_order,
        "max_enum_order": g.max_enum_order,
        "max_field_order": g.max_field_order,
        "max_code_size": g.max_code_size,
        "max_power_order": g.max_power_order,
        "max_search_nodes": g.max_search_nodes,
    })
}

pub fn outcome_exit_code(o: Outcome) -> i32 {
    match o {
        Outcome::Verified => 0,
        Outcome::Counterexample => 1,
        Outcome::HypothesesUnmet => 2,
        Outcome::GuardExceeded => 3,
    }
}

pub fn verdict_json(r: &VerdictReport) -> Value {
    json!({
        "claim": r.claim,
        "outcome": r.outcome.as_str(),
        "hypotheses": r.hypotheses.iter().map(|(n, h)| json!({"name": n, "holds": h})).collect::<Vec<_>>(),
        "counts": r.counts,
        "witnesses": r.witnesses.iter().map(|w| json!({"label": w.label, "data": w.data})).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn transcript_json(t: &Transcript) -> Value {
    json!({
        "construction": match t.construction {
            Construction::Subspace => "subspace",
            Construction::BruteForce => "brute-force",
            Construction::Pullback => "pullback",
        },
        "length": t.length,
        "expected_length": t.expected_length.map(|n| n.to_string()),
        "length_ok": t.length_ok,
        "message_order": t.message_order,
        "bijective": t.bijective,
        "hamming_preserved": t.hamming_preserved,
        "swc_preserved": t.swc_preserved,
        "aut_order": t.aut_order,
        "zero_columns_plus": t.zero_columns_plus,
        "zero_columns_minus": t.zero_columns_minus,
        "fingerprint_mismatch": t.fingerprint_mismatch,
        "search_found_extension": t.search_found_extension,
        "search_nodes": t.search_nodes,
        "naive_candidates": t.naive_candidates,
        "naive_found_extension": t.naive_found_extension,
        "certificate": t.certificate.map(|c| match c {
            Certificate::ZeroColumn => "zero-column",
            Certificate::Search => "search",
        }),
        "passed": t.passed(),
    })
}

pub fn profile_json(p: &WeightProfile) -> Value {
    Value::Array(p.counts.iter().map(|(l, c)| json!([l, c])).collect())
}

pub fn transform_json(t: &MonomialTransform) -> Value {
    json!({"sigma": t.sigma(), "taus": t.taus()})
}
