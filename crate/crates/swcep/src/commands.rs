//! Command dispatch.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use swcep_core::aut::{annihilator_partition, annihilators_by_class, orbit_partition, zero_partition, AutGroup};
use swcep_core::code::{map_preserves, weight_profile, WeightKind};
use swcep_core::ideal::{is_left_pir, is_right_pir, jacobson_radical, left_ideals};
use swcep_core::lab::{
    build_counterexample, verify_midway, verify_necessity, verify_orbit_lemma, verify_pack, verify_sufficiency,
    Construction, CounterexamplePack, Outcome,
};
use swcep_core::monomial::extension_search;
use swcep_core::socle::{socle_report, wedderburn_data, SocleReport};
use swcep_core::{Error, Guards};

use crate::error::CliError;
use crate::format::{self, CodeDesc, CodesFile, MapDesc, ModuleDesc, RingDesc, SpecFile, SCHEMA_VERSION};
use crate::report::{envelope, outcome_exit_code, profile_json, transcript_json, transform_json, verdict_json};

#[derive(Debug, Parser)]
#[command(
    name = "swcep",
    version,
    about = "Extension-property toolkit for linear codes over finite module alphabets"
)]
pub struct Cli {
    /// Largest ring or module enumerated in full (ideals, submodules, automorphisms).
    #[arg(long, global = true, env = "SWCEP_MAX_ORDER")]
    pub max_order: Option<usize>,
    /// Largest code length for the verifiers; overrides the spec file.
    #[arg(long, global = true, env = "SWCEP_MAX_N")]
    pub max_n: Option<usize>,
    /// Largest number of code generators for the verifiers; overrides the spec file.
    #[arg(long, global = true, env = "SWCEP_MAX_GENS")]
    pub max_gens: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, radical, ideals and Wedderburn blocks of the ring.
    RingInfo {
        spec: PathBuf,
    },
    /// Socle, simple multiplicities and the three cyclic-socle criteria.
    SocleReport {
        spec: PathBuf,
    },
    /// The automorphism group of the module.
    AutGroup {
        spec: PathBuf,
        /// List every automorphism as an image table.
        #[arg(long)]
        list: bool,
    },
    /// Automorphism orbits and annihilator classes.
    Orbits {
        spec: PathBuf,
    },
    /// Weight profiles of every codeword in a codes file.
    Weights {
        codes: PathBuf,
    },
    /// Build and verify the pair C± for M_{m x k}(F_q).
    EpCounterexample {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
        /// Write the pack to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search monomial extensions for every map in a codes file; packs are replayed.
    EpCheckExtension {
        codes: PathBuf,
    },
    VerifyOrbitLemma {
        spec: PathBuf,
    },
    VerifyMidway {
        spec: PathBuf,
    },
    VerifySufficiency {
        spec: PathBuf,
    },
    VerifyNecessity {
        spec: PathBuf,
        /// Write the pack to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Socle report, orbit lemma, midway, and sufficiency or necessity.
    VerifyAll {
        spec: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::RingInfo { .. } => "ring-info",
            Command::SocleReport { .. } => "socle-report",
            Command::AutGroup { .. } => "aut-group",
            Command::Orbits { .. } => "orbits",
            Command::Weights { .. } => "weights",
            Command::EpCounterexample { .. } => "ep-counterexample",
            Command::EpCheckExtension { .. } => "ep-check-extension",
            Command::VerifyOrbitLemma { .. } => "verify-orbit-lemma",
            Command::VerifyMidway { .. } => "verify-midway",
            Command::VerifySufficiency { .. } => "verify-sufficiency",
            Command::VerifyNecessity { .. } => "verify-necessity",
            Command::VerifyAll { .. } => "verify-all",
        }
    }
}

/// What a command produced: a report (absent on hard errors), an exit
/// code, and diagnostics for standard error.
#[derive(Debug)]
pub struct Run {
    pub report: Option<Value>,
    pub exit_code: i32,
    pub diagnostic: Option<String>,
}

impl Run {
    /// The report as pretty JSON with a trailing newline.
    pub fn render(&self) -> Option<String> {
        self.report.as_ref().map(|r| {
            let mut s = serde_json::to_string_pretty(r).expect("JSON values serialize");
            s.push('\n');
            s
        })
    }
}

pub fn guards_for(cli: &Cli) -> Guards {
    let mut g = Guards::default();
    if let Some(m) = cli.max_order {
        g.max_enum_order = m;
    }
    g
}

pub fn run(cli: &Cli) -> Run {
    let guards = guards_for(cli);
    match dispatch(cli, &guards) {
        Ok((inputs, result, code)) => Run {
            report: Some(envelope(cli.command.name(), inputs, &guards, result, code)),
            exit_code: code,
            diagnostic: None,
        },
        Err(e) => Run {
            report: None,
            exit_code: e.exit_code(),
            diagnostic: Some(format!("swcep {}: {e}", cli.command.name())),
        },
    }
}

type Dispatched = (Value, Value, i32);

fn spec_inputs(loaded: &format::Loaded) -> Value {
    json!({"spec": loaded.spec})
}

fn dispatch(cli: &Cli, g: &Guards) -> Result<Dispatched, CliError> {
    match &cli.command {
        Command::RingInfo { spec } => {
            let l = format::parse_spec(spec, g)?;
            Ok((spec_inputs(&l), ring_info(&l, g)?, 0))
        }
        Command::SocleReport { spec } => {
            let l = format::parse_spec(spec, g)?;
            let r = socle_report(l.module()?, g)?;
            let code = if r.cyclic { 0 } else { 1 };
            Ok((spec_inputs(&l), socle_json(&r), code))
        }
        Command::AutGroup { spec, list } => {
            let l = format::parse_spec(spec, g)?;
            let aut = AutGroup::full(l.module()?, g)?;
            let mut v = json!({"order": aut.len(), "identity": 0, "closed": aut.is_closed()});
            if *list {
                v["elements"] = json!(aut.elements());
            }
            Ok((spec_inputs(&l), v, 0))
        }
        Command::Orbits { spec } => {
            let l = format::parse_spec(spec, g)?;
            Ok((spec_inputs(&l), orbits(&l, g)?, 0))
        }
        Command::Weights { codes } => weights(codes, g),
        Command::EpCounterexample { m, k, q, out } => {
            let pack = build_counterexample(*m, *k, *q, g)?;
            let alphabet = SpecFile {
                ring: RingDesc::Matrix { m: *m, q: *q },
                module: Some(ModuleDesc::Column { k: *k }),
                bounds: None,
            };
            let file = pack_file(alphabet, &pack);
            write_out(out.as_deref(), &file)?;
            let inputs = json!({"m": m, "k": k, "q": q});
            Ok((inputs, pack_json(&file, &pack), 1))
        }
        Command::EpCheckExtension { codes } => check_extension(codes, g),
        Command::VerifyOrbitLemma { spec } => {
            let l = format::parse_spec(spec, g)?;
            let r = verify_orbit_lemma(l.module()?, g)?;
            Ok((spec_inputs(&l), verdict_json(&r), outcome_exit_code(r.outcome)))
        }
        Command::VerifyMidway { spec } => {
            let l = format::parse_spec(spec, g)?;
            let b = l.bounds(cli.max_n, cli.max_gens);
            let r = verify_midway(l.module()?, b, g)?;
            let inputs = json!({"spec": l.spec, "max_n": b.max_n, "max_gens": b.max_gens});
            Ok((inputs, verdict_json(&r), outcome_exit_code(r.outcome)))
        }
        Command::VerifySufficiency { spec } => {
            let l = format::parse_spec(spec, g)?;
            let b = l.bounds(cli.max_n, cli.max_gens);
            let r = verify_sufficiency(l.module()?, b, g)?;
            let inputs = json!({"spec": l.spec, "max_n": b.max_n, "max_gens": b.max_gens});
            Ok((inputs, verdict_json(&r), outcome_exit_code(r.outcome)))
        }
        Command::VerifyNecessity { spec, out } => {
            let l = format::parse_spec(spec, g)?;
            let n = verify_necessity(l.module()?, g)?;
            let mut v = verdict_json(&n.report);
            if let Some(pack) = &n.pack {
                let alphabet = SpecFile {
                    bounds: None,
                    ..l.spec.clone()
                };
                let file = pack_file(alphabet, pack);
                write_out(out.as_deref(), &file)?;
                v["pack"] = pack_json(&file, pack);
            }
            Ok((spec_inputs(&l), v, outcome_exit_code(n.report.outcome)))
        }
        Command::VerifyAll { spec } => {
            let l = format::parse_spec(spec, g)?;
            let b = l.bounds(cli.max_n, cli.max_gens);
            let (v, code) = verify_all(&l, b, g)?;
            let inputs = json!({"spec": l.spec, "max_n": b.max_n, "max_gens": b.max_gens});
            Ok((inputs, v, code))
        }
    }
}

/// `Some(value)`, or `None` when the guard trips.
fn guarded<T>(r: Result<T, Error>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::GuardExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn ring_info(l: &format::Loaded, g: &Guards) -> Result<Value, CliError> {
    let r = &l.ring;
    let rad = jacobson_radical(r);
    let w = wedderburn_data(r, g)?;
    let ideals = guarded(left_ideals(r, g))?;
    Ok(json!({
        "description": r.describe(),
        "order": r.order(),
        "zero": r.zero(),
        "one": r.one(),
        "unit_count": r.units().iter().filter(|&&u| u).count(),
        "additive_exponent": r.additive_exponent(),
        "radical": rad.members(),
        "wedderburn": w.blocks.iter().map(|b| json!({"mu": b.mu, "q": b.q})).collect::<Vec<_>>(),
        "semisimple_order": w.semisimple_order().to_string(),
        "left_ideals": ideals.map(|v| v.iter().map(|i| i.members().to_vec()).collect::<Vec<_>>()),
        "is_left_pir": guarded(is_left_pir(r, g))?,
        "is_right_pir": guarded(is_right_pir(r, g))?,
    }))
}

fn socle_json(r: &SocleReport) -> Value {
    let simples: Vec<Value> = (0..r.mus.len())
        .map(|i| {
            json!({
                "order": r.simple_orders[i],
                "endo_order": r.endo_orders[i],
                "mu": r.mus[i],
                "s": r.multiplicities[i],
            })
        })
        .collect();
    json!({
        "socle": r.socle.members(),
        "socle_order": r.socle.len(),
        "simple_modules": simples,
        "by_multiplicity": r.by_multiplicity,
        "by_generator": r.by_generator,
        "generator": r.generator,
        "by_embedding": r.by_embedding,
        "character_convention": "(r chi)(x) = chi(x r)",
        "cyclic": r.cyclic,
        "methods_agree": r.methods_agree,
    })
}

fn orbits(l: &format::Loaded, g: &Guards) -> Result<Value, CliError> {
    let a = l.module()?;
    let aut = AutGroup::full(a, g)?;
    let sim = orbit_partition(a, aut.elements());
    let ann = annihilator_partition(a);
    let anns: Vec<Value> = annihilators_by_class(a, &ann)
        .iter()
        .map(|(label, i)| json!({"class": label, "annihilator": i.members()}))
        .collect();
    Ok(json!({
        "aut_order": aut.len(),
        "aut_orbits": sim.classes(),
        "annihilator_classes": ann.classes(),
        "annihilators": anns,
        "orbits_refine_annihilator_classes": sim.refines(&ann),
        "partitions_equal": sim.same_partition(&ann),
    }))
}

fn weights(path: &Path, g: &Guards) -> Result<Dispatched, CliError> {
    let lc = format::parse_codes(path, g)?;
    let a = lc.alphabet.module()?;
    let aut = AutGroup::full(a, g)?;
    let sim = orbit_partition(a, aut.elements());
    let ann = annihilator_partition(a);
    let mut codes = Vec::new();
    for (name, code) in &lc.codes {
        let mut words = Vec::new();
        for w in code.words() {
            words.push(json!({
                "word": w,
                "hamming": swcep_core::code::hamming_weight(a, w),
                "swc": profile_json(&weight_profile(a, w, WeightKind::Swc, Some(&sim))?),
                "aw": profile_json(&weight_profile(a, w, WeightKind::Aw, Some(&ann))?),
            }));
        }
        codes.push(json!({"name": name, "size": code.len(), "zero_columns": code.zero_columns(), "words": words}));
    }
    let mut maps = Vec::new();
    for (desc, f) in &lc.maps {
        maps.push(json!({
            "from": desc.from,
            "to": desc.to,
            "preserves_hamming": map_preserves(f, WeightKind::Hamming, None)?,
            "preserves_swc": map_preserves(f, WeightKind::Swc, Some(&sim))?,
            "preserves_aw": map_preserves(f, WeightKind::Aw, Some(&ann))?,
        }));
    }
    let zero = zero_partition(a);
    let result = json!({
        "zero_label": zero.label(a.zero()),
        "swc_classes": sim.classes(),
        "aw_classes": ann.classes(),
        "codes": codes,
        "maps": maps,
    });
    Ok((json!({"codes": lc.file}), result, 0))
}

fn check_extension(path: &Path, g: &Guards) -> Result<Dispatched, CliError> {
    let lc = format::parse_codes(path, g)?;
    let a = lc.alphabet.module()?;
    let aut = AutGroup::full(a, g)?;
    let sim = orbit_partition(a, aut.elements());
    let ann = annihilator_partition(a);
    let mut all_extend = true;
    let mut maps = Vec::new();
    for (desc, f) in &lc.maps {
        let s = extension_search(f, &aut, g)?;
        all_extend &= s.transform.is_some();
        maps.push(json!({
            "from": desc.from,
            "to": desc.to,
            "preserves_hamming": map_preserves(f, WeightKind::Hamming, None)?,
            "preserves_swc": map_preserves(f, WeightKind::Swc, Some(&sim))?,
            "preserves_aw": map_preserves(f, WeightKind::Aw, Some(&ann))?,
            "extension": s.transform.as_ref().map(transform_json),
            "fingerprint_mismatch": s.fingerprint_mismatch,
            "zero_columns": [s.zero_columns.0, s.zero_columns.1],
            "search_nodes": s.nodes,
        }));
    }
    let mut result = json!({"aut_order": aut.len(), "maps": maps, "all_extend": all_extend});
    if let (Some(stored), [(_, f)]) = (&lc.file.transcript, lc.maps.as_slice()) {
        let construction = match stored["construction"].as_str() {
            Some("brute-force") => Construction::BruteForce,
            Some("pullback") => Construction::Pullback,
            _ => Construction::Subspace,
        };
        let expected = stored["expected_length"].as_str().and_then(|s| s.parse::<u128>().ok());
        let message_order = stored["message_order"].as_u64().unwrap_or(0) as usize;
        let t = verify_pack(f, &aut, construction, expected, message_order, g)?;
        let replayed = transcript_json(&t);
        result["replay"] = json!({
            "transcript": replayed,
            "matches_stored": &replayed == stored,
            "passed": t.passed(),
        });
    }
    Ok((json!({"codes": lc.file}), result, if all_extend { 0 } else { 1 }))
}

/// The pack as a codes file.
pub fn pack_file(alphabet: SpecFile, pack: &CounterexamplePack) -> CodesFile {
    CodesFile {
        schema_version: SCHEMA_VERSION,
        alphabet,
        length: pack.length(),
        codes: vec![
            CodeDesc {
                name: "C_plus".into(),
                generators: pack.c_plus.generators().to_vec(),
            },
            CodeDesc {
                name: "C_minus".into(),
                generators: pack.c_minus.generators().to_vec(),
            },
        ],
        maps: vec![MapDesc {
            from: "C_plus".into(),
            to: "C_minus".into(),
            gen_images: pack.map.gen_images().to_vec(),
        }],
        transcript: Some(transcript_json(&pack.transcript)),
    }
}

fn pack_json(file: &CodesFile, pack: &CounterexamplePack) -> Value {
    json!({
        "length": pack.length(),
        "code_size": pack.c_plus.len(),
        "c_plus_words": pack.c_plus.words(),
        "c_minus_words": pack.c_minus.words(),
        "file": file,
    })
}

fn write_out(path: Option<&Path>, file: &CodesFile) -> Result<(), CliError> {
    if let Some(p) = path {
        let mut s = serde_json::to_string_pretty(file).expect("JSON values serialize");
        s.push('\n');
        std::fs::write(p, s).map_err(|e| CliError::Io(p.display().to_string(), e))?;
    }
    Ok(())
}

/// Exit 0 when every applicable claim checks out (including a verified
/// pack for non-cyclic socles), 1 when one is refuted, 3 on a guard trip.
fn verify_all(l: &format::Loaded, b: swcep_core::lab::Bounds, g: &Guards) -> Result<(Value, i32), CliError> {
    let a = l.module()?;
    let soc = socle_report(a, g)?;
    let lemma = verify_orbit_lemma(a, g)?;
    let midway = verify_midway(a, b, g)?;
    let mut outcomes = vec![lemma.outcome, midway.outcome];
    let mut v = json!({
        "socle_report": socle_json(&soc),
        "orbit_lemma": verdict_json(&lemma),
        "midway": verdict_json(&midway),
    });
    let dichotomy_ok = if soc.cyclic {
        let s = verify_sufficiency(a, b, g)?;
        outcomes.push(s.outcome);
        v["sufficiency"] = verdict_json(&s);
        s.outcome == Outcome::Verified
    } else {
        let n = verify_necessity(a, g)?;
        v["necessity"] = verdict_json(&n.report);
        n.pack.is_some()
    };
    v["dichotomy_consistent"] = json!(dichotomy_ok);
    let code = if outcomes.contains(&Outcome::GuardExceeded) {
        3
    } else if outcomes.contains(&Outcome::Counterexample) || (!dichotomy_ok && soc.cyclic) {
        1
    } else {
        0
    };
    Ok((v, code))
}

/// Builds the module from a spec file path; exposed for tests.
pub fn load_module(path: &Path, g: &Guards) -> Result<Arc<swcep_core::module::Module>, CliError> {
    Ok(format::parse_spec(path, g)?.module()?.clone())
}
