//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use swcep::format::{parse_codes, parse_spec};
use swcep_core::aut::{annihilator_partition, orbit_partition, AutGroup};
use swcep_core::code::{map_preserves, WeightKind};
use swcep_core::hom::is_pseudo_injective;
use swcep_core::lab::{build_counterexample, counterexample_length, verify_orbit_lemma, Outcome};
use swcep_core::module::{Module, ModuleSpec};
use swcep_core::monomial::{extension_search, extension_search_naive};
use swcep_core::ring::{Ring, RingSpec};
use swcep_core::socle::socle_report;
use swcep_core::Guards;

const SECOND: Duration = Duration::from_secs(1);

type Check = fn(&mut Ctx) -> Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: Check,
}

/// Recorded CLI runs and emitted pack files, shared across criteria.
struct Ctx {
    dir: tempfile::TempDir,
    runs: Vec<(Vec<String>, i32, String)>,
    packs: Vec<PathBuf>,
}

impl Ctx {
    fn cli(&mut self, args: &[&str]) -> Result<(i32, Value), String> {
        let (code, stdout, stderr) = exec(args);
        self.runs
            .push((args.iter().map(|s| s.to_string()).collect(), code, stdout.clone()));
        let v = serde_json::from_str(&stdout).map_err(|e| format!("{args:?}: {e}; stderr: {stderr}"))?;
        Ok((code, v))
    }

    fn pack_path(&mut self, name: &str) -> String {
        let p = self.dir.path().join(name);
        self.packs.push(p.clone());
        p.display().to_string()
    }
}

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_swcep"));
    for var in ["SWCEP_MAX_ORDER", "SWCEP_MAX_N", "SWCEP_MAX_GENS"] {
        cmd.env_remove(var);
    }
    let out = cmd.args(args).output().expect("swcep runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g() -> Guards {
    Guards::default()
}

fn counterexample_reproduction(ctx: &mut Ctx) -> Result<String, String> {
    let pack = build_counterexample(1, 2, 2, &g()).map_err(|e| e.to_string())?;
    let n = pack.length();
    let formula: u64 = (1..2).map(|i| 1 + 2u64.pow(i)).product();
    ensure(n as u64 == formula && n == 3, || {
        format!("length {n}, formula {formula}")
    })?;
    ensure(pack.c_plus.len() == 4 && pack.c_minus.len() == 4, || {
        "codes do not have 4 words".into()
    })?;
    let grp = AutGroup::full(&pack.alphabet, &g()).map_err(|e| e.to_string())?;
    let orbits = orbit_partition(&pack.alphabet, grp.elements());
    let hamming = map_preserves(&pack.map, WeightKind::Hamming, None).map_err(|e| e.to_string())?;
    let swc = map_preserves(&pack.map, WeightKind::Swc, Some(&orbits)).map_err(|e| e.to_string())?;
    ensure(hamming && swc, || format!("hamming {hamming}, swc {swc}"))?;
    ensure(grp.len() == 6, || format!("|Aut| = {}", grp.len()))?;
    ensure(!pack.c_plus.zero_columns().is_empty(), || {
        "C+ has no zero column".into()
    })?;
    ensure(pack.c_minus.zero_columns().is_empty(), || "C- has a zero column".into())?;
    let search = extension_search(&pack.map, &grp, &g()).map_err(|e| e.to_string())?;
    let (naive, candidates) = extension_search_naive(&pack.map, &grp, &g()).map_err(|e| e.to_string())?;
    ensure(search.transform.is_none() && naive.is_none(), || {
        "an extension was found".into()
    })?;
    ensure(candidates == 6 * 216, || {
        format!("{candidates} candidates, expected 3!*6^3")
    })?;
    let out = ctx.pack_path("ce_1_2_2.json");
    let (code, v) = ctx.cli(&["ep-counterexample", "--m", "1", "--k", "2", "--q", "2", "--out", &out])?;
    ensure(code == 1 && v["result"]["length"] == 3, || format!("cli exit {code}"))?;
    Ok(format!(
        "N=3, 4 codewords, zero columns {:?}/none, {candidates} candidates, no extension",
        pack.c_plus.zero_columns()
    ))
}

fn necessity_pipeline(ctx: &mut Ctx) -> Result<String, String> {
    let out = ctx.pack_path("necessity_z4_z2sq.json");
    let (code, v) = ctx.cli(&["verify-necessity", &fixture("z4_z2sq.json"), "--out", &out])?;
    let r = &v["result"];
    ensure(code == 1, || format!("exit {code}"))?;
    ensure(r["outcome"] == "counterexample", || format!("outcome {}", r["outcome"]))?;
    let t = &r["pack"]["file"]["transcript"];
    let construction = t["construction"].as_str().unwrap_or("").to_string();
    ensure(construction == "pullback", || format!("construction {construction}"))?;
    for key in ["length_ok", "bijective", "hamming_preserved", "swc_preserved"] {
        ensure(t[key] == true, || format!("{key} failed"))?;
    }
    ensure(t["search_found_extension"] == false, || "extension found".into())?;
    let len = r["pack"]["length"].as_u64().unwrap_or(0);
    ensure(len == 3, || format!("length {len}"))?;
    Ok(format!(
        "exit 1, {construction} pack of length {len} over (Z/2)^2, all checks pass"
    ))
}

/// Cyclic submodule generated by `x`, by breadth-first closure.
fn closure(a: &Module, gens: &[u32]) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = [a.zero()].into_iter().collect();
    let mut stack: Vec<u32> = gens.to_vec();
    while let Some(x) = stack.pop() {
        if !set.insert(x) && x != a.zero() {
            continue;
        }
        let current: Vec<u32> = set.iter().copied().collect();
        for y in current {
            let s = a.add(x, y);
            if !set.contains(&s) {
                stack.push(s);
            }
        }
        for r in a.ring().elements() {
            let s = a.act(r, x);
            if !set.contains(&s) {
                stack.push(s);
            }
        }
    }
    set
}

/// Socle as the span of simple cyclic submodules; cyclic when one element
/// generates it.
fn socle_is_cyclic_by_brute_force(a: &Module) -> bool {
    let cyc: Vec<BTreeSet<u32>> = a.elements().map(|x| closure(a, &[x])).collect();
    let simple: Vec<u32> = a
        .elements()
        .filter(|&x| {
            x != a.zero()
                && cyc[x as usize]
                    .iter()
                    .all(|&y| y == a.zero() || cyc[y as usize] == cyc[x as usize])
        })
        .collect();
    let soc = closure(a, &simple);
    soc.iter().any(|&x| cyc[x as usize] == soc)
}

fn triple_agreement(ctx: &mut Ctx) -> Result<String, String> {
    let catalog = [
        ("z4_regular.json", true),
        ("z4_z2sq.json", false),
        ("z4_z2.json", true),
        ("f2_f2sq.json", false),
        ("m2f2_col3.json", false),
        ("z6_regular.json", true),
    ];
    let mut got = Vec::new();
    for (file, expected) in catalog {
        let l = parse_spec(Path::new(&fixture(file)), &g()).map_err(|e| e.to_string())?;
        let a = l.module().map_err(|e| e.to_string())?;
        let r = socle_report(a, &g()).map_err(|e| format!("{file}: {e}"))?;
        let brute = socle_is_cyclic_by_brute_force(a);
        ensure(r.by_embedding.is_some(), || {
            format!("{file}: embedding criterion skipped")
        })?;
        ensure(
            r.methods_agree && r.by_multiplicity == r.by_generator && r.by_embedding == Some(r.by_generator),
            || format!("{file}: criteria disagree"),
        )?;
        ensure(r.cyclic == expected && brute == expected, || {
            format!("{file}: cyclic {} brute {brute}", r.cyclic)
        })?;
        let (code, v) = ctx.cli(&["socle-report", &fixture(file)])?;
        ensure(
            v["result"]["cyclic"] == expected && code == if expected { 0 } else { 1 },
            || format!("{file}: cli exit {code}"),
        )?;
        got.push(r.cyclic);
    }
    Ok(format!("cyclic = {got:?}, (a), (b), (c) and brute force agree"))
}

fn orbit_lemma(_ctx: &mut Ctx) -> Result<String, String> {
    let mut catalog: Vec<Module> = Vec::new();
    for file in [
        "z4_regular.json",
        "z4_z2sq.json",
        "z4_z2.json",
        "f2_f2.json",
        "f2_f2sq.json",
        "m2f2_col3.json",
        "z6_regular.json",
        "z4_z2_z4.json",
    ] {
        let l = parse_spec(Path::new(&fixture(file)), &g()).map_err(|e| e.to_string())?;
        catalog.push(l.module().map_err(|e| e.to_string())?.as_ref().clone());
    }
    let extra = [
        (
            RingSpec::ModN(4),
            ModuleSpec::DirectSum(vec![ModuleSpec::Regular, ModuleSpec::Regular]),
        ),
        (
            RingSpec::ModN(8),
            ModuleSpec::DirectSum(vec![ModuleSpec::ModM(2), ModuleSpec::Regular]),
        ),
        (RingSpec::ModN(9), ModuleSpec::Regular),
        (RingSpec::Matrix { m: 1, q: 3 }, ModuleSpec::Column { k: 2 }),
        (RingSpec::Matrix { m: 2, q: 2 }, ModuleSpec::Regular),
    ];
    for (r, m) in extra {
        let ring = std::sync::Arc::new(Ring::make(&r, &g()).map_err(|e| e.to_string())?);
        catalog.push(Module::make(ring, &m, &g()).map_err(|e| e.to_string())?);
    }
    let (mut equal, mut unmet) = (0, 0);
    for a in &catalog {
        let desc = a.describe();
        let aut = AutGroup::full(a, &g()).map_err(|e| e.to_string())?;
        let sim = orbit_partition(a, aut.elements());
        let ann = annihilator_partition(a);
        ensure(sim.refines(&ann), || {
            format!("{desc}: orbits do not refine annihilator classes")
        })?;
        let pi = is_pseudo_injective(a, &g()).map_err(|e| e.to_string())?;
        let report = verify_orbit_lemma(a, &g()).map_err(|e| e.to_string())?;
        if pi {
            ensure(sim.same_partition(&ann), || format!("{desc}: partitions differ"))?;
            ensure(report.outcome == Outcome::Verified, || {
                format!("{desc}: {:?}", report.outcome)
            })?;
            equal += 1;
        } else {
            ensure(report.outcome == Outcome::HypothesesUnmet, || {
                format!("{desc}: {:?}", report.outcome)
            })?;
            unmet += 1;
        }
    }
    Ok(format!(
        "{} modules: refinement everywhere, equality on all {equal} pseudo-injective ones ({unmet} not pseudo-injective)",
        catalog.len()
    ))
}

fn midway(ctx: &mut Ctx) -> Result<String, String> {
    let mut parts = Vec::new();
    for file in ["f2_f2sq.json", "z4_z2sq.json"] {
        let (code, v) = ctx.cli(&["--max-n", "3", "--max-gens", "2", "verify-midway", &fixture(file)])?;
        let r = &v["result"];
        ensure(code == 0 && r["outcome"] == "verified", || {
            format!("{file}: exit {code}, {}", r["outcome"])
        })?;
        let c = &r["counts"];
        let hp = c["hamming_preserving"].as_u64().unwrap_or(0);
        ensure(hp > 0, || format!("{file}: no Hamming-preserving maps"))?;
        ensure(
            c["peeling_balanced"].as_u64() == Some(hp)
                && c["aw_preserving"].as_u64() == Some(hp)
                && c["swc_preserving"].as_u64() == Some(hp),
            || format!("{file}: counts {c}"),
        )?;
        parts.push(format!("{file}: {} maps, {hp} Hamming = swc = aw = peeled", c["maps"]));
    }
    Ok(parts.join("; "))
}

fn sufficiency(ctx: &mut Ctx) -> Result<String, String> {
    let (code, v) = ctx.cli(&["--max-n", "2", "verify-sufficiency", &fixture("z4_regular.json")])?;
    let r = &v["result"];
    ensure(code == 0 && r["outcome"] == "verified", || {
        format!("exit {code}, {}", r["outcome"])
    })?;
    let c = &r["counts"];
    let swc = c["swc_preserving"].as_u64().unwrap_or(0);
    ensure(swc > 0 && c["extended"].as_u64() == Some(swc), || format!("counts {c}"))?;
    Ok(format!(
        "exit 0, {} codes, {} maps, all {swc} swc-preserving maps extend",
        c["codes"], c["maps"]
    ))
}

fn length_table(_ctx: &mut Ctx) -> Result<String, String> {
    let table = [((2u64, 2u32), 3u128), ((3, 2), 4), ((2, 3), 15), ((2, 4), 135)];
    for ((q, k), expected) in table {
        let direct: u128 = (1..k).map(|i| 1 + (q as u128).pow(i)).product();
        let got = counterexample_length(q, k).map_err(|e| e.to_string())?;
        ensure(got == expected && direct == expected, || {
            format!("({q},{k}): {got}, product {direct}")
        })?;
    }
    Ok("(2,2)=3 (3,2)=4 (2,3)=15 (2,4)=135".into())
}

fn determinism_and_round_trip(ctx: &mut Ctx) -> Result<String, String> {
    let runs = ctx.runs.clone();
    for (args, code, stdout) in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (again_code, again, _) = exec(&args);
        ensure(again_code == *code && &again == stdout, || {
            format!("{args:?} differs on rerun")
        })?;
    }
    for path in &ctx.packs.clone() {
        let stored: Value = serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let loaded = parse_codes(path, &g()).map_err(|e| e.to_string())?;
        let reserialized = serde_json::to_value(&loaded.file).map_err(|e| e.to_string())?;
        ensure(reserialized == stored, || format!("{}: reload differs", path.display()))?;
        let (code, v) = ctx.cli(&["ep-check-extension", &path.display().to_string()])?;
        let replay = &v["result"]["replay"];
        ensure(
            code == 1 && replay["matches_stored"] == true && replay["passed"] == true,
            || format!("{}: replay {replay}", path.display()),
        )?;
    }
    Ok(format!(
        "{} reports byte-identical on rerun, {} packs reload and re-verify",
        runs.len(),
        ctx.packs.len()
    ))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "counterexample reproduction",
            limit: SECOND,
            check: counterexample_reproduction,
        },
        Criterion {
            id: 2,
            name: "necessity pipeline",
            limit: 5 * SECOND,
            check: necessity_pipeline,
        },
        Criterion {
            id: 3,
            name: "cyclic-socle triple agreement",
            limit: 120 * SECOND,
            check: triple_agreement,
        },
        Criterion {
            id: 4,
            name: "orbit partitions",
            limit: 60 * SECOND,
            check: orbit_lemma,
        },
        Criterion {
            id: 5,
            name: "midway equivalence",
            limit: 600 * SECOND,
            check: midway,
        },
        Criterion {
            id: 6,
            name: "sufficiency at desk scale",
            limit: 600 * SECOND,
            check: sufficiency,
        },
        Criterion {
            id: 7,
            name: "length table",
            limit: SECOND,
            check: length_table,
        },
        Criterion {
            id: 8,
            name: "determinism and round trip",
            limit: 600 * SECOND,
            check: determinism_and_round_trip,
        },
    ];
    let mut ctx = Ctx {
        dir: tempfile::tempdir().expect("temp dir"),
        runs: Vec::new(),
        packs: Vec::new(),
    };
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)(&mut ctx);
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        failed += !ok as u32;
        println!(
            "{} {}. {}: {} ({:.2} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() as u32 - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
