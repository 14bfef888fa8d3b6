//! One test per acceptance criterion; each prints a single PASS/FAIL line.
//! Run with `--nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use qzero_core::channel::random::{random_block_channel, random_channel};
use qzero_core::cli::reproduce::cmd_reproduce;
use qzero_core::cli::{verify_text, Artifact, Report, RunConfig};
use qzero_core::constructions::fixtures::{l_theorem1, remark1_subspace};
use qzero_core::constructions::synthesis::synthesize;
use qzero_core::exact::QScalar;
use qzero_core::gaussian::{classify_zero_error, random_gaussian_spec, GaussianCapacity};
use qzero_core::zeroerr::ledger::{nonsuperactivation_ledger, LedgerChannel};
use qzero_core::zeroerr::superactivation::{superactivation_check, Kind};
use qzero_core::rank1::Subject;
use qzero_core::zeroerr::{qbar0_positive, ZeroErrorContext};

fn line(n: u32, name: &str, ok: bool, elapsed: Duration, limit: Duration, detail: &str) {
    let within = elapsed <= limit;
    let tag = if ok && within { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {tag}  {name}  ({:.2}s, limit {}s) {detail}", elapsed.as_secs_f64(), limit.as_secs());
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
    assert!(within, "criterion {n} ({name}) exceeded its {}s runtime", limit.as_secs());
}

fn record<'a>(r: &'a Report, check: &str) -> &'a Value {
    &r.records.iter().find(|x| x.check == check).unwrap_or_else(|| panic!("no record {check}")).detail
}

fn deep() -> RunConfig {
    RunConfig { deep: true, ..RunConfig::default() }
}

#[test]
fn criterion_01_theorem1() {
    let t = Instant::now();
    let r = cmd_reproduce("theorem1", &RunConfig::default()).unwrap();
    let eig = record(&r, "eigen-data")["eigenvalues"].clone();
    let pairs = record(&r, "generator-pair checks").clone();
    let ok = r.passed()
        && eig == serde_json::json!(["i", "-i", "1", "-1"])
        && pairs == serde_json::json!({ "pairs": 64, "zero": 64 })
        && record(&r, "L transitive")["verdict"] == "TRANSITIVE"
        // eigen-data certificate; its verification rejects eigenvectors of rank below 2
        && record(&r, "L transitive")["evidence"] == "dmr"
        && record(&r, "L ⊗ L not transitive")["verdict"] == "NOT_TRANSITIVE";
    line(1, "L transitive, L ⊗ L not", ok, t.elapsed(), Duration::from_secs(10), &format!("λ = {eig}, {pairs}"));
}

#[test]
fn criterion_02_classical_superactivation() {
    let t = Instant::now();
    let r = cmd_reproduce("theorem1", &RunConfig::default()).unwrap();
    let syn = record(&r, "synthesized channel").clone();
    let sa = record(&r, "superactivation").clone();
    let ok = r.passed()
        && syn["n"] == 4
        && syn["choi_rank"] == 3
        && syn["output_bound"] == 12
        && sa["kind"] == "CLASSICAL"
        && sa["verified"] == true;
    line(2, "classical superactivation", ok, t.elapsed(), Duration::from_secs(30), &format!("{syn} kind {}", sa["kind"]));
}

#[test]
fn criterion_03_extreme() {
    let t = Instant::now();
    let r2 = cmd_reproduce("theorem2", &RunConfig::default()).unwrap();
    let rx = cmd_reproduce("extreme", &RunConfig::default()).unwrap();
    let pairs = record(&r2, "generator-pair equalities").clone();
    let sa = record(&rx, "superactivation").clone();
    let d1 = record(&rx, "Φ1 synthesized").clone();
    let d2 = record(&rx, "Φ2 synthesized").clone();
    let dims_ok = [&d1, &d2].iter().all(|d| d["n"] == 8 && d["dim_env"] == 5 && d["output_bound"].as_u64().unwrap() <= 40);
    let ok = r2.passed()
        && rx.passed()
        && pairs["pairs"] == 529
        && pairs["off_diagonal_failures"] == 0
        && pairs["diagonal_failures"] == 0
        && [record(&r2, "L1 transitive"), record(&r2, "L2 transitive")].iter().all(|c| c["verdict"] == "TRANSITIVE" && c["evidence"] == "corner")
        && sa["kind"] == "EXTREME"
        && dims_ok;
    line(3, "extreme superactivation", ok, t.elapsed(), Duration::from_secs(120), &format!("{pairs}, kind {}", sa["kind"]));
}

#[test]
fn criterion_04_lemma6() {
    let t = Instant::now();
    let r = cmd_reproduce("lemma6", &RunConfig::default()).unwrap();
    let ok = r.passed()
        && record(&r, "dim N") == 9
        && record(&r, "dim M") == 7
        && record(&r, "N has no rank-one element")["verdict"] == "NO_RANK_ONE"
        && record(&r, "N̂ has no rank-one element")["verdict"] == "NO_RANK_ONE"
        && record(&r, "Tr ÂB̂ = Tr AB")["agree"] == 256;
    line(4, "N, N̂ free of rank one; pairing identity", ok, t.elapsed(), Duration::from_secs(5), "");
}

#[test]
fn criterion_05_remark1() {
    let t = Instant::now();
    let r = cmd_reproduce("remark1", &RunConfig::default()).unwrap();
    let ca = record(&r, "commutant trivial").clone();
    let q = record(&r, "qbar0").clone();
    let pair = record(&r, "(e1, e2) satisfies the Q̄₀ equations").clone();
    // a context without registered witnesses still finds it
    let v = qbar0_positive(&Subject::Space { space: remark1_subspace() }, &ZeroErrorContext::default()).unwrap();
    let ok = r.passed() && ca["dim"] == 1 && q["status"] == "POSITIVE" && pair["pairs"] == 13 && v.is_positive() && v.verify(&Subject::Space { space: remark1_subspace() }).is_ok();
    line(5, "trivial commutant, Q̄₀ > 0", ok, t.elapsed(), Duration::from_secs(2), &format!("commutant dim {}, route {}", ca["dim"], q["route"]));
}

#[test]
fn criterion_06_symmetric_extreme() {
    let t = Instant::now();
    let r = cmd_reproduce("corollary-symmetric", &deep()).unwrap();
    let g = record(&r, "graph").clone();
    let pairs = record(&r, "embedded pair, generator-pair equalities").clone();
    let ok = r.passed()
        && g["ambient"] == 16
        && g["dim"] == 174
        && record(&r, "cbar0")["status"] == "ZERO"
        && record(&r, "graph transitive")["evidence"] == "direct_sum_block"
        && pairs["pairs"] == 174 * 174
        && record(&r, "tensor qbar0")["status"] == "POSITIVE";
    line(6, "symmetric extreme superactivation", ok, t.elapsed(), Duration::from_secs(900), &format!("{g}, {pairs}"));
}

#[test]
fn criterion_07_gaussian() {
    let t = Instant::now();
    let r = cmd_reproduce("gaussian-demo", &RunConfig::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pos = |c: GaussianCapacity| c != GaussianCapacity::Zero;
    let mut closed = 0;
    for _ in 0..100 {
        let (s1, s2) = (rng.random_range(1..=2), rng.random_range(1..=2));
        let (a, b) = (random_gaussian_spec(&mut rng, s1), random_gaussian_spec(&mut rng, s2));
        let (ca, cb, cs) = (classify_zero_error(&a).unwrap(), classify_zero_error(&b).unwrap(), classify_zero_error(&a.direct_sum(&b)).unwrap());
        if pos(cs.cbar0) == (pos(ca.cbar0) || pos(cb.cbar0)) && pos(cs.qbar0) == (pos(ca.qbar0) || pos(cb.qbar0)) {
            closed += 1;
        }
    }
    let ok = r.passed() && closed == 100;
    line(7, "Gaussian classification and tensor closure", ok, t.elapsed(), Duration::from_secs(5), &format!("closure {closed}/100"));
}

#[test]
fn criterion_08_ledger() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ctx = ZeroErrorContext::with_fixtures(Default::default()).unwrap();
    let theorem1 = synthesize(&l_theorem1()).unwrap();
    let (mut qubit_ok, mut classical) = (0, 0);
    for _ in 0..100 {
        let m = rng.random_range(1..=3);
        let count = rng.random_range(2usize.div_ceil(m)..=3);
        let q = random_channel(&mut rng, 2, m, count);
        let (n, pm) = (rng.random_range(2..=4), rng.random_range(1..=3));
        let partner = random_channel(&mut rng, n, pm, n);
        let l = nonsuperactivation_ledger(&LedgerChannel::finite(&q), None);
        if l.fired("3B") {
            qubit_ok += 1;
        }
        for p in [&partner as &dyn qzero_core::zeroerr::ledger::ChannelGraph, &theorem1] {
            let s = superactivation_check(&LedgerChannel::finite(&q), &LedgerChannel::finite(p), &ctx, None).unwrap();
            if matches!(s.kind, Kind::Classical | Kind::Extreme) || !s.blockers.iter().any(|c| c.id == "3B") {
                classical += 1;
            }
        }
    }
    let mut algebras = 0;
    let mut fired = 0;
    while algebras < 100 {
        let n = rng.random_range(2..=4);
        let ch = random_block_channel(&mut rng, n);
        if !ch.graph().is_algebra() {
            continue;
        }
        algebras += 1;
        if nonsuperactivation_ledger(&LedgerChannel::finite(&ch), None).fired("3C") {
            fired += 1;
        }
    }
    let ok = qubit_ok == 100 && classical == 0 && fired == 100;
    line(
        8,
        "non-superactivation ledger",
        ok,
        t.elapsed(),
        Duration::from_secs(60),
        &format!("3B {qubit_ok}/100, classical verdicts {classical}, 3C {fired}/100"),
    );
}

fn run_suite(name: &str, count: u64, f: fn(u64) -> Result<(), String>) -> Result<(), String> {
    for seed in 0..count {
        f(seed).map_err(|e| format!("{name} seed {seed}: {e}"))?;
    }
    Ok(())
}

#[test]
fn criterion_09_properties() {
    let t = Instant::now();
    let results = [
        run_suite("perp involution", 1000, common::perp_involution),
        run_suite("graph conditions", 200, common::graph_conditions),
        run_suite("complementary kernel", 200, common::complementary_kernel_matches_supports),
        run_suite("n = 2 decision", 500, common::n2_matches_determinant_oracle),
        run_suite("rationalize gate", 500, common::rationalize_gate_holds),
    ];
    let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    line(9, "property suites", failures.is_empty(), t.elapsed(), Duration::from_secs(600), &format!("{failures:?}"));
}

const EXHAUSTIVE_LIMIT: usize = 5000;

/// Add one to the first scalar leaf at or after `skip` (in document order).
fn tamper(v: &mut Value, skip: &mut usize) -> bool {
    match v {
        Value::String(s) => {
            if let Ok(x) = s.parse::<QScalar>() {
                if *skip == 0 {
                    *s = (&x + &QScalar::one()).to_string();
                    return true;
                }
                *skip -= 1;
            }
            false
        }
        Value::Array(a) => a.iter_mut().any(|x| tamper(x, skip)),
        Value::Object(o) => o.iter_mut().filter(|(k, _)| k.as_str() != "digest").any(|(_, x)| tamper(x, skip)),
        _ => false,
    }
}

fn scalar_count(v: &Value) -> usize {
    match v {
        Value::String(s) => usize::from(s.parse::<QScalar>().is_ok()),
        Value::Array(a) => a.iter().map(scalar_count).sum(),
        Value::Object(o) => o.iter().filter(|(k, _)| k.as_str() != "digest").map(|(_, x)| scalar_count(x)).sum(),
        _ => 0,
    }
}

#[test]
fn criterion_10_certificate_round_trip() {
    let t = Instant::now();
    let cfg = deep();
    let mut artifacts: Vec<(String, Artifact)> = Vec::new();
    for name in ["theorem1", "theorem2", "extreme", "lemma6", "remark1", "l0", "corollary-symmetric", "gaussian-demo"] {
        let r = cmd_reproduce(name, &cfg).unwrap();
        artifacts.extend(r.artifacts.into_iter().map(|(k, a)| (format!("{name}/{k}"), a)));
    }
    let (mut verified, mut tampered, mut caught) = (0, 0, 0);
    let mut problems = Vec::new();
    for (name, a) in &artifacts {
        let text = serde_json::to_string(a).unwrap();
        match verify_text(&text) {
            Ok(r) if r.passed() => verified += 1,
            _ => problems.push(format!("{name} fails after round trip")),
        }
        let v: Value = serde_json::from_str(&text).unwrap();
        let total = scalar_count(&v);
        // every position, except in the three 174-dimensional artifacts where evenly spaced ones
        let positions: Vec<usize> = if total <= EXHAUSTIVE_LIMIT { (0..total).collect() } else { (0..512).map(|k| k * total / 512).collect() };
        for k in positions {
            let mut w = v.clone();
            let mut skip = k;
            assert!(tamper(&mut w, &mut skip));
            tampered += 1;
            match verify_text(&w.to_string()) {
                Ok(r) if r.passed() => problems.push(format!("{name}: tampering went unnoticed")),
                _ => caught += 1,
            }
        }
    }
    let ok = problems.is_empty() && verified == artifacts.len() && caught == tampered && tampered > 0;
    line(
        10,
        "certificate round trip and tampering",
        ok,
        t.elapsed(),
        Duration::from_secs(900),
        &format!("{verified}/{} verified, {caught}/{tampered} tamperings caught {problems:?}", artifacts.len()),
    );
}
