//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any of them fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use parity_ns::experiments::{beltrami_field, BeltramiProfile};
use parity_ns::field::{
    decompose_matched, decomposition_labels, divergence, parity_project, random_solenoidal,
    random_symmetric_solenoidal, Grid3, MeasureTol, VectorField,
};
use parity_ns::nsops::{heat, picard_solve, quadrature_order, HeatFlow, SolverConfig};
use parity_ns::symtype::{matched_check, Parity, TypeTuple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Runs the binary and parses the JSON report from standard output.
fn run_json(args: &[&str]) -> (Value, Duration, i32) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_parity-ns")).args(args).output().expect("binary runs");
    let elapsed = start.elapsed();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (json, elapsed, out.status.code().unwrap_or(-1))
}

fn run_status(args: &[&str]) -> i32 {
    let out = Command::new(env!("CARGO_BIN_EXE_parity-ns")).args(args).output().expect("binary runs");
    out.status.code().unwrap_or(-1)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().map_or(vec![], |a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect())
}

/// Kinds serialise as three label strings; render them as `(a, b, c)`.
fn kinds(v: &Value) -> Vec<String> {
    v.as_array().map_or(vec![], |a| a.iter().map(|k| format!("({})", strings(k).join(", "))).collect())
}

fn enumerate_real() -> Outcome {
    let (r, dt, code) = run_json(&["enumerate", "--mode", "real"]);
    let new = &r["result"]["newContributions"];
    let ok = code == 0 && r["passed"] == true && r["result"]["total"] == 30 && *new == serde_json::json!([8, 21, 1]);
    outcome(ok && dt < Duration::from_secs(1), format!("total {} byCase {new} in {dt:.2?}", r["result"]["total"]))
}

fn enumerate_complex() -> Outcome {
    let (r, dt, code) = run_json(&["enumerate", "--mode", "complex"]);
    let res = &r["result"];
    let new = &res["newContributions"];
    let ok = code == 0
        && r["passed"] == true
        && res["total"] == 984
        && *new == serde_json::json!([64, 168, 168, 189, 378, 8, 8, 1])
        && res["oracle"]["distinct"] == 984;
    outcome(
        ok && dt < Duration::from_secs(5),
        format!("total {} new {new} oracle {} in {dt:.2?}", res["total"], res["oracle"]["distinct"]),
    )
}

fn selftest() -> Outcome {
    let (r, dt, code) = run_json(&["selftest"]);
    let suite = r["result"]["suite"].as_array().cloned().unwrap_or_default();
    let cases: u64 = suite.iter().filter_map(|c| c["cases"].as_u64()).sum();
    let failures: u64 = suite.iter().filter_map(|c| c["failures"].as_u64()).sum();
    let ok = code == 0 && r["passed"] == true && !suite.is_empty() && failures == 0;
    outcome(
        ok && dt < Duration::from_secs(10),
        format!("{} checks, {cases} cases, {failures} failures in {dt:.2?}", suite.len()),
    )
}

fn projection_completeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut worst_recon, mut worst_cross) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let data: Vec<Complex64> =
            (0..16usize.pow(3)).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = Grid3::from_data(16, data).unwrap();
        let norm = f.euclid_norm();
        let sectors: Vec<Grid3> = Parity::all().map(|a| parity_project(&f, a)).collect();
        let sum = sectors.iter().fold(Grid3::zeros(16).unwrap(), |acc, s| &acc + s);
        worst_recon = worst_recon.max((&sum - &f).euclid_norm() / norm);
        for (s, a) in sectors.iter().zip(Parity::all()) {
            for b in Parity::all() {
                let pp = parity_project(s, b);
                let err = if a == b { (&pp - s).euclid_norm() } else { pp.euclid_norm() };
                worst_cross = worst_cross.max(err / norm);
            }
        }
    }
    outcome(
        worst_recon <= 1e-13 && worst_cross <= 1e-13,
        format!("20 grids: reconstruction {worst_recon:.2e}, cross products {worst_cross:.2e}"),
    )
}

fn matched_decomposition() -> Outcome {
    let tol = MeasureTol::default();
    let (mut recon, mut div) = (0.0f64, 0.0f64);
    let (mut labels_ok, mut matched_ok) = (true, true);
    for seed in 0..10 {
        let u = random_solenoidal(16, seed).unwrap();
        for beta in Parity::all() {
            let parts = decompose_matched(&u, beta).unwrap();
            let sum = parts.iter().fold(VectorField::zeros(16).unwrap(), |acc, p| &acc + p);
            recon = recon.max(sum.rel_diff(&u));
            let mut measured = Vec::new();
            for (p, a) in parts.iter().zip(Parity::all()) {
                div = div.max(divergence(p).euclid_norm() / u.euclid_norm());
                let t = p.type_tuple(tol);
                labels_ok &= t.is_some_and(|t| t.consistent_with(&decomposition_labels(a, beta)));
                measured.extend(t);
            }
            matched_ok &= measured.len() == 8 && measured.iter().all(|a| measured.iter().all(|b| matched_check(a, b)));
        }
    }
    outcome(
        recon <= 1e-13 && div <= 1e-11 && labels_ok && matched_ok,
        format!("80 splits: reconstruction {recon:.2e}, divergence {div:.2e}, labels {labels_ok}, matched {matched_ok}"),
    )
}

fn unmatched_pair() -> Outcome {
    let (r, _, code) = run_json(&["example41"]);
    let res = &r["result"];
    let div = res["uDivergence"].as_f64().unwrap_or(1.0).max(res["vDivergence"].as_f64().unwrap_or(1.0));
    let asym = res["cAsymmetricComponents"].as_u64().unwrap_or(0);
    let ok = code == 0 && r["passed"] == true && !res["uLabels"].is_null() && !res["vLabels"].is_null();
    outcome(ok && div <= 1e-12 && asym >= 1, format!("divergence {div:.2e}, {asym} asymmetric components of C(u,v)"))
}

fn beltrami_surrogate() -> Outcome {
    let (r, _, code) = run_json(&["beltrami", "--n", "32", "--t", "0.1"]);
    let times: Vec<f64> = r["result"]["times"].as_array().map_or(vec![], |a| a.iter().filter_map(Value::as_f64).collect());
    let res: Vec<f64> = r["result"]["residuals"].as_array().map_or(vec![], |a| a.iter().filter_map(Value::as_f64).collect());
    let worst = res.iter().copied().fold(0.0, f64::max);
    let ok = code == 0 && r["passed"] == true && times == [0.0, 0.05, 0.1] && res.len() == 3;
    outcome(ok && worst <= 1e-8, format!("n=32, t={times:?}: max residual {worst:.2e}"))
}

fn rigidity(mode: &str, expected: &[String], limit: Duration) -> Outcome {
    let (r, dt, code) = run_json(&["rigidity", "--mode", mode, "--n", "16", "--seeds", "3"]);
    let scans = r["result"]["scans"].as_array().cloned().unwrap_or_default();
    let mut ok = code == 0 && r["passed"] == true && scans.len() == 3;
    for s in &scans {
        let escapes = kinds(&s["beltramiEscapes"]);
        let kept: Vec<String> = kinds(&s["preservedKinds"]).into_iter().filter(|k| !escapes.contains(k)).collect();
        ok &= kept == expected && kinds(&s["preservedByType"]) == expected && s["allConsistent"] == true;
    }
    let seen = kinds(&r["result"]["preservedByType"]);
    outcome(ok && dt < limit, format!("3 seeds in {dt:.2?}: {} preserved [{}]", seen.len(), seen.join("; ")))
}

fn halfspace(dir: &Path) -> Outcome {
    let input = dir.join("omsy.bin");
    let config = dir.join("solver.json");
    std::fs::write(&config, r#"{"n": 16, "tEnd": 0.1}"#).unwrap();
    let (input, config) = (input.to_str().unwrap(), config.to_str().unwrap());
    let wrote = run_status(&["witness", "--kind", "(100, 010, 001)", "--n", "16", "--amplitude", "1e-2", "--half", "--out", input]);
    let (sym, _, sym_code) = run_json(&["halfspace", "--in", input, "--extend", "sym", "--config", config]);
    let (zero, _, zero_code) = run_json(&["halfspace", "--in", input, "--extend", "zero", "--config", config]);
    let records = sym["result"]["records"].as_array().cloned().unwrap_or_default();
    let imbalance = records.iter().filter_map(|x| x["imbalance"].as_f64()).fold(0.0, f64::max);
    let labels = kinds(&sym["result"]["labels"]);
    let kept = !labels.is_empty() && labels.len() == records.len() && labels.iter().all(|l| l == "(100, 010, 001)");
    let outside = zero["result"]["records"][1]["outsideEnergy"].as_f64().unwrap_or(0.0);
    let ok = wrote == 0 && sym_code == 0 && zero_code == 0 && imbalance <= 1e-8 && kept && outside > 0.0;
    outcome(
        ok,
        format!("{} times: imbalance {imbalance:.2e}, labels kept {kept}; zero extension outside energy {outside:.2e}", records.len()),
    )
}

fn picard() -> Outcome {
    let cfg = SolverConfig::default();
    let u0 = beltrami_field(&BeltramiProfile { amplitude: 1e-2, ..Default::default() }, cfg.n).unwrap();
    let r = picard_solve(&u0, &cfg).unwrap();
    let heat_diff = r
        .trajectory
        .times
        .iter()
        .zip(&r.trajectory.states)
        .map(|(&t, s)| s.rel_diff(&heat(&u0, t)))
        .fold(0.0, f64::max);
    let beltrami_ok = r.converged && r.iterations() == 1 && heat_diff <= 1e-8;

    let g0 = random_symmetric_solenoidal(&TypeTuple::diagonal(), cfg.n, 11).unwrap().scale(1e-2);
    let g = picard_solve(&g0, &cfg).unwrap();
    let ratios = g.ratios();
    let worst_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let generic_ok = g.converged && !ratios.is_empty() && worst_ratio < 0.5;

    let w = random_symmetric_solenoidal(&TypeTuple::diagonal(), 16, 21).unwrap();
    let order = quadrature_order(&HeatFlow(&w), &HeatFlow(&w), 0.1, &cfg, 5).unwrap();
    outcome(
        beltrami_ok && generic_ok && order >= 1.9,
        format!(
            "Beltrami: {} iterate, heat difference {heat_diff:.2e}; generic: max ratio {worst_ratio:.2e}; trapezoid order {order:.3}",
            r.iterations()
        ),
    )
}

fn main() -> ExitCode {
    let tmp = tempfile::tempdir().unwrap();
    let complex_kept: Vec<String> = {
        let mut v: Vec<String> = Parity::all().map(|b| TypeTuple::canonical(Parity::EVEN, b).to_string()).collect();
        v.sort();
        v
    };
    let criteria: Vec<Criterion> = vec![
        ("real enumeration", Box::new(enumerate_real)),
        ("complex enumeration", Box::new(enumerate_complex)),
        ("label algebra suite", Box::new(selftest)),
        ("parity projection completeness", Box::new(projection_completeness)),
        ("matched decomposition", Box::new(matched_decomposition)),
        ("unmatched pair breaks symmetry", Box::new(unmatched_pair)),
        ("Beltrami surrogate", Box::new(beltrami_surrogate)),
        (
            "real rigidity",
            Box::new(|| rigidity("real", &[TypeTuple::diagonal().to_string()], Duration::from_secs(120))),
        ),
        ("complex rigidity", Box::new(move || rigidity("complex", &complex_kept, Duration::from_secs(120)))),
        ("half-space extensions", Box::new(|| halfspace(tmp.path()))),
        ("Picard iteration", Box::new(picard)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.passed);
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
