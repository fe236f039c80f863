use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use parity_ns::enumerate::{census_complex, census_real, dedupe_oracle, dedupe_oracle_real, CaseTag};
use parity_ns::experiments::{
    beltrami_field, beltrami_residual, example41_report, rigidity_scan_complex, rigidity_scan_real,
    BeltramiProfile, RigidityConfig,
};
use parity_ns::field::{
    decompose_matched, decomposition_labels, divergence, divergence_residual, random_symmetric_solenoidal,
    MeasureTol, VectorField,
};
use parity_ns::halfspace::{halfspace_run, restrict, ExtensionKind};
use parity_ns::io::{read_field, read_half_field, write_field, write_half_field};
use parity_ns::nsops::{picard_solve, SolverConfig, StateDiagnostics};
use parity_ns::selftest::symtype_suite;
use parity_ns::spectral::Dealias;
use parity_ns::symtype::{matched_check, Parity, SymLabel, TypeTuple};
use serde_json::{json, Value};

use crate::report::{Checks, InputHash, Report};
use crate::{CliError, Mode};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load_config(path: Option<&PathBuf>, hash: &mut InputHash) -> Result<SolverConfig, CliError> {
    let cfg = match path {
        Some(p) => {
            let text = fs::read(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            hash.bytes("config", &text);
            serde_json::from_slice::<SolverConfig>(&text)
                .map_err(|e| usage(format!("malformed config {}: {e}", p.display())))?
        }
        None => SolverConfig::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn to_value(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// False for NaN as well as for non-positive values.
fn positive(x: f64) -> bool {
    x > 0.0
}

fn parse_parity(s: &str) -> Result<Parity, CliError> {
    match s.parse::<SymLabel>() {
        Ok(SymLabel { re: parity_ns::Part::Sym(p), im: parity_ns::Part::Zero }) if s.len() == 3 => Ok(p),
        _ => Err(usage(format!("expected three bits such as 010, got {s:?}"))),
    }
}

pub fn enumerate(mode: Mode, out: Option<&PathBuf>) -> Result<bool, CliError> {
    let (census, oracle, expected_total, expected_new): (_, _, usize, &[usize]) = match mode {
        Mode::Real => (census_real(), dedupe_oracle_real(), 30, &[8, 21, 1]),
        Mode::Complex => (census_complex(), dedupe_oracle(), 984, &[64, 168, 168, 189, 378, 8, 8, 1]),
    };
    let mut checks = Checks::default();
    checks.add("total", census.total == expected_total, format!("{} kinds (expected {expected_total})", census.total));
    let new = census.new_contributions();
    checks.add("byCase", new == expected_new, format!("new contributions {new:?}"));
    let oracle_set: BTreeSet<TypeTuple> = oracle.distinct.iter().copied().collect();
    checks.add(
        "oracle",
        oracle_set == census.tuples,
        format!("flat recount of {} tuples gives {} kinds", oracle.multiset_size, oracle.total()),
    );
    let kinds: Vec<Value> = census
        .witnesses
        .iter()
        .map(|(t, w)| json!({ "kind": t.to_string(), "witness": w.to_string() }))
        .collect();
    let by_case: serde_json::Map<String, Value> =
        census.by_case.iter().map(|(c, n)| (c.to_string(), to_value(n))).collect();
    let overlaps: serde_json::Map<String, Value> = census
        .overlaps_with
        .iter()
        .map(|(c, m)| {
            let inner: serde_json::Map<String, Value> = m.iter().map(|(d, k)| (d.to_string(), json!(k))).collect();
            (c.to_string(), Value::Object(inner))
        })
        .collect();
    let mode_name = match mode {
        Mode::Real => "real",
        Mode::Complex => "complex",
    };
    let mut hash = InputHash::default();
    hash.bytes("mode", mode_name.as_bytes());
    let report = Report {
        command: "enumerate",
        config: json!({ "mode": mode_name }),
        input_hash: hash.finish(),
        result: json!({
            "total": census.total,
            "rawSize": census.raw_size(),
            "newContributions": new,
            "byCase": by_case,
            "overlapsWith": overlaps,
            "oracle": { "multisetSize": oracle.multiset_size, "distinct": oracle.total() },
            "kinds": kinds,
        }),
        checks,
    };
    report.write(out)?;
    if out.is_some() {
        println!("total {}", census.total);
    }
    Ok(report.checks.passed())
}

pub fn decompose(input: &Path, beta: &str, out_dir: &Path) -> Result<bool, CliError> {
    let beta = parse_parity(beta)?;
    let u = read_field(input)?;
    let mut hash = InputHash::default();
    hash.field_file(input)?;
    let parts = decompose_matched(&u, beta)?;
    fs::create_dir_all(out_dir)?;
    let tol = MeasureTol::default();
    let mut sum = VectorField::zeros(u.n())?;
    let mut rows = Vec::new();
    let mut labels_ok = true;
    let mut max_div: f64 = 0.0;
    let mut measured = Vec::new();
    for (a, part) in parts.iter().enumerate() {
        let alpha = Parity::from_index(a as u8);
        let name = format!("part_{alpha}.bin");
        write_field(&out_dir.join(&name), part)?;
        sum = &sum + part;
        let scheme = decomposition_labels(alpha, beta);
        let label = part.type_tuple(tol);
        let ok = label.is_some_and(|l| l.consistent_with(&scheme));
        labels_ok &= ok;
        // Relative to the input: parts may vanish up to roundoff.
        let div = divergence(part).euclid_norm() / u.euclid_norm();
        max_div = max_div.max(div);
        measured.push(label.unwrap_or(scheme));
        rows.push(json!({
            "alpha": alpha.to_string(),
            "file": name,
            "scheme": scheme.to_string(),
            "measured": label.map(|l| l.to_string()),
            "rms": part.rms(),
            "divergenceResidual": div,
        }));
    }
    let recon = sum.rel_diff(&u);
    let matched = measured.iter().all(|a| measured.iter().all(|b| matched_check(a, b)));
    let mut checks = Checks::default();
    checks.add("reconstruction", recon <= 1e-13, format!("relative error {recon:.3e}"));
    checks.add("divergence", max_div <= 1e-11, format!("max part divergence {max_div:.3e}"));
    checks.add("labels", labels_ok, "every part carries its scheme label");
    checks.add("matched", matched, "all 64 part pairs matched");
    let report = Report {
        command: "decompose",
        config: json!({ "in": input.display().to_string(), "beta": beta.to_string() }),
        input_hash: hash.finish(),
        checks,
        result: json!({ "n": u.n(), "reconstructionError": recon, "parts": rows }),
    };
    report.write(Some(&out_dir.join("report.json")))?;
    Ok(report.checks.passed())
}

pub fn solve(input: &Path, config: Option<&PathBuf>, out_dir: &Path) -> Result<bool, CliError> {
    let mut hash = InputHash::default();
    hash.field_file(input)?;
    let cfg = load_config(config, &mut hash)?;
    let u0 = read_field(input)?;
    let result = picard_solve(&u0, &cfg)?;
    fs::create_dir_all(out_dir)?;
    let tol = MeasureTol::default();
    let traj = &result.trajectory;
    let mut files = Vec::new();
    for (j, state) in traj.states.iter().enumerate() {
        let name = format!("state_{j:04}.bin");
        write_field(&out_dir.join(&name), state)?;
        files.push(name);
    }
    let diagnostics: Vec<StateDiagnostics> = traj.diagnostics(tol);
    let max_div = diagnostics.iter().map(|d| d.divergence_residual).fold(0.0, f64::max);
    let e0 = diagnostics[0].energy;
    let energy_ok = diagnostics.iter().all(|d| d.energy <= e0 * (1.0 + 1e-6));
    let mut checks = Checks::default();
    checks.add(
        "converged",
        result.converged,
        format!("{} iterates, last difference {:.3e}", result.iterations(), result.history.last().map_or(0.0, |h| h.diff)),
    );
    checks.add("divergence", max_div <= 1e-10, format!("max divergence residual {max_div:.3e}"));
    checks.add("energy", energy_ok, "energy never exceeds its initial value");
    let report = Report {
        command: "solve",
        config: to_value(&cfg),
        input_hash: hash.finish(),
        checks,
        result: json!({
            "files": files,
            "diagnostics": diagnostics,
            "iterates": result.history,
            "contractionRatios": result.ratios(),
        }),
    };
    report.write(Some(&out_dir.join("report.json")))?;
    Ok(report.checks.passed())
}

pub fn rigidity(
    mode: Mode,
    n: usize,
    seeds: u64,
    t: f64,
    quad_points: usize,
    beltrami_tol: f64,
    out: Option<&PathBuf>,
) -> Result<bool, CliError> {
    if seeds == 0 || quad_points < 2 || !positive(t) || !positive(beltrami_tol) {
        return Err(usage("need seeds >= 1, quad-points >= 2, t > 0 and beltrami-tol > 0"));
    }
    let base = RigidityConfig { n, t, quad_points, dealias: Dealias::TwoThirds, beltrami_tol, seed: 0 };
    let mut reports = Vec::new();
    for seed in 0..seeds {
        let cfg = RigidityConfig { seed, ..base.clone() };
        reports.push(match mode {
            Mode::Real => rigidity_scan_real(&cfg)?,
            Mode::Complex => rigidity_scan_complex(&cfg)?,
        });
    }
    let expected: Vec<TypeTuple> = match mode {
        Mode::Real => vec![TypeTuple::diagonal()],
        Mode::Complex => {
            let mut v: Vec<TypeTuple> = Parity::all().map(|b| TypeTuple::canonical(Parity::EVEN, b)).collect();
            v.sort_by_key(|t| t.to_string());
            v
        }
    };
    let mut checks = Checks::default();
    let by_type_ok = reports.iter().all(|r| r.preserved_by_type == expected);
    let names = |v: &[TypeTuple]| v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("; ");
    checks.add(
        "preservedByType",
        by_type_ok,
        format!("seed 0 keeps {}", names(&reports[0].preserved_by_type)),
    );
    let stable = reports.windows(2).all(|w| w[0].preserved_kinds == w[1].preserved_kinds);
    checks.add("seedIndependent", stable, format!("{} seeds give identical preserved sets", seeds));
    let consistent = reports.iter().all(|r| r.all_consistent);
    checks.add("typeNumericConsistency", consistent, "measured B labels agree with predicted labels");
    let mode_name = match mode {
        Mode::Real => "real",
        Mode::Complex => "complex",
    };
    let config = json!({ "mode": mode_name, "n": n, "seeds": seeds, "t": t, "quadPoints": quad_points, "beltramiTol": beltrami_tol });
    let mut hash = InputHash::default();
    hash.json("config", &config)?;
    let report = Report {
        command: "rigidity",
        config,
        input_hash: hash.finish(),
        checks,
        result: json!({
            "preservedKinds": reports[0].preserved_kinds,
            "preservedByType": reports[0].preserved_by_type,
            "beltramiEscapes": reports[0].beltrami_escapes,
            "scans": reports,
        }),
    };
    report.write(out)?;
    Ok(report.checks.passed())
}

pub fn beltrami(
    n: usize,
    t: f64,
    shell: u32,
    seed: Option<u64>,
    amplitude: f64,
    tol: f64,
    out: Option<&PathBuf>,
) -> Result<bool, CliError> {
    if !positive(t) && t != 0.0 || !positive(tol) || !positive(amplitude) {
        return Err(usage("need t >= 0, tol > 0 and amplitude > 0"));
    }
    let profile = match seed {
        Some(s) => BeltramiProfile::random(shell, amplitude, s),
        None if shell == BeltramiProfile::default().shell => BeltramiProfile { amplitude, ..Default::default() },
        None => BeltramiProfile::random(shell, amplitude, 0),
    };
    let u = beltrami_field(&profile, n)?;
    let times = [0.0, t / 2.0, t];
    let residuals: Vec<f64> = times.iter().map(|&s| beltrami_residual(&u, s, Dealias::TwoThirds)).collect();
    let labels = u.type_tuple(MeasureTol::default());
    let expected = TypeTuple([
        SymLabel::real(Parity::unit(1)),
        SymLabel::real(Parity::unit(0)),
        SymLabel::ZERO,
    ]);
    let div = divergence_residual(&u);
    let mut checks = Checks::default();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    checks.add("residual", worst <= tol, format!("max residual {worst:.3e} over t = {times:?}"));
    checks.add("stable", residuals.iter().all(|&r| r <= residuals[0] + 1e-10), "residual does not grow under heat flow");
    checks.add("divergence", div <= 1e-12, format!("divergence residual {div:.3e}"));
    checks.add(
        "labels",
        labels == Some(expected),
        format!("measured {}", labels.map_or("none".to_string(), |l| l.to_string())),
    );
    let config = json!({ "n": n, "t": t, "profile": profile, "tol": tol });
    let mut hash = InputHash::default();
    hash.json("config", &config)?;
    let report = Report {
        command: "beltrami",
        config,
        input_hash: hash.finish(),
        checks,
        result: json!({
            "times": times,
            "residuals": residuals,
            "labels": labels,
            "divergenceResidual": div,
        }),
    };
    report.write(out)?;
    Ok(report.checks.passed())
}

pub fn example41(n: usize, seed: u64, out: Option<&PathBuf>) -> Result<bool, CliError> {
    let r = example41_report(n, seed)?;
    let mut checks = Checks::default();
    checks.add(
        "symmetric",
        r.u_labels.is_some() && r.v_labels.is_some(),
        format!(
            "u {} / v {}",
            r.u_labels.map_or("none".into(), |l| l.to_string()),
            r.v_labels.map_or("none".into(), |l| l.to_string())
        ),
    );
    let div = r.u_divergence.max(r.v_divergence);
    checks.add("solenoidal", div <= 1e-12, format!("max divergence residual {div:.3e}"));
    let unmatched = match (r.u_labels, r.v_labels) {
        (Some(a), Some(b)) => !matched_check(&a, &b),
        _ => false,
    };
    checks.add("unmatched", unmatched, "the pair fails the matched condition");
    checks.add(
        "asymmetric",
        r.c_asymmetric_components >= 1,
        format!("{} component(s) of C(u,v) without a parity label", r.c_asymmetric_components),
    );
    let config = json!({ "n": n, "seed": seed });
    let mut hash = InputHash::default();
    hash.json("config", &config)?;
    let report = Report { command: "example41", config, input_hash: hash.finish(), checks, result: to_value(&r) };
    report.write(out)?;
    Ok(report.checks.passed())
}

pub fn halfspace(input: &Path, extend: &str, config: Option<&PathBuf>, out: Option<&PathBuf>) -> Result<bool, CliError> {
    let kind: ExtensionKind = extend.parse()?;
    let mut hash = InputHash::default();
    hash.field_file(input)?;
    hash.bytes("extend", extend.as_bytes());
    let cfg = load_config(config, &mut hash)?;
    let h = read_half_field(input)?;
    if h.n() != cfg.n {
        return Err(usage(format!("half field has n = {} but config has n = {}", h.n(), cfg.n)));
    }
    let r = halfspace_run(&h, kind, &cfg)?;
    let mut checks = Checks::default();
    let max_imb = r.records.iter().map(|x| x.imbalance).fold(0.0, f64::max);
    match kind {
        ExtensionKind::Symmetric => {
            checks.add("splitEqual", r.verdicts.split_equal, format!("max imbalance {max_imb:.3e}"));
            checks.add(
                "symmetryKept",
                r.verdicts.symmetry_kept,
                "measured kind stays (100, 010, 001) at every recorded time",
            );
        }
        ExtensionKind::Zero => {
            let e = r.records.get(1).map_or(0.0, |x| x.outside_energy);
            checks.add("outsideEnergy", r.verdicts.outside_energy_positive, format!("outside energy {e:.3e} at t = dt"));
        }
        ExtensionKind::Antisymmetric => {
            checks.add(
                "symmetryLost",
                r.verdicts.symmetry_lost,
                format!(
                    "initial {} -> B label {}, max imbalance {max_imb:.3e}",
                    r.initial_labels.map_or("none".into(), |l| l.to_string()),
                    r.initial_b_label.map_or("unmatched".into(), |l| l.to_string())
                ),
            );
        }
    }
    checks.add("converged", r.picard_converged, format!("{} Picard iterates", r.picard_iterations));
    let report = Report {
        command: "halfspace",
        config: json!({ "extend": kind, "solver": cfg }),
        input_hash: hash.finish(),
        checks,
        result: to_value(&r),
    };
    report.write(out)?;
    Ok(report.checks.passed())
}

pub fn selftest(out: Option<&PathBuf>) -> Result<bool, CliError> {
    let suite = symtype_suite();
    let mut checks = Checks::default();
    for c in &suite {
        let detail = match &c.example {
            Some(e) => format!("{} cases, {} failures, e.g. {e}", c.cases, c.failures),
            None => format!("{} cases", c.cases),
        };
        checks.add(c.name, c.passed(), detail);
    }
    let real = census_real();
    let complex = census_complex();
    checks.add("real kinds", real.total == 30, format!("{}", real.total));
    checks.add("complex kinds", complex.total == 984, format!("{}", complex.total));
    let cases: Vec<String> = CaseTag::COMPLEX.iter().map(|c| c.to_string()).collect();
    let mut hash = InputHash::default();
    hash.bytes("selftest", b"symtype");
    let report = Report {
        command: "selftest",
        config: json!({}),
        input_hash: hash.finish(),
        result: json!({ "suite": suite, "complexCases": cases }),
        checks,
    };
    report.write(out)?;
    if out.is_none() {
        eprintln!("{}", if report.checks.passed() { "selftest passed" } else { "selftest FAILED" });
    }
    Ok(report.checks.passed())
}

pub fn witness(kind: &str, n: usize, seed: u64, amplitude: f64, half: bool, out: &Path) -> Result<bool, CliError> {
    if !positive(amplitude) {
        return Err(usage("amplitude must be positive"));
    }
    let u = if kind == "beltrami" {
        beltrami_field(&BeltramiProfile { amplitude, ..Default::default() }, n)?
    } else {
        let t: TypeTuple = kind.parse().map_err(|e| usage(format!("bad kind {kind:?}: {e:?}")))?;
        random_symmetric_solenoidal(&t, n, seed)?.scale(amplitude)
    };
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    if half {
        write_half_field(out, &restrict(&u))?;
    } else {
        write_field(out, &u)?;
    }
    let labels = u.type_tuple(MeasureTol::default());
    println!("{} n={} rms={:.6e} labels={}", out.display(), n, u.rms(), labels.map_or("none".into(), |l| l.to_string()));
    Ok(true)
}
