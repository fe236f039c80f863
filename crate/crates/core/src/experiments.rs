//! Drivers for the named constructions: the Beltrami surrogate, the
//! unmatched pair whose bilinear term loses symmetry, and the rigidity scans
//! over every real kind and every complex kind without constant parts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{census_real, generate_case, CaseTag};
use crate::error::{Error, Result};
use crate::field::{check_grid_size, random_symmetric_solenoidal, Grid3, MeasureTol, VectorField};
use crate::nsops::{c_op, duhamel_b, heat, HeatFlow, SolverConfig};
use crate::spectral::Dealias;
use crate::symtype::{bilinear_b_label, TypeTuple};

/// Stream function `psi = sum c_k cos(k1 x1) cos(k2 x2)` over the lattice
/// points of one circle `k1^2 + k2^2 = shell`, `k1, k2 >= 0`. Every such
/// `psi` is a Laplacian eigenfunction, so the planar flow
/// `(d2 psi, -d1 psi, 0)` is a steady Euler flow and its nonlinear term is a
/// pure gradient.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BeltramiProfile {
    pub shell: u32,
    /// One coefficient per lattice point of the shell, in [`shell_points`] order.
    pub coeffs: Vec<f64>,
    /// RMS of the resulting velocity.
    pub amplitude: f64,
}

/// Lattice points `(k1, k2)` with `k1, k2 >= 0` and `k1^2 + k2^2 = shell`.
pub fn shell_points(shell: u32) -> Vec<(u32, u32)> {
    let mut pts = Vec::new();
    let mut k1 = 0;
    while k1 * k1 <= shell {
        let rest = shell - k1 * k1;
        let k2 = (rest as f64).sqrt().round() as u32;
        if k2 * k2 == rest {
            pts.push((k1, k2));
        }
        k1 += 1;
    }
    pts
}

impl BeltramiProfile {
    /// Random coefficients in `[0.5, 1.5]` on the given shell.
    pub fn random(shell: u32, amplitude: f64, seed: u64) -> BeltramiProfile {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = shell_points(shell).iter().map(|_| rng.gen_range(0.5..1.5)).collect();
        BeltramiProfile { shell, coeffs, amplitude }
    }
}

impl Default for BeltramiProfile {
    fn default() -> Self {
        BeltramiProfile { shell: 5, coeffs: vec![1.0, 0.5], amplitude: 1.0 }
    }
}

pub fn beltrami_field(p: &BeltramiProfile, n: usize) -> Result<VectorField> {
    check_grid_size(n)?;
    let pts = shell_points(p.shell);
    if pts.is_empty() || pts.len() != p.coeffs.len() {
        return Err(Error::Config(format!(
            "shell {} has {} lattice points but {} coefficients were given",
            p.shell,
            pts.len(),
            p.coeffs.len()
        )));
    }
    if pts.iter().any(|&(a, b)| 3 * a.max(b) as usize >= n) {
        return Err(Error::Config(format!("shell {} is not resolved at n = {n}", p.shell)));
    }
    // d2 psi and -d1 psi in closed form.
    let u1 = Grid3::from_real_fn(n, |x| {
        pts.iter()
            .zip(&p.coeffs)
            .map(|(&(a, b), c)| -c * b as f64 * (a as f64 * x[0]).cos() * (b as f64 * x[1]).sin())
            .sum()
    })?;
    let u2 = Grid3::from_real_fn(n, |x| {
        pts.iter()
            .zip(&p.coeffs)
            .map(|(&(a, b), c)| c * a as f64 * (a as f64 * x[0]).sin() * (b as f64 * x[1]).cos())
            .sum()
    })?;
    let u = VectorField::new(u1, u2, Grid3::zeros(n)?)?;
    let rms = u.rms();
    if rms == 0.0 {
        return Err(Error::Config("stream function has no velocity".into()));
    }
    Ok(u.scale(p.amplitude / rms))
}

/// `|C(e^{t Lap} u, e^{t Lap} u)| / |u|^2` in RMS norms.
pub fn beltrami_residual(u: &VectorField, t: f64, dealias: Dealias) -> f64 {
    let h = heat(u, t);
    c_op(&h, &h, dealias).rms() / u.rms().powi(2)
}

/// Random even cosine series `sum c_k cos(k1 x1) cos(k2 x2) cos(k3 x3)`, `0 <= k_i <= band`.
fn even_profile(n: usize, band: u32, rng: &mut ChaCha8Rng) -> Result<Grid3> {
    let mut terms = Vec::new();
    for k1 in 0..=band {
        for k2 in 0..=band {
            for k3 in 0..=band {
                terms.push(([k1 as f64, k2 as f64, k3 as f64], rng.gen_range(-1.0..1.0)));
            }
        }
    }
    Grid3::from_real_fn(n, |x| {
        terms.iter().map(|(k, c)| c * (k[0] * x[0]).cos() * (k[1] * x[1]).cos() * (k[2] * x[2]).cos()).sum()
    })
}

/// `(d1 d3 rho, d2 d3 rho, -(d1^2 + d2^2) rho)`.
fn poloidal(rho: &Grid3) -> Result<VectorField> {
    let lap_h = &rho.derivative([2, 0, 0]) + &rho.derivative([0, 2, 0]);
    VectorField::new(rho.derivative([1, 0, 1]), rho.derivative([0, 1, 1]), &lap_h * -1.0)
}

/// Profile band of the unmatched pair.
pub const EXAMPLE41_BAND: u32 = 3;

/// `u = w(rho) + i w(rho~)` and `v = d3 w(rho) + i w(rho~)`, with `w` the
/// poloidal field above and `rho`, `rho~` random even profiles. Both are
/// symmetric and solenoidal, but the pair is not matched.
pub fn example41_pair(n: usize, seed: u64) -> Result<(VectorField, VectorField)> {
    check_grid_size(n)?;
    let band = EXAMPLE41_BAND.min((n / 4) as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = even_profile(n, band, &mut rng)?;
    let rho_t = even_profile(n, band, &mut rng)?;
    let w_re = poloidal(&rho)?;
    let w_im = poloidal(&rho_t)?;
    let u = VectorField::from_parts(&w_re, &w_im);
    let v = VectorField::from_parts(&w_re.map_components(|g| g.derivative([0, 0, 1])), &w_im);
    let scale = 1.0 / u.rms();
    Ok((u.scale(scale), v.scale(1.0 / v.rms())))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RigidityConfig {
    pub n: usize,
    pub seed: u64,
    /// Time at which `B(u,u)` is evaluated.
    pub t: f64,
    pub quad_points: usize,
    pub dealias: Dealias,
    pub beltrami_tol: f64,
}

impl Default for RigidityConfig {
    fn default() -> Self {
        RigidityConfig { n: 16, seed: 0, t: 0.1, quad_points: 9, dealias: Dealias::TwoThirds, beltrami_tol: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KindOutcome {
    pub kind: TypeTuple,
    /// Predicted label of `B(u,u)`; `None` when the pair is unmatched.
    pub b_label: Option<TypeTuple>,
    pub b_label_unmatched: bool,
    /// Measured label of the numeric `B(u,u)`.
    pub measured_b_label: Option<TypeTuple>,
    /// Measured label is consistent with the predicted one.
    pub consistent: bool,
    /// `|B(u,u)(t)| / |u|^2` in RMS norms.
    pub b_norm_rel: f64,
    pub preserved_by_type: bool,
    pub beltrami_escape: bool,
    pub preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RigidityReport {
    pub config: RigidityConfig,
    pub per_kind: Vec<KindOutcome>,
    pub preserved_kinds: Vec<TypeTuple>,
    /// Preserved kinds, not counting those preserved only because `B` vanishes.
    pub preserved_by_type: Vec<TypeTuple>,
    pub beltrami_escapes: Vec<TypeTuple>,
    pub all_consistent: bool,
}

fn scan_kind(kind: TypeTuple, index: usize, cfg: &RigidityConfig) -> Result<KindOutcome> {
    let b_label = bilinear_b_label(&kind, &kind).ok();
    let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64);
    let u = random_symmetric_solenoidal(&kind, cfg.n, seed)?;
    let solver = SolverConfig {
        n: cfg.n,
        quad_points: cfg.quad_points,
        dealias: cfg.dealias,
        ..SolverConfig::default()
    };
    let b = duhamel_b(&HeatFlow(&u), &HeatFlow(&u), cfg.t, &solver)?;
    let b_norm_rel = b.rms() / u.rms().powi(2);
    let measured_b_label = b.type_tuple(MeasureTol::default());
    let consistent = match (b_label, measured_b_label) {
        (Some(pred), Some(meas)) => meas.consistent_with(&pred),
        (Some(_), None) => false,
        (None, _) => true,
    };
    let preserved_by_type = b_label.is_some_and(|l| l.consistent_with(&kind) && kind.consistent_with(&l));
    let beltrami_escape = !preserved_by_type && b_norm_rel <= cfg.beltrami_tol;
    Ok(KindOutcome {
        kind,
        b_label,
        b_label_unmatched: b_label.is_none(),
        measured_b_label,
        consistent,
        b_norm_rel,
        preserved_by_type,
        beltrami_escape,
        preserved: preserved_by_type || beltrami_escape,
    })
}

/// Scans `kinds` in parallel; the report is ordered by the kinds' display strings.
pub fn rigidity_scan(kinds: &[TypeTuple], cfg: &RigidityConfig) -> Result<RigidityReport> {
    let mut per_kind: Vec<KindOutcome> = kinds
        .par_iter()
        .enumerate()
        .map(|(i, &k)| scan_kind(k, i, cfg))
        .collect::<Result<_>>()?;
    per_kind.sort_by_key(|o| o.kind.to_string());
    let pick = |f: fn(&KindOutcome) -> bool| per_kind.iter().filter(|o| f(o)).map(|o| o.kind).collect::<Vec<_>>();
    Ok(RigidityReport {
        config: cfg.clone(),
        preserved_kinds: pick(|o| o.preserved),
        preserved_by_type: pick(|o| o.preserved_by_type),
        beltrami_escapes: pick(|o| o.beltrami_escape),
        all_consistent: per_kind.iter().all(|o| o.consistent),
        per_kind,
    })
}

/// All 30 real kinds.
pub fn rigidity_scan_real(cfg: &RigidityConfig) -> Result<RigidityReport> {
    let kinds: Vec<TypeTuple> = census_real().tuples.into_iter().collect();
    rigidity_scan(&kinds, cfg)
}

/// The 64 complex kinds without constant parts.
pub fn rigidity_scan_complex(cfg: &RigidityConfig) -> Result<RigidityReport> {
    let kinds: Vec<TypeTuple> = generate_case(CaseTag::C0).into_iter().map(|g| g.tuple).collect();
    rigidity_scan(&kinds, cfg)
}

/// `C(u,v)` of the unmatched pair together with measurements.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Example41Report {
    pub n: usize,
    pub seed: u64,
    pub u_labels: Option<TypeTuple>,
    pub v_labels: Option<TypeTuple>,
    pub u_divergence: f64,
    pub v_divergence: f64,
    pub c_labels: [Option<String>; 3],
    pub c_asymmetric_components: usize,
}

pub fn example41_report(n: usize, seed: u64) -> Result<Example41Report> {
    let tol = MeasureTol::default();
    let (u, v) = example41_pair(n, seed)?;
    let c = c_op(&u, &v, Dealias::TwoThirds);
    let m = c.measure(tol);
    Ok(Example41Report {
        n,
        seed,
        u_labels: u.type_tuple(tol),
        v_labels: v.type_tuple(tol),
        u_divergence: crate::field::divergence_residual(&u),
        v_divergence: crate::field::divergence_residual(&v),
        c_labels: m.map(|x| x.label.map(|l| l.to_string())),
        c_asymmetric_components: m.iter().filter(|x| x.label.is_none()).count(),
    })
}

/// A constant real field.
pub fn constant_field(n: usize, c: [f64; 3]) -> Result<VectorField> {
    VectorField::new(
        Grid3::constant(n, Complex64::new(c[0], 0.0))?,
        Grid3::constant(n, Complex64::new(c[1], 0.0))?,
        Grid3::constant(n, Complex64::new(c[2], 0.0))?,
    )
}
