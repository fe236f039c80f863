//! Pseudo-spectral Navier–Stokes operators in integral (mild) form:
//!
//! ```text
//! A(u,v) = u . grad v
//! G(u,v) = sum_{l,l'} d_l d_l' (u_l v_l')
//! C(u,v) = P div(u (x) v) = A(u,v) + (-Lap)^{-1} grad G(u,v)
//! B(u,v)(t) = int_0^t e^{(t-s)Lap} C(u(s), v(s)) ds
//! u^{k+1}(t) = e^{t Lap} u0 - B(u^k, u^k)(t)
//! ```
//!
//! Viscosity is one; time is measured in the same units.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{
    check_grid_size, divergence_residual, energy, Grid3, MeasureTol, ParityMeasurement, VectorField,
};
use crate::spectral::{self, Dealias};
use crate::symtype::TypeTuple;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum QuadRule {
    #[default]
    Trapezoid,
    Midpoint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct SolverConfig {
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub quad_rule: QuadRule,
    pub quad_points: usize,
    pub dealias: Dealias,
    pub picard_iters: usize,
    pub tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            n: 16,
            dt: 0.01,
            t_end: 0.1,
            quad_rule: QuadRule::Trapezoid,
            quad_points: 33,
            dealias: Dealias::TwoThirds,
            picard_iters: 30,
            tol: 1e-12,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        check_grid_size(self.n).map_err(|e| Error::Config(e.to_string()))?;
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(self.t_end >= self.dt && self.t_end.is_finite()) {
            return bad("tEnd must be at least dt");
        }
        if self.quad_points < 2 {
            return bad("quadPoints must be at least 2");
        }
        if self.picard_iters < 1 {
            return bad("picardIters must be at least 1");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol must be positive");
        }
        Ok(())
    }

    /// Recorded times `0, dt, 2 dt, ...` up to `tEnd` (rounded to the nearest step).
    pub fn times(&self) -> Vec<f64> {
        let steps = (self.t_end / self.dt).round().max(1.0) as usize;
        (0..=steps).map(|j| j as f64 * self.dt).collect()
    }
}

fn spectra(u: &VectorField) -> [Vec<Complex64>; 3] {
    std::array::from_fn(|l| u.comp(l).spectrum())
}

fn from_spectra(n: usize, s: [Vec<Complex64>; 3]) -> VectorField {
    let [a, b, c] = s.map(|s| Grid3::from_spectrum(n, s));
    VectorField::new(a, b, c).expect("components share a grid")
}

fn same_grid(u: &VectorField, v: &VectorField) {
    assert_eq!(u.n(), v.n(), "fields live on different grids");
}

/// `e^{t Lap} u0`.
pub fn heat(u0: &VectorField, t: f64) -> VectorField {
    assert!(t >= 0.0, "heat flow needs t >= 0");
    if t == 0.0 {
        return u0.clone();
    }
    let n = u0.n();
    let mut s = spectra(u0);
    spectral::for_each_mode(n, |i, j| {
        let decay = (-t * spectral::full_k2(n, j)).exp();
        for c in s.iter_mut() {
            c[i] *= decay;
        }
    });
    from_spectra(n, s)
}

fn leray_spectra(n: usize, s: &mut [Vec<Complex64>; 3]) {
    spectral::for_each_mode(n, |i, j| {
        let k2 = spectral::odd_k2(n, j);
        if k2 == 0.0 {
            return;
        }
        let k = j.map(|ji| spectral::odd_wavenumber(ji, n));
        let dot: Complex64 = (0..3).map(|l| s[l][i] * k[l]).sum();
        for l in 0..3 {
            s[l][i] -= dot * (k[l] / k2);
        }
    });
}

/// Leray projection onto divergence-free fields; the mean passes through.
pub fn leray(v: &VectorField) -> VectorField {
    let n = v.n();
    let mut s = spectra(v);
    leray_spectra(n, &mut s);
    from_spectra(n, s)
}

fn dealiased(u: &VectorField, dealias: Dealias) -> [Vec<Complex64>; 3] {
    let n = u.n();
    let mut s = spectra(u);
    for c in s.iter_mut() {
        spectral::apply_dealias(c, n, dealias);
    }
    s
}

fn to_physical(n: usize, spec: &[Complex64], idx: [u32; 3]) -> Vec<Complex64> {
    let mut out = spec.to_vec();
    if idx != [0; 3] {
        spectral::for_each_mode(n, |i, j| out[i] *= spectral::derivative_symbol(idx, n, j));
    }
    Grid3::from_spectrum(n, out).into_data()
}

fn unit_index(l: usize) -> [u32; 3] {
    let mut idx = [0; 3];
    idx[l] = 1;
    idx
}

fn a_spectra(u: &VectorField, v: &VectorField, dealias: Dealias) -> [Vec<Complex64>; 3] {
    same_grid(u, v);
    let n = u.n();
    let su = dealiased(u, dealias);
    let sv = dealiased(v, dealias);
    let pu: Vec<Vec<Complex64>> = su.iter().map(|s| to_physical(n, s, [0; 3])).collect();
    std::array::from_fn(|l| {
        let mut acc = vec![Complex64::default(); n * n * n];
        for (j, uj) in pu.iter().enumerate() {
            let dv = to_physical(n, &sv[l], unit_index(j));
            for ((a, &x), &y) in acc.iter_mut().zip(uj.iter()).zip(dv.iter()) {
                *a += x * y;
            }
        }
        let mut s = Grid3::from_data(n, acc).expect("grid").spectrum();
        spectral::apply_dealias(&mut s, n, dealias);
        s
    })
}

/// `A(u,v)_l = sum_j u_j d_j v_l`, products in physical space.
pub fn advect_a(u: &VectorField, v: &VectorField, dealias: Dealias) -> VectorField {
    from_spectra(u.n(), a_spectra(u, v, dealias))
}

fn g_spectrum(u: &VectorField, v: &VectorField, dealias: Dealias) -> Vec<Complex64> {
    same_grid(u, v);
    let n = u.n();
    let su = dealiased(u, dealias);
    let sv = dealiased(v, dealias);
    let pu: Vec<Vec<Complex64>> = su.iter().map(|s| to_physical(n, s, [0; 3])).collect();
    let pv: Vec<Vec<Complex64>> = sv.iter().map(|s| to_physical(n, s, [0; 3])).collect();
    let mut acc = vec![Complex64::default(); n * n * n];
    for (l, ul) in pu.iter().enumerate() {
        for (m, vm) in pv.iter().enumerate() {
            let prod: Vec<Complex64> = ul.iter().zip(vm.iter()).map(|(a, b)| a * b).collect();
            let mut s = Grid3::from_data(n, prod).expect("grid").spectrum();
            spectral::apply_dealias(&mut s, n, dealias);
            let mut idx = unit_index(l);
            idx[m] += 1;
            spectral::for_each_mode(n, |i, j| acc[i] += s[i] * spectral::derivative_symbol(idx, n, j));
        }
    }
    acc
}

/// `G(u,v) = sum_{l,l'} d_l d_l' (u_l v_l')`.
pub fn g_op(u: &VectorField, v: &VectorField, dealias: Dealias) -> Grid3 {
    Grid3::from_spectrum(u.n(), g_spectrum(u, v, dealias))
}

/// `C(u,v) = A(u,v) + (-Lap)^{-1} grad G(u,v)`, with the zero mode of the
/// inverse Laplacian set to zero.
pub fn c_op(u: &VectorField, v: &VectorField, dealias: Dealias) -> VectorField {
    let n = u.n();
    let mut a = a_spectra(u, v, dealias);
    let g = g_spectrum(u, v, dealias);
    spectral::for_each_mode(n, |i, j| {
        let k2 = spectral::odd_k2(n, j);
        if k2 == 0.0 {
            return;
        }
        for (l, al) in a.iter_mut().enumerate() {
            al[i] += spectral::derivative_symbol(unit_index(l), n, j) * g[i] / k2;
        }
    });
    from_spectra(n, a)
}

/// The same operator computed as `leray(A(u,v))`.
pub fn c_op_leray(u: &VectorField, v: &VectorField, dealias: Dealias) -> VectorField {
    let n = u.n();
    let mut a = a_spectra(u, v, dealias);
    leray_spectra(n, &mut a);
    from_spectra(n, a)
}

/// A time-dependent field that can be sampled on `[0, covered()]`.
pub trait FieldHistory: Sync {
    fn covered(&self) -> f64;
    fn state_at(&self, s: f64) -> Result<VectorField>;
}

/// `s -> e^{s Lap} u0`, defined for all `s >= 0`.
pub struct HeatFlow<'a>(pub &'a VectorField);

impl FieldHistory for HeatFlow<'_> {
    fn covered(&self) -> f64 {
        f64::INFINITY
    }

    fn state_at(&self, s: f64) -> Result<VectorField> {
        Ok(heat(self.0, s))
    }
}

/// Per-time diagnostics of a recorded state.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StateDiagnostics {
    pub t: f64,
    pub energy: f64,
    pub divergence_residual: f64,
    pub labels: Option<TypeTuple>,
    pub components: [ParityMeasurement; 3],
}

impl StateDiagnostics {
    pub fn of(t: f64, u: &VectorField, tol: MeasureTol) -> StateDiagnostics {
        let components = u.measure(tol);
        let labels = match components.map(|m| m.label) {
            [Some(a), Some(b), Some(c)] => Some(TypeTuple([a, b, c])),
            _ => None,
        };
        StateDiagnostics { t, energy: energy(u), divergence_residual: divergence_residual(u), labels, components }
    }
}

/// States at increasing times starting at zero. Between recorded times the
/// history is the cubic Lagrange interpolant through the four nearest states.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<VectorField>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<VectorField>) -> Result<Trajectory> {
        if times.len() != states.len() || times.is_empty() {
            return Err(Error::Config("trajectory needs one state per time".into()));
        }
        if times[0] != 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("trajectory times must increase from 0".into()));
        }
        Ok(Trajectory { times, states })
    }

    pub fn diagnostics(&self, tol: MeasureTol) -> Vec<StateDiagnostics> {
        self.times.iter().zip(&self.states).map(|(&t, u)| StateDiagnostics::of(t, u, tol)).collect()
    }

    pub fn last(&self) -> &VectorField {
        self.states.last().expect("nonempty trajectory")
    }
}

const COVERAGE_SLACK: f64 = 1e-12;

impl FieldHistory for Trajectory {
    fn covered(&self) -> f64 {
        *self.times.last().expect("nonempty trajectory")
    }

    fn state_at(&self, s: f64) -> Result<VectorField> {
        let covered = self.covered();
        if !(0.0..=covered + COVERAGE_SLACK).contains(&s) {
            return Err(Error::InsufficientCoverage { covered, requested: s });
        }
        if let Some(i) = self.times.iter().position(|&t| (t - s).abs() <= COVERAGE_SLACK) {
            return Ok(self.states[i].clone());
        }
        let len = self.times.len();
        let width = len.min(4);
        let right = self.times.partition_point(|&t| t < s);
        let start = right.saturating_sub(2).min(len - width);
        let nodes = start..start + width;
        let mut acc: Option<VectorField> = None;
        for i in nodes.clone() {
            let w: f64 = nodes
                .clone()
                .filter(|&m| m != i)
                .map(|m| (s - self.times[m]) / (self.times[i] - self.times[m]))
                .product();
            let term = self.states[i].scale(w);
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        Ok(acc.expect("at least one node"))
    }
}

/// Quadrature nodes and weights on `[0, t]`.
pub fn quadrature(rule: QuadRule, points: usize, t: f64) -> Vec<(f64, f64)> {
    match rule {
        QuadRule::Trapezoid => {
            let h = t / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    let w = if i == 0 || i == points - 1 { h / 2.0 } else { h };
                    (i as f64 * h, w)
                })
                .collect()
        }
        QuadRule::Midpoint => {
            let h = t / points as f64;
            (0..points).map(|i| ((i as f64 + 0.5) * h, h)).collect()
        }
    }
}

/// `B(u,v)(t)` by the configured quadrature. Integrand evaluations run in
/// parallel; their sum is taken in node order.
pub fn duhamel_b(u: &dyn FieldHistory, v: &dyn FieldHistory, t: f64, cfg: &SolverConfig) -> Result<VectorField> {
    for h in [u, v] {
        if h.covered() + COVERAGE_SLACK < t {
            return Err(Error::InsufficientCoverage { covered: h.covered(), requested: t });
        }
    }
    let n = u.state_at(0.0)?.n();
    if t == 0.0 {
        return VectorField::zeros(n);
    }
    let nodes = quadrature(cfg.quad_rule, cfg.quad_points, t);
    let terms: Vec<VectorField> = nodes
        .par_iter()
        .map(|&(s, w)| -> Result<VectorField> {
            let c = c_op(&u.state_at(s)?, &v.state_at(s)?, cfg.dealias);
            Ok(heat(&c, (t - s).max(0.0)).scale(w))
        })
        .collect::<Result<_>>()?;
    let mut acc = VectorField::zeros(n)?;
    for term in &terms {
        acc = &acc + term;
    }
    Ok(acc)
}

/// Successive differences below this are treated as converged noise when
/// watching for growth.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Consecutive non-contracting steps that abort the iteration.
pub const NO_CONTRACTION_STREAK: usize = 3;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IterateRecord {
    pub iterate: usize,
    /// Sup over recorded times of `|u^{k+1} - u^k| / |u^k|`.
    pub diff: f64,
    /// `diff_k / diff_{k-1}`.
    pub ratio: Option<f64>,
    pub labels: Vec<Option<TypeTuple>>,
    pub max_divergence_residual: f64,
}

#[derive(Clone, Debug)]
pub struct PicardResult {
    pub trajectory: Trajectory,
    pub history: Vec<IterateRecord>,
    pub converged: bool,
}

impl PicardResult {
    pub fn ratios(&self) -> Vec<f64> {
        self.history.iter().filter_map(|r| r.ratio).collect()
    }

    pub fn iterations(&self) -> usize {
        self.history.len()
    }
}

fn sup_rel_diff(a: &[VectorField], b: &[VectorField]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).euclid_norm();
            let base = y.euclid_norm();
            if base > 0.0 {
                d / base
            } else {
                d
            }
        })
        .fold(0.0, f64::max)
}

/// Picard iteration on the recorded times of `cfg`, starting from the heat flow.
pub fn picard_solve(u0: &VectorField, cfg: &SolverConfig) -> Result<PicardResult> {
    cfg.validate()?;
    if u0.n() != cfg.n {
        return Err(Error::Config(format!("field has n = {} but config has n = {}", u0.n(), cfg.n)));
    }
    let residual = divergence_residual(u0);
    if residual > 1e-8 {
        return Err(Error::NotSolenoidal { residual });
    }
    let tol = MeasureTol::default();
    let times = cfg.times();
    let free: Vec<VectorField> = times.iter().map(|&t| heat(u0, t)).collect();
    let mut current = Trajectory::new(times.clone(), free.clone())?;
    let mut history = Vec::new();
    let mut prev_diff: Option<f64> = None;
    let mut streak = 0;
    let mut ratios = Vec::new();
    for iterate in 1..=cfg.picard_iters {
        let next: Vec<VectorField> = times
            .iter()
            .zip(&free)
            .map(|(&t, f)| Ok(f - &duhamel_b(&current, &current, t, cfg)?))
            .collect::<Result<_>>()?;
        let diff = sup_rel_diff(&next, &current.states);
        let ratio = prev_diff.filter(|&p| p > 0.0).map(|p| diff / p);
        if let Some(r) = ratio {
            ratios.push(r);
            if r >= 1.0 && prev_diff.is_some_and(|p| p > NOISE_FLOOR) {
                streak += 1;
            } else {
                streak = 0;
            }
        }
        let labels = next.iter().map(|u| u.type_tuple(tol)).collect();
        let max_div = next.iter().map(divergence_residual).fold(0.0, f64::max);
        history.push(IterateRecord { iterate, diff, ratio, labels, max_divergence_residual: max_div });
        current = Trajectory::new(times.clone(), next)?;
        if diff <= cfg.tol {
            return Ok(PicardResult { trajectory: current, history, converged: true });
        }
        if streak >= NO_CONTRACTION_STREAK {
            return Err(Error::NoContraction { ratios });
        }
        prev_diff = Some(diff);
    }
    Ok(PicardResult { trajectory: current, history, converged: false })
}

/// Observed order of a rule from three nested refinements `q, 2q-1, 4q-3`
/// (trapezoid) or `q, 2q, 4q` (midpoint).
pub fn quadrature_order(
    u: &dyn FieldHistory,
    v: &dyn FieldHistory,
    t: f64,
    cfg: &SolverConfig,
    q: usize,
) -> Result<f64> {
    let refine = |q: usize| match cfg.quad_rule {
        QuadRule::Trapezoid => 2 * q - 1,
        QuadRule::Midpoint => 2 * q,
    };
    let q1 = refine(q);
    let q2 = refine(q1);
    let eval = |points| duhamel_b(u, v, t, &SolverConfig { quad_points: points, ..cfg.clone() });
    let (b0, b1, b2) = (eval(q)?, eval(q1)?, eval(q2)?);
    let e0 = (&b0 - &b1).euclid_norm();
    let e1 = (&b1 - &b2).euclid_norm();
    Ok((e0 / e1).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{divergence, random_symmetric_solenoidal};

    const N: usize = 16;

    fn sin_x1() -> VectorField {
        VectorField::new(
            Grid3::from_real_fn(N, |x| x[0].sin()).unwrap(),
            Grid3::zeros(N).unwrap(),
            Grid3::zeros(N).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn heat_examples() {
        let u = sin_x1();
        assert_eq!(heat(&u, 0.0), u);
        let h = heat(&u, 0.3);
        assert!(h.rel_diff(&u.scale((-0.3f64).exp())) < 1e-14);
        let w = random_symmetric_solenoidal(&TypeTuple::diagonal(), N, 2).unwrap();
        let energies: Vec<f64> = [0.0, 0.01, 0.1, 1.0].iter().map(|&t| energy(&heat(&w, t))).collect();
        assert!(energies.windows(2).all(|e| e[1] <= e[0]));
    }

    #[test]
    fn leray_examples() {
        let w = random_symmetric_solenoidal(&TypeTuple::diagonal(), N, 4).unwrap();
        assert!(leray(&w).rel_diff(&w) < 1e-12);
        // grad of phi = sin x1 cos 2x2 + cos 3x3
        let grad = VectorField::new(
            Grid3::from_real_fn(N, |x| x[0].cos() * (2.0 * x[1]).cos()).unwrap(),
            Grid3::from_real_fn(N, |x| -2.0 * x[0].sin() * (2.0 * x[1]).sin()).unwrap(),
            Grid3::from_real_fn(N, |x| -3.0 * (3.0 * x[2]).sin()).unwrap(),
        )
        .unwrap();
        assert!(leray(&grad).max_abs() < 1e-13);
        assert!(sin_x1().rel_diff(&leray(&sin_x1())) > 0.5);
    }

    #[test]
    fn advect_examples() {
        let one = Grid3::constant(N, Complex64::new(1.0, 0.0)).unwrap();
        let u = VectorField::new(one, Grid3::zeros(N).unwrap(), Grid3::zeros(N).unwrap()).unwrap();
        let a = advect_a(&u, &sin_x1(), Dealias::TwoThirds);
        let cos = Grid3::from_real_fn(N, |x| x[0].cos()).unwrap();
        assert!((a.comp(0) - &cos).max_abs() < 1e-13);
        assert!(a.comp(1).max_abs() < 1e-13 && a.comp(2).max_abs() < 1e-13);
        assert!(advect_a(&sin_x1(), &u, Dealias::TwoThirds).max_abs() < 1e-13);
    }

    #[test]
    fn g_is_divergence_of_a() {
        let u = random_symmetric_solenoidal(&TypeTuple::diagonal(), N, 5).unwrap();
        let g = g_op(&u, &u, Dealias::TwoThirds);
        let div_a = divergence(&advect_a(&u, &u, Dealias::TwoThirds));
        assert!((&g - &div_a).euclid_norm() <= 1e-10 * g.euclid_norm());
    }

    #[test]
    fn c_paths_agree() {
        let t: TypeTuple = "(100+i011, 010+i101, 001+i110)".parse().unwrap();
        let u = random_symmetric_solenoidal(&t, N, 6).unwrap();
        let v = random_symmetric_solenoidal(&TypeTuple::diagonal(), N, 7).unwrap();
        let c1 = c_op(&u, &v, Dealias::TwoThirds);
        let c2 = c_op_leray(&u, &v, Dealias::TwoThirds);
        assert!(c1.rel_diff(&c2) <= 1e-10);
        assert!(c_op(&u, &VectorField::zeros(N).unwrap(), Dealias::TwoThirds).max_abs() == 0.0);
    }

    #[test]
    fn duhamel_at_zero_is_zero() {
        let u = random_symmetric_solenoidal(&TypeTuple::diagonal(), N, 1).unwrap();
        let b = duhamel_b(&HeatFlow(&u), &HeatFlow(&u), 0.0, &SolverConfig::default()).unwrap();
        assert_eq!(b.max_abs(), 0.0);
    }

    #[test]
    fn trajectory_coverage_is_checked() {
        let u = sin_x1();
        let traj = Trajectory::new(vec![0.0, 0.01], vec![u.clone(), heat(&u, 0.01)]).unwrap();
        let err = duhamel_b(&traj, &traj, 0.05, &SolverConfig::default()).unwrap_err();
        assert!(matches!(err, Error::InsufficientCoverage { .. }));
    }

    #[test]
    fn trajectory_interpolation_is_exact_at_nodes_and_cubic_between() {
        let u = sin_x1();
        let times: Vec<f64> = (0..6).map(|j| j as f64 * 0.1).collect();
        // u(t) = (1 + t^3) sin x1 is reproduced exactly by cubic interpolation.
        let states = times.iter().map(|&t| u.scale(1.0 + t * t * t)).collect();
        let traj = Trajectory::new(times, states).unwrap();
        assert_eq!(traj.state_at(0.2).unwrap(), u.scale(1.008));
        let mid = traj.state_at(0.37).unwrap();
        assert!(mid.rel_diff(&u.scale(1.0 + 0.37f64.powi(3))) < 1e-13);
    }

    #[test]
    fn picard_zero_data() {
        let cfg = SolverConfig { picard_iters: 3, ..Default::default() };
        let r = picard_solve(&VectorField::zeros(N).unwrap(), &cfg).unwrap();
        assert!(r.converged);
        assert!(r.trajectory.states.iter().all(|s| s.max_abs() == 0.0));
    }

    #[test]
    fn config_validation() {
        let ok = SolverConfig::default();
        assert!(ok.validate().is_ok());
        assert!(SolverConfig { dt: 0.0, ..ok.clone() }.validate().is_err());
        assert!(SolverConfig { t_end: 0.001, ..ok.clone() }.validate().is_err());
        assert!(SolverConfig { quad_points: 1, ..ok.clone() }.validate().is_err());
        assert!(SolverConfig { n: 10, ..ok.clone() }.validate().is_ok());
        assert!(SolverConfig { n: 7, ..ok }.validate().is_err());
        let parsed: SolverConfig = serde_json::from_str(r#"{"n": 8, "quadRule": "midpoint"}"#).unwrap();
        assert_eq!(parsed.quad_rule, QuadRule::Midpoint);
        assert_eq!(parsed.quad_points, 33);
        assert!(serde_json::from_str::<SolverConfig>(r#"{"nn": 8}"#).is_err());
        assert_eq!(SolverConfig::default().times().len(), 11);
    }
}
