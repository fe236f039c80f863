//! Half-space data on the lower half `x3 in (0, pi)` of the torus and its
//! three extensions across the reflection planes `x3 = 0` and `x3 = pi`.
//!
//! The half-space reflection `x3 -> -x3` is the torus map `j3 -> n - j3`.
//! Odd components of an extension vanish on the planes; even components get
//! plane values that keep the extension band-limited (see [`even_plane_values`]).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{check_grid_size, energy_split, EnergySplit, Grid3, MeasureTol, VectorField};
use crate::nsops::{leray, picard_solve, SolverConfig};
use crate::spectral::{self, Fft3};
use crate::symtype::{bilinear_b_label, TypeTuple};

/// Samples of a vector field on the planes `j3 = 1 .. n/2 - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfField {
    n: usize,
    comps: [Vec<Complex64>; 3],
}

impl HalfField {
    /// Number of stored `x3` planes.
    pub fn planes(n: usize) -> usize {
        n / 2 - 1
    }

    pub fn from_components(n: usize, comps: [Vec<Complex64>; 3]) -> Result<HalfField> {
        check_grid_size(n)?;
        let len = n * n * HalfField::planes(n);
        for c in &comps {
            if c.len() != len {
                return Err(Error::SizeMismatch { expected: len, got: c.len() });
            }
        }
        Ok(HalfField { n, comps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn comp(&self, l: usize) -> &[Complex64] {
        &self.comps[l]
    }

    /// Value at `(j1, j2, j3)` with `1 <= j3 < n/2`.
    pub fn get(&self, l: usize, j: [usize; 3]) -> Complex64 {
        self.comps[l][j[0] + self.n * (j[1] + self.n * (j[2] - 1))]
    }

    /// `(2 pi / n)^3 sum |u|^2 / 2` over the stored samples.
    pub fn energy(&self) -> f64 {
        let cell = (2.0 * std::f64::consts::PI / self.n as f64).powi(3);
        cell * self.comps.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>() / 2.0
    }
}

/// Samples of `u` strictly inside `x3 in (0, pi)`.
pub fn restrict(u: &VectorField) -> HalfField {
    let n = u.n();
    let comps = std::array::from_fn(|l| {
        let g = u.comp(l);
        let mut out = Vec::with_capacity(n * n * HalfField::planes(n));
        for j3 in 1..n / 2 {
            for j2 in 0..n {
                for j1 in 0..n {
                    out.push(g.get([j1, j2, j3]));
                }
            }
        }
        out
    });
    HalfField { n, comps }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtensionKind {
    /// Zero outside the half space.
    #[serde(rename = "zero")]
    Zero,
    /// `(-u1, -u2, u3)(x~)`.
    #[serde(rename = "antisym")]
    Antisymmetric,
    /// `(u1, u2, -u3)(x~)`.
    #[serde(rename = "sym")]
    Symmetric,
}

impl ExtensionKind {
    pub const ALL: [ExtensionKind; 3] = [ExtensionKind::Zero, ExtensionKind::Antisymmetric, ExtensionKind::Symmetric];

    pub fn name(self) -> &'static str {
        match self {
            ExtensionKind::Zero => "zero",
            ExtensionKind::Antisymmetric => "antisym",
            ExtensionKind::Symmetric => "sym",
        }
    }

    /// Whether component `l` is odd in `x3` under this extension.
    fn odd(self, l: usize) -> Option<bool> {
        match self {
            ExtensionKind::Zero => None,
            ExtensionKind::Antisymmetric => Some(l < 2),
            ExtensionKind::Symmetric => Some(l == 2),
        }
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtensionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ExtensionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown extension {s:?} (expected zero, antisym or sym)")))
    }
}

/// Plane values `(f(0), f(pi))` that make the even extension of the column
/// `f(j3), 1 <= j3 < n/2` free of its two highest cosine modes.
pub fn even_plane_values(column: &[Complex64]) -> (Complex64, Complex64) {
    let m = column.len() + 1;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut s1 = Complex64::default();
    let mut s2 = Complex64::default();
    for (i, &f) in column.iter().enumerate() {
        let j = i + 1;
        let alt = if j % 2 == 0 { 2.0 } else { -2.0 };
        s1 += f * alt;
        s2 += f * (alt * (std::f64::consts::PI * j as f64 / m as f64).cos());
    }
    (-(s1 + s2) / 2.0, (s2 - s1) * (sign / 2.0))
}

/// Relative weight of the modes with `|k3| > n/4`.
fn x3_tail(g: &Grid3) -> f64 {
    let n = g.n();
    let mut s = g.data().to_vec();
    Fft3::get(n).forward(&mut s);
    let (mut tail, mut total) = (0.0, 0.0);
    spectral::for_each_mode(n, |i, j| {
        let e = s[i].norm_sqr();
        total += e;
        if spectral::wavenumber(j[2], n).unsigned_abs() as usize > n / 4 {
            tail += e;
        }
    });
    if total == 0.0 {
        0.0
    } else {
        (tail / total).sqrt()
    }
}

/// Trace tolerance of [`extend`].
pub const TRACE_TOL: f64 = 1e-6;

pub fn extend(h: &HalfField, kind: ExtensionKind) -> Result<VectorField> {
    let n = h.n;
    let mut comps = Vec::with_capacity(3);
    for l in 0..3 {
        let mut g = Grid3::zeros(n)?;
        let odd = kind.odd(l);
        {
            let data = g.data_mut();
            let idx = |j1: usize, j2: usize, j3: usize| j1 + n * (j2 + n * j3);
            let mut column = vec![Complex64::default(); n / 2 - 1];
            for j2 in 0..n {
                for j1 in 0..n {
                    for j3 in 1..n / 2 {
                        let v = h.get(l, [j1, j2, j3]);
                        column[j3 - 1] = v;
                        data[idx(j1, j2, j3)] = v;
                        match odd {
                            Some(true) => data[idx(j1, j2, n - j3)] = -v,
                            Some(false) => data[idx(j1, j2, n - j3)] = v,
                            None => {}
                        }
                    }
                    if odd == Some(false) {
                        let (bottom, top) = even_plane_values(&column);
                        data[idx(j1, j2, 0)] = bottom;
                        data[idx(j1, j2, n / 2)] = top;
                    }
                }
            }
        }
        if odd == Some(true) {
            let tail = x3_tail(&g);
            if tail > TRACE_TOL {
                return Err(Error::NotCompatible { extension: kind.name(), component: l + 1, tail });
            }
        }
        comps.push(g);
    }
    let [a, b, c]: [Grid3; 3] = comps.try_into().expect("three components");
    VectorField::new(a, b, c)
}

/// Expected bits on axes 1 and 2: `u1` odd in `x1`, `u2` odd in `x2`, `u3` even in both.
const OMSY_BITS: [[u8; 2]; 3] = [[1, 0], [0, 1], [0, 0]];

/// Whether `u` has the reflection symmetry in `x1, x2` required of
/// half-space data: `u1` odd in `x1` and even in `x2`, `u2` the reverse,
/// `u3` even in both. Parity in `x3` is not examined.
pub fn check_omsy(u: &VectorField) -> bool {
    check_omsy_tol(u, MeasureTol::default())
}

pub fn check_omsy_tol(u: &VectorField, tol: MeasureTol) -> bool {
    let m = u.measure(tol);
    (0..3).all(|l| {
        let zero = tol.zero_factor * (u.n() as f64).powf(1.5);
        [m[l].re, m[l].im].iter().all(|r| {
            r.norm <= zero
                || (0..2).all(|axis| {
                    let (want, other) = if OMSY_BITS[l][axis] == 1 {
                        (r.odd[axis], r.even[axis])
                    } else {
                        (r.even[axis], r.odd[axis])
                    };
                    want <= tol.tol && other > tol.tol
                })
        })
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TimeRecord {
    pub t: f64,
    pub split: EnergySplit,
    pub imbalance: f64,
    /// Energy in `x3 in (pi, 2 pi)`.
    pub outside_energy: f64,
    pub divergence_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdicts {
    /// Split imbalance stays below the tolerance at every recorded time.
    pub split_equal: bool,
    /// Measured kind is `(e1, e2, e3)` at every recorded time.
    pub symmetry_kept: bool,
    /// Energy appears outside the half space at the first recorded time after 0.
    pub outside_energy_positive: bool,
    /// Imbalance exceeds `1e-4` at some time, or the predicted label of
    /// `B(u0,u0)` differs from the initial kind.
    pub symmetry_lost: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HalfspaceReport {
    pub extension: ExtensionKind,
    pub config: SolverConfig,
    pub half_energy: f64,
    pub extended_energy: f64,
    /// Relative divergence of the extension before any projection.
    pub extension_divergence: f64,
    pub projected: bool,
    pub initial_labels: Option<TypeTuple>,
    pub initial_b_label: Option<TypeTuple>,
    pub records: Vec<TimeRecord>,
    pub labels: Vec<Option<TypeTuple>>,
    pub picard_iterations: usize,
    pub picard_converged: bool,
    pub contraction_ratios: Vec<f64>,
    pub split_tol: f64,
    pub verdicts: Verdicts,
}

/// Imbalance tolerance of the split-equality verdict.
pub const SPLIT_TOL: f64 = 1e-8;

/// Extends, solves, and records the energy on both sides of `x3 = 0`. Zero
/// and antisymmetric extensions are Leray-projected first, since they are
/// generally not solenoidal across the planes.
pub fn halfspace_run(h: &HalfField, kind: ExtensionKind, cfg: &SolverConfig) -> Result<HalfspaceReport> {
    let tol = MeasureTol::default();
    let ext = extend(h, kind)?;
    let extension_divergence = crate::field::divergence_residual(&ext);
    let projected = kind != ExtensionKind::Symmetric;
    let u0 = if projected { leray(&ext) } else { ext.clone() };
    let initial_labels = u0.type_tuple(tol);
    let initial_b_label = initial_labels.and_then(|t| bilinear_b_label(&t, &t).ok());
    let result = picard_solve(&u0, cfg)?;
    let traj = &result.trajectory;
    let records: Vec<TimeRecord> = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(&t, u)| {
            let split = energy_split(u, 2);
            TimeRecord {
                t,
                split,
                imbalance: split.imbalance(),
                outside_energy: split.upper,
                divergence_residual: crate::field::divergence_residual(u),
            }
        })
        .collect();
    let labels: Vec<Option<TypeTuple>> = traj.states.iter().map(|u| u.type_tuple(tol)).collect();
    let max_imbalance = records.iter().map(|r| r.imbalance).fold(0.0, f64::max);
    let verdicts = Verdicts {
        split_equal: max_imbalance <= SPLIT_TOL,
        symmetry_kept: labels.iter().all(|l| *l == Some(TypeTuple::diagonal())),
        outside_energy_positive: records.get(1).is_some_and(|r| r.outside_energy > 0.0),
        symmetry_lost: max_imbalance > 1e-4 || initial_b_label.is_none() || initial_b_label != initial_labels,
    };
    Ok(HalfspaceReport {
        extension: kind,
        config: cfg.clone(),
        half_energy: h.energy(),
        extended_energy: crate::field::energy(&ext),
        extension_divergence,
        projected,
        initial_labels,
        initial_b_label,
        records,
        labels,
        picard_iterations: result.iterations(),
        picard_converged: result.converged,
        contraction_ratios: result.ratios(),
        split_tol: SPLIT_TOL,
        verdicts,
    })
}
