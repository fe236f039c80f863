//! Complex fields sampled on the periodic grid `x = 2 pi j / n`, `j in [0, n)^3`.
//!
//! With `n` even, the reflection `x_l -> -x_l` maps grid points to grid
//! points (`j -> (n - j) mod n`), so parity projections and measurements are
//! exact up to roundoff.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumerate::admissible;
use crate::error::{Error, Result};
use crate::spectral::{self, Fft3};
use crate::symtype::{Parity, Part, SymLabel, TypeTuple};

#[derive(Clone, Debug, PartialEq)]
pub struct Grid3 {
    n: usize,
    data: Vec<Complex64>,
}

pub fn check_grid_size(n: usize) -> Result<()> {
    if n >= 8 && n.is_multiple_of(2) {
        Ok(())
    } else {
        Err(Error::InvalidGridSize(n))
    }
}

impl Grid3 {
    pub fn zeros(n: usize) -> Result<Grid3> {
        check_grid_size(n)?;
        Ok(Grid3 { n, data: vec![Complex64::default(); n * n * n] })
    }

    pub fn from_data(n: usize, data: Vec<Complex64>) -> Result<Grid3> {
        check_grid_size(n)?;
        if data.len() != n * n * n {
            return Err(Error::SizeMismatch { expected: n * n * n, got: data.len() });
        }
        Ok(Grid3 { n, data })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(n: usize, f: impl Fn([f64; 3]) -> Complex64) -> Result<Grid3> {
        let mut g = Grid3::zeros(n)?;
        let h = 2.0 * PI / n as f64;
        spectral::for_each_mode(n, |i, [j1, j2, j3]| {
            g.data[i] = f([j1 as f64 * h, j2 as f64 * h, j3 as f64 * h]);
        });
        Ok(g)
    }

    pub fn from_real_fn(n: usize, f: impl Fn([f64; 3]) -> f64) -> Result<Grid3> {
        Grid3::from_fn(n, |x| Complex64::new(f(x), 0.0))
    }

    pub fn constant(n: usize, c: Complex64) -> Result<Grid3> {
        check_grid_size(n)?;
        Ok(Grid3 { n, data: vec![c; n * n * n] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn index(&self, j: [usize; 3]) -> usize {
        j[0] + self.n * (j[1] + self.n * j[2])
    }

    pub fn get(&self, j: [usize; 3]) -> Complex64 {
        self.data[self.index(j)]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Grid3 {
        Grid3 { n: self.n, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_with(&self, other: &Grid3, f: impl Fn(Complex64, Complex64) -> Complex64) -> Grid3 {
        assert_eq!(self.n, other.n, "grid sizes differ");
        Grid3 {
            n: self.n,
            data: self.data.iter().zip(other.data.iter()).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Real part as a real-valued grid.
    pub fn re(&self) -> Grid3 {
        self.map(|v| Complex64::new(v.re, 0.0))
    }

    /// Imaginary part as a real-valued grid.
    pub fn im(&self) -> Grid3 {
        self.map(|v| Complex64::new(v.im, 0.0))
    }

    /// `re + i im` for two real-valued grids.
    pub fn from_parts(re: &Grid3, im: &Grid3) -> Grid3 {
        re.zip_with(im, |a, b| Complex64::new(a.re, b.re))
    }

    /// Plain Euclidean norm of the sample vector.
    pub fn euclid_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Root mean square over grid points.
    pub fn rms(&self) -> f64 {
        self.euclid_norm() / (self.data.len() as f64).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn mean(&self) -> Complex64 {
        self.data.iter().sum::<Complex64>() / self.data.len() as f64
    }

    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut s = self.data.clone();
        Fft3::get(self.n).forward(&mut s);
        s
    }

    pub fn from_spectrum(n: usize, mut spec: Vec<Complex64>) -> Grid3 {
        Fft3::get(n).inverse(&mut spec);
        Grid3 { n, data: spec }
    }

    /// Spectral derivative `d^idx`.
    pub fn derivative(&self, idx: [u32; 3]) -> Grid3 {
        let n = self.n;
        let mut s = self.spectrum();
        spectral::for_each_mode(n, |i, j| s[i] *= spectral::derivative_symbol(idx, n, j));
        Grid3::from_spectrum(n, s)
    }

    /// Drops modes outside the band `|k_i| <= band`.
    pub fn band_limit(&self, band: usize) -> Grid3 {
        let n = self.n;
        let mut s = self.spectrum();
        spectral::for_each_mode(n, |i, j| {
            if j.iter().any(|&ji| spectral::wavenumber(ji, n).unsigned_abs() as usize > band) {
                s[i] = Complex64::default();
            }
        });
        Grid3::from_spectrum(n, s)
    }
}

impl Add for &Grid3 {
    type Output = Grid3;
    fn add(self, rhs: &Grid3) -> Grid3 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Grid3 {
    type Output = Grid3;
    fn sub(self, rhs: &Grid3) -> Grid3 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &Grid3 {
    type Output = Grid3;
    fn mul(self, rhs: f64) -> Grid3 {
        self.map(|a| a * rhs)
    }
}

impl Mul<Complex64> for &Grid3 {
    type Output = Grid3;
    fn mul(self, rhs: Complex64) -> Grid3 {
        self.map(|a| a * rhs)
    }
}

/// Reflection `x_axis -> -x_axis` (axis zero-based).
pub fn reflect(f: &Grid3, axis: usize) -> Grid3 {
    reflect_by(f, Parity::unit(axis))
}

/// Applies the reflections of every axis whose bit is set in `s`.
pub fn reflect_by(f: &Grid3, s: Parity) -> Grid3 {
    let n = f.n;
    let flip = |j: usize, on: bool| if on && j != 0 { n - j } else { j };
    let bits = s.bits().map(|b| b == 1);
    let mut out = f.clone();
    spectral::for_each_mode(n, |i, [j1, j2, j3]| {
        out.data[i] = f.get([flip(j1, bits[0]), flip(j2, bits[1]), flip(j3, bits[2])]);
    });
    out
}

/// Projection onto the parity sector `a`:
/// `8^{-1} sum_s (-1)^{a.s} f(sigma_s x)`.
pub fn parity_project(f: &Grid3, a: Parity) -> Grid3 {
    let mut acc = Grid3 { n: f.n, data: vec![Complex64::default(); f.data.len()] };
    for s in Parity::all() {
        let sign = a.character(s) / 8.0;
        let r = reflect_by(f, s);
        for (x, y) in acc.data.iter_mut().zip(r.data.iter()) {
            *x += sign * y;
        }
    }
    acc
}

/// Tolerances of [`measure_parity`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasureTol {
    /// Relative residual below which a reflection symmetry is accepted.
    pub tol: f64,
    /// A part with Euclidean norm below `zero_factor * n^{3/2}` is zero.
    pub zero_factor: f64,
}

impl Default for MeasureTol {
    fn default() -> Self {
        MeasureTol { tol: 1e-8, zero_factor: 1e-14 }
    }
}

impl MeasureTol {
    pub fn with_tol(tol: f64) -> MeasureTol {
        MeasureTol { tol, ..Default::default() }
    }
}

/// Relative residuals of one real part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PartResiduals {
    pub norm: f64,
    /// `|f - f o sigma_l| / |f|` per axis.
    pub even: [f64; 3],
    /// `|f + f o sigma_l| / |f|` per axis.
    pub odd: [f64; 3],
    /// `|f - mean f| / |f|`.
    pub nonconstant: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParityMeasurement {
    pub label: Option<SymLabel>,
    pub re: PartResiduals,
    pub im: PartResiduals,
    pub tol: f64,
}

fn measure_part(values: &[f64], n: usize, tol: MeasureTol) -> (Option<Part>, PartResiduals) {
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut res = PartResiduals { norm, ..Default::default() };
    if norm <= tol.zero_factor * (n as f64).powf(1.5) {
        return (Some(Part::Zero), res);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    res.nonconstant = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>().sqrt() / norm;
    let flip = |j: usize| if j == 0 { 0 } else { n - j };
    let mut bits = [0u8; 3];
    let mut definite = true;
    for axis in 0..3 {
        let (mut even, mut odd) = (0.0, 0.0);
        spectral::for_each_mode(n, |i, mut j| {
            j[axis] = flip(j[axis]);
            let r = values[j[0] + n * (j[1] + n * j[2])];
            even += (values[i] - r).powi(2);
            odd += (values[i] + r).powi(2);
        });
        res.even[axis] = even.sqrt() / norm;
        res.odd[axis] = odd.sqrt() / norm;
        match (res.even[axis] <= tol.tol, res.odd[axis] <= tol.tol) {
            (true, false) => bits[axis] = 0,
            (false, true) => bits[axis] = 1,
            _ => definite = false,
        }
    }
    if !definite {
        return (None, res);
    }
    if res.nonconstant <= tol.tol {
        return (Some(Part::Const), res);
    }
    (Some(Part::Sym(Parity::new(bits[0], bits[1], bits[2]))), res)
}

/// Classifies the real and imaginary parts of `f` as zero, constant, or of
/// definite parity on every axis.
pub fn measure_parity(f: &Grid3, tol: MeasureTol) -> ParityMeasurement {
    let re: Vec<f64> = f.data.iter().map(|v| v.re).collect();
    let im: Vec<f64> = f.data.iter().map(|v| v.im).collect();
    let (re_part, re_res) = measure_part(&re, f.n, tol);
    let (im_part, im_res) = measure_part(&im, f.n, tol);
    let label = match (re_part, im_part) {
        (Some(r), Some(i)) => Some(SymLabel::new(r, i)),
        _ => None,
    };
    ParityMeasurement { label, re: re_res, im: im_res, tol: tol.tol }
}

/// Three components on one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    comps: [Grid3; 3],
}

impl VectorField {
    pub fn new(u1: Grid3, u2: Grid3, u3: Grid3) -> Result<VectorField> {
        let n = u1.n;
        if u2.n != n || u3.n != n {
            return Err(Error::SizeMismatch { expected: n * n * n, got: u2.data.len().max(u3.data.len()) });
        }
        Ok(VectorField { comps: [u1, u2, u3] })
    }

    pub fn from_components(comps: [Grid3; 3]) -> Result<VectorField> {
        let [a, b, c] = comps;
        VectorField::new(a, b, c)
    }

    pub fn zeros(n: usize) -> Result<VectorField> {
        let z = Grid3::zeros(n)?;
        Ok(VectorField { comps: [z.clone(), z.clone(), z] })
    }

    pub fn n(&self) -> usize {
        self.comps[0].n
    }

    pub fn comp(&self, l: usize) -> &Grid3 {
        &self.comps[l]
    }

    pub fn comp_mut(&mut self, l: usize) -> &mut Grid3 {
        &mut self.comps[l]
    }

    pub fn components(&self) -> &[Grid3; 3] {
        &self.comps
    }

    pub fn into_components(self) -> [Grid3; 3] {
        self.comps
    }

    pub fn map_components(&self, f: impl Fn(&Grid3) -> Grid3) -> VectorField {
        VectorField { comps: std::array::from_fn(|l| f(&self.comps[l])) }
    }

    pub fn zip_with(&self, other: &VectorField, f: impl Fn(&Grid3, &Grid3) -> Grid3) -> VectorField {
        VectorField { comps: std::array::from_fn(|l| f(&self.comps[l], &other.comps[l])) }
    }

    pub fn scale(&self, s: f64) -> VectorField {
        self.map_components(|g| g * s)
    }

    pub fn re(&self) -> VectorField {
        self.map_components(Grid3::re)
    }

    pub fn im(&self) -> VectorField {
        self.map_components(Grid3::im)
    }

    pub fn from_parts(re: &VectorField, im: &VectorField) -> VectorField {
        re.zip_with(im, Grid3::from_parts)
    }

    pub fn euclid_norm(&self) -> f64 {
        self.comps.iter().map(|g| g.euclid_norm().powi(2)).sum::<f64>().sqrt()
    }

    /// `sqrt(mean |u|^2)` over grid points.
    pub fn rms(&self) -> f64 {
        self.euclid_norm() / (self.comps[0].data.len() as f64).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(Grid3::max_abs).fold(0.0, f64::max)
    }

    /// Per-component measurements.
    pub fn measure(&self, tol: MeasureTol) -> [ParityMeasurement; 3] {
        std::array::from_fn(|l| measure_parity(&self.comps[l], tol))
    }

    /// The measured kind, if every component has a definite label.
    pub fn type_tuple(&self, tol: MeasureTol) -> Option<TypeTuple> {
        let m = self.measure(tol);
        Some(TypeTuple([m[0].label?, m[1].label?, m[2].label?]))
    }

    /// Relative distance `|self - other| / |other|` (absolute when `other` is zero).
    pub fn rel_diff(&self, other: &VectorField) -> f64 {
        let d = (self - other).euclid_norm();
        let base = other.euclid_norm();
        if base > 0.0 {
            d / base
        } else {
            d
        }
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Spectral divergence `sum_l d_l u_l`.
pub fn divergence(u: &VectorField) -> Grid3 {
    let n = u.n();
    let mut acc = vec![Complex64::default(); n * n * n];
    for l in 0..3 {
        let s = u.comps[l].spectrum();
        let mut idx = [0; 3];
        idx[l] = 1;
        spectral::for_each_mode(n, |i, j| acc[i] += s[i] * spectral::derivative_symbol(idx, n, j));
    }
    Grid3::from_spectrum(n, acc)
}

/// Relative residual `|div u| / |u|`, zero for the zero field.
pub fn divergence_residual(u: &VectorField) -> f64 {
    let norm = u.euclid_norm();
    if norm == 0.0 {
        return 0.0;
    }
    divergence(u).euclid_norm() / norm
}

/// `(2 pi / n)^3 sum |u|^2 / 2`.
pub fn energy(u: &VectorField) -> f64 {
    let n = u.n() as f64;
    let cell = (2.0 * PI / n).powi(3);
    cell * u.euclid_norm().powi(2) / 2.0
}

/// Energy on the two open halves `x_axis in (0, pi)` and `(pi, 2 pi)`, with
/// the reflection planes `x_axis = 0, pi` reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergySplit {
    pub lower: f64,
    pub upper: f64,
    pub planes: f64,
}

impl EnergySplit {
    pub fn total(&self) -> f64 {
        self.lower + self.upper + self.planes
    }

    /// `|E_lower - E_upper| / E`, zero for a zero field.
    pub fn imbalance(&self) -> f64 {
        let e = self.total();
        if e == 0.0 {
            0.0
        } else {
            (self.lower - self.upper).abs() / e
        }
    }
}

pub fn energy_split(u: &VectorField, axis: usize) -> EnergySplit {
    let n = u.n();
    let cell = (2.0 * PI / n as f64).powi(3) / 2.0;
    let mut split = EnergySplit { lower: 0.0, upper: 0.0, planes: 0.0 };
    for g in &u.comps {
        spectral::for_each_mode(n, |i, j| {
            let e = g.data[i].norm_sqr() * cell;
            match j[axis] {
                0 => split.planes += e,
                k if k == n / 2 => split.planes += e,
                k if k < n / 2 => split.lower += e,
                _ => split.upper += e,
            }
        });
    }
    split
}

/// Band limit of random witnesses.
pub fn witness_band(n: usize) -> usize {
    n / 4
}

fn random_real_grid(n: usize, band: usize, rng: &mut ChaCha8Rng) -> Result<Grid3> {
    let mut spec = vec![Complex64::default(); n * n * n];
    spectral::for_each_mode(n, |i, j| {
        if j.iter().all(|&ji| spectral::wavenumber(ji, n).unsigned_abs() as usize <= band) {
            spec[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    });
    Ok(Grid3::from_spectrum(n, spec).re())
}

/// Projects onto fields that are divergence free and whose inactive
/// components vanish: per mode, the active components lose their
/// component along the active part of `k`.
fn constrained_solenoidal(w: [Grid3; 3], active: [bool; 3]) -> [Grid3; 3] {
    let n = w[0].n;
    let mut spec: [Vec<Complex64>; 3] = std::array::from_fn(|l| {
        if active[l] {
            w[l].spectrum()
        } else {
            vec![Complex64::default(); n * n * n]
        }
    });
    spectral::for_each_mode(n, |i, j| {
        let k: [f64; 3] = std::array::from_fn(|l| {
            if active[l] {
                spectral::odd_wavenumber(j[l], n)
            } else {
                0.0
            }
        });
        let k2: f64 = k.iter().map(|x| x * x).sum();
        if k2 == 0.0 {
            return;
        }
        let dot: Complex64 = (0..3).map(|l| spec[l][i] * k[l]).sum();
        for l in 0..3 {
            spec[l][i] -= dot * (k[l] / k2);
        }
    });
    spec.map(|s| Grid3::from_spectrum(n, s).re())
}

fn random_real_pattern(parts: [Part; 3], n: usize, rng: &mut ChaCha8Rng) -> Result<[Grid3; 3]> {
    let band = witness_band(n);
    let w = [
        random_real_grid(n, band, rng)?,
        random_real_grid(n, band, rng)?,
        random_real_grid(n, band, rng)?,
    ];
    let active = parts.map(|p| matches!(p, Part::Sym(_)));
    let w = constrained_solenoidal(w, active);
    let mut out = Vec::with_capacity(3);
    for (l, part) in parts.iter().enumerate() {
        out.push(match part {
            Part::Zero => Grid3::zeros(n)?,
            Part::Const => {
                let c = rng.gen_range(0.5..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                Grid3::constant(n, Complex64::new(c, 0.0))?
            }
            Part::Sym(p) => parity_project(&w[l], *p).re(),
        });
    }
    Ok(out.try_into().expect("three components"))
}

/// Number of fresh draws before giving up on a sector.
pub const WITNESS_RETRIES: usize = 8;

/// A random band-limited field of the given kind, normalised to unit RMS.
///
/// Real and imaginary parts are drawn independently: each is a random real
/// field projected onto solenoidal fields whose constant/zero components
/// vanish, then parity-projected componentwise. Constant parts get random
/// nonzero constants.
pub fn random_symmetric_solenoidal(t: &TypeTuple, n: usize, seed: u64) -> Result<VectorField> {
    check_grid_size(n)?;
    if !admissible(t).0 {
        return Err(Error::Inadmissible(*t));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = MeasureTol::default();
    for _ in 0..WITNESS_RETRIES {
        let re = random_real_pattern(t.0.map(|l| l.re), n, &mut rng)?;
        let im = random_real_pattern(t.0.map(|l| l.im), n, &mut rng)?;
        let [r1, r2, r3] = re;
        let [i1, i2, i3] = im;
        let u = VectorField::new(
            Grid3::from_parts(&r1, &i1),
            Grid3::from_parts(&r2, &i2),
            Grid3::from_parts(&r3, &i3),
        )?;
        let rms = u.rms();
        if rms == 0.0 {
            continue;
        }
        let u = u.scale(1.0 / rms);
        if u.type_tuple(tol) == Some(*t) && divergence_residual(&u) <= 1e-12 {
            return Ok(u);
        }
    }
    Err(Error::DegenerateDraw { kind: *t, retries: WITNESS_RETRIES })
}

/// A generic complex solenoidal field of band `n/4` with unit RMS and no
/// symmetry.
pub fn random_solenoidal(n: usize, seed: u64) -> Result<VectorField> {
    check_grid_size(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let band = witness_band(n);
    let mut draw = || -> Result<[Grid3; 3]> {
        let w = [
            random_real_grid(n, band, &mut rng)?,
            random_real_grid(n, band, &mut rng)?,
            random_real_grid(n, band, &mut rng)?,
        ];
        Ok(constrained_solenoidal(w, [true; 3]))
    };
    let [r1, r2, r3] = draw()?;
    let [i1, i2, i3] = draw()?;
    let u = VectorField::new(
        Grid3::from_parts(&r1, &i1),
        Grid3::from_parts(&r2, &i2),
        Grid3::from_parts(&r3, &i3),
    )?;
    Ok(u.scale(1.0 / u.rms()))
}

/// Default divergence tolerance for [`decompose_matched`] inputs.
pub const SOLENOIDAL_TOL: f64 = 1e-8;

/// Splits a solenoidal field into eight parts indexed by `alpha`, part
/// `alpha` having component labels `m(e_l+alpha) + i m(e_l+alpha+beta)`.
/// Every pair of parts is matched and each part is solenoidal.
pub fn decompose_matched(u: &VectorField, beta: Parity) -> Result<[VectorField; 8]> {
    let residual = divergence_residual(u);
    if residual > SOLENOIDAL_TOL {
        return Err(Error::NotSolenoidal { residual });
    }
    let re = u.re();
    let im = u.im();
    Ok(std::array::from_fn(|a| {
        let alpha = Parity::from_index(a as u8);
        VectorField {
            comps: std::array::from_fn(|l| {
                let e = Parity::unit(l);
                let pr = parity_project(re.comp(l), e + alpha);
                let pi = parity_project(im.comp(l), e + alpha + beta);
                Grid3::from_parts(&pr, &pi)
            }),
        }
    }))
}

/// The label scheme of [`decompose_matched`]'s part `alpha`.
pub fn decomposition_labels(alpha: Parity, beta: Parity) -> TypeTuple {
    TypeTuple::canonical(alpha, alpha + beta)
}
