//! Fourier-space plumbing on the periodic `n^3` grid.
//!
//! Coefficients use the same `x1`-fastest layout as physical samples.
//! Integer wavenumbers lie in `[-n/2, n/2)`. The Nyquist index is given a
//! zero wavenumber in odd-order multipliers (first derivatives, the Leray
//! symbol) so that every multiplier commutes with the coordinate reflections.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

/// Treatment of quadratic products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Dealias {
    /// Keep only modes with `3|k_i| < n` on every axis, before and after
    /// each product.
    #[default]
    TwoThirds,
    None,
}

pub struct Fft3 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft3 {
    fn new(n: usize) -> Fft3 {
        let mut planner = FftPlanner::new();
        Fft3 { n, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) }
    }

    /// Shared plan for grid size `n`.
    pub fn get(n: usize) -> Arc<Fft3> {
        static PLANS: OnceLock<Mutex<HashMap<usize, Arc<Fft3>>>> = OnceLock::new();
        let plans = PLANS.get_or_init(Default::default);
        let mut plans = plans.lock().expect("fft plan cache poisoned");
        plans.entry(n).or_insert_with(|| Arc::new(Fft3::new(n))).clone()
    }

    fn transform(&self, data: &mut [Complex64], fft: &dyn Fft<f64>) {
        let n = self.n;
        assert_eq!(data.len(), n * n * n);
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        // x1: contiguous rows.
        fft.process_with_scratch(data, &mut scratch);
        let mut line = vec![Complex64::default(); n];
        // x2 lines start at j1 + n^2 j3, x3 lines at j1 + n j2.
        let x2_base = |a: usize, b: usize| a + n * n * b;
        let x3_base = |a: usize, b: usize| a + n * b;
        for (stride, base_of) in [(n, &x2_base as &dyn Fn(usize, usize) -> usize), (n * n, &x3_base)] {
            for outer in 0..n {
                for inner in 0..n {
                    let base = base_of(inner, outer);
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = data[base + k * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (k, v) in line.iter().enumerate() {
                        data[base + k * stride] = *v;
                    }
                }
            }
        }
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, self.forward.as_ref());
    }

    /// Normalised inverse: `inverse(forward(f)) == f`.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, self.inverse.as_ref());
        let scale = 1.0 / (self.n * self.n * self.n) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}

/// Signed wavenumber of index `j`, in `[-n/2, n/2)`.
pub fn wavenumber(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Wavenumber used by odd-order multipliers: zero at the Nyquist index.
pub fn odd_wavenumber(j: usize, n: usize) -> f64 {
    if j == n / 2 {
        0.0
    } else {
        wavenumber(j, n) as f64
    }
}

/// Visits every mode with its flat index and `(j1, j2, j3)`.
pub fn for_each_mode(n: usize, mut f: impl FnMut(usize, [usize; 3])) {
    for j3 in 0..n {
        for j2 in 0..n {
            for j1 in 0..n {
                f(j1 + n * (j2 + n * j3), [j1, j2, j3]);
            }
        }
    }
}

pub fn keeps_mode(dealias: Dealias, n: usize, j: [usize; 3]) -> bool {
    match dealias {
        Dealias::None => true,
        Dealias::TwoThirds => j.iter().all(|&ji| 3 * wavenumber(ji, n).unsigned_abs() < n as u64),
    }
}

pub fn apply_dealias(spec: &mut [Complex64], n: usize, dealias: Dealias) {
    if dealias == Dealias::None {
        return;
    }
    for_each_mode(n, |i, j| {
        if !keeps_mode(dealias, n, j) {
            spec[i] = Complex64::default();
        }
    });
}

/// Multiplier of `d^idx`: `prod_l (i k_l)^{idx_l}`.
pub fn derivative_symbol(idx: [u32; 3], n: usize, j: [usize; 3]) -> Complex64 {
    let mut s = Complex64::new(1.0, 0.0);
    for l in 0..3 {
        for _ in 0..idx[l] {
            s *= Complex64::new(0.0, odd_wavenumber(j[l], n));
        }
    }
    s
}

/// `|k|^2` as seen by the Leray symbol and the inverse Laplacian.
pub fn odd_k2(n: usize, j: [usize; 3]) -> f64 {
    j.iter().map(|&ji| odd_wavenumber(ji, n).powi(2)).sum()
}

/// `|k|^2` with the true Nyquist wavenumber, for the heat multiplier.
pub fn full_k2(n: usize, j: [usize; 3]) -> f64 {
    j.iter().map(|&ji| (wavenumber(ji, n) as f64).powi(2)).sum()
}
