use num_complex::Complex64;
use parity_ns::field::{
    decompose_matched, decomposition_labels, divergence, measure_parity, parity_project, random_solenoidal, reflect,
    Grid3, MeasureTol,
};
use parity_ns::nsops::{leray, SolverConfig};
use parity_ns::symtype::{derivative_label, matched_check, Parity, TypeTuple};
use parity_ns::VectorField;
use proptest::prelude::*;

/// Random trigonometric polynomial with modes `|k_i| <= 3`.
fn trig_grid(n: usize, coeffs: &[(i32, i32, i32, f64, f64)]) -> Grid3 {
    Grid3::from_fn(n, |x| {
        coeffs
            .iter()
            .map(|&(a, b, c, re, im)| {
                let phase = a as f64 * x[0] + b as f64 * x[1] + c as f64 * x[2];
                Complex64::new(re, im) * Complex64::new(phase.cos(), phase.sin())
            })
            .sum()
    })
    .unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<(i32, i32, i32, f64, f64)>> {
    prop::collection::vec((-3..=3, -3..=3, -3..=3, -1.0..1.0f64, -1.0..1.0f64), 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sectors_sum_to_the_field(c in coeffs()) {
        let f = trig_grid(16, &c);
        let sectors: Vec<Grid3> = Parity::all().map(|a| parity_project(&f, a)).collect();
        let mut sum = Grid3::zeros(16).unwrap();
        for s in &sectors {
            sum = &sum + s;
        }
        prop_assert!((&sum - &f).euclid_norm() <= 1e-13 * f.euclid_norm());
        for (i, a) in Parity::all().enumerate() {
            for b in Parity::all() {
                let pp = parity_project(&sectors[i], b);
                let want = if a == b { sectors[i].clone() } else { Grid3::zeros(16).unwrap() };
                prop_assert!((&pp - &want).euclid_norm() <= 1e-13 * f.euclid_norm().max(1e-300));
            }
        }
    }

    #[test]
    fn reflections_are_involutions(c in coeffs(), axis in 0usize..3) {
        let f = trig_grid(8, &c);
        prop_assert_eq!(reflect(&reflect(&f, axis), axis), f);
    }

    #[test]
    fn derivatives_commute_with_labels(c in coeffs(), sector in 0u8..8, axis in 0usize..3) {
        let f = parity_project(&trig_grid(16, &c).re(), Parity::from_index(sector));
        let tol = MeasureTol::default();
        let mut idx = [0; 3];
        idx[axis] = 1;
        if let Some(a) = measure_parity(&f, tol).label {
            let df = f.derivative(idx);
            if let Some(b) = measure_parity(&df, MeasureTol::with_tol(1e-10)).label {
                prop_assert!(b.consistent_with(derivative_label(a, idx)));
            }
        }
    }

    #[test]
    fn leray_is_idempotent(c1 in coeffs(), c2 in coeffs(), c3 in coeffs()) {
        let v = VectorField::new(trig_grid(8, &c1), trig_grid(8, &c2), trig_grid(8, &c3)).unwrap();
        let p = leray(&v);
        prop_assert!(leray(&p).rel_diff(&p) <= 1e-13);
        prop_assert!(divergence(&p).euclid_norm() <= 1e-12 * v.euclid_norm());
    }

    #[test]
    fn decomposition_scheme_holds(seed in 0u64..1000, beta in 0u8..8) {
        let beta = Parity::from_index(beta);
        let u = random_solenoidal(16, seed).unwrap();
        let parts = decompose_matched(&u, beta).unwrap();
        let mut sum = VectorField::zeros(16).unwrap();
        let tol = MeasureTol::default();
        let mut labels: Vec<TypeTuple> = Vec::new();
        for (a, p) in parts.iter().enumerate() {
            sum = &sum + p;
            let scheme = decomposition_labels(Parity::from_index(a as u8), beta);
            let measured = p.type_tuple(tol).unwrap();
            prop_assert!(measured.consistent_with(&scheme));
            prop_assert!(divergence(p).euclid_norm() <= 1e-11 * u.euclid_norm());
            labels.push(measured);
        }
        prop_assert!(sum.rel_diff(&u) <= 1e-13);
        for a in &labels {
            for b in &labels {
                prop_assert!(matched_check(a, b));
            }
        }
    }

    #[test]
    fn configs_round_trip(n in (4usize..20).prop_map(|k| 2 * k), q in 2usize..64, iters in 1usize..50) {
        let cfg = SolverConfig { n, quad_points: q, picard_iters: iters, ..Default::default() };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: SolverConfig = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, cfg);
    }
}
