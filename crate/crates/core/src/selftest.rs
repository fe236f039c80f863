//! Exhaustive checks of the label algebra over its whole finite domain.

use serde::Serialize;

use crate::symtype::{
    bilinear_b_label, derivative_label, g_label, m_reduce, matched_check, product_label, radial_kernel_label,
    sum_label, Parity, Part, SymLabel, TypeTuple,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, if any.
    pub example: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    example: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally { name, cases: 0, failures: 0, example: None }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(case());
            }
        }
    }

    fn done(self) -> Check {
        Check { name: self.name, cases: self.cases, failures: self.failures, example: self.example }
    }
}

pub fn all_parts() -> Vec<Part> {
    let mut v = vec![Part::Zero, Part::Const];
    v.extend(Parity::all().map(Part::Sym));
    v
}

/// All 100 labels.
pub fn all_labels() -> Vec<SymLabel> {
    let parts = all_parts();
    parts.iter().flat_map(|&re| parts.iter().map(move |&im| SymLabel::new(re, im))).collect()
}

/// Labels without zero or constant parts.
fn sym_labels() -> Vec<SymLabel> {
    all_labels()
        .into_iter()
        .filter(|l| matches!(l.re, Part::Sym(_)) && matches!(l.im, Part::Sym(_) | Part::Zero))
        .collect()
}

/// Derivative multi-indices with entries up to 2.
fn indices() -> Vec<[u32; 3]> {
    (0..27u32).map(|i| [i % 3, (i / 3) % 3, i / 9]).collect()
}

fn add_idx(a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn group_laws() -> Check {
    let mut t = Tally::new("parity group laws");
    for a in Parity::all() {
        t.check(a + Parity::EVEN == a, || format!("identity {a}"));
        t.check(a + a == Parity::EVEN, || format!("inverse {a}"));
        for b in Parity::all() {
            t.check(a + b == b + a, || format!("commutative {a} {b}"));
            for c in Parity::all() {
                t.check((a + b) + c == a + (b + c), || format!("associative {a} {b} {c}"));
            }
        }
    }
    t.done()
}

fn characters() -> Check {
    let mut t = Tally::new("characters are orthogonal homomorphisms");
    for a in Parity::all() {
        for b in Parity::all() {
            let inner: f64 = Parity::all().map(|s| a.character(s) * b.character(s)).sum();
            let want = if a == b { 8.0 } else { 0.0 };
            t.check(inner == want, || format!("orthogonality {a} {b}"));
            for s in Parity::all() {
                t.check(a.character(s + b) == a.character(s) * a.character(b), || format!("hom {a} {s} {b}"));
            }
        }
    }
    t.done()
}

fn reduction() -> Check {
    let mut t = Tally::new("mod-2 reduction is additive");
    let range: Vec<[i64; 3]> = (0..125i64).map(|i| [i % 5 - 2, (i / 5) % 5 - 2, i / 25 - 2]).collect();
    for a in &range {
        for b in &range {
            let s = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
            t.check(m_reduce(s) == m_reduce(*a) + m_reduce(*b), || format!("{a:?} {b:?}"));
        }
    }
    t.done()
}

fn sums() -> Check {
    let mut t = Tally::new("label sums");
    let labels = all_labels();
    for &a in &labels {
        t.check(sum_label(a, SymLabel::ZERO) == Ok(a), || format!("zero identity {a}"));
        t.check(sum_label(a, a) == Ok(a), || format!("idempotent {a}"));
        for &b in &labels {
            let ab = sum_label(a, b);
            t.check(ab == sum_label(b, a), || format!("commutative {a} {b}"));
            for &c in &labels {
                if let (Ok(ab), Ok(bc)) = (ab, sum_label(b, c)) {
                    let left = sum_label(ab, c).ok();
                    let right = sum_label(a, bc).ok();
                    if left.is_some() && right.is_some() {
                        t.check(left == right, || format!("associative {a} {b} {c}"));
                    }
                }
            }
        }
    }
    t.done()
}

fn products() -> Check {
    let mut t = Tally::new("label products");
    let labels = all_labels();
    for &a in &labels {
        for &b in &labels {
            let ab = product_label(a, b);
            t.check(ab == product_label(b, a), || format!("commutative {a} {b}"));
            if a.is_real() && b.is_real() {
                t.check(ab.is_ok(), || format!("real product defined {a} {b}"));
            }
            if let (Part::Sym(p), Part::Sym(q), true, true) = (a.re, b.re, a.is_real(), b.is_real()) {
                t.check(ab == Ok(SymLabel::real(p + q)), || format!("real parity {a} {b}"));
            }
            for &c in &labels {
                if let (Ok(ab), Ok(bc)) = (ab, product_label(b, c)) {
                    if let (Ok(l), Ok(r)) = (product_label(ab, c), product_label(a, bc)) {
                        t.check(l == r, || format!("associative {a} {b} {c}"));
                    }
                }
            }
        }
    }
    t.done()
}

fn derivatives() -> Check {
    let mut t = Tally::new("derivative composition");
    let idx = indices();
    for a in all_labels() {
        t.check(derivative_label(a, [0; 3]) == a, || format!("order zero {a}"));
        for &i in &idx {
            for &j in &idx {
                let composed = derivative_label(derivative_label(a, i), j);
                t.check(composed == derivative_label(a, add_idx(i, j)), || format!("{a} {i:?} {j:?}"));
            }
        }
    }
    t.done()
}

fn leibniz() -> Check {
    let mut t = Tally::new("derivatives of products");
    let labels = sym_labels();
    for &a in &labels {
        for &b in &labels {
            let Ok(ab) = product_label(a, b) else { continue };
            for l in 0..3 {
                let mut e = [0; 3];
                e[l] = 1;
                let left = derivative_label(ab, e);
                t.check(product_label(derivative_label(a, e), b) == Ok(left), || format!("{a} {b} axis {l}"));
                t.check(product_label(a, derivative_label(b, e)) == Ok(left), || format!("{a} {b} axis {l}"));
            }
        }
    }
    t.done()
}

fn kernels() -> Check {
    let mut t = Tally::new("radial kernels preserve labels");
    for a in all_labels() {
        t.check(radial_kernel_label(a) == a, || format!("{a}"));
        for i in indices() {
            t.check(
                radial_kernel_label(derivative_label(a, i)) == derivative_label(radial_kernel_label(a), i),
                || format!("{a} {i:?}"),
            );
        }
    }
    t.done()
}

fn bilinear() -> Check {
    let mut t = Tally::new("matched pairs and bilinear labels");
    let shifts: Vec<Parity> = Parity::all().collect();
    for &a in &shifts {
        for &b in &shifts {
            let u = TypeTuple::canonical(a, b);
            for &a2 in &shifts {
                for &b2 in &shifts {
                    let v = TypeTuple::canonical(a2, b2);
                    let matched = a + a2 == b + b2;
                    t.check(matched_check(&u, &v) == matched, || format!("matched {u} {v}"));
                    let label = bilinear_b_label(&u, &v);
                    t.check(label.is_ok() == matched, || format!("defined {u} {v}"));
                    if matched {
                        let want = TypeTuple(std::array::from_fn(|l| {
                            SymLabel::complex(Parity::unit(l) + a + a2, Parity::unit(l) + a2 + b)
                        }));
                        t.check(label == Ok(want), || format!("label {u} {v}"));
                        t.check(
                            g_label(&u, &v) == Ok(SymLabel::complex(a + a2, a2 + b)),
                            || format!("G label {u} {v}"),
                        );
                    }
                }
            }
        }
        for &a2 in &shifts {
            let (ur, vr) = (TypeTuple::real_canonical(a), TypeTuple::real_canonical(a2));
            t.check(matched_check(&ur, &vr), || format!("real matched {ur} {vr}"));
            t.check(bilinear_b_label(&ur, &vr) == Ok(TypeTuple::real_canonical(a + a2)), || format!("real {ur} {vr}"));
        }
    }
    t.done()
}

fn strings() -> Check {
    let mut t = Tally::new("label strings round-trip");
    for a in all_labels() {
        let s = a.to_string();
        t.check(s.parse::<SymLabel>() == Ok(a), || s.clone());
    }
    for a in Parity::all() {
        for b in Parity::all() {
            let u = TypeTuple::canonical(a, b);
            t.check(u.to_string().parse::<TypeTuple>().ok() == Some(u), || u.to_string());
        }
    }
    t.done()
}

/// Runs every check; all must report zero failures.
pub fn symtype_suite() -> Vec<Check> {
    vec![
        group_laws(),
        characters(),
        reduction(),
        sums(),
        products(),
        derivatives(),
        leibniz(),
        kernels(),
        bilinear(),
        strings(),
    ]
}
