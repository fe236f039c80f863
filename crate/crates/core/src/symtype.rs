//! Parity labels and their propagation rules.
//!
//! A real function on R^3 (or the torus) is *symmetric* when each coordinate
//! reflection `x_l -> -x_l` maps it to `±` itself. The sign pattern is a
//! [`Parity`], an element of `(Z/2)^3` with bit `l` set when the function is
//! odd in `x_l`. A complex function carries one parity for its real part and
//! one for its imaginary part; a vector field carries one such label per
//! component.
//!
//! Constants and the zero function need extra care: a constant has the
//! parity of `1` (all even) but, unlike a generic even function, its
//! derivatives vanish; zero is compatible with every parity. Both are carried
//! as variants of [`Part`] rather than as extra parity values, so the
//! 8 real / 64 complex label spaces keep their natural size.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An element of `{0,1}^3`; bit `l` is 1 when the function is odd in `x_{l+1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Parity(u8);

impl Parity {
    pub const EVEN: Parity = Parity(0);

    pub fn new(b1: u8, b2: u8, b3: u8) -> Parity {
        Parity((b1 & 1) | ((b2 & 1) << 1) | ((b3 & 1) << 2))
    }

    /// The unit parity `e_{axis+1}` (axis is zero-based).
    pub fn unit(axis: usize) -> Parity {
        assert!(axis < 3, "axis out of range: {axis}");
        Parity(1 << axis)
    }

    pub fn from_index(i: u8) -> Parity {
        Parity(i & 0b111)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Bit for a zero-based axis.
    pub fn bit(self, axis: usize) -> u8 {
        (self.0 >> axis) & 1
    }

    pub fn bits(self) -> [u8; 3] {
        [self.bit(0), self.bit(1), self.bit(2)]
    }

    /// `(-1)^{a·s}` as a sign, the character of the reflection group.
    pub fn character(self, s: Parity) -> f64 {
        if (self.0 & s.0).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// All eight parities in index order.
    pub fn all() -> impl Iterator<Item = Parity> + Clone {
        (0u8..8).map(Parity)
    }
}

impl Add for Parity {
    type Output = Parity;
    // Addition in (Z/2)^3 is bitwise xor.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.bits();
        write!(f, "{a}{b}{c}")
    }
}

/// Componentwise reduction mod 2 of an integer 3-vector.
pub fn m_reduce(a: [i64; 3]) -> Parity {
    let bit = |x: i64| x.rem_euclid(2) as u8;
    Parity::new(bit(a[0]), bit(a[1]), bit(a[2]))
}

/// Symmetry class of one real function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// Identically zero; compatible with every parity.
    Zero,
    /// A nonzero constant. Its parity is `000`.
    Const,
    /// A non-constant function with the given parity.
    Sym(Parity),
}

impl Part {
    /// The parity this part contributes to products (`000` for constants).
    pub fn parity(self) -> Parity {
        match self {
            Part::Sym(p) => p,
            _ => Parity::EVEN,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Part::Zero)
    }

    /// `None` when the sum of two such functions has no definite parity.
    pub fn sum(self, other: Part) -> Option<Part> {
        use Part::*;
        match (self, other) {
            (Zero, x) | (x, Zero) => Some(x),
            (Const, Const) => Some(Const),
            (Const, Sym(p)) | (Sym(p), Const) if p == Parity::EVEN => Some(Sym(p)),
            (Sym(p), Sym(q)) if p == q => Some(Sym(p)),
            _ => None,
        }
    }

    pub fn product(self, other: Part) -> Part {
        use Part::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Const, Const) => Const,
            (Const, Sym(p)) | (Sym(p), Const) => Sym(p),
            (Sym(p), Sym(q)) => Sym(p + q),
        }
    }

    pub fn derivative(self, idx: [u32; 3]) -> Part {
        let order: u32 = idx.iter().sum();
        match self {
            Part::Zero => Part::Zero,
            Part::Const if order == 0 => Part::Const,
            Part::Const => Part::Zero,
            Part::Sym(p) => Part::Sym(p + m_reduce(idx.map(i64::from))),
        }
    }

    /// Drops the constant marker, keeping the parity a constant carries.
    pub fn forget_constant(self) -> Part {
        match self {
            Part::Const => Part::Sym(Parity::EVEN),
            x => x,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Zero => f.write_str("000z"),
            Part::Const => f.write_str("000c"),
            Part::Sym(p) => write!(f, "{p}"),
        }
    }
}

/// Value of the T operator on a complex function: the symmetry classes of
/// its real and imaginary parts. A label with a zero imaginary part is the
/// label of a real function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymLabel {
    pub re: Part,
    pub im: Part,
}

impl SymLabel {
    pub const ZERO: SymLabel = SymLabel { re: Part::Zero, im: Part::Zero };

    pub fn real(p: Parity) -> SymLabel {
        SymLabel { re: Part::Sym(p), im: Part::Zero }
    }

    pub fn complex(re: Parity, im: Parity) -> SymLabel {
        SymLabel { re: Part::Sym(re), im: Part::Sym(im) }
    }

    pub fn new(re: Part, im: Part) -> SymLabel {
        SymLabel { re, im }
    }

    pub fn is_real(self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when a field measured as `self` is consistent with the
    /// prediction `expected`: zero parts are compatible with anything and a
    /// constant is an even function.
    pub fn consistent_with(self, expected: SymLabel) -> bool {
        fn part_ok(measured: Part, expected: Part) -> bool {
            match (measured, expected) {
                (Part::Zero, _) => true,
                (m, e) => m.forget_constant() == e.forget_constant(),
            }
        }
        part_ok(self.re, expected.re) && part_ok(self.im, expected.im)
    }
}

impl fmt::Display for SymLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+i{}", self.re, self.im)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid label {0:?}")]
pub struct ParseLabelError(pub String);

fn parse_part(s: &str) -> Option<Part> {
    let (bits, suffix) = match s.len() {
        3 => (s, None),
        4 => (&s[..3], s.chars().nth(3)),
        _ => return None,
    };
    let mut b = [0u8; 3];
    for (slot, ch) in b.iter_mut().zip(bits.chars()) {
        *slot = match ch {
            '0' => 0,
            '1' => 1,
            _ => return None,
        };
    }
    let p = Parity::new(b[0], b[1], b[2]);
    match suffix {
        None => Some(Part::Sym(p)),
        Some('c') if p == Parity::EVEN => Some(Part::Const),
        Some('z') if p == Parity::EVEN => Some(Part::Zero),
        _ => None,
    }
}

impl FromStr for SymLabel {
    type Err = ParseLabelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseLabelError(s.to_string());
        let s = s.trim();
        match s.split_once("+i") {
            Some((re, im)) => Ok(SymLabel {
                re: parse_part(re).ok_or_else(err)?,
                im: parse_part(im).ok_or_else(err)?,
            }),
            None => Ok(SymLabel { re: parse_part(s).ok_or_else(err)?, im: Part::Zero }),
        }
    }
}

impl Serialize for SymLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SymLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One label per vector component: a *kind* of symmetric vector field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeTuple(pub [SymLabel; 3]);

impl TypeTuple {
    /// `Tu_l = m(e_l + alpha0) + i m(e_l + beta0)`.
    pub fn canonical(alpha0: Parity, beta0: Parity) -> TypeTuple {
        TypeTuple(std::array::from_fn(|l| {
            SymLabel::complex(Parity::unit(l) + alpha0, Parity::unit(l) + beta0)
        }))
    }

    /// `Tu_l = m(e_l + alpha0)` for a real field.
    pub fn real_canonical(alpha0: Parity) -> TypeTuple {
        TypeTuple(std::array::from_fn(|l| SymLabel::real(Parity::unit(l) + alpha0)))
    }

    /// `(e_1, e_2, e_3)`.
    pub fn diagonal() -> TypeTuple {
        TypeTuple::real_canonical(Parity::EVEN)
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|l| l.is_real())
    }

    /// Recovers `alpha0` from a part pattern `m(e_l + alpha0)`, if it has one.
    fn shift_of(parts: [Part; 3]) -> Option<Parity> {
        let Part::Sym(first) = parts[0] else { return None };
        let shift = first + Parity::unit(0);
        (0..3)
            .all(|l| parts[l] == Part::Sym(Parity::unit(l) + shift))
            .then_some(shift)
    }

    /// `(alpha0, beta0)` when every component is non-constant and the
    /// tuple has the solenoidal form `m(e_l+alpha0) + i m(e_l+beta0)`.
    /// For real tuples `beta0` is `None`.
    pub fn canonical_params(&self) -> Option<(Parity, Option<Parity>)> {
        let alpha0 = Self::shift_of(self.0.map(|l| l.re))?;
        if self.is_real() {
            return Some((alpha0, None));
        }
        let beta0 = Self::shift_of(self.0.map(|l| l.im))?;
        Some((alpha0, Some(beta0)))
    }

    pub fn consistent_with(&self, expected: &TypeTuple) -> bool {
        self.0.iter().zip(expected.0.iter()).all(|(m, e)| m.consistent_with(*e))
    }
}

impl fmt::Display for TypeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for TypeTuple {
    type Err = ParseLabelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let labels: Vec<SymLabel> = inner
            .split([',', ';'])
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        let labels: [SymLabel; 3] =
            labels.try_into().map_err(|_| ParseLabelError(s.to_string()))?;
        Ok(TypeTuple(labels))
    }
}

/// Sum of two symmetric functions whose labels disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("sum of differently labelled functions is not symmetric")]
pub struct Incompatible;

/// Product (or bilinear term) of two fields whose labels are not matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("labels are not matched; the product is not symmetric")]
pub struct Unmatched;

pub fn sum_label(a: SymLabel, b: SymLabel) -> Result<SymLabel, Incompatible> {
    Ok(SymLabel {
        re: a.re.sum(b.re).ok_or(Incompatible)?,
        im: a.im.sum(b.im).ok_or(Incompatible)?,
    })
}

/// Label of `f g` via `(a+ib)(c+id) = (ac - bd) + i(bc + ad)`.
pub fn product_label(a: SymLabel, b: SymLabel) -> Result<SymLabel, Unmatched> {
    let re = a.re.product(b.re).sum(a.im.product(b.im)).ok_or(Unmatched)?;
    let im = a.im.product(b.re).sum(a.re.product(b.im)).ok_or(Unmatched)?;
    Ok(SymLabel { re, im })
}

/// Convolution transforms parities exactly like the product.
pub fn convolution_label(a: SymLabel, b: SymLabel) -> Result<SymLabel, Unmatched> {
    product_label(a, b)
}

pub fn derivative_label(a: SymLabel, idx: [u32; 3]) -> SymLabel {
    SymLabel { re: a.re.derivative(idx), im: a.im.derivative(idx) }
}

/// Convolution with a radial kernel (heat semigroup, inverse Laplacian)
/// leaves the label unchanged.
pub fn radial_kernel_label(a: SymLabel) -> SymLabel {
    a
}

fn unit_idx(l: usize) -> [u32; 3] {
    let mut idx = [0; 3];
    idx[l] = 1;
    idx
}

/// Componentwise matched condition `m(f_re + g_re) = m(f_im + g_im)`.
/// Zero parts collapse the condition.
pub fn matched_check(u: &TypeTuple, v: &TypeTuple) -> bool {
    u.0.iter().zip(v.0.iter()).all(|(a, b)| product_label(*a, *b).is_ok())
}

fn sum_all(labels: impl IntoIterator<Item = SymLabel>) -> Result<SymLabel, Unmatched> {
    labels
        .into_iter()
        .try_fold(SymLabel::ZERO, sum_label)
        .map_err(|_| Unmatched)
}

#[allow(clippy::needless_range_loop)]
fn pair_products(u: &TypeTuple, v: &TypeTuple) -> Result<[[SymLabel; 3]; 3], Unmatched> {
    let mut out = [[SymLabel::ZERO; 3]; 3];
    for l in 0..3 {
        for lp in 0..3 {
            out[l][lp] = product_label(u.0[l], v.0[lp])?;
        }
    }
    Ok(out)
}

/// Label of the scalar `G(u,v) = sum_{l,l'} d_l d_l' (u_l v_l')`.
pub fn g_label(u: &TypeTuple, v: &TypeTuple) -> Result<SymLabel, Unmatched> {
    let prods = pair_products(u, v)?;
    sum_all((0..3).flat_map(|l| {
        (0..3).map(move |lp| {
            let mut idx = unit_idx(l);
            idx[lp] += 1;
            derivative_label(prods[l][lp], idx)
        })
    }))
}

/// Label of `A(u,v) = (u . grad) v`.
pub fn advect_label(u: &TypeTuple, v: &TypeTuple) -> Result<TypeTuple, Unmatched> {
    let prods = pair_products(u, v)?;
    let mut out = [SymLabel::ZERO; 3];
    for (lp, slot) in out.iter_mut().enumerate() {
        // u_l d_l v_l' carries the same label as d_l (u_l v_l').
        *slot = sum_all((0..3).map(|l| derivative_label(prods[l][lp], unit_idx(l))))?;
    }
    Ok(TypeTuple(out))
}

/// Label of `C(u,v) = A(u,v) + (-Delta)^{-1} grad G(u,v)`.
pub fn projected_label(u: &TypeTuple, v: &TypeTuple) -> Result<TypeTuple, Unmatched> {
    let a = advect_label(u, v)?;
    let g = radial_kernel_label(g_label(u, v)?);
    let mut out = [SymLabel::ZERO; 3];
    for (l, slot) in out.iter_mut().enumerate() {
        *slot = sum_label(a.0[l], derivative_label(g, unit_idx(l))).map_err(|_| Unmatched)?;
    }
    Ok(TypeTuple(out))
}

/// Label of the Duhamel term `B(u,v)`, obtained by propagating labels
/// through every product, derivative and radial kernel it is built from.
/// For canonical solenoidal tuples this reduces to
/// `m(e_l + alpha0 + alpha0') + i m(e_l + alpha0' + beta0)` when the pair is
/// matched and to `Unmatched` otherwise.
pub fn bilinear_b_label(u: &TypeTuple, v: &TypeTuple) -> Result<TypeTuple, Unmatched> {
    let c = projected_label(u, v)?;
    Ok(TypeTuple(c.0.map(radial_kernel_label)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Parity {
        match s.parse::<SymLabel>().unwrap().re {
            Part::Sym(p) => p,
            _ => unreachable!(),
        }
    }

    fn lab(s: &str) -> SymLabel {
        s.parse().unwrap()
    }

    #[test]
    fn m_reduce_examples() {
        assert_eq!(m_reduce([2, 3, 4]), Parity::new(0, 1, 0));
        assert_eq!(m_reduce([0, 0, 0]), Parity::EVEN);
        assert_eq!(m_reduce([1, 0, 1]), Parity::new(1, 0, 1));
        assert_eq!(m_reduce([-1, -2, 7]), Parity::new(1, 0, 1));
    }

    #[test]
    fn sum_examples() {
        assert_eq!(sum_label(lab("100"), lab("100")), Ok(lab("100")));
        assert_eq!(sum_label(lab("100"), SymLabel::ZERO), Ok(lab("100")));
        assert_eq!(sum_label(lab("100"), lab("010")), Err(Incompatible));
        assert_eq!(sum_label(lab("000c"), lab("000")), Ok(lab("000")));
        assert_eq!(sum_label(lab("000c"), lab("100")), Err(Incompatible));
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_label(lab("100"), lab("110")), Ok(lab("010")));
        assert_eq!(product_label(SymLabel::ZERO, lab("111+i010")), Ok(SymLabel::ZERO));
        assert_eq!(product_label(lab("000c"), lab("000c")), Ok(lab("000c")));
        assert_eq!(product_label(lab("000c"), lab("011")), Ok(lab("011")));
        // re parts add to 110, im parts to 000: not matched.
        assert_eq!(product_label(lab("100+i001"), lab("010+i001")), Err(Unmatched));
    }

    #[test]
    fn matched_product_follows_ll() {
        // u_l v_l' with u of (alpha0, beta0), v of (alpha0', beta0'),
        // alpha0 + alpha0' = beta0 + beta0'.
        let (a0, b0, a1, b1) = (p("001"), p("100"), p("011"), p("110"));
        assert_eq!(a0 + a1, b0 + b1);
        for l in 0..3 {
            for lp in 0..3 {
                let ul = SymLabel::complex(Parity::unit(l) + a0, Parity::unit(l) + b0);
                let vl = SymLabel::complex(Parity::unit(lp) + a1, Parity::unit(lp) + b1);
                let e = Parity::unit(l) + Parity::unit(lp);
                assert_eq!(
                    product_label(ul, vl),
                    Ok(SymLabel::complex(e + a0 + a1, e + a1 + b0))
                );
            }
        }
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(convolution_label(lab("010"), lab("000")), Ok(lab("010")));
        assert_eq!(convolution_label(lab("111"), lab("111")), Ok(lab("000")));
        let u = lab("101+i011");
        let v = lab("011+i101");
        assert_eq!(convolution_label(u, v), Ok(lab("110+i000")));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative_label(lab("000+i000"), [1, 0, 0]), lab("100+i100"));
        assert_eq!(derivative_label(lab("100"), [1, 0, 0]), lab("000"));
        assert_eq!(derivative_label(lab("110"), [0, 2, 0]), lab("110"));
        assert_eq!(derivative_label(lab("000c+i010"), [0, 0, 1]), lab("000z+i011"));
        assert_eq!(derivative_label(lab("000c"), [0, 0, 0]), lab("000c"));
    }

    #[test]
    fn radial_kernel_is_identity() {
        assert_eq!(radial_kernel_label(lab("100+i011")), lab("100+i011"));
        assert_eq!(radial_kernel_label(lab("000")), lab("000"));
    }

    #[test]
    fn matched_examples() {
        let (a0, b0, a1, b1) = (p("101"), p("011"), p("000"), p("110"));
        let u = TypeTuple::canonical(a0, b0);
        let v = TypeTuple::canonical(a1, b1);
        assert!(matched_check(&u, &v));
        assert!(matched_check(&u, &u));
        // The counterexample pair: u has (e3, e3), v has (0, e3).
        let e3 = Parity::unit(2);
        let u41 = TypeTuple::canonical(e3, e3);
        let v41 = TypeTuple::canonical(Parity::EVEN, e3);
        assert!(!matched_check(&u41, &v41));
        assert_eq!(bilinear_b_label(&u41, &v41), Err(Unmatched));
    }

    #[test]
    fn bilinear_real_diagonal() {
        for a0 in Parity::all() {
            let u = TypeTuple::real_canonical(a0);
            assert_eq!(bilinear_b_label(&u, &u), Ok(TypeTuple::diagonal()));
        }
    }

    #[test]
    fn bilinear_complex_self() {
        for a0 in Parity::all() {
            for b0 in Parity::all() {
                let u = TypeTuple::canonical(a0, b0);
                let expect = TypeTuple(std::array::from_fn(|l| {
                    SymLabel::complex(Parity::unit(l), Parity::unit(l) + a0 + b0)
                }));
                assert_eq!(bilinear_b_label(&u, &u), Ok(expect));
                assert_eq!(
                    g_label(&u, &u),
                    Ok(SymLabel::complex(Parity::EVEN, a0 + b0))
                );
            }
        }
    }

    #[test]
    fn constant_field_has_zero_bilinear_term() {
        let c = TypeTuple([lab("000c"); 3]);
        assert_eq!(bilinear_b_label(&c, &c), Ok(TypeTuple([SymLabel::ZERO; 3])));
    }

    #[test]
    fn label_strings_round_trip() {
        for s in ["101", "101+i010", "000c+i010", "000z", "011+i000c"] {
            assert_eq!(lab(s).to_string(), s);
        }
        assert_eq!(lab("101+i000z").to_string(), "101");
        assert!("102".parse::<SymLabel>().is_err());
        assert!("100c".parse::<SymLabel>().is_err());
        let t: TypeTuple = "(100, 010, 001)".parse().unwrap();
        assert_eq!(t, TypeTuple::diagonal());
        assert_eq!(t.to_string().parse::<TypeTuple>().unwrap(), t);
    }

    #[test]
    fn canonical_params_recovered() {
        let t = TypeTuple::canonical(p("110"), p("001"));
        assert_eq!(t.canonical_params(), Some((p("110"), Some(p("001")))));
        assert_eq!(
            TypeTuple::real_canonical(p("011")).canonical_params(),
            Some((p("011"), None))
        );
        let bad: TypeTuple = "(100, 100, 001)".parse().unwrap();
        assert_eq!(bad.canonical_params(), None);
    }
}
