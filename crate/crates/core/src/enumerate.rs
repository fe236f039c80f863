//! Exhaustive classification of symmetric solenoidal vector fields.
//!
//! Divergence-free symmetric fields fall into a small number of label
//! patterns ("cases"), each parametrised by shifts `alpha0, beta0` and by the
//! components `tau, tau'` that are constant. Generating every case and
//! merging duplicates yields 30 real and 984 complex kinds.
//!
//! Two generated tuples describe the same kind when they are equal, or when
//! dropping the constant markers of one turns it into a tuple of the
//! all-non-constant family (`m(e_l+alpha0) + i m(e_l+beta0)`): a constant
//! part sitting exactly where that family would put an even part adds no new
//! symmetry pattern. See [`kind_key`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::symtype::{Parity, Part, SymLabel, TypeTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// Real, no constant component.
    R1,
    /// Real, exactly one constant component.
    R2,
    /// Real constant field.
    R3,
    /// Complex, no constant real or imaginary part.
    C0,
    /// Real part of one component constant.
    Ci,
    /// Imaginary part of one component constant.
    Cii,
    /// Both parts of one component constant.
    Ciii,
    /// Real part of `tau` and imaginary part of `tau' != tau` constant.
    Civ,
    /// All real parts constant.
    Cv,
    /// All imaginary parts constant.
    Cvi,
    /// Constant field.
    Cvii,
}

impl CaseTag {
    pub const REAL: [CaseTag; 3] = [CaseTag::R1, CaseTag::R2, CaseTag::R3];
    pub const COMPLEX: [CaseTag; 8] = [
        CaseTag::C0,
        CaseTag::Ci,
        CaseTag::Cii,
        CaseTag::Ciii,
        CaseTag::Civ,
        CaseTag::Cv,
        CaseTag::Cvi,
        CaseTag::Cvii,
    ];
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CaseTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::REAL
            .iter()
            .chain(CaseTag::COMPLEX.iter())
            .copied()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| format!("unknown case tag {s:?}"))
    }
}

/// Free parameters of one generated tuple. Axes are zero-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseParams {
    pub tau: Option<usize>,
    pub tau2: Option<usize>,
    pub alpha0: Option<Parity>,
    pub beta0: Option<Parity>,
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(t) = self.tau {
            parts.push(format!("tau={}", t + 1));
        }
        if let Some(t) = self.tau2 {
            parts.push(format!("tau'={}", t + 1));
        }
        if let Some(a) = self.alpha0 {
            parts.push(format!("alpha0={a}"));
        }
        if let Some(b) = self.beta0 {
            parts.push(format!("beta0={b}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// The case (and parameters) that first produced a kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub case: CaseTag,
    pub params: CaseParams,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.case)?;
        let p = self.params.to_string();
        if !p.is_empty() {
            write!(f, "[{p}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub tuple: TypeTuple,
    pub params: CaseParams,
}

/// `m(e_l + shift)` on every component, with `constant` components replaced
/// by constants.
fn part_pattern(shift: Option<Parity>, constant: &[usize]) -> [Part; 3] {
    std::array::from_fn(|l| {
        if constant.contains(&l) {
            Part::Const
        } else {
            Part::Sym(Parity::unit(l) + shift.expect("non-constant part needs a shift"))
        }
    })
}

fn zip_parts(re: [Part; 3], im: [Part; 3]) -> TypeTuple {
    TypeTuple(std::array::from_fn(|l| SymLabel::new(re[l], im[l])))
}

/// Every tuple produced by instantiating the case's free parameters, in a
/// fixed order (`tau`, then `tau'`, then `alpha0`, then `beta0`).
pub fn generate_case(tag: CaseTag) -> Vec<Generated> {
    let taus = 0..3usize;
    let shifts = || Parity::all();
    let mut out = Vec::new();
    let mut push = |re: [Part; 3], im: [Part; 3], params: CaseParams| {
        out.push(Generated { tuple: zip_parts(re, im), params });
    };
    let zero = [Part::Zero; 3];
    let all_const = [Part::Const; 3];
    match tag {
        CaseTag::R1 => {
            for a in shifts() {
                push(part_pattern(Some(a), &[]), zero, CaseParams { alpha0: Some(a), ..Default::default() });
            }
        }
        CaseTag::R2 => {
            for t in taus {
                for a in shifts() {
                    let params = CaseParams { tau: Some(t), alpha0: Some(a), ..Default::default() };
                    push(part_pattern(Some(a), &[t]), zero, params);
                }
            }
        }
        CaseTag::R3 => push(all_const, zero, CaseParams::default()),
        CaseTag::C0 => {
            for a in shifts() {
                for b in shifts() {
                    let params = CaseParams { alpha0: Some(a), beta0: Some(b), ..Default::default() };
                    push(part_pattern(Some(a), &[]), part_pattern(Some(b), &[]), params);
                }
            }
        }
        CaseTag::Ci | CaseTag::Cii | CaseTag::Ciii => {
            for t in taus {
                for a in shifts() {
                    for b in shifts() {
                        let params = CaseParams {
                            tau: Some(t),
                            alpha0: Some(a),
                            beta0: Some(b),
                            ..Default::default()
                        };
                        let (re_c, im_c): (&[usize], &[usize]) = match tag {
                            CaseTag::Ci => (&[t], &[]),
                            CaseTag::Cii => (&[], &[t]),
                            _ => (&[t], &[t]),
                        };
                        push(part_pattern(Some(a), re_c), part_pattern(Some(b), im_c), params);
                    }
                }
            }
        }
        CaseTag::Civ => {
            for t in 0..3 {
                for t2 in (0..3).filter(|&t2| t2 != t) {
                    for a in shifts() {
                        for b in shifts() {
                            let params = CaseParams {
                                tau: Some(t),
                                tau2: Some(t2),
                                alpha0: Some(a),
                                beta0: Some(b),
                            };
                            push(part_pattern(Some(a), &[t]), part_pattern(Some(b), &[t2]), params);
                        }
                    }
                }
            }
        }
        CaseTag::Cv => {
            for b in shifts() {
                push(all_const, part_pattern(Some(b), &[]), CaseParams { beta0: Some(b), ..Default::default() });
            }
        }
        CaseTag::Cvi => {
            for a in shifts() {
                push(part_pattern(Some(a), &[]), all_const, CaseParams { alpha0: Some(a), ..Default::default() });
            }
        }
        CaseTag::Cvii => push(all_const, all_const, CaseParams::default()),
    }
    out
}

/// Identity of a kind. A tuple whose constant parts, read as even parts,
/// give a tuple of the fully non-constant family is that family's kind;
/// otherwise the tuple (with its constant markers) is its own kind.
pub fn kind_key(t: &TypeTuple) -> TypeTuple {
    let stripped = TypeTuple(t.0.map(|l| SymLabel::new(l.re.forget_constant(), l.im.forget_constant())));
    if stripped.canonical_params().is_some() {
        stripped
    } else {
        *t
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CaseCount {
    /// Tuples generated by the case.
    pub raw: usize,
    /// Tuples that were not produced by an earlier case.
    pub new: usize,
    /// Tuples that duplicate an earlier case.
    pub overlap: usize,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub tuples: BTreeSet<TypeTuple>,
    pub by_case: BTreeMap<CaseTag, CaseCount>,
    /// Which earlier case each overlapping tuple collided with, per case.
    pub overlaps_with: BTreeMap<CaseTag, BTreeMap<CaseTag, usize>>,
    pub witnesses: BTreeMap<TypeTuple, Witness>,
    pub total: usize,
}

impl Census {
    fn build(cases: &[CaseTag]) -> Census {
        let mut witnesses: BTreeMap<TypeTuple, Witness> = BTreeMap::new();
        let mut by_case = BTreeMap::new();
        let mut overlaps_with: BTreeMap<CaseTag, BTreeMap<CaseTag, usize>> = BTreeMap::new();
        for &case in cases {
            let generated = generate_case(case);
            let mut count = CaseCount { raw: generated.len(), ..Default::default() };
            for g in generated {
                let key = kind_key(&g.tuple);
                match witnesses.get(&key) {
                    Some(w) if w.case != case => {
                        count.overlap += 1;
                        *overlaps_with.entry(case).or_default().entry(w.case).or_default() += 1;
                    }
                    // A repeat inside the same case is not an overlap.
                    Some(_) => {}
                    None => {
                        witnesses.insert(key, Witness { case, params: g.params });
                        count.new += 1;
                    }
                }
            }
            by_case.insert(case, count);
        }
        let tuples: BTreeSet<TypeTuple> = witnesses.keys().copied().collect();
        Census { total: tuples.len(), tuples, by_case, overlaps_with, witnesses }
    }

    /// New-contribution vector in case order.
    pub fn new_contributions(&self) -> Vec<usize> {
        self.by_case.values().map(|c| c.new).collect()
    }

    pub fn raw_size(&self) -> usize {
        self.by_case.values().map(|c| c.raw).sum()
    }

    pub fn contains(&self, t: &TypeTuple) -> bool {
        self.tuples.contains(&kind_key(t))
    }
}

pub fn census_real() -> Census {
    Census::build(&CaseTag::REAL)
}

pub fn census_complex() -> Census {
    Census::build(&CaseTag::COMPLEX)
}

/// Membership test against the real census (for tuples with no imaginary
/// parts) or the complex census.
pub fn admissible(t: &TypeTuple) -> (bool, Option<Witness>) {
    static REAL: OnceLock<Census> = OnceLock::new();
    static COMPLEX: OnceLock<Census> = OnceLock::new();
    let census = if t.is_real() {
        REAL.get_or_init(census_real)
    } else {
        COMPLEX.get_or_init(census_complex)
    };
    let w = census.witnesses.get(&kind_key(t)).copied();
    (w.is_some(), w)
}

/// Outcome of the flat recount.
#[derive(Clone, Debug)]
pub struct OracleCount {
    pub multiset_size: usize,
    pub distinct: Vec<TypeTuple>,
}

impl OracleCount {
    pub fn total(&self) -> usize {
        self.distinct.len()
    }
}

/// Recount a set of cases by materialising every generated tuple into one
/// flat list and counting distinct kinds, with no per-case bookkeeping.
/// The non-constant family is rebuilt from its defining formula and
/// membership is tested by search, independently of [`kind_key`].
fn flat_recount(cases: &[CaseTag], complex: bool) -> OracleCount {
    let family: Vec<TypeTuple> = if complex {
        Parity::all()
            .flat_map(|a| Parity::all().map(move |b| TypeTuple::canonical(a, b)))
            .collect()
    } else {
        Parity::all().map(TypeTuple::real_canonical).collect()
    };
    let as_even = |part: Part| if part == Part::Const { Part::Sym(Parity::EVEN) } else { part };
    let flat: Vec<TypeTuple> = cases
        .iter()
        .flat_map(|&c| generate_case(c))
        .map(|g| g.tuple)
        .collect();
    let mut keys: Vec<TypeTuple> = flat
        .iter()
        .map(|t| {
            let relaxed = TypeTuple(t.0.map(|l| SymLabel::new(as_even(l.re), as_even(l.im))));
            if family.contains(&relaxed) {
                relaxed
            } else {
                *t
            }
        })
        .collect();
    keys.sort();
    keys.dedup();
    OracleCount { multiset_size: flat.len(), distinct: keys }
}

pub fn dedupe_oracle() -> OracleCount {
    flat_recount(&CaseTag::COMPLEX, true)
}

pub fn dedupe_oracle_real() -> OracleCount {
    flat_recount(&CaseTag::REAL, false)
}
