//! Field dumps: little-endian `f64` pairs `(re, im)`, `x1` fastest, the three
//! components one after another, with a JSON sidecar at `<path>.json`.
//! Half fields store only the planes `j3 = 1 .. n/2 - 1` and carry
//! `"half": "x3-lower"` in the sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Grid3, VectorField};
use crate::halfspace::HalfField;

pub const LAYOUT: &str = "x1-fastest";
pub const DOMAIN: &str = "torus-2pi";
pub const HALF_LOWER: &str = "x3-lower";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sidecar {
    pub n: usize,
    pub components: usize,
    pub layout: String,
    pub domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half: Option<String>,
}

impl Sidecar {
    pub fn full(n: usize) -> Sidecar {
        Sidecar { n, components: 3, layout: LAYOUT.into(), domain: DOMAIN.into(), half: None }
    }

    pub fn half(n: usize) -> Sidecar {
        Sidecar { half: Some(HALF_LOWER.into()), ..Sidecar::full(n) }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn encode(values: impl Iterator<Item = Complex64>) -> Vec<u8> {
    values.flat_map(|v| [v.re.to_le_bytes(), v.im.to_le_bytes()]).flatten().collect()
}

fn decode(bytes: &[u8]) -> Vec<Complex64> {
    bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect()
}

fn write_with_sidecar(path: &Path, bytes: &[u8], sidecar: &Sidecar) -> Result<()> {
    fs::write(path, bytes)?;
    let mut json = serde_json::to_string_pretty(sidecar)?;
    json.push('\n');
    fs::write(sidecar_path(path), json)?;
    Ok(())
}

fn read_sidecar(path: &Path) -> Result<Sidecar> {
    let sc_path = sidecar_path(path);
    let text = fs::read_to_string(&sc_path)
        .map_err(|e| Error::Format(format!("cannot read sidecar {}: {e}", sc_path.display())))?;
    let sc: Sidecar = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", sc_path.display())))?;
    if sc.components != 3 || sc.layout != LAYOUT || sc.domain != DOMAIN {
        return Err(Error::Format(format!(
            "{}: expected 3 components, layout {LAYOUT}, domain {DOMAIN}",
            sc_path.display()
        )));
    }
    Ok(sc)
}

fn read_values(path: &Path, expected: usize) -> Result<Vec<Complex64>> {
    let bytes = fs::read(path)?;
    if bytes.len() != expected * 16 {
        return Err(Error::Format(format!(
            "{}: expected {} bytes, found {}",
            path.display(),
            expected * 16,
            bytes.len()
        )));
    }
    Ok(decode(&bytes))
}

pub fn write_field(path: &Path, u: &VectorField) -> Result<()> {
    let bytes = encode(u.components().iter().flat_map(|g| g.data().iter().copied()));
    write_with_sidecar(path, &bytes, &Sidecar::full(u.n()))
}

pub fn read_field(path: &Path) -> Result<VectorField> {
    let sc = read_sidecar(path)?;
    if sc.half.is_some() {
        return Err(Error::Format(format!("{} holds a half field", path.display())));
    }
    crate::field::check_grid_size(sc.n)?;
    let len = sc.n.pow(3);
    let values = read_values(path, 3 * len)?;
    let comps: Vec<Grid3> =
        values.chunks_exact(len).map(|c| Grid3::from_data(sc.n, c.to_vec())).collect::<Result<_>>()?;
    let [a, b, c]: [Grid3; 3] = comps.try_into().expect("three components");
    VectorField::new(a, b, c)
}

pub fn write_half_field(path: &Path, h: &HalfField) -> Result<()> {
    let bytes = encode((0..3).flat_map(|l| h.comp(l).iter().copied()));
    write_with_sidecar(path, &bytes, &Sidecar::half(h.n()))
}

pub fn read_half_field(path: &Path) -> Result<HalfField> {
    let sc = read_sidecar(path)?;
    if sc.half.as_deref() != Some(HALF_LOWER) {
        return Err(Error::Format(format!("{} is not a {HALF_LOWER} half field", path.display())));
    }
    crate::field::check_grid_size(sc.n)?;
    let len = sc.n * sc.n * HalfField::planes(sc.n);
    let values = read_values(path, 3 * len)?;
    let comps: [Vec<Complex64>; 3] = std::array::from_fn(|l| values[l * len..(l + 1) * len].to_vec());
    HalfField::from_components(sc.n, comps)
}
