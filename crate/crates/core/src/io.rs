//! JSON file formats.
//!
//! * samples: `{"n": N, "grid": "uniform-theta", "values": [[re, im], ...]}`
//! * spectra: `{"n": N, "coeffs": {"<index>": [re, im], ...}}`, zeros omitted,
//!   indices written in increasing order
//! * domains: `{"coeffs": [[re, im], ...], "offset": [re, im]}`
//! * homeomorphisms: `{"theta": [...], "psi": [...], "orientation": "preserving" | "reversing"}`

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::circle_fourier::{BoundarySamples, CircleGrid, LaurentSpectrum};
use crate::error::{Error, Result};
use crate::jordan_domain::{CircleHomeomorphism, JordanDomain, Orientation};
use crate::laurent_split::{DiscFunction, ExteriorFunction};

pub const GRID_KIND: &str = "uniform-theta";

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn unpair(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Serialize, Deserialize)]
struct SampleFile {
    n: usize,
    grid: String,
    values: Vec<[f64; 2]>,
}

pub fn samples_to_json(samples: &BoundarySamples) -> Value {
    serde_json::to_value(SampleFile {
        n: samples.grid().size(),
        grid: GRID_KIND.to_string(),
        values: samples.values().iter().copied().map(pair).collect(),
    })
    .expect("sample file serializes")
}

pub fn samples_from_json(value: Value) -> Result<BoundarySamples> {
    let file: SampleFile = serde_json::from_value(value)?;
    if file.grid != GRID_KIND {
        return Err(Error::Format(format!("unsupported grid kind `{}`", file.grid)));
    }
    if file.values.len() != file.n {
        return Err(Error::Format(format!(
            "sample file declares n = {} but holds {} values",
            file.n,
            file.values.len()
        )));
    }
    BoundarySamples::new(
        CircleGrid::new(file.n)?,
        file.values.into_iter().map(unpair).collect(),
    )
}

fn coeffs_to_json(n: usize, pairs: impl Iterator<Item = (i64, Complex64)>) -> Value {
    let mut coeffs = Map::new();
    for (idx, c) in pairs {
        if c.re != 0.0 || c.im != 0.0 {
            coeffs.insert(idx.to_string(), serde_json::json!(pair(c)));
        }
    }
    serde_json::json!({ "n": n, "coeffs": coeffs })
}

fn coeffs_from_json(value: Value) -> Result<(usize, Vec<(i64, Complex64)>)> {
    #[derive(Deserialize)]
    struct SpectrumFile {
        n: usize,
        coeffs: Map<String, Value>,
    }
    let file: SpectrumFile = serde_json::from_value(value)?;
    let mut out = Vec::with_capacity(file.coeffs.len());
    for (k, v) in file.coeffs {
        let idx: i64 = k
            .parse()
            .map_err(|_| Error::Format(format!("coefficient key `{k}` is not an integer")))?;
        let p: [f64; 2] = serde_json::from_value(v)?;
        out.push((idx, unpair(p)));
    }
    Ok((file.n, out))
}

pub fn spectrum_to_json(s: &LaurentSpectrum) -> Value {
    coeffs_to_json(s.grid_size(), s.iter())
}

pub fn spectrum_from_json(value: Value) -> Result<LaurentSpectrum> {
    let (n, pairs) = coeffs_from_json(value)?;
    LaurentSpectrum::from_pairs(n, pairs)
}

pub fn disc_to_json(f: &DiscFunction) -> Value {
    coeffs_to_json(f.grid_size(), f.iter())
}

pub fn disc_from_json(value: Value) -> Result<DiscFunction> {
    let (n, pairs) = coeffs_from_json(value)?;
    DiscFunction::from_pairs(n, pairs)
}

pub fn exterior_to_json(f: &ExteriorFunction) -> Value {
    coeffs_to_json(f.grid_size(), f.iter())
}

pub fn exterior_from_json(value: Value) -> Result<ExteriorFunction> {
    let (n, pairs) = coeffs_from_json(value)?;
    ExteriorFunction::from_pairs(n, pairs)
}

#[derive(Serialize, Deserialize)]
struct DomainFile {
    coeffs: Vec<[f64; 2]>,
    #[serde(default)]
    offset: [f64; 2],
}

pub fn domain_to_json(d: &JordanDomain) -> Value {
    serde_json::to_value(DomainFile {
        coeffs: d.map_coefficients().iter().copied().map(pair).collect(),
        offset: pair(d.offset()),
    })
    .expect("domain file serializes")
}

pub fn domain_from_json(value: Value) -> Result<JordanDomain> {
    let file: DomainFile = serde_json::from_value(value)?;
    JordanDomain::new(
        file.coeffs.into_iter().map(unpair).collect(),
        unpair(file.offset),
    )
}

#[derive(Serialize, Deserialize)]
struct HomeomorphismFile {
    theta: Vec<f64>,
    psi: Vec<f64>,
    orientation: Orientation,
}

pub fn homeomorphism_to_json(h: &CircleHomeomorphism) -> Value {
    serde_json::to_value(HomeomorphismFile {
        theta: h.theta().to_vec(),
        psi: h.psi().to_vec(),
        orientation: h.orientation(),
    })
    .expect("homeomorphism file serializes")
}

pub fn homeomorphism_from_json(value: Value) -> Result<CircleHomeomorphism> {
    let file: HomeomorphismFile = serde_json::from_value(value)?;
    CircleHomeomorphism::new(file.theta, file.psi, file.orientation)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spectrum_file_omits_zeros_and_orders_indices() {
        let s = LaurentSpectrum::from_pairs(16, [(3, c(1.0, 0.0)), (-2, c(0.0, 2.0)), (0, c(0.5, 0.0))]).unwrap();
        let v = spectrum_to_json(&s);
        let keys: Vec<&String> = v["coeffs"].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["-2", "0", "3"]);
        assert_eq!(v["n"], 16);
    }

    #[test]
    fn sample_file_length_mismatch_is_rejected() {
        let v = serde_json::json!({"n": 4, "grid": "uniform-theta", "values": [[1.0, 0.0]]});
        assert!(matches!(samples_from_json(v), Err(Error::Format(_))));
        let v = serde_json::json!({"n": 1, "grid": "chebyshev", "values": [[1.0, 0.0]]});
        assert!(matches!(samples_from_json(v), Err(Error::Format(_))));
    }

    #[test]
    fn disc_file_rejects_negative_index() {
        let v = serde_json::json!({"n": 8, "coeffs": {"-1": [1.0, 0.0]}});
        assert!(disc_from_json(v.clone()).is_err());
        assert!(exterior_from_json(v).is_ok());
    }

    #[test]
    fn domain_file_enforces_margin() {
        let v = serde_json::json!({"coeffs": [[1.0, 0.0], [0.5, 0.0]], "offset": [0.0, 0.0]});
        assert!(matches!(domain_from_json(v), Err(Error::Univalence { .. })));
        let v = serde_json::json!({"coeffs": [[1.0, 0.0], [0.2, 0.0]], "offset": [1.0, -1.0]});
        let d = domain_from_json(v).unwrap();
        assert_eq!(d.offset(), c(1.0, -1.0));
    }

    #[test]
    fn homeomorphism_file_round_trip() {
        let h = CircleHomeomorphism::reflection(CircleGrid::new(8).unwrap());
        let back = homeomorphism_from_json(homeomorphism_to_json(&h)).unwrap();
        assert_eq!(back, h);
        assert_eq!(homeomorphism_to_json(&h)["orientation"], "reversing");
    }

    proptest! {
        #[test]
        fn spectrum_file_round_trip(
            coeffs in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 32)
        ) {
            let s = LaurentSpectrum::from_pairs(32, coeffs.iter().enumerate().map(|(p, (a, b))| (p as i64 - 16, c(*a, *b)))).unwrap();
            let back = spectrum_from_json(spectrum_to_json(&s)).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn sample_file_round_trip(values in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 16)) {
            let s = BoundarySamples::new(CircleGrid::new(16).unwrap(), values.iter().map(|(a, b)| c(*a, *b)).collect()).unwrap();
            let text = serde_json::to_string(&samples_to_json(&s)).unwrap();
            let back = samples_from_json(serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
