//! Packaged experiments: growth of the sup-norm of the analytic projection on
//! trigonometric polynomials, and batch smoothness classification.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circle_fourier::{classify_smoothness, synthesize, CircleGrid, LaurentSpectrum, SmoothnessReport};
use crate::error::{Error, Result};
use crate::io::{read_json, spectrum_from_json};
use crate::numerics::{fit_line, LineFit};

/// Largest degree accepted by [`riesz_norm_experiment`].
pub const MAX_RIESZ_DEGREE: usize = 4096;

/// Random unimodular polynomials tried per degree.
pub const RANDOM_TRIALS: usize = 200;

/// Evaluation grids are this many times the degree.
const OVERSAMPLING: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RieszNormRow {
    pub degree: usize,
    pub estimated_norm: f64,
    pub witness_seed: u64,
    /// Ratio reached by the conjugate-kernel witness.
    pub kernel_estimate: f64,
    /// Best ratio over the random family.
    pub random_estimate: f64,
}

/// `max|P f| / max|f|` on the evaluation grid, `P` keeping indices `n >= 0`.
fn projection_ratio(spectrum: &LaurentSpectrum) -> Result<f64> {
    let grid = spectrum.grid();
    let full = synthesize(spectrum, grid)?.sup_norm();
    let analytic = spectrum.map_indexed(|n, c| if n >= 0 { c } else { Complex64::new(0.0, 0.0) });
    let projected = synthesize(&analytic, grid)?.sup_norm();
    Ok(projected / full)
}

/// Sawtooth partial sum `Σ_{k=1}^{m} sin(kθ)/k` shifted by an imaginary
/// constant. The sawtooth stays bounded while its projection picks up the
/// conjugate kernel `Σ e^{ikθ}/(2ik)`, whose value at 0 grows like `ln m / 2`.
fn kernel_witness(m: usize, grid_size: usize) -> Result<f64> {
    let mut saw = LaurentSpectrum::zeros(grid_size)?;
    for k in 1..=m as i64 {
        let a = Complex64::new(0.0, -0.5 / k as f64);
        saw.set(k, a)?;
        saw.set(-k, -a)?;
    }
    let s = synthesize(&saw, saw.grid())?.sup_norm();
    let b: f64 = (1..=m).map(|k| 0.5 / k as f64).sum();
    // maximizes (|t| + b) / sqrt(s² + t²)
    saw.set(0, Complex64::new(0.0, -s * s / b))?;
    projection_ratio(&saw)
}

fn random_witness(m: usize, grid_size: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    for _ in 0..RANDOM_TRIALS {
        let pairs: Vec<(i64, Complex64)> = (-(m as i64)..=m as i64)
            .map(|n| (n, Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU)))
            .collect();
        best = best.max(projection_ratio(&LaurentSpectrum::from_pairs(grid_size, pairs)?)?);
    }
    Ok(best)
}

/// Lower estimates of the sup-norm operator norm of the analytic projection
/// restricted to trigonometric polynomials of degree `<= N/2`, one row per `N`.
pub fn riesz_norm_experiment(degrees: &[usize], seed: u64) -> Result<Vec<RieszNormRow>> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted
        .into_iter()
        .map(|degree| {
            if !degree.is_power_of_two() || !(2..=MAX_RIESZ_DEGREE).contains(&degree) {
                return Err(Error::Argument(format!(
                    "degree {degree} must be a power of two in [2, {MAX_RIESZ_DEGREE}]"
                )));
            }
            let m = degree / 2;
            let grid_size = OVERSAMPLING * degree;
            CircleGrid::new(grid_size)?;
            let witness_seed = seed.wrapping_add(degree as u64);
            let kernel_estimate = kernel_witness(m, grid_size)?;
            let random_estimate = random_witness(m, grid_size, witness_seed)?;
            // constants are fixed by P, so 1 is always attained
            let estimated_norm = kernel_estimate.max(random_estimate).max(1.0);
            Ok(RieszNormRow {
                degree,
                estimated_norm,
                witness_seed,
                kernel_estimate,
                random_estimate,
            })
        })
        .collect()
}

/// Least-squares fit of the estimated norm against `ln N`.
pub fn riesz_growth_fit(rows: &[RieszNormRow]) -> Option<LineFit> {
    let xs: Vec<f64> = rows.iter().map(|r| (r.degree as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.estimated_norm).collect();
    fit_line(&xs, &ys)
}

/// Fixed 17-significant-digit rendering used in every table.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn riesz_csv(rows: &[RieszNormRow]) -> String {
    let mut out = String::from("degree,estimated_norm,witness_seed,kernel_estimate,random_estimate\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.degree,
            fmt_f64(r.estimated_norm),
            r.witness_seed,
            fmt_f64(r.kernel_estimate),
            fmt_f64(r.random_estimate)
        );
    }
    out
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub file: String,
    pub outcome: std::result::Result<SmoothnessReport, String>,
}

/// Classifies every regular file in `dir`, ordered by file name. Unreadable
/// files produce error rows and do not stop the sweep.
pub fn classify_sweep(dir: &Path) -> Result<Vec<SweepRow>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files
        .into_iter()
        .map(|path| {
            let file = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let outcome = read_json(&path)
                .and_then(spectrum_from_json)
                .and_then(|s| classify_smoothness(&s))
                .map_err(|e| e.to_string());
            SweepRow { file, outcome }
        })
        .collect())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("file,decay_class,exponent,fit_quality,error\n");
    for row in rows {
        let line = match &row.outcome {
            Ok(r) => format!(
                "{},{},{},{},",
                csv_field(&row.file),
                r.decay_class.as_str(),
                r.estimated_exponent.map(fmt_f64).unwrap_or_default(),
                r.fit_quality.map(fmt_f64).unwrap_or_default()
            ),
            Err(e) => format!("{},error,,,{}", csv_field(&row.file), csv_field(e)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_eight_exceeds_one() {
        let rows = riesz_norm_experiment(&[8], 0).unwrap();
        assert!(rows[0].estimated_norm > 1.0);
        assert!(rows[0].estimated_norm >= rows[0].kernel_estimate);
    }

    #[test]
    fn bad_degrees_are_rejected() {
        assert!(riesz_norm_experiment(&[12], 0).is_err());
        assert!(riesz_norm_experiment(&[8192], 0).is_err());
    }

    #[test]
    fn kernel_witness_matches_closed_form() {
        // ratio = sqrt(1 + b²/s²) when the sup of |P f| sits at θ = 0
        let m = 16;
        let grid_size = 8 * 32;
        let mut saw = LaurentSpectrum::zeros(grid_size).unwrap();
        for k in 1..=m as i64 {
            saw.set(k, Complex64::new(0.0, -0.5 / k as f64)).unwrap();
            saw.set(-k, Complex64::new(0.0, 0.5 / k as f64)).unwrap();
        }
        let s = synthesize(&saw, saw.grid()).unwrap().sup_norm();
        let b: f64 = (1..=m).map(|k| 0.5 / k as f64).sum();
        let r = kernel_witness(m, grid_size).unwrap();
        assert!((r - (1.0 + b * b / (s * s)).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn csv_uses_fixed_precision() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        let rows = riesz_norm_experiment(&[8], 3).unwrap();
        let csv = riesz_csv(&rows);
        assert!(csv.starts_with("degree,estimated_norm"));
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn csv_fields_are_quoted() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
