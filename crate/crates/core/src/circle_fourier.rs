//! Uniform grids on the unit circle, discrete Fourier analysis and synthesis,
//! coefficient seminorms, spectral differentiation in θ and a coefficient
//! decay classifier.
//!
//! A [`LaurentSpectrum`] on a grid of size `N` stores the coefficients with
//! indices `n ∈ [-N/2, N/2)`. The unmatched index `-N/2` is always zero after
//! analysis so that differentiation stays skew-symmetric.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numerics::fit_line;

/// Smallest grid accepted anywhere in the crate.
pub const MIN_GRID: usize = 4;

/// Largest seminorm order; keeps `|n|^l` finite over every supported grid.
pub const MAX_SEMINORM_ORDER: u32 = 64;

/// Tail coefficients below this fraction of the largest coefficient count as zero.
pub const TRIG_POLY_CUTOFF: f64 = 1e-13;

/// Fitted exponents below this value are reported as "no decay".
pub const SLOW_EXPONENT: f64 = 0.25;

/// Classification needs at least this many coefficients.
pub const MIN_CLASSIFY_SIZE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CircleGrid {
    size: usize,
}

impl CircleGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size < MIN_GRID || !size.is_power_of_two() {
            return Err(Error::Sizing {
                size,
                min: MIN_GRID,
            });
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// θ_j = 2πj/N.
    pub fn node(&self, j: usize) -> f64 {
        TAU * j as f64 / self.size as f64
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.size).map(move |j| self.node(j))
    }

    /// e^{iθ_j} for every node.
    pub fn circle_points(&self) -> Vec<Complex64> {
        self.nodes().map(|t| Complex64::from_polar(1.0, t)).collect()
    }

    /// Lowest and one-past-highest coefficient index.
    pub fn index_range(&self) -> (i64, i64) {
        let half = (self.size / 2) as i64;
        (-half, half)
    }
}

/// Complex samples of a function at the nodes of a [`CircleGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySamples {
    grid: CircleGrid,
    values: Vec<Complex64>,
}

impl BoundarySamples {
    pub fn new(grid: CircleGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::Length {
                expected: grid.size(),
                got: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(θ_j)`.
    pub fn from_fn(grid: CircleGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid, grid.nodes().map(f).collect())
    }

    /// Samples `f(e^{iθ_j})`.
    pub fn from_circle_fn(grid: CircleGrid, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::new(grid, grid.circle_points().into_iter().map(f).collect())
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest pointwise distance to `other`; grids must match.
    pub fn max_distance(&self, other: &BoundarySamples) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Length {
                expected: self.grid.size(),
                got: other.grid.size(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn conj(&self) -> BoundarySamples {
        BoundarySamples {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &BoundarySamples,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<BoundarySamples> {
        if self.grid != other.grid {
            return Err(Error::Length {
                expected: self.grid.size(),
                got: other.grid.size(),
            });
        }
        BoundarySamples::new(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        )
    }
}

/// Coefficients `f̂(n)` for `n ∈ [-N/2, N/2)`.
#[derive(Clone, PartialEq)]
pub struct LaurentSpectrum {
    grid_size: usize,
    // position p holds index p - N/2
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for LaurentSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<_> = self.iter().filter(|(_, c)| *c != Complex64::new(0.0, 0.0)).collect();
        f.debug_struct("LaurentSpectrum")
            .field("grid_size", &self.grid_size)
            .field("nonzero", &nonzero)
            .finish()
    }
}

impl LaurentSpectrum {
    pub fn zeros(grid_size: usize) -> Result<Self> {
        CircleGrid::new(grid_size)?;
        Ok(Self {
            grid_size,
            coeffs: vec![Complex64::new(0.0, 0.0); grid_size],
        })
    }

    /// Builds a spectrum from `(index, value)` pairs; repeated indices add.
    pub fn from_pairs(
        grid_size: usize,
        pairs: impl IntoIterator<Item = (i64, Complex64)>,
    ) -> Result<Self> {
        let mut s = Self::zeros(grid_size)?;
        for (n, c) in pairs {
            let p = s.position(n)?;
            s.coeffs[p] += c;
        }
        Ok(s)
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn grid(&self) -> CircleGrid {
        CircleGrid {
            size: self.grid_size,
        }
    }

    pub fn min_index(&self) -> i64 {
        -((self.grid_size / 2) as i64)
    }

    /// One past the largest admissible index.
    pub fn end_index(&self) -> i64 {
        (self.grid_size / 2) as i64
    }

    fn position(&self, n: i64) -> Result<usize> {
        if n < self.min_index() || n >= self.end_index() {
            return Err(Error::IndexRange {
                index: n,
                lo: self.min_index(),
                hi: self.end_index(),
            });
        }
        Ok((n - self.min_index()) as usize)
    }

    /// Coefficient at `n`; zero outside the stored range.
    pub fn get(&self, n: i64) -> Complex64 {
        match self.position(n) {
            Ok(p) => self.coeffs[p],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn set(&mut self, n: i64, value: Complex64) -> Result<()> {
        let p = self.position(n)?;
        self.coeffs[p] = value;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let lo = self.min_index();
        self.coeffs.iter().enumerate().map(move |(p, c)| (lo + p as i64, *c))
    }

    /// Applies `f(n, c)` to every coefficient.
    pub fn map_indexed(&self, f: impl Fn(i64, Complex64) -> Complex64) -> LaurentSpectrum {
        LaurentSpectrum {
            grid_size: self.grid_size,
            coeffs: self.iter().map(|(n, c)| f(n, c)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance to `other` over the union of both ranges.
    pub fn max_distance(&self, other: &LaurentSpectrum) -> f64 {
        let lo = self.min_index().min(other.min_index());
        let hi = self.end_index().max(other.end_index());
        (lo..hi)
            .map(|n| (self.get(n) - other.get(n)).norm())
            .fold(0.0, f64::max)
    }

    /// Copy on a larger grid with the same coefficients.
    pub fn zero_padded(&self, grid_size: usize) -> Result<LaurentSpectrum> {
        if grid_size < self.grid_size {
            return Err(Error::Aliasing {
                spectrum: self.grid_size,
                grid: grid_size,
            });
        }
        LaurentSpectrum::from_pairs(grid_size, self.iter().filter(|(_, c)| c.norm() != 0.0))
    }
}

/// Discrete Fourier coefficients `(1/N) Σ_j f(θ_j) e^{-inθ_j}` on the symmetric range.
pub fn analyze(samples: &BoundarySamples) -> Result<LaurentSpectrum> {
    let n = samples.values.len();
    CircleGrid::new(n)?;
    let mut buf = samples.values.clone();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let half = n / 2;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (k, v) in buf.into_iter().enumerate() {
        if k == half {
            // Nyquist index -N/2 has no partner; dropped
            continue;
        }
        let idx = if k < half { k as i64 } else { k as i64 - n as i64 };
        coeffs[(idx + half as i64) as usize] = v * scale;
    }
    Ok(LaurentSpectrum {
        grid_size: n,
        coeffs,
    })
}

/// Values `Σ_n f̂(n) e^{inθ_j}` on `grid`.
pub fn synthesize(spectrum: &LaurentSpectrum, grid: CircleGrid) -> Result<BoundarySamples> {
    let n = grid.size();
    if n < spectrum.grid_size {
        return Err(Error::Aliasing {
            spectrum: spectrum.grid_size,
            grid: n,
        });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (idx, c) in spectrum.iter() {
        let k = idx.rem_euclid(n as i64) as usize;
        buf[k] = c;
    }
    FftPlanner::<f64>::new().plan_fft_inverse(n).process(&mut buf);
    BoundarySamples::new(grid, buf)
}

/// Synthesis on the spectrum's own grid.
pub fn synthesize_native(spectrum: &LaurentSpectrum) -> Result<BoundarySamples> {
    synthesize(spectrum, spectrum.grid())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeminormFamily {
    /// `sup_n |n^l f̂(n)|`
    Sup,
    /// `|f̂(0)| + Σ_{n≠0} |n^l f̂(n)|`
    Sum,
    /// `max_j |d^l f/dθ^l (θ_j)|`
    UniformDerivative,
}

fn weight(n: i64, l: u32) -> f64 {
    if l == 0 {
        1.0
    } else {
        (n.unsigned_abs() as f64).powi(l as i32)
    }
}

pub fn seminorm(spectrum: &LaurentSpectrum, l: u32, family: SeminormFamily) -> Result<f64> {
    if l > MAX_SEMINORM_ORDER {
        return Err(Error::SeminormOrder(l));
    }
    Ok(match family {
        SeminormFamily::Sup => spectrum
            .iter()
            .map(|(n, c)| weight(n, l) * c.norm())
            .fold(0.0, f64::max),
        SeminormFamily::Sum => spectrum
            .iter()
            .map(|(n, c)| if n == 0 { c.norm() } else { weight(n, l) * c.norm() })
            .sum(),
        SeminormFamily::UniformDerivative => {
            synthesize_native(&differentiate(spectrum, l))?.sup_norm()
        }
    })
}

/// Multiplies `c` by `i^k` with component swaps only.
pub(crate) fn times_i_pow(c: Complex64, k: u32) -> Complex64 {
    match k % 4 {
        0 => c,
        1 => Complex64::new(-c.im, c.re),
        2 => Complex64::new(-c.re, -c.im),
        _ => Complex64::new(c.im, -c.re),
    }
}

/// `k`-th derivative in θ: coefficient `n` is multiplied by `(in)^k`.
pub fn differentiate(spectrum: &LaurentSpectrum, k: u32) -> LaurentSpectrum {
    if k == 0 {
        return spectrum.clone();
    }
    spectrum.map_indexed(|n, c| times_i_pow(c, k) * (n as f64).powi(k as i32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayClass {
    TrigPolynomial,
    SuperPolynomial,
    PowerLaw,
    Slow,
}

impl DecayClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecayClass::TrigPolynomial => "trig-polynomial",
            DecayClass::SuperPolynomial => "super-polynomial",
            DecayClass::PowerLaw => "power-law",
            DecayClass::Slow => "slow",
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SmoothnessReport {
    pub decay_class: DecayClass,
    /// Present only for [`DecayClass::PowerLaw`].
    pub estimated_exponent: Option<f64>,
    /// R² of the winning tail fit; absent when no fit was made.
    pub fit_quality: Option<f64>,
    /// `(l, sup_n |n^l f̂(n)|)` for l = 0..=8.
    pub tail_norms: Vec<(u32, f64)>,
}

const TAIL_NORM_ORDERS: u32 = 8;

/// Classifies how fast `|f̂(n)|` decays on the tail `|n| >= N/8`.
///
/// The tail is fitted twice by least squares: `log|f̂(n)|` against `log|n|`
/// (power law) and against `|n|` (geometric). The geometric fit winning means
/// decay faster than every power.
pub fn classify_smoothness(spectrum: &LaurentSpectrum) -> Result<SmoothnessReport> {
    let size = spectrum.grid_size();
    if size < MIN_CLASSIFY_SIZE {
        return Err(Error::TooFewCoefficients {
            needed: MIN_CLASSIFY_SIZE,
            got: size,
        });
    }
    let scale = spectrum.max_abs();
    if scale == 0.0 {
        return Ok(SmoothnessReport {
            decay_class: DecayClass::TrigPolynomial,
            estimated_exponent: None,
            fit_quality: None,
            tail_norms: Vec::new(),
        });
    }
    let tail_norms = (0..=TAIL_NORM_ORDERS)
        .map(|l| seminorm(spectrum, l, SeminormFamily::Sup).map(|v| (l, v)))
        .collect::<Result<Vec<_>>>()?;

    let start = (size / 8) as i64;
    let floor = TRIG_POLY_CUTOFF * scale;
    let tail: Vec<(f64, f64)> = spectrum
        .iter()
        .filter(|(n, _)| n.abs() >= start)
        .map(|(n, c)| (n.abs() as f64, c.norm()))
        .collect();
    let tail_max = tail.iter().map(|t| t.1).fold(0.0, f64::max);
    let report = |decay_class, estimated_exponent, fit_quality| SmoothnessReport {
        decay_class,
        estimated_exponent,
        fit_quality,
        tail_norms: tail_norms.clone(),
    };
    if tail_max < floor {
        return Ok(report(DecayClass::TrigPolynomial, None, None));
    }

    let points: Vec<(f64, f64)> = tail.into_iter().filter(|t| t.1 >= floor).collect();
    let mut distinct: Vec<f64> = points.iter().map(|p| p.0).collect();
    distinct.dedup();
    if distinct.len() < 3 {
        // drops to roundoff inside the window
        return Ok(report(DecayClass::SuperPolynomial, None, None));
    }
    let log_mag: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let abs_n: Vec<f64> = points.iter().map(|p| p.0).collect();
    let log_n: Vec<f64> = abs_n.iter().map(|x| x.ln()).collect();
    let (Some(power), Some(geometric)) = (fit_line(&log_n, &log_mag), fit_line(&abs_n, &log_mag))
    else {
        return Ok(report(DecayClass::Slow, None, None));
    };
    let exponent = -power.slope;
    if exponent < SLOW_EXPONENT && geometric.slope >= 0.0 {
        return Ok(report(DecayClass::Slow, None, Some(power.r_squared)));
    }
    if geometric.r_squared > power.r_squared {
        Ok(report(
            DecayClass::SuperPolynomial,
            None,
            Some(geometric.r_squared),
        ))
    } else if exponent < SLOW_EXPONENT {
        Ok(report(DecayClass::Slow, None, Some(power.r_squared)))
    } else {
        Ok(report(
            DecayClass::PowerLaw,
            Some(exponent),
            Some(power.r_squared),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(n: usize) -> CircleGrid {
        CircleGrid::new(n).unwrap()
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(matches!(CircleGrid::new(12), Err(Error::Sizing { .. })));
        assert!(matches!(CircleGrid::new(2), Err(Error::Sizing { .. })));
        assert!(CircleGrid::new(4).is_ok());
    }

    #[test]
    fn grid_nodes_are_exact_multiples() {
        let g = grid(16);
        let nodes: Vec<f64> = g.nodes().collect();
        for (j, t) in nodes.iter().enumerate() {
            assert_eq!(*t, TAU * j as f64 / 16.0);
        }
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(*nodes.last().unwrap() < TAU);
    }

    #[test]
    fn samples_reject_wrong_length_and_nan() {
        assert!(BoundarySamples::new(grid(4), vec![c(0.0, 0.0); 3]).is_err());
        let mut v = vec![c(0.0, 0.0); 4];
        v[2] = c(f64::NAN, 0.0);
        assert!(matches!(BoundarySamples::new(grid(4), v), Err(Error::NonFinite(2))));
    }

    #[test]
    fn analyze_constant() {
        let s = BoundarySamples::from_fn(grid(16), |_| c(1.0, 0.0)).unwrap();
        let spec = analyze(&s).unwrap();
        for (n, v) in spec.iter() {
            let expected = if n == 0 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(v.re, expected, epsilon = 1e-15);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn analyze_single_mode() {
        let s = BoundarySamples::from_fn(grid(16), |t| Complex64::from_polar(1.0, t)).unwrap();
        let spec = analyze(&s).unwrap();
        for (n, v) in spec.iter() {
            let expected = if n == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) };
            assert!((v - expected).norm() < 1e-15, "n={n} v={v}");
        }
    }

    #[test]
    fn analyze_cosine() {
        let s = BoundarySamples::from_fn(grid(32), |t| c(2.0 * t.cos(), 0.0)).unwrap();
        let spec = analyze(&s).unwrap();
        assert!((spec.get(1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((spec.get(-1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(spec.max_distance(&LaurentSpectrum::from_pairs(32, [(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]).unwrap()) < 1e-15);
    }

    #[test]
    fn nyquist_index_is_dropped() {
        // e^{i(N/2)θ} = (-1)^j aliases onto the unmatched index
        let s = BoundarySamples::from_fn(grid(8), |t| Complex64::from_polar(1.0, 4.0 * t)).unwrap();
        let spec = analyze(&s).unwrap();
        assert_eq!(spec.get(-4), c(0.0, 0.0));
        assert!(spec.max_abs() < 1e-15);
    }

    #[test]
    fn synthesize_examples() {
        let one = LaurentSpectrum::from_pairs(8, [(0, c(1.0, 0.0))]).unwrap();
        let s = synthesize(&one, grid(8)).unwrap();
        assert!(s.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));

        let cos2 = LaurentSpectrum::from_pairs(8, [(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]).unwrap();
        let s = synthesize(&cos2, grid(16)).unwrap();
        for (t, v) in grid(16).nodes().zip(s.values()) {
            assert!((v - c(2.0 * t.cos(), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn synthesize_rejects_small_grid() {
        let s = LaurentSpectrum::zeros(16).unwrap();
        assert!(matches!(synthesize(&s, grid(8)), Err(Error::Aliasing { .. })));
    }

    #[test]
    fn spectrum_index_bounds() {
        let mut s = LaurentSpectrum::zeros(8).unwrap();
        assert!(s.set(-4, c(1.0, 0.0)).is_ok());
        assert!(s.set(4, c(1.0, 0.0)).is_err());
        assert!(s.set(-5, c(1.0, 0.0)).is_err());
        assert_eq!(s.get(100), c(0.0, 0.0));
    }

    #[test]
    fn seminorm_examples() {
        let e1 = LaurentSpectrum::from_pairs(16, [(1, c(1.0, 0.0))]).unwrap();
        assert_eq!(seminorm(&e1, 2, SeminormFamily::Sup).unwrap(), 1.0);

        let e12 = LaurentSpectrum::from_pairs(16, [(1, c(1.0, 0.0)), (2, c(1.0, 0.0))]).unwrap();
        assert_eq!(seminorm(&e12, 1, SeminormFamily::Sum).unwrap(), 3.0);

        let cos2 = LaurentSpectrum::from_pairs(16, [(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]).unwrap();
        let u = seminorm(&cos2, 1, SeminormFamily::UniformDerivative).unwrap();
        // node θ = π/2 sits on the grid, so the peak 2 is attained
        assert_abs_diff_eq!(u, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn seminorm_order_guard() {
        let s = LaurentSpectrum::zeros(16).unwrap();
        assert!(seminorm(&s, 64, SeminormFamily::Sup).is_ok());
        assert!(matches!(seminorm(&s, 65, SeminormFamily::Sup), Err(Error::SeminormOrder(65))));
    }

    #[test]
    fn differentiate_examples() {
        let e1 = LaurentSpectrum::from_pairs(16, [(1, c(1.0, 0.0))]).unwrap();
        assert_eq!(differentiate(&e1, 1).get(1), c(0.0, 1.0));

        let k = LaurentSpectrum::from_pairs(16, [(0, c(3.0, -1.0))]).unwrap();
        assert_eq!(differentiate(&k, 1).max_abs(), 0.0);

        let em2 = LaurentSpectrum::from_pairs(16, [(-2, c(1.0, 0.0))]).unwrap();
        assert_eq!(differentiate(&em2, 2).get(-2), c(-4.0, 0.0));

        // d/dθ e^{-iθ} = -i e^{-iθ}
        let em1 = LaurentSpectrum::from_pairs(16, [(-1, c(1.0, 0.0))]).unwrap();
        assert_eq!(differentiate(&em1, 1).get(-1), c(0.0, -1.0));
        assert_eq!(differentiate(&em2, 3).get(-2), c(0.0, 8.0));
    }

    #[test]
    fn classify_zero_spectrum() {
        let r = classify_smoothness(&LaurentSpectrum::zeros(64).unwrap()).unwrap();
        assert_eq!(r.decay_class, DecayClass::TrigPolynomial);
        assert!(r.tail_norms.is_empty());
        assert!(r.fit_quality.is_none());
    }

    #[test]
    fn classify_requires_64_coefficients() {
        let s = LaurentSpectrum::from_pairs(32, [(0, c(1.0, 0.0))]).unwrap();
        assert!(matches!(classify_smoothness(&s), Err(Error::TooFewCoefficients { .. })));
    }

    #[test]
    fn classify_geometric() {
        let s = LaurentSpectrum::from_pairs(64, (-31i64..32).map(|n| (n, c(0.5f64.powi(n.abs() as i32), 0.0)))).unwrap();
        let r = classify_smoothness(&s).unwrap();
        assert_eq!(r.decay_class, DecayClass::SuperPolynomial);
        assert!(r.estimated_exponent.is_none());
    }

    #[test]
    fn classify_trig_polynomial() {
        let s = LaurentSpectrum::from_pairs(64, (-5..=5).map(|n| (n, c(1.0 + n as f64, 0.5)))).unwrap();
        let r = classify_smoothness(&s).unwrap();
        assert_eq!(r.decay_class, DecayClass::TrigPolynomial);
        assert_eq!(r.tail_norms.len(), 9);
    }

    #[test]
    fn classify_cubic_power_law() {
        let s = LaurentSpectrum::from_pairs(
            256,
            (-127i64..128).filter(|n| *n != 0).map(|n| (n, c((n.abs() as f64).powi(-3), 0.0))),
        )
        .unwrap();
        let r = classify_smoothness(&s).unwrap();
        assert_eq!(r.decay_class, DecayClass::PowerLaw);
        let p = r.estimated_exponent.unwrap();
        assert!((p - 3.0).abs() < 0.25, "exponent {p}");
    }

    #[test]
    fn classify_flat_tail_is_slow() {
        let s = LaurentSpectrum::from_pairs(64, (-31..32).map(|n| (n, c(1.0, 0.0)))).unwrap();
        assert_eq!(classify_smoothness(&s).unwrap().decay_class, DecayClass::Slow);
    }
}
