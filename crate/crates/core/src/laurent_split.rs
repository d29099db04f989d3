//! Splitting a boundary spectrum into a part holomorphic in the disc and a
//! part holomorphic outside it (vanishing at infinity), or into `g + conj(h)`
//! with `g`, `h` holomorphic in the disc and `h(0) = 0`.

use num_complex::Complex64;

use crate::circle_fourier::{synthesize, BoundarySamples, CircleGrid, LaurentSpectrum};
use crate::error::{Error, Result};

/// Slack allowed when evaluating on the closed disc / closed exterior.
pub const BOUNDARY_SLACK: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Power series `Σ_{n=0}^{N/2-1} a_n z^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscFunction {
    grid_size: usize,
    coeffs: Vec<Complex64>,
}

impl DiscFunction {
    pub fn zeros(grid_size: usize) -> Result<Self> {
        CircleGrid::new(grid_size)?;
        Ok(Self {
            grid_size,
            coeffs: vec![ZERO; grid_size / 2],
        })
    }

    pub fn from_pairs(
        grid_size: usize,
        pairs: impl IntoIterator<Item = (i64, Complex64)>,
    ) -> Result<Self> {
        let mut f = Self::zeros(grid_size)?;
        for (n, c) in pairs {
            f.set(n, c)?;
        }
        Ok(f)
    }

    /// Coefficients `a_0, a_1, ...`; missing entries are zero.
    pub fn from_coefficients(grid_size: usize, coeffs: &[Complex64]) -> Result<Self> {
        Self::from_pairs(grid_size, coeffs.iter().enumerate().map(|(n, c)| (n as i64, *c)))
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// One past the largest admissible index.
    pub fn end_index(&self) -> i64 {
        self.coeffs.len() as i64
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, n: i64) -> Complex64 {
        if n < 0 || n >= self.end_index() {
            ZERO
        } else {
            self.coeffs[n as usize]
        }
    }

    pub fn set(&mut self, n: i64, c: Complex64) -> Result<()> {
        if n < 0 || n >= self.end_index() {
            return Err(Error::IndexRange {
                index: n,
                lo: 0,
                hi: self.end_index(),
            });
        }
        self.coeffs[n as usize] = c;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(|(n, c)| (n as i64, *c))
    }

    pub fn map_indexed(&self, f: impl Fn(i64, Complex64) -> Complex64) -> DiscFunction {
        DiscFunction {
            grid_size: self.grid_size,
            coeffs: self.iter().map(|(n, c)| f(n, c)).collect(),
        }
    }

    pub fn to_spectrum(&self) -> LaurentSpectrum {
        LaurentSpectrum::from_pairs(self.grid_size, self.iter())
            .expect("disc indices lie inside the spectrum range")
    }

    pub fn synthesize(&self, grid: CircleGrid) -> Result<BoundarySamples> {
        synthesize(&self.to_spectrum(), grid)
    }

    /// Horner evaluation with no domain check.
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Complex derivative `Σ n a_n z^{n-1}` on the same grid.
    pub fn complex_derivative(&self) -> DiscFunction {
        let mut coeffs = vec![ZERO; self.coeffs.len()];
        for n in 1..self.coeffs.len() {
            coeffs[n - 1] = self.coeffs[n] * n as f64;
        }
        DiscFunction {
            grid_size: self.grid_size,
            coeffs,
        }
    }

    pub fn max_distance(&self, other: &DiscFunction) -> f64 {
        let hi = self.end_index().max(other.end_index());
        (0..hi)
            .map(|n| (self.get(n) - other.get(n)).norm())
            .fold(0.0, f64::max)
    }
}

/// Series `Σ_{n=-N/2}^{-1} a_n z^n`, zero at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorFunction {
    grid_size: usize,
    // position p holds index -(p + 1)
    coeffs: Vec<Complex64>,
}

impl ExteriorFunction {
    pub fn zeros(grid_size: usize) -> Result<Self> {
        CircleGrid::new(grid_size)?;
        Ok(Self {
            grid_size,
            coeffs: vec![ZERO; grid_size / 2],
        })
    }

    pub fn from_pairs(
        grid_size: usize,
        pairs: impl IntoIterator<Item = (i64, Complex64)>,
    ) -> Result<Self> {
        let mut f = Self::zeros(grid_size)?;
        for (n, c) in pairs {
            f.set(n, c)?;
        }
        Ok(f)
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn min_index(&self) -> i64 {
        -(self.coeffs.len() as i64)
    }

    pub fn get(&self, n: i64) -> Complex64 {
        if n >= 0 || n < self.min_index() {
            ZERO
        } else {
            self.coeffs[(-n - 1) as usize]
        }
    }

    pub fn set(&mut self, n: i64, c: Complex64) -> Result<()> {
        if n >= 0 || n < self.min_index() {
            return Err(Error::IndexRange {
                index: n,
                lo: self.min_index(),
                hi: 0,
            });
        }
        self.coeffs[(-n - 1) as usize] = c;
        Ok(())
    }

    /// Pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(p, c)| (-(p as i64) - 1, *c))
    }

    pub fn map_indexed(&self, f: impl Fn(i64, Complex64) -> Complex64) -> ExteriorFunction {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(p, c)| f(-(p as i64) - 1, *c))
            .collect();
        ExteriorFunction {
            grid_size: self.grid_size,
            coeffs,
        }
    }

    pub fn to_spectrum(&self) -> LaurentSpectrum {
        LaurentSpectrum::from_pairs(self.grid_size, self.iter())
            .expect("exterior indices lie inside the spectrum range")
    }

    pub fn synthesize(&self, grid: CircleGrid) -> Result<BoundarySamples> {
        synthesize(&self.to_spectrum(), grid)
    }

    /// Horner in `1/z` with no domain check.
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let w = z.inv();
        self.coeffs.iter().rev().fold(ZERO, |acc, c| (acc + c) * w)
    }

    pub fn value_at_infinity(&self) -> Complex64 {
        ZERO
    }

    pub fn max_distance(&self, other: &ExteriorFunction) -> f64 {
        let lo = self.min_index().min(other.min_index());
        (lo..0)
            .map(|n| (self.get(n) - other.get(n)).norm())
            .fold(0.0, f64::max)
    }
}

/// Partition into indices `n >= 0` and `n < 0`.
pub fn split(spectrum: &LaurentSpectrum) -> (DiscFunction, ExteriorFunction) {
    let n = spectrum.grid_size();
    let mut g = DiscFunction::zeros(n).expect("spectrum grid is valid");
    let mut h = ExteriorFunction::zeros(n).expect("spectrum grid is valid");
    for (idx, c) in spectrum.iter() {
        if idx >= 0 {
            g.coeffs[idx as usize] = c;
        } else {
            h.coeffs[(-idx - 1) as usize] = c;
        }
    }
    (g, h)
}

/// `f = g + conj(h)` on the circle: `g` keeps `a_n` for `n >= 0`, `h` has
/// `conj(a_{-n})` at `n >= 1` and no constant term.
pub fn conjugate_split(spectrum: &LaurentSpectrum) -> (DiscFunction, DiscFunction) {
    let (g, ext) = split(spectrum);
    let n = spectrum.grid_size();
    let mut h = DiscFunction::zeros(n).expect("spectrum grid is valid");
    for (idx, c) in ext.iter() {
        let k = (-idx) as usize;
        // a_{-N/2} is the dropped Nyquist slot and has no disc partner
        if k < h.coeffs.len() {
            h.coeffs[k] = c.conj();
        }
    }
    (g, h)
}

pub fn eval_disc(g: &DiscFunction, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + BOUNDARY_SLACK {
        return Err(Error::Domain {
            z,
            reason: "disc functions are evaluated on |z| <= 1",
        });
    }
    Ok(g.eval_unchecked(z))
}

pub fn eval_exterior(h: &ExteriorFunction, z: Complex64) -> Result<Complex64> {
    if z.norm() < 1.0 - BOUNDARY_SLACK {
        return Err(Error::Domain {
            z,
            reason: "exterior functions are evaluated on |z| >= 1",
        });
    }
    Ok(h.eval_unchecked(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_fourier::analyze;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(n: usize, pairs: &[(i64, Complex64)]) -> LaurentSpectrum {
        LaurentSpectrum::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn split_cosine() {
        let (g, h) = split(&spec(16, &[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]));
        assert_eq!(g.get(0), c(0.0, 0.0));
        assert_eq!(g.get(1), c(1.0, 0.0));
        assert_eq!(h.get(-1), c(1.0, 0.0));
        assert_eq!(eval_disc(&g, c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(eval_exterior(&h, c(2.0, 0.0)).unwrap(), c(0.5, 0.0));
    }

    #[test]
    fn split_constant() {
        let k = c(2.5, -1.0);
        let (g, h) = split(&spec(16, &[(0, k)]));
        assert_eq!(g.get(0), k);
        assert!(h.iter().all(|(_, v)| v == c(0.0, 0.0)));
    }

    #[test]
    fn conjugate_split_examples() {
        let (g, h) = conjugate_split(&spec(16, &[(-1, c(1.0, 0.0))]));
        assert!(g.iter().all(|(_, v)| v == c(0.0, 0.0)));
        assert_eq!(h.get(1), c(1.0, 0.0));

        let (g, h) = conjugate_split(&spec(16, &[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]));
        assert_eq!(g.get(1), c(1.0, 0.0));
        assert_eq!(h.get(1), c(1.0, 0.0));

        let (g, h) = conjugate_split(&spec(16, &[(-2, c(0.0, 1.0))]));
        assert!(g.iter().all(|(_, v)| v == c(0.0, 0.0)));
        assert_eq!(h.get(2), c(0.0, -1.0));
        assert_eq!(h.get(0), c(0.0, 0.0));
    }

    #[test]
    fn eval_disc_geometric_series() {
        let coeffs: Vec<Complex64> = (0..64).map(|n| c(0.5f64.powi(n), 0.0)).collect();
        let g = DiscFunction::from_coefficients(128, &coeffs).unwrap();
        let v = eval_disc(&g, c(0.5, 0.0)).unwrap();
        assert!((v - c(4.0 / 3.0, 0.0)).norm() < 1e-12);
        assert_eq!(eval_disc(&g, c(0.0, 0.0)).unwrap(), coeffs[0]);
    }

    #[test]
    fn eval_exterior_examples() {
        let h = ExteriorFunction::from_pairs(16, [(-2, c(1.0, 0.0))]).unwrap();
        let v = eval_exterior(&h, c(0.0, 2.0)).unwrap();
        assert!((v - c(-0.25, 0.0)).norm() < 1e-15);

        let h = ExteriorFunction::from_pairs(128, (1..=64).map(|k| (-k, c(2f64.powi(-(k as i32)), 0.0)))).unwrap();
        let v = eval_exterior(&h, c(2.0, 0.0)).unwrap();
        assert!((v - c(1.0 / 3.0, 0.0)).norm() < 1e-12);
        assert_eq!(h.value_at_infinity(), c(0.0, 0.0));
    }

    #[test]
    fn evaluation_domains_are_enforced() {
        let g = DiscFunction::from_pairs(16, [(1, c(1.0, 0.0))]).unwrap();
        assert!(matches!(eval_disc(&g, c(1.1, 0.0)), Err(Error::Domain { .. })));
        assert!(eval_disc(&g, c(1.0, 0.0)).is_ok());
        let h = ExteriorFunction::from_pairs(16, [(-1, c(1.0, 0.0))]).unwrap();
        assert!(matches!(eval_exterior(&h, c(0.9, 0.0)), Err(Error::Domain { .. })));
        assert!(eval_exterior(&h, c(0.0, 1.0)).is_ok());
    }

    #[test]
    fn index_ranges_are_one_sided() {
        let mut g = DiscFunction::zeros(8).unwrap();
        assert!(g.set(-1, c(1.0, 0.0)).is_err());
        assert!(g.set(4, c(1.0, 0.0)).is_err());
        let mut h = ExteriorFunction::zeros(8).unwrap();
        assert!(h.set(0, c(1.0, 0.0)).is_err());
        assert!(h.set(-4, c(1.0, 0.0)).is_ok());
        assert!(h.set(-5, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn vanishing_checks() {
        let grid = CircleGrid::new(64).unwrap();
        let poly = BoundarySamples::from_circle_fn(grid, |z| c(1.0, 2.0) + z * 3.0 - z * z * z * c(0.0, 0.5)).unwrap();
        let s = analyze(&poly).unwrap();
        assert!(s.iter().filter(|(n, _)| *n < 0).all(|(_, v)| v.norm() < 1e-12));

        let inv = BoundarySamples::from_circle_fn(grid, |z| z.inv() * 2.0 + z.powi(-4) * c(0.0, 1.0)).unwrap();
        let s = analyze(&inv).unwrap();
        assert!(s.iter().filter(|(n, _)| *n >= 0).all(|(_, v)| v.norm() < 1e-12));
    }

    #[test]
    fn complex_derivative_index_algebra() {
        let f = DiscFunction::from_pairs(16, [(0, c(3.0, 0.0)), (2, c(1.0, 1.0))]).unwrap();
        let d = f.complex_derivative();
        assert_eq!(d.get(1), c(2.0, 2.0));
        assert_eq!(d.get(0), c(0.0, 0.0));
    }
}
