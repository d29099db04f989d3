//! Jordan domains given by explicit polynomial Riemann maps
//! `φ(z) = c_1 z + ... + c_d z^d` with `Σ_{k≥2} k|c_k| < |c_1|`, and the
//! boundary machinery built on them: pullbacks along `γ(θ) = φ(e^{iθ}) + offset`,
//! the chain-rule identity `d(f∘γ)/dθ = (f'∘γ)·γ'`, the analytic projection
//! and conjugate split in pullback coordinates, a star-likeness test,
//! welding composition and quasi-symmetry estimates.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::circle_fourier::{
    analyze, differentiate, synthesize_native, BoundarySamples, CircleGrid, LaurentSpectrum,
};
use crate::error::{Error, Result};
use crate::laurent_split::{conjugate_split, DiscFunction};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Grid used by [`JordanDomain::starlike_check`].
pub const STARLIKE_GRID: usize = 4096;

/// Largest grid accepted for welding experiments.
pub const MAX_WELDING_GRID: usize = 1 << 14;

/// Polynomial in the physical plane, `Σ a_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanePolynomial {
    coeffs: Vec<Complex64>,
}

impl PlanePolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![ZERO; degree + 1];
        coeffs[degree] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> PlanePolynomial {
        PlanePolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanDomain {
    // c_1..c_d
    map_coeffs: Vec<Complex64>,
    offset: Complex64,
}

/// Validates the univalence margin; returns `(Σ_{k≥2} k|c_k|, |c_1|)`.
fn univalence_margin(coeffs: &[Complex64]) -> Result<(f64, f64)> {
    let Some(first) = coeffs.first() else {
        return Err(Error::Degenerate("empty coefficient list".into()));
    };
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Degenerate("non-finite map coefficient".into()));
    }
    let lead = first.norm();
    if lead == 0.0 {
        return Err(Error::Degenerate("leading coefficient c_1 is zero".into()));
    }
    let sum: f64 = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (i + 1) as f64 * c.norm())
        .sum();
    Ok((sum, lead))
}

/// `φ(w)` for map coefficients `c_1..c_d`.
fn eval_map(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * w + c) * w
}

fn eval_map_derivative(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .rev()
        .fold(ZERO, |acc, (i, c)| acc * w + c * (i + 1) as f64)
}

/// `min_θ Re(e^{iθ}φ'(e^{iθ})/φ(e^{iθ}))` over `grid` for arbitrary map
/// coefficients. Positive means star-like about `φ(0) = 0`.
pub fn starlike_margin(coeffs: &[Complex64], grid: CircleGrid) -> Result<f64> {
    let mut margin = f64::INFINITY;
    for (j, w) in grid.circle_points().into_iter().enumerate() {
        let value = eval_map(coeffs, w);
        if value.norm() == 0.0 {
            return Err(Error::Degenerate(format!("φ vanishes at node {j}")));
        }
        let q = w * eval_map_derivative(coeffs, w) / value;
        margin = margin.min(q.re);
    }
    Ok(margin)
}

impl JordanDomain {
    pub fn new(map_coeffs: Vec<Complex64>, offset: Complex64) -> Result<Self> {
        let (sum, lead) = univalence_margin(&map_coeffs)?;
        if sum >= lead {
            return Err(Error::Univalence { sum, lead });
        }
        if !offset.is_finite() {
            return Err(Error::Degenerate("non-finite offset".into()));
        }
        Ok(Self { map_coeffs, offset })
    }

    pub fn unit_disc() -> Self {
        Self {
            map_coeffs: vec![Complex64::new(1.0, 0.0)],
            offset: ZERO,
        }
    }

    pub fn map_coefficients(&self) -> &[Complex64] {
        &self.map_coeffs
    }

    pub fn offset(&self) -> Complex64 {
        self.offset
    }

    pub fn degree(&self) -> usize {
        self.map_coeffs.len()
    }

    /// Image of the disc center, `φ(0) + offset`.
    pub fn center(&self) -> Complex64 {
        self.offset
    }

    pub fn phi(&self, w: Complex64) -> Complex64 {
        eval_map(&self.map_coeffs, w)
    }

    pub fn phi_prime(&self, w: Complex64) -> Complex64 {
        eval_map_derivative(&self.map_coeffs, w)
    }

    pub fn gamma(&self, theta: f64) -> Complex64 {
        self.phi(Complex64::from_polar(1.0, theta)) + self.offset
    }

    /// `γ'(θ) = i e^{iθ} φ'(e^{iθ})`.
    pub fn gamma_prime(&self, theta: f64) -> Complex64 {
        let w = Complex64::from_polar(1.0, theta);
        Complex64::i() * w * self.phi_prime(w)
    }

    pub fn boundary_points(&self, grid: CircleGrid) -> Vec<Complex64> {
        grid.nodes().map(|t| self.gamma(t)).collect()
    }

    pub fn boundary_derivatives(&self, grid: CircleGrid) -> Vec<Complex64> {
        grid.nodes().map(|t| self.gamma_prime(t)).collect()
    }

    /// Star-likeness about the center on the default dense grid.
    pub fn starlike_check(&self) -> Result<(bool, f64)> {
        self.starlike_check_on(CircleGrid::new(STARLIKE_GRID)?)
    }

    pub fn starlike_check_on(&self, grid: CircleGrid) -> Result<(bool, f64)> {
        let margin = starlike_margin(&self.map_coeffs, grid)?;
        Ok((margin > 0.0, margin))
    }

    /// Membership in the closed domain.
    ///
    /// Points near the boundary are decided by inverting `φ` with Newton's
    /// method from the nearest boundary node; elsewhere a winding number of
    /// the sampled boundary polygon decides.
    pub fn contains_closed(&self, z: Complex64) -> bool {
        const NODES: usize = 4096;
        let grid = CircleGrid::new(NODES).expect("power of two");
        let pts = self.boundary_points(grid);
        let (nearest, dist) = pts
            .iter()
            .enumerate()
            .map(|(j, p)| (j, (p - z).norm()))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        let chord = (pts[1] - pts[0]).norm().max((pts[NODES / 2 + 1] - pts[NODES / 2]).norm());
        if dist <= 8.0 * chord {
            let target = z - self.offset;
            let mut w = Complex64::from_polar(1.0, grid.node(nearest));
            for _ in 0..60 {
                let step = (self.phi(w) - target) / self.phi_prime(w);
                w -= step;
                if step.norm() < 1e-15 {
                    break;
                }
            }
            if (self.phi(w) - target).norm() <= 1e-12 * (1.0 + target.norm()) {
                return w.norm() <= 1.0 + 1e-10;
            }
        }
        winding_number(&pts, z) != 0
    }

    /// Boundary argument about the center, `arg(γ(θ) - center)`.
    fn boundary_arg(&self, theta: f64) -> f64 {
        self.phi(Complex64::from_polar(1.0, theta)).arg()
    }

    /// `d/dθ arg(γ(θ) - center) = Re(e^{iθ}φ'/φ)`.
    fn boundary_arg_rate(&self, theta: f64) -> f64 {
        let w = Complex64::from_polar(1.0, theta);
        (w * self.phi_prime(w) / self.phi(w)).re
    }
}

fn winding_number(polygon: &[Complex64], z: Complex64) -> i64 {
    let mut total = 0.0;
    for (i, a) in polygon.iter().enumerate() {
        let b = polygon[(i + 1) % polygon.len()];
        total += ((b - z) / (a - z)).arg();
    }
    (total / TAU).round() as i64
}

/// Samples `f(γ(θ_j))`.
pub fn pullback(
    domain: &JordanDomain,
    f: impl Fn(Complex64) -> Complex64,
    grid: CircleGrid,
) -> Result<BoundarySamples> {
    BoundarySamples::from_fn(grid, |t| f(domain.gamma(t)))
}

/// Pairs `(γ(θ_j), value_j)` for reporting pullback samples on the physical boundary.
pub fn pushforward(domain: &JordanDomain, samples: &BoundarySamples) -> Vec<(Complex64, Complex64)> {
    domain
        .boundary_points(samples.grid())
        .into_iter()
        .zip(samples.values().iter().copied())
        .collect()
}

/// Largest last-octave coefficient accepted by [`derivative_identity_defect`],
/// relative to `max(1, largest coefficient)`.
pub const RESOLUTION_LIMIT: f64 = 1e-8;

/// Compares `d(f∘γ)/dθ` (spectral differentiation of the pullback) with
/// `f'(γ)·γ'` (analytic derivative composed with the boundary map).
/// Returns the largest pointwise discrepancy on `grid`.
pub fn derivative_identity_defect(
    domain: &JordanDomain,
    f: impl Fn(Complex64) -> Complex64,
    f_prime: impl Fn(Complex64) -> Complex64,
    grid: CircleGrid,
) -> Result<f64> {
    let spectrum = analyze(&pullback(domain, &f, grid)?)?;
    let size = grid.size() as i64;
    let tail = spectrum
        .iter()
        .filter(|(n, _)| n.abs() >= size / 4)
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max);
    let limit = RESOLUTION_LIMIT * spectrum.max_abs().max(1.0);
    if tail > limit {
        return Err(Error::Resolution { tail, limit });
    }
    let lhs = synthesize_native(&differentiate(&spectrum, 1))?;
    Ok(grid
        .nodes()
        .zip(lhs.values())
        .map(|(t, l)| (l - f_prime(domain.gamma(t)) * domain.gamma_prime(t)).norm())
        .fold(0.0, f64::max))
}

pub fn derivative_identity_defect_polynomial(
    domain: &JordanDomain,
    f: &PlanePolynomial,
    grid: CircleGrid,
) -> Result<f64> {
    let fp = f.derivative();
    derivative_identity_defect(domain, |z| f.eval(z), |z| fp.eval(z), grid)
}

/// Splits a spectrum into its `n >= 0` and `n < 0` parts. Supports are
/// disjoint, so the two parts add back to the input exactly.
pub fn q_project_spectrum(spectrum: &LaurentSpectrum) -> (LaurentSpectrum, LaurentSpectrum) {
    let zero = Complex64::new(0.0, 0.0);
    (
        spectrum.map_indexed(|n, c| if n >= 0 { c } else { zero }),
        spectrum.map_indexed(|n, c| if n < 0 { c } else { zero }),
    )
}

/// Result of the analytic projection of a boundary function on `∂Ω`, in pullback coordinates.
#[derive(Clone, Debug)]
pub struct QDecomposition {
    /// `P(f∘γ)`: the boundary trace of the holomorphic part.
    pub analytic_part: BoundarySamples,
    /// `f∘γ - P(f∘γ)`.
    pub kernel_part: BoundarySamples,
    pub analytic_spectrum: LaurentSpectrum,
    pub kernel_spectrum: LaurentSpectrum,
    /// `γ(θ_j)`, for reporting.
    pub boundary_points: Vec<Complex64>,
}

pub fn q_projection(domain: &JordanDomain, f: &BoundarySamples) -> Result<QDecomposition> {
    let spectrum = analyze(f)?;
    let (analytic_spectrum, kernel_spectrum) = q_project_spectrum(&spectrum);
    let analytic_part = synthesize_native(&analytic_spectrum)?;
    let kernel_part = f.zip_with(&analytic_part, |a, b| a - b)?;
    Ok(QDecomposition {
        analytic_part,
        kernel_part,
        analytic_spectrum,
        kernel_spectrum,
        boundary_points: domain.boundary_points(f.grid()),
    })
}

/// `f = g∘γ⁻¹ + conj(h∘γ⁻¹)` on `∂Ω` with `h(center) = 0`, in pullback coordinates.
#[derive(Clone, Debug)]
pub struct DomainConjugateSplit {
    /// Coefficients of `g∘φ` on the disc.
    pub g: DiscFunction,
    /// Coefficients of `h∘φ` on the disc; constant term zero.
    pub h: DiscFunction,
    pub g_pullback: BoundarySamples,
    pub h_pullback: BoundarySamples,
}

pub fn conjugate_split_domain(
    _domain: &JordanDomain,
    f: &BoundarySamples,
) -> Result<DomainConjugateSplit> {
    let grid = f.grid();
    let (g, h) = conjugate_split(&analyze(f)?);
    Ok(DomainConjugateSplit {
        g_pullback: g.synthesize(grid)?,
        h_pullback: h.synthesize(grid)?,
        g,
        h,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Preserving => 1.0,
            Orientation::Reversing => -1.0,
        }
    }
}

/// Circle homeomorphism tabulated by a lifted angle `ψ(θ_j)` with
/// `ψ(θ + 2π) = ψ(θ) ± 2π`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleHomeomorphism {
    theta: Vec<f64>,
    psi: Vec<f64>,
    orientation: Orientation,
}

impl CircleHomeomorphism {
    pub fn new(theta: Vec<f64>, psi: Vec<f64>, orientation: Orientation) -> Result<Self> {
        if theta.len() != psi.len() {
            return Err(Error::Length {
                expected: theta.len(),
                got: psi.len(),
            });
        }
        if theta.len() < 3 {
            return Err(Error::Topology("need at least three nodes".into()));
        }
        if theta.iter().chain(&psi).any(|v| !v.is_finite()) {
            return Err(Error::Topology("non-finite table entry".into()));
        }
        if theta[0] < 0.0 || *theta.last().unwrap() >= TAU {
            return Err(Error::Topology("theta must lie in [0, 2π)".into()));
        }
        if theta.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Topology("theta must be strictly increasing".into()));
        }
        let s = orientation.sign();
        let steps_ok = psi.windows(2).all(|w| s * (w[1] - w[0]) > 0.0);
        let wrap = s * (psi[0] + s * TAU - psi[psi.len() - 1]);
        if !steps_ok || wrap <= 0.0 {
            return Err(Error::Topology(
                "lifted angle table is not strictly monotone with total turn 2π".into(),
            ));
        }
        Ok(Self {
            theta,
            psi,
            orientation,
        })
    }

    /// Tabulates `θ ↦ arg f(e^{iθ})` on `grid`, lifting continuously.
    pub fn from_circle_map(
        grid: CircleGrid,
        f: impl Fn(Complex64) -> Complex64,
        orientation: Orientation,
    ) -> Result<Self> {
        let theta: Vec<f64> = grid.nodes().collect();
        let mut psi = Vec::with_capacity(theta.len());
        let mut prev: Option<f64> = None;
        for t in &theta {
            let a = f(Complex64::from_polar(1.0, *t)).arg();
            let lifted = match prev {
                None => a,
                Some(p) => p + wrap_to_pi(a - p),
            };
            psi.push(lifted);
            prev = Some(lifted);
        }
        Self::new(theta, psi, orientation)
    }

    pub fn identity(grid: CircleGrid) -> Self {
        let theta: Vec<f64> = grid.nodes().collect();
        Self {
            psi: theta.clone(),
            theta,
            orientation: Orientation::Preserving,
        }
    }

    /// `e^{iθ} ↦ e^{-iθ}`.
    pub fn reflection(grid: CircleGrid) -> Self {
        let theta: Vec<f64> = grid.nodes().collect();
        Self {
            psi: theta.iter().map(|t| -t).collect(),
            theta,
            orientation: Orientation::Reversing,
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Lifted `ψ(θ)` by periodic piecewise-linear interpolation.
    pub fn eval(&self, theta: f64) -> f64 {
        let turns = ((theta - self.theta[0]) / TAU).floor();
        let t = theta - turns * TAU;
        let s = self.orientation.sign();
        let n = self.theta.len();
        let i = self.theta.partition_point(|x| *x <= t).saturating_sub(1);
        let (t0, p0) = (self.theta[i], self.psi[i]);
        let (t1, p1) = if i + 1 < n {
            (self.theta[i + 1], self.psi[i + 1])
        } else {
            (self.theta[0] + TAU, self.psi[0] + s * TAU)
        };
        p0 + (p1 - p0) * (t - t0) / (t1 - t0) + s * turns * TAU
    }

    pub fn image_points(&self) -> Vec<Complex64> {
        self.psi.iter().map(|p| Complex64::from_polar(1.0, *p)).collect()
    }

    pub fn max_angle_distance(&self, other: &CircleHomeomorphism) -> f64 {
        self.psi
            .iter()
            .zip(&other.psi)
            .map(|(a, b)| wrap_to_pi(a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn wrap_to_pi(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// `γ⁻¹∘δ` where `δ` is tabulated by its boundary argument about the
/// domain center: `delta.psi()[j] = arg(δ(e^{iθ_j}) - center)`.
///
/// The boundary argument of `γ` is strictly increasing on star-like domains.
/// It is inverted by bracketing in a piecewise-linear table on `grid`, then
/// polished with Newton steps on the exact boundary map.
pub fn welding_compose_on(
    domain: &JordanDomain,
    delta: &CircleHomeomorphism,
    grid: CircleGrid,
) -> Result<CircleHomeomorphism> {
    if grid.size() > MAX_WELDING_GRID {
        return Err(Error::Sizing {
            size: grid.size(),
            min: 4,
        });
    }
    let (starlike, margin) = domain.starlike_check()?;
    if !starlike {
        return Err(Error::NotStarlike { margin });
    }
    // lifted boundary-argument table of γ
    let nodes: Vec<f64> = grid.nodes().collect();
    let mut table = Vec::with_capacity(nodes.len());
    let mut prev: Option<f64> = None;
    for t in &nodes {
        let a = domain.boundary_arg(*t);
        let lifted = match prev {
            None => a,
            Some(p) => p + wrap_to_pi(a - p),
        };
        table.push(lifted);
        prev = Some(lifted);
    }
    if table.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Topology("boundary argument of γ is not monotone".into()));
    }
    let base = table[0];

    let invert = |target: f64| -> f64 {
        // reduce target into [base, base + 2π)
        let k = ((target - base) / TAU).floor();
        let tr = target - k * TAU;
        let i = table.partition_point(|a| *a <= tr).saturating_sub(1);
        let (a0, t0) = (table[i], nodes[i]);
        let (a1, t1) = if i + 1 < table.len() {
            (table[i + 1], nodes[i + 1])
        } else {
            (base + TAU, TAU)
        };
        let mut t = t0 + (t1 - t0) * (tr - a0) / (a1 - a0);
        for _ in 0..8 {
            let residual = wrap_to_pi(domain.boundary_arg(t) - tr);
            let step = residual / domain.boundary_arg_rate(t);
            t -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        t + k * TAU
    };

    let mut psi = Vec::with_capacity(delta.len());
    let mut prev: Option<f64> = None;
    for target in delta.psi() {
        let t = invert(*target);
        let lifted = match prev {
            None => t,
            Some(p) => p + wrap_to_pi(t - p),
        };
        psi.push(lifted);
        prev = Some(lifted);
    }
    CircleHomeomorphism::new(delta.theta().to_vec(), psi, delta.orientation())
        .map_err(|e| Error::Topology(format!("composition lost monotonicity: {e}")))
}

/// [`welding_compose_on`] with the inversion table on the same grid size as
/// `delta` (at least 1024 nodes).
pub fn welding_compose(
    domain: &JordanDomain,
    delta: &CircleHomeomorphism,
) -> Result<CircleHomeomorphism> {
    let size = delta.len().next_power_of_two().clamp(1024, MAX_WELDING_GRID);
    welding_compose_on(domain, delta, CircleGrid::new(size)?)
}

/// Upper bound on `triple_budget` for [`quasisymmetry_estimate`].
pub const MAX_TRIPLE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct QuasiSymmetryReport {
    /// `(t, worst ratio)` per distance class, sorted by `t`.
    pub sampled_ratios: Vec<(f64, f64)>,
    /// Running maximum of the worst ratios, same abscissae.
    pub eta_envelope: Vec<(f64, f64)>,
    pub triples_examined: u64,
}

impl QuasiSymmetryReport {
    /// Largest `|η(t) - t|` over the envelope.
    pub fn max_deviation_from_identity(&self) -> f64 {
        self.eta_envelope
            .iter()
            .map(|(t, e)| (e - t).abs())
            .fold(0.0, f64::max)
    }

    pub fn sup(&self) -> f64 {
        self.eta_envelope.last().map_or(0.0, |p| p.1)
    }
}

/// Worst ratios `|h(x)-h(y)| / |h(x)-h(z)|` over node triples, grouped by
/// the pair of cyclic node separations `(x,y)` and `(x,z)`, which fixes
/// `t = |x-y| / |x-z|`.
///
/// When `triple_budget` covers every triple with `y ≠ x ≠ z` all are used;
/// otherwise an evenly strided subset of the triple index space.
pub fn quasisymmetry_estimate(
    h: &CircleHomeomorphism,
    triple_budget: u64,
) -> Result<QuasiSymmetryReport> {
    if triple_budget == 0 || triple_budget > MAX_TRIPLE_BUDGET {
        return Err(Error::Argument(format!(
            "triple budget must lie in [1, {MAX_TRIPLE_BUDGET}]"
        )));
    }
    let n = h.len();
    let points: Vec<Complex64> = h.theta().iter().map(|t| Complex64::from_polar(1.0, *t)).collect();
    let images = h.image_points();
    let m = (n - 1) as u64;
    let total = n as u64 * m * m;

    let mut worst: BTreeMap<(usize, usize), (f64, f64)> = BTreeMap::new();
    let mut visit = |idx: u64| {
        let x = (idx / (m * m)) as usize;
        let rem = idx % (m * m);
        let y = (x + 1 + (rem / m) as usize) % n;
        let z = (x + 1 + (rem % m) as usize) % n;
        let sep = |a: usize, b: usize| {
            let d = a.abs_diff(b);
            d.min(n - d)
        };
        let key = (sep(x, y), sep(x, z));
        let ratio = (images[x] - images[y]).norm() / (images[x] - images[z]).norm();
        let entry = worst.entry(key).or_insert_with(|| {
            let t = (points[x] - points[y]).norm() / (points[x] - points[z]).norm();
            (t, ratio)
        });
        if ratio > entry.1 {
            entry.1 = ratio;
        }
    };
    let examined = if triple_budget >= total {
        (0..total).for_each(&mut visit);
        total
    } else {
        (0..triple_budget).for_each(|k| visit((k as u128 * total as u128 / triple_budget as u128) as u64));
        triple_budget
    };

    let mut sampled: Vec<((usize, usize), (f64, f64))> = worst.into_iter().collect();
    sampled.sort_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)));
    let sampled_ratios: Vec<(f64, f64)> = sampled.into_iter().map(|(_, v)| v).collect();
    let mut running = 0.0f64;
    let eta_envelope = sampled_ratios
        .iter()
        .map(|(t, r)| {
            running = running.max(*r);
            (*t, running)
        })
        .collect();
    Ok(QuasiSymmetryReport {
        sampled_ratios,
        eta_envelope,
        triples_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(n: usize) -> CircleGrid {
        CircleGrid::new(n).unwrap()
    }

    fn oval() -> JordanDomain {
        JordanDomain::new(vec![c(1.0, 0.0), c(0.2, 0.0)], c(0.0, 0.0)).unwrap()
    }

    #[test]
    fn constructor_examples() {
        let disc = JordanDomain::new(vec![c(1.0, 0.0)], c(0.0, 0.0)).unwrap();
        assert!((disc.gamma(0.7) - Complex64::from_polar(1.0, 0.7)).norm() < 1e-15);
        assert!(JordanDomain::new(vec![c(1.0, 0.0), c(0.2, 0.0)], c(0.0, 0.0)).is_ok());
        assert!(matches!(
            JordanDomain::new(vec![c(1.0, 0.0), c(0.5, 0.0)], c(0.0, 0.0)),
            Err(Error::Univalence { .. })
        ));
        assert!(matches!(
            JordanDomain::new(vec![c(0.0, 0.0), c(0.1, 0.0)], c(0.0, 0.0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn gamma_prime_matches_finite_difference() {
        let d = JordanDomain::new(vec![c(1.0, 0.0), c(0.1, 0.0), c(0.0, 0.05)], c(0.3, -0.2)).unwrap();
        let h = 1e-6;
        for t in [0.0, 1.0, 2.5, 4.0] {
            let fd = (d.gamma(t + h) - d.gamma(t - h)) / (2.0 * h);
            assert!((fd - d.gamma_prime(t)).norm() < 1e-8);
        }
    }

    #[test]
    fn pullback_examples() {
        let g = grid(32);
        let disc = JordanDomain::unit_disc();
        let s = pullback(&disc, |z| z, g).unwrap();
        for (t, v) in g.nodes().zip(s.values()) {
            assert!((v - Complex64::from_polar(1.0, t)).norm() < 1e-15);
        }
        let s = pullback(&oval(), |z| z * z, g).unwrap();
        for (t, v) in g.nodes().zip(s.values()) {
            let e = Complex64::from_polar(1.0, t);
            let w = e + e * e * 0.2;
            assert!((v - w * w).norm() < 1e-14);
        }
    }

    #[test]
    fn derivative_identity_examples() {
        let disc = JordanDomain::unit_disc();
        let d = derivative_identity_defect(&disc, |z| z, |_| c(1.0, 0.0), grid(64)).unwrap();
        assert!(d <= 1e-12);
        let d = derivative_identity_defect_polynomial(&oval(), &PlanePolynomial::monomial(2), grid(512)).unwrap();
        assert!(d <= 1e-9, "defect {d}");
        let d = derivative_identity_defect(&oval(), |_| c(2.0, 1.0), |_| c(0.0, 0.0), grid(64)).unwrap();
        assert!(d < 1e-14);
    }

    #[test]
    fn derivative_identity_rejects_unresolved_pullback() {
        let r = derivative_identity_defect(&oval(), |z| (z * 3.0).exp(), |z| (z * 3.0).exp() * 3.0, grid(16));
        assert!(matches!(r, Err(Error::Resolution { .. })));
    }

    #[test]
    fn q_projection_examples() {
        let g = grid(64);
        let f = BoundarySamples::from_fn(g, |t| Complex64::from_polar(1.0, -t)).unwrap();
        let q = q_projection(&oval(), &f).unwrap();
        assert!(q.analytic_part.sup_norm() < 1e-15);
        assert!(q.kernel_part.max_distance(&f).unwrap() < 1e-15);

        let d = oval();
        let f = pullback(&d, |z| z, g).unwrap();
        let q = q_projection(&d, &f).unwrap();
        assert!(q.kernel_part.sup_norm() < 1e-14);
        assert_eq!(q.boundary_points.len(), 64);
    }

    #[test]
    fn conjugate_split_domain_examples() {
        let g = grid(64);
        let disc = JordanDomain::unit_disc();
        let f = BoundarySamples::from_fn(g, |t| Complex64::from_polar(1.0, -t)).unwrap();
        let s = conjugate_split_domain(&disc, &f).unwrap();
        assert!(s.g_pullback.sup_norm() < 1e-15);
        for (t, v) in g.nodes().zip(s.h_pullback.values()) {
            assert!((v - Complex64::from_polar(1.0, t)).norm() < 1e-15);
        }

        let f = BoundarySamples::from_fn(g, |_| c(1.5, 0.0)).unwrap();
        let s = conjugate_split_domain(&oval(), &f).unwrap();
        assert!((s.g.get(0) - c(1.5, 0.0)).norm() < 1e-15);
        assert!(s.h_pullback.sup_norm() < 1e-15);

        let f = BoundarySamples::from_fn(g, |t| c(2.0 * t.cos(), 0.0)).unwrap();
        let s = conjugate_split_domain(&oval(), &f).unwrap();
        for (t, (gv, hv)) in g.nodes().zip(s.g_pullback.values().iter().zip(s.h_pullback.values())) {
            let e = Complex64::from_polar(1.0, t);
            assert!((gv - e).norm() < 1e-14);
            assert!((hv - e).norm() < 1e-14);
        }
    }

    #[test]
    fn starlike_examples() {
        let (ok, m) = JordanDomain::unit_disc().starlike_check().unwrap();
        assert!(ok);
        assert!((m - 1.0).abs() < 1e-15);
        let (ok, m) = oval().starlike_check().unwrap();
        assert!(ok);
        // dense-grid oracle: Re((1 + 0.4w)/(1 + 0.2w)) is smallest at w = -1
        let dense = (0..200_000)
            .map(|k| {
                let w = Complex64::from_polar(1.0, TAU * k as f64 / 200_000.0);
                ((c(1.0, 0.0) + w * 0.4) / (c(1.0, 0.0) + w * 0.2)).re
            })
            .fold(f64::INFINITY, f64::min);
        assert!((m - dense).abs() < 1e-9);
        assert!((m - 0.75).abs() < 1e-12);
    }

    #[test]
    fn starlike_criterion_detects_failure_outside_the_margin_class() {
        // φ(z) = z + 0.4 z^3 violates the univalence margin (1.2 >= 1)
        let m = starlike_margin(&[c(1.0, 0.0), c(0.0, 0.0), c(0.4, 0.0)], grid(1024)).unwrap();
        assert!(m < 0.0);
        assert!(JordanDomain::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.4, 0.0)], c(0.0, 0.0)).is_err());
    }

    #[test]
    fn starlike_margin_reports_vanishing_map() {
        // φ(z) = z - z^2 vanishes at the node z = 1
        let r = starlike_margin(&[c(1.0, 0.0), c(-1.0, 0.0)], grid(16));
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn containment() {
        let d = oval();
        assert!(d.contains_closed(c(0.0, 0.0)));
        assert!(d.contains_closed(d.gamma(1.234)));
        assert!(d.contains_closed(c(1.19, 0.0)));
        assert!(!d.contains_closed(c(1.21, 0.0)));
        assert!(!d.contains_closed(c(0.0, 2.0)));
        assert!(!d.contains_closed(d.gamma(0.4) * 1.0001));
    }

    #[test]
    fn homeomorphism_validation() {
        let theta = vec![0.0, 2.0, 4.0];
        assert!(CircleHomeomorphism::new(theta.clone(), vec![0.0, 1.0, 3.0], Orientation::Preserving).is_ok());
        assert!(CircleHomeomorphism::new(theta.clone(), vec![0.0, 3.0, 1.0], Orientation::Preserving).is_err());
        // total increase exceeds 2π
        assert!(CircleHomeomorphism::new(theta.clone(), vec![0.0, 3.0, 6.5], Orientation::Preserving).is_err());
        assert!(CircleHomeomorphism::new(theta, vec![0.0, -1.0, -3.0], Orientation::Reversing).is_ok());
    }

    #[test]
    fn homeomorphism_interpolation_is_periodic() {
        let h = CircleHomeomorphism::reflection(grid(8));
        assert!((h.eval(0.3) + 0.3).abs() < 1e-15);
        assert!((h.eval(0.3 + TAU) - (-0.3 - TAU)).abs() < 1e-12);
        assert!((h.eval(TAU - 0.1) - (0.1 - TAU)).abs() < 1e-12);
    }

    #[test]
    fn welding_examples_on_disc() {
        let g = grid(64);
        let disc = JordanDomain::unit_disc();
        let w = welding_compose(&disc, &CircleHomeomorphism::identity(g)).unwrap();
        assert!(w.max_angle_distance(&CircleHomeomorphism::identity(g)) < 1e-12);
        let w = welding_compose(&disc, &CircleHomeomorphism::reflection(g)).unwrap();
        assert_eq!(w.orientation(), Orientation::Reversing);
        assert!(w.max_angle_distance(&CircleHomeomorphism::reflection(g)) < 1e-12);
    }

    #[test]
    fn welding_round_trip_on_oval() {
        let g = grid(256);
        let d = oval();
        let delta = CircleHomeomorphism::identity(g);
        let w = welding_compose(&d, &delta).unwrap();
        assert!(w.max_angle_distance(&delta) > 1e-3);
        for (target, t) in delta.psi().iter().zip(w.psi()) {
            let back = (d.gamma(*t) - d.center()).arg();
            assert!(wrap_to_pi(back - target).abs() < 1e-8);
        }
    }

    #[test]
    fn quasisymmetry_identity_and_reflection() {
        let g = grid(16);
        for h in [CircleHomeomorphism::identity(g), CircleHomeomorphism::reflection(g)] {
            let r = quasisymmetry_estimate(&h, MAX_TRIPLE_BUDGET).unwrap();
            assert_eq!(r.triples_examined, 16 * 15 * 15);
            assert!(r.max_deviation_from_identity() < 1e-12);
            assert!(r.eta_envelope.windows(2).all(|w| w[0].1 <= w[1].1));
        }
    }

    #[test]
    fn quasisymmetry_budget_guard() {
        let h = CircleHomeomorphism::identity(grid(8));
        assert!(quasisymmetry_estimate(&h, 0).is_err());
        assert!(quasisymmetry_estimate(&h, MAX_TRIPLE_BUDGET + 1).is_err());
        let r = quasisymmetry_estimate(&h, 50).unwrap();
        assert_eq!(r.triples_examined, 50);
    }
}
