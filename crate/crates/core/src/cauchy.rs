//! Trapezoidal Cauchy transforms on closed parametrized curves, the
//! disc/exterior case formulas as a consistency check, the decomposition on
//! the domain between two internally tangent circles, and a radial-limit
//! probe at boundary points.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::circle_fourier::{analyze, synthesize, BoundarySamples, CircleGrid, LaurentSpectrum};
use crate::error::{Error, Result};
use crate::jordan_domain::JordanDomain;
use crate::laurent_split::{eval_disc, eval_exterior, split, DiscFunction, ExteriorFunction};
use crate::numerics::pairwise_sum;

/// Minimum distance from an evaluation point to every node, in units of `1/N`.
pub const PROXIMITY_GUARD: f64 = 10.0;

/// Grids above this size skip the pairwise self-intersection test.
pub const INTERSECTION_CHECK_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveOrientation {
    Positive,
    Negative,
}

impl CurveOrientation {
    fn sign(self) -> f64 {
        match self {
            CurveOrientation::Positive => 1.0,
            CurveOrientation::Negative => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            CurveOrientation::Positive => CurveOrientation::Negative,
            CurveOrientation::Negative => CurveOrientation::Positive,
        }
    }
}

/// Closed curve sampled at the nodes of a [`CircleGrid`]: positions `ζ(θ_j)`
/// and derivatives `ζ'(θ_j)`. The orientation flag says whether integrals run
/// along the parametrization (positive) or against it (negative).
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCurve {
    grid: CircleGrid,
    positions: Vec<Complex64>,
    derivatives: Vec<Complex64>,
    orientation: CurveOrientation,
}

impl ParamCurve {
    pub fn new(
        grid: CircleGrid,
        positions: Vec<Complex64>,
        derivatives: Vec<Complex64>,
        orientation: CurveOrientation,
    ) -> Result<Self> {
        let n = grid.size();
        for v in [&positions, &derivatives] {
            if v.len() != n {
                return Err(Error::Length {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        if let Some(j) = positions
            .iter()
            .chain(&derivatives)
            .position(|v| !v.is_finite())
        {
            return Err(Error::NonFinite(j % n));
        }
        if let Some(j) = derivatives.iter().position(|d| d.norm() == 0.0) {
            return Err(Error::Curve(format!("derivative vanishes at node {j}")));
        }
        if n <= INTERSECTION_CHECK_LIMIT {
            check_simple_polygon(&positions)?;
        }
        Ok(Self {
            grid,
            positions,
            derivatives,
            orientation,
        })
    }

    pub fn from_fn(
        grid: CircleGrid,
        position: impl Fn(f64) -> Complex64,
        derivative: impl Fn(f64) -> Complex64,
        orientation: CurveOrientation,
    ) -> Result<Self> {
        Self::new(
            grid,
            grid.nodes().map(&position).collect(),
            grid.nodes().map(&derivative).collect(),
            orientation,
        )
    }

    pub fn unit_circle(grid: CircleGrid) -> Self {
        Self::circle(grid, Complex64::new(0.0, 0.0), 1.0, CurveOrientation::Positive)
            .expect("unit circle is a valid curve")
    }

    /// `ζ(θ) = center + radius·e^{iθ}`.
    pub fn circle(
        grid: CircleGrid,
        center: Complex64,
        radius: f64,
        orientation: CurveOrientation,
    ) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Curve(format!("circle radius {radius} must be positive")));
        }
        Self::from_fn(
            grid,
            |t| center + Complex64::from_polar(radius, t),
            |t| Complex64::i() * Complex64::from_polar(radius, t),
            orientation,
        )
    }

    pub fn from_domain(domain: &JordanDomain, grid: CircleGrid) -> Result<Self> {
        Self::new(
            grid,
            domain.boundary_points(grid),
            domain.boundary_derivatives(grid),
            CurveOrientation::Positive,
        )
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn positions(&self) -> &[Complex64] {
        &self.positions
    }

    pub fn derivatives(&self) -> &[Complex64] {
        &self.derivatives
    }

    pub fn orientation(&self) -> CurveOrientation {
        self.orientation
    }

    pub fn with_orientation(&self, orientation: CurveOrientation) -> ParamCurve {
        ParamCurve {
            orientation,
            ..self.clone()
        }
    }

    pub fn min_node_distance(&self, z: Complex64) -> f64 {
        self.positions
            .iter()
            .map(|p| (p - z).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let cross = |o: Complex64, p: Complex64, q: Complex64| (p - o).im * (q - o).re - (p - o).re * (q - o).im;
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

fn check_simple_polygon(points: &[Complex64]) -> Result<()> {
    let n = points.len();
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let bbox = |i: usize| {
        let (a, b) = seg(i);
        (a.re.min(b.re), a.re.max(b.re), a.im.min(b.im), a.im.max(b.im))
    };
    let boxes: Vec<_> = (0..n).map(bbox).collect();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi.1 < bj.0 || bj.1 < bi.0 || bi.3 < bj.2 || bj.3 < bi.2 {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_cross(a, b, c, d) {
                return Err(Error::Curve(format!("segments {i} and {j} intersect")));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if points[i] == points[j] {
                return Err(Error::Curve(format!("nodes {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

/// `(1/2πi) ∮ F(ζ)/(ζ - z) dζ` by the trapezoidal rule in θ.
pub fn cauchy(curve: &ParamCurve, f: &BoundarySamples, z: Complex64) -> Result<Complex64> {
    if f.grid() != curve.grid {
        return Err(Error::Length {
            expected: curve.grid.size(),
            got: f.grid().size(),
        });
    }
    let n = curve.grid.size();
    let required = PROXIMITY_GUARD / n as f64;
    let distance = curve.min_node_distance(z);
    if distance < required {
        return Err(Error::Proximity {
            z,
            distance,
            required,
        });
    }
    let terms: Vec<Complex64> = f
        .values()
        .iter()
        .zip(&curve.positions)
        .zip(&curve.derivatives)
        .map(|((fv, p), d)| fv * d / (p - z))
        .collect();
    // (2π/N) / (2πi) = -i/N
    let sum = pairwise_sum(&terms) * Complex64::new(0.0, -1.0 / n as f64);
    Ok(sum * curve.orientation.sign())
}

pub const CONSISTENCY_INNER_RADII: [f64; 2] = [0.3, 0.7];
pub const CONSISTENCY_OUTER_RADII: [f64; 2] = [1.4, 3.0];
pub const CONSISTENCY_RAYS: usize = 8;

/// Largest disagreement between the Cauchy transform over the unit circle and
/// the case formulas `C(F) = g` inside, `C(F) = -h` outside, where `(g, h)`
/// is the Laurent split of `F`.
pub fn split_consistency(f: &BoundarySamples) -> Result<f64> {
    let grid = f.grid();
    let curve = ParamCurve::unit_circle(grid);
    let (g, h) = split(&analyze(f)?);
    let mut defect = 0.0f64;
    for k in 0..CONSISTENCY_RAYS {
        let dir = Complex64::from_polar(1.0, TAU * k as f64 / CONSISTENCY_RAYS as f64);
        for r in CONSISTENCY_INNER_RADII {
            let z = dir * r;
            defect = defect.max((cauchy(&curve, f, z)? - eval_disc(&g, z)?).norm());
        }
        for r in CONSISTENCY_OUTER_RADII {
            let z = dir * r;
            defect = defect.max((cauchy(&curve, f, z)? + eval_exterior(&h, z)?).norm());
        }
    }
    Ok(defect)
}

/// Unit disc minus the closed disc of radius `r` centred at `1 - r`; the two
/// boundary circles touch at 1.
#[derive(Clone, Debug)]
pub struct TangentDomain {
    radius: f64,
    outer: ParamCurve,
    inner: ParamCurve,
}

impl TangentDomain {
    pub fn new(radius: f64, grid: CircleGrid) -> Result<Self> {
        Self::with_grids(radius, grid, grid)
    }

    pub fn with_grids(radius: f64, outer: CircleGrid, inner: CircleGrid) -> Result<Self> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::Argument(format!("inner radius {radius} must lie in (0, 1)")));
        }
        let center = 1.0 - radius;
        if (center + radius - 1.0).abs() > f64::EPSILON {
            return Err(Error::Argument(format!("radius {radius} does not give tangency at 1")));
        }
        Ok(Self {
            radius,
            outer: ParamCurve::unit_circle(outer),
            inner: ParamCurve::circle(
                inner,
                Complex64::new(center, 0.0),
                radius,
                CurveOrientation::Negative,
            )?,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn inner_center(&self) -> Complex64 {
        Complex64::new(1.0 - self.radius, 0.0)
    }

    pub fn tangency_point(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    pub fn outer(&self) -> &ParamCurve {
        &self.outer
    }

    pub fn inner(&self) -> &ParamCurve {
        &self.inner
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.norm() < 1.0 && (z - self.inner_center()).norm() > self.radius
    }

    /// Points approaching the tangency point from inside the domain along the
    /// parabola `1 - iρ - κρ²` with `κ = 0.95/(2r)`, which lies between the two
    /// circles (inside the unit disc needs `κ > 1/2`, outside the inner one
    /// `κ < 1/(2r)`). The path is polynomial in `ρ`, so the probe's
    /// extrapolation in `ρ` stays accurate.
    pub fn approach_path(&self, distances: &[f64]) -> Result<Vec<(f64, Complex64)>> {
        let kappa = 0.95 / (2.0 * self.radius);
        if kappa <= 0.5 {
            return Err(Error::Argument(format!(
                "inner radius {} leaves no parabolic approach path",
                self.radius
            )));
        }
        let max_rho = (2.0 * kappa - 1.0).sqrt() / kappa;
        distances
            .iter()
            .map(|&rho| {
                if !(rho > 0.0 && rho < max_rho) {
                    return Err(Error::Argument(format!(
                        "approach distance {rho} must lie in (0, {max_rho})"
                    )));
                }
                let z = self.tangency_point() - Complex64::new(kappa * rho * rho, rho);
                debug_assert!(self.contains(z));
                Ok((rho, z))
            })
            .collect()
    }
}

/// Laurent series about a circle's center in the scaled variable
/// `w = (ζ - center)/radius`, holomorphic outside the circle.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedExterior {
    pub center: Complex64,
    pub radius: f64,
    pub series: ExteriorFunction,
}

impl ShiftedExterior {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        eval_exterior(&self.series, (z - self.center) / self.radius)
    }
}

#[derive(Clone, Debug)]
pub struct TangentSplit {
    pub g: DiscFunction,
    pub h: ShiftedExterior,
    /// `max |F - g - h|` on the outer grid.
    pub outer_defect: f64,
    /// `max |F - g - h|` on the inner grid.
    pub inner_defect: f64,
}

/// Reconstruction defect above which the inputs are rejected.
pub const TANGENT_SPLIT_TOLERANCE: f64 = 1e-6;

/// Splits boundary traces of `F ∈ A(Ω)` into `g` holomorphic on the unit
/// disc and `h` holomorphic outside the inner circle with `h(∞) = 0`.
///
/// `g` is the disc part of the outer trace; `h` is read off the inner trace
/// of `F - g` in the inner circle's own Laurent variable.
pub fn tangent_split(
    domain: &TangentDomain,
    f_outer: &BoundarySamples,
    f_inner: &BoundarySamples,
) -> Result<TangentSplit> {
    if f_outer.grid() != domain.outer.grid() || f_inner.grid() != domain.inner.grid() {
        return Err(Error::Argument("boundary samples do not match the domain grids".into()));
    }
    let (g, _) = split(&analyze(f_outer)?);
    let inner_pts = domain.inner.positions();
    let residual: Vec<Complex64> = f_inner
        .values()
        .iter()
        .zip(inner_pts)
        .map(|(fv, z)| Ok(fv - eval_disc(&g, *z)?))
        .collect::<Result<_>>()?;
    let (_, series) = split(&analyze(&BoundarySamples::new(f_inner.grid(), residual)?)?);
    let h = ShiftedExterior {
        center: domain.inner_center(),
        radius: domain.radius,
        series,
    };

    let defect_on = |pts: &[Complex64], values: &[Complex64]| -> Result<f64> {
        pts.iter().zip(values).try_fold(0.0f64, |acc, (z, fv)| {
            Ok(acc.max((fv - g.eval_unchecked(*z) - h.eval(*z)?).norm()))
        })
    };
    let outer_defect = defect_on(domain.outer.positions(), f_outer.values())?;
    let inner_defect = defect_on(inner_pts, f_inner.values())?;
    let worst = outer_defect.max(inner_defect);
    if worst > TANGENT_SPLIT_TOLERANCE {
        return Err(Error::Inconsistency {
            defect: worst,
            tolerance: TANGENT_SPLIT_TOLERANCE,
        });
    }
    Ok(TangentSplit {
        g,
        h,
        outer_defect,
        inner_defect,
    })
}

/// Curve and data at any requested grid size.
pub trait ProbeSource {
    fn base_size(&self) -> usize;
    fn resample(&self, grid: CircleGrid) -> Result<(ParamCurve, BoundarySamples)>;
}

/// Tabulated curve and data, refined by trigonometric interpolation.
pub struct SampledSource {
    pub curve: ParamCurve,
    pub data: BoundarySamples,
}

fn interpolate(values: &[Complex64], from: CircleGrid, to: CircleGrid) -> Result<Vec<Complex64>> {
    let spectrum: LaurentSpectrum = analyze(&BoundarySamples::new(from, values.to_vec())?)?;
    Ok(synthesize(&spectrum, to)?.into_values())
}

impl ProbeSource for SampledSource {
    fn base_size(&self) -> usize {
        self.curve.grid().size()
    }

    fn resample(&self, grid: CircleGrid) -> Result<(ParamCurve, BoundarySamples)> {
        let from = self.curve.grid();
        if grid == from {
            return Ok((self.curve.clone(), self.data.clone()));
        }
        let curve = ParamCurve::new(
            grid,
            interpolate(self.curve.positions(), from, grid)?,
            interpolate(self.curve.derivatives(), from, grid)?,
            self.curve.orientation(),
        )?;
        let data = BoundarySamples::new(grid, interpolate(self.data.values(), from, grid)?)?;
        Ok((curve, data))
    }
}

/// Curve and data given as functions of θ.
pub struct FnSource<P, D, F> {
    pub base: usize,
    pub position: P,
    pub derivative: D,
    pub data: F,
    pub orientation: CurveOrientation,
}

impl<P, D, F> ProbeSource for FnSource<P, D, F>
where
    P: Fn(f64) -> Complex64,
    D: Fn(f64) -> Complex64,
    F: Fn(f64) -> Complex64,
{
    fn base_size(&self) -> usize {
        self.base
    }

    fn resample(&self, grid: CircleGrid) -> Result<(ParamCurve, BoundarySamples)> {
        let curve = ParamCurve::from_fn(grid, &self.position, &self.derivative, self.orientation)?;
        let data = BoundarySamples::from_fn(grid, &self.data)?;
        Ok((curve, data))
    }
}

/// Unit circle with data `f(e^{iθ})`.
pub fn unit_circle_source(
    base: usize,
    f: impl Fn(Complex64) -> Complex64,
) -> FnSource<impl Fn(f64) -> Complex64, impl Fn(f64) -> Complex64, impl Fn(f64) -> Complex64> {
    FnSource {
        base,
        position: |t: f64| Complex64::from_polar(1.0, t),
        derivative: |t: f64| Complex64::i() * Complex64::from_polar(1.0, t),
        data: move |t: f64| f(Complex64::from_polar(1.0, t)),
        orientation: CurveOrientation::Positive,
    }
}

pub const DEFAULT_MAX_PROBE_GRID: usize = 1 << 16;

/// Grid refinement aims for `N·distance >= PROBE_RESOLUTION`, falling back to
/// the bare proximity guard at the size cap.
pub const PROBE_RESOLUTION: f64 = 40.0;

pub const EXTRAPOLATION_GATE: f64 = 1.5;
pub const GROWTH_GATE: f64 = 10.0;
pub const OSCILLATION_WINDOW: usize = 5;
/// Values used by the polynomial extrapolation to distance zero.
pub const RICHARDSON_POINTS: usize = 5;

/// Neville's scheme evaluated at 0: the value at distance zero of the
/// polynomial through `(radius, value)` pairs.
fn extrapolate_to_zero(radii: &[f64], values: &[Complex64]) -> Complex64 {
    let mut p = values.to_vec();
    for level in 1..p.len() {
        for i in (level..p.len()).rev() {
            let (ri, rj) = (radii[i], radii[i - level]);
            p[i] = (p[i] * rj - p[i - 1] * ri) / (rj - ri);
        }
    }
    *p.last().unwrap()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub approach_radii: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Grid size used at each radius.
    pub grid_sizes: Vec<usize>,
    pub limit_estimate: Option<Complex64>,
    pub divergence_flag: bool,
    pub oscillation_measure: f64,
    /// Set when the grid cap was reached before the smallest radius.
    pub incomplete: bool,
}

impl Serialize for ProbeReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pair = |c: &Complex64| [c.re, c.im];
        let mut s = serializer.serialize_struct("ProbeReport", 6)?;
        s.serialize_field("radii", &self.approach_radii)?;
        s.serialize_field("values", &self.values.iter().map(pair).collect::<Vec<_>>())?;
        s.serialize_field("limit", &self.limit_estimate.as_ref().map(pair))?;
        s.serialize_field("diverges", &self.divergence_flag)?;
        s.serialize_field("oscillation", &self.oscillation_measure)?;
        s.serialize_field("incomplete", &self.incomplete)?;
        s.end()
    }
}

/// Evaluates the Cauchy transform along `path`, a sequence of
/// `(distance to target, point)` with decreasing distances, refining the
/// grid as points approach the curve.
pub fn probe_path(
    source: &dyn ProbeSource,
    path: &[(f64, Complex64)],
    max_grid: usize,
) -> Result<ProbeReport> {
    if path.windows(2).any(|w| !(w[1].0 < w[0].0)) || path.iter().any(|p| !(p.0 > 0.0)) {
        return Err(Error::Argument("probe radii must be positive and strictly decreasing".into()));
    }
    let base = CircleGrid::new(source.base_size())?;
    let max_grid = max_grid.max(base.size());
    let mut cache: BTreeMap<usize, (ParamCurve, BoundarySamples)> = BTreeMap::new();
    let mut fetch = |n: usize| -> Result<(ParamCurve, BoundarySamples)> {
        if let Some(v) = cache.get(&n) {
            return Ok(v.clone());
        }
        let v = source.resample(CircleGrid::new(n)?)?;
        cache.insert(n, v.clone());
        Ok(v)
    };
    let data_sup = fetch(base.size())?.1.sup_norm();

    let mut radii = Vec::new();
    let mut values = Vec::new();
    let mut grid_sizes = Vec::new();
    let mut incomplete = false;
    let mut n = base.size();
    'points: for &(radius, z) in path {
        loop {
            let (curve, data) = fetch(n)?;
            let d = curve.min_node_distance(z);
            let nf = n as f64;
            let resolved = d * nf >= PROBE_RESOLUTION;
            let guarded = d * nf >= PROXIMITY_GUARD;
            if resolved || (guarded && n * 2 > max_grid) {
                values.push(cauchy(&curve, &data, z)?);
                radii.push(radius);
                grid_sizes.push(n);
                break;
            }
            if n * 2 > max_grid {
                incomplete = true;
                break 'points;
            }
            n *= 2;
        }
    }
    let (limit_estimate, divergence_flag, oscillation_measure) = assess(&radii, &values, data_sup);
    Ok(ProbeReport {
        approach_radii: radii,
        values,
        grid_sizes,
        limit_estimate,
        divergence_flag,
        oscillation_measure,
        incomplete,
    })
}

fn assess(radii: &[f64], values: &[Complex64], data_sup: f64) -> (Option<Complex64>, bool, f64) {
    if values.is_empty() {
        return (None, false, 0.0);
    }
    let window = &values[values.len().saturating_sub(OSCILLATION_WINDOW)..];
    let oscillation = window
        .iter()
        .flat_map(|a| window.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max);
    let mean_mag = window.iter().map(|v| v.norm()).sum::<f64>() / window.len() as f64;
    let scale = mean_mag.max(data_sup);
    let grows = window.windows(2).all(|w| w[1].norm() >= w[0].norm())
        && window.last().unwrap().norm() > GROWTH_GATE * data_sup;
    let diverges = grows || oscillation > 0.5 * scale;
    if diverges {
        return (None, true, oscillation);
    }
    let last = *values.last().unwrap();
    let limit = if values.len() >= 3 {
        let k = values.len() - 1;
        let d_last = values[k] - values[k - 1];
        let d_prev = values[k - 1] - values[k - 2];
        if d_last.norm() > 0.0 && d_prev.norm() / d_last.norm() >= EXTRAPOLATION_GATE {
            let m = values.len().min(RICHARDSON_POINTS);
            extrapolate_to_zero(&radii[radii.len() - m..], &values[values.len() - m..])
        } else {
            last
        }
    } else {
        last
    };
    (Some(limit), false, oscillation)
}

/// Probe along `target - radius·direction` for each radius.
pub fn radial_probe(
    source: &dyn ProbeSource,
    target: Complex64,
    direction: Complex64,
    radii: &[f64],
    max_grid: usize,
) -> Result<ProbeReport> {
    if (direction.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Argument("probe direction must be a unit complex number".into()));
    }
    let path: Vec<(f64, Complex64)> = radii.iter().map(|r| (*r, target - direction * *r)).collect();
    probe_path(source, &path, max_grid)
}

/// Probe cap from the `TOOL_MAX_N` environment variable, if set.
pub fn max_probe_grid_from_env() -> usize {
    std::env::var("TOOL_MAX_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| n.is_power_of_two())
        .map_or(DEFAULT_MAX_PROBE_GRID, |n| n.max(DEFAULT_MAX_PROBE_GRID))
}
