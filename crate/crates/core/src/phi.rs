//! The smoothing isomorphism `Φ(f) = df/dθ + f̂(0)` on the circle, its
//! restrictions to the disc (`Φ(f)(z) = i z f'(z) + f(0)`) and to the
//! exterior (`Φ(f)(z) = i z f'(z)`), their inverses, and antiderivatives.
//!
//! All maps act coefficientwise: index `n ≠ 0` is multiplied (or divided) by
//! `in`, index 0 is left alone.

use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::circle_fourier::{times_i_pow, LaurentSpectrum};
use crate::error::{Error, Result};
use crate::jordan_domain::JordanDomain;
use crate::laurent_split::{DiscFunction, ExteriorFunction};

/// Which representation a Φ map acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiVariant {
    Circle,
    Disc,
    Exterior,
}

impl std::str::FromStr for PhiVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circle" => Ok(PhiVariant::Circle),
            "disc" => Ok(PhiVariant::Disc),
            "exterior" => Ok(PhiVariant::Exterior),
            other => Err(Error::Argument(format!("unknown phi variant `{other}`"))),
        }
    }
}

fn times_in(n: i64, c: Complex64) -> Complex64 {
    if n == 0 {
        c
    } else {
        times_i_pow(c, 1) * n as f64
    }
}

fn over_in(n: i64, c: Complex64) -> Complex64 {
    if n == 0 {
        c
    } else {
        times_i_pow(c, 3) / n as f64
    }
}

pub fn phi_circle(s: &LaurentSpectrum) -> LaurentSpectrum {
    s.map_indexed(times_in)
}

pub fn phi_circle_inverse(s: &LaurentSpectrum) -> LaurentSpectrum {
    s.map_indexed(over_in)
}

pub fn phi_disc(f: &DiscFunction) -> DiscFunction {
    f.map_indexed(times_in)
}

pub fn phi_disc_inverse(g: &DiscFunction) -> DiscFunction {
    g.map_indexed(over_in)
}

pub fn phi_exterior(f: &ExteriorFunction) -> ExteriorFunction {
    f.map_indexed(times_in)
}

pub fn phi_exterior_inverse(f: &ExteriorFunction) -> ExteriorFunction {
    f.map_indexed(over_in)
}

/// `F(z) = ∫_[0,z] f`: coefficient `n + 1` becomes `a_n / (n + 1)`.
pub fn antiderivative_disc(f: &DiscFunction) -> Result<DiscFunction> {
    let end = f.end_index();
    let top = f.get(end - 1);
    if top.norm() != 0.0 {
        return Err(Error::RangeGrowth {
            needed: end,
            max: end - 1,
            size: f.grid_size(),
        });
    }
    let mut out = DiscFunction::zeros(f.grid_size())?;
    for (n, c) in f.iter().take_while(|(n, _)| *n < end - 1) {
        out.set(n + 1, c / (n + 1) as f64)?;
    }
    Ok(out)
}

pub const SEGMENT_QUADRATURE_NODES: usize = 64;

fn gauss_legendre() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(SEGMENT_QUADRATURE_NODES).expect("64 nodes is a valid rule")
    })
}

/// Line integral of `f` along the segment from the domain center to `z`.
///
/// Requires a star-like domain so that the segment stays inside the closure.
pub fn antiderivative_starlike(
    domain: &JordanDomain,
    f: impl Fn(Complex64) -> Complex64,
    z: Complex64,
) -> Result<Complex64> {
    let (starlike, margin) = domain.starlike_check()?;
    if !starlike {
        return Err(Error::NotStarlike { margin });
    }
    if !domain.contains_closed(z) {
        return Err(Error::Domain {
            z,
            reason: "point is outside the closed domain",
        });
    }
    let center = domain.center();
    let delta = z - center;
    // x ∈ [-1, 1] ↦ center + (x + 1)/2 · delta
    let sum = gauss_legendre()
        .as_node_weight_pairs()
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, (x, w)| {
            acc + f(center + delta * (0.5 * (x + 1.0))) * *w
        });
    Ok(sum * delta * 0.5)
}
