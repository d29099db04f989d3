//! Boundary splitting of functions on the unit circle and on analytic Jordan
//! curves: Fourier analysis on uniform grids, the disc/exterior split, the
//! derivative-type isomorphisms, trapezoidal Cauchy transforms, radial probes,
//! welding of circle homeomorphisms and a few packaged experiments.

pub mod cauchy;
pub mod circle_fourier;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod io;
pub mod jordan_domain;
pub mod laurent_split;
pub mod numerics;
pub mod phi;

pub use error::{Error, Result};
