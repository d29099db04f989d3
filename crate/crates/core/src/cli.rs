//! Command dispatch for the `bsplit` binary. Kept in the library so the
//! commands can be driven from tests without spawning processes.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cauchy::{
    cauchy, max_probe_grid_from_env, probe_path, radial_probe, split_consistency, tangent_split,
    ParamCurve, SampledSource, TangentDomain,
};
use crate::circle_fourier::{analyze, classify_smoothness, CircleGrid};
use crate::error::{Error, Result};
use crate::experiments::{classify_sweep, riesz_norm_experiment, riesz_csv, sweep_csv};
use crate::io::{
    disc_from_json, disc_to_json, domain_from_json, exterior_from_json, exterior_to_json,
    homeomorphism_from_json, homeomorphism_to_json, read_json, samples_from_json,
    spectrum_from_json, spectrum_to_json, write_json,
};
use crate::jordan_domain::{
    quasisymmetry_estimate, welding_compose, wrap_to_pi, CircleHomeomorphism, JordanDomain,
    MAX_TRIPLE_BUDGET,
};
use crate::laurent_split::{conjugate_split, split};
use crate::phi::{
    phi_circle, phi_circle_inverse, phi_disc, phi_disc_inverse, phi_exterior,
    phi_exterior_inverse, PhiVariant,
};

pub const MIN_CONFIG_GRID: usize = 16;
pub const MAX_CONFIG_GRID: usize = 65536;
pub const DEFAULT_GRID: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Split,
    ConjSplit,
    Phi,
    Classify,
    Cauchy,
    JumpCheck,
    TangentSplit,
    ProbeTangent,
    RieszNorm,
    WeldingCheck,
    QsEstimate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Split => "split",
            Command::ConjSplit => "conj-split",
            Command::Phi => "phi",
            Command::Classify => "classify",
            Command::Cauchy => "cauchy",
            Command::JumpCheck => "jump-check",
            Command::TangentSplit => "tangent-split",
            Command::ProbeTangent => "probe-tangent",
            Command::RieszNorm => "riesz-norm",
            Command::WeldingCheck => "welding-check",
            Command::QsEstimate => "qs-estimate",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "split" => Command::Split,
            "conj-split" => Command::ConjSplit,
            "phi" => Command::Phi,
            "classify" => Command::Classify,
            "cauchy" => Command::Cauchy,
            "jump-check" => Command::JumpCheck,
            "tangent-split" => Command::TangentSplit,
            "probe-tangent" => Command::ProbeTangent,
            "riesz-norm" => Command::RieszNorm,
            "welding-check" => Command::WeldingCheck,
            "qs-estimate" => Command::QsEstimate,
            other => return Err(Error::Argument(format!("unknown command `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Approach {
    #[default]
    Radial,
    /// Curved path inside the tangent-circles domain.
    Domain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub grid_size: usize,
    pub seed: u64,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub radii: Option<Vec<f64>>,
    pub coeffs_path: Option<PathBuf>,
    pub inner_path: Option<PathBuf>,
    pub target: Complex64,
    pub direction: Complex64,
    pub degrees: Vec<usize>,
    pub points: Vec<Complex64>,
    pub variant: PhiVariant,
    pub inverse: bool,
    pub inner_radius: f64,
    pub approach: Approach,
    pub budget: u64,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            grid_size: DEFAULT_GRID,
            seed: 0,
            input_path: None,
            output_path: None,
            radii: None,
            coeffs_path: None,
            inner_path: None,
            target: Complex64::new(1.0, 0.0),
            direction: Complex64::new(1.0, 0.0),
            degrees: (3..=10).map(|k| 1usize << k).collect(),
            points: Vec::new(),
            variant: PhiVariant::Circle,
            inverse: false,
            inner_radius: 0.25,
            approach: Approach::Radial,
            budget: MAX_TRIPLE_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.grid_size.is_power_of_two()
            || self.grid_size < MIN_CONFIG_GRID
            || self.grid_size > MAX_CONFIG_GRID
        {
            return Err(Error::Argument(format!(
                "--n must be a power of two in [{MIN_CONFIG_GRID}, {MAX_CONFIG_GRID}], got {}",
                self.grid_size
            )));
        }
        Ok(())
    }
}

/// Parses `re,im` (or a bare real number).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Argument(format!("cannot parse complex number `{s}`"));
    let mut parts = s.split(',').map(str::trim);
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Parses `re,im;re,im;...`.
pub fn parse_points(s: &str) -> Result<Vec<Complex64>> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(parse_complex).collect()
}

pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse()
                .map_err(|_| Error::Argument(format!("cannot parse list entry `{p}`")))
        })
        .collect()
}

/// What a successful run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub written: Vec<PathBuf>,
    /// Some inputs failed but the run completed (classification sweeps).
    pub partial_failure: bool,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.partial_failure {
            2
        } else {
            0
        }
    }
}

fn require<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::Argument(format!("missing required flag {flag}")))
}

fn pair(c: Complex64) -> Value {
    json!([c.re, c.im])
}

enum Output {
    Json(Value),
    Text(String),
    Files(Vec<(String, Value)>),
}

fn emit(config: &ExperimentConfig, output: Output) -> Result<Vec<PathBuf>> {
    match output {
        Output::Json(v) => match &config.output_path {
            Some(p) => {
                write_json(p, &v)?;
                Ok(vec![p.clone()])
            }
            None => {
                println!("{}", serde_json::to_string_pretty(&v)?);
                Ok(vec![])
            }
        },
        Output::Text(t) => match &config.output_path {
            Some(p) => {
                fs::write(p, t)?;
                Ok(vec![p.clone()])
            }
            None => {
                print!("{t}");
                Ok(vec![])
            }
        },
        Output::Files(files) => {
            let dir = require(&config.output_path, "--out")?;
            fs::create_dir_all(dir)?;
            files
                .into_iter()
                .map(|(name, v)| {
                    let p = dir.join(name);
                    write_json(&p, &v)?;
                    Ok(p)
                })
                .collect()
        }
    }
}

pub fn run(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    let mut partial_failure = false;
    let output = match config.command {
        Command::Split => {
            let samples = samples_from_json(read_json(require(&config.input_path, "--in")?)?)?;
            let (g, h) = split(&analyze(&samples)?);
            Output::Files(vec![
                ("g.json".into(), disc_to_json(&g)),
                ("h.json".into(), exterior_to_json(&h)),
            ])
        }
        Command::ConjSplit => {
            let samples = samples_from_json(read_json(require(&config.input_path, "--in")?)?)?;
            let (g, h) = conjugate_split(&analyze(&samples)?);
            Output::Files(vec![
                ("g.json".into(), disc_to_json(&g)),
                ("h.json".into(), disc_to_json(&h)),
            ])
        }
        Command::Phi => {
            let v = read_json(require(&config.input_path, "--in")?)?;
            Output::Json(match (config.variant, config.inverse) {
                (PhiVariant::Circle, false) => spectrum_to_json(&phi_circle(&spectrum_from_json(v)?)),
                (PhiVariant::Circle, true) => {
                    spectrum_to_json(&phi_circle_inverse(&spectrum_from_json(v)?))
                }
                (PhiVariant::Disc, false) => disc_to_json(&phi_disc(&disc_from_json(v)?)),
                (PhiVariant::Disc, true) => disc_to_json(&phi_disc_inverse(&disc_from_json(v)?)),
                (PhiVariant::Exterior, false) => {
                    exterior_to_json(&phi_exterior(&exterior_from_json(v)?))
                }
                (PhiVariant::Exterior, true) => {
                    exterior_to_json(&phi_exterior_inverse(&exterior_from_json(v)?))
                }
            })
        }
        Command::Classify => {
            let input = require(&config.input_path, "--in")?;
            if input.is_dir() {
                let rows = classify_sweep(input)?;
                partial_failure = rows.iter().any(|r| r.outcome.is_err());
                Output::Text(sweep_csv(&rows))
            } else {
                let report = classify_smoothness(&spectrum_from_json(read_json(input)?)?)?;
                Output::Json(serde_json::to_value(report)?)
            }
        }
        Command::Cauchy => {
            let samples = samples_from_json(read_json(require(&config.input_path, "--in")?)?)?;
            let curve = match &config.coeffs_path {
                Some(p) => ParamCurve::from_domain(&domain_from_json(read_json(p)?)?, samples.grid())?,
                None => ParamCurve::unit_circle(samples.grid()),
            };
            let points = if config.points.is_empty() {
                vec![config.target]
            } else {
                config.points.clone()
            };
            let values = points
                .iter()
                .map(|z| Ok(json!({"z": pair(*z), "value": pair(cauchy(&curve, &samples, *z)?)})))
                .collect::<Result<Vec<_>>>()?;
            Output::Json(Value::Array(values))
        }
        Command::JumpCheck => {
            let samples = samples_from_json(read_json(require(&config.input_path, "--in")?)?)?;
            Output::Json(json!({ "defect": split_consistency(&samples)? }))
        }
        Command::TangentSplit => {
            let outer = samples_from_json(read_json(require(&config.input_path, "--in")?)?)?;
            let inner = samples_from_json(read_json(require(&config.inner_path, "--inner")?)?)?;
            let domain = TangentDomain::with_grids(config.inner_radius, outer.grid(), inner.grid())?;
            let s = tangent_split(&domain, &outer, &inner)?;
            Output::Json(json!({
                "g": disc_to_json(&s.g),
                "h": {
                    "center": pair(s.h.center),
                    "radius": s.h.radius,
                    "series": exterior_to_json(&s.h.series),
                },
                "outer_defect": s.outer_defect,
                "inner_defect": s.inner_defect,
            }))
        }
        Command::ProbeTangent => {
            let samples = samples_from_json(read_json(require(&config.input_path, "--in")?)?)?;
            let source = SampledSource {
                curve: ParamCurve::unit_circle(samples.grid()),
                data: samples,
            };
            let radii = config
                .radii
                .clone()
                .unwrap_or_else(|| (3..=10).map(|k| 2f64.powi(-k)).collect());
            let cap = max_probe_grid_from_env();
            let report = match config.approach {
                Approach::Radial => radial_probe(&source, config.target, config.direction, &radii, cap)?,
                Approach::Domain => {
                    let domain = TangentDomain::new(config.inner_radius, CircleGrid::new(MIN_CONFIG_GRID)?)?;
                    probe_path(&source, &domain.approach_path(&radii)?, cap)?
                }
            };
            Output::Json(serde_json::to_value(report)?)
        }
        Command::RieszNorm => Output::Text(riesz_csv(&riesz_norm_experiment(&config.degrees, config.seed)?)),
        Command::WeldingCheck => {
            let domain = match &config.coeffs_path {
                Some(p) => domain_from_json(read_json(p)?)?,
                None => JordanDomain::unit_disc(),
            };
            let delta = match &config.input_path {
                Some(p) => homeomorphism_from_json(read_json(p)?)?,
                None => CircleHomeomorphism::identity(CircleGrid::new(config.grid_size)?),
            };
            let welding = welding_compose(&domain, &delta)?;
            let round_trip = delta
                .psi()
                .iter()
                .zip(welding.psi())
                .map(|(target, t)| wrap_to_pi((domain.gamma(*t) - domain.center()).arg() - target).abs())
                .fold(0.0, f64::max);
            let mut v = homeomorphism_to_json(&welding);
            v["round_trip_defect"] = json!(round_trip);
            Output::Json(v)
        }
        Command::QsEstimate => {
            let h = match &config.input_path {
                Some(p) => homeomorphism_from_json(read_json(p)?)?,
                None => CircleHomeomorphism::identity(CircleGrid::new(config.grid_size)?),
            };
            Output::Json(serde_json::to_value(quasisymmetry_estimate(&h, config.budget)?)?)
        }
    };
    let written = emit(config, output)?;
    Ok(RunOutcome {
        written,
        partial_failure,
    })
}

/// Structured error record printed on failure.
pub fn error_record(command: Option<Command>, err: &Error) -> Value {
    json!({
        "command": command.map(|c| c.name()),
        "error": err.kind(),
        "message": err.to_string(),
        "exit_code": err.exit_code(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("1.5,-2").unwrap(), Complex64::new(1.5, -2.0));
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
        assert_eq!(parse_points("0.3,0;2,0").unwrap().len(), 2);
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list::<usize>("8,16, 32").unwrap(), vec![8, 16, 32]);
        assert!(parse_list::<usize>("8,x").is_err());
    }

    #[test]
    fn config_guard() {
        let mut c = ExperimentConfig::new(Command::RieszNorm);
        c.grid_size = 8;
        assert!(c.validate().is_err());
        c.grid_size = 100;
        assert!(c.validate().is_err());
        c.grid_size = 1 << 17;
        assert!(c.validate().is_err());
        c.grid_size = 16;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn command_names_round_trip() {
        for name in [
            "split", "conj-split", "phi", "classify", "cauchy", "jump-check", "tangent-split",
            "probe-tangent", "riesz-norm", "welding-check", "qs-estimate",
        ] {
            assert_eq!(name.parse::<Command>().unwrap().name(), name);
        }
    }

    #[test]
    fn missing_input_is_a_config_error() {
        let err = run(&ExperimentConfig::new(Command::Split)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
