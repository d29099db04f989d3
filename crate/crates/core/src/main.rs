use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use boundary_split::cli::{
    error_record, parse_complex, parse_list, parse_points, run, Approach, Command,
    ExperimentConfig, DEFAULT_GRID,
};
use boundary_split::jordan_domain::MAX_TRIPLE_BUDGET;
use boundary_split::phi::PhiVariant;
use boundary_split::Result;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Circle,
    Disc,
    Exterior,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ApproachArg {
    Radial,
    Domain,
}

/// Boundary splitting and related experiments on the unit circle.
#[derive(Parser, Debug)]
#[command(name = "bsplit", version)]
struct Args {
    /// split, conj-split, phi, classify, cauchy, jump-check, tangent-split,
    /// probe-tangent, riesz-norm, welding-check, qs-estimate
    command: String,
    #[arg(long = "n", default_value_t = DEFAULT_GRID)]
    grid_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated approach distances.
    #[arg(long)]
    radii: Option<String>,
    /// Domain file `{"coeffs": [...], "offset": [re, im]}`.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Inner boundary samples for tangent-split.
    #[arg(long)]
    inner: Option<PathBuf>,
    /// `re,im`
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    /// `re,im`
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Comma-separated polynomial degrees.
    #[arg(long)]
    degrees: Option<String>,
    /// Evaluation points `re,im;re,im;...`
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long, value_enum, default_value = "circle")]
    variant: VariantArg,
    #[arg(long)]
    inverse: bool,
    /// Inner circle radius of the tangent-circles domain.
    #[arg(long, default_value_t = 0.25)]
    radius: f64,
    #[arg(long, value_enum, default_value = "radial")]
    approach: ApproachArg,
    #[arg(long, default_value_t = MAX_TRIPLE_BUDGET)]
    budget: u64,
}

fn build_config(args: Args) -> Result<ExperimentConfig> {
    let mut c = ExperimentConfig::new(args.command.parse::<Command>()?);
    c.grid_size = args.grid_size;
    c.seed = args.seed;
    c.input_path = args.input;
    c.output_path = args.out;
    c.radii = args.radii.as_deref().map(parse_list).transpose()?;
    c.coeffs_path = args.coeffs;
    c.inner_path = args.inner;
    if let Some(t) = &args.target {
        c.target = parse_complex(t)?;
    }
    if let Some(d) = &args.direction {
        c.direction = parse_complex(d)?;
    }
    if let Some(d) = &args.degrees {
        c.degrees = parse_list(d)?;
    }
    if let Some(p) = &args.points {
        c.points = parse_points(p)?;
    }
    c.variant = match args.variant {
        VariantArg::Circle => PhiVariant::Circle,
        VariantArg::Disc => PhiVariant::Disc,
        VariantArg::Exterior => PhiVariant::Exterior,
    };
    c.inverse = args.inverse;
    c.inner_radius = args.radius;
    c.approach = match args.approach {
        ApproachArg::Radial => Approach::Radial,
        ApproachArg::Domain => Approach::Domain,
    };
    c.budget = args.budget;
    Ok(c)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = args.command.parse::<Command>().ok();
    let result = build_config(args).and_then(|c| run(&c));
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("{}", error_record(command, &e));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
