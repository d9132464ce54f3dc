use crate::failure::usage;
use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hubble_core::resolvent::QuadratureConfig;
use num_complex::Complex64;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "hubble-spectrum", version, about = "Eigenfunctions, Green's kernel and L^p spectrum of -d²/dx² - x²")]
pub struct Cli {
    /// JSON file presetting quadrature fields (half_width, base_step, phase_resolution).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate H_ν(z) or one of the eigen-solutions.
    Eval(EvalArgs),
    /// Tabulate the Green's kernel on a square grid.
    Kernel(KernelArgs),
    /// Classify a rectangle of λ values against the L^p spectrum.
    Map(MapArgs),
    /// Run invariant checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    PsiNu,
    PsiNeg,
    PhiAcute,
    PhiGrave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Evaluate the Hermite function H_ν(z) itself.
    #[arg(long, conflicts_with = "family", requires_all = ["nu", "z"])]
    pub hermite: bool,

    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,

    /// Spectral parameter as re,im.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "nu", value_parser = parse_complex)]
    pub lambda: Option<Complex64>,

    /// Hermite order as re,im.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub nu: Option<Complex64>,

    /// Hermite argument as re,im.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub z: Option<Complex64>,

    /// Single evaluation point.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
    pub x: Option<f64>,

    /// Uniform grid start,stop,count; writes CSV x,re,im.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    pub grid: Option<GridSpec>,

    /// Allow Im λ < 0 by evaluating at the conjugate point and conjugating.
    #[arg(long)]
    pub conjugate: bool,

    #[arg(long, short)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "text")]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub lambda: Complex64,

    /// Half side of the square [-box, box]².
    #[arg(long = "box", default_value_t = 10.0)]
    pub sample_box: f64,

    /// Nodes per axis.
    #[arg(long, default_value_t = 101)]
    pub n: usize,

    #[arg(long)]
    pub conjugate: bool,

    /// Fail unless s(x, x') = s(x', x) on every grid pair.
    #[arg(long)]
    pub check_symmetry: bool,

    #[arg(long, short)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Lebesgue exponent: a number ≥ 1, a fraction like 4/3, or inf.
    #[arg(long)]
    pub p: String,

    /// Real range lo,hi.
    #[arg(long, allow_hyphen_values = true, default_value = "-2,2", value_parser = parse_range)]
    pub re: (f64, f64),

    /// Imaginary range lo,hi.
    #[arg(long, allow_hyphen_values = true, default_value = "-2,2", value_parser = parse_range)]
    pub im: (f64, f64),

    /// Nodes per axis.
    #[arg(long, default_value_t = 201)]
    pub resolution: usize,

    /// Attach a resolvent-norm probe to every node.
    #[arg(long)]
    pub probe: bool,

    #[arg(long, default_value_t = 10.0)]
    pub probe_box: f64,

    #[arg(long, default_value_t = 200)]
    pub probe_n: usize,

    #[arg(long, short)]
    pub output: Option<PathBuf>,

    /// Metadata path; defaults to the output path with a .json extension.
    #[arg(long)]
    pub metadata: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Specfun,
    Eigen,
    Resolvent,
    Spectrum,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,

    /// Spectral parameter for the resolvent suite.
    #[arg(long, allow_hyphen_values = true, default_value = "0,2", value_parser = parse_complex)]
    pub lambda: Complex64,

    #[arg(long)]
    pub conjugate: bool,

    /// Write a JSON report with one record per check.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("{t:?} is not a number")))
        .collect()
}

/// `re,im` or a bare real.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let v = parse_reals(s)?;
    let c = match v[..] {
        [re] => Complex64::new(re, 0.0),
        [re, im] => Complex64::new(re, im),
        _ => return Err(format!("expected re,im, got {s:?}")),
    };
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    match parse_reals(s)?[..] {
        [a, b] if a.is_finite() && b.is_finite() && a <= b => Ok((a, b)),
        _ => Err(format!("expected lo,hi with lo <= hi, got {s:?}")),
    }
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected start,stop,count, got {s:?}"));
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| format!("bad start {:?}", parts[0]))?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| format!("bad stop {:?}", parts[1]))?;
    let count: usize = parts[2].trim().parse().map_err(|_| format!("bad count {:?}", parts[2]))?;
    if !(start.is_finite() && stop.is_finite() && start < stop && count >= 2) {
        return Err(format!("grid needs start < stop and count >= 2, got {s:?}"));
    }
    Ok(GridSpec { start, stop, count })
}

/// Rejects `Im λ < 0` unless the caller opted into the conjugate reduction.
pub fn check_half_plane(lambda: Complex64, conjugate: bool) -> anyhow::Result<()> {
    if lambda.im < 0.0 && !conjugate {
        return Err(usage(format!(
            "Im λ < 0 (λ = {},{}) is handled through the conjugate point; pass --conjugate",
            lambda.re, lambda.im
        )));
    }
    Ok(())
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    half_width: Option<f64>,
    base_step: Option<f64>,
    phase_resolution: Option<f64>,
}

/// Quadrature settings: defaults overridden by the optional JSON file.
pub fn load_config(path: Option<&Path>) -> anyhow::Result<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    let Some(path) = path else {
        return Ok(cfg);
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: ConfigFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))?;
    if let Some(v) = file.half_width {
        cfg.half_width = v;
    }
    if let Some(v) = file.base_step {
        cfg.base_step = v;
    }
    if let Some(v) = file.phase_resolution {
        cfg.phase_resolution = v;
    }
    cfg.validate()?;
    Ok(cfg)
}
