use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "polder", version, about = "Casimir-Polder free energies of dissolved atoms near a planar interface")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate F(z) on a log grid as CSV.
    Sweep(SweepArgs),
    /// Locate sign changes of the retarded F(z) and report them as JSON.
    Crossover(CrossoverArgs),
    /// Load material and atom files, check their invariants and print probes.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Atom file (repeatable).
    #[arg(long = "atom", required = true)]
    pub atoms: Vec<PathBuf>,
    /// Solvent material file.
    #[arg(long)]
    pub solvent: PathBuf,
    /// Medium across the interface (repeatable).
    #[arg(long = "oil", required = true)]
    pub oils: Vec<PathBuf>,
    #[arg(long, default_value_t = 300.0)]
    pub temp_kelvin: f64,
    #[arg(long, default_value_t = 1.0)]
    pub zmin_nm: f64,
    #[arg(long, default_value_t = 300.0)]
    pub zmax_nm: f64,
    /// Log-spaced grid points [default: 64 for sweep, 128 for crossover].
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub sum_rtol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub quad_rtol: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_enum, default_value_t = RegimeArg::Both)]
    pub regime: RegimeArg,
    #[arg(long, value_enum, default_value_t = Units::J)]
    pub units: Units,
}

#[derive(Debug, Args)]
pub struct CrossoverArgs {
    #[command(flatten)]
    pub system: SystemArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Material or atom files.
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[arg(long, default_value_t = 300.0)]
    pub temp_kelvin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Retarded,
    Nonretarded,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    #[value(name = "J")]
    J,
    #[value(name = "kT")]
    KT,
    #[value(name = "zJ")]
    ZJ,
}

impl Units {
    pub fn label(self) -> &'static str {
        match self {
            Units::J => "J",
            Units::KT => "kT",
            Units::ZJ => "zJ",
        }
    }
}
