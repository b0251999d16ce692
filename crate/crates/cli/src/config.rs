use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "symspace", version, about = "Verification suites and tables for harmonic analysis on SL(d,R)/SO(d)")]
pub struct RunConfig {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Matrix size d
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// RNG seed; falls back to SYMM_SEED, then 1
    #[arg(long, global = true, env = "SYMM_SEED")]
    pub seed: Option<u64>,
    /// Random trials, points or Monte Carlo samples, depending on the subcommand
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Pass/fail tolerance override
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Quadrature nodes for deterministic rules
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Iwasawa,
    Cartan,
    Polar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationArg {
    Trace,
    Killing,
    CasimirMatched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    Compact,
    Noncompact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Commutation, transformation and scaling laws on jets
    VerifyAlgebra,
    /// Roots, simple system, ρ and the Weyl group
    RootSystem,
    /// Iwasawa, Cartan or polar factors of a matrix
    Decompose {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Row-major JSON matrix, e.g. [[1,0],[1,1]]
        #[arg(long, conflicts_with = "input")]
        matrix: Option<String>,
        /// File holding a row-major JSON matrix
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// φ_λ along the ρ direction of the positive chamber
    SphericalTable {
        /// Comma-separated spectral parameter; a single value s means s·ρ/ρ₁, so (s, −s) at d = 2
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 3.0)]
        t_max: f64,
        #[arg(long, default_value_t = 16)]
        count: usize,
        /// JSON list of group elements; replaces the ρ-direction sweep
        #[arg(long)]
        points_file: Option<PathBuf>,
    },
    /// Spherical function against the radial Laplacian, plus the Harish-Chandra constants
    RadialCheck {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = NormalizationArg::CasimirMatched)]
        normalization: NormalizationArg,
    },
    /// Explicit d = 2 basis functions and their Casimir eigen-residuals
    BasisEval {
        #[arg(long = "basis", value_enum, default_value_t = Series::Compact)]
        series: Series,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        /// JSON list of 2×2 SPD matrices; random points when absent
        #[arg(long)]
        points_file: Option<PathBuf>,
    },
    /// Mehler–Fock transform of two-column CSV data, or a round-trip self test
    MehlerFock {
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i32,
        /// Two-column CSV (u, f) for forward, (s, F) or (s, re F, im F) for inverse
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 12.0)]
        s_max: f64,
    },
    /// Properties i–vii of φ_λ and Weyl invariance
    Properties {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::VerifyAlgebra => "verify-algebra",
            Self::RootSystem => "root-system",
            Self::Decompose { .. } => "decompose",
            Self::SphericalTable { .. } => "spherical-table",
            Self::RadialCheck { .. } => "radial-check",
            Self::BasisEval { .. } => "basis-eval",
            Self::MehlerFock { .. } => "mehler-fock",
            Self::Properties { .. } => "properties",
        }
    }
}

impl RunConfig {
    pub fn seed(&self) -> u64 {
        self.common.seed.unwrap_or(1)
    }

    pub fn dim_or(&self, default: usize) -> usize {
        self.common.dim.unwrap_or(default)
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.common.tol.unwrap_or(default)
    }
}
