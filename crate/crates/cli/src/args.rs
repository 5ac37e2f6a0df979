use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Generalized Hilbert matrices from measures on (0, 1) and their action on Hardy spaces.
#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "gamma-mu", version, args_override_self = true)]
pub struct RunConfig {
    /// JSON file holding a "command" key and flag values; inline flags win
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Worker threads for entry and node parallelism
    #[arg(long, global = true, env = "GAMMA_MU_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Hausdorff,
    Gamma,
    Tt,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathArg {
    Coeff,
    Boundary,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Psi,
    Section,
    Probe,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    SignFlip,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Moments of a measure
    Moments {
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
    /// Hausdorff, generalized Hilbert or composition matrix
    Matrix {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long = "t")]
        t: Option<f64>,
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        measure: Option<String>,
        /// Build the Hausdorff matrix from forward differences of the moments
        #[arg(long)]
        via_differences: bool,
    },
    /// Hankel and Toeplitz tests for the generalized Hilbert matrix
    Structure {
        #[arg(long)]
        measure: String,
        #[arg(long = "n", default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// H^p norm of fa:<a>, kernel:<r>[:<q>], coeffs:<path> or poly:<c0,c1,...>
    Hardy {
        #[arg(long)]
        f: String,
        #[arg(long = "p")]
        p: f64,
        #[arg(long, default_value_t = 8192)]
        grid: usize,
    },
    /// Apply the operator along the coefficient or the boundary-integral path
    Apply {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value_t = PathArg::Coeff)]
        path: PathArg,
        #[arg(long = "n", default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
    /// Decide convergence of the psi_p integral
    Criterion {
        #[arg(long)]
        measure: String,
        #[arg(long = "p")]
        p: f64,
    },
    /// Operator norm estimates
    Norm {
        #[arg(long)]
        measure: String,
        #[arg(long = "p", default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Psi)]
        method: MethodArg,
        #[arg(long = "n", default_value_t = 256)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        a_list: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, default_value_t = 65536)]
        grid: usize,
    },
    /// Kernel probe for non-compactness on H^p
    Compactness {
        #[arg(long)]
        measure: String,
        #[arg(long = "p", default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        r_list: Vec<f64>,
        #[arg(long, default_value_t = 8192)]
        grid: usize,
    },
    /// Normalized H^1 kernel probe for complete continuity
    Ccprobe {
        #[arg(long)]
        measure: String,
        #[arg(long, value_delimiter = ',', required = true)]
        r_list: Vec<f64>,
        #[arg(long, default_value_t = 65536)]
        grid: usize,
    },
    /// Run the invariant suite
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Moments { .. } => "moments",
            Command::Matrix { .. } => "matrix",
            Command::Structure { .. } => "structure",
            Command::Hardy { .. } => "hardy",
            Command::Apply { .. } => "apply",
            Command::Criterion { .. } => "criterion",
            Command::Norm { .. } => "norm",
            Command::Compactness { .. } => "compactness",
            Command::Ccprobe { .. } => "ccprobe",
            Command::Check { .. } => "check",
        }
    }
}
