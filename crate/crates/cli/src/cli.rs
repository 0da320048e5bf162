use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "fcc",
    version,
    about = "Function-correcting codes for Hamming weight functions"
)]
pub struct Cli {
    /// Output format for results.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true, env = "FCC_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Binary reflected Gray code on n bits.
    Gray {
        #[arg(long)]
        n: usize,
    },
    /// Build a Griesmer-optimal linear code.
    Code {
        #[command(subcommand)]
        family: CodeFamily,
    },
    /// Build a distance requirement matrix.
    Drm {
        #[command(subcommand)]
        kind: DrmKind,
    },
    /// Lower and upper bounds on the optimal redundancy.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        /// Bin width T of the weight-distribution function.
        #[arg(long)]
        bin_width: Option<usize>,
    },
    /// Build an encoder table.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check the error-correcting property of an encoder table.
    Verify {
        #[arg(long)]
        table: PathBuf,
        /// Check all message pairs instead of weight representatives.
        #[arg(long)]
        full: bool,
    },
    /// Random errors through the channel, decoding the function value.
    Simulate {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact N(D) of a distance requirement matrix.
    Solve {
        #[arg(long)]
        drm: PathBuf,
        #[arg(long, default_value_t = 16)]
        r_max: usize,
        /// Minimise over all row and column orderings.
        #[arg(long)]
        orderings: bool,
    },
    /// Hamming and symbol-pair distance of two bitstrings.
    Pairdist {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Compare constructed redundancy with the bounds for small t.
    Reproduce {
        /// Message length (default 3t + 1 per row).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 16)]
        r_max: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    /// [2^m - 1, m, 2^(m-1)] simplex code.
    Simplex {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        opts: CodeOpts,
    },
    /// [2^(m+1) - 3, m, 2^m - 1] doubled punctured simplex code.
    Dps {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        opts: CodeOpts,
    },
    /// Belov-type [4t + p, m, 2t + 1] code.
    Belov {
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        opts: CodeOpts,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct CodeOpts {
    /// Enumerate codewords to confirm the minimum distance.
    #[arg(long)]
    pub verify: bool,
    /// Write the generator matrix to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DrmKind {
    Weight {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Dist {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        bin_width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeArg {
    Auto,
    Dps,
    Belov,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructKind {
    /// Hamming weight function.
    Wt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = CodeArg::Auto)]
        code: CodeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight-distribution function floor(wt(u) / T).
    Dist {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        bin_width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
