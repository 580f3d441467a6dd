pub mod commands;
pub mod report;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use theta_dp::optimizer::{SearchOptions, DEFAULT_BUDGET};

pub use commands::{run, CliError, Outcome};
pub use report::RunReport;

#[derive(Debug, Parser)]
#[command(
    name = "theta-dp",
    version,
    about = "Exact DP color functions of generalized theta graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads for exhaustive search (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Refuse exhaustive searches larger than this many signatures.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,

    /// Restrict the search to one permutation per conjugacy class.
    #[arg(long, global = true, value_enum, default_value_t = Toggle::On)]
    pub symmetry: Toggle,
}

impl Cli {
    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            workers: self.workers,
            symmetry: self.symmetry == Toggle::On,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate P, P_DP, P*_DP and the AM-GM bound over a range of folds.
    Values {
        /// Comma-separated path lengths, e.g. 2,3,3,3,2.
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        folds: Folds,
        /// Quantities to compute.
        #[arg(long, value_delimiter = ',', default_value = "P,P_DP,P*_DP,AMGM")]
        which: Vec<Quantity>,
        /// Use exhaustive search even where a closed form exists.
        #[arg(long)]
        force_exhaustive: bool,
    },
    /// Check that Θ(2,3,3,3,2) and Θ(2,3,3,3,3,3,2,2) have P_DP = P at m = 3.
    VerifyCounterexamples {
        /// 1 for Θ(2,3,3,3,2), 2 for Θ(2,3,3,3,3,3,2,2); both by default.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        graph: Option<u8>,
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Report the comparison without asserting it.
        #[arg(long)]
        scan: bool,
    },
    /// Count independent transversals of a cover file.
    Oracle {
        #[arg(long)]
        cover: PathBuf,
        /// Cover vertex ids that every counted transversal must contain.
        #[arg(long, value_delimiter = ',')]
        pins: Vec<usize>,
    },
    /// Compare P with the exhaustive P_DP over a range of folds.
    Scan {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        folds: Folds,
    },
    /// Run randomized checks of the rearrangement inequalities.
    RearrangeCheck {
        /// Random instances per check.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest entry in the three-row failure search.
        #[arg(long, default_value_t = 3)]
        k3_bound: u64,
        /// Row length in the three-row failure search.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=5))]
        k3_len: u64,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Folds {
    /// A single fold.
    #[arg(long)]
    pub m: Option<u32>,
    /// Inclusive fold range such as 3..6.
    #[arg(long, value_parser = parse_range)]
    pub m_range: Option<FoldRange>,
}

impl Folds {
    pub fn values(&self) -> Vec<u32> {
        match (self.m, &self.m_range) {
            (Some(m), _) => vec![m],
            (None, Some(r)) => (r.start..=r.end).collect(),
            (None, None) => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldRange {
    pub start: u32,
    pub end: u32,
}

fn parse_range(s: &str) -> Result<FoldRange, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .ok_or_else(|| format!("expected a range like 3..6, got {s:?}"))?;
    let start: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let end: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if start > end {
        return Err(format!("empty range {s:?}"));
    }
    Ok(FoldRange { start, end })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Chromatic,
    Dp,
    DualDp,
    AmGm,
}

impl Quantity {
    pub fn column(self) -> &'static str {
        match self {
            Quantity::Chromatic => "P",
            Quantity::Dp => "P_DP",
            Quantity::DualDp => "P*_DP",
            Quantity::AmGm => "AMGM",
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P" => Ok(Quantity::Chromatic),
            "P_DP" | "PDP" => Ok(Quantity::Dp),
            "P*_DP" | "P_DP*" | "DUAL" => Ok(Quantity::DualDp),
            "AMGM" | "AM-GM" => Ok(Quantity::AmGm),
            other => Err(format!(
                "unknown quantity {other:?}; expected P, P_DP, P*_DP or AMGM"
            )),
        }
    }
}
