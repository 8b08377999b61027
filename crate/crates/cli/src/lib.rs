//! The `gerbe` command line: loads JSON artifacts into a workspace and
//! prints deterministic text reports.

pub mod commands;
pub mod failure;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gerbe_core::groupoid::CoverMode;
use gerbe_core::Limits;

pub use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "gerbe", version, about = "Finite non-abelian gerbes: cocycles, bands, classification, cohomology")]
pub struct Cli {
    /// Largest group order for the automorphism search.
    #[arg(long, global = true)]
    pub limit_order: Option<usize>,
    /// Largest number of candidates an enumeration may visit.
    #[arg(long, global = true)]
    pub limit_enum: Option<u64>,
    /// Largest cochain space assembled into a matrix.
    #[arg(long, global = true)]
    pub limit_cochain_dim: Option<usize>,
    /// Override the mode of every cover.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Pointwise,
    Nerve,
}

impl From<ModeArg> for CoverMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Pointwise => CoverMode::Pointwise,
            ModeArg::Nerve => CoverMode::NerveConstant,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    #[default]
    Right,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every group, cover, cocycle, refinement and module in the files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Classify gerbes with central band over the nerve of a cover.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cover: String,
        files: Vec<PathBuf>,
    },
    /// Band of a cocycle and whether it is trivializable.
    Band {
        #[arg(long)]
        cocycle: Option<String>,
        files: Vec<PathBuf>,
    },
    /// Čech, group or groupoid cohomology.
    Cohomology {
        #[command(subcommand)]
        target: CohomologyTarget,
    },
    /// Pull an extension back along an object map and check invariance.
    Pullback {
        #[command(flatten)]
        common: MoritaArgs,
        /// Object map artifact.
        #[arg(long)]
        map: Option<String>,
    },
    /// Refine a cocycle along a refinement of covers and check invariance.
    Refine {
        #[command(flatten)]
        common: MoritaArgs,
        /// Refinement artifact.
        #[arg(long)]
        refinement: Option<String>,
        /// Write the refined cocycle as a JSON artifact.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check invariance of the band and of cohomology under a map or a
    /// refinement.
    CheckMorita {
        #[command(flatten)]
        common: MoritaArgs,
        #[arg(long, conflicts_with = "refinement")]
        map: Option<String>,
        #[arg(long)]
        refinement: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct MoritaArgs {
    #[arg(long)]
    pub cocycle: Option<String>,
    /// Trivial module placed over the base groupoids.
    #[arg(long, default_value = "Q")]
    pub module: String,
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CohomologyTarget {
    /// `H^k` of the nerve of a cover with coefficients `⊕ Z/a`.
    Cech {
        #[arg(long)]
        cover: String,
        /// Cyclic factors, comma separated; `Z` or `0` is the integers.
        #[arg(long, default_value = "Z")]
        coefficients: String,
        #[arg(long)]
        degree: usize,
        files: Vec<PathBuf>,
    },
    /// `H^n(G, M)` from the bar complex.
    Group {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        files: Vec<PathBuf>,
    },
    /// `H^n` of a groupoid: the Čech groupoid of a cover, or a group as a
    /// one-object groupoid.
    Groupoid {
        #[arg(long, required_unless_present = "group", conflicts_with = "group")]
        cover: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        files: Vec<PathBuf>,
    },
}

/// Report text and exit code of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

impl Cli {
    pub fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(o) = self.limit_order {
            limits.max_order = o;
        }
        if let Some(e) = self.limit_enum {
            limits.max_enum = e;
        }
        if let Some(d) = self.limit_cochain_dim {
            limits.max_cochain_dim = d;
        }
        limits
    }
}

/// Runs a parsed command. A failure keeps the report written so far and
/// appends its message.
pub fn run(cli: &Cli) -> Outcome {
    let mut report = String::new();
    let result = commands::dispatch(cli, &mut report);
    match result {
        Ok(code) => Outcome { code, report },
        Err(f) => {
            report.push_str(&f.message());
            report.push('\n');
            Outcome { code: f.code(), report }
        }
    }
}
