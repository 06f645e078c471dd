//! `ultratree`: build tree slices, measure distances, map points between the
//! product space and the Berkovich line, and run the consistency audits.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ultratree", version, about = "Exact p-adic coarse-graining, Bruhat-Tits trees and Berkovich points")]
pub struct Cli {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for every pseudo-random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct SpecArgs {
    /// Residue characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u64,
    /// Ramification index.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    /// Residue degree.
    #[arg(long, global = true, default_value_t = 1)]
    pub f: u32,
    /// Relative precision in places of the uniformizer.
    #[arg(long, global = true, default_value_t = 20)]
    pub precision: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Rho,
    Chordal,
    Graph,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapDir {
    Phi,
    PhiInv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Export a window of the tree between two trunk exponents.
    Tree {
        /// Exponent window `lo:hi`.
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Number of branch digits below each trunk node.
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Attach refinement layers down to this level.
        #[arg(long)]
        enhanced: Option<u32>,
    },
    /// Distance between two points.
    ///
    /// rho takes disks `center=<element>,rexp=<ext>`, chordal takes
    /// `z0=<element>,z=<element>` and graph takes `omega=<exp>,word=[..]`.
    Distance {
        #[arg(long, value_enum, default_value = "rho")]
        metric: Metric,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Classify a point and map it across the correspondence.
    Classify {
        /// Berkovich disk `center=<element>,rexp=<ext>` or `inf`.
        #[arg(long, group = "input", allow_hyphen_values = true)]
        berk: Option<String>,
        /// Point `omega=<ext>,center=<element>` of the coarse-grained space.
        #[arg(long, group = "input", allow_hyphen_values = true)]
        w: Option<String>,
        /// Product point `z0=<element>,z=<element>`.
        #[arg(long, group = "input", allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, value_enum)]
        map: Option<MapDir>,
        /// Report the canonical class of a product point.
        #[arg(long)]
        class: bool,
        /// Refinement level of the reported class.
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// Consistency audits; exit status 5 on any disagreement.
    #[command(subcommand)]
    Audit(Audit),
}

#[derive(Subcommand, Debug)]
pub enum Audit {
    /// Refinement census: closed form, tree splitting and class counting.
    Census {
        /// Levels `lo:hi`, or `m` for `1:m`.
        #[arg(long, default_value = "1:2")]
        m: String,
    },
    /// Pairwise chordal partition against canonical classes.
    Partition {
        #[arg(long, default_value_t = 500)]
        n: usize,
        /// Levels `lo:hi`, or a single level.
        #[arg(long, default_value = "0:2")]
        levels: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_USAGE } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
