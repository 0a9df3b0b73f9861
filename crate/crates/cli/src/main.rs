//! `gindex` — exact index and orbital-integral calculator for equal-rank
//! symmetric pairs.
//!
//! Reads a pair/τ/element configuration, runs one command, and prints either
//! human tables or newline-delimited structured records. All arithmetic is
//! exact; repeated runs with identical inputs produce byte-identical output.

use clap::{Parser, ValueEnum};
use std::path::PathBuf;

mod cache;
mod commands;
mod config;
mod errors;
mod records;

#[derive(Debug, Parser)]
#[command(
    name = "gindex",
    version,
    about = "Exact indices and elliptic orbital integrals for equal-rank symmetric pairs"
)]
pub(crate) struct Args {
    /// Job configuration file (sections [pair], [factor], [tau], [element], [arith]).
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Computation to run.
    #[arg(long, value_enum)]
    pub command: CommandName,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Refuse Weyl enumerations larger than this.
    #[arg(long, default_value_t = 1_000_000)]
    pub order_cap: u64,

    /// Highest torsion-element order swept by identity-suite.
    #[arg(long, default_value_t = 12)]
    pub torsion_order: u64,

    /// Directory for cached Weyl enumerations.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,

    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum CommandName {
    /// Root-system summary of the configured pair.
    RootsysInfo,
    /// Weyl group order by formula and (under the cap) by enumeration.
    WeylOrder,
    /// Weyl dimension of the ambient module with the [tau] highest weight.
    CharDim,
    /// Branch the ambient module with the [tau] highest weight to K.
    CharBranch,
    /// Validate the pair and re-render its canonical configuration.
    PairValidate,
    /// Von Neumann index data of the twisted Dirac operator.
    IndexG,
    /// Euler operator index (alternating sum over the spinor factors).
    IndexEuler,
    /// Index on the quotient: main term times chi plus the error term.
    IndexArith,
    /// Orbital integrals and the vanishing test at the [element] point.
    OrbitalEval,
    /// Property battery: spin product, vanishing law, orbital consistency,
    /// conjugation invariance.
    IdentitySuite,
}

impl CommandName {
    pub(crate) fn name(self) -> &'static str {
        match self {
            CommandName::RootsysInfo => "rootsys-info",
            CommandName::WeylOrder => "weyl-order",
            CommandName::CharDim => "char-dim",
            CommandName::CharBranch => "char-branch",
            CommandName::PairValidate => "pair-validate",
            CommandName::IndexG => "index-g",
            CommandName::IndexEuler => "index-euler",
            CommandName::IndexArith => "index-arith",
            CommandName::OrbitalEval => "orbital-eval",
            CommandName::IdentitySuite => "identity-suite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    /// Aligned key/value blocks for reading.
    Table,
    /// Newline-delimited JSON records with frozen field order.
    Records,
}

fn main() {
    let args = Args::parse();
    std::process::exit(commands::run(&args));
}
