use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "kborel", version, about = "K-theory of classifying spaces up to finite torsion")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Print Z_p^, Z/p^inf, Q_p^ instead of the Unicode symbols.
    #[arg(long, global = true)]
    pub ascii: bool,
    /// Largest group order accepted; overrides KBOREL_ORDER_CAP.
    #[arg(long, value_name = "N", global = true)]
    pub order_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline for a finite group acting on a point.
    FiniteGroup {
        file: PathBuf,
        /// Only report this degree (taken mod 2).
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Assemble the presentations from a group package.
    Package {
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        file: Option<PathBuf>,
        /// Use a built-in package (sl3z, trivial).
        #[arg(long)]
        builtin: Option<String>,
        /// Take the unknown finite groups of the sequences to vanish.
        #[arg(long)]
        sharpen: bool,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Cocompact Fuchsian group of signature (genus; periods).
    Fuchsian {
        #[arg(long)]
        genus: usize,
        /// Cone orders, comma separated.
        #[arg(long, value_delimiter = ',')]
        periods: Vec<u64>,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Finite group acting cellularly on a CW complex.
    Gcw {
        file: PathBuf,
        /// Skip the acyclicity check; the report records the assumption.
        #[arg(long)]
        assume_acyclic: bool,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Towers of abelian groups and maps between them.
    Pro(ProArgs),
    /// Check that an input document is well formed.
    Validate { file: PathBuf },
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
pub struct ProArgs {
    /// A document with a "tower" or a "map".
    #[arg(required = true)]
    pub file: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<ProCommand>,
}

#[derive(Debug, Subcommand)]
pub enum ProCommand {
    /// The I-adic tower of the representation ring of Z/m.
    IdealTower {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Restrict the completion check to one prime.
        #[arg(long)]
        p: Option<u64>,
    },
}
