use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "floer", version, about = "Spectral sequences of F2 Floer complexes and the drivers built on them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Recompute every page differential from a second lift.
    #[arg(long, global = true)]
    pub paranoid: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    /// Cohomology of the n-torus: an exterior algebra on n degree-1 classes.
    Torus,
    /// Mod 2 cohomology of RP^n: F2[a]/(a^(n+1)).
    Rp,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a cohomology ring as JSON.
    Ring {
        kind: RingKind,
        #[arg(long)]
        n: usize,
    },
    /// Spectral sequence commands.
    Ss {
        #[command(subcommand)]
        command: SsCommand,
    },
    /// Page-vanishing induction on a cohomology ring.
    Audin {
        #[command(subcommand)]
        command: AudinCommand,
    },
    /// Floer homology of a Lagrangian with the cohomology of RP^n.
    Rp {
        #[arg(long)]
        n: usize,
        #[arg(long = "maslov")]
        nl: usize,
    },
    /// Leibniz derivations of a ring.
    Derivations {
        #[command(subcommand)]
        command: DerivationsCommand,
    },
    /// Maslov index of sampled Lagrangian loops.
    Maslov {
        #[command(subcommand)]
        command: MaslovCommand,
    },
    /// Write a seeded corpus of random complexes and self-test each one.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Directory for the complex files.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use perfect ring complexes with products and run the product checks.
        #[arg(long)]
        products: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SsCommand {
    /// Run a complex file to collapse and compare with its folded homology.
    Run {
        file: PathBuf,
        /// Include page differentials and representatives.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum AudinCommand {
    /// The n-torus.
    Torus {
        #[arg(long)]
        n: usize,
        #[arg(long = "maslov")]
        nl: usize,
        /// Assume the Lagrangian is displaceable, so its Floer homology vanishes.
        #[arg(long)]
        displaceable: bool,
    },
    /// A ring given as JSON.
    Ring {
        file: PathBuf,
        #[arg(long = "maslov")]
        nl: usize,
        #[arg(long)]
        displaceable: bool,
    },
    /// Why a displaceable torus has nonzero first differential and no
    /// derivation of shift -1 kills its top class.
    TwoDisc {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DerivationsCommand {
    /// List every Leibniz derivation of a shift.
    Enumerate {
        kind: RingKind,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        shift: i32,
    },
}

#[derive(Subcommand, Debug)]
pub enum MaslovCommand {
    /// Maslov index of a loop file.
    Index { file: PathBuf },
    /// Write the loop t -> diag(exp(iπ k_j t)), whose index is the sum of the k_j.
    Loop {
        /// Half-turns per factor, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        k: Vec<i64>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
