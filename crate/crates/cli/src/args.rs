use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "tm", version, about = "Occurrence sets of Thue-Morse factors and their additive structure")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV (occurrence lists only).
    #[arg(long, global = true)]
    pub csv: bool,

    /// Reserved; every computation is deterministic.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prefix of T (or of its complement).
    Prefix {
        #[arg(long)]
        length: usize,
        /// Complemented word T-bar.
        #[arg(long)]
        complement: bool,
    },
    /// Letter t_n and the binary support of n.
    Letter {
        #[arg(long)]
        n: u64,
    },
    /// Positions below the bound where the factor occurs.
    Occurrences {
        #[arg(long)]
        factor: String,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Additive class of the occurrence set.
    Classify {
        #[arg(long)]
        factor: String,
    },
    /// Binary endings shared by all occurrences of a non-prefix factor.
    EndingPattern {
        #[arg(long)]
        factor: String,
        #[arg(long, default_value_t = 1 << 16)]
        bound: u64,
    },
    #[command(subcommand)]
    Witness(WitnessCommand),
    #[command(subcommand)]
    Lemma(LemmaCommand),
    #[command(subcommand)]
    Partition(PartitionCommand),
    #[command(subcommand)]
    Search(SearchCommand),
    /// Re-validate the payload of a saved JSON report.
    Verify {
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Least k-term UFS sequence with all finite sums in T|_u.
    Summable {
        #[arg(long)]
        factor: String,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 4096)]
        bound: u64,
    },
    /// Greedy IP witness for a prefix of T.
    Ip {
        #[arg(long)]
        factor: String,
        #[arg(long, default_value_t = 10)]
        max_terms: usize,
    },
    /// Explicit FS-big witness for a prefix of T-bar.
    Fsbig {
        #[arg(long)]
        factor: String,
        #[arg(short, long)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        max_terms: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum LemmaCommand {
    /// Nonempty subset whose sum is divisible by the size of the set.
    ZeroSum {
        /// Comma-separated distinct positive integers.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
    },
    /// |supp(r 2^i (2^k - 1))| = k for odd r of bit-length below k.
    Support {
        #[arg(short, long)]
        r: u64,
        #[arg(short, long)]
        i: u32,
        #[arg(short, long)]
        k: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum PartitionCommand {
    /// Split of T|_1 by parity of the lowest set bit.
    Tm1 {
        /// Bound for the pair check.
        #[arg(long, default_value_t = 4096)]
        bound: u64,
        /// Bound for the witness probe in each cell.
        #[arg(long, default_value_t = 1 << 16)]
        probe_bound: u64,
        #[arg(short, long, default_value_t = 3)]
        k: usize,
    },
    /// Ternary two-cell partition without FS-big cells.
    Ternary {
        #[arg(long, default_value_t = 59_049)]
        bound: u64,
        #[arg(long, default_value_t = 6)]
        max_cell: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Least m forcing a monochromatic k-term FS under every r-coloring.
    WeakSchur {
        #[arg(short, long)]
        colors: u32,
        #[arg(short, long)]
        k: u32,
        #[arg(long, default_value_t = 12)]
        max_m: u32,
    },
    /// k disjoint increasing blocks with monochromatic unions.
    BlockFamily {
        #[arg(short, long)]
        m: u32,
        #[arg(short, long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SetColoringKind::MinParity)]
        coloring: SetColoringKind,
    },
    /// Monochromatic UFS sequence from block sums of a given sequence.
    FsDemo {
        /// Comma-separated increasing sequence with UFS.
        #[arg(long, value_delimiter = ',', required = true)]
        ys: Vec<u64>,
        #[command(flatten)]
        cells: CellArgs,
        #[arg(short, long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetColoringKind {
    /// Every set gets color 0.
    Constant,
    /// Parity of the least element (odd -> 0, even -> 1).
    MinParity,
    /// Parity of the largest element (odd -> 0, even -> 1).
    MaxParity,
    /// Parity of the size (odd -> 0, even -> 1).
    SizeParity,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct CellArgs {
    /// Partition of the positive integers into cells.
    #[arg(long, value_enum, default_value_t = CellKind::Residue)]
    pub cells: CellKind,
    /// Modulus for `--cells residue`.
    #[arg(long, default_value_t = 3)]
    pub modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    /// n mod modulus.
    Residue,
    /// Thue-Morse letter t_n.
    Letter,
    /// Parity of the lowest set bit.
    LowBit,
}
