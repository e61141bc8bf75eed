//! Partition experiments and small exhaustive Ramsey-style searches.
//!
//! Colors and cells are 0-based throughout: an `r`-coloring uses colors
//! `0..r`.

mod blocks;
mod ternary;
mod tm1;
mod weak_schur;

pub use blocks::{block_family_search, fs_partition_demo, BlockFamily, FsDemo, SetColoring, MAX_BLOCK_M};
pub use ternary::{in_ternary_a, ternary_counterexample, TernaryReport};
pub use tm1::{tm1_cell, tm1_fsbig_probe, tm1_partition, tm1_sum_parity_check, Tm1ParityReport, Tm1Partition};
pub use weak_schur::{find_mono_fs, weak_schur_search, WeakSchurResult};
