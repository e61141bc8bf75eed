//! Result payloads, one per command. They are what `verify` re-reads.

use serde::{Deserialize, Serialize};
use tm_core::partition::{BlockFamily, FsDemo, SetColoring};
use tm_core::{BinaryWord, EndingPattern, Factor, FactorClass, Nat, SumSequence, SupportSet};

use crate::args::{CellArgs, CellKind, SetColoringKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrefixResult {
    pub complement: bool,
    pub word: BinaryWord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LetterResult {
    pub n: Nat,
    pub letter: u8,
    pub support: SupportSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccurrencesResult {
    pub factor: Factor,
    pub bound: Nat,
    pub count: usize,
    pub positions: Vec<Nat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub factor: Factor,
    pub class: FactorClass,
    pub prefix_of_t: bool,
    pub prefix_of_tbar: bool,
    /// Least `n` with the factor a prefix of `tau^n(010)` or `tau^n(101)`.
    pub tau_power: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndingResult {
    pub factor: Factor,
    pub bound: Nat,
    pub pattern: EndingPattern,
    pub endings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummableResult {
    pub factor: Factor,
    pub k: usize,
    pub bound: Nat,
    pub witness: Option<SumSequence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IpResult {
    pub factor: Factor,
    pub witness: SumSequence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FsbigResult {
    pub factor: Factor,
    pub k: u32,
    /// Sums of up to this many distinct terms lie in the occurrence set.
    pub max_sum_terms: usize,
    pub witness: SumSequence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSumResult {
    pub set: Vec<Nat>,
    pub subset: Vec<Nat>,
    pub sum: Nat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportResult {
    pub r: Nat,
    pub i: u32,
    pub k: u32,
    pub product: Nat,
    pub support_size: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tm1Result {
    pub bound: Nat,
    pub a0_size: usize,
    pub a1_size: usize,
    pub pairs_checked: u64,
    pub probe_bound: Nat,
    pub k: usize,
    pub a0_witness: Option<SumSequence>,
    pub a1_witness: Option<SumSequence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockFamilyResult {
    pub m: u32,
    pub k: usize,
    pub coloring: SetColoringKind,
    pub family: Option<BlockFamily>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FsDemoResult {
    pub ys: SumSequence,
    pub cells: CellKind,
    pub modulus: Nat,
    pub k: usize,
    pub demo: Option<FsDemo>,
}

pub fn set_coloring(kind: SetColoringKind, m: u32) -> tm_core::Result<SetColoring> {
    match kind {
        SetColoringKind::Constant => SetColoring::constant(m),
        SetColoringKind::MinParity => SetColoring::min_parity(m),
        SetColoringKind::MaxParity => SetColoring::from_fn(m, |mask| ((32 - mask.leading_zeros()) % 2 == 0) as u8),
        SetColoringKind::SizeParity => SetColoring::from_fn(m, |mask| (mask.count_ones() % 2 == 0) as u8),
    }
}

/// Cell of `n >= 1` under the chosen partition.
pub fn cell_of(cells: CellKind, modulus: Nat, n: Nat) -> usize {
    match cells {
        CellKind::Residue => (n % modulus) as usize,
        CellKind::Letter => tm_core::tm_letter(n) as usize,
        CellKind::LowBit => (n.trailing_zeros() % 2) as usize,
    }
}

pub fn check_cells(cells: &CellArgs) -> Result<(), String> {
    if cells.cells == CellKind::Residue && !(1..=256).contains(&cells.modulus) {
        return Err("--modulus must be in 1..=256".into());
    }
    Ok(())
}
