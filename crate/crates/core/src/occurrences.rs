//! Occurrence sets `T|_u`, their binary endings, and the three-way
//! classification of factors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::{ceil_log2, Nat};
use crate::word::{apply_morphism, is_prefix_of_t, is_prefix_of_tbar, tm_prefix, BinaryWord, Factor};

/// Sorted occurrences of a factor below a bound. Position 0 is included when
/// the factor is a prefix of T.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OccurrenceSet {
    pub factor: Factor,
    pub bound: Nat,
    pub positions: Vec<Nat>,
}

impl OccurrenceSet {
    pub fn contains(&self, n: Nat) -> bool {
        self.positions.binary_search(&n).is_ok()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// `n ∈ T|_u` via `|supp(n+j)| ≡ u_{j+1} (mod 2)` for every `j`.
#[inline]
pub fn occurrence_parity_check(n: Nat, u: &Factor) -> bool {
    word_occurs_at(n, u.word())
}

#[inline]
pub(crate) fn word_occurs_at(n: Nat, word: &BinaryWord) -> bool {
    word.letters().iter().enumerate().all(|(j, &letter)| match n.checked_add(j as Nat) {
        Some(m) => (m.count_ones() & 1) as u8 == letter,
        None => false,
    })
}

const PARALLEL_CHUNK: u64 = 1 << 16;

/// All occurrences of `u` below `bound`, each tested by the parity criterion.
pub fn occurrences(u: &Factor, bound: Nat) -> OccurrenceSet {
    let positions = scan_positions(u.word(), bound);
    OccurrenceSet { factor: u.clone(), bound, positions }
}

fn scan_positions(word: &BinaryWord, bound: Nat) -> Vec<Nat> {
    let scan = |lo: Nat, hi: Nat| -> Vec<Nat> { (lo..hi).filter(|&n| word_occurs_at(n, word)).collect() };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if bound > PARALLEL_CHUNK as Nat * 4 {
            let chunks = bound.div_ceil(PARALLEL_CHUNK as Nat);
            let parts: Vec<Vec<Nat>> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let lo = c * PARALLEL_CHUNK as Nat;
                    scan(lo, (lo + PARALLEL_CHUNK as Nat).min(bound))
                })
                .collect();
            return parts.concat();
        }
    }
    let _ = PARALLEL_CHUNK;
    scan(0, bound)
}

/// Occurrences found by materializing `tm_prefix(bound + |u|)` and scanning it.
/// Slower and memory-bound; used to cross-check [`occurrences`].
pub fn occurrences_by_prefix_scan(u: &Factor, bound: usize) -> Vec<Nat> {
    let prefix = tm_prefix(bound + u.len());
    prefix.find_all(u.word()).into_iter().filter(|&p| p < bound).map(|p| p as Nat).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndingCase {
    /// Every occurrence ends in `1 0^k`.
    Single,
    /// Every occurrence ends in `11 0^k` or `1 0^(k+1)`, and both happen.
    Double,
}

/// The binary-ending shape shared by all occurrences of a non-prefix factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndingPattern {
    pub case: EndingCase,
    pub k: u32,
    /// Set when the data shows a single ending but the factor is a prefix of
    /// some `tau^n(aba)`, so the second ending is expected above the bound.
    pub provisional: bool,
    /// Number of occurrences the pattern was inferred from.
    pub observed: usize,
}

impl EndingPattern {
    /// The admissible binary endings as digit strings.
    pub fn endings(&self) -> Vec<String> {
        let zeros = |n: u32| "0".repeat(n as usize);
        match self.case {
            EndingCase::Single => vec![format!("1{}", zeros(self.k))],
            EndingCase::Double => vec![format!("11{}", zeros(self.k)), format!("1{}", zeros(self.k + 1))],
        }
    }

    /// True iff `x` has one of the admissible endings.
    pub fn admits(&self, x: Nat) -> bool {
        if x == 0 {
            return false;
        }
        let tz = x.trailing_zeros();
        match self.case {
            EndingCase::Single => tz == self.k,
            EndingCase::Double => tz == self.k + 1 || (tz == self.k && (x >> (self.k + 1)) & 1 == 1),
        }
    }
}

impl fmt::Display for EndingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let case = match self.case {
            EndingCase::Single => "Single",
            EndingCase::Double => "Double",
        };
        write!(f, "{case}({}) endings {}", self.k, self.endings().join(" | "))?;
        if self.provisional {
            f.write_str(" [provisional]")?;
        }
        Ok(())
    }
}

/// Infers the ending shape of all occurrences of `u` below `bound`.
pub fn ending_pattern(u: &Factor, bound: Nat) -> Result<EndingPattern> {
    if is_prefix_of_t(u.word()) || is_prefix_of_tbar(u.word()) {
        return Err(Error::PrefixFactor(u.to_string()));
    }
    let occ = occurrences(u, bound);
    infer_ending(u, &occ.positions)
}

pub(crate) fn infer_ending(u: &Factor, positions: &[Nat]) -> Result<EndingPattern> {
    let violation = |x: Nat| Error::EndingViolation { word: u.to_string(), position: x };
    if let Some(&zero) = positions.iter().find(|&&x| x == 0) {
        return Err(violation(zero));
    }
    let k = positions
        .iter()
        .map(|x| x.trailing_zeros())
        .min()
        .ok_or_else(|| Error::NoOccurrences { word: u.to_string(), bound: 0 })?;

    let mut low = 0usize; // ends in 11 0^k
    let mut high = 0usize; // ends in 1 0^(k+1)
    for &x in positions {
        let tz = x.trailing_zeros();
        if tz == k && (x >> (k + 1)) & 1 == 1 {
            low += 1;
        } else if tz == k + 1 {
            high += 1;
        } else if tz != k {
            return Err(violation(x));
        }
    }

    let aba = is_prefix_of_tau_power_aba(u.word());
    let all_same_tz = positions.iter().all(|x| x.trailing_zeros() == k);
    if all_same_tz {
        return Ok(EndingPattern {
            case: EndingCase::Single,
            k,
            provisional: aba.is_some(),
            observed: positions.len(),
        });
    }
    // Mixed valuations k and k+1: every valuation-k occurrence must end in 11 0^k.
    if let Some(&x) = positions.iter().find(|x| x.trailing_zeros() == k && (*x >> (k + 1)) & 1 == 0) {
        return Err(violation(x));
    }
    debug_assert!(low > 0 && high > 0);
    if aba.is_none() {
        return Err(Error::InvariantViolation(format!("{u} shows both endings but is not a prefix of any tau^n(aba)")));
    }
    Ok(EndingPattern { case: EndingCase::Double, k, provisional: false, observed: positions.len() })
}

/// Smallest `n` such that `u` is a prefix of `tau^n(010)` or `tau^n(101)`.
///
/// Once `2^n >= |u|` the length-`|u|` prefix of `tau^n(aba)` is a prefix of T
/// or T-bar and stays so for all larger `n`, so `n <= ceil(log2|u|) + 1` is
/// an exhaustive range.
pub fn is_prefix_of_tau_power_aba(u: &BinaryWord) -> Option<u32> {
    if u.is_empty() {
        return Some(0);
    }
    let seeds: [BinaryWord; 2] =
        [BinaryWord::new(vec![0, 1, 0]).expect("valid"), BinaryWord::new(vec![1, 0, 1]).expect("valid")];
    let limit = ceil_log2(u.len() as u64) + 1;
    (0..=limit).find(|&n| seeds.iter().any(|s| u.is_prefix_of(&apply_morphism(s, n))))
}

/// The four labels of the classification of factors by the additive
/// structure of their occurrence sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorClass {
    /// Prefix of T: the occurrence set is an IP-set.
    #[serde(rename = "PrefixOfT_IP")]
    PrefixOfT,
    /// Prefix of T-bar: infinite FS-big, not an IP-set.
    #[serde(rename = "PrefixOfTbar_InfFSBig")]
    PrefixOfTbar,
    /// 2-summable but not 3-summable.
    TwoNotThreeSummable,
    /// Not even 2-summable.
    NotTwoSummable,
}

impl FactorClass {
    pub fn label(self) -> &'static str {
        match self {
            FactorClass::PrefixOfT => "PrefixOfT_IP",
            FactorClass::PrefixOfTbar => "PrefixOfTbar_InfFSBig",
            FactorClass::TwoNotThreeSummable => "TwoNotThreeSummable",
            FactorClass::NotTwoSummable => "NotTwoSummable",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        [
            FactorClass::PrefixOfT,
            FactorClass::PrefixOfTbar,
            FactorClass::TwoNotThreeSummable,
            FactorClass::NotTwoSummable,
        ]
        .into_iter()
        .find(|c| c.label() == label)
    }
}

impl fmt::Display for FactorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify_factor(u: &Factor) -> FactorClass {
    let w = u.word();
    if is_prefix_of_t(w) {
        FactorClass::PrefixOfT
    } else if is_prefix_of_tbar(w) {
        FactorClass::PrefixOfTbar
    } else if is_prefix_of_tau_power_aba(w).is_some() {
        FactorClass::TwoNotThreeSummable
    } else {
        FactorClass::NotTwoSummable
    }
}

/// Validates factorhood, then classifies.
pub fn classify_word(word: &BinaryWord) -> Result<FactorClass> {
    Factor::new(word.clone()).map(|u| classify_factor(&u))
}
