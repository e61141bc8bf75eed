use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::Nat;
use crate::summability::{find_k_summable_witness, SumSequence};
use crate::word::tm_letter;

/// Split of `T|_1 ∩ [1, bound)` by the parity of the lowest set bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tm1Partition {
    pub bound: Nat,
    pub a0: Vec<Nat>,
    pub a1: Vec<Nat>,
}

/// `Some(0)` if `n ∈ A0`, `Some(1)` if `n ∈ A1`, `None` if `n ∉ T|_1`.
#[inline]
pub fn tm1_cell(n: Nat) -> Option<usize> {
    (n != 0 && tm_letter(n) == 1).then(|| (n.trailing_zeros() % 2) as usize)
}

pub fn tm1_partition(bound: Nat) -> Result<Tm1Partition> {
    if bound < 2 {
        return Err(Error::InvalidParameter("bound must be at least 2".into()));
    }
    let (mut a0, mut a1) = (Vec::new(), Vec::new());
    for n in 1..bound {
        match tm1_cell(n) {
            Some(0) => a0.push(n),
            Some(_) => a1.push(n),
            None => {}
        }
    }
    Ok(Tm1Partition { bound, a0, a1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tm1ParityReport {
    pub bound: Nat,
    pub pairs_checked: u64,
    pub violations: u64,
}

/// For all `x < y < bound` sharing the lowest set bit `r` and agreeing at bit
/// `r+1`, checks that the lowest set bit of `x + y` is `r+1`.
pub fn tm1_sum_parity_check(bound: Nat) -> Result<Tm1ParityReport> {
    if bound < 4 {
        return Err(Error::InvalidParameter("bound must be at least 4".into()));
    }
    // Group by (lowest set bit, next bit); all qualifying pairs live in one group.
    let mut groups: std::collections::BTreeMap<(u32, u8), Vec<Nat>> = Default::default();
    for n in 1..bound {
        let r = n.trailing_zeros();
        groups.entry((r, ((n >> (r + 1)) & 1) as u8)).or_default().push(n);
    }
    let mut pairs = 0u64;
    for (&(r, _), members) in &groups {
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                pairs += 1;
                if (x + y).trailing_zeros() != r + 1 {
                    return Err(Error::InvariantViolation(format!("min supp({x} + {y}) != {}", r + 1)));
                }
            }
        }
    }
    Ok(Tm1ParityReport { bound, pairs_checked: pairs, violations: 0 })
}

/// Least `k`-term witnesses inside `A0` and inside `A1`.
pub fn tm1_fsbig_probe(bound: Nat, k: usize) -> Result<(SumSequence, SumSequence)> {
    if k == 0 || k > 4 {
        return Err(Error::InvalidParameter(format!("k must be in 1..=4, got {k}")));
    }
    let search = |cell: usize| {
        find_k_summable_witness(|n| tm1_cell(n) == Some(cell), k, bound).ok_or(Error::NoWitness { cell, k, bound })
    };
    Ok((search(0)?, search(1)?))
}
