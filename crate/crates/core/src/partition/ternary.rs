use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::{ternary_digits, ternary_support, Nat};

/// Largest bound accepted by [`ternary_counterexample`].
pub const TERNARY_BOUND_CAP: Nat = 531_441; // 3^12

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryReport {
    pub bound: Nat,
    pub max_cell: u32,
    /// `|D ∩ [1, bound)|`.
    pub d_size: usize,
    /// `|D_i|` for `i = 1..=max_cell`.
    pub cell_sizes: Vec<usize>,
    pub a0_size: usize,
    pub a1_size: usize,
    pub pairs_checked: u64,
    pub violations: u64,
}

/// Cell index `i >= 1` of a ternary digit position: `p ∈ E_i` iff `v2(p+1) = i-1`.
#[inline]
fn position_cell(p: u32) -> u32 {
    (p + 1).trailing_zeros() + 1
}

/// `Some(i)` iff `n ∈ D_i` for some `i <= max_cell`.
fn d_cell(n: Nat, max_cell: u32) -> Option<u32> {
    let digits = ternary_digits(n);
    if digits.is_empty() || digits.iter().any(|&d| d > 1) {
        return None;
    }
    let supp = ternary_support(n);
    let cell = position_cell(supp.min()?);
    let same_cell = supp.indices().iter().all(|&p| position_cell(p) == cell);
    (same_cell && supp.len() as u32 <= cell && cell <= max_cell).then_some(cell)
}

/// `Some(side)` iff `n ∈ A_side`, where the side is `v2(|supp_3(n)|) mod 2`.
pub fn in_ternary_a(n: Nat, max_cell: u32) -> Option<usize> {
    d_cell(n, max_cell)?;
    let size = ternary_support(n).len() as u32;
    Some((size.trailing_zeros() % 2) as usize)
}

/// Builds `D`, the cells `D_i`, and the two-sided split `A_0, A_1` below
/// `bound`, then checks exhaustively that no `x != y` in one side with equal
/// ternary support sizes has `x + y` in that same side.
pub fn ternary_counterexample(bound: Nat, max_cell: u32) -> Result<TernaryReport> {
    if bound > TERNARY_BOUND_CAP {
        return Err(Error::InvalidParameter(format!("bound must be at most 3^12, got {bound}")));
    }
    if max_cell == 0 {
        return Err(Error::InvalidParameter("max_cell must be at least 1".into()));
    }

    // D by digit filter, cross-checked against finite sums of powers of three.
    let d: Vec<Nat> = (1..bound).filter(|&n| ternary_digits(n).iter().all(|&d| d <= 1)).collect();
    let mut powers = Vec::new();
    let mut p: Nat = 1;
    while p < bound {
        powers.push(p);
        p *= 3;
    }
    let mut fs: Vec<Nat> = (1u64..1 << powers.len())
        .map(|mask| (0..powers.len()).filter(|b| mask >> b & 1 == 1).map(|b| powers[b]).sum::<Nat>())
        .filter(|&s| s < bound)
        .collect();
    fs.sort_unstable();
    if fs != d {
        return Err(Error::InvariantViolation("FS of powers of 3 differs from {0,1}-digit numbers".into()));
    }

    let mut cell_sizes = vec![0usize; max_cell as usize];
    let mut sides: [Vec<(Nat, usize)>; 2] = [Vec::new(), Vec::new()];
    for &n in &d {
        if let Some(cell) = d_cell(n, max_cell) {
            cell_sizes[cell as usize - 1] += 1;
            let side = in_ternary_a(n, max_cell).expect("member of A");
            sides[side].push((n, ternary_support(n).len()));
        }
    }

    let mut pairs = 0u64;
    for (side, members) in sides.iter().enumerate() {
        for (i, &(x, sx)) in members.iter().enumerate() {
            for &(y, sy) in &members[i + 1..] {
                if sx != sy {
                    continue;
                }
                pairs += 1;
                if in_ternary_a(x + y, max_cell) == Some(side) {
                    return Err(Error::InvariantViolation(format!(
                        "{x} + {y} stays in A{side} with equal ternary support sizes"
                    )));
                }
            }
        }
    }

    Ok(TernaryReport {
        bound,
        max_cell,
        d_size: d.len(),
        cell_sizes,
        a0_size: sides[0].len(),
        a1_size: sides[1].len(),
        pairs_checked: pairs,
        violations: 0,
    })
}
