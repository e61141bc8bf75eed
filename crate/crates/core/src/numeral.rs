//! Exact binary and ternary digit arithmetic.
//!
//! Every membership test in the crate reduces to a question about the digits
//! of a nonnegative integer: the parity of the binary digit sum decides a
//! Thue-Morse letter, and the ternary support drives the partition
//! counterexample. Values are plain `u128`, which leaves ample headroom over
//! the largest constructed witnesses (about 2^60 at default bounds).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact nonnegative integer.
pub type Nat = u128;

/// Sorted set of digit positions.
///
/// Kept as an index list rather than a bitmask so positions above any machine
/// word width stay expressible.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SupportSet(Vec<u32>);

impl SupportSet {
    pub fn from_sorted(indices: Vec<u32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        SupportSet(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, index: u32) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn is_disjoint(&self, other: &SupportSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{idx}")?;
        }
        f.write_str("}")
    }
}

/// Positions of the 1-bits of `n`.
pub fn binary_support(n: Nat) -> SupportSet {
    let mut out = Vec::with_capacity(n.count_ones() as usize);
    let mut rest = n;
    while rest != 0 {
        out.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    SupportSet(out)
}

/// `|supp(n)| mod 2`.
#[inline]
pub fn parity_of_support(n: Nat) -> u8 {
    (n.count_ones() & 1) as u8
}

/// Positions of the nonzero digits in the base-3 expansion of `n`.
pub fn ternary_support(n: Nat) -> SupportSet {
    let mut out = Vec::new();
    let mut rest = n;
    let mut pos = 0;
    while rest != 0 {
        if !rest.is_multiple_of(3) {
            out.push(pos);
        }
        rest /= 3;
        pos += 1;
    }
    SupportSet(out)
}

/// Base-3 digits of `n`, least significant first. Empty for zero.
pub fn ternary_digits(n: Nat) -> Vec<u8> {
    let mut out = Vec::new();
    let mut rest = n;
    while rest != 0 {
        out.push((rest % 3) as u8);
        rest /= 3;
    }
    out
}

/// Binary expansion of `n`, most significant digit first.
pub fn binary_digits(n: Nat) -> Result<String> {
    if n == 0 {
        return Err(Error::ZeroHasNoDigits);
    }
    Ok(format!("{n:b}"))
}

/// Parses a most-significant-first binary digit string.
pub fn parse_binary(digits: &str) -> Result<Nat> {
    if digits.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut value: Nat = 0;
    for c in digits.chars() {
        let bit = match c {
            '0' => 0,
            '1' => 1,
            other => return Err(Error::InvalidLetter(other)),
        };
        value = value.checked_mul(2).and_then(|v| v.checked_add(bit)).ok_or(Error::Overflow("binary digit string"))?;
    }
    Ok(value)
}

/// True iff the low `suffix.len()` binary digits of `n` spell `suffix`.
///
/// Leading zeros of `n` count as digits here, so `ends_with(1, "01")` holds.
pub fn ends_with(n: Nat, suffix: &str) -> Result<bool> {
    if suffix.is_empty() {
        return Err(Error::EmptyWord);
    }
    if suffix.len() > 128 {
        return Err(Error::CapExceeded { len: suffix.len(), cap: 128 });
    }
    let want = parse_binary(suffix)?;
    let mask = if suffix.len() == 128 { Nat::MAX } else { (1 << suffix.len()) - 1 };
    Ok(n & mask == want)
}

/// Number of binary digits of `n` (0 for zero).
#[inline]
pub fn bit_length(n: Nat) -> u32 {
    Nat::BITS - n.leading_zeros()
}

/// 2-adic valuation. `None` for zero.
#[inline]
pub fn two_adic_valuation(n: Nat) -> Option<u32> {
    (n != 0).then(|| n.trailing_zeros())
}

/// Smallest `c` with `2^c >= n`, for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1, "ceil_log2 of zero");
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}
