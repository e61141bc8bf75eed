//! Thue-Morse letters and prefixes.
//!
//! Letters come from two independent mechanisms: digit-sum parity
//! ([`tm_letter`]) and the doubling recurrence `w -> w · complement(w)`
//! ([`tm_prefix`]). Keeping them separate lets each check the other.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeral::{parity_of_support, Nat};

/// Finite word over `{0,1}`; letters are stored as `0u8`/`1u8`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l > 1) {
            return Err(Error::InvalidLetter(char::from(b'0' + bad.min(9))));
        }
        Ok(BinaryWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self) -> BinaryWord {
        BinaryWord(self.0.iter().map(|l| l ^ 1).collect())
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// First `len` letters (or all of them if shorter).
    pub fn truncated(&self, len: usize) -> BinaryWord {
        BinaryWord(self.0[..len.min(self.0.len())].to_vec())
    }

    /// Start positions of every occurrence of `needle` in `self`.
    pub fn find_all(&self, needle: &BinaryWord) -> Vec<usize> {
        if needle.is_empty() || needle.len() > self.len() {
            return Vec::new();
        }
        self.0.windows(needle.len()).enumerate().filter_map(|(i, w)| (w == needle.letters()).then_some(i)).collect()
    }

    pub fn contains(&self, needle: &BinaryWord) -> bool {
        !needle.is_empty() && needle.len() <= self.len() && self.0.windows(needle.len()).any(|w| w == needle.letters())
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&l| if l == 0 { '0' } else { '1' }).collect();
        f.write_str(&s)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A nonempty word known to occur in T.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Factor(BinaryWord);

impl Factor {
    /// Validates factorhood with [`is_factor`].
    pub fn new(word: BinaryWord) -> Result<Self> {
        if is_factor(&word)? {
            Ok(Factor(word))
        } else {
            Err(Error::NotAFactor(word.to_string()))
        }
    }

    pub fn word(&self) -> &BinaryWord {
        &self.0
    }

    pub fn letters(&self) -> &[u8] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Factor::new(s.parse()?)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<'de> Deserialize<'de> for Factor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `t_n`, the parity of the binary digit sum of `n`.
#[inline]
pub fn tm_letter(n: Nat) -> u8 {
    parity_of_support(n)
}

/// First `length` letters of T, built by repeated doubling.
pub fn tm_prefix(length: usize) -> BinaryWord {
    let mut letters = Vec::with_capacity(length.next_power_of_two().max(1));
    letters.push(0u8);
    while letters.len() < length {
        let half = letters.len();
        letters.extend_from_within(..half);
        for l in &mut letters[half..] {
            *l ^= 1;
        }
    }
    letters.truncate(length);
    BinaryWord(letters)
}

/// First `length` letters of the complement word T-bar.
pub fn tmbar_prefix(length: usize) -> BinaryWord {
    tm_prefix(length).complement()
}

/// `tau^iterations(w)` for the morphism `0 -> 01`, `1 -> 10`.
pub fn apply_morphism(word: &BinaryWord, iterations: u32) -> BinaryWord {
    let mut cur = word.letters().to_vec();
    for _ in 0..iterations {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &l in &cur {
            next.push(l);
            next.push(l ^ 1);
        }
        cur = next;
    }
    BinaryWord(cur)
}

/// Default window multiplier for [`is_factor`].
pub const FACTOR_WINDOW_MULTIPLIER: usize = 32;
/// Default additive slack for [`is_factor`].
pub const FACTOR_WINDOW_SLACK: usize = 64;

/// True iff `word` occurs in T.
///
/// Scans a prefix of length `32·|u| + 64`. T is linearly recurrent, so every
/// factor of length L already shows up within a window of a few times L.
pub fn is_factor(word: &BinaryWord) -> Result<bool> {
    is_factor_with_window(word, FACTOR_WINDOW_MULTIPLIER, FACTOR_WINDOW_SLACK)
}

pub fn is_factor_with_window(word: &BinaryWord, multiplier: usize, slack: usize) -> Result<bool> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let window = tm_prefix(multiplier * word.len() + slack);
    Ok(window.contains(word))
}

pub fn is_prefix_of_t(word: &BinaryWord) -> bool {
    !word.is_empty() && word.is_prefix_of(&tm_prefix(word.len()))
}

pub fn is_prefix_of_tbar(word: &BinaryWord) -> bool {
    !word.is_empty() && word.is_prefix_of(&tmbar_prefix(word.len()))
}

/// Every factor of T of exactly `len` letters, sorted.
pub fn factors_of_length(len: usize) -> Vec<Factor> {
    if len == 0 {
        return Vec::new();
    }
    let window = tm_prefix(FACTOR_WINDOW_MULTIPLIER * len + FACTOR_WINDOW_SLACK);
    let mut seen: Vec<&[u8]> = window.letters().windows(len).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.into_iter().map(|w| Factor(BinaryWord(w.to_vec()))).collect()
}

/// Every factor with `1 <= |u| <= max_len`, shortest first.
pub fn factors_up_to(max_len: usize) -> Vec<Factor> {
    (1..=max_len).flat_map(factors_of_length).collect()
}
