//! Finite sums, uniqueness of finite sums (UFS), bounded k-summability
//! search, and the explicit witness constructions for prefixes of T and
//! T-bar.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::{bit_length, ceil_log2, Nat};
use crate::occurrences::occurrence_parity_check;
use crate::word::{is_prefix_of_t, is_prefix_of_tbar, Factor};

/// Largest sequence length whose `2^n` subset sums are enumerated.
pub const UFS_CAP: usize = 24;
/// Largest number of terms in a constructed witness.
pub const WITNESS_TERMS_CAP: usize = 20;

/// Strictly increasing positive terms with uniqueness of finite sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SumSequence(Vec<Nat>);

impl SumSequence {
    pub fn new(terms: Vec<Nat>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        if terms[0] == 0 || terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing);
        }
        if !has_ufs(&terms)? {
            return Err(Error::NotUfs);
        }
        Ok(SumSequence(terms))
    }

    pub fn terms(&self) -> &[Nat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_terms(self) -> Vec<Nat> {
        self.0
    }
}

impl<'de> Deserialize<'de> for SumSequence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<Nat>::deserialize(deserializer)?;
        SumSequence::new(terms).map_err(serde::de::Error::custom)
    }
}

/// `FS(<x_t>)`: sorted nonempty-subset sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FsSet(Vec<Nat>);

impl FsSet {
    pub fn sums(&self) -> &[Nat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, n: Nat) -> bool {
        self.0.binary_search(&n).is_ok()
    }
}

/// All `2^n` subset sums (including the empty sum), indexed by bitmask.
pub(crate) fn subset_sums_by_mask(xs: &[Nat]) -> Result<Vec<Nat>> {
    let mut sums: Vec<Nat> = Vec::with_capacity(1 << xs.len());
    sums.push(0);
    for &x in xs {
        let len = sums.len();
        for i in 0..len {
            let s = sums[i].checked_add(x).ok_or(Error::Overflow("subset sum"))?;
            sums.push(s);
        }
    }
    Ok(sums)
}

pub fn has_ufs(xs: &[Nat]) -> Result<bool> {
    has_ufs_with_cap(xs, UFS_CAP)
}

pub fn has_ufs_with_cap(xs: &[Nat], cap: usize) -> Result<bool> {
    if xs.is_empty() {
        return Err(Error::EmptySequence);
    }
    if xs.len() > cap {
        return Err(Error::CapExceeded { len: xs.len(), cap });
    }
    if xs.contains(&0) {
        // {y} and {y, 0} collide as soon as there is any other term y.
        return Ok(xs.len() == 1);
    }
    let mut sums = subset_sums_by_mask(xs)?;
    sums.sort_unstable();
    Ok(sums.windows(2).all(|w| w[0] != w[1]))
}

pub fn finite_sums(xs: &SumSequence) -> Result<FsSet> {
    if xs.len() > UFS_CAP {
        return Err(Error::CapExceeded { len: xs.len(), cap: UFS_CAP });
    }
    let mut sums = subset_sums_by_mask(xs.terms())?;
    sums.remove(0);
    sums.sort_unstable();
    debug_assert!(sums.windows(2).all(|w| w[0] < w[1]));
    Ok(FsSet(sums))
}

/// Membership tables above this size fall back to calling the predicate.
const TABLE_LIMIT: u64 = 1 << 24;

struct Lookup<'a, F> {
    member: &'a F,
    table: Option<Vec<bool>>,
}

impl<F: Fn(Nat) -> bool> Lookup<'_, F> {
    #[inline]
    fn get(&self, n: u64) -> bool {
        match &self.table {
            Some(t) => t[n as usize],
            None => (self.member)(n as Nat),
        }
    }
}

/// Lexicographically least increasing `k`-term UFS sequence whose terms and
/// finite sums are all `<= bound` and satisfy `member`.
///
/// Depth-first over increasing terms; a candidate term is rejected as soon as
/// one of its new sums leaves the set, exceeds the bound, or collides with an
/// earlier sum. `None` means no witness exists below the bound, which is not
/// a proof of non-summability.
pub fn find_k_summable_witness<F>(member: F, k: usize, bound: Nat) -> Option<SumSequence>
where
    F: Fn(Nat) -> bool + Sync,
{
    if k == 0 || bound == 0 {
        return None;
    }
    let bound = u64::try_from(bound).unwrap_or(u64::MAX);
    let table = (bound <= TABLE_LIMIT).then(|| (0..=bound).map(|n| member(n as Nat)).collect());
    let lookup = Lookup { member: &member, table };

    let first_limit = max_term(0, 0, k, bound)?;
    let try_first = |x1: u64| -> Option<Vec<u64>> {
        if !lookup.get(x1) {
            return None;
        }
        let mut terms = vec![x1];
        let mut sums = vec![0, x1];
        extend(&lookup, &mut terms, &mut sums, x1, k, bound).then_some(terms)
    };

    #[cfg(feature = "parallel")]
    let found = {
        use rayon::prelude::*;
        (1..=first_limit).into_par_iter().find_map_first(try_first)
    };
    #[cfg(not(feature = "parallel"))]
    let found = (1..=first_limit).find_map(try_first);

    found.map(|terms| {
        SumSequence::new(terms.into_iter().map(Nat::from).collect()).expect("search only builds UFS sequences")
    })
}

/// Largest admissible next term after `prev` when the current total is
/// `total` and `remaining` terms (including this one) are still to be chosen.
fn max_term(prev: u64, total: u64, remaining: usize, bound: u64) -> Option<u64> {
    // total + r·x + (0 + 1 + ... + (r-1)) <= bound, the later terms being at least x+1, x+2, ...
    let r = remaining as u64;
    let tri = r * r.saturating_sub(1) / 2;
    let room = bound.checked_sub(total)?.checked_sub(tri)?;
    let x = room / r;
    (x > prev).then_some(x)
}

fn extend<F: Fn(Nat) -> bool>(
    lookup: &Lookup<'_, F>,
    terms: &mut Vec<u64>,
    sums: &mut Vec<u64>,
    total: u64,
    k: usize,
    bound: u64,
) -> bool {
    if terms.len() == k {
        return true;
    }
    let prev = *terms.last().expect("nonempty");
    let Some(limit) = max_term(prev, total, k - terms.len(), bound) else {
        return false;
    };
    let mut shifted = Vec::with_capacity(sums.len());
    for x in prev + 1..=limit {
        if !lookup.get(x) {
            continue;
        }
        shifted.clear();
        let ok = sums.iter().all(|&s| {
            let t = s + x;
            let fresh = t <= bound && lookup.get(t) && sums.binary_search(&t).is_err();
            if fresh {
                shifted.push(t);
            }
            fresh
        });
        if !ok {
            continue;
        }
        let old_len = sums.len();
        sums.extend_from_slice(&shifted);
        sums.sort_unstable();
        terms.push(x);
        if extend(lookup, terms, sums, total + x, k, bound) {
            return true;
        }
        terms.pop();
        sums.retain(|s| shifted.binary_search(s).is_err());
        debug_assert_eq!(sums.len(), old_len);
    }
    false
}

pub fn is_k_summable_upto<F>(member: F, k: usize, bound: Nat) -> bool
where
    F: Fn(Nat) -> bool + Sync,
{
    find_k_summable_witness(member, k, bound).is_some()
}

/// Witness that `T|_u` is an IP-set for a prefix `u` of T: terms `3·2^n`
/// chosen greedily so each exceeds the running total plus `|u| - 1`.
pub fn ip_witness_for_prefix(u: &Factor, terms: usize) -> Result<SumSequence> {
    if !is_prefix_of_t(u.word()) {
        return Err(Error::NotAPrefix { word: u.to_string(), of: "T" });
    }
    if terms == 0 {
        return Err(Error::InvalidParameter("terms must be at least 1".into()));
    }
    if terms > WITNESS_TERMS_CAP {
        return Err(Error::CapExceeded { len: terms, cap: WITNESS_TERMS_CAP });
    }
    let slack = u.len() as Nat - 1;
    let mut total: Nat = 0;
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        // smallest n with 2^n > total + slack
        let need = total + slack;
        let n = bit_length(need);
        let x = 3 << n;
        out.push(x);
        total += x;
    }
    let seq = SumSequence::new(out)?;
    let report = check_sum_family(u, seq.terms(), seq.len())?;
    if let Some(bad) = report.first_failure {
        return Err(Error::InvariantViolation(format!("IP witness sum {bad} is not an occurrence of {u}")));
    }
    Ok(seq)
}

/// The `n`-th term `[x_n]_2 = 11 0^(2n+j) 1^(2k-1) 0^l` with
/// `j = ceil(log2(2k-1))` and `l = ceil(log2 |u|)`.
pub fn fsbig_term(factor_len: usize, k: u32, n: u32) -> Result<Nat> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if factor_len == 0 {
        return Err(Error::EmptyWord);
    }
    let ones = 2 * k - 1;
    let j = ceil_log2(ones as u64);
    let l = ceil_log2(factor_len as u64);
    let width = 2 + 2 * n + j + ones + l;
    if width > Nat::BITS {
        return Err(Error::Overflow("FS-big witness term"));
    }
    let head: Nat = 0b11 << (2 * n + j + ones);
    let tail: Nat = (1 << ones) - 1;
    Ok((head | tail) << l)
}

/// Sequence showing `T|_u` contains all sums of at most `2k-1` distinct terms
/// of a UFS sequence, for a prefix `u` of T-bar.
pub fn fsbig_witness_for_tmbar_prefix(u: &Factor, k: u32, num_terms: usize) -> Result<SumSequence> {
    if !is_prefix_of_tbar(u.word()) {
        return Err(Error::NotAPrefix { word: u.to_string(), of: "T-bar" });
    }
    if num_terms == 0 {
        return Err(Error::InvalidParameter("num_terms must be at least 1".into()));
    }
    if num_terms > WITNESS_TERMS_CAP {
        return Err(Error::CapExceeded { len: num_terms, cap: WITNESS_TERMS_CAP });
    }
    let terms = (0..num_terms as u32).map(|n| fsbig_term(u.len(), k, n)).collect::<Result<Vec<_>>>()?;
    SumSequence::new(terms)
}

/// Outcome of checking every sum of `1..=max_terms` distinct terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub checked: usize,
    pub first_failure: Option<Nat>,
}

/// True iff every sum of between 1 and `max_terms` distinct terms of `xs`
/// lies in `T|_u`.
pub fn verify_sum_family(u: &Factor, xs: &[Nat], max_terms: usize) -> Result<bool> {
    Ok(check_sum_family(u, xs, max_terms)?.first_failure.is_none())
}

pub fn check_sum_family(u: &Factor, xs: &[Nat], max_terms: usize) -> Result<FamilyCheck> {
    if xs.len() > WITNESS_TERMS_CAP {
        return Err(Error::CapExceeded { len: xs.len(), cap: WITNESS_TERMS_CAP });
    }
    let mut report = FamilyCheck { checked: 0, first_failure: None };
    for_each_small_subset_sum(xs, max_terms, &mut |s| {
        report.checked += 1;
        if !occurrence_parity_check(s, u) {
            report.first_failure = Some(s);
            return false;
        }
        true
    })?;
    Ok(report)
}

/// Calls `visit` with the sum of every nonempty subset of size `<= max_terms`,
/// stopping early when it returns false.
pub fn for_each_small_subset_sum(xs: &[Nat], max_terms: usize, visit: &mut dyn FnMut(Nat) -> bool) -> Result<()> {
    fn go(xs: &[Nat], start: usize, left: usize, acc: Nat, visit: &mut dyn FnMut(Nat) -> bool) -> Result<bool> {
        for i in start..xs.len() {
            let s = acc.checked_add(xs[i]).ok_or(Error::Overflow("subset sum"))?;
            if !visit(s) {
                return Ok(false);
            }
            if left > 1 && !go(xs, i + 1, left - 1, s, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    go(xs, 0, max_terms, 0, visit).map(|_| ())
}

/// Nonempty `L ⊆ S` with `ΣL ≡ 0 (mod |S|)`.
///
/// Grows the reachable residues `C_0 = {0}`, `C_{i+1} = C_i ∪ (C_i + x_{i+1})`
/// with back-pointers, and returns the first subset whose sum lands on 0.
/// Pigeonhole guarantees this happens within `|S|` steps.
pub fn zero_sum_subset(set: &[Nat]) -> Result<Vec<Nat>> {
    if set.is_empty() {
        return Err(Error::EmptySequence);
    }
    let k = set.len() as Nat;
    // reached[c] = (previous residue, index of the element that was added)
    let mut reached: Vec<Option<(usize, usize)>> = vec![None; set.len()];
    let mut members: Vec<usize> = vec![0];
    let mut is_member = vec![false; set.len()];
    is_member[0] = true;

    let trace = |reached: &[Option<(usize, usize)>], mut c: usize, last: usize| -> Vec<Nat> {
        let mut picked = vec![last];
        while c != 0 {
            let (prev, idx) = reached[c].expect("reached residue has a parent");
            picked.push(idx);
            c = prev;
        }
        picked.sort_unstable();
        picked.into_iter().map(|i| set[i]).collect()
    };

    for (idx, &x) in set.iter().enumerate() {
        let r = (x % k) as usize;
        let need = (set.len() - r) % set.len();
        if is_member[need] {
            return Ok(trace(&reached, need, idx));
        }
        let snapshot = members.len();
        for m in 0..snapshot {
            let c = members[m];
            let next = (c + r) % set.len();
            if !is_member[next] {
                is_member[next] = true;
                reached[next] = Some((c, idx));
                members.push(next);
            }
        }
    }
    Err(Error::InvariantViolation(format!("no zero-sum subset found for {set:?}")))
}

/// Checks `#supp(r · 2^i · (2^k - 1)) = k` for odd `r` with bit-length at most `k-1`.
pub fn support_lemma_check(r: Nat, i: u32, k: u32) -> Result<bool> {
    if r.is_multiple_of(2) {
        return Err(Error::SupportPrecondition("r must be odd"));
    }
    if k < 2 || bit_length(r) > k - 1 {
        return Err(Error::SupportPrecondition("bit-length of r must be at most k-1"));
    }
    let block = 1u128.checked_shl(k).filter(|_| k < Nat::BITS).map(|p| p - 1).ok_or(Error::Overflow("2^k - 1"))?;
    let shifted = r
        .checked_mul(block)
        .and_then(|v| v.checked_mul(1u128.checked_shl(i).filter(|_| i < Nat::BITS)?))
        .ok_or(Error::Overflow("r * 2^i * (2^k - 1)"))?;
    Ok(shifted.count_ones() == k)
}
