//! Additive structure of the sets of occurrences of factors in the
//! Thue-Morse word `T = 0110100110010110...`.
//!
//! For a factor `u`, `T|_u` is the set of positions where `u` starts. Which
//! additive patterns those sets contain depends only on how `u` relates to
//! the prefixes of `T`, of its complement, and of `tau^n(010)`/`tau^n(101)`:
//!
//! | factor                                   | [`FactorClass`]                        |
//! |------------------------------------------|----------------------------------------|
//! | prefix of `T`                            | IP-set                                 |
//! | prefix of `T`-bar                        | infinite FS-big, not IP                |
//! | prefix of `tau^n(aba)`, otherwise        | 2-summable, not 3-summable             |
//! | anything else                            | not 2-summable                         |
//!
//! The crate computes and cross-checks everything finite about that
//! picture: occurrence sets, binary endings of occurrences, explicit witness
//! sequences, bounded witness searches, and the partition experiments around
//! it. Bounded searches are consistency checks; an absent witness below a
//! bound proves nothing about larger numbers.

pub mod error;
pub mod numeral;
pub mod occurrences;
pub mod partition;
pub mod summability;
pub mod word;

pub use error::{Error, Result};
pub use numeral::{Nat, SupportSet};
pub use occurrences::{
    classify_factor, classify_word, ending_pattern, is_prefix_of_tau_power_aba, occurrence_parity_check, occurrences,
    EndingCase, EndingPattern, FactorClass, OccurrenceSet,
};
pub use summability::{
    find_k_summable_witness, finite_sums, fsbig_witness_for_tmbar_prefix, has_ufs, ip_witness_for_prefix,
    is_k_summable_upto, support_lemma_check, verify_sum_family, zero_sum_subset, FsSet, SumSequence,
};
pub use word::{apply_morphism, is_factor, tm_letter, tm_prefix, tmbar_prefix, BinaryWord, Factor};
