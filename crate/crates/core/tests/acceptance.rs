//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p tm-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tm_core::numeral::{binary_support, ceil_log2};
use tm_core::occurrences::{ending_pattern, EndingCase};
use tm_core::partition::{
    block_family_search, find_mono_fs, ternary_counterexample, tm1_cell, tm1_fsbig_probe, tm1_partition,
    tm1_sum_parity_check, weak_schur_search, BlockFamily, SetColoring,
};
use tm_core::summability::check_sum_family;
use tm_core::word::{factors_up_to, is_prefix_of_t, is_prefix_of_tbar};
use tm_core::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 oracle agreement (2^20 letters)", Duration::from_secs(2), c01_oracle_agreement),
        ("2 first 40 letters", Duration::from_secs(1), c02_prefix_40),
        ("3 stated occurrence sets", Duration::from_secs(1), c03_occurrence_sets),
        ("4 automaton, support, A0 examples", Duration::from_secs(1), c04_small_examples),
        ("5 classifier consistency |u| <= 10", Duration::from_secs(300), c05_classifier),
        ("6 ending-pattern lemma below 2^18", Duration::from_secs(120), c06_endings),
        ("7 FS-big witnesses for T-bar prefixes", Duration::from_secs(10), c07_fsbig),
        ("8 IP witnesses for T prefixes", Duration::from_secs(10), c08_ip),
        ("9 support lemma grid", Duration::from_secs(5), c09_support_lemma),
        ("10 zero-sum lemma", Duration::from_secs(30), c10_zero_sum),
        ("11 A0/A1 partition mechanics", Duration::from_secs(120), c11_tm1),
        ("12 ternary counterexample below 3^10", Duration::from_secs(60), c12_ternary),
        ("13 weak-Schur engine", Duration::from_secs(120), c13_weak_schur),
        ("14 block-family engine", Duration::from_secs(1), c14_block_family),
    ];

    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name:<42} {elapsed:>10.2?}  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<42} {elapsed:>10.2?}  {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn c01_oracle_agreement() -> Outcome {
    let n = 1usize << 20;
    let prefix = tm_prefix(n);
    ensure!(prefix.len() == n, "prefix has length {}", prefix.len());
    if let Some(i) = (0..n).find(|&i| prefix.letters()[i] != tm_letter(i as Nat)) {
        return Err(format!("mismatch at n = {i}"));
    }
    Ok(format!("{n} letters agree"))
}

fn c02_prefix_40() -> Outcome {
    let want = "0110100110010110100101100110100110010110";
    let got = tm_prefix(40).to_string();
    ensure!(got == want, "got {got}");
    Ok(got)
}

fn c03_occurrence_sets() -> Outcome {
    for (word, members) in [("010", [3, 15, 18]), ("101", [35, 47, 82])] {
        let u: Factor = word.parse().map_err(|e| format!("{e}"))?;
        let occ = occurrences(&u, 100);
        for m in members {
            ensure!(occ.contains(m), "{m} missing from occurrences of {word}");
        }
    }
    Ok("{3,15,18} ⊆ T|010, {35,47,82} ⊆ T|101".into())
}

fn c04_small_examples() -> Outcome {
    ensure!(tm_letter(13) == 1, "t_13 = {}", tm_letter(13));
    ensure!(binary_support(19).indices() == [0, 1, 4], "supp(19) = {}", binary_support(19));
    ensure!(tm1_cell(25) == Some(0), "25 lands in {:?}", tm1_cell(25));
    let part = tm1_partition(26).map_err(|e| e.to_string())?;
    ensure!(part.a0.contains(&25) && !part.a1.contains(&25), "25 not in A0");
    Ok("t_13 = 1, supp(19) = {0,1,4}, 25 ∈ A0".into())
}

fn c05_classifier() -> Outcome {
    let factors = factors_up_to(10);
    // The enumeration must agree with a long scan of the word.
    let long = tm_prefix(1 << 16);
    let scanned: usize = (1..=10)
        .map(|len| {
            let mut w: Vec<&[u8]> = long.letters().windows(len).collect();
            w.sort_unstable();
            w.dedup();
            w.len()
        })
        .sum();
    ensure!(scanned == factors.len(), "enumerated {} factors, long scan finds {scanned}", factors.len());

    let mut disagreements = Vec::new();
    let mut tally = [0usize; 4];
    for u in &factors {
        let class = classify_factor(u);
        let t = is_prefix_of_t(u.word());
        let tbar = is_prefix_of_tbar(u.word());
        let member = |n: Nat| occurrence_parity_check(n, u);
        let ok = match class {
            FactorClass::PrefixOfT => {
                tally[0] += 1;
                t
            }
            FactorClass::PrefixOfTbar => {
                tally[1] += 1;
                tbar && !t
            }
            FactorClass::TwoNotThreeSummable => {
                tally[2] += 1;
                !t && !tbar && is_k_summable_upto(member, 2, 1 << 16) && !is_k_summable_upto(member, 3, 1 << 12)
            }
            FactorClass::NotTwoSummable => {
                tally[3] += 1;
                !t && !tbar && !is_k_summable_upto(member, 2, 1 << 12) && !is_k_summable_upto(member, 3, 1 << 12)
            }
        };
        if !ok {
            disagreements.push(format!("{u}:{class}"));
        }
    }
    ensure!(disagreements.is_empty(), "disagreements: {}", disagreements.join(", "));
    Ok(format!(
        "{} factors (IP {}, FS-big {}, 2-not-3 {}, not-2 {}), 0 disagreements",
        factors.len(),
        tally[0],
        tally[1],
        tally[2],
        tally[3]
    ))
}

fn c06_endings() -> Outcome {
    let bound: Nat = 1 << 18;
    let mut checked = 0usize;
    let mut doubles = 0usize;
    for u in factors_up_to(10) {
        if is_prefix_of_t(u.word()) || is_prefix_of_tbar(u.word()) {
            continue;
        }
        let pattern = ending_pattern(&u, bound).map_err(|e| format!("{u}: {e}"))?;
        let occ = occurrences(&u, bound);
        ensure!(occ.positions.iter().all(|&x| pattern.admits(x)), "{u}: occurrence outside {pattern}");
        ensure!(!pattern.provisional, "{u}: {pattern}");
        if pattern.case == EndingCase::Double {
            doubles += 1;
            let k = pattern.k;
            let low = occ.positions.iter().any(|&x| x.trailing_zeros() == k);
            let high = occ.positions.iter().any(|&x| x.trailing_zeros() == k + 1);
            ensure!(low && high, "{u}: only one ending observed");
        }
        checked += 1;
    }
    Ok(format!("{checked} non-prefix factors ({doubles} Double), 0 violations"))
}

fn c07_fsbig() -> Outcome {
    let mut sums_checked = 0usize;
    for u in factors_up_to(8).into_iter().filter(|u| is_prefix_of_tbar(u.word())) {
        let l = ceil_log2(u.len() as u64);
        for k in 1..=3u32 {
            let w = fsbig_witness_for_tmbar_prefix(&u, k, 8).map_err(|e| format!("{u} k={k}: {e}"))?;
            ensure!(has_ufs(w.terms()).unwrap_or(false), "{u} k={k}: no UFS");
            let max_r = (2 * k - 1) as usize;
            let family = check_sum_family(&u, w.terms(), max_r).map_err(|e| e.to_string())?;
            ensure!(family.first_failure.is_none(), "{u} k={k}: sum {:?} not an occurrence", family.first_failure);
            sums_checked += family.checked;
            // popcount of each r-term sum is exactly 2r + 2k - 1
            let terms = w.terms();
            for mask in 1u32..1 << terms.len() {
                let r = mask.count_ones();
                if r as usize > max_r {
                    continue;
                }
                let s: Nat = (0..terms.len()).filter(|b| mask >> b & 1 == 1).map(|b| terms[b]).sum();
                ensure!(s.count_ones() == 2 * r + 2 * k - 1, "{u} k={k}: popcount of {s}");
                ensure!(s.is_multiple_of(1 << l), "{u} k={k}: {s} not divisible by 2^{l}");
            }
        }
    }
    Ok(format!("{sums_checked} bounded sums checked, 0 violations"))
}

fn c08_ip() -> Outcome {
    let mut prefixes = 0;
    for u in factors_up_to(8).into_iter().filter(|u| is_prefix_of_t(u.word())) {
        let w = ip_witness_for_prefix(&u, 10).map_err(|e| format!("{u}: {e}"))?;
        let fs = finite_sums(&w).map_err(|e| e.to_string())?;
        ensure!(fs.len() == 1023, "{u}: {} sums", fs.len());
        if let Some(s) = fs.sums().iter().find(|&&s| !occurrence_parity_check(s, &u)) {
            return Err(format!("{u}: sum {s} is not an occurrence"));
        }
        prefixes += 1;
    }
    Ok(format!("{prefixes} prefixes x 1023 sums, 0 violations"))
}

fn c09_support_lemma() -> Outcome {
    let mut cases = 0;
    for r in (1..256u128).step_by(2) {
        for i in 0..=8 {
            let start = 128 - r.leading_zeros() + 1;
            for k in start..=24 {
                let ok = support_lemma_check(r, i, k).map_err(|e| format!("r={r} i={i} k={k}: {e}"))?;
                ensure!(ok, "r={r} i={i} k={k}");
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, 0 failures"))
}

fn validate_zero_sum(set: &[Nat]) -> Result<(), String> {
    let sub = zero_sum_subset(set).map_err(|e| format!("{set:?}: {e}"))?;
    ensure!(!sub.is_empty(), "{set:?}: empty output");
    let mut pool = set.to_vec();
    for x in &sub {
        let i = pool.iter().position(|y| y == x).ok_or_else(|| format!("{set:?}: {x} not in set"))?;
        pool.swap_remove(i);
    }
    ensure!(sub.iter().sum::<Nat>() % set.len() as Nat == 0, "{set:?}: {sub:?} not zero mod {}", set.len());
    Ok(())
}

fn c10_zero_sum() -> Outcome {
    let mut exhaustive = 0;
    for mask in 1u32..1 << 24 {
        if mask.count_ones() > 4 {
            continue;
        }
        let set: Vec<Nat> = (0..24).filter(|b| mask >> b & 1 == 1).map(|b| b as Nat + 1).collect();
        validate_zero_sum(&set)?;
        exhaustive += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a65726f);
    for _ in 0..10_000 {
        let size = rng.gen_range(1..=8);
        let set: Vec<Nat> = sample(&mut rng, 1_000_000, size).into_iter().map(|x| x as Nat + 1).collect();
        validate_zero_sum(&set)?;
    }
    Ok(format!("{exhaustive} exhaustive + 10000 random sets, 0 failures"))
}

fn c11_tm1() -> Outcome {
    let report = tm1_sum_parity_check(1 << 12).map_err(|e| e.to_string())?;
    ensure!(report.violations == 0, "{} violations", report.violations);
    let (w0, w1) = tm1_fsbig_probe(1 << 16, 3).map_err(|e| e.to_string())?;
    for (cell, w) in [(0, &w0), (1, &w1)] {
        ensure!(w.len() == 3, "A{cell} witness has {} terms", w.len());
        let fs = finite_sums(w).map_err(|e| e.to_string())?;
        ensure!(fs.len() == 7, "A{cell} witness lacks UFS");
        ensure!(
            fs.sums().iter().all(|&s| tm1_cell(s) == Some(cell) && s <= 1 << 16),
            "A{cell} witness leaves the cell"
        );
    }
    Ok(format!("{} pairs, 0 violations; A0 {:?}, A1 {:?}", report.pairs_checked, w0.terms(), w1.terms()))
}

fn c12_ternary() -> Outcome {
    let r = ternary_counterexample(59_049, 6).map_err(|e| e.to_string())?;
    ensure!(r.violations == 0, "{} violations", r.violations);
    Ok(format!(
        "|D| = {}, |A0| = {}, |A1| = {}, {} pairs, 0 violations",
        r.d_size, r.a0_size, r.a1_size, r.pairs_checked
    ))
}

/// Brute force over every 2-coloring of {1..m}.
fn brute_two_color_threshold(terms: usize, max_m: u32) -> Option<u32> {
    (1..=max_m).find(|&m| {
        (0u32..1 << m).all(|code| {
            let coloring: Vec<u8> = (0..m).map(|i| (code >> i & 1) as u8).collect();
            find_mono_fs(&coloring, terms).is_some()
        })
    })
}

/// Pinned from `brute_two_color_threshold(2, 12)`.
const WEAK_SCHUR_2_2: u32 = 9;

fn c13_weak_schur() -> Outcome {
    let r = weak_schur_search(1, 2, 10).map_err(|e| e.to_string())?;
    ensure!(r.threshold == Some(3), "(1,2,10) -> {:?}", r.threshold);
    let r = weak_schur_search(2, 1, 10).map_err(|e| e.to_string())?;
    ensure!(r.threshold == Some(1), "(2,1,10) -> {:?}", r.threshold);
    let r = weak_schur_search(2, 2, 12).map_err(|e| e.to_string())?;
    ensure!(r.threshold == Some(WEAK_SCHUR_2_2), "(2,2,12) -> {:?}", r.threshold);
    let oracle = brute_two_color_threshold(2, 12);
    ensure!(oracle == r.threshold, "oracle says {oracle:?}");
    ensure!(r.certificate.len() as u32 == WEAK_SCHUR_2_2 - 1, "certificate length {}", r.certificate.len());
    ensure!(find_mono_fs(&r.certificate, 2).is_none(), "certificate {:?} has a mono FS", r.certificate);
    Ok(format!("(1,2)=3, (2,1)=1, (2,2)={WEAK_SCHUR_2_2}; certificate {:?} clean", r.certificate))
}

fn c14_block_family() -> Outcome {
    let fam = |b: Vec<Vec<u32>>| BlockFamily::new(b).expect("valid family");
    let constant = SetColoring::constant(4).map_err(|e| e.to_string())?;
    let got = block_family_search(&constant, 3).map_err(|e| e.to_string())?;
    ensure!(got == Some(fam(vec![vec![1], vec![2], vec![3]])), "constant: {got:?}");
    ensure!(got.as_ref().is_some_and(|f| f.is_monochromatic(&constant)), "constant: not monochromatic");

    let parity = SetColoring::min_parity(3).map_err(|e| e.to_string())?;
    let got = block_family_search(&parity, 2).map_err(|e| e.to_string())?;
    ensure!(got == Some(fam(vec![vec![1], vec![3]])), "min-parity: {got:?}");
    ensure!(got.as_ref().is_some_and(|f| f.is_monochromatic(&parity)), "min-parity: not monochromatic");

    // Independent union scan.
    let f = got.expect("checked above");
    let mut colors = Vec::new();
    for h in 1u32..1 << f.len() {
        let union: Vec<u32> = (0..f.len()).filter(|b| h >> b & 1 == 1).flat_map(|b| f.blocks()[b].clone()).collect();
        colors.push(union.iter().min().copied().map(|m| m % 2));
    }
    ensure!(colors.windows(2).all(|w| w[0] == w[1]), "union colors {colors:?}");
    Ok("({1},{2},{3}) and ({1},{3}), both monochromatic".into())
}
