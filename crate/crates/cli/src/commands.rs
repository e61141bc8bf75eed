use std::fmt::Write as _;

use serde_json::json;
use tm_core::numeral::binary_support;
use tm_core::occurrences::occurrences;
use tm_core::partition::{
    block_family_search, find_mono_fs, fs_partition_demo, ternary_counterexample, tm1_cell, tm1_partition,
    tm1_sum_parity_check, weak_schur_search,
};
use tm_core::summability::check_sum_family;
use tm_core::word::{is_prefix_of_t, is_prefix_of_tbar};
use tm_core::{
    classify_factor, ending_pattern, find_k_summable_witness, finite_sums, fsbig_witness_for_tmbar_prefix,
    ip_witness_for_prefix, is_prefix_of_tau_power_aba, occurrence_parity_check, support_lemma_check, tm_letter,
    tm_prefix, tmbar_prefix, zero_sum_subset, Factor, Nat, SumSequence,
};

use crate::args::{CellArgs, Command, LemmaCommand, PartitionCommand, SearchCommand, SetColoringKind, WitnessCommand};
use crate::payload::*;
use crate::{verify, CliError, Outcome};

/// Longest prefix the `prefix` command will materialize.
pub const PREFIX_CAP: usize = 1 << 24;
/// Largest bound for listing occurrences.
pub const OCCURRENCE_BOUND_CAP: u64 = 1 << 28;
/// Largest `k` for the witness search.
pub const SEARCH_TERMS_CAP: usize = 8;

pub(crate) fn parse_factor(s: &str) -> Result<Factor, CliError> {
    s.parse::<Factor>().map_err(CliError::from)
}

fn join(xs: &[Nat]) -> String {
    xs.iter().map(Nat::to_string).collect::<Vec<_>>().join(", ")
}

/// True iff `u` occurs at `p`, read letter by letter.
pub(crate) fn occurs_at(u: &Factor, p: Nat) -> bool {
    u.letters().iter().enumerate().all(|(j, &a)| tm_letter(p + j as Nat) == a)
}

pub(crate) fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Prefix { length, complement } => prefix(*length, *complement),
        Command::Letter { n } => letter(*n as Nat),
        Command::Occurrences { factor, bound } => list_occurrences(factor, *bound),
        Command::Classify { factor } => classify(factor),
        Command::EndingPattern { factor, bound } => ending(factor, *bound),
        Command::Witness(w) => match w {
            WitnessCommand::Summable { factor, k, bound } => summable(factor, *k, *bound),
            WitnessCommand::Ip { factor, max_terms } => ip(factor, *max_terms),
            WitnessCommand::Fsbig { factor, k, max_terms } => fsbig(factor, *k, *max_terms),
        },
        Command::Lemma(l) => match l {
            LemmaCommand::ZeroSum { set } => zero_sum(set),
            LemmaCommand::Support { r, i, k } => support(*r as Nat, *i, *k),
        },
        Command::Partition(p) => match p {
            PartitionCommand::Tm1 { bound, probe_bound, k } => tm1(*bound, *probe_bound, *k),
            PartitionCommand::Ternary { bound, max_cell } => ternary(*bound, *max_cell),
        },
        Command::Search(s) => match s {
            SearchCommand::WeakSchur { colors, k, max_m } => weak_schur(*colors, *k, *max_m),
            SearchCommand::BlockFamily { m, k, coloring } => block_family(*m, *k, *coloring),
            SearchCommand::FsDemo { ys, cells, k } => fs_demo(ys, cells, *k),
        },
        Command::Verify { report } => verify::verify_file(report),
    }
}

fn prefix(length: usize, complement: bool) -> Result<Outcome, CliError> {
    if length > PREFIX_CAP {
        return Err(CliError::Usage(format!("--length must be at most {PREFIX_CAP}")));
    }
    let word = if complement { tmbar_prefix(length) } else { tm_prefix(length) };
    let flip = complement as u8;
    let bad = word.letters().iter().enumerate().filter(|&(n, &a)| a != tm_letter(n as Nat) ^ flip).count();
    let text = format!("{word}\n");
    Ok(Outcome::new("prefix", json!({"length": length, "complement": complement}), &PrefixResult { complement, word })?
        .checked(length as u64, bad as u64)
        .text(text))
}

fn letter(n: Nat) -> Result<Outcome, CliError> {
    let letter = tm_letter(n);
    let support = binary_support(n);
    let bad = (support.len() % 2) as u8 != letter;
    let text = format!("t_{n} = {letter}\nsupp({n}) = {support}\n");
    Ok(Outcome::new("letter", json!({"n": n as u64}), &LetterResult { n, letter, support })?
        .checked(1, bad as u64)
        .text(text))
}

fn list_occurrences(factor: &str, bound: u64) -> Result<Outcome, CliError> {
    let u = parse_factor(factor)?;
    if bound > OCCURRENCE_BOUND_CAP {
        return Err(CliError::Usage(format!("--bound must be at most {OCCURRENCE_BOUND_CAP}")));
    }
    let occ = occurrences(&u, bound as Nat);
    let bad = occ.positions.iter().filter(|&&p| !occurs_at(&u, p)).count();
    let mut csv = String::from("position\n");
    for p in &occ.positions {
        writeln!(csv, "{p}").unwrap();
    }
    let text = format!("{} occurrences of {u} below {bound}: {}\n", occ.len(), join(&occ.positions));
    let result =
        OccurrencesResult { factor: u, bound: bound as Nat, count: occ.len(), positions: occ.positions.clone() };
    let mut out = Outcome::new("occurrences", json!({"factor": factor, "bound": bound}), &result)?
        .checked(occ.len() as u64, bad as u64)
        .bounded()
        .negative_if(occ.is_empty())
        .text(text);
    out.csv = Some(csv);
    Ok(out)
}

fn classify(factor: &str) -> Result<Outcome, CliError> {
    let u = parse_factor(factor)?;
    let class = classify_factor(&u);
    let result = ClassifyResult {
        prefix_of_t: is_prefix_of_t(u.word()),
        prefix_of_tbar: is_prefix_of_tbar(u.word()),
        tau_power: is_prefix_of_tau_power_aba(u.word()),
        factor: u,
        class,
    };
    let text = format!("{class}\n");
    Ok(Outcome::new("classify", json!({"factor": factor}), &result)?.checked(1, 0).text(text))
}

fn ending(factor: &str, bound: u64) -> Result<Outcome, CliError> {
    let u = parse_factor(factor)?;
    if bound > OCCURRENCE_BOUND_CAP {
        return Err(CliError::Usage(format!("--bound must be at most {OCCURRENCE_BOUND_CAP}")));
    }
    let pattern = ending_pattern(&u, bound as Nat)?;
    let endings = pattern.endings();
    let mut text = format!("{pattern}: endings {} over {} occurrences\n", endings.join(", "), pattern.observed);
    if pattern.provisional {
        text.push_str("provisional: a second ending is expected above the bound\n");
    }
    let observed = pattern.observed as u64;
    let result = EndingResult { factor: u, bound: bound as Nat, pattern, endings };
    Ok(Outcome::new("ending-pattern", json!({"factor": factor, "bound": bound}), &result)?
        .checked(observed, 0)
        .bounded()
        .text(text))
}

fn summable(factor: &str, k: usize, bound: u64) -> Result<Outcome, CliError> {
    let u = parse_factor(factor)?;
    if k == 0 || k > SEARCH_TERMS_CAP {
        return Err(CliError::Usage(format!("-k must be in 1..={SEARCH_TERMS_CAP}")));
    }
    let witness = find_k_summable_witness(|n| occurrence_parity_check(n, &u), k, bound as Nat);
    let (checked, bad) = match &witness {
        Some(w) => {
            let family = check_sum_family(&u, w.terms(), k)?;
            (family.checked as u64, family.first_failure.is_some() as u64)
        }
        None => (0, 0),
    };
    let text = match &witness {
        Some(w) => format!("{k}-term witness for {u}: {}\n", join(w.terms())),
        None => format!("no {k}-term witness for {u} with sums up to {bound}\n"),
    };
    let none = witness.is_none();
    let result = SummableResult { factor: u, k, bound: bound as Nat, witness };
    Ok(Outcome::new("witness summable", json!({"factor": factor, "k": k, "bound": bound}), &result)?
        .checked(checked, bad)
        .bounded()
        .negative_if(none)
        .text(text))
}

fn ip(factor: &str, terms: usize) -> Result<Outcome, CliError> {
    let u = parse_factor(factor)?;
    let witness = ip_witness_for_prefix(&u, terms)?;
    let family = check_sum_family(&u, witness.terms(), witness.len())?;
    let text = format!("IP witness for {u}: {}\n", join(witness.terms()));
    let result = IpResult { factor: u, witness };
    Ok(Outcome::new("witness ip", json!({"factor": factor, "max_terms": terms}), &result)?
        .checked(family.checked as u64, family.first_failure.is_some() as u64)
        .text(text))
}

fn fsbig(factor: &str, k: u32, terms: usize) -> Result<Outcome, CliError> {
    let u = parse_factor(factor)?;
    let witness = fsbig_witness_for_tmbar_prefix(&u, k, terms)?;
    let max_sum_terms = (2 * k - 1) as usize;
    let family = check_sum_family(&u, witness.terms(), max_sum_terms)?;
    let popcount_bad = fsbig_popcount_failures(witness.terms(), k);
    let text = format!("FS-big witness for {u} (sums of up to {max_sum_terms} terms): {}\n", join(witness.terms()));
    let result = FsbigResult { factor: u, k, max_sum_terms, witness };
    Ok(Outcome::new("witness fsbig", json!({"factor": factor, "k": k, "max_terms": terms}), &result)?
        .checked(family.checked as u64, family.first_failure.is_some() as u64 + popcount_bad)
        .text(text))
}

/// Sums of `r <= 2k-1` distinct terms whose binary support does not have
/// exactly `2r + 2k - 1` elements.
pub(crate) fn fsbig_popcount_failures(terms: &[Nat], k: u32) -> u64 {
    let max_r = 2 * k - 1;
    let mut bad = 0;
    for mask in 1u32..1 << terms.len() {
        let r = mask.count_ones();
        if r > max_r {
            continue;
        }
        let s: Nat = (0..terms.len()).filter(|b| mask >> b & 1 == 1).map(|b| terms[b]).sum();
        if s.count_ones() != 2 * r + 2 * k - 1 {
            bad += 1;
        }
    }
    bad
}

pub(crate) fn check_zero_sum_set(set: &[Nat]) -> Result<(), String> {
    if set.contains(&0) {
        return Err("set elements must be positive".into());
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err("set elements must be distinct".into());
    }
    Ok(())
}

fn zero_sum(set: &[u64]) -> Result<Outcome, CliError> {
    let set: Vec<Nat> = set.iter().map(|&x| x as Nat).collect();
    check_zero_sum_set(&set).map_err(CliError::Usage)?;
    let subset = zero_sum_subset(&set)?;
    let sum: Nat = subset.iter().sum();
    let bad = !sum.is_multiple_of(set.len() as Nat);
    let text = format!("{{{}}} sums to {sum} = {} * {}\n", join(&subset), sum / set.len() as Nat, set.len());
    let params = json!({"set": set.iter().map(|&x| x as u64).collect::<Vec<_>>()});
    Ok(Outcome::new("lemma zero-sum", params, &ZeroSumResult { set, subset, sum })?.checked(1, bad as u64).text(text))
}

fn support(r: Nat, i: u32, k: u32) -> Result<Outcome, CliError> {
    let holds = support_lemma_check(r, i, k)?;
    // support_lemma_check has ruled out overflow.
    let product = (r << i) * ((1 << k) - 1);
    let support_size = product.count_ones() as usize;
    let text = format!("|supp({product})| = {support_size}, k = {k}\n");
    let result = SupportResult { r, i, k, product, support_size, holds };
    Ok(Outcome::new("lemma support", json!({"r": r as u64, "i": i, "k": k}), &result)?
        .checked(1, !holds as u64)
        .text(text))
}

/// Least `k`-term UFS sequence inside one cell of the A0/A1 split.
pub(crate) fn tm1_witness(cell: usize, k: usize, bound: Nat) -> Option<SumSequence> {
    find_k_summable_witness(|n| tm1_cell(n) == Some(cell), k, bound)
}

fn tm1(bound: u64, probe_bound: u64, k: usize) -> Result<Outcome, CliError> {
    if k == 0 || k > 4 {
        return Err(CliError::Usage("-k must be in 1..=4".into()));
    }
    let partition = tm1_partition(bound as Nat)?;
    let parity = tm1_sum_parity_check(bound as Nat)?;
    let a0_witness = tm1_witness(0, k, probe_bound as Nat);
    let a1_witness = tm1_witness(1, k, probe_bound as Nat);
    let mut checked = parity.pairs_checked;
    let mut bad = parity.violations;
    for (cell, w) in [(0, &a0_witness), (1, &a1_witness)] {
        if let Some(w) = w {
            let fs = finite_sums(w)?;
            checked += fs.len() as u64;
            bad += fs.sums().iter().filter(|&&s| tm1_cell(s) != Some(cell)).count() as u64;
        }
    }
    let show = |w: &Option<SumSequence>| w.as_ref().map_or("none".to_string(), |w| join(w.terms()));
    let text = format!(
        "|A0| = {}, |A1| = {} below {bound}\n{} pairs checked, {} violations\nA0 {k}-term witness: {}\nA1 {k}-term witness: {}\n",
        partition.a0.len(),
        partition.a1.len(),
        parity.pairs_checked,
        parity.violations,
        show(&a0_witness),
        show(&a1_witness),
    );
    let negative = a0_witness.is_none() || a1_witness.is_none();
    let result = Tm1Result {
        bound: bound as Nat,
        a0_size: partition.a0.len(),
        a1_size: partition.a1.len(),
        pairs_checked: parity.pairs_checked,
        probe_bound: probe_bound as Nat,
        k,
        a0_witness,
        a1_witness,
    };
    Ok(Outcome::new("partition tm1", json!({"bound": bound, "probe_bound": probe_bound, "k": k}), &result)?
        .checked(checked, bad)
        .bounded()
        .negative_if(negative)
        .text(text))
}

fn ternary(bound: u64, max_cell: u32) -> Result<Outcome, CliError> {
    let report = ternary_counterexample(bound as Nat, max_cell)?;
    let text = format!(
        "|D| = {}, |A0| = {}, |A1| = {} below {bound}\n{} pairs checked, {} violations\n",
        report.d_size, report.a0_size, report.a1_size, report.pairs_checked, report.violations
    );
    Ok(Outcome::new("partition ternary", json!({"bound": bound, "max_cell": max_cell}), &report)?
        .checked(report.pairs_checked, report.violations)
        .bounded()
        .text(text))
}

fn weak_schur(colors: u32, k: u32, max_m: u32) -> Result<Outcome, CliError> {
    let result = weak_schur_search(colors, k, max_m)?;
    let bad = find_mono_fs(&result.certificate, k as usize).is_some()
        || result.certificate.iter().any(|&c| c as u32 >= colors);
    let certificate: Vec<String> = result.certificate.iter().map(u8::to_string).collect();
    let text = match result.threshold {
        Some(m) => format!("threshold {m}\ncertificate for {}: {}\n", m - 1, certificate.join("")),
        None => format!("no threshold up to {max_m}\nclean coloring of {max_m}: {}\n", certificate.join("")),
    };
    let none = result.threshold.is_none();
    Ok(Outcome::new("search weak-schur", json!({"colors": colors, "k": k, "max_m": max_m}), &result)?
        .checked(result.nodes, bad as u64)
        .bounded()
        .negative_if(none)
        .text(text))
}

fn format_family(blocks: &[Vec<u32>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn block_family(m: u32, k: usize, kind: SetColoringKind) -> Result<Outcome, CliError> {
    let coloring = set_coloring(kind, m)?;
    let family = block_family_search(&coloring, k)?;
    let bad = family.as_ref().is_some_and(|f| !f.is_monochromatic(&coloring));
    let text = match &family {
        Some(f) => format!("{}\n", format_family(f.blocks())),
        None => format!("no monochromatic {k}-block family in {{1..{m}}}\n"),
    };
    let none = family.is_none();
    let result = BlockFamilyResult { m, k, coloring: kind, family };
    Ok(Outcome::new("search block-family", json!({"m": m, "k": k, "coloring": kind}), &result)?
        .checked(1, bad as u64)
        .negative_if(none)
        .text(text))
}

fn fs_demo(ys: &[u64], cells: &CellArgs, k: usize) -> Result<Outcome, CliError> {
    check_cells(cells).map_err(CliError::Usage)?;
    let ys = SumSequence::new(ys.iter().map(|&y| y as Nat).collect())?;
    let (kind, modulus) = (cells.cells, cells.modulus as Nat);
    let demo = fs_partition_demo(&ys, |n| cell_of(kind, modulus, n), k)?;
    let (checked, bad) = match &demo {
        Some(d) => {
            let fs = finite_sums(&d.xs)?;
            let bad = fs.sums().iter().filter(|&&s| cell_of(kind, modulus, s) != d.cell).count();
            (fs.len() as u64, bad as u64)
        }
        None => (0, 0),
    };
    let text = match &demo {
        Some(d) => {
            format!("cell {}: blocks {} give {}\n", d.cell, format_family(d.blocks.blocks()), join(d.xs.terms()))
        }
        None => format!("no monochromatic {k}-block family\n"),
    };
    let none = demo.is_none();
    let params = json!({
        "ys": ys.terms().iter().map(|&y| y as u64).collect::<Vec<_>>(),
        "cells": kind,
        "modulus": cells.modulus,
        "k": k,
    });
    let result = FsDemoResult { ys, cells: kind, modulus, k, demo };
    Ok(Outcome::new("search fs-demo", params, &result)?.checked(checked, bad).negative_if(none).text(text))
}
