//! Re-validation of saved reports.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;
use tm_core::numeral::binary_support;
use tm_core::occurrences::occurrences;
use tm_core::partition::{
    block_family_search, find_mono_fs, fs_partition_demo, ternary_counterexample, tm1_cell, tm1_partition,
    tm1_sum_parity_check, weak_schur_search, TernaryReport, WeakSchurResult,
};
use tm_core::summability::check_sum_family;
use tm_core::word::{is_prefix_of_t, is_prefix_of_tbar};
use tm_core::{
    classify_factor, ending_pattern, find_k_summable_witness, finite_sums, is_prefix_of_tau_power_aba,
    occurrence_parity_check, support_lemma_check, tm_letter, tm_prefix, tmbar_prefix, EndingCase, Nat, SumSequence,
};

use crate::commands::{check_zero_sum_set, fsbig_popcount_failures, occurs_at, tm1_witness, OCCURRENCE_BOUND_CAP};
use crate::payload::*;
use crate::{CliError, Outcome, Report};

/// Problems found while re-validating one payload, plus how many facts were checked.
#[derive(Default)]
struct Audit {
    checked: u64,
    problems: Vec<String>,
}

impl Audit {
    fn check(&mut self, ok: bool, problem: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.problems.push(problem());
        }
    }

    fn fail(&mut self, problem: String) {
        self.problems.push(problem);
    }
}

pub(crate) fn verify_file(path: &Path) -> Result<Outcome, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let report =
        Report::from_json(&text).map_err(|e| CliError::Usage(format!("{} is not a report: {e}", path.display())))?;
    let audit = verify_report(&report)?;
    let valid = audit.problems.is_empty();
    let mut text = format!("{}: {} checks, ", report.command, audit.checked);
    if valid {
        text.push_str("valid\n");
    } else {
        text.push_str(&format!("{} problems\n", audit.problems.len()));
        for p in &audit.problems {
            text.push_str(&format!("  {p}\n"));
        }
    }
    let result = json!({
        "verified_command": report.command,
        "valid": valid,
        "problems": audit.problems,
    });
    Ok(Outcome::new("verify", json!({"report": path.display().to_string()}), &result)?
        .checked(audit.checked, audit.problems.len() as u64)
        .text(text))
}

fn payload<T: DeserializeOwned>(report: &Report, audit: &mut Audit) -> Option<T> {
    match serde_json::from_value(report.result.clone()) {
        Ok(p) => Some(p),
        Err(e) => {
            audit.fail(format!("payload does not decode: {e}"));
            None
        }
    }
}

fn same<T: PartialEq + Serialize>(audit: &mut Audit, what: &str, recorded: &T, recomputed: &T) {
    audit.check(recorded == recomputed, || {
        let show = |x: &T| serde_json::to_string(x).unwrap_or_default();
        format!("{what}: recorded {}, recomputed {}", show(recorded), show(recomputed))
    });
}

/// Re-checks the payload of `report` with the core verifiers.
fn verify_report(report: &Report) -> Result<Audit, CliError> {
    let mut audit = Audit::default();
    let a = &mut audit;
    match report.command.as_str() {
        "prefix" => {
            if let Some(p) = payload::<PrefixResult>(report, a) {
                let n = p.word.len();
                let want = if p.complement { tmbar_prefix(n) } else { tm_prefix(n) };
                for (i, (&x, &y)) in p.word.letters().iter().zip(want.letters()).enumerate() {
                    a.check(x == y, || format!("letter {i} is {x}, expected {y}"));
                }
            }
        }
        "letter" => {
            if let Some(p) = payload::<LetterResult>(report, a) {
                same(a, "letter", &p.letter, &tm_letter(p.n));
                same(a, "support", &p.support, &binary_support(p.n));
            }
        }
        "occurrences" => {
            if let Some(p) = payload::<OccurrencesResult>(report, a) {
                same(a, "count", &p.count, &p.positions.len());
                a.check(p.positions.windows(2).all(|w| w[0] < w[1]), || "positions not increasing".into());
                for &x in &p.positions {
                    a.check(x < p.bound && occurs_at(&p.factor, x), || format!("{} does not occur at {x}", p.factor));
                }
                if p.bound <= OCCURRENCE_BOUND_CAP as Nat {
                    same(a, "positions", &p.positions, &occurrences(&p.factor, p.bound).positions);
                }
            }
        }
        "classify" => {
            if let Some(p) = payload::<ClassifyResult>(report, a) {
                let w = p.factor.word();
                same(a, "class", &p.class, &classify_factor(&p.factor));
                same(a, "prefix_of_t", &p.prefix_of_t, &is_prefix_of_t(w));
                same(a, "prefix_of_tbar", &p.prefix_of_tbar, &is_prefix_of_tbar(w));
                same(a, "tau_power", &p.tau_power, &is_prefix_of_tau_power_aba(w));
            }
        }
        "ending-pattern" => {
            if let Some(p) = payload::<EndingResult>(report, a) {
                same(a, "endings", &p.endings, &p.pattern.endings());
                if p.bound > OCCURRENCE_BOUND_CAP as Nat {
                    a.fail(format!("bound {} exceeds {OCCURRENCE_BOUND_CAP}", p.bound));
                } else {
                    let occ = occurrences(&p.factor, p.bound);
                    same(a, "observed", &p.pattern.observed, &occ.len());
                    for &x in &occ.positions {
                        a.check(p.pattern.admits(x), || format!("occurrence {x} has another ending"));
                    }
                    if p.pattern.case == EndingCase::Double {
                        for tz in [p.pattern.k, p.pattern.k + 1] {
                            let seen = occ.positions.iter().any(|&x| x.trailing_zeros() == tz);
                            a.check(seen, || format!("no occurrence with {tz} trailing zeros"));
                        }
                    }
                    match ending_pattern(&p.factor, p.bound) {
                        Ok(pattern) => same(a, "pattern", &p.pattern, &pattern),
                        Err(e) => a.fail(format!("recomputation failed: {e}")),
                    }
                }
            }
        }
        "witness summable" => {
            if let Some(p) = payload::<SummableResult>(report, a) {
                match &p.witness {
                    Some(w) => {
                        same(a, "terms", &w.len(), &p.k);
                        sums_in_occurrence_set(a, &p.factor, w, p.k)?;
                        let fs = finite_sums(w)?;
                        let max = fs.sums().last().copied().unwrap_or(0);
                        a.check(max <= p.bound, || format!("sum {max} exceeds bound {}", p.bound));
                    }
                    None => {
                        let found = find_k_summable_witness(|n| occurrence_parity_check(n, &p.factor), p.k, p.bound);
                        a.check(found.is_none(), || format!("a witness exists: {:?}", found.unwrap().terms()));
                    }
                }
            }
        }
        "witness ip" => {
            if let Some(p) = payload::<IpResult>(report, a) {
                a.check(is_prefix_of_t(p.factor.word()), || format!("{} is not a prefix of T", p.factor));
                sums_in_occurrence_set(a, &p.factor, &p.witness, p.witness.len())?;
            }
        }
        "witness fsbig" => {
            if let Some(p) = payload::<FsbigResult>(report, a) {
                a.check(is_prefix_of_tbar(p.factor.word()), || format!("{} is not a prefix of T-bar", p.factor));
                a.check(p.k >= 1, || "k must be at least 1".into());
                if p.k >= 1 {
                    same(a, "max_sum_terms", &p.max_sum_terms, &(2 * p.k as usize - 1));
                    sums_in_occurrence_set(a, &p.factor, &p.witness, p.max_sum_terms)?;
                    let bad = fsbig_popcount_failures(p.witness.terms(), p.k);
                    a.check(bad == 0, || format!("{bad} sums with the wrong support size"));
                }
            }
        }
        "lemma zero-sum" => {
            if let Some(p) = payload::<ZeroSumResult>(report, a) {
                if let Err(e) = check_zero_sum_set(&p.set) {
                    a.fail(e);
                }
                a.check(!p.subset.is_empty(), || "empty subset".into());
                let mut sorted = p.subset.clone();
                sorted.sort_unstable();
                a.check(sorted.windows(2).all(|w| w[0] < w[1]), || "subset repeats an element".into());
                for x in &p.subset {
                    a.check(p.set.contains(x), || format!("{x} is not in the set"));
                }
                let sum = p.subset.iter().try_fold(0 as Nat, |s, &x| s.checked_add(x));
                same(a, "sum", &Some(p.sum), &sum);
                a.check(!p.set.is_empty() && p.sum % p.set.len() as Nat == 0, || {
                    format!("{} is not divisible by {}", p.sum, p.set.len())
                });
            }
        }
        "lemma support" => {
            if let Some(p) = payload::<SupportResult>(report, a) {
                match support_lemma_check(p.r, p.i, p.k) {
                    Ok(holds) => {
                        same(a, "holds", &p.holds, &holds);
                        a.check(p.holds, || "the lemma fails".into());
                        let product = (p.r << p.i) * ((1 << p.k) - 1);
                        same(a, "product", &p.product, &product);
                        same(a, "support_size", &p.support_size, &(product.count_ones() as usize));
                    }
                    Err(e) => a.fail(format!("{e}")),
                }
            }
        }
        "partition tm1" => {
            if let Some(p) = payload::<Tm1Result>(report, a) {
                let partition = tm1_partition(p.bound)?;
                same(a, "a0_size", &p.a0_size, &partition.a0.len());
                same(a, "a1_size", &p.a1_size, &partition.a1.len());
                match tm1_sum_parity_check(p.bound) {
                    Ok(r) => same(a, "pairs_checked", &p.pairs_checked, &r.pairs_checked),
                    Err(e) => a.fail(format!("{e}")),
                }
                for (cell, w) in [(0, &p.a0_witness), (1, &p.a1_witness)] {
                    match w {
                        Some(w) => {
                            same(a, "terms", &w.len(), &p.k);
                            for s in finite_sums(w)?.sums() {
                                a.check(tm1_cell(*s) == Some(cell) && *s <= p.probe_bound, || {
                                    format!("sum {s} is outside A{cell} or above the probe bound")
                                });
                            }
                        }
                        None => {
                            let found = tm1_witness(cell, p.k, p.probe_bound);
                            a.check(found.is_none(), || format!("A{cell} has a witness below the probe bound"));
                        }
                    }
                }
            }
        }
        "partition ternary" => {
            if let Some(p) = payload::<TernaryReport>(report, a) {
                a.check(p.violations == 0, || format!("{} violations recorded", p.violations));
                match ternary_counterexample(p.bound, p.max_cell) {
                    Ok(r) => same(a, "report", &p, &r),
                    Err(e) => a.fail(format!("{e}")),
                }
            }
        }
        "search weak-schur" => {
            if let Some(p) = payload::<WeakSchurResult>(report, a) {
                let len = p.threshold.map_or(p.max_m, |m| m - 1) as usize;
                same(a, "certificate length", &p.certificate.len(), &len);
                a.check(p.certificate.iter().all(|&c| (c as u32) < p.colors), || {
                    "certificate uses too many colors".into()
                });
                let mono = find_mono_fs(&p.certificate, p.terms as usize);
                a.check(mono.is_none(), || format!("certificate contains a monochromatic FS of {mono:?}"));
                match weak_schur_search(p.colors, p.terms, p.max_m) {
                    Ok(r) => same(a, "threshold", &p.threshold, &r.threshold),
                    Err(e) => a.fail(format!("{e}")),
                }
            }
        }
        "search block-family" => {
            if let Some(p) = payload::<BlockFamilyResult>(report, a) {
                let coloring = set_coloring(p.coloring, p.m)?;
                match &p.family {
                    Some(f) => {
                        same(a, "blocks", &f.len(), &p.k);
                        let inside = f.blocks().iter().flatten().all(|&t| (1..=p.m).contains(&t));
                        a.check(inside, || format!("blocks leave {{1..{}}}", p.m));
                        if inside {
                            a.check(f.is_monochromatic(&coloring), || "unions are not monochromatic".into());
                        }
                    }
                    None => {
                        let found = block_family_search(&coloring, p.k)?;
                        a.check(found.is_none(), || format!("a family exists: {found:?}"));
                    }
                }
            }
        }
        "search fs-demo" => {
            if let Some(p) = payload::<FsDemoResult>(report, a) {
                let cell = |n: Nat| cell_of(p.cells, p.modulus, n);
                let modulus_ok = p.cells != crate::args::CellKind::Residue || p.modulus > 0;
                a.check(modulus_ok, || "modulus must be positive".into());
                match &p.demo {
                    _ if !modulus_ok => {}
                    Some(d) => {
                        same(a, "terms", &d.xs.len(), &p.k);
                        same(a, "blocks", &d.blocks.len(), &p.k);
                        let ys = p.ys.terms();
                        let inside = d.blocks.blocks().iter().flatten().all(|&t| (1..=ys.len() as u32).contains(&t));
                        a.check(inside, || "blocks leave the index range of ys".into());
                        if inside {
                            let mut sums: Vec<Nat> =
                                d.blocks.blocks().iter().map(|b| b.iter().map(|&t| ys[t as usize - 1]).sum()).collect();
                            sums.sort_unstable();
                            same(a, "block sums", &d.xs.terms().to_vec(), &sums);
                        }
                        for &s in finite_sums(&d.xs)?.sums() {
                            a.check(cell(s) == d.cell, || format!("sum {s} is not in cell {}", d.cell));
                        }
                    }
                    None => {
                        let found = fs_partition_demo(&p.ys, cell, p.k)?;
                        a.check(found.is_none(), || "a monochromatic family exists".into());
                    }
                }
            }
        }
        other => {
            return Err(CliError::Usage(format!("cannot verify reports of command `{other}`")));
        }
    }
    Ok(audit)
}

fn sums_in_occurrence_set(
    audit: &mut Audit,
    u: &tm_core::Factor,
    w: &SumSequence,
    max_terms: usize,
) -> Result<(), CliError> {
    let family = check_sum_family(u, w.terms(), max_terms)?;
    audit.checked += family.checked as u64;
    if let Some(s) = family.first_failure {
        audit.fail(format!("sum {s} is not an occurrence of {u}"));
    }
    Ok(())
}
