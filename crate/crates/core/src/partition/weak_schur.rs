use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakSchurResult {
    pub colors: u32,
    pub terms: u32,
    pub max_m: u32,
    /// Least `m` forcing a monochromatic FS, if it is at most `max_m`.
    pub threshold: Option<u32>,
    /// A coloring of `{1..len}` with no monochromatic FS (entry `i` colors
    /// `i+1`): length `threshold - 1`, or `max_m` when no threshold was found.
    pub certificate: Vec<u8>,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

/// Least `m <= max_m` such that every `colors`-coloring of `{1..m}` contains
/// `FS(x_1..x_terms)` in one color for some increasing UFS sequence.
///
/// Exhaustive backtracking over colorings of `1, 2, 3, ...`; a branch dies
/// when the newly colored number completes a monochromatic FS (it is then
/// the largest sum). Colorings are kept in canonical form (each new color is
/// at most one more than the largest used), which among other things fixes
/// the color of 1.
pub fn weak_schur_search(colors: u32, terms: u32, max_m: u32) -> Result<WeakSchurResult> {
    if colors == 0 || colors > 3 {
        return Err(Error::InvalidParameter(format!("colors must be in 1..=3, got {colors}")));
    }
    if terms == 0 || terms > 3 {
        return Err(Error::InvalidParameter(format!("terms must be in 1..=3, got {terms}")));
    }
    if max_m > 16 {
        return Err(Error::InvalidParameter(format!("max_m must be at most 16, got {max_m}")));
    }
    let mut search = Search {
        colors: colors as u8,
        terms: terms as usize,
        max_m: max_m as usize,
        coloring: Vec::with_capacity(max_m as usize),
        best: Vec::new(),
        nodes: 0,
    };
    search.run(0);
    let longest = search.best.len() as u32;
    let threshold = (longest < max_m).then_some(longest + 1);
    Ok(WeakSchurResult { colors, terms, max_m, threshold, certificate: search.best, nodes: search.nodes })
}

struct Search {
    colors: u8,
    terms: usize,
    max_m: usize,
    coloring: Vec<u8>,
    best: Vec<u8>,
    nodes: u64,
}

impl Search {
    /// Returns true once a full-length avoiding coloring is found.
    fn run(&mut self, used: u8) -> bool {
        self.nodes += 1;
        if self.coloring.len() > self.best.len() {
            self.best = self.coloring.clone();
        }
        if self.coloring.len() == self.max_m {
            return true;
        }
        let n = self.coloring.len() as Nat + 1;
        let top = (used + 1).min(self.colors);
        for c in 0..top {
            self.coloring.push(c);
            let dead = completes_mono(&self.coloring, n, c, self.terms);
            if !dead && self.run(used.max(c + 1)) {
                return true;
            }
            self.coloring.pop();
        }
        false
    }
}

/// Whether some increasing UFS `terms`-sequence with total `n` has all its
/// finite sums colored `c`. `coloring[i]` is the color of `i+1`, and must
/// cover `1..=n`.
fn completes_mono(coloring: &[u8], n: Nat, c: u8, terms: usize) -> bool {
    let color = |x: Nat| coloring[x as usize - 1];
    fn go(color: &dyn Fn(Nat) -> u8, c: u8, n: Nat, left: usize, prev: Nat, total: Nat, sums: &mut Vec<Nat>) -> bool {
        if left == 1 {
            let x = n - total;
            if x <= prev {
                return false;
            }
            return sums.iter().all(|&s| {
                let t = s + x;
                color(t) == c && !sums.contains(&t)
            });
        }
        // remaining terms after x are each > x: total + x + (left-1)(x+1) <= n
        let mut x = prev + 1;
        while total + x * left as Nat + (left as Nat - 1) * left as Nat / 2 <= n {
            if color(x) == c {
                let fresh: Option<Vec<Nat>> =
                    sums.iter().map(|&s| s + x).map(|t| (color(t) == c && !sums.contains(&t)).then_some(t)).collect();
                if let Some(fresh) = fresh {
                    let len = sums.len();
                    sums.extend(fresh);
                    let found = go(color, c, n, left - 1, x, total + x, sums);
                    sums.truncate(len);
                    if found {
                        return true;
                    }
                }
            }
            x += 1;
        }
        false
    }
    let mut sums = vec![0];
    go(&color, c, n, terms, 0, 0, &mut sums)
}

/// Brute-force scan for a monochromatic FS of an increasing UFS
/// `terms`-sequence under `coloring` (entry `i` colors `i+1`). Returns the
/// sequence if one exists.
pub fn find_mono_fs(coloring: &[u8], terms: usize) -> Option<Vec<Nat>> {
    let m = coloring.len();
    if terms == 0 || terms > m {
        return None;
    }
    let mut idx: Vec<usize> = (1..=terms).collect();
    loop {
        let xs: Vec<Nat> = idx.iter().map(|&i| i as Nat).collect();
        let mut sums: Vec<Nat> =
            (1u32..1 << terms).map(|mask| (0..terms).filter(|b| mask >> b & 1 == 1).map(|b| xs[b]).sum()).collect();
        let fits = sums.iter().all(|&s| s as usize <= m);
        if fits {
            let c = coloring[sums[0] as usize - 1];
            let mono = sums.iter().all(|&s| coloring[s as usize - 1] == c);
            sums.sort_unstable();
            let ufs = sums.windows(2).all(|w| w[0] != w[1]);
            if mono && ufs {
                return Some(xs);
            }
        }
        // next combination of terms elements from 1..=m
        let mut i = terms;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < m - (terms - 1 - i) {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..terms {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
