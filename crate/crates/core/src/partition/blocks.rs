use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::Nat;
use crate::summability::{subset_sums_by_mask, SumSequence};

/// Largest ground set `{1..m}` for colorings of its nonempty subsets.
pub const MAX_BLOCK_M: u32 = 16;

/// A coloring of `Fin({1..m})`. Subsets are bitmasks with bit `t-1` for
/// element `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetColoring {
    m: u32,
    colors: Vec<u8>,
}

impl SetColoring {
    pub fn from_fn(m: u32, mut color: impl FnMut(u32) -> u8) -> Result<Self> {
        if m == 0 || m > MAX_BLOCK_M {
            return Err(Error::InvalidParameter(format!("m must be in 1..={MAX_BLOCK_M}, got {m}")));
        }
        let colors = (0..1u32 << m).map(|mask| if mask == 0 { 0 } else { color(mask) }).collect();
        Ok(SetColoring { m, colors })
    }

    pub fn constant(m: u32) -> Result<Self> {
        Self::from_fn(m, |_| 0)
    }

    /// Colors a set by the parity of its least element (odd -> 0, even -> 1).
    pub fn min_parity(m: u32) -> Result<Self> {
        Self::from_fn(m, |mask| ((mask.trailing_zeros() + 1) % 2 == 0) as u8)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn color(&self, mask: u32) -> u8 {
        self.colors[mask as usize]
    }
}

/// Blocks `F_1, ..., F_k` with `max F_t < min F_{t+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct BlockFamily(Vec<Vec<u32>>);

impl BlockFamily {
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        for b in &blocks {
            if b.is_empty() || b[0] == 0 || b.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "block {b:?} must be a nonempty increasing set of positive integers"
                )));
            }
        }
        if blocks.windows(2).any(|w| w[0].last() >= w[1].first()) {
            return Err(Error::InvalidParameter("blocks must satisfy max F_t < min F_(t+1)".into()));
        }
        Ok(BlockFamily(blocks))
    }

    fn from_masks(masks: &[u32]) -> Self {
        BlockFamily(masks.iter().map(|&m| mask_elements(m)).collect())
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn masks(&self) -> Vec<u32> {
        self.0.iter().map(|b| b.iter().fold(0, |acc, &t| acc | 1 << (t - 1))).collect()
    }

    /// Every union over a nonempty set of block indices, as bitmasks.
    pub fn unions(&self) -> Vec<u32> {
        let masks = self.masks();
        (1u32..1 << masks.len())
            .map(|h| (0..masks.len()).filter(|b| h >> b & 1 == 1).fold(0, |acc, b| acc | masks[b]))
            .collect()
    }

    /// True iff every union receives the same color.
    pub fn is_monochromatic(&self, coloring: &SetColoring) -> bool {
        let unions = self.unions();
        let fits = unions.iter().all(|&u| u < 1 << coloring.m());
        fits && unions.iter().all(|&u| coloring.color(u) == coloring.color(unions[0]))
    }
}

impl TryFrom<Vec<Vec<u32>>> for BlockFamily {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<u32>>) -> Result<Self> {
        BlockFamily::new(blocks)
    }
}

impl From<BlockFamily> for Vec<Vec<u32>> {
    fn from(f: BlockFamily) -> Self {
        f.0
    }
}

fn mask_elements(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Least block family `F_1 < ... < F_k` in `{1..m}` all of whose unions share
/// a color.
///
/// Families are ordered by `max F_k`, then block by block with each block
/// compared as a sorted tuple (so `{1} < {1,2} < {1,3} < {2}`).
pub fn block_family_search(coloring: &SetColoring, k: usize) -> Result<Option<BlockFamily>> {
    if k == 0 || k > 4 {
        return Err(Error::InvalidParameter(format!("k must be in 1..=4, got {k}")));
    }
    let m = coloring.m();
    for top in k as u32..=m {
        let mut chosen = Vec::with_capacity(k);
        let mut unions = Vec::with_capacity(1 << k);
        if place(coloring, k, top, 1, &mut chosen, &mut unions) {
            return Ok(Some(BlockFamily::from_masks(&chosen)));
        }
    }
    Ok(None)
}

/// Places the next block with elements `>= lo`; the last block must have
/// maximum exactly `top`.
fn place(coloring: &SetColoring, k: usize, top: u32, lo: u32, chosen: &mut Vec<u32>, unions: &mut Vec<u32>) -> bool {
    let t = chosen.len();
    let last = t + 1 == k;
    // Later blocks each need one element above this block's maximum.
    let hi = if last { top } else { top - (k - t - 1) as u32 };
    if lo > hi {
        return false;
    }
    let mut found = false;
    for_each_subset_lex(lo, hi, 0, &mut |block| {
        let max = 32 - block.leading_zeros();
        if last && max != top {
            return true;
        }
        let color = match unions.first() {
            Some(&u) => coloring.color(u),
            None => coloring.color(block),
        };
        let fresh: Option<Vec<u32>> = std::iter::once(block)
            .chain(unions.iter().map(|&u| u | block))
            .map(|u| (coloring.color(u) == color).then_some(u))
            .collect();
        let Some(fresh) = fresh else {
            return true;
        };
        let len = unions.len();
        unions.extend(fresh);
        chosen.push(block);
        if last || place(coloring, k, top, max + 1, chosen, unions) {
            found = true;
            return false;
        }
        chosen.pop();
        unions.truncate(len);
        true
    });
    found
}

/// Visits nonempty subsets of `[lo, hi]` in lexicographic order of their
/// sorted element tuples; stops when `visit` returns false.
fn for_each_subset_lex(lo: u32, hi: u32, base: u32, visit: &mut dyn FnMut(u32) -> bool) -> bool {
    for a in lo..=hi {
        let mask = base | 1 << (a - 1);
        if !visit(mask) {
            return false;
        }
        if a < hi && !for_each_subset_lex(a + 1, hi, mask, visit) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsDemo {
    pub cell: usize,
    pub blocks: BlockFamily,
    /// Block sums `x_n = Σ_{t ∈ F_n} y_t`, sorted ascending.
    pub xs: SumSequence,
}

/// Colors each `H ⊆ {1..|ys|}` by the cell of `Σ_{t∈H} y_t`, extracts a
/// monochromatic block family, and returns the block sums, which have UFS
/// and all their finite sums in one cell.
pub fn fs_partition_demo(ys: &SumSequence, cell_of: impl Fn(Nat) -> usize, k: usize) -> Result<Option<FsDemo>> {
    let m = ys.len() as u32;
    if m > MAX_BLOCK_M {
        return Err(Error::CapExceeded { len: ys.len(), cap: MAX_BLOCK_M as usize });
    }
    let sums = subset_sums_by_mask(ys.terms())?;
    let cells: Vec<usize> = sums.iter().map(|&s| cell_of(s)).collect();
    if cells.iter().skip(1).any(|&c| c > u8::MAX as usize) {
        return Err(Error::InvalidParameter("cell indices must fit in a byte".into()));
    }
    let coloring = SetColoring::from_fn(m, |mask| cells[mask as usize] as u8)?;
    let Some(blocks) = block_family_search(&coloring, k)? else {
        return Ok(None);
    };
    let mut xs: Vec<Nat> = blocks.masks().iter().map(|&mask| sums[mask as usize]).collect();
    xs.sort_unstable();
    let xs = SumSequence::new(xs).map_err(|e| Error::InvariantViolation(format!("block sums lost UFS: {e}")))?;
    let cell = cells[blocks.masks()[0] as usize];
    for u in blocks.unions() {
        if cells[u as usize] != cell {
            return Err(Error::InvariantViolation("block-sum FS is not monochromatic".into()));
        }
    }
    Ok(Some(FsDemo { cell, blocks, xs }))
}
