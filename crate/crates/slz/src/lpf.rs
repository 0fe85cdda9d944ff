//! Random access to LPF and LPnF with their leftmost sources.
//!
//! Values are sampled every b positions. Since j + LPF[j] is nondecreasing,
//! LPF[j] lies in a window of width A[i] − A[i−1] + b between two samples;
//! blocks where that window reaches b' store their values explicitly, the
//! others are resolved by a galloping search over minocc queries.

use crate::bitpack::Bitvector;
use crate::error::{param, Error, Result};
use crate::lz77::Phrase;
use crate::minocc::MinOccIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// The source may overlap the factor: min Occ < j.
    Overlapping,
    /// The source ends before the factor: min Occ + ℓ ≤ j.
    NonOverlapping,
}

/// Block size overrides.
#[derive(Clone, Copy, Debug, Default)]
pub struct BlockSizes {
    pub b: Option<usize>,
    pub b_prime: Option<usize>,
}

/// b = clamp(⌈log₂³ n⌉, 4, n) and b' = max(⌈log₂⁶ n⌉, 4b).
pub fn default_blocks(n: usize) -> (usize, usize) {
    let lg = (n.max(2) as f64).log2();
    let b = (lg.powi(3).ceil() as usize).max(4).min(n.max(1));
    let bp = (lg.powi(6).min(1e18).ceil() as usize).max(4 * b);
    (b, bp)
}

#[derive(Clone, Debug)]
pub struct LpfIndex<'a> {
    minocc: &'a MinOccIndex,
    variant: Variant,
    b: usize,
    b_prime: usize,
    /// A[i] = value at i·b, A[0] = 0.
    samples: Vec<u32>,
    marked: Bitvector,
    /// Values of marked blocks, b per block.
    explicit: Vec<u32>,
}

impl<'a> LpfIndex<'a> {
    pub fn new(minocc: &'a MinOccIndex, variant: Variant) -> Result<Self> {
        Self::with_blocks(minocc, variant, BlockSizes::default())
    }

    pub fn with_blocks(minocc: &'a MinOccIndex, variant: Variant, sizes: BlockSizes) -> Result<Self> {
        let n = minocc.text().n();
        let (db, dbp) = default_blocks(n);
        let b = sizes.b.unwrap_or(db);
        let b_prime = sizes.b_prime.unwrap_or(dbp.max(4 * b));
        if b == 0 || b_prime <= b {
            return Err(param(format!("block sizes b = {b}, b' = {b_prime} need 0 < b < b'")));
        }
        let mut idx = LpfIndex {
            minocc,
            variant,
            b,
            b_prime,
            samples: vec![0],
            marked: Bitvector::zeros(0),
            explicit: Vec::new(),
        };
        let m = n / b;
        for i in 1..=m {
            let lo = (idx.samples[i - 1] as usize).saturating_sub(b);
            let (len, _) = idx.search(i * b, lo, n + 1 - i * b)?;
            idx.samples.push(len as u32);
        }
        let mut marks = vec![false; m];
        for i in 1..=m {
            if idx.samples[i] as usize >= idx.samples[i - 1] as usize + b_prime - b {
                marks[i - 1] = true;
                let mut prev = idx.samples[i - 1] as usize;
                for j in (i - 1) * b + 1..=i * b {
                    let (len, _) = idx.search(j, prev.saturating_sub(1), n + 1 - j)?;
                    idx.explicit.push(len as u32);
                    prev = len;
                }
            }
        }
        idx.marked = Bitvector::from_bools(&marks);
        Ok(idx)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn minocc(&self) -> &'a MinOccIndex {
        self.minocc
    }

    /// (b, b').
    pub fn block_sizes(&self) -> (usize, usize) {
        (self.b, self.b_prime)
    }

    pub fn samples(&self) -> &[u32] {
        &self.samples
    }

    pub fn marked_blocks(&self) -> usize {
        self.marked.count_ones()
    }

    /// Text length without the sentinel.
    pub fn n(&self) -> usize {
        self.minocc.text().n()
    }

    /// Whether T[j..j+ℓ) has an earlier occurrence admitted by the variant;
    /// returns its leftmost occurrence.
    fn feasible(&self, j: usize, len: usize) -> Result<Option<usize>> {
        if len == 0 {
            return Ok(Some(0));
        }
        if j + len > self.n() + 1 {
            return Ok(None);
        }
        let pos = self.minocc.minocc_window(j, len)?;
        let ok = match self.variant {
            Variant::Overlapping => pos < j,
            Variant::NonOverlapping => pos + len <= j,
        };
        Ok(ok.then_some(pos))
    }

    /// Largest feasible ℓ in [lo..hi], given that lo is feasible.
    fn search(&self, j: usize, lo: usize, hi: usize) -> Result<(usize, usize)> {
        if hi < lo {
            return Err(Error::Contract(format!("empty LPF window [{lo}..{hi}] at {j}")));
        }
        let mut best = (lo, if lo == 0 { 0 } else { self.must(j, lo)? });
        // gallop up from lo, then bisect (best.0 feasible, bad infeasible)
        let mut step = 1;
        let mut bad = hi + 1;
        while best.0 < hi {
            let probe = (best.0 + step).min(hi);
            match self.feasible(j, probe)? {
                Some(src) => best = (probe, src),
                None => {
                    bad = probe;
                    break;
                }
            }
            step *= 2;
        }
        while bad - best.0 > 1 {
            let mid = best.0 + (bad - best.0) / 2;
            match self.feasible(j, mid)? {
                Some(src) => best = (mid, src),
                None => bad = mid,
            }
        }
        Ok(best)
    }

    fn must(&self, j: usize, len: usize) -> Result<usize> {
        self.minocc.minocc_window(j, len)
    }

    /// [ℓ_min..ℓ_max] for position j from the samples.
    fn bounds(&self, j: usize) -> (usize, usize) {
        let n = self.n();
        let b = self.b;
        let i = j.div_ceil(b);
        let m = self.samples.len() - 1;
        let tail = n + 1 - j;
        if i > m {
            let base = m * b;
            ((self.samples[m] as usize).saturating_sub(j - base), tail)
        } else {
            let lo = (self.samples[i - 1] as usize).saturating_sub(j - (i - 1) * b);
            let hi = (self.samples[i] as usize + i * b - j).min(tail);
            (lo, hi)
        }
    }

    /// LPF (or LPnF) at j with its leftmost source; `Literal(T[j])` when 0.
    pub fn lpf_at(&self, j: usize) -> Result<Phrase> {
        let n = self.n();
        if j == 0 || j > n {
            return Err(param(format!("position {j} outside [1..{n}]")));
        }
        let i = j.div_ceil(self.b);
        let len = if i < self.samples.len() && self.marked.get(i) {
            let r = self.marked.rank1(i - 1);
            self.explicit[r * self.b + (j - 1 - (i - 1) * self.b)] as usize
        } else {
            let (lo, hi) = self.bounds(j);
            return Ok(self.phrase(j, self.search(j, lo, hi)?));
        };
        let src = if len == 0 { 0 } else { self.must(j, len)? };
        Ok(self.phrase(j, (len, src)))
    }

    fn phrase(&self, j: usize, (len, src): (usize, usize)) -> Phrase {
        if len == 0 {
            Phrase::Literal(self.minocc.text().symbol(j))
        } else {
            Phrase::Copy { len, src }
        }
    }

    /// All values for j = 1..=n.
    pub fn lpf_array(&self) -> Result<Vec<usize>> {
        (1..=self.n()).map(|j| self.lpf_at(j).map(|p| p.copy_len())).collect()
    }
}
