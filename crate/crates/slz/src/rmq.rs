//! Range-minimum structures with leftmost tie-breaking.
//!
//! Queries use half-open 0-based ranges `(b..e]`, i.e. they cover the
//! 1-based positions `b+1..=e`, and return a 1-based index.

use crate::error::{Error, Result};
use crate::text::{bits_for, PackedSeq};

const BLOCK: usize = 64;

fn empty_range(b: usize, e: usize) -> Error {
    Error::Parameter(format!("empty or invalid range ({b}..{e}]"))
}

/// Sparse table over block minima, entries `(value, index)`.
#[derive(Clone, Debug, Default)]
struct SparseTable {
    levels: Vec<Vec<(u64, u32)>>,
}

impl SparseTable {
    fn new(base: Vec<(u64, u32)>) -> Self {
        let mut levels = vec![base];
        let mut k = 1;
        while 2 * k <= levels[0].len() {
            let prev = levels.last().unwrap();
            let next: Vec<(u64, u32)> = (0..prev.len() - k).map(|i| prev[i].min(prev[i + k])).collect();
            levels.push(next);
            k *= 2;
        }
        SparseTable { levels }
    }

    /// Minimum over blocks `[l..=r]`.
    fn query(&self, l: usize, r: usize) -> (u64, u32) {
        let k = (usize::BITS - 1 - (r - l + 1).leading_zeros()) as usize;
        self.levels[k][l].min(self.levels[k][r + 1 - (1 << k)])
    }
}

/// RMQ over a plain integer array: 64-element blocks answered with
/// per-position stack masks, plus a sparse table over block minima.
#[derive(Clone, Debug, Default)]
pub struct RmqIndex {
    values: Vec<u64>,
    masks: Vec<u64>,
    table: SparseTable,
}

impl RmqIndex {
    pub fn new(values: Vec<u64>) -> Self {
        let m = values.len();
        let mut masks = vec![0u64; m];
        let mut mins = Vec::with_capacity(m.div_ceil(BLOCK));
        for start in (0..m).step_by(BLOCK) {
            let end = (start + BLOCK).min(m);
            let mut stack: u64 = 0;
            for i in start..end {
                // pop strictly greater values so equal ones stay (leftmost wins)
                while stack != 0 {
                    let top = 63 - stack.leading_zeros() as usize;
                    if values[start + top] > values[i] {
                        stack ^= 1 << top;
                    } else {
                        break;
                    }
                }
                stack |= 1 << (i - start);
                masks[i] = stack;
            }
            let k = start + masks[end - 1].trailing_zeros() as usize;
            mins.push((values[k], k as u32));
        }
        RmqIndex { values, masks, table: SparseTable::new(mins) }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> u64 {
        self.values[i - 1]
    }

    /// Leftmost argmin in `(b..e]`.
    pub fn query(&self, b: usize, e: usize) -> Result<usize> {
        if b >= e || e > self.values.len() {
            return Err(empty_range(b, e));
        }
        Ok(self.query_at(b, e))
    }

    /// Unchecked query; requires `b < e ≤ m`.
    #[inline]
    pub fn query_at(&self, b: usize, e: usize) -> usize {
        let (l, r) = (b, e - 1);
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.in_block(l, r) + 1;
        }
        let mut best = self.in_block(l, bl * BLOCK + BLOCK - 1);
        if bl + 1 < br {
            let (_, k) = self.table.query(bl + 1, br - 1);
            if self.values[k as usize] < self.values[best] {
                best = k as usize;
            }
        }
        let right = self.in_block(br * BLOCK, r);
        if self.values[right] < self.values[best] {
            best = right;
        }
        best + 1
    }

    #[inline]
    fn in_block(&self, l: usize, r: usize) -> usize {
        let start = l - l % BLOCK;
        let m = self.masks[r] & (u64::MAX << (l - start));
        start + m.trailing_zeros() as usize
    }
}

/// Systematic RMQ over a packed small-alphabet array.
///
/// Blocks of `τ_blk = ⌊log m / (2 log σ)⌋` elements are encoded as the
/// push/pop sequence of their min-stack. In-block queries replay the encoding
/// (or read a universal table when it is small) without touching the array;
/// a cross-block query compares at most three candidates.
#[derive(Clone, Debug)]
pub struct PackedRmqIndex {
    values: PackedSeq,
    tau: usize,
    codes: Vec<u64>,
    block_argmin: Vec<u32>,
    middle: RmqIndex,
    table: Option<Vec<u8>>,
}

const TABLE_BUDGET: usize = 1 << 20;

impl PackedRmqIndex {
    /// Builds over `values` (each `< sigma`).
    pub fn new(values: &[u64], sigma: u64) -> Self {
        let bits = bits_for(sigma.max(2));
        let syms: Vec<u32> = values.iter().map(|&v| v as u32).collect();
        Self::from_packed(PackedSeq::from_symbols(&syms, bits), sigma)
    }

    pub fn from_packed(values: PackedSeq, sigma: u64) -> Self {
        let m = values.len();
        let logm = if m <= 2 { 1.0 } else { (m as f64).log2() };
        let logs = (sigma.max(2) as f64).log2();
        let tau = ((logm / (2.0 * logs)).floor() as usize).clamp(1, 32);
        let nblocks = m.div_ceil(tau);
        let mut codes = Vec::with_capacity(nblocks);
        let mut block_argmin = Vec::with_capacity(nblocks);
        let mut mins = Vec::with_capacity(nblocks);
        for blk in 0..nblocks {
            let start = blk * tau;
            let end = (start + tau).min(m);
            let mut code = 0u64;
            let mut nbits = 0;
            let mut stack: Vec<u64> = Vec::with_capacity(tau);
            for i in start..end {
                let v = values.get(i) as u64;
                while stack.last().is_some_and(|&top| top > v) {
                    stack.pop();
                    nbits += 1; // pop = 0 bit
                }
                stack.push(v);
                code |= 1 << nbits; // push = 1 bit
                nbits += 1;
            }
            // close the sequence so every full block has exactly 2τ bits
            nbits += stack.len();
            debug_assert!(nbits <= 64);
            codes.push(code);
            let k = start + decode_min(code, tau, 0, end - start - 1);
            block_argmin.push(k as u32);
            mins.push(values.get(k) as u64);
        }
        let table = if 2 * tau <= 20 && (tau * tau) << (2 * tau) <= TABLE_BUDGET {
            let mut t = vec![0u8; (1usize << (2 * tau)) * tau * tau];
            for code in 0..1u64 << (2 * tau) {
                if !valid_code(code, tau) {
                    continue;
                }
                for l in 0..tau {
                    for r in l..tau {
                        t[((code as usize * tau) + l) * tau + r] = decode_min(code, tau, l, r) as u8;
                    }
                }
            }
            Some(t)
        } else {
            None
        };
        PackedRmqIndex { values, tau, codes, block_argmin, middle: RmqIndex::new(mins), table }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() == 0
    }

    pub fn block_size(&self) -> usize {
        self.tau
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn query(&self, b: usize, e: usize) -> Result<usize> {
        self.query_with_reads(b, e).map(|(i, _)| i)
    }

    /// Leftmost argmin in `(b..e]` and the number of array elements read.
    pub fn query_with_reads(&self, b: usize, e: usize) -> Result<(usize, usize)> {
        if b >= e || e > self.values.len() {
            return Err(empty_range(b, e));
        }
        let (l, r) = (b, e - 1);
        let (bl, br) = (l / self.tau, r / self.tau);
        if bl == br {
            return Ok((self.in_block(bl, l - bl * self.tau, r - bl * self.tau) + 1, 0));
        }
        let mut reads = 0;
        let mut read = |i: usize| {
            reads += 1;
            self.values.get(i) as u64
        };
        let left = self.in_block(bl, l - bl * self.tau, self.tau - 1);
        let mut best = (read(left), left);
        if bl + 1 < br {
            let k = self.middle.query_at(bl + 1, br) - 1;
            let pos = self.block_argmin[k] as usize;
            let v = read(pos);
            if v < best.0 {
                best = (v, pos);
            }
        }
        let right = self.in_block(br, 0, r - br * self.tau);
        let v = read(right);
        if v < best.0 {
            best = (v, right);
        }
        Ok((best.1 + 1, reads))
    }

    fn in_block(&self, blk: usize, l: usize, r: usize) -> usize {
        let code = self.codes[blk];
        let off = match &self.table {
            Some(t) if (blk + 1) * self.tau <= self.values.len() => t[((code as usize * self.tau) + l) * self.tau + r] as usize,
            _ => decode_min(code, self.tau, l, r),
        };
        blk * self.tau + off
    }
}

/// Replays a push/pop code up to the (r+1)-th push and returns the lowest
/// stack element at or after `l`.
fn decode_min(code: u64, tau: usize, l: usize, r: usize) -> usize {
    let mut stack = 0u64;
    let mut pushed = 0;
    let mut bit = 0;
    while pushed <= r {
        if (code >> bit) & 1 == 1 {
            stack |= 1 << pushed;
            pushed += 1;
        } else {
            let top = 63 - stack.leading_zeros();
            stack ^= 1 << top;
        }
        bit += 1;
        debug_assert!(bit <= 2 * tau);
    }
    (stack & (u64::MAX << l)).trailing_zeros() as usize
}

/// Whether `code` is a well-formed 2τ-bit sequence of τ pushes and τ pops.
fn valid_code(code: u64, tau: usize) -> bool {
    let mut depth = 0i32;
    let mut pushes = 0;
    for bit in 0..2 * tau {
        if (code >> bit) & 1 == 1 {
            depth += 1;
            pushes += 1;
        } else {
            depth -= 1;
            if depth < 0 {
                return false;
            }
        }
    }
    pushes == tau && depth == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmq_examples() {
        let r = RmqIndex::new(vec![3, 1, 2]);
        assert_eq!(r.query(0, 3).unwrap(), 2);
        assert_eq!(RmqIndex::new(vec![5]).query(0, 1).unwrap(), 1);
        assert_eq!(RmqIndex::new(vec![2, 2, 2]).query(0, 3).unwrap(), 1);
        let r = RmqIndex::new(vec![4, 4, 1, 9]);
        assert_eq!(r.query(1, 4).unwrap(), 3);
        assert_eq!(r.query(2, 3).unwrap(), 3);
        assert!(r.query(2, 2).is_err());
    }

    #[test]
    fn packed_examples() {
        let a: Vec<u64> = (0..100).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect();
        let p = PackedRmqIndex::new(&a, 2);
        assert_eq!(p.query(0, 100).unwrap(), 2);
        let p = PackedRmqIndex::new(&[3, 1, 2], 4);
        assert_eq!(p.query(0, 3).unwrap(), 2);
        let p = PackedRmqIndex::new(&[], 2);
        assert!(p.query(0, 0).is_err());
    }
}
