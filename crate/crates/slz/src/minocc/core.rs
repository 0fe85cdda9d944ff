//! Lookup tables for short patterns: leftmost occurrence of every pattern
//! shorter than 3τ−1 and the smallest period of every (3τ−1)-string.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::text::{smallest_period, PackedSeq, PackedText};

/// Largest table (in entries) stored as a flat array.
pub const TABLE_BUDGET: u128 = 1 << 22;

#[derive(Clone, Debug)]
pub(crate) enum MinoccTable {
    Flat(Vec<u32>),
    /// Sorted by key.
    Sparse(Vec<(u128, u32)>),
}

#[derive(Clone, Debug)]
pub struct CoreTables {
    tau: usize,
    sigma: u32,
    absent: u32,
    pows: Vec<u128>,
    table: MinoccTable,
    per_table: Option<Vec<u8>>,
}

impl CoreTables {
    pub fn build(text: &PackedText, tau: usize) -> Result<Self> {
        let mut core = Self::empty(text, tau)?;
        let n = text.n_total();
        let longest = 3 * tau - 2;
        let mut seen: HashSet<u128> = HashSet::new();
        let mut found: HashMap<u128, u32> = HashMap::new();
        let mut digits = Vec::with_capacity(longest);
        for j in 1..=n {
            let len = longest.min(n + 1 - j);
            digits.clear();
            digits.extend((0..len).map(|k| text.symbol(j + k)));
            // a full window seen before adds no new prefixes
            if len == longest && !seen.insert(core.key(&digits)) {
                continue;
            }
            for l in 1..=len {
                found.entry(core.key(&digits[..l])).or_insert(j as u32);
            }
        }
        core.table = match core.table {
            MinoccTable::Flat(mut v) => {
                for (k, j) in found {
                    v[k as usize] = j;
                }
                MinoccTable::Flat(v)
            }
            MinoccTable::Sparse(_) => {
                let mut v: Vec<(u128, u32)> = found.into_iter().collect();
                v.sort_unstable();
                MinoccTable::Sparse(v)
            }
        };
        Ok(core)
    }

    /// Tables with no entries; shape checks and the period table only.
    fn empty(text: &PackedText, tau: usize) -> Result<Self> {
        let sigma = text.sigma();
        if (6 * tau) as f64 * (sigma as f64).log2() >= 127.0 {
            return Err(Error::Config(format!("σ^(6τ) with σ = {sigma}, τ = {tau} exceeds 128-bit keys")));
        }
        let pows: Vec<u128> = (0..=6 * tau).map(|i| (sigma as u128).pow(i as u32)).collect();
        let table = if pows[6 * tau] <= TABLE_BUDGET {
            MinoccTable::Flat(vec![text.n_total() as u32 + 1; pows[6 * tau] as usize])
        } else {
            MinoccTable::Sparse(Vec::new())
        };
        let w = 3 * tau - 1;
        let per_table = ((sigma as u128).pow(w as u32) <= TABLE_BUDGET).then(|| {
            let size = (sigma as usize).pow(w as u32);
            (0..size)
                .map(|mut v| {
                    let mut x = vec![0u32; w];
                    for c in x.iter_mut().rev() {
                        *c = (v % sigma as usize) as u32;
                        v /= sigma as usize;
                    }
                    smallest_period(x.into_iter()).min(255) as u8
                })
                .collect()
        });
        Ok(CoreTables { tau, sigma, absent: text.n_total() as u32 + 1, pows, table, per_table })
    }

    pub(crate) fn from_parts(text: &PackedText, tau: usize, table: MinoccTable) -> Result<Self> {
        let mut core = Self::empty(text, tau)?;
        core.table = table;
        Ok(core)
    }

    pub(crate) fn table(&self) -> &MinoccTable {
        &self.table
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.table, MinoccTable::Flat(_))
    }

    /// Number of stored patterns.
    pub fn entries(&self) -> usize {
        match &self.table {
            MinoccTable::Flat(v) => v.iter().filter(|&&j| j != self.absent).count(),
            MinoccTable::Sparse(v) => v.len(),
        }
    }

    /// Padded code of P with m = 3τ: val(P)·σ^{6τ−|P|} + σ^{|P|} − 1.
    #[inline]
    fn key(&self, p: &[u32]) -> u128 {
        let v = p.iter().fold(0u128, |acc, &c| acc * self.sigma as u128 + c as u128);
        v * self.pows[6 * self.tau - p.len()] + self.pows[p.len()] - 1
    }

    fn lookup(&self, key: u128) -> Option<usize> {
        let j = match &self.table {
            MinoccTable::Flat(v) => v[key as usize],
            MinoccTable::Sparse(v) => v.binary_search_by_key(&key, |e| e.0).map_or(self.absent, |i| v[i].1),
        };
        (j != self.absent).then_some(j as usize)
    }

    /// Leftmost occurrence of a pattern with 0 < |P| < 3τ−1.
    pub fn minocc_pattern(&self, p: &[u32]) -> Result<usize> {
        if p.is_empty() || p.len() >= 3 * self.tau - 1 {
            return Err(Error::Precondition(format!("core pattern of length {} (τ = {})", p.len(), self.tau)));
        }
        if p.iter().any(|&c| c >= self.sigma) {
            return Err(Error::NotFound);
        }
        self.lookup(self.key(p)).ok_or(Error::NotFound)
    }

    /// Leftmost occurrence of T[j..j+ℓ) for 0 < ℓ < 3τ−1.
    pub fn minocc_window(&self, text: &PackedText, j: usize, len: usize) -> Result<usize> {
        let p: Vec<u32> = (0..len).map(|k| text.symbol(j + k)).collect();
        self.minocc_pattern(&p)
    }

    /// per(P[1..3τ−1]) ≤ τ/3 for |P| ≥ 3τ−1.
    pub fn is_periodic_pattern(&self, p: &PackedSeq) -> Result<bool> {
        let w = 3 * self.tau - 1;
        if p.len() < w {
            return Err(Error::Precondition(format!("pattern of length {} < 3τ−1", p.len())));
        }
        let per = match &self.per_table {
            Some(t) => {
                let idx = (0..w).fold(0usize, |acc, k| acc * self.sigma as usize + p.get(k) as usize);
                t[idx] as usize
            }
            None => smallest_period((0..w).map(|k| p.get(k))),
        };
        Ok(3 * per <= self.tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> PackedText {
        PackedText::new(&s.bytes().map(|c| (c - b'a') as u32).collect::<Vec<_>>(), 2, true).unwrap()
    }

    #[test]
    fn examples() {
        let t = text("abab");
        let core = CoreTables::build(&t, 1).unwrap();
        assert_eq!(core.minocc_pattern(&[0]).unwrap(), 1);
        assert_eq!(core.minocc_pattern(&[1]).unwrap(), 2);
        let core = CoreTables::build(&t, 2).unwrap();
        assert_eq!(core.minocc_window(&t, 3, 2).unwrap(), 1);
        assert_eq!(core.minocc_window(&t, 1, 1).unwrap(), 1);
        assert!(matches!(core.minocc_pattern(&[1, 1]), Err(Error::NotFound)));
        let a = text("aaaa");
        let core = CoreTables::build(&a, 2).unwrap();
        assert_eq!(core.minocc_window(&a, 2, 2).unwrap(), 1);
    }

    #[test]
    fn periodic_patterns() {
        let t = text("ab");
        let core = CoreTables::build(&t, 1).unwrap();
        let unary = PackedSeq::from_symbols(&[0; 8], 2);
        assert!(!core.is_periodic_pattern(&unary).unwrap());
        let t = PackedText::new(&[0; 20], 3, true).unwrap();
        let core = CoreTables::build(&t, 3).unwrap();
        assert!(core.is_periodic_pattern(&PackedSeq::from_symbols(&[0; 8], 2)).unwrap());
        let abc = PackedSeq::from_symbols(&[0, 1, 2, 0, 1, 2, 0, 1], 2);
        assert!(!core.is_periodic_pattern(&abc).unwrap());
    }
}
