//! Padded integer encoding of short strings and offline range counting.

use crate::bitpack::{BitBuilder, Bitvector};
use crate::error::{param, Result};

/// Level granularity of the counting engine (one machine word).
pub const Y: u64 = 64;

/// Base-σ value of `X · 0^{2m−2|X|} · c^{|X|}` with `c = σ − 1`.
///
/// Order-preserving: X ≺ X' (with proper prefixes first) implies a smaller
/// code.
pub fn encode_padded(x: &[u32], m: usize, sigma: u32) -> Result<u128> {
    if x.len() > m {
        return Err(param(format!("string of length {} exceeds m = {m}", x.len())));
    }
    let s = sigma as u128;
    if (2 * m) as f64 * (sigma as f64).log2() >= 128.0 {
        return Err(param(format!("σ^(2m) with σ = {sigma}, m = {m} overflows 128 bits")));
    }
    let mut v: u128 = 0;
    for &c in x {
        v = v * s + c as u128;
    }
    for _ in 0..2 * m - 2 * x.len() {
        v *= s;
    }
    for _ in 0..x.len() {
        v = v * s + (s - 1);
    }
    Ok(v)
}

/// Level decomposition of an array: P_k holds the positions with A ≥ k·y and
/// B'_k = B_{ky} ⋯ B_{ky+y−1} marks, per threshold, which of them qualify.
#[derive(Clone, Debug)]
pub struct Levels {
    positions: Vec<Vec<u32>>,
    packs: Vec<Bitvector>,
}

impl Levels {
    pub fn new(a: &[u64]) -> Self {
        let m = a.len();
        let mut positions: Vec<Vec<u32>> = vec![(1..=m as u32).collect()];
        loop {
            let k = positions.len() as u64;
            let next: Vec<u32> =
                positions.last().unwrap().iter().copied().filter(|&p| a[p as usize - 1] >= k * Y).collect();
            if next.is_empty() {
                break;
            }
            positions.push(next);
        }
        let packs = positions
            .iter()
            .enumerate()
            .map(|(k, pk)| level_pack(a, pk, k as u64))
            .collect();
        Levels { positions, packs }
    }

    /// Largest k with a nonempty level (levels exist for k ≤ k_max).
    pub fn k_max(&self) -> usize {
        self.positions.len() - 1
    }

    /// Σ_k m_k.
    pub fn total_size(&self) -> usize {
        self.positions.iter().map(Vec::len).sum()
    }

    /// {j : A[j] ≥ v} read back from the level bitvectors.
    pub fn members(&self, v: u64) -> Vec<usize> {
        let k = (v / Y) as usize;
        if k >= self.positions.len() {
            return vec![];
        }
        let d = (v % Y) as usize;
        let pk = &self.positions[k];
        let mk = pk.len();
        (1..=mk).filter(|&i| self.packs[k].get(d * mk + i)).map(|i| pk[i - 1] as usize).collect()
    }
}

/// Builds B'_k from the marker vector C' with successor scans and doubling.
fn level_pack(a: &[u64], pk: &[u32], k: u64) -> Bitvector {
    let mk = pk.len();
    let y = Y as usize;
    // C' = C_1 ⋯ C_{y−1}; C_{δ+1}[i] = 1 iff A[P_k[i]] = ky + δ
    let mut cmark = vec![0u64; ((y - 1) * mk).div_ceil(64)];
    for (i, &p) in pk.iter().enumerate() {
        let v = a[p as usize - 1];
        if v < (k + 1) * Y {
            let d = (v % Y) as usize;
            if d + 1 < y {
                let t = d * mk + i;
                cmark[t >> 6] |= 1 << (t & 63);
            }
        }
    }
    let cprime = Bitvector::from_words(cmark, (y - 1) * mk);
    let mut out = BitBuilder::with_capacity(y * mk);
    let mut cur = Bitvector::from_words(vec![u64::MAX; mk.div_ceil(64)], mk);
    let mut delta = 0;
    while delta < y {
        let b = delta * mk;
        let e = if mk == 0 { cprime.len() + 1 } else { cprime.succ_one_at(b, cprime.len()) };
        let next = if mk == 0 || e > cprime.len() { y } else { e.div_ceil(mk) };
        let rep = cur.repeat(next - delta);
        out.extend_from(&rep, 0, rep.len());
        if next < y {
            // clear the positions whose value is exactly ky + next − 1
            let mut words = cur.words().to_vec();
            let (lo, hi) = ((next - 1) * mk, next * mk);
            let mut t = cprime.succ_one_at(lo, hi);
            while t <= hi {
                let j = t - lo - 1;
                words[j >> 6] &= !(1 << (j & 63));
                t = cprime.succ_one_at(t, hi);
            }
            cur = Bitvector::from_words(words, mk);
        }
        delta = next;
    }
    out.finish()
}

/// A_ans[i] = |{j ∈ (0..pos_i] : A[j] ≥ val_i}| for a batch of queries in any
/// order.
pub fn count_two_sided(a: &[u64], queries: &[(usize, u64)]) -> Result<Vec<usize>> {
    let m = a.len();
    if let Some(&(p, _)) = queries.iter().find(|q| q.0 > m) {
        return Err(param(format!("query position {p} outside [0..{m}]")));
    }
    let levels = Levels::new(a);
    Ok(answer_two_sided(&levels, queries))
}

fn answer_two_sided(levels: &Levels, queries: &[(usize, u64)]) -> Vec<usize> {
    let q = queries.len();
    let mut ans = vec![0usize; q];
    // bucket by level, each bucket sorted by position (counting sort)
    let nlev = levels.positions.len();
    let maxpos = queries.iter().map(|x| x.0).max().unwrap_or(0);
    let mut by_pos: Vec<Vec<u32>> = vec![Vec::new(); maxpos + 1];
    for (i, &(p, _)) in queries.iter().enumerate() {
        by_pos[p].push(i as u32);
    }
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); nlev];
    for ids in &by_pos {
        for &i in ids {
            let k = (queries[i as usize].1 / Y) as usize;
            // values at or beyond y·(k_max+1) have no qualifying element
            if k < nlev {
                buckets[k].push(i);
            }
        }
    }
    for (k, bucket) in buckets.iter().enumerate() {
        let pk = &levels.positions[k];
        let mk = pk.len();
        let pack = &levels.packs[k];
        let mut c = 0;
        for &i in bucket {
            let (pos, val) = queries[i as usize];
            while c < mk && pk[c] as usize <= pos {
                c += 1;
            }
            let d = (val % Y) as usize;
            ans[i as usize] = pack.rank1(d * mk + c) - pack.rank1(d * mk);
        }
    }
    ans
}

/// A_ans[i] = |{j ∈ (beg_i..end_i] : A[j] ≥ val_i}|, as the difference of two
/// two-sided batches; empty ranges give 0.
pub fn count_three_sided(a: &[u64], queries: &[(usize, usize, u64)]) -> Result<Vec<usize>> {
    let m = a.len();
    if let Some(q) = queries.iter().find(|q| q.0 > m || q.1 > m) {
        return Err(param(format!("query range ({}..{}] outside [0..{m}]", q.0, q.1)));
    }
    let levels = Levels::new(a);
    let ends: Vec<(usize, u64)> = queries.iter().map(|&(_, e, v)| (e, v)).collect();
    let begs: Vec<(usize, u64)> = queries.iter().map(|&(b, _, v)| (b, v)).collect();
    let hi = answer_two_sided(&levels, &ends);
    let lo = answer_two_sided(&levels, &begs);
    Ok(queries
        .iter()
        .zip(hi.iter().zip(&lo))
        .map(|(q, (&h, &l))| if q.0 >= q.1 { 0 } else { h - l })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        assert_eq!(encode_padded(&[1], 2, 2).unwrap(), 0b1001);
        assert_eq!(encode_padded(&[], 2, 2).unwrap(), 0);
        assert_eq!(encode_padded(&[0], 2, 2).unwrap(), 1);
        assert_eq!(encode_padded(&[0, 0], 2, 2).unwrap(), 3);
        assert!(encode_padded(&[0, 0, 0], 2, 2).is_err());
    }

    #[test]
    fn counting_examples() {
        let a = [3, 0, 2, 1];
        assert_eq!(count_two_sided(&a, &[(3, 2), (0, 5), (4, 0)]).unwrap(), vec![2, 0, 4]);
        assert_eq!(count_three_sided(&a, &[(1, 4, 1), (2, 2, 0), (0, 4, 0)]).unwrap(), vec![2, 0, 4]);
    }

    #[test]
    fn large_values_use_higher_levels() {
        let a = [200, 64, 63, 0, 130];
        let got = count_two_sided(&a, &[(5, 64), (5, 65), (5, 130), (5, 131), (5, 201), (5, 1000)]).unwrap();
        assert_eq!(got, vec![3, 2, 2, 1, 0, 0]);
    }
}
