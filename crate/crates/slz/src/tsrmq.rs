//! Three-sided RMQ: leftmost argmin of A[i] over i ∈ (b..e] with B[i] ≥ v.
//!
//! Level k keeps the positions with B ≥ k·y. A level is cut into micro-blocks
//! of x elements, stored as rank-space digits of A and clipped digits of B;
//! levels with at least y elements also keep, for every threshold of the
//! level, the minima of y-element superblocks with an RMQ over them.

use crate::rmq::RmqIndex;

#[derive(Clone, Debug)]
struct Level {
    /// P_k, 1-based positions into A and B.
    pos: Vec<u32>,
    /// A_k in rank space within each micro-block.
    a_rank: Vec<u8>,
    /// min(y − 1, B_k − ky).
    b_clip: Vec<u8>,
    /// Per δ ∈ [0..y): M^val RMQ and M^pos (level-local, 1-based; 0 = empty).
    supers: Vec<(RmqIndex, Vec<u32>)>,
}

#[derive(Clone, Debug)]
pub struct ThreeSidedRmq {
    a: Vec<u64>,
    b: Vec<u64>,
    y: u64,
    x: usize,
    levels: Vec<Level>,
}

/// Level parameters for an array of length m: 4 ≤ x < y.
pub fn params(m: usize) -> (u64, usize) {
    let logm = if m < 2 { 1 } else { usize::BITS - 1 - m.leading_zeros() } as u64;
    let y = logm.max(5);
    let x = ((y as f64 / (y as f64).log2()).floor() as usize).clamp(4, y as usize - 1);
    (y, x)
}

impl ThreeSidedRmq {
    pub fn new(a: Vec<u64>, b: Vec<u64>) -> Self {
        assert_eq!(a.len(), b.len());
        let m = a.len();
        let (y, x) = params(m);
        let a_inf = a.iter().max().map_or(1, |&v| v + 1);
        let mut levels = Vec::new();
        let mut cur: Vec<u32> = (1..=m as u32).collect();
        let mut k = 0u64;
        while !cur.is_empty() {
            levels.push(Self::build_level(&a, &b, &cur, k, y, x, a_inf));
            k += 1;
            cur.retain(|&p| b[p as usize - 1] >= k * y);
        }
        ThreeSidedRmq { a, b, y, x, levels }
    }

    fn build_level(a: &[u64], b: &[u64], pos: &[u32], k: u64, y: u64, x: usize, a_inf: u64) -> Level {
        let mk = pos.len();
        let av = |i: usize| a[pos[i] as usize - 1];
        let mut a_rank = vec![0u8; mk];
        for start in (0..mk).step_by(x) {
            let end = (start + x).min(mk);
            for i in start..end {
                a_rank[i] = (start..end).filter(|&j| av(j) < av(i)).count() as u8;
            }
        }
        let b_clip: Vec<u8> =
            pos.iter().map(|&p| (b[p as usize - 1] - k * y).min(y - 1) as u8).collect();
        let yu = y as usize;
        let mut supers = Vec::new();
        if mk >= yu {
            let nsup = mk / yu;
            let mut vals = vec![vec![a_inf; nsup]; yu];
            let mut poss = vec![vec![0u32; nsup]; yu];
            for s in 0..nsup {
                let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); yu];
                for i in s * yu..(s + 1) * yu {
                    buckets[b_clip[i] as usize].push(i);
                }
                let mut best: Option<usize> = None;
                for d in (0..yu).rev() {
                    for &i in &buckets[d] {
                        if best.map_or(true, |j| av(i) < av(j) || (av(i) == av(j) && i < j)) {
                            best = Some(i);
                        }
                    }
                    if let Some(j) = best {
                        vals[d][s] = av(j);
                        poss[d][s] = j as u32 + 1;
                    }
                }
            }
            supers = vals.into_iter().zip(poss).map(|(v, p)| (RmqIndex::new(v), p)).collect();
        }
        Level { pos: pos.to_vec(), a_rank, b_clip, supers }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// (y, x) used by this instance.
    pub fn granularity(&self) -> (u64, usize) {
        (self.y, self.x)
    }

    /// m_k for every level k.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.pos.len()).collect()
    }

    /// Whether the bounded-sum promise max A, ΣB ≤ c·m log m holds (c = 4).
    pub fn promise_holds(&self) -> bool {
        let m = self.a.len().max(2) as f64;
        let bound = 4.0 * m * m.log2();
        let sum_b: u64 = self.b.iter().sum();
        (sum_b as f64) <= bound && self.a.iter().all(|&v| (v as f64) <= bound)
    }

    /// Leftmost argmin of A over (b..e] restricted to B ≥ v; 1-based.
    pub fn query(&self, b: usize, e: usize, v: u64) -> Option<usize> {
        let e = e.min(self.a.len());
        if b >= e {
            return None;
        }
        let k = (v / self.y) as usize;
        let lvl = self.levels.get(k)?;
        let d = (v % self.y) as usize;
        let bl = lvl.pos.partition_point(|&p| p as usize <= b);
        let el = lvl.pos.partition_point(|&p| p as usize <= e);
        self.level_query(lvl, bl, el, d).map(|i| lvl.pos[i - 1] as usize)
    }

    fn a_at(&self, lvl: &Level, i: usize) -> u64 {
        self.a[lvl.pos[i - 1] as usize - 1]
    }

    /// Keeps the leftmost minimum of candidates given in increasing order.
    fn pick(&self, lvl: &Level, cands: impl IntoIterator<Item = Option<usize>>) -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in cands.into_iter().flatten() {
            if best.map_or(true, |j| self.a_at(lvl, c) < self.a_at(lvl, j)) {
                best = Some(c);
            }
        }
        best
    }

    fn level_query(&self, lvl: &Level, b: usize, e: usize, d: usize) -> Option<usize> {
        if b >= e {
            return None;
        }
        let y = self.y as usize;
        if e - b < y {
            return self.micro_range(lvl, b, e, d);
        }
        let i = b.div_ceil(y);
        let j = e / y;
        let left = self.micro_range(lvl, b, i * y, d);
        let mid = self.super_range(lvl, i, j, d);
        let right = self.micro_range(lvl, j * y, e, d);
        self.pick(lvl, [left, mid, right])
    }

    fn super_range(&self, lvl: &Level, i: usize, j: usize, d: usize) -> Option<usize> {
        if i >= j {
            return None;
        }
        let (rmq, pos) = &lvl.supers[d];
        let p = rmq.query_at(i, j);
        match pos[p - 1] {
            0 => None,
            q => Some(q as usize),
        }
    }

    /// Splits (b..e] into micro-blocks and scans their digit vectors.
    fn micro_range(&self, lvl: &Level, b: usize, e: usize, d: usize) -> Option<usize> {
        let mut cands = Vec::new();
        let mut s = b;
        while s < e {
            let blk_end = (s / self.x + 1) * self.x;
            let t = blk_end.min(e);
            cands.push(self.micro_block(lvl, s, t, d));
            s = t;
        }
        self.pick(lvl, cands)
    }

    /// In-block answer from rank-space digits only.
    fn micro_block(&self, lvl: &Level, b: usize, e: usize, d: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in b..e {
            if lvl.b_clip[i] as usize >= d && best.map_or(true, |j| lvl.a_rank[i] < lvl.a_rank[j]) {
                best = Some(i);
            }
        }
        best.map(|i| i + 1)
    }
}
