//! Definitional checks for the τ-run machinery.
//!
//! The text passed here is the indexed text, sentinel included.

use super::period;

/// Which side of the runs a position belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// Naive facts about one position of R(τ, T).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RPos {
    pub j: usize,
    pub p: usize,
    pub end: usize,
    pub side: Side,
}

/// R(τ,T) membership for 1-based positions (index 0 unused).
pub fn r_mask(t: &[u32], tau: usize) -> Vec<bool> {
    let n = t.len();
    let w = 3 * tau - 1;
    let mut mask = vec![false; n + 1];
    if w > n {
        return mask;
    }
    for j in 1..=n + 1 - w {
        mask[j] = 3 * period(&t[j - 1..j - 1 + w]) <= tau;
    }
    mask
}

/// Every position of R with its period, run end and side.
///
/// The run end comes from the maximal block of consecutive R positions, not
/// from an LCE computation.
pub fn r_positions(t: &[u32], tau: usize) -> Vec<RPos> {
    let mask = r_mask(t, tau);
    let n = t.len();
    let mut out = Vec::new();
    let mut j = 1;
    while j <= n {
        if !mask[j] {
            j += 1;
            continue;
        }
        let mut b = j;
        while b < n && mask[b + 1] {
            b += 1;
        }
        let end = b + 3 * tau - 1;
        for i in j..=b {
            let p = period(&t[i - 1..i - 1 + 3 * tau - 1]);
            let side = if t[end - 1] > t[end - 1 - p] { Side::Plus } else { Side::Minus };
            out.push(RPos { j: i, p, end, side });
        }
        j = b + 1;
    }
    out
}

/// All pairwise longest common prefixes, 0-based.
pub struct LcpMatrix {
    n: usize,
    v: Vec<u32>,
}

impl LcpMatrix {
    pub fn new(t: &[u32]) -> Self {
        let n = t.len();
        let mut v = vec![0u32; (n + 1) * (n + 1)];
        for i in (0..n).rev() {
            for j in (0..n).rev() {
                if t[i] == t[j] {
                    v[i * (n + 1) + j] = v[(i + 1) * (n + 1) + j + 1] + 1;
                }
            }
        }
        LcpMatrix { n, v }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.v[i * (self.n + 1) + j] as usize
    }
}

/// RMin±: positions j of the given side with j = min(Occ(T[j..e(j))) ∩ R±).
pub fn rmin(t: &[u32], tau: usize, side: Side) -> Vec<usize> {
    let lcp = LcpMatrix::new(t);
    let rs: Vec<RPos> = r_positions(t, tau).into_iter().filter(|r| r.side == side).collect();
    let mut out = Vec::new();
    for r in &rs {
        let len = r.end - r.j;
        let first = rs
            .iter()
            .find(|o| lcp.get(o.j - 1, r.j - 1) >= len)
            .expect("j occurs at itself");
        if first.j == r.j {
            out.push(r.j);
        }
    }
    out
}

/// B_min± in suffix-array order: bit i set iff SA[i] ∈ RMin±.
pub fn bmin(t: &[u32], tau: usize, side: Side) -> Vec<bool> {
    let sa = super::suffix_array(t);
    let mut inset = vec![false; t.len() + 1];
    for j in rmin(t, tau, side) {
        inset[j] = true;
    }
    sa.iter().map(|&j| inset[j]).collect()
}

/// Lexicographically minimal rotation of `s` and the smallest offset where it
/// starts.
pub fn min_rotation(s: &[u32]) -> (Vec<u32>, usize) {
    let p = s.len();
    let mut best: Option<(Vec<u32>, usize)> = None;
    for t in 0..p {
        let rot: Vec<u32> = s[t..].iter().chain(&s[..t]).copied().collect();
        if best.as_ref().map_or(true, |(b, _)| rot < *b) {
            best = Some((rot, t));
        }
    }
    best.unwrap()
}
