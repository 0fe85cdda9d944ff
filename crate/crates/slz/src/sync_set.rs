//! τ-synchronizing sets and the R(τ, T) membership test.
//!
//! Every τ-window T[k..k+τ) gets an identifier: its rank among distinct
//! τ-windows, or ∞ when per(T[k..k+τ)) ≤ τ/3. Position j joins S when the
//! minimum identifier over [j..j+τ] is finite and attained at j or j+τ.
//! Membership then depends only on T[j..j+2τ), and density follows from the
//! window minimum. If lexicographic identifiers give a set larger than 8n/τ,
//! the ranks are scrambled with a bijective mixer and the set is rebuilt.

use crate::bitpack::Bitvector;
use crate::error::{param, Error, Result};
use crate::text::{PackedText, SuffixScaffold};

const INF: u32 = u32::MAX;
const SIZE_FACTOR: usize = 8;

/// Whether j ∈ R(τ, T): j ≤ n−3τ+2 and per(T[j..j+3τ−1)) ≤ τ/3.
pub fn in_r(text: &PackedText, tau: usize, j: usize) -> Result<bool> {
    let n = text.n_total();
    if tau == 0 || 3 * tau - 1 > n || j == 0 || j + 3 * tau - 2 > n {
        return Err(param(format!("position {j} outside the R domain for τ = {tau}, n = {n}")));
    }
    Ok(periodic_window(text, j, 3 * tau - 1, tau / 3))
}

/// per(T[j..j+len)) ≤ max_p.
#[inline]
pub(crate) fn periodic_window(text: &PackedText, j: usize, len: usize, max_p: usize) -> bool {
    (1..=max_p.min(len.saturating_sub(1))).any(|p| text.has_period(j, len, p))
}

/// R(τ, T) as a bitvector over [1..n].
pub fn r_mask(text: &PackedText, tau: usize) -> Bitvector {
    let n = text.n_total();
    let w = 3 * tau - 1;
    let mut bits = vec![false; n];
    if tau >= 3 && w <= n {
        for (j, b) in bits.iter_mut().enumerate().take(n + 1 - w) {
            *b = periodic_window(text, j + 1, w, tau / 3);
        }
    }
    Bitvector::from_bools(&bits)
}

/// A τ-synchronizing set with its lexicographic order.
#[derive(Clone, Debug)]
pub struct SyncSet {
    tau: usize,
    positions: Vec<u32>,
    member: Bitvector,
    lex: Vec<u32>,
    scrambled: bool,
}

impl SyncSet {
    pub fn build(text: &PackedText, scaffold: &SuffixScaffold, tau: usize) -> Result<Self> {
        let n = text.n_total();
        if tau == 0 || 3 * tau - 1 > n {
            return Err(param(format!("τ = {tau} needs 1 ≤ τ and 3τ−1 ≤ n = {n}")));
        }
        let ranks = window_ranks(text, scaffold, tau);
        let limit = SIZE_FACTOR * n / tau;
        let mut positions = select_positions(&ranks, tau, n);
        let mut scrambled = false;
        let mut seed = 0u32;
        while positions.len() > limit && seed < 8 {
            seed += 1;
            let mixed: Vec<u32> = ranks.iter().map(|&r| if r == INF { INF } else { mix(r, seed) }).collect();
            let cand = select_positions(&mixed, tau, n);
            if cand.len() < positions.len() {
                positions = cand;
                scrambled = true;
            }
        }
        let mut member = vec![false; n];
        for &p in &positions {
            member[p as usize - 1] = true;
        }
        let member = Bitvector::from_bools(&member);
        let mut lex = positions.clone();
        lex.sort_unstable_by_key(|&p| scaffold.isa(p as usize));
        let set = SyncSet { tau, positions, member, lex, scrambled };
        set.verify(text, scaffold)?;
        Ok(set)
    }

    /// Rebuilds from stored positions; the order and membership are derived.
    pub(crate) fn from_positions(
        n: usize,
        tau: usize,
        positions: Vec<u32>,
        scaffold: &SuffixScaffold,
        scrambled: bool,
    ) -> Self {
        let mut member = vec![false; n];
        for &p in &positions {
            member[p as usize - 1] = true;
        }
        let mut lex = positions.clone();
        lex.sort_unstable_by_key(|&p| scaffold.isa(p as usize));
        SyncSet { tau, positions, member: Bitvector::from_bools(&member), lex, scrambled }
    }

    /// Density, consistency and the max S bound; aborts construction on any
    /// failure.
    fn verify(&self, text: &PackedText, scaffold: &SuffixScaffold) -> Result<()> {
        let n = text.n_total();
        let tau = self.tau;
        let r = r_mask(text, tau);
        for j in 1..=n + 2 - 3 * tau {
            let hit = self.member.rank1(j + tau - 1) > self.member.rank1(j - 1);
            if hit == r.get(j) {
                return Err(Error::Contract(format!(
                    "synchronizing set density fails at j = {j} (τ = {tau}, in R: {})",
                    r.get(j)
                )));
            }
        }
        match self.positions.last() {
            Some(&m) if m as usize + 3 * tau >= n + 2 => {}
            last => {
                return Err(Error::Contract(format!("max S = {last:?} below n − 3τ + 2 (n = {n}, τ = {tau})")))
            }
        }
        // equal 2τ-windows are contiguous in SA order
        let mut prev: Option<(usize, bool)> = None;
        for &p in scaffold.sa_array() {
            let p = p as usize;
            if p + 2 * tau > n + 1 {
                prev = None;
                continue;
            }
            let m = self.member.get(p);
            if let Some((q, mq)) = prev {
                if text.lce_upto(p, q, 2 * tau) == 2 * tau && m != mq {
                    return Err(Error::Contract(format!("synchronizing set inconsistent at {q} and {p}")));
                }
            }
            prev = Some((p, m));
        }
        Ok(())
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Sorted positions.
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn contains(&self, j: usize) -> bool {
        j >= 1 && j <= self.member.len() && self.member.get(j)
    }

    /// Whether the identifiers were scrambled to meet the size bound.
    pub fn scrambled(&self) -> bool {
        self.scrambled
    }

    /// min{s ∈ S : s ≥ j}; must lie within τ of j.
    pub fn successor(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.member.len() {
            return Err(Error::Contract(format!("successor query at {j} outside the text")));
        }
        let r = self.member.rank1(j - 1);
        match self.member.select1(r + 1) {
            Ok(s) if s - j < self.tau => Ok(s),
            _ => Err(Error::Contract(format!("no synchronizing position within τ of {j}"))),
        }
    }

    /// S ordered by suffix rank.
    pub fn lex_sorted(&self) -> &[u32] {
        &self.lex
    }
}

/// Rank of each τ-window among distinct τ-windows (0-based array indexed by
/// position − 1), ∞ for windows with period ≤ τ/3 and for k > n − τ + 1.
fn window_ranks(text: &PackedText, scaffold: &SuffixScaffold, tau: usize) -> Vec<u32> {
    let n = text.n_total();
    let mut ranks = vec![INF; n];
    let mut rank = 0u32;
    let mut prev: Option<usize> = None;
    for &p in scaffold.sa_array() {
        let p = p as usize;
        if p + tau > n + 1 {
            continue;
        }
        if let Some(q) = prev {
            if text.lce_upto(p, q, tau) < tau {
                rank += 1;
            }
        }
        prev = Some(p);
        if !periodic_window(text, p, tau, tau / 3) {
            ranks[p - 1] = rank;
        }
    }
    ranks
}

/// j ∈ S iff the minimum over ids[j..j+τ] is finite and attained at an end.
fn select_positions(ids: &[u32], tau: usize, n: usize) -> Vec<u32> {
    let last = n + 1 - 2 * tau;
    let mut out = Vec::new();
    let mut dq: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    let push = |dq: &mut std::collections::VecDeque<usize>, k: usize| {
        while dq.back().is_some_and(|&b| ids[b - 1] >= ids[k - 1]) {
            dq.pop_back();
        }
        dq.push_back(k);
    };
    for k in 1..=tau.min(n) {
        push(&mut dq, k);
    }
    for j in 1..=last {
        push(&mut dq, j + tau);
        while dq.front().is_some_and(|&f| f < j) {
            dq.pop_front();
        }
        let m = ids[*dq.front().unwrap() - 1];
        if m != INF && (ids[j - 1] == m || ids[j + tau - 1] == m) {
            out.push(j as u32);
        }
    }
    out
}

/// Bijective 32-bit mixer (xorshift-multiply rounds, seeded).
fn mix(x: u32, seed: u32) -> u32 {
    let mut h = x ^ seed.wrapping_mul(0x9e37_79b9);
    h ^= h >> 16;
    h = h.wrapping_mul(0x85eb_ca6b);
    h ^= h >> 13;
    h = h.wrapping_mul(0xc2b2_ae35);
    h ^= h >> 16;
    // INF stays reserved
    if h == INF {
        0x7fff_ffff
    } else {
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> PackedText {
        let sym: Vec<u32> = s.bytes().map(|c| (c - b'a') as u32).collect();
        PackedText::new(&sym, 3, true).unwrap()
    }

    #[test]
    fn in_r_examples() {
        let t = text("aaaaaaaab");
        assert!(in_r(&t, 3, 1).unwrap());
        assert!(!in_r(&t, 3, 3).unwrap());
        assert!(in_r(&t, 4, 1).is_err());
    }

    #[test]
    fn successor_and_order() {
        let t = text("abaabbabbbaab");
        let sa = SuffixScaffold::build(&t).unwrap();
        let s = SyncSet::build(&t, &sa, 2).unwrap();
        for &p in s.positions() {
            assert_eq!(s.successor(p as usize).unwrap(), p as usize);
        }
        assert!(s.lex_sorted().windows(2).all(|w| sa.isa(w[0] as usize) < sa.isa(w[1] as usize)));
        assert!(SyncSet::build(&t, &sa, 6).is_err());
    }
}
