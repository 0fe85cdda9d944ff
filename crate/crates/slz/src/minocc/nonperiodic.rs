//! Leftmost occurrences of τ-nonperiodic patterns.
//!
//! Samples are the synchronizing positions in suffix order. Sample s_i
//! carries the reversed context rev(T^∞[s_i−τ..s_i+2τ)); a query with
//! distinguishing prefix D = T[j..s+2τ) becomes a prefix RMQ for rev(D) over
//! the samples whose suffix starts with T[s..j+ℓ).

use std::cmp::Ordering;

use crate::bitpack::Bitvector;
use crate::error::{Error, Result};
use crate::prefix_rmq::{code_of, Layout, PrefixRmqIndex};
use crate::range_count::encode_padded;
use crate::sync_set::SyncSet;
use crate::text::{PackedSeq, PackedText, PatternRef};

#[derive(Clone, Debug)]
pub struct NonperiodicIndex {
    tau: usize,
    sync: SyncSet,
    samples: Vec<u32>,
    prmq: PrefixRmqIndex,
    /// Padded codes of all distinguishing prefixes, sorted.
    dist: Vec<u128>,
}

impl NonperiodicIndex {
    pub fn build(text: &PackedText, sync: SyncSet, r: &Bitvector, layout: Layout) -> Result<Self> {
        let tau = sync.tau();
        let sigma = text.sigma();
        let bits = text.bits();
        if 3 * tau * bits as usize > 128 {
            return Err(Error::Config(format!("3τ·{bits} bits per sample context exceed 128 (τ = {tau})")));
        }
        let n = text.n_total();
        let samples = sync.lex_sorted().to_vec();
        let codes: Vec<u128> = samples.iter().map(|&s| code_of(&context(text, s as usize, tau), bits)).collect();
        let values: Vec<u64> = samples.iter().map(|&s| s as u64).collect();
        let prmq = PrefixRmqIndex::from_codes(&values, &codes, sigma, 3 * tau, layout)?;
        let mut dist = Vec::new();
        let mut d = Vec::with_capacity(3 * tau);
        for j in (1..=(n + 2).saturating_sub(3 * tau)).filter(|&j| !r.get(j)) {
            let s = sync.successor(j)?;
            d.clear();
            d.extend((j..s + 2 * tau).map(|k| text.symbol(k)));
            dist.push(encode_padded(&d, 3 * tau - 1, sigma)?);
        }
        dist.sort_unstable();
        dist.dedup();
        Ok(NonperiodicIndex { tau, sync, samples, prmq, dist })
    }

    pub fn sync(&self) -> &SyncSet {
        &self.sync
    }

    /// Sample positions in suffix order.
    pub fn samples(&self) -> &[u32] {
        &self.samples
    }

    pub fn prefix_rmq(&self) -> &PrefixRmqIndex {
        &self.prmq
    }

    pub fn dist_prefix_count(&self) -> usize {
        self.dist.len()
    }

    /// D = T[j..succ(j)+2τ) for j outside R.
    pub fn dist_prefix_pos(&self, text: &PackedText, j: usize) -> Result<PackedSeq> {
        let s = self.sync.successor(j)?;
        Ok(text.substring(j, s + 2 * self.tau - j))
    }

    /// Offset δ = |D| − 2τ of the distinguishing prefix of an explicit
    /// pattern, if some prefix of it is a distinguishing prefix.
    fn dist_offset(&self, p: &PackedSeq, sigma: u32) -> Result<Option<usize>> {
        for delta in 0..self.tau {
            let len = delta + 2 * self.tau;
            if len > p.len() {
                break;
            }
            let d: Vec<u32> = (0..len).map(|k| p.get(k)).collect();
            if self.dist.binary_search(&encode_padded(&d, 3 * self.tau - 1, sigma)?).is_ok() {
                return Ok(Some(delta));
            }
        }
        Ok(None)
    }

    /// (b, e] over the samples whose suffix starts with the pattern minus its
    /// first `skip` symbols.
    pub fn suffix_range(&self, text: &PackedText, pat: PatternRef, skip: usize) -> (usize, usize) {
        let lo = self.samples.partition_point(|&s| pat.cmp_suffix(text, s as usize, skip) == Ordering::Less);
        let hi = lo
            + self.samples[lo..].partition_point(|&s| pat.cmp_suffix(text, s as usize, skip) == Ordering::Equal);
        (lo, hi)
    }

    /// Leftmost occurrence of a τ-nonperiodic pattern of length ≥ 3τ−1.
    ///
    /// A window must start outside R; an explicit pattern that matches no
    /// distinguishing prefix gives `NotFound`.
    pub fn minocc(&self, text: &PackedText, pat: PatternRef) -> Result<usize> {
        let (delta, d) = match pat {
            PatternRef::Window { j, .. } => {
                let s = self.sync.successor(j)?;
                (s - j, (j..s + 2 * self.tau).map(|k| text.symbol(k)).collect::<Vec<u32>>())
            }
            PatternRef::Explicit(p) => match self.dist_offset(p, text.sigma())? {
                Some(delta) => (delta, (0..delta + 2 * self.tau).map(|k| p.get(k)).collect()),
                None => return Err(Error::NotFound),
            },
        };
        let x: Vec<u32> = d.into_iter().rev().collect();
        let (b, e) = self.suffix_range(text, pat, delta);
        match self.prmq.query_at(b, e, &x) {
            Some(i) => Ok(self.samples[i - 1] as usize - delta),
            None if matches!(pat, PatternRef::Window { .. }) => {
                Err(Error::Contract(format!("no sample for a nonperiodic window (range ({b}..{e}])")))
            }
            None => Err(Error::NotFound),
        }
    }
}

/// rev(T^∞[s−τ..s+2τ)), positions wrapping cyclically.
fn context(text: &PackedText, s: usize, tau: usize) -> Vec<u32> {
    let n = text.n_total() as isize;
    (s as isize - tau as isize..(s + 2 * tau) as isize)
        .rev()
        .map(|q| text.symbol(((q - 1).rem_euclid(n) + 1) as usize))
        .collect()
}
