//! e_min per run and the B_min± bitvectors.
//!
//! For one root H and one side, the R positions with head s (T[j..] starts
//! with the length-s suffix of H, then whole copies of H) occupy a contiguous
//! SA block. Inside it, positions are ordered by exponent k (ascending on the
//! − side, descending on the + side) and, within one exponent, by the rank of
//! T[e^full..] of their run. The block for head 0 is assembled by sweeping k;
//! the block for head s+1 follows from the one for s by a few deletions and
//! insertions per run.

use std::collections::BTreeMap;

use crate::bitpack::Bitvector;
use crate::dyn_rmq::NarrowRangeMax;
use crate::error::{Error, Result};
use crate::text::SuffixScaffold;

use super::periodic::Run;

/// e_min for every run (same order as `runs`).
pub fn emin_all(runs: &[Run], tau: usize) -> Result<Vec<u32>> {
    let mut out = vec![0u32; runs.len()];
    for group in groups(runs) {
        let members: Vec<Run> = group.iter().map(|&i| runs[i]).collect();
        for (&i, e) in group.iter().zip(compute_emin(&members, tau)?) {
            out[i] = e as u32;
        }
    }
    Ok(out)
}

/// Run indices grouped by (root, side), text order inside each group.
fn groups(runs: &[Run]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..runs.len()).collect();
    order.sort_by_key(|&i| (runs[i].root_id, runs[i].plus, runs[i].start));
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for i in order {
        let key = (runs[i].root_id, runs[i].plus);
        if last != Some(key) {
            out.push(Vec::new());
            last = Some(key);
        }
        out.last_mut().unwrap().push(i);
    }
    out
}

/// e_min for runs sharing root and side, given in text order.
///
/// Position a+x is a first occurrence unless an earlier run of the group
/// covers it: one with tail ≥ ours and ℓ^pos ≥ pos − x, or any one with
/// ℓ^pos − p ≥ pos − x. Within the run, a+x repeats a+x−p.
pub fn compute_emin(runs: &[Run], tau: usize) -> Result<Vec<usize>> {
    let Some(first) = runs.first() else { return Ok(Vec::new()) };
    let p = first.period as usize;
    let mut nrm = NarrowRangeMax::new(p);
    let mut trim = 0usize;
    let mut out = Vec::with_capacity(runs.len());
    for r in runs {
        if r.period as usize != p {
            return Err(Error::Contract("runs of one root with different periods".into()));
        }
        let a = r.start as usize;
        let pos = r.end_full as usize - a;
        let mx = trim.max(nrm.query(r.tail()) as usize);
        let slack = r.r_end(tau) - a;
        let len = if pos <= mx { 0 } else { (pos - mx).min(p).min(slack) };
        out.push(a + len);
        trim = trim.max(pos.saturating_sub(p));
        nrm.insert(r.tail(), pos as u64)?;
    }
    Ok(out)
}

/// B_min− and B_min+ by direct marking of [a..e_min) through the ISA.
pub fn build_bmin_direct(n: usize, scaffold: &SuffixScaffold, runs: &[Run], tau: usize) -> Result<[Bitvector; 2]> {
    let emin = emin_all(runs, tau)?;
    let mut bits = [vec![false; n], vec![false; n]];
    for (r, &e) in runs.iter().zip(&emin) {
        for j in r.start as usize..e as usize {
            bits[r.plus as usize][scaffold.isa(j) - 1] = true;
        }
    }
    Ok(bits.map(|b| Bitvector::from_bools(&b)))
}

/// Positions [u..v) of one run sharing a B_min bit.
#[derive(Clone, Copy, Debug)]
struct Segment {
    u: usize,
    v: usize,
    bit: bool,
    end_full: usize,
}

impl Segment {
    fn head(&self, j: usize, p: usize) -> usize {
        (self.end_full - j) % p
    }

    fn exp(&self, j: usize, p: usize) -> usize {
        (self.end_full - j) / p
    }

    /// (largest, smallest) member with head s.
    fn members(&self, s: usize, p: usize) -> Option<(usize, usize)> {
        let last = self.v - 1;
        let hi = last.checked_sub((s + p - self.head(last, p)) % p)?;
        if hi < self.u {
            return None;
        }
        let lo = self.u + (self.head(self.u, p) + p - s) % p;
        Some((hi, lo))
    }
}

/// B_min− and B_min+ via the head/exponent sweep.
pub fn build_bmin(n: usize, scaffold: &SuffixScaffold, runs: &[Run], tau: usize) -> Result<[Bitvector; 2]> {
    let emin = emin_all(runs, tau)?;
    let mut bits = [vec![false; n], vec![false; n]];
    for group in groups(runs) {
        let first = runs[group[0]];
        let p = first.period as usize;
        let mut segs = Vec::with_capacity(2 * group.len());
        for &i in &group {
            let r = runs[i];
            let (a, m, e) = (r.start as usize, emin[i] as usize, r.r_end(tau));
            let end_full = r.end_full as usize;
            if a < m {
                segs.push(Segment { u: a, v: m, bit: true, end_full });
            }
            if m < e {
                segs.push(Segment { u: m, v: e, bit: false, end_full });
            }
        }
        Sweep { scaffold, segs: &segs, p, plus: first.plus }.run(&mut bits[first.plus as usize])?;
    }
    Ok(bits.map(|b| Bitvector::from_bools(&b)))
}

struct Sweep<'a> {
    scaffold: &'a SuffixScaffold,
    segs: &'a [Segment],
    p: usize,
    plus: bool,
}

fn local(isa: usize, x: usize) -> Result<usize> {
    match isa.checked_sub(x) {
        Some(i) if i > 0 => Ok(i),
        _ => Err(Error::Contract(format!("rank {isa} outside its B_min block starting after {x}"))),
    }
}

fn sorted_pairs(mut v: Vec<(usize, bool)>) -> Vec<(usize, bool)> {
    v.sort_unstable_by_key(|e| e.0);
    v
}

impl Sweep<'_> {
    fn count(&self, s: usize) -> usize {
        self.segs.iter().filter_map(|g| g.members(s, self.p)).map(|(hi, lo)| (hi - lo) / self.p + 1).sum()
    }

    /// Block start − 1 for head s, if the head has members.
    fn block_start(&self, s: usize) -> Option<usize> {
        let p = self.p;
        let ends: Vec<(usize, usize)> = self
            .segs
            .iter()
            .filter_map(|g| g.members(s, p).map(|(hi, lo)| if self.plus { (g.exp(lo, p), lo) } else { (g.exp(hi, p), hi) }))
            .collect();
        let k0 = if self.plus { ends.iter().map(|e| e.0).max()? } else { ends.iter().map(|e| e.0).min()? };
        ends.iter().filter(|e| e.0 == k0).map(|e| self.scaffold.isa(e.1)).min().map(|r| r - 1)
    }

    fn run(&self, out: &mut [bool]) -> Result<()> {
        let mut cur = self.head_zero()?;
        for s in 0..self.p {
            if s > 0 {
                cur = self.step(s - 1, &cur)?;
            }
            if cur.len() != self.count(s) {
                return Err(Error::Contract(format!("B_min block for head {s} has {} bits, expected {}", cur.len(), self.count(s))));
            }
            if let Some(x) = self.block_start(s) {
                for i in (1..=cur.rank1(cur.len())).map(|r| cur.select1(r)) {
                    out[x + i? - 1] = true;
                }
            }
        }
        Ok(())
    }

    /// Head-0 block by sweeping the exponent.
    fn head_zero(&self) -> Result<Bitvector> {
        let p = self.p;
        let Some(x0) = self.block_start(0) else { return Ok(Bitvector::zeros(0)) };
        let total = self.count(0);
        let mut ins: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
        let mut del: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for g in self.segs {
            if let Some((hi, lo)) = g.members(0, p) {
                ins.entry(g.exp(hi, p)).or_default().push((self.scaffold.isa(hi), g.bit));
                del.entry(g.exp(lo, p) + 1).or_default().push(self.scaffold.isa(lo));
                del.entry(g.exp(hi, p)).or_default();
            }
        }
        // class k starts after x0 + before (−) or x0 + total − before − size (+)
        let offset = |before: usize, size: usize| if self.plus { x0 + total - before - size } else { x0 + before };
        let mut parts = Vec::new();
        let mut cur = Bitvector::zeros(0);
        let mut before = 0usize;
        let mut prev: Option<usize> = None;
        for (&k, dels) in &del {
            if let Some(pk) = prev {
                parts.push(cur.repeat(k - pk));
                before += (k - pk) * cur.len();
            }
            if !dels.is_empty() {
                let x = offset(before - cur.len(), cur.len());
                let mut pos = dels.iter().map(|&r| local(r, x)).collect::<Result<Vec<_>>>()?;
                pos.sort_unstable();
                cur = cur.delete_positions(&pos)?;
            }
            if let Some(add) = ins.get(&k) {
                let x = offset(before, cur.len() + add.len());
                let pairs = add.iter().map(|&(r, c)| Ok((local(r, x)?, c))).collect::<Result<Vec<_>>>()?;
                cur = cur.insert_pairs(&sorted_pairs(pairs))?;
            }
            prev = Some(k);
        }
        if !cur.is_empty() {
            return Err(Error::Contract("exponent sweep ended with a nonempty class".into()));
        }
        if self.plus {
            parts.reverse();
        }
        let block = Bitvector::concat(&parts);
        if block.len() != total {
            return Err(Error::Contract(format!("head-0 block has {} bits, expected {total}", block.len())));
        }
        Ok(block)
    }

    /// Block for head s+1 from the block for head s.
    fn step(&self, s: usize, cur: &Bitvector) -> Result<Bitvector> {
        let p = self.p;
        let mut dels = Vec::new();
        let mut adds = Vec::new();
        for g in self.segs {
            if g.head(g.u, p) == s {
                dels.push(self.scaffold.isa(g.u));
            }
            if g.head(g.v - 1, p) == s + 1 {
                adds.push((self.scaffold.isa(g.v - 1), g.bit));
            }
        }
        let mut next = cur.clone();
        if !dels.is_empty() {
            let x = self.block_start(s).ok_or_else(|| Error::Contract(format!("deletion from empty head {s}")))?;
            let mut pos = dels.iter().map(|&r| local(r, x)).collect::<Result<Vec<_>>>()?;
            pos.sort_unstable();
            next = next.delete_positions(&pos)?;
        }
        if !adds.is_empty() {
            let x = self.block_start(s + 1).ok_or_else(|| Error::Contract(format!("insertion into empty head {}", s + 1)))?;
            let pairs = adds.iter().map(|&(r, c)| Ok((local(r, x)?, c))).collect::<Result<Vec<_>>>()?;
            next = next.insert_pairs(&sorted_pairs(pairs))?;
        }
        Ok(next)
    }
}
