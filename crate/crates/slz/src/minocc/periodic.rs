//! Leftmost occurrences of τ-periodic patterns.
//!
//! A pattern whose run ends inside it is answered with a three-sided RMQ
//! over the runs sorted by the suffix at A_pos = e^full − |pow_τ(H)|. A
//! pattern lying entirely inside its run is answered from the B_min
//! bitvectors on its suffix-array range.

use std::cmp::Ordering;

use crate::bitpack::Bitvector;
use crate::error::{Error, Result};
use crate::sync_set::periodic_window;
use crate::text::{PackedSeq, PackedText, PatternRef, SuffixScaffold};
use crate::tsrmq::ThreeSidedRmq;

use super::bmin;

/// One maximal block of R(τ, T), starting at `start` ∈ R'.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub start: u32,
    /// e(start): first position breaking the period.
    pub end: u32,
    /// e^full = start + head + exp·period.
    pub end_full: u32,
    pub period: u32,
    pub head: u32,
    pub exp: u32,
    /// Text position of an occurrence of the Lyndon root.
    pub root_pos: u32,
    /// Dense id shared by runs with equal roots.
    pub root_id: u32,
    pub plus: bool,
}

impl Run {
    pub fn tail(&self) -> usize {
        (self.end - self.end_full) as usize
    }

    /// Exclusive end of the R-block: e − 3τ + 2.
    pub fn r_end(&self, tau: usize) -> usize {
        self.end as usize + 2 - 3 * tau
    }

    /// |pow_τ(H)| = p·⌈τ/p⌉.
    pub fn pow_len(&self, tau: usize) -> usize {
        let p = self.period as usize;
        p * tau.div_ceil(p)
    }
}

/// All runs in text order.
pub fn build_runs(text: &PackedText, tau: usize) -> Vec<Run> {
    let n = text.n_total();
    let w = 3 * tau - 1;
    let mut runs = Vec::new();
    if tau < 3 || w > n {
        return runs;
    }
    let mut j = 1;
    while j + w <= n + 1 {
        let Some(p) = (1..=tau / 3).find(|&p| text.has_period(j, w, p)) else {
            j += 1;
            continue;
        };
        let end = j + p + text.lce_at(j, j + p);
        let head = (0..p)
            .min_by(|&a, &b| cmp_windows(text, j + a, j + b, p))
            .expect("period ≥ 1");
        let exp = (end - j - head) / p;
        let end_full = j + head + exp * p;
        let plus = text.symbol(end) > text.symbol(end - p);
        runs.push(Run {
            start: j as u32,
            end: end as u32,
            end_full: end_full as u32,
            period: p as u32,
            head: head as u32,
            exp: exp as u32,
            root_pos: (j + head) as u32,
            root_id: 0,
            plus,
        });
        j = end + 2 - 3 * tau;
    }
    assign_root_ids(text, &mut runs);
    runs
}

fn cmp_windows(text: &PackedText, a: usize, b: usize, len: usize) -> Ordering {
    let l = text.lce_upto(a, b, len);
    if l == len {
        Ordering::Equal
    } else {
        text.symbol(a + l).cmp(&text.symbol(b + l))
    }
}

fn assign_root_ids(text: &PackedText, runs: &mut [Run]) {
    let key_cmp = |x: &Run, y: &Run| {
        x.period
            .cmp(&y.period)
            .then_with(|| cmp_windows(text, x.root_pos as usize, y.root_pos as usize, x.period as usize))
    };
    let mut order: Vec<usize> = (0..runs.len()).collect();
    order.sort_by(|&a, &b| key_cmp(&runs[a], &runs[b]));
    let mut id = 0u32;
    for w in 0..order.len() {
        if w > 0 && key_cmp(&runs[order[w - 1]], &runs[order[w]]) != Ordering::Equal {
            id += 1;
        }
        runs[order[w]].root_id = id;
    }
}

/// Run structure of a τ-periodic pattern (all positions 1-based within P).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub period: usize,
    pub head: usize,
    pub exp: usize,
    /// RunEndPat: 1 + p + lcp(P, P[1+p..]).
    pub run_end: usize,
    /// RunEndFullPat: 1 + head + exp·period.
    pub run_end_full: usize,
    pub plus: bool,
}

impl Shape {
    /// Shape of the pattern, or `None` if it is not τ-periodic.
    pub fn of(text: &PackedText, pat: PatternRef, tau: usize) -> Option<Shape> {
        let w = 3 * tau - 1;
        let m = pat.len();
        if m < w {
            return None;
        }
        match pat {
            PatternRef::Window { j, len } => {
                let p = (1..=tau / 3).find(|&p| text.has_period(j, w, p))?;
                let lcp = text.lce_upto(j, j + p, len - p);
                let head = (0..p).min_by(|&a, &b| cmp_windows(text, j + a, j + b, p)).unwrap();
                Some(Self::finish(p, head, lcp, m, |i| text.symbol(j + i - 1)))
            }
            PatternRef::Explicit(s) => {
                let p = (1..=tau / 3).find(|&p| PackedSeq::lce_upto(s, 0, s, p, w - p) >= w - p)?;
                let lcp = PackedSeq::lce_upto(s, 0, s, p, m - p);
                let head = (0..p)
                    .min_by(|&a, &b| (0..p).map(|k| s.get(a + k)).cmp((0..p).map(|k| s.get(b + k))))
                    .unwrap();
                Some(Self::finish(p, head, lcp, m, |i| s.get(i - 1)))
            }
        }
    }

    fn finish(p: usize, head: usize, lcp: usize, m: usize, sym: impl Fn(usize) -> u32) -> Shape {
        let run_end = 1 + p + lcp;
        let exp = (run_end - 1 - head) / p;
        let plus = run_end <= m && sym(run_end) > sym(run_end - p);
        Shape { period: p, head, exp, run_end, run_end_full: 1 + head + exp * p, plus }
    }

    /// The whole pattern lies inside its run.
    pub fn fully_periodic(&self, m: usize) -> bool {
        self.run_end == m + 1
    }
}

#[derive(Clone, Debug)]
struct SideIndex {
    /// A_pos in suffix order of T[A_pos..].
    a_pos: Vec<u32>,
    tsrmq: ThreeSidedRmq,
}

impl SideIndex {
    fn build(runs: &[Run], scaffold: &SuffixScaffold, tau: usize, plus: bool) -> Self {
        let mut rows: Vec<(u32, u32)> = runs
            .iter()
            .filter(|r| r.plus == plus)
            .map(|r| (r.end_full - r.pow_len(tau) as u32, r.start))
            .collect();
        rows.sort_unstable_by_key(|&(a, _)| scaffold.isa(a as usize));
        Self::from_rows(rows)
    }

    fn from_rows(rows: Vec<(u32, u32)>) -> Self {
        let a: Vec<u64> = rows.iter().map(|&(p, _)| p as u64).collect();
        let len: Vec<u64> = rows.iter().map(|&(p, s)| (p - s) as u64).collect();
        SideIndex { a_pos: rows.iter().map(|r| r.0).collect(), tsrmq: ThreeSidedRmq::new(a, len) }
    }
}

#[derive(Clone, Debug)]
pub struct PeriodicIndex {
    tau: usize,
    runs: Vec<Run>,
    sides: [SideIndex; 2],
    bmin: [Bitvector; 2],
}

impl PeriodicIndex {
    pub fn build(text: &PackedText, scaffold: &SuffixScaffold, tau: usize) -> Result<Self> {
        let runs = build_runs(text, tau);
        let bmin = bmin::build_bmin(text.n_total(), scaffold, &runs, tau)?;
        Ok(Self::assemble(scaffold, tau, runs, bmin))
    }

    /// Derived parts from stored runs and B_min words (needs the ISA).
    pub(crate) fn assemble(scaffold: &SuffixScaffold, tau: usize, runs: Vec<Run>, bmin: [Bitvector; 2]) -> Self {
        let sides = [SideIndex::build(&runs, scaffold, tau, false), SideIndex::build(&runs, scaffold, tau, true)];
        PeriodicIndex { tau, runs, sides, bmin }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// B_min− and B_min+.
    pub fn bmin(&self) -> &[Bitvector; 2] {
        &self.bmin
    }

    /// Leftmost occurrence of a τ-periodic pattern with the given shape.
    pub fn minocc(&self, text: &PackedText, scaffold: &SuffixScaffold, pat: PatternRef, shape: &Shape) -> Result<usize> {
        if shape.fully_periodic(pat.len()) {
            self.fully_periodic(text, scaffold, pat)
        } else {
            self.partially_periodic(text, pat, shape)
        }
    }

    /// Pattern whose run ends inside it: A_pos[tsrmq(b, e, δ)] − δ.
    pub fn partially_periodic(&self, text: &PackedText, pat: PatternRef, shape: &Shape) -> Result<usize> {
        let p = shape.period;
        let delta = (shape.run_end_full - 1) - p * self.tau.div_ceil(p);
        let side = &self.sides[shape.plus as usize];
        let lo = side.a_pos.partition_point(|&a| pat.cmp_suffix(text, a as usize, delta) == Ordering::Less);
        let hi =
            lo + side.a_pos[lo..].partition_point(|&a| pat.cmp_suffix(text, a as usize, delta) == Ordering::Equal);
        match side.tsrmq.query(lo, hi, delta as u64) {
            Some(i) => Ok(side.a_pos[i - 1] as usize - delta),
            None => Err(Error::NotFound),
        }
    }

    /// Pattern inside its run: first B_min− one and last B_min+ one in the
    /// pattern's SA range.
    pub fn fully_periodic(&self, text: &PackedText, scaffold: &SuffixScaffold, pat: PatternRef) -> Result<usize> {
        let (lo, hi) = scaffold.range(text, pat);
        let [minus, plus] = &self.bmin;
        let from_minus = minus.select1(minus.rank1(lo) + 1).ok().filter(|&k| k <= hi);
        let r = plus.rank1(hi);
        let from_plus = if r == 0 { None } else { plus.select1(r).ok().filter(|&k| k > lo) };
        [from_minus, from_plus]
            .into_iter()
            .flatten()
            .map(|k| scaffold.sa(k))
            .min()
            .ok_or(Error::NotFound)
    }
}

/// Whether T[j..j+3τ−1) is τ-periodic, for callers without an R bitvector.
pub fn window_is_periodic(text: &PackedText, j: usize, tau: usize) -> bool {
    periodic_window(text, j, 3 * tau - 1, tau / 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> PackedText {
        PackedText::new(&s.bytes().map(|c| (c - b'a') as u32).collect::<Vec<_>>(), 2, true).unwrap()
    }

    #[test]
    fn run_examples() {
        let runs = build_runs(&text("aaaaaaaab"), 3);
        assert_eq!(runs.len(), 1);
        let r = runs[0];
        assert_eq!((r.start, r.end, r.end_full, r.period, r.head, r.exp, r.tail()), (1, 9, 9, 1, 0, 8, 0));
        assert!(r.plus);
        let runs = build_runs(&text("bbbbbbbba"), 3);
        assert_eq!(runs.len(), 1);
        assert!(!runs[0].plus);
        assert!(build_runs(&text("abaabbab"), 3).is_empty());
    }

    #[test]
    fn shape_of_window() {
        let t = text(&format!("{}b", "aab".repeat(10)));
        let s = Shape::of(&t, PatternRef::Window { j: 1, len: 31 }, 9).unwrap();
        assert_eq!((s.period, s.head, s.run_end, s.exp), (3, 0, 31, 10));
        assert!(s.plus && !s.fully_periodic(31));
        assert!(Shape::of(&t, PatternRef::Window { j: 1, len: 30 }, 9).unwrap().fully_periodic(30));
        assert!(Shape::of(&t, PatternRef::Window { j: 1, len: 25 }, 9).is_none());
    }
}
