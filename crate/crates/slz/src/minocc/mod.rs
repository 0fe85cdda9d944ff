//! Leftmost-occurrence index: min Occ(P, T) for windows and explicit patterns.
//!
//! Patterns shorter than 3τ−1 go to the lookup tables, τ-periodic ones to the
//! runs machinery, the rest to the synchronizing-set reduction. Small texts
//! and large alphabets get a plain suffix-array answerer instead.

pub mod bmin;
pub mod core;
pub mod nonperiodic;
pub mod periodic;

use std::time::{Duration, Instant};

use crate::bitpack::Bitvector;
use crate::error::{param, Error, Result};
use crate::prefix_rmq::Layout;
use crate::rmq::RmqIndex;
use crate::sync_set::{r_mask, SyncSet};
use crate::text::{PackedSeq, PackedText, PatternRef, SuffixScaffold};

use self::core::{CoreTables, TABLE_BUDGET};
use self::nonperiodic::NonperiodicIndex;
use self::periodic::{PeriodicIndex, Shape};

/// Texts shorter than this use the fallback answerer.
pub const N_MIN: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Overrides the τ rule.
    pub tau: Option<usize>,
    /// Builds the full index even outside its regime.
    pub force_full: bool,
    /// Uses the suffix-array answerer regardless of the regime; wins over
    /// `force_full`.
    pub force_fallback: bool,
    /// Keeps the inverse suffix array after construction.
    pub memory_relaxed: bool,
    pub layout: Layout,
}

impl Default for Config {
    fn default() -> Self {
        Config { tau: None, force_full: false, force_fallback: false, memory_relaxed: false, layout: Layout::Auto }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Full,
    Fallback,
}

#[derive(Clone, Debug)]
pub(crate) struct FullIndex {
    pub(crate) core: CoreTables,
    pub(crate) r: Bitvector,
    pub(crate) nonperiodic: NonperiodicIndex,
    pub(crate) periodic: PeriodicIndex,
}

#[derive(Clone, Debug)]
pub(crate) enum Engine {
    Fallback(RmqIndex),
    Full(Box<FullIndex>),
}

#[derive(Clone, Debug)]
pub struct MinOccIndex {
    text: PackedText,
    scaffold: SuffixScaffold,
    tau: usize,
    layout: Layout,
    engine: Engine,
    times: BuildTimes,
}

/// Wall time per construction step; zero for parts not built (or loaded).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BuildTimes {
    pub scaffold: Duration,
    pub core: Duration,
    pub nonperiodic: Duration,
    pub periodic: Duration,
}

/// Sizes of the built parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub core_entries: usize,
    pub core_flat: bool,
    pub sync_size: usize,
    pub sync_scrambled: bool,
    pub r_size: usize,
    pub runs: usize,
    pub dist_prefixes: usize,
    pub bmin_ones: [usize; 2],
}

/// τ = max(2, ⌊log_σ n / 8⌋), lowered until 3τ−1 ≤ n and σ^{6τ} fits the
/// table budget.
pub fn default_tau(n: usize, sigma: u32) -> usize {
    let logs = (n.max(2) as f64).ln() / (sigma as f64).ln();
    let mut tau = ((logs / 8.0).floor() as usize).max(2);
    while tau > 1 && (3 * tau - 1 > n || (sigma as f64).powi(6 * tau as i32) > TABLE_BUDGET as f64) {
        tau -= 1;
    }
    tau
}

/// Whether the full index is in its regime: σ < n^{1/7} and n ≥ N_MIN.
pub fn in_regime(n: usize, sigma: u32) -> bool {
    n >= N_MIN && (sigma as f64) < (n as f64).powf(1.0 / 7.0)
}

impl MinOccIndex {
    pub fn build(text: PackedText, config: Config) -> Result<Self> {
        if !text.has_sentinel() {
            return Err(Error::Precondition("text must end with the sentinel".into()));
        }
        let n = text.n_total();
        let clock = Instant::now();
        let mut scaffold = SuffixScaffold::build(&text)?;
        let mut times = BuildTimes { scaffold: clock.elapsed(), ..BuildTimes::default() };
        let full = !config.force_fallback && (config.force_full || in_regime(n, text.sigma()));
        let (tau, engine) = if full {
            let tau = match config.tau {
                Some(t) if t == 0 || 3 * t - 1 > n => {
                    return Err(param(format!("τ = {t} needs 1 ≤ τ and 3τ−1 ≤ n = {n}")))
                }
                Some(t) => t,
                None => default_tau(n, text.sigma()),
            };
            (tau, Engine::Full(Box::new(build_full(&text, &scaffold, tau, config.layout, &mut times)?)))
        } else {
            (0, fallback(&scaffold))
        };
        if !config.memory_relaxed {
            scaffold.strip_isa();
        }
        Ok(MinOccIndex { text, scaffold, tau, layout: config.layout, engine, times })
    }

    pub(crate) fn from_parts(text: PackedText, scaffold: SuffixScaffold, tau: usize, layout: Layout, engine: Engine) -> Self {
        MinOccIndex { text, scaffold, tau, layout, engine, times: BuildTimes::default() }
    }

    pub fn build_times(&self) -> BuildTimes {
        self.times
    }

    pub(crate) fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn text(&self) -> &PackedText {
        &self.text
    }

    pub fn scaffold(&self) -> &SuffixScaffold {
        &self.scaffold
    }

    /// τ of the full index; 0 in fallback mode.
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn mode(&self) -> Mode {
        match self.engine {
            Engine::Fallback(_) => Mode::Fallback,
            Engine::Full(_) => Mode::Full,
        }
    }

    pub fn stats(&self) -> Stats {
        let Engine::Full(f) = &self.engine else { return Stats::default() };
        let [m, p] = f.periodic.bmin();
        Stats {
            core_entries: f.core.entries(),
            core_flat: f.core.is_flat(),
            sync_size: f.nonperiodic.sync().len(),
            sync_scrambled: f.nonperiodic.sync().scrambled(),
            r_size: f.r.count_ones(),
            runs: f.periodic.runs().len(),
            dist_prefixes: f.nonperiodic.dist_prefix_count(),
            bmin_ones: [m.count_ones(), p.count_ones()],
        }
    }

    /// The periodic part (None in fallback mode).
    pub fn periodic(&self) -> Option<&PeriodicIndex> {
        match &self.engine {
            Engine::Full(f) => Some(&f.periodic),
            Engine::Fallback(_) => None,
        }
    }

    pub fn nonperiodic(&self) -> Option<&NonperiodicIndex> {
        match &self.engine {
            Engine::Full(f) => Some(&f.nonperiodic),
            Engine::Fallback(_) => None,
        }
    }

    pub fn core(&self) -> Option<&CoreTables> {
        match &self.engine {
            Engine::Full(f) => Some(&f.core),
            Engine::Fallback(_) => None,
        }
    }

    /// min Occ(T[j..j+ℓ), T); requires 1 ≤ j, ℓ ≥ 1, j+ℓ ≤ n_total+1.
    pub fn minocc_window(&self, j: usize, len: usize) -> Result<usize> {
        let n = self.text.n_total();
        if j == 0 || len == 0 || j + len > n + 1 {
            return Err(param(format!("window ({j}, {len}) outside the text of length {n}")));
        }
        let pat = PatternRef::Window { j, len };
        let pos = match &self.engine {
            Engine::Fallback(rmq) => self.fallback_query(rmq, pat)?,
            Engine::Full(f) => match self.full_query(f, pat) {
                Err(Error::NotFound) => {
                    return Err(Error::Contract(format!("window ({j}, {len}) not found")));
                }
                r => r?,
            },
        };
        if pos > j || self.text.lce_upto(pos, j, len) < len {
            return Err(Error::Contract(format!("answer {pos} for window ({j}, {len}) is not an occurrence")));
        }
        Ok(pos)
    }

    /// min Occ(P, T); `NotFound` if P does not occur.
    pub fn minocc_pattern(&self, p: &[u32]) -> Result<usize> {
        if p.iter().any(|&c| c >= self.text.sigma()) {
            return Err(Error::NotFound);
        }
        self.minocc_packed(&PackedSeq::from_symbols(p, self.text.bits()))
    }

    /// As [`MinOccIndex::minocc_pattern`] for a pattern packed with the
    /// text's symbol width.
    pub fn minocc_packed(&self, p: &PackedSeq) -> Result<usize> {
        if p.is_empty() {
            return Err(Error::Precondition("empty pattern".into()));
        }
        if p.bits() != self.text.bits() {
            return Err(param(format!("pattern packed at {} bits, text at {}", p.bits(), self.text.bits())));
        }
        let n = self.text.n_total();
        if p.len() > n {
            return Err(Error::NotFound);
        }
        let pat = PatternRef::Explicit(p);
        let pos = match &self.engine {
            Engine::Fallback(rmq) => self.fallback_query(rmq, pat)?,
            Engine::Full(f) => self.full_query(f, pat)?,
        };
        let len = p.len();
        let ok = pos + len <= n + 1 && PackedSeq::lce_upto(self.text.seq(), pos - 1, p, 0, len) == len;
        if ok {
            Ok(pos)
        } else {
            Err(Error::NotFound)
        }
    }

    fn fallback_query(&self, rmq: &RmqIndex, pat: PatternRef) -> Result<usize> {
        let (b, e) = self.scaffold.range(&self.text, pat);
        if b >= e {
            return Err(Error::NotFound);
        }
        Ok(rmq.value(rmq.query(b, e)?) as usize)
    }

    fn full_query(&self, f: &FullIndex, pat: PatternRef) -> Result<usize> {
        let tau = self.tau;
        let len = pat.len();
        if len < 3 * tau - 1 {
            return match pat {
                PatternRef::Window { j, len } => f.core.minocc_window(&self.text, j, len),
                PatternRef::Explicit(p) => f.core.minocc_pattern(&p.to_vec()),
            };
        }
        let periodic = match pat {
            PatternRef::Window { j, .. } => f.r.get(j),
            PatternRef::Explicit(p) => f.core.is_periodic_pattern(p)?,
        };
        if periodic {
            let shape = Shape::of(&self.text, pat, tau)
                .ok_or_else(|| Error::Contract("periodic pattern without a run shape".into()))?;
            f.periodic.minocc(&self.text, &self.scaffold, pat, &shape)
        } else {
            f.nonperiodic.minocc(&self.text, pat)
        }
    }
}

fn fallback(scaffold: &SuffixScaffold) -> Engine {
    Engine::Fallback(RmqIndex::new(scaffold.sa_array().iter().map(|&p| p as u64).collect()))
}

fn build_full(text: &PackedText, scaffold: &SuffixScaffold, tau: usize, layout: Layout, times: &mut BuildTimes) -> Result<FullIndex> {
    let clock = Instant::now();
    let core = CoreTables::build(text, tau)?;
    times.core = clock.elapsed();
    let clock = Instant::now();
    let r = r_mask(text, tau);
    let periodic = PeriodicIndex::build(text, scaffold, tau)?;
    times.periodic = clock.elapsed();
    let clock = Instant::now();
    let sync = SyncSet::build(text, scaffold, tau)?;
    let nonperiodic = NonperiodicIndex::build(text, sync, &r, layout)?;
    times.nonperiodic = clock.elapsed();
    Ok(FullIndex { core, r, nonperiodic, periodic })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index(s: &str, sigma: u32, tau: Option<usize>) -> MinOccIndex {
        let sym: Vec<u32> = s.bytes().map(|c| (c - b'a') as u32).collect();
        let text = PackedText::new(&sym, sigma, true).unwrap();
        MinOccIndex::build(text, Config { tau, force_full: true, ..Config::default() }).unwrap()
    }

    #[test]
    fn examples() {
        let idx = index("abab", 2, Some(1));
        assert_eq!(idx.minocc_window(3, 2).unwrap(), 1);
        assert_eq!(idx.minocc_window(1, 4).unwrap(), 1);
        assert!(matches!(idx.minocc_window(4, 3), Err(Error::Parameter(_))));
        assert!(matches!(idx.minocc_pattern(&[1, 1]), Err(Error::NotFound)));
        assert_eq!(idx.minocc_pattern(&[1, 0, 1]).unwrap(), 2);
    }

    #[test]
    fn regime() {
        let sym = vec![3u32; 40];
        let text = PackedText::new(&sym, 16, true).unwrap();
        let idx = MinOccIndex::build(text, Config::default()).unwrap();
        assert_eq!(idx.mode(), Mode::Fallback);
        assert_eq!(idx.minocc_window(5, 10).unwrap(), 1);
        assert_eq!(default_tau(100_000, 3), 2);
    }

    #[test]
    fn unary_periodic() {
        let idx = index(&"a".repeat(60), 2, Some(6));
        for j in 1..=60 {
            for len in 1..=61 - j {
                assert_eq!(idx.minocc_window(j, len).unwrap(), 1, "({j},{len})");
            }
        }
        assert_eq!(idx.minocc_pattern(&[0; 30]).unwrap(), 1);
    }
}
