//! Prefix range-minimum queries: given values A and fixed-length strings S,
//! return the leftmost argmin of A[i] over i ∈ (b..e] such that X is a prefix
//! of S[i].
//!
//! Three layer designs answer the query for a given (A, S):
//! - simple: one RMQ per prefix length over the strings grouped by prefix;
//! - shallow: blocks of σ^ℓ·⌈log m⌉ elements with per-prefix block minima and
//!   small in-block packed RMQs;
//! - combined: layers at prefix lengths that are multiples of α, each holding
//!   a shallow (or simple) instance per prefix Y over rank-reduced values and
//!   the next α characters.

mod rank_select;

use std::collections::HashMap;

pub use rank_select::{code_of, PrefixRankSelect, Projected, RankSelect};

use crate::error::{param, Result};
use crate::rmq::{PackedRmqIndex, RmqIndex};
use crate::text::bits_for;

const INF: u64 = u64::MAX;

/// Sorted distinct prefix codes of one grouping and where each group starts.
#[derive(Clone, Debug, Default)]
struct Groups {
    codes: Vec<u128>,
    offsets: Vec<u32>,
}

impl Groups {
    /// Stable order of `keys` by key, plus the group table.
    fn build(keys: &[u128]) -> (Vec<usize>, Groups) {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by_key(|&i| keys[i]);
        let mut g = Groups::default();
        for (r, &i) in order.iter().enumerate() {
            if g.codes.last() != Some(&keys[i]) {
                g.codes.push(keys[i]);
                g.offsets.push(r as u32);
            }
        }
        (order, g)
    }

    fn offset(&self, code: u128) -> Option<usize> {
        self.codes.binary_search(&code).ok().map(|k| self.offsets[k] as usize)
    }
}

/// Ranks of `values` with ties broken by position, so the leftmost minimum
/// keeps the smallest rank.
pub fn rank_reduce(values: &[u64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| (values[i], i));
    let mut out = vec![0u64; values.len()];
    for (r, &i) in order.iter().enumerate() {
        out[i] = r as u64;
    }
    out
}

fn top(code: u128, ell: usize, k: usize, bits: u32) -> u128 {
    if k == 0 {
        0
    } else {
        code >> ((ell - k) * bits as usize)
    }
}

fn pick(values: &[u64], cands: impl IntoIterator<Item = Option<usize>>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for c in cands.into_iter().flatten() {
        if best.map_or(true, |b| values[c - 1] < values[b - 1]) {
            best = Some(c);
        }
    }
    best
}

/// One RMQ per prefix length over the strings stably grouped by prefix.
#[derive(Clone, Debug)]
pub struct SimpleLayer {
    ell: usize,
    bits: u32,
    per_k: Vec<(Groups, RmqIndex)>,
}

impl SimpleLayer {
    pub fn new(values: &[u64], codes: &[u128], ell: usize, bits: u32) -> Self {
        let per_k = (0..=ell)
            .map(|k| {
                let keys: Vec<u128> = codes.iter().map(|&c| top(c, ell, k, bits)).collect();
                let (order, groups) = Groups::build(&keys);
                let arranged: Vec<u64> = order.iter().map(|&i| values[i]).collect();
                (groups, RmqIndex::new(arranged))
            })
            .collect();
        SimpleLayer { ell, bits, per_k }
    }

    pub fn query(&self, rs: &impl RankSelect, b: usize, e: usize, x: &[u32]) -> Option<usize> {
        if b >= e || x.len() > self.ell {
            return None;
        }
        let (rb, re) = (rs.rank(b, x), rs.rank(e, x));
        if rb == re {
            return None;
        }
        let (groups, rmq) = &self.per_k[x.len()];
        let g = groups.offset(code_of(x, self.bits))?;
        let p = rmq.query_at(g + rb, g + re);
        Some(rs.select(p - g, x))
    }
}

#[derive(Clone, Debug)]
struct ShallowBlock {
    per_k: Vec<(Groups, PackedRmqIndex)>,
}

/// Block decomposition: per-prefix block minima with an RMQ over blocks, and
/// per-block packed RMQs over block-local ranks.
#[derive(Clone, Debug)]
pub struct ShallowLayer {
    ell: usize,
    bits: u32,
    block: usize,
    values: Vec<u64>,
    block_mins: HashMap<(usize, u128), RmqIndex>,
    blocks: Vec<ShallowBlock>,
}

impl ShallowLayer {
    /// Default block size σ^ℓ·⌈log m⌉.
    pub fn default_block(m: usize, ell: usize, sigma: u32) -> usize {
        let logm = (m.max(2) as f64).log2().ceil() as usize;
        (sigma as usize).saturating_pow(ell as u32).saturating_mul(logm)
    }

    pub fn new(values: &[u64], codes: &[u128], ell: usize, bits: u32, block: usize) -> Self {
        let m = values.len();
        let block = block.max(1);
        let nblocks = m.div_ceil(block);
        let mut mins: HashMap<(usize, u128), Vec<u64>> = HashMap::new();
        let mut blocks = Vec::with_capacity(nblocks);
        for blk in 0..nblocks {
            let (s, t) = (blk * block, ((blk + 1) * block).min(m));
            let local = rank_reduce(&values[s..t]);
            let per_k = (0..=ell)
                .map(|k| {
                    let keys: Vec<u128> = codes[s..t].iter().map(|&c| top(c, ell, k, bits)).collect();
                    for (i, &key) in keys.iter().enumerate() {
                        let slot = mins.entry((k, key)).or_insert_with(|| vec![INF; nblocks]);
                        slot[blk] = slot[blk].min(values[s + i]);
                    }
                    let (order, groups) = Groups::build(&keys);
                    let arranged: Vec<u64> = order.iter().map(|&i| local[i]).collect();
                    (groups, PackedRmqIndex::new(&arranged, (t - s) as u64))
                })
                .collect();
            blocks.push(ShallowBlock { per_k });
        }
        let block_mins = mins.into_iter().map(|(key, v)| (key, RmqIndex::new(v))).collect();
        ShallowLayer { ell, bits, block, values: values.to_vec(), block_mins, blocks }
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn query(&self, rs: &impl RankSelect, b: usize, e: usize, x: &[u32]) -> Option<usize> {
        let e = e.min(self.values.len());
        if b >= e || x.len() > self.ell {
            return None;
        }
        let (bl, br) = (b / self.block, (e - 1) / self.block);
        if bl == br {
            return self.in_block(rs, bl, b, e, x);
        }
        let left = self.in_block(rs, bl, b, (bl + 1) * self.block, x);
        let mid = if bl + 1 < br {
            self.block_mins.get(&(x.len(), code_of(x, self.bits))).and_then(|rmq| {
                let p = rmq.query_at(bl + 1, br);
                if rmq.value(p) == INF {
                    None
                } else {
                    let blk = p - 1;
                    self.in_block(rs, blk, blk * self.block, (blk + 1) * self.block, x)
                }
            })
        } else {
            None
        };
        let right = self.in_block(rs, br, br * self.block, e, x);
        pick(&self.values, [left, mid, right])
    }

    fn in_block(&self, rs: &impl RankSelect, blk: usize, b: usize, e: usize, x: &[u32]) -> Option<usize> {
        let s = blk * self.block;
        let base = rs.rank(s, x);
        let (rb, re) = (rs.rank(b, x) - base, rs.rank(e, x) - base);
        if rb == re {
            return None;
        }
        let (groups, rmq) = &self.blocks[blk].per_k[x.len()];
        let g = groups.offset(code_of(x, self.bits))?;
        let p = rmq.query(g + rb, g + re).ok()?;
        Some(rs.select(base + p - g, x))
    }
}

#[derive(Clone, Debug)]
enum Inner {
    Simple(SimpleLayer),
    Shallow(ShallowLayer),
}

impl Inner {
    fn build(values: &[u64], codes: &[u128], ell: usize, bits: u32, sigma: u32) -> Inner {
        let m = values.len();
        let block = ShallowLayer::default_block(m, ell, sigma);
        if ell >= 1 && block < m {
            Inner::Shallow(ShallowLayer::new(values, codes, ell, bits, block))
        } else {
            Inner::Simple(SimpleLayer::new(values, codes, ell, bits))
        }
    }

    fn query(&self, rs: &impl RankSelect, b: usize, e: usize, x: &[u32]) -> Option<usize> {
        match self {
            Inner::Simple(l) => l.query(rs, b, e, x),
            Inner::Shallow(l) => l.query(rs, b, e, x),
        }
    }
}

/// Layers at prefix lengths 0, α, 2α, … below ℓ. Layer k holds, for every
/// Y of length k, an instance over the rank-reduced values of the strings
/// starting with Y and their next α characters.
#[derive(Clone, Debug)]
pub struct CombinedLayer {
    alpha: usize,
    ell: usize,
    bits: u32,
    layers: Vec<HashMap<u128, Inner>>,
}

impl CombinedLayer {
    pub fn new(values: &[u64], codes: &[u128], ell: usize, bits: u32, sigma: u32, alpha: usize) -> Self {
        let alpha = alpha.max(1);
        let mut layers = Vec::new();
        let mut k = 0;
        while k < ell {
            let sub = alpha.min(ell - k);
            let mut groups: HashMap<u128, (Vec<u64>, Vec<u128>)> = HashMap::new();
            for (i, &c) in codes.iter().enumerate() {
                let y = top(c, ell, k, bits);
                let z = top(c, ell, k + sub, bits) & ((1u128 << (sub * bits as usize)) - 1);
                let g = groups.entry(y).or_default();
                g.0.push(values[i]);
                g.1.push(z);
            }
            let layer = groups
                .into_iter()
                .map(|(y, (vals, zs))| (y, Inner::build(&rank_reduce(&vals), &zs, sub, bits, sigma)))
                .collect();
            layers.push(layer);
            k += alpha;
        }
        CombinedLayer { alpha, ell, bits, layers }
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Query for |X| ≥ 1: X = YZ with |Z| = ((|X|−1) mod α) + 1.
    pub fn query<R: RankSelect>(&self, rs: &R, b: usize, e: usize, x: &[u32]) -> Option<usize> {
        debug_assert!(!x.is_empty() && x.len() <= self.ell);
        let zl = (x.len() - 1) % self.alpha + 1;
        let (y, z) = x.split_at(x.len() - zl);
        let inner = self.layers[y.len() / self.alpha].get(&code_of(y, self.bits))?;
        let (rb, re) = (rs.rank(b, y), rs.rank(e, y));
        if rb == re {
            return None;
        }
        let view = Projected { base: rs, y };
        let r = inner.query(&view, rb, re, z)?;
        Some(rs.select(r, y))
    }
}

/// Which layer design to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// Simple when ℓ ≤ √log m, combined otherwise.
    Auto,
    Simple,
    /// Shallow with an optional block size override.
    Shallow(Option<usize>),
    /// Combined with an optional α override.
    Combined(Option<usize>),
}

#[derive(Clone, Debug)]
enum Top {
    Simple(SimpleLayer),
    Shallow(ShallowLayer),
    Combined(CombinedLayer),
}

/// Prefix RMQ index over (A, S).
#[derive(Clone, Debug)]
pub struct PrefixRmqIndex {
    ell: usize,
    sigma: u32,
    bits: u32,
    values: Vec<u64>,
    rs: PrefixRankSelect,
    global: RmqIndex,
    top: Top,
}

impl PrefixRmqIndex {
    pub fn new(a: &[u64], s: &[Vec<u32>], sigma: u32, ell: usize) -> Result<Self> {
        Self::with_layout(a, s, sigma, ell, Layout::Auto)
    }

    pub fn with_layout(a: &[u64], s: &[Vec<u32>], sigma: u32, ell: usize, layout: Layout) -> Result<Self> {
        if a.len() != s.len() {
            return Err(param(format!("{} values for {} strings", a.len(), s.len())));
        }
        let rs = PrefixRankSelect::new(s, ell, sigma)?;
        let bits = rs.bits();
        let codes: Vec<u128> = s.iter().map(|x| code_of(x, bits)).collect();
        Ok(Self::from_parts(a, &codes, rs, sigma, ell, layout))
    }

    /// Builds from MSB-first codes of the strings.
    pub fn from_codes(a: &[u64], codes: &[u128], sigma: u32, ell: usize, layout: Layout) -> Result<Self> {
        let bits = bits_for(sigma as u64);
        let rs = PrefixRankSelect::from_codes(codes, ell, bits)?;
        Ok(Self::from_parts(a, codes, rs, sigma, ell, layout))
    }

    fn from_parts(a: &[u64], codes: &[u128], rs: PrefixRankSelect, sigma: u32, ell: usize, layout: Layout) -> Self {
        let m = a.len();
        let bits = rs.bits();
        let values = rank_reduce(a);
        let alpha = Self::default_alpha(m, sigma);
        let layout = match layout {
            Layout::Auto if (ell as f64) <= (m.max(2) as f64).log2().sqrt() => Layout::Simple,
            Layout::Auto => Layout::Combined(None),
            other => other,
        };
        let top = match layout {
            Layout::Simple | Layout::Auto => Top::Simple(SimpleLayer::new(&values, codes, ell, bits)),
            Layout::Shallow(block) => {
                let block = block.unwrap_or_else(|| ShallowLayer::default_block(m, ell, sigma));
                Top::Shallow(ShallowLayer::new(&values, codes, ell, bits, block))
            }
            Layout::Combined(a) => {
                Top::Combined(CombinedLayer::new(&values, codes, ell, bits, sigma, a.unwrap_or(alpha)))
            }
        };
        PrefixRmqIndex { ell, sigma, bits, global: RmqIndex::new(values.clone()), values, rs, top }
    }

    /// α = max(1, ⌊√log m / log σ⌋).
    pub fn default_alpha(m: usize, sigma: u32) -> usize {
        let v = (m.max(2) as f64).log2().sqrt() / (sigma.max(2) as f64).log2();
        (v.floor() as usize).max(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn rank_select(&self) -> &PrefixRankSelect {
        &self.rs
    }

    pub fn layout_name(&self) -> &'static str {
        match self.top {
            Top::Simple(_) => "simple",
            Top::Shallow(_) => "shallow",
            Top::Combined(_) => "combined",
        }
    }

    /// Leftmost argmin of A over i ∈ (b..e] with X a prefix of S[i]; `None`
    /// when no index qualifies.
    pub fn query(&self, b: usize, e: usize, x: &[u32]) -> Result<Option<usize>> {
        if x.len() > self.ell {
            return Err(param(format!("prefix of length {} exceeds ℓ = {}", x.len(), self.ell)));
        }
        if e > self.values.len() {
            return Err(param(format!("range end {e} exceeds m = {}", self.values.len())));
        }
        Ok(self.query_at(b, e, x))
    }

    pub fn query_at(&self, b: usize, e: usize, x: &[u32]) -> Option<usize> {
        if b >= e {
            return None;
        }
        if x.is_empty() {
            return Some(self.global.query_at(b, e));
        }
        match &self.top {
            Top::Simple(l) => l.query(&self.rs, b, e, x),
            Top::Shallow(l) => l.query(&self.rs, b, e, x),
            Top::Combined(l) => l.query(&self.rs, b, e, x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<Vec<u32>> {
        v.iter().map(|s| s.bytes().map(|c| (c - b'a') as u32).collect()).collect()
    }

    #[test]
    fn layer_examples() {
        let a = [2, 3, 0, 1];
        let s = strs(&["ab", "aa", "ba", "ab"]);
        for layout in [Layout::Simple, Layout::Shallow(Some(2)), Layout::Combined(Some(1)), Layout::Auto] {
            let idx = PrefixRmqIndex::with_layout(&a, &s, 2, 2, layout).unwrap();
            assert_eq!(idx.query(0, 4, &[0]).unwrap(), Some(4), "{layout:?}");
            assert_eq!(idx.query(0, 4, &[]).unwrap(), Some(3));
            assert_eq!(idx.query(1, 2, &[1]).unwrap(), None);
            assert!(idx.query(0, 4, &[0, 0, 0]).is_err());
        }
    }

    #[test]
    fn single_element() {
        let idx = PrefixRmqIndex::new(&[7], &strs(&["b"]), 2, 1).unwrap();
        assert_eq!(idx.query(0, 1, &[1]).unwrap(), Some(1));
        assert_eq!(idx.query(0, 1, &[0]).unwrap(), None);
    }
}
