//! Packed bitvectors with rank/select, bounded successor, repetition and
//! subsequence delete/insert.
//!
//! Positions are 1-based. Bit `t` lives in word `(t-1)/64` at bit `(t-1)%64`.

use crate::error::{param, Error, Result};

const SUPER: usize = 512;
const SUPER_WORDS: usize = SUPER / 64;
const SELECT_SAMPLE: usize = 512;

/// Append-only bit buffer.
#[derive(Clone, Debug, Default)]
pub struct BitBuilder {
    len: usize,
    words: Vec<u64>,
}

impl BitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitBuilder { len: 0, words: Vec::with_capacity(bits / 64 + 1) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        self.push_bits(bit as u64, 1);
    }

    /// Appends the low `k` bits of `v` (k ≤ 64).
    pub fn push_bits(&mut self, v: u64, k: usize) {
        if k == 0 {
            return;
        }
        let v = if k == 64 { v } else { v & ((1u64 << k) - 1) };
        let sh = self.len & 63;
        if sh == 0 {
            self.words.push(v);
        } else {
            *self.words.last_mut().unwrap() |= v << sh;
            if sh + k > 64 {
                self.words.push(v >> (64 - sh));
            }
        }
        self.len += k;
    }

    /// Appends `src[from+1..=from+len]` (0-based offset `from`).
    pub fn extend_from(&mut self, src: &Bitvector, from: usize, len: usize) {
        let mut k = 0;
        while k < len {
            let c = 64.min(len - k);
            self.push_bits(src.get_bits(from + k, c), c);
            k += c;
        }
    }

    pub fn finish(self) -> Bitvector {
        Bitvector::from_words(self.words, self.len)
    }
}

/// Static bitvector with a rank directory (one absolute count per 512 bits)
/// and sampled select hints.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bitvector {
    len: usize,
    words: Vec<u64>,
    supers: Vec<u64>,
    ones: usize,
    select1_hints: Vec<u32>,
    select0_hints: Vec<u32>,
}

impl Bitvector {
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        let nw = len.div_ceil(64);
        words.resize(nw, 0);
        if len % 64 != 0 {
            words[nw - 1] &= (1u64 << (len % 64)) - 1;
        }
        let mut bv = Bitvector { len, words, ..Default::default() };
        bv.build_dirs();
        bv
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = BitBuilder::with_capacity(bits.len());
        for &x in bits {
            b.push(x);
        }
        b.finish()
    }

    /// Parses a string of '0'/'1'.
    pub fn from_str01(s: &str) -> Self {
        Self::from_bools(&s.bytes().map(|c| c == b'1').collect::<Vec<_>>())
    }

    pub fn zeros(len: usize) -> Self {
        Self::from_words(vec![0; len.div_ceil(64)], len)
    }

    fn build_dirs(&mut self) {
        let nsup = self.words.len().div_ceil(SUPER_WORDS) + 1;
        self.supers = Vec::with_capacity(nsup);
        let mut acc = 0u64;
        for (k, w) in self.words.iter().enumerate() {
            if k % SUPER_WORDS == 0 {
                self.supers.push(acc);
            }
            acc += w.count_ones() as u64;
        }
        while self.supers.len() < nsup {
            self.supers.push(acc);
        }
        self.ones = acc as usize;
        self.select1_hints.clear();
        self.select0_hints.clear();
        let (mut seen1, mut seen0) = (0usize, 0usize);
        for (k, w) in self.words.iter().enumerate() {
            let valid = if (k + 1) * 64 <= self.len { 64 } else { self.len - k * 64 };
            let c1 = w.count_ones() as usize;
            let c0 = valid - c1;
            // the hint for the r-th one (r = 1, 1+S, ...) is its superblock
            while seen1 + c1 > self.select1_hints.len() * SELECT_SAMPLE {
                self.select1_hints.push((k / SUPER_WORDS) as u32);
            }
            while seen0 + c0 > self.select0_hints.len() * SELECT_SAMPLE {
                self.select0_hints.push((k / SUPER_WORDS) as u32);
            }
            seen1 += c1;
            seen0 += c0;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Bit at 1-based position `t`.
    #[inline]
    pub fn get(&self, t: usize) -> bool {
        let i = t - 1;
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// `k ≤ 64` bits starting at 0-based offset `i`, first bit lowest.
    #[inline]
    pub fn get_bits(&self, i: usize, k: usize) -> u64 {
        if k == 0 {
            return 0;
        }
        let (w, sh) = (i >> 6, i & 63);
        let mut v = self.words[w] >> sh;
        if sh != 0 && w + 1 < self.words.len() {
            v |= self.words[w + 1] << (64 - sh);
        }
        if k == 64 {
            v
        } else {
            v & ((1u64 << k) - 1)
        }
    }

    /// |{t ≤ j : B[t] = 1}|.
    #[inline]
    pub fn rank1(&self, j: usize) -> usize {
        debug_assert!(j <= self.len);
        let w = j >> 6;
        let s = w / SUPER_WORDS;
        let mut r = self.supers[s] as usize;
        for k in s * SUPER_WORDS..w {
            r += self.words[k].count_ones() as usize;
        }
        if j & 63 != 0 {
            r += (self.words[w] & ((1u64 << (j & 63)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, j: usize) -> usize {
        j - self.rank1(j)
    }

    /// Position of the r-th one.
    pub fn select1(&self, r: usize) -> Result<usize> {
        if r == 0 || r > self.ones {
            return Err(Error::Parameter(format!("select1({r}) with {} ones", self.ones)));
        }
        Ok(self.select_impl(r, true))
    }

    /// Position of the r-th zero.
    pub fn select0(&self, r: usize) -> Result<usize> {
        if r == 0 || r > self.len - self.ones {
            return Err(Error::Parameter(format!("select0({r}) with {} zeros", self.len - self.ones)));
        }
        Ok(self.select_impl(r, false))
    }

    fn select_impl(&self, r: usize, one: bool) -> usize {
        let hints = if one { &self.select1_hints } else { &self.select0_hints };
        let sup_rank = |s: usize| -> usize {
            let ones = self.supers[s] as usize;
            if one {
                ones
            } else {
                (s * SUPER).min(self.len) - ones
            }
        };
        let mut s = hints[(r - 1) / SELECT_SAMPLE] as usize;
        let last = self.supers.len() - 1;
        while s + 1 < last && sup_rank(s + 1) < r {
            s += 1;
        }
        let mut rem = r - sup_rank(s);
        let mut w = s * SUPER_WORDS;
        loop {
            let word = if one { self.words[w] } else { !self.words[w] };
            let c = word.count_ones() as usize;
            if c >= rem {
                return w * 64 + select_in_word(word, rem) + 1;
            }
            rem -= c;
            w += 1;
        }
    }

    /// min{t ∈ (i..j] : B[t] = 1}, or j + 1 if none.
    pub fn succ_one(&self, i: usize, j: usize) -> Result<usize> {
        if i > j || j > self.len {
            return Err(param(format!("succ_one({i},{j}) on length {}", self.len)));
        }
        Ok(self.succ_one_at(i, j))
    }

    #[inline]
    pub(crate) fn succ_one_at(&self, i: usize, j: usize) -> usize {
        // 0-based scan from bit i
        let mut pos = i;
        while pos < j {
            let w = pos >> 6;
            let word = self.words[w] >> (pos & 63);
            if word != 0 {
                let t = pos + word.trailing_zeros() as usize;
                return if t < j { t + 1 } else { j + 1 };
            }
            pos = (w + 1) << 6;
        }
        j + 1
    }

    /// This bitvector concatenated `k` times, built by doubling.
    pub fn repeat(&self, k: usize) -> Bitvector {
        if k == 0 || self.len == 0 {
            return Bitvector::zeros(0);
        }
        let mut out = BitBuilder::with_capacity(self.len * k);
        out.extend_from(self, 0, self.len);
        let mut have = 1;
        while have < k {
            let take = have.min(k - have);
            let cur = out.clone().finish();
            out.extend_from(&cur, 0, take * self.len);
            have += take;
        }
        out.finish()
    }

    /// Removes the listed 1-based positions (strictly increasing).
    pub fn delete_positions(&self, positions: &[usize]) -> Result<Bitvector> {
        let mut prev = 0;
        for &p in positions {
            if p <= prev || p > self.len {
                return Err(param(format!("delete position {p} unsorted or outside [1..{}]", self.len)));
            }
            prev = p;
        }
        let mut out = BitBuilder::with_capacity(self.len - positions.len());
        let mut from = 0;
        for &p in positions {
            out.extend_from(self, from, p - 1 - from);
            from = p;
        }
        out.extend_from(self, from, self.len - from);
        Ok(out.finish())
    }

    /// Inserts bits so that the result has bit `c` at each listed position
    /// and deleting those positions gives back `self`.
    pub fn insert_pairs(&self, pairs: &[(usize, bool)]) -> Result<Bitvector> {
        let total = self.len + pairs.len();
        let mut prev = 0;
        for &(p, _) in pairs {
            if p <= prev || p > total {
                return Err(param(format!("insert position {p} unsorted or outside [1..{total}]")));
            }
            prev = p;
        }
        let mut out = BitBuilder::with_capacity(total);
        let mut from = 0;
        for &(p, c) in pairs {
            // out currently has length from + (inserted so far); fill up to p-1
            let take = p - 1 - out.len();
            out.extend_from(self, from, take);
            from += take;
            out.push(c);
        }
        out.extend_from(self, from, self.len - from);
        Ok(out.finish())
    }

    /// Concatenation of several bitvectors.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Bitvector>) -> Bitvector {
        let mut out = BitBuilder::new();
        for p in parts {
            out.extend_from(p, 0, p.len);
        }
        out.finish()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (1..=self.len).map(|t| self.get(t)).collect()
    }

    pub fn to_string01(&self) -> String {
        (1..=self.len).map(|t| if self.get(t) { '1' } else { '0' }).collect()
    }
}

/// 0-based index of the r-th (1-based) set bit of `w`.
#[inline]
fn select_in_word(mut w: u64, r: usize) -> usize {
    for _ in 1..r {
        w &= w - 1;
    }
    w.trailing_zeros() as usize
}
