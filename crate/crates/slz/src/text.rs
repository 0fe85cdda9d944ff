//! Packed text, sentinel handling and the suffix-array scaffold.
//!
//! Public positions are 1-based. Symbols are stored LSB-first at
//! `bits` bits each, so a window of up to `64 / bits` symbols is one shifted
//! word read.

use std::cmp::Ordering;

use crate::error::{param, Error, Result};

/// Bits needed to store symbols in `[0..sigma)`.
pub fn bits_for(sigma: u64) -> u32 {
    if sigma <= 2 {
        1
    } else {
        64 - (sigma - 1).leading_zeros()
    }
}

/// A bit-packed symbol sequence (0-based internally).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedSeq {
    len: usize,
    bits: u32,
    words: Vec<u64>,
}

impl PackedSeq {
    pub fn from_symbols(symbols: &[u32], bits: u32) -> Self {
        let mut seq = PackedSeq::zeroed(symbols.len(), bits);
        for (i, &c) in symbols.iter().enumerate() {
            seq.set(i, c);
        }
        seq
    }

    pub fn zeroed(len: usize, bits: u32) -> Self {
        assert!((1..=32).contains(&bits));
        let nwords = (len * bits as usize).div_ceil(64) + 1;
        PackedSeq { len, bits, words: vec![0; nwords] }
    }

    pub(crate) fn from_words(len: usize, bits: u32, mut words: Vec<u64>) -> Self {
        words.resize((len * bits as usize).div_ceil(64) + 1, 0);
        PackedSeq { len, bits, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Symbols per 64-bit chunk.
    pub fn per_word(&self) -> usize {
        64 / self.bits as usize
    }

    fn set(&mut self, i: usize, c: u32) {
        let bit = i * self.bits as usize;
        let (w, sh) = (bit >> 6, bit & 63);
        let c = c as u64;
        self.words[w] |= c << sh;
        if sh + self.bits as usize > 64 {
            self.words[w + 1] |= c >> (64 - sh);
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.window(i, 1) as u32
    }

    /// `k` symbols starting at `i`, symbol `i` in the low bits.
    #[inline]
    pub fn window(&self, i: usize, k: usize) -> u64 {
        let nb = k * self.bits as usize;
        debug_assert!(nb <= 64 && i + k <= self.len);
        let bit = i * self.bits as usize;
        let (w, sh) = (bit >> 6, bit & 63);
        let mut v = self.words[w] >> sh;
        if sh != 0 {
            v |= self.words[w + 1] << (64 - sh);
        }
        if nb == 64 {
            v
        } else {
            v & ((1u64 << nb) - 1)
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Copy of `[i..i+len)`.
    pub fn slice(&self, i: usize, len: usize) -> PackedSeq {
        let mut out = PackedSeq::zeroed(len, self.bits);
        let per = self.per_word();
        let mut k = 0;
        while k < len {
            let c = per.min(len - k);
            let v = self.window(i + k, c);
            let bit = k * self.bits as usize;
            let (w, sh) = (bit >> 6, bit & 63);
            out.words[w] |= v << sh;
            if sh != 0 && sh + c * self.bits as usize > 64 {
                out.words[w + 1] |= v >> (64 - sh);
            }
            k += c;
        }
        out
    }

    /// Longest common extension of `a[i..]` and `b[j..]`, one word per step.
    pub fn lce(a: &PackedSeq, i: usize, b: &PackedSeq, j: usize) -> usize {
        PackedSeq::lce_upto(a, i, b, j, usize::MAX)
    }

    /// `min(cap, lce)`, reading at most ⌈cap / per_word⌉ words per side.
    pub fn lce_upto(a: &PackedSeq, i: usize, b: &PackedSeq, j: usize, cap: usize) -> usize {
        debug_assert_eq!(a.bits, b.bits);
        let max = (a.len - i).min(b.len - j).min(cap);
        let per = a.per_word();
        let mut l = 0;
        while l < max {
            let k = per.min(max - l);
            let x = a.window(i + l, k) ^ b.window(j + l, k);
            if x != 0 {
                return l + x.trailing_zeros() as usize / a.bits as usize;
            }
            l += k;
        }
        max
    }

    /// Compares `a[i..]` with `b[j..j+len)`; `Equal` when the latter is a
    /// prefix of the former.
    pub fn cmp_prefix(a: &PackedSeq, i: usize, b: &PackedSeq, j: usize, len: usize) -> Ordering {
        let l = PackedSeq::lce_upto(a, i, b, j, len);
        if l == len {
            Ordering::Equal
        } else if i + l == a.len {
            Ordering::Less
        } else {
            a.get(i + l).cmp(&b.get(j + l))
        }
    }
}

/// Text over `[0..sigma)`, optionally terminated by a unique sentinel
/// `sigma − 1` (the alphabet is extended by one when the sentinel is added).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedText {
    n: usize,
    sigma: u32,
    has_sentinel: bool,
    seq: PackedSeq,
}

impl PackedText {
    pub fn new(symbols: &[u32], sigma: u32, add_sentinel: bool) -> Result<Self> {
        if sigma < 2 {
            return Err(param(format!("alphabet size {sigma} < 2")));
        }
        if symbols.is_empty() {
            return Err(Error::Input("empty input".into()));
        }
        if let Some(&c) = symbols.iter().find(|&&c| c >= sigma) {
            return Err(Error::Input(format!("symbol {c} outside alphabet of size {sigma}")));
        }
        let n = symbols.len();
        let ext = if add_sentinel {
            sigma.checked_add(1).ok_or_else(|| param("alphabet too large for a sentinel"))?
        } else {
            sigma
        };
        let bits = bits_for(ext as u64);
        let mut all = symbols.to_vec();
        if add_sentinel {
            all.push(ext - 1);
        }
        Ok(PackedText {
            n,
            sigma: ext,
            has_sentinel: add_sentinel,
            seq: PackedSeq::from_symbols(&all, bits),
        })
    }

    pub(crate) fn from_parts(n: usize, sigma: u32, has_sentinel: bool, seq: PackedSeq) -> Self {
        PackedText { n, sigma, has_sentinel, seq }
    }

    /// Length without the sentinel.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_total(&self) -> usize {
        self.seq.len
    }

    /// Alphabet size, including the sentinel symbol if present.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn bits(&self) -> u32 {
        self.seq.bits
    }

    pub fn has_sentinel(&self) -> bool {
        self.has_sentinel
    }

    pub fn seq(&self) -> &PackedSeq {
        &self.seq
    }

    /// Symbol at 1-based position `i`.
    #[inline]
    pub fn symbol(&self, i: usize) -> u32 {
        self.seq.get(i - 1)
    }

    /// Up to `64 / bits` symbols starting at 1-based `i`.
    #[inline]
    pub fn window(&self, i: usize, len: usize) -> u64 {
        self.seq.window(i - 1, len)
    }

    pub fn symbols(&self) -> Vec<u32> {
        self.seq.to_vec()
    }

    /// The original text without sentinel.
    pub fn original(&self) -> Vec<u32> {
        let mut v = self.seq.to_vec();
        v.truncate(self.n);
        v
    }

    /// Packed copy of `T[i..i+len)`.
    pub fn substring(&self, i: usize, len: usize) -> PackedSeq {
        self.seq.slice(i - 1, len)
    }

    pub fn lce(&self, i: usize, j: usize) -> Result<usize> {
        let nt = self.n_total();
        if i == 0 || j == 0 || i > nt || j > nt {
            return Err(param(format!("lce({i},{j}) outside [1..{nt}]")));
        }
        Ok(self.lce_at(i, j))
    }

    /// Unchecked LCE; positions must be in `[1..n_total+1]`.
    #[inline]
    pub fn lce_at(&self, i: usize, j: usize) -> usize {
        PackedSeq::lce(&self.seq, i - 1, &self.seq, j - 1)
    }

    /// `min(cap, lce(i, j))`.
    #[inline]
    pub fn lce_upto(&self, i: usize, j: usize, cap: usize) -> usize {
        PackedSeq::lce_upto(&self.seq, i - 1, &self.seq, j - 1, cap)
    }

    /// Smallest period of `T[i..i+len)`.
    pub fn period(&self, i: usize, len: usize) -> Result<usize> {
        if i == 0 || len == 0 || i + len > self.n_total() + 1 {
            return Err(param(format!("period window ({i},{len}) out of range")));
        }
        Ok(smallest_period((0..len).map(|k| self.seq.get(i - 1 + k))))
    }

    /// Whether `T[i..i+len)` has a period `p` (used for small p checks).
    #[inline]
    pub fn has_period(&self, i: usize, len: usize, p: usize) -> bool {
        p >= len || self.lce_upto(i, i + p, len - p) >= len - p
    }
}

/// Smallest period via the KMP failure function.
pub fn smallest_period(symbols: impl Iterator<Item = u32>) -> usize {
    let s: Vec<u32> = symbols.collect();
    let m = s.len();
    let mut fail = vec![0usize; m + 1];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    m - fail[m]
}

/// Suffix array and inverse over a sentinel-terminated text.
#[derive(Clone, Debug)]
pub struct SuffixScaffold {
    sa: Vec<u32>,
    isa: Vec<u32>,
}

/// A pattern given either as a window of the text or explicitly.
#[derive(Clone, Copy, Debug)]
pub enum PatternRef<'a> {
    Window { j: usize, len: usize },
    Explicit(&'a PackedSeq),
}

impl PatternRef<'_> {
    pub fn len(&self) -> usize {
        match *self {
            PatternRef::Window { len, .. } => len,
            PatternRef::Explicit(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Compares `T[i..]` with this pattern shifted by `skip` symbols.
    pub fn cmp_suffix(&self, text: &PackedText, i: usize, skip: usize) -> Ordering {
        match *self {
            PatternRef::Window { j, len } => {
                PackedSeq::cmp_prefix(text.seq(), i - 1, text.seq(), j - 1 + skip, len - skip)
            }
            PatternRef::Explicit(p) => PackedSeq::cmp_prefix(text.seq(), i - 1, p, skip, p.len() - skip),
        }
    }

    /// Symbols as a packed sequence (copies windows).
    pub fn to_seq(&self, text: &PackedText) -> PackedSeq {
        match *self {
            PatternRef::Window { j, len } => text.substring(j, len),
            PatternRef::Explicit(p) => p.clone(),
        }
    }
}

impl SuffixScaffold {
    pub fn build(text: &PackedText) -> Result<Self> {
        if !text.has_sentinel() {
            return Err(Error::Precondition("suffix scaffold needs a sentinel".into()));
        }
        let s = text.symbols();
        let sa0 = sa_is(&s, text.sigma() as usize);
        let sa: Vec<u32> = sa0.iter().map(|&x| x as u32 + 1).collect();
        let mut isa = vec![0u32; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            isa[p as usize - 1] = r as u32 + 1;
        }
        debug_assert!(sa.len() > 1 << 14 || sa.windows(2).all(|w| {
            let (a, b) = (w[0] as usize, w[1] as usize);
            let l = text.lce_at(a, b);
            a + l <= text.n_total() && text.symbol(a + l) < text.symbol(b + l)
        }));
        Ok(SuffixScaffold { sa, isa })
    }

    pub(crate) fn from_sa(sa: Vec<u32>) -> Self {
        let mut isa = vec![0u32; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            isa[p as usize - 1] = r as u32 + 1;
        }
        SuffixScaffold { sa, isa }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Text position of the suffix with 1-based rank `r`.
    #[inline]
    pub fn sa(&self, r: usize) -> usize {
        self.sa[r - 1] as usize
    }

    /// 1-based rank of the suffix starting at `i`.
    #[inline]
    pub fn isa(&self, i: usize) -> usize {
        self.isa[i - 1] as usize
    }

    pub fn sa_array(&self) -> &[u32] {
        &self.sa
    }

    /// Whether the inverse is still held (see [`SuffixScaffold::strip_isa`]).
    pub fn has_isa(&self) -> bool {
        self.isa.len() == self.sa.len()
    }

    /// Drops the inverse array; `isa` must not be called afterwards.
    pub fn strip_isa(&mut self) {
        self.isa = Vec::new();
    }

    pub fn isa_array(&self) -> &[u32] {
        &self.isa
    }

    /// SA range (b..e] of suffixes that start with the pattern.
    pub fn range(&self, text: &PackedText, pat: PatternRef) -> (usize, usize) {
        let lo = self.sa.partition_point(|&p| pat.cmp_suffix(text, p as usize, 0) == Ordering::Less);
        let hi = lo + self.sa[lo..].partition_point(|&p| pat.cmp_suffix(text, p as usize, 0) == Ordering::Equal);
        (lo, hi)
    }
}

/// Induced-sorting suffix array of `s` (0-based), symbols in `[0..upper)`.
pub fn sa_is(s: &[u32], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return vec![],
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }
    if n < 10 {
        let mut sa: Vec<usize> = (0..n).collect();
        sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
        return sa;
    }
    const NONE: usize = usize::MAX;
    let mut sa = vec![NONE; n];
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }
    let mut sum_l = vec![0usize; upper + 1];
    let mut sum_s = vec![0usize; upper + 1];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i] as usize] += 1;
        } else {
            sum_l[s[i] as usize + 1] += 1;
        }
    }
    for i in 0..=upper {
        sum_s[i] += sum_l[i];
        if i < upper {
            sum_l[i + 1] += sum_s[i];
        }
    }
    let induce = |sa: &mut Vec<usize>, lms: &[usize]| {
        sa.iter_mut().for_each(|x| *x = NONE);
        let mut buf = sum_s.clone();
        for &d in lms {
            if d == n {
                continue;
            }
            let c = s[d] as usize;
            sa[buf[c]] = d;
            buf[c] += 1;
        }
        buf.copy_from_slice(&sum_l);
        let c = s[n - 1] as usize;
        sa[buf[c]] = n - 1;
        buf[c] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != NONE && v >= 1 && !ls[v - 1] {
                let c = s[v - 1] as usize;
                sa[buf[c]] = v - 1;
                buf[c] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != NONE && v >= 1 && ls[v - 1] {
                let c = s[v - 1] as usize + 1;
                buf[c] -= 1;
                sa[buf[c]] = v - 1;
            }
        }
    };
    let mut lms_map = vec![NONE; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len();
            lms.push(i);
        }
    }
    let m = lms.len();
    induce(&mut sa, &lms);
    if m > 0 {
        let mut sorted_lms: Vec<usize> = sa.iter().copied().filter(|&v| lms_map[v] != NONE).collect();
        let mut rec_s = vec![0u32; m];
        let mut rec_upper = 0u32;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for i in 1..m {
            let (mut l, mut r) = (sorted_lms[i - 1], sorted_lms[i]);
            let end_l = if lms_map[l] + 1 < m { lms[lms_map[l] + 1] } else { n };
            let end_r = if lms_map[r] + 1 < m { lms[lms_map[r] + 1] } else { n };
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i]]] = rec_upper;
        }
        let rec_sa = sa_is(&rec_s, rec_upper as usize + 1);
        for i in 0..m {
            sorted_lms[i] = lms[rec_sa[i]];
        }
        induce(&mut sa, &sorted_lms);
    }
    sa
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packs_and_extends_alphabet() {
        let t = PackedText::new(&[0, 0], 2, true).unwrap();
        assert_eq!((t.n(), t.n_total(), t.sigma()), (2, 3, 3));
        assert_eq!(t.symbol(3), 2);
        let t = PackedText::new(&[0; 64], 2, false).unwrap();
        assert_eq!(t.bits(), 1);
        assert_eq!(t.seq().words()[0], 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(PackedText::new(&[0, 2], 2, false), Err(Error::Input(_))));
        assert!(matches!(PackedText::new(&[0], 1, false), Err(Error::Parameter(_))));
    }

    #[test]
    fn lce_and_period_examples() {
        let t = PackedText::new(&[0, 1, 0, 1], 2, false).unwrap();
        assert_eq!(t.lce(1, 3).unwrap(), 2);
        let t = PackedText::new(&[0, 0, 0, 0], 2, false).unwrap();
        assert_eq!(t.lce(1, 2).unwrap(), 3);
        assert_eq!(t.lce(2, 2).unwrap(), 3);
        assert!(t.lce(0, 1).is_err());
        let t = PackedText::new(&[0, 1, 0, 0, 1], 2, false).unwrap();
        assert_eq!(t.period(1, 5).unwrap(), 3);
        assert_eq!(t.period(1, 2).unwrap(), 2);
    }

    #[test]
    fn scaffold_small() {
        let t = PackedText::new(&[0, 1], 2, true).unwrap();
        assert_eq!(SuffixScaffold::build(&t).unwrap().sa_array(), &[1, 2, 3]);
        // the sentinel is the largest symbol, so "ba$" sorts a$ < ba$ < $
        let t = PackedText::new(&[1, 0], 2, true).unwrap();
        assert_eq!(SuffixScaffold::build(&t).unwrap().sa_array(), &[2, 1, 3]);
        let t = PackedText::new(&[0, 1], 2, false).unwrap();
        assert!(matches!(SuffixScaffold::build(&t), Err(Error::Precondition(_))));
    }
}
