//! Brute-force reference answers used to check the `slz` indexes.
//!
//! Everything here works on plain `&[u32]` symbol slices and shares no code
//! with the library under test. Positions are 1-based to match the library.

pub mod gen;
pub mod periodic;
pub mod sync;

/// Which kind of previous occurrence a factor may copy from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overlap {
    Allowed,
    Forbidden,
}

/// An LZ77 phrase as produced by the naive parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NaivePhrase {
    Literal(u32),
    Copy { len: usize, src: usize },
}

/// Length of the common prefix of `t[i..]` and `t[j..]` (0-based starts).
pub fn lcp0(t: &[u32], i: usize, j: usize) -> usize {
    t[i..].iter().zip(&t[j..]).take_while(|(a, b)| a == b).count()
}

/// LCE with 1-based positions.
pub fn lce(t: &[u32], i: usize, j: usize) -> usize {
    lcp0(t, i - 1, j - 1)
}

/// Smallest period of `s`, trying every candidate.
pub fn period(s: &[u32]) -> usize {
    (1..=s.len())
        .find(|&p| (0..s.len() - p).all(|k| s[k] == s[k + p]))
        .unwrap_or(s.len())
}

/// Suffix array by comparison sort, 1-based entries.
pub fn suffix_array(t: &[u32]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..t.len()).collect();
    sa.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
    sa.into_iter().map(|x| x + 1).collect()
}

/// Leftmost 1-based occurrence of `pat` in `t`.
pub fn minocc(t: &[u32], pat: &[u32]) -> Option<usize> {
    if pat.is_empty() || pat.len() > t.len() {
        return None;
    }
    t.windows(pat.len()).position(|w| w == pat).map(|p| p + 1)
}

/// Leftmost occurrence of the window `t[j..j+len)` (1-based j).
pub fn minocc_window(t: &[u32], j: usize, len: usize) -> usize {
    minocc(t, &t[j - 1..j - 1 + len]).expect("window occurs at j")
}

/// LPF or LPnF value and leftmost source at 1-based `j`.
///
/// Scans every earlier start. The source is the first start reaching the best
/// length, which is the leftmost occurrence of that factor; 0 when the length
/// is 0.
pub fn lpf_at(t: &[u32], j: usize, overlap: Overlap) -> (usize, usize) {
    let mut best = 0;
    let mut src = 0;
    for i in 1..j {
        let mut l = lcp0(t, i - 1, j - 1);
        if overlap == Overlap::Forbidden {
            l = l.min(j - i);
        }
        if l > best {
            best = l;
            src = i;
        }
    }
    (best, src)
}

/// Full LPF/LPnF arrays by scanning every earlier start.
pub fn lpf_array(t: &[u32], overlap: Overlap) -> Vec<usize> {
    let n = t.len();
    (1..=n)
        .map(|j| {
            (1..j)
                .map(|i| {
                    let l = lcp0(t, i - 1, j - 1);
                    match overlap {
                        Overlap::Allowed => l,
                        Overlap::Forbidden => l.min(j - i),
                    }
                })
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Greedy LZ77 parse computed straight from the definition.
pub fn lz77(t: &[u32], overlap: Overlap) -> Vec<NaivePhrase> {
    let mut out = Vec::new();
    let mut j = 1;
    while j <= t.len() {
        let (len, src) = lpf_at(t, j, overlap);
        if len == 0 {
            out.push(NaivePhrase::Literal(t[j - 1]));
            j += 1;
        } else {
            out.push(NaivePhrase::Copy { len, src });
            j += len;
        }
    }
    out
}

/// Leftmost argmin of `a` over the 1-based half-open range (b..e].
pub fn rmq(a: &[u64], b: usize, e: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in b + 1..=e {
        if best.map_or(true, |k| a[i - 1] < a[k - 1]) {
            best = Some(i);
        }
    }
    best
}

/// Leftmost argmin over (b..e] restricted to strings that start with `x`.
pub fn prefix_rmq(a: &[u64], s: &[Vec<u32>], b: usize, e: usize, x: &[u32]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in b + 1..=e {
        if s[i - 1].starts_with(x) && best.map_or(true, |k| a[i - 1] < a[k - 1]) {
            best = Some(i);
        }
    }
    best
}

/// Leftmost argmin of `a` over (b..e] restricted to `bv[i] ≥ v`.
pub fn three_sided_rmq(a: &[u64], bv: &[u64], b: usize, e: usize, v: u64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in b + 1..=e {
        if bv[i - 1] >= v && best.map_or(true, |k| a[i - 1] < a[k - 1]) {
            best = Some(i);
        }
    }
    best
}

/// |{i ∈ [1..end] : a[i] ≥ v}|.
pub fn count_two_sided(a: &[i64], end: usize, v: i64) -> usize {
    a[..end].iter().filter(|&&x| x >= v).count()
}

/// |{i ∈ (beg..end] : a[i] ≥ v}|.
pub fn count_three_sided(a: &[i64], beg: usize, end: usize, v: i64) -> usize {
    a[beg..end].iter().filter(|&&x| x >= v).count()
}

/// Text with the sentinel `sigma` appended (the largest symbol).
pub fn with_sentinel(t: &[u32], sigma: u32) -> Vec<u32> {
    let mut v = t.to_vec();
    v.push(sigma);
    v
}

/// Decodes naive phrases back into text.
pub fn decode(phrases: &[NaivePhrase]) -> Vec<u32> {
    let mut out = Vec::new();
    for ph in phrases {
        match *ph {
            NaivePhrase::Literal(c) => out.push(c),
            NaivePhrase::Copy { len, src } => {
                for k in 0..len {
                    out.push(out[src - 1 + k]);
                }
            }
        }
    }
    out
}

/// Phrase count of the greedy parse.
pub fn phrase_count(t: &[u32], overlap: Overlap) -> usize {
    lz77(t, overlap).len()
}

/// Longest previous factor at `j` using precomputed 64-symbol windows.
///
/// Only for binary texts; scans every earlier start with one xor per start.
/// Used where the plain scan is too slow (n around 10^6).
pub fn lpf_at_binary(t: &[u32], windows: &[u64], j: usize, overlap: Overlap) -> (usize, usize) {
    let n = t.len();
    let jj = j - 1;
    let mut best = 0usize;
    let mut src = 0usize;
    for i in 0..jj {
        let x = windows[i] ^ windows[jj];
        let mut l = if x == 0 { 64 } else { x.trailing_zeros() as usize };
        if l == 64 {
            l = lcp0(t, i, jj);
        }
        l = l.min(n - jj);
        if overlap == Overlap::Forbidden {
            l = l.min(jj - i);
        }
        if l > best {
            best = l;
            src = i + 1;
        }
    }
    (best, src)
}

/// 64-symbol windows of a binary text, symbol k of window i at bit k.
pub fn binary_windows(t: &[u32]) -> Vec<u64> {
    let n = t.len();
    let mut w = vec![0u64; n];
    for i in 0..n {
        let mut x = 0u64;
        for k in 0..64.min(n - i) {
            x |= (t[i + k] as u64 & 1) << k;
        }
        w[i] = x;
    }
    w
}
