//! Greedy LZ77 factorization (overlapping and non-overlapping) and the phrase
//! dump formats.
//!
//! TSV: one phrase per line, `L<TAB>sym` or `C<TAB>len<TAB>src`. A symbol is
//! written as its ASCII character when graphic and not a backslash, otherwise
//! as `\xHH` (or `\x{H..}` above 255).
//!
//! Binary: `SLZ77v1`, u64 n, u64 z, then per phrase u64 len followed by the
//! u64 symbol (len = 0) or the u64 source. Little-endian.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lpf::{LpfIndex, Variant};

pub const BINARY_MAGIC: &[u8; 7] = b"SLZ77v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phrase {
    Literal(u32),
    Copy { len: usize, src: usize },
}

impl Phrase {
    /// Number of text symbols covered.
    pub fn len(&self) -> usize {
        match *self {
            Phrase::Literal(_) => 1,
            Phrase::Copy { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Copy length, 0 for a literal.
    pub fn copy_len(&self) -> usize {
        match *self {
            Phrase::Literal(_) => 0,
            Phrase::Copy { len, .. } => len,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub variant: Variant,
    /// Text length.
    pub n: usize,
    pub phrases: Vec<Phrase>,
}

/// Greedy parse of positions [1..n] through the LPF index.
pub fn factorize(lpf: &LpfIndex) -> Result<Factorization> {
    let n = lpf.n();
    let mut phrases = Vec::new();
    let mut j = 1;
    while j <= n {
        let ph = lpf.lpf_at(j)?;
        j += ph.len();
        phrases.push(ph);
    }
    Ok(Factorization { variant: lpf.variant(), n, phrases })
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// z·log_σ(n)/n.
    pub fn ratio(&self, sigma: u32) -> f64 {
        if self.n < 2 || sigma < 2 {
            return 0.0;
        }
        self.phrases.len() as f64 * (self.n as f64).ln() / (sigma as f64).ln() / self.n as f64
    }

    /// Checks the phrase invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        let mut j = 1;
        for (k, ph) in self.phrases.iter().enumerate() {
            if let Phrase::Copy { len, src } = *ph {
                let overlap_ok = self.variant == Variant::Overlapping || src + len <= j;
                if len == 0 || src == 0 || src >= j || !overlap_ok {
                    return Err(Error::Format(format!("phrase {} at {j}: copy ({len}, {src}) is invalid", k + 1)));
                }
            }
            j += ph.len();
        }
        if j != self.n + 1 {
            return Err(Error::Format(format!("phrases cover {} symbols, header says {}", j - 1, self.n)));
        }
        Ok(())
    }

    pub fn decode(&self) -> Result<Vec<u32>> {
        self.validate()?;
        let mut out = Vec::with_capacity(self.n);
        for ph in &self.phrases {
            match *ph {
                Phrase::Literal(c) => out.push(c),
                Phrase::Copy { len, src } => {
                    for k in 0..len {
                        out.push(out[src - 1 + k]);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for ph in &self.phrases {
            match *ph {
                Phrase::Literal(c) => {
                    s.push_str("L\t");
                    push_symbol(&mut s, c);
                    s.push('\n');
                }
                Phrase::Copy { len, src } => {
                    let _ = writeln!(s, "C\t{len}\t{src}");
                }
            }
        }
        s
    }

    /// Parses a TSV dump. The dump carries no variant, so the result is
    /// tagged `Overlapping` (the weaker source condition).
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut phrases = Vec::new();
        for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.is_empty()) {
            let bad = || Error::Format(format!("line {}: {line:?}", k + 1));
            let fields: Vec<&str> = line.split('\t').collect();
            let ph = match fields.as_slice() {
                ["L", sym] => Phrase::Literal(parse_symbol(sym).ok_or_else(bad)?),
                ["C", len, src] => Phrase::Copy {
                    len: len.parse().map_err(|_| bad())?,
                    src: src.parse().map_err(|_| bad())?,
                },
                _ => return Err(bad()),
            };
            phrases.push(ph);
        }
        let n = phrases.iter().map(Phrase::len).sum();
        let f = Factorization { variant: Variant::Overlapping, n, phrases };
        f.validate()?;
        Ok(f)
    }

    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(23 + 16 * self.phrases.len());
        out.extend_from_slice(BINARY_MAGIC);
        out.extend_from_slice(&(self.n as u64).to_le_bytes());
        out.extend_from_slice(&(self.phrases.len() as u64).to_le_bytes());
        for ph in &self.phrases {
            let (a, b) = match *ph {
                Phrase::Literal(c) => (0u64, c as u64),
                Phrase::Copy { len, src } => (len as u64, src as u64),
            };
            out.extend_from_slice(&a.to_le_bytes());
            out.extend_from_slice(&b.to_le_bytes());
        }
        out
    }

    /// Parses the binary dump; tagged `Overlapping` as in [`Self::from_tsv`].
    pub fn from_binary(bytes: &[u8]) -> Result<Self> {
        let rest = bytes
            .strip_prefix(BINARY_MAGIC.as_slice())
            .ok_or_else(|| Error::Format("missing SLZ77v1 magic".into()))?;
        let mut words = rest.chunks(8).map(|c| {
            c.try_into().map(u64::from_le_bytes).map_err(|_| Error::Format("truncated u64".into()))
        });
        let mut next = || words.next().unwrap_or_else(|| Err(Error::Format("unexpected end of input".into())));
        let n = next()? as usize;
        let z = next()? as usize;
        if z > rest.len() / 16 {
            return Err(Error::Format(format!("phrase count {z} exceeds the payload")));
        }
        let mut phrases = Vec::with_capacity(z);
        for _ in 0..z {
            let a = next()?;
            let b = next()?;
            phrases.push(if a == 0 {
                Phrase::Literal(u32::try_from(b).map_err(|_| Error::Format(format!("symbol {b} too large")))?)
            } else {
                Phrase::Copy { len: a as usize, src: b as usize }
            });
        }
        if next().is_ok() {
            return Err(Error::Format("trailing bytes after the last phrase".into()));
        }
        let f = Factorization { variant: Variant::Overlapping, n, phrases };
        f.validate()?;
        Ok(f)
    }
}

/// A symbol as written in the TSV dumps.
pub fn symbol_token(c: u32) -> String {
    let mut s = String::new();
    push_symbol(&mut s, c);
    s
}

fn push_symbol(s: &mut String, c: u32) {
    match char::from_u32(c) {
        Some(ch) if ch.is_ascii_graphic() && ch != '\\' => s.push(ch),
        _ if c < 256 => {
            let _ = write!(s, "\\x{c:02X}");
        }
        _ => {
            let _ = write!(s, "\\x{{{c:X}}}");
        }
    }
}

fn parse_symbol(s: &str) -> Option<u32> {
    let mut chars = s.chars();
    match (chars.next()?, chars.as_str()) {
        ('\\', rest) => {
            let hex = rest.strip_prefix('x')?;
            let hex = match hex.strip_prefix('{') {
                Some(h) => h.strip_suffix('}')?,
                None if hex.len() == 2 => hex,
                None => return None,
            };
            u32::from_str_radix(hex, 16).ok()
        }
        (ch, "") if ch.is_ascii_graphic() => Some(ch as u32),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_round_trip() {
        for c in [0u32, 9, 32, 65, 92, 126, 127, 255, 256, 70000] {
            let mut s = String::new();
            push_symbol(&mut s, c);
            assert_eq!(parse_symbol(&s), Some(c), "{s}");
        }
        let mut s = String::new();
        push_symbol(&mut s, b'a' as u32);
        assert_eq!(s, "a");
    }

    #[test]
    fn decode_examples() {
        let a = b'a' as u32;
        let f = Factorization {
            variant: Variant::Overlapping,
            n: 4,
            phrases: vec![Phrase::Literal(a), Phrase::Copy { len: 3, src: 1 }],
        };
        assert_eq!(f.decode().unwrap(), vec![a; 4]);
        assert!(Factorization { variant: Variant::NonOverlapping, ..f.clone() }.decode().is_err());
        let one = Factorization { variant: Variant::Overlapping, n: 1, phrases: vec![Phrase::Literal(a)] };
        assert_eq!(one.decode().unwrap(), vec![a]);
        let bad = Factorization { variant: Variant::Overlapping, n: 2, phrases: vec![Phrase::Copy { len: 2, src: 1 }] };
        assert!(matches!(bad.decode(), Err(Error::Format(_))));
        assert_eq!(Factorization::from_tsv(&f.to_tsv()).unwrap(), f);
        assert_eq!(Factorization::from_binary(&f.to_binary()).unwrap(), f);
        assert!(Factorization::from_binary(&f.to_binary()[..30]).is_err());
    }
}
