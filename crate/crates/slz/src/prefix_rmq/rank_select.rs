//! Prefix rank/select over fixed-length strings: a wavelet matrix over the
//! MSB-first bit codes of the strings.

use crate::bitpack::{BitBuilder, Bitvector};
use crate::error::{Error, Result};
use crate::text::bits_for;

/// Prefix rank/select interface shared by the base structure and the
/// projected views used inside the combined layer.
pub trait RankSelect {
    /// |{i ≤ j : X is a prefix of S[i]}|.
    fn rank(&self, j: usize, x: &[u32]) -> usize;
    /// Position of the r-th string with prefix X (r ≥ 1, must exist).
    fn select(&self, r: usize, x: &[u32]) -> usize;
}

/// Packs `x` MSB-first at `bits` bits per symbol.
pub fn code_of(x: &[u32], bits: u32) -> u128 {
    x.iter().fold(0u128, |acc, &c| (acc << bits) | c as u128)
}

#[derive(Clone, Debug)]
pub struct PrefixRankSelect {
    m: usize,
    ell: usize,
    bits: u32,
    levels: Vec<Bitvector>,
    zeros: Vec<usize>,
}

impl PrefixRankSelect {
    pub fn new(strings: &[Vec<u32>], ell: usize, sigma: u32) -> Result<Self> {
        if let Some(s) = strings.iter().find(|s| s.len() != ell) {
            return Err(Error::Input(format!("string of length {} in a length-{ell} array", s.len())));
        }
        if let Some(&c) = strings.iter().flatten().find(|&&c| c >= sigma) {
            return Err(Error::Input(format!("symbol {c} outside alphabet of size {sigma}")));
        }
        let bits = bits_for(sigma as u64);
        let codes: Vec<u128> = strings.iter().map(|s| code_of(s, bits)).collect();
        Self::from_codes(&codes, ell, bits)
    }

    pub fn from_codes(codes: &[u128], ell: usize, bits: u32) -> Result<Self> {
        let total = ell * bits as usize;
        if total > 128 {
            return Err(Error::Parameter(format!("strings of {total} bits exceed 128")));
        }
        let m = codes.len();
        let mut cur = codes.to_vec();
        let mut levels = Vec::with_capacity(total);
        let mut zeros = Vec::with_capacity(total);
        for lev in 0..total {
            let shift = total - 1 - lev;
            let mut bb = BitBuilder::with_capacity(m);
            let (mut lo, mut hi) = (Vec::with_capacity(m), Vec::new());
            for &c in &cur {
                let bit = (c >> shift) & 1 == 1;
                bb.push(bit);
                if bit {
                    hi.push(c);
                } else {
                    lo.push(c);
                }
            }
            zeros.push(lo.len());
            lo.extend(hi);
            cur = lo;
            levels.push(bb.finish());
        }
        Ok(PrefixRankSelect { m, ell, bits, levels, zeros })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Start of the X-group and the rank at depth |X|·bits.
    fn descend(&self, j: usize, x: &[u32]) -> (usize, usize) {
        let d = x.len() * self.bits as usize;
        let code = code_of(x, self.bits);
        let (mut s, mut e) = (0, j);
        for lev in 0..d {
            let bv = &self.levels[lev];
            if (code >> (d - 1 - lev)) & 1 == 0 {
                s = bv.rank0(s);
                e = bv.rank0(e);
            } else {
                s = self.zeros[lev] + bv.rank1(s);
                e = self.zeros[lev] + bv.rank1(e);
            }
        }
        (s, e)
    }
}

impl RankSelect for PrefixRankSelect {
    fn rank(&self, j: usize, x: &[u32]) -> usize {
        if x.is_empty() {
            return j;
        }
        let (s, e) = self.descend(j, x);
        e - s
    }

    fn select(&self, r: usize, x: &[u32]) -> usize {
        if x.is_empty() {
            return r;
        }
        let d = x.len() * self.bits as usize;
        let code = code_of(x, self.bits);
        let (s, _) = self.descend(0, x);
        let mut pos = s + r - 1;
        for lev in (0..d).rev() {
            let bv = &self.levels[lev];
            pos = if (code >> (d - 1 - lev)) & 1 == 0 {
                bv.select0(pos + 1).expect("rank within group") - 1
            } else {
                bv.select1(pos - self.zeros[lev] + 1).expect("rank within group") - 1
            };
        }
        pos + 1
    }
}

/// Rank/select on S'_Y (the strings after a fixed prefix Y, restricted to
/// the strings that start with Y), answered through the base structure.
pub struct Projected<'a, R: RankSelect> {
    pub base: &'a R,
    pub y: &'a [u32],
}

impl<R: RankSelect> RankSelect for Projected<'_, R> {
    fn rank(&self, j: usize, z: &[u32]) -> usize {
        if j == 0 {
            return 0;
        }
        let p = self.base.select(j, self.y);
        let yz: Vec<u32> = self.y.iter().chain(z).copied().collect();
        self.base.rank(p, &yz)
    }

    fn select(&self, r: usize, z: &[u32]) -> usize {
        let yz: Vec<u32> = self.y.iter().chain(z).copied().collect();
        let p = self.base.select(r, &yz);
        self.base.rank(p, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = vec![vec![0, 0], vec![0, 1], vec![1, 0]];
        let rs = PrefixRankSelect::new(&s, 2, 2).unwrap();
        assert_eq!(rs.rank(3, &[0]), 2);
        assert_eq!(rs.rank(2, &[]), 2);
        assert_eq!(rs.select(1, &[1]), 3);
        assert_eq!(rs.select(2, &[0]), 2);
        assert_eq!(rs.rank(3, &[0, 1]), 1);
        assert!(PrefixRankSelect::new(&[vec![0], vec![0, 1]], 2, 2).is_err());
    }
}
