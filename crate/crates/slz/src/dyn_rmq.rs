//! Small-universe dynamic sets: predecessor/successor over `[0..h)` packed in
//! a few words, and the narrow-range-max staircase built on top of it.

use crate::error::{Error, Result};

/// Predecessor/successor set over keys `[0..h)` with a value per key.
#[derive(Clone, Debug)]
pub struct SmallPredSet {
    h: usize,
    mask: Vec<u64>,
    values: Vec<u64>,
}

impl SmallPredSet {
    pub fn new(h: usize) -> Self {
        SmallPredSet { h, mask: vec![0; h.div_ceil(64).max(1)], values: vec![0; h] }
    }

    pub fn universe(&self) -> usize {
        self.h
    }

    pub fn contains(&self, key: usize) -> bool {
        key < self.h && (self.mask[key >> 6] >> (key & 63)) & 1 == 1
    }

    pub fn insert(&mut self, key: usize, value: u64) -> Result<()> {
        if key >= self.h || self.contains(key) {
            return Err(Error::Contract(format!("insert of key {key} (present or outside [0..{}))", self.h)));
        }
        self.mask[key >> 6] |= 1 << (key & 63);
        self.values[key] = value;
        Ok(())
    }

    pub fn delete(&mut self, key: usize) -> Result<()> {
        if !self.contains(key) {
            return Err(Error::Contract(format!("delete of missing key {key}")));
        }
        self.mask[key >> 6] &= !(1 << (key & 63));
        Ok(())
    }

    /// Largest key ≤ q with its value, or (−1, 0).
    pub fn predecessor(&self, q: i64) -> (i64, u64) {
        if q < 0 {
            return (-1, 0);
        }
        let q = (q as usize).min(self.h.saturating_sub(1));
        let mut w = q >> 6;
        let mut word = self.mask[w] & (u64::MAX >> (63 - (q & 63)));
        loop {
            if word != 0 {
                let k = w * 64 + 63 - word.leading_zeros() as usize;
                return (k as i64, self.values[k]);
            }
            if w == 0 {
                return (-1, 0);
            }
            w -= 1;
            word = self.mask[w];
        }
    }

    /// Smallest key ≥ q with its value, or (h, 0).
    pub fn successor(&self, q: usize) -> (usize, u64) {
        if q >= self.h {
            return (self.h, 0);
        }
        let mut w = q >> 6;
        let mut word = self.mask[w] & (u64::MAX << (q & 63));
        loop {
            if word != 0 {
                let k = w * 64 + word.trailing_zeros() as usize;
                return (k, self.values[k]);
            }
            w += 1;
            if w == self.mask.len() {
                return (self.h, 0);
            }
            word = self.mask[w];
        }
    }
}

/// Maintains max{y : (x, y) inserted, x ≥ q} under insertions, keeping only
/// the non-dominated pairs.
#[derive(Clone, Debug)]
pub struct NarrowRangeMax {
    set: SmallPredSet,
    inserted: usize,
    pruned: usize,
}

impl NarrowRangeMax {
    pub fn new(h: usize) -> Self {
        NarrowRangeMax { set: SmallPredSet::new(h), inserted: 0, pruned: 0 }
    }

    pub fn insert(&mut self, x: usize, y: u64) -> Result<()> {
        if x >= self.set.h || y == 0 {
            return Err(Error::Parameter(format!("narrow-range pair ({x},{y}) outside domain")));
        }
        self.inserted += 1;
        // dominated by an existing pair with x' ≥ x
        if self.query(x) >= y {
            return Ok(());
        }
        // drop pairs with x' ≤ x and y' ≤ y; they sit directly left of x
        loop {
            let (k, v) = self.set.predecessor(x as i64);
            if k < 0 || v > y {
                break;
            }
            self.set.delete(k as usize)?;
            self.pruned += 1;
        }
        self.set.insert(x, y)
    }

    pub fn query(&self, q: usize) -> u64 {
        self.set.successor(q).1
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pruned(&self) -> usize {
        self.pruned
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pred_examples() {
        let mut s = SmallPredSet::new(10);
        s.insert(3, 7).unwrap();
        assert_eq!(s.predecessor(5), (3, 7));
        assert_eq!(s.successor(4), (10, 0));
        assert!(s.insert(3, 1).is_err());
        s.delete(3).unwrap();
        assert_eq!(s.predecessor(3), (-1, 0));
        assert!(s.delete(3).is_err());
    }

    #[test]
    fn nrm_examples() {
        let mut m = NarrowRangeMax::new(10);
        m.insert(3, 10).unwrap();
        m.insert(5, 7).unwrap();
        assert_eq!(m.query(4), 7);
        assert_eq!(m.query(6), 0);
        m.insert(5, 12).unwrap_or(());
        assert_eq!(m.query(4), 12);
        assert_eq!(m.query(0), 12);
        assert_eq!(m.pruned(), 2);
    }
}
