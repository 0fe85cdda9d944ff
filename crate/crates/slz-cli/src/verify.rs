//! Comparison with the brute-force parser.
//!
//! Inputs up to `FULL_LIMIT` symbols are compared in full. Longer ones are
//! decoded and checked at evenly spaced phrase starts (or positions), with the
//! number of samples shrinking as n grows.

use serde::Serialize;
use slz::lpf::Variant;
use slz::lz77::{Factorization, Phrase};
use slz_oracle::{self as oracle, NaivePhrase, Overlap};

use crate::CliError;

pub const FULL_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub method: &'static str,
    pub checked: usize,
}

pub fn overlap(v: Variant) -> Overlap {
    match v {
        Variant::Overlapping => Overlap::Allowed,
        Variant::NonOverlapping => Overlap::Forbidden,
    }
}

fn samples(n: usize) -> usize {
    (400_000_000 / n.max(1)).clamp(8, 1000)
}

fn agrees(ph: &Phrase, (len, src): (usize, usize), sym: u32) -> bool {
    match *ph {
        Phrase::Literal(c) => len == 0 && c == sym,
        Phrase::Copy { len: l, src: s } => l == len && s == src,
    }
}

pub fn factorization(sym: &[u32], f: &Factorization) -> Result<Verdict, CliError> {
    if f.decode().map_err(|e| CliError::Mismatch(format!("dump invalid: {e}")))? != sym {
        return Err(CliError::Mismatch("decoded phrases differ from the input".into()));
    }
    if sym.len() <= FULL_LIMIT {
        let want = oracle::lz77(sym, overlap(f.variant));
        for (k, (a, b)) in f.phrases.iter().zip(&want).enumerate() {
            let same = match (*a, *b) {
                (Phrase::Literal(x), NaivePhrase::Literal(y)) => x == y,
                (Phrase::Copy { len, src }, NaivePhrase::Copy { len: l, src: s }) => len == l && src == s,
                _ => false,
            };
            if !same {
                return Err(CliError::Mismatch(format!("phrase {}: {a:?} vs naive {b:?}", k + 1)));
            }
        }
        if want.len() != f.len() {
            return Err(CliError::Mismatch(format!("{} phrases vs naive {}", f.len(), want.len())));
        }
        return Ok(Verdict { method: "full", checked: want.len() });
    }
    let starts: Vec<(usize, &Phrase)> = f
        .phrases
        .iter()
        .scan(1, |j, ph| {
            let at = *j;
            *j += ph.len();
            Some((at, ph))
        })
        .collect();
    let k = samples(sym.len()).min(starts.len());
    for i in 0..k {
        let (j, ph) = starts[i * starts.len() / k];
        let want = oracle::lpf_at(sym, j, overlap(f.variant));
        if !agrees(ph, want, sym[j - 1]) {
            return Err(CliError::Mismatch(format!("phrase at {j}: {ph:?} vs naive {want:?}")));
        }
    }
    Ok(Verdict { method: "sampled", checked: k })
}

/// `lpf` holds (j, phrase) rows for j = 1..=n.
pub fn lpf(sym: &[u32], variant: Variant, rows: &[Phrase]) -> Result<Verdict, CliError> {
    let n = sym.len();
    let positions: Vec<usize> = if n <= FULL_LIMIT / 16 {
        (1..=n).collect()
    } else {
        let k = samples(n).min(n);
        (0..k).map(|i| 1 + i * n / k).collect()
    };
    for &j in &positions {
        let want = oracle::lpf_at(sym, j, overlap(variant));
        if !agrees(&rows[j - 1], want, sym[j - 1]) {
            return Err(CliError::Mismatch(format!("position {j}: {:?} vs naive {want:?}", rows[j - 1])));
        }
    }
    Ok(Verdict { method: if positions.len() == n { "full" } else { "sampled" }, checked: positions.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_greedy_parse_is_a_mismatch() {
        let sym = [0, 0, 0, 0];
        let lazy = Factorization {
            variant: Variant::Overlapping,
            n: 4,
            phrases: vec![Phrase::Literal(0), Phrase::Copy { len: 1, src: 1 }, Phrase::Copy { len: 2, src: 1 }],
        };
        let err = factorization(&sym, &lazy).unwrap_err();
        assert!(matches!(err, CliError::Mismatch(_)));
        assert_eq!(err.exit_code(), 1);
        let greedy = Factorization { phrases: vec![Phrase::Literal(0), Phrase::Copy { len: 3, src: 1 }], ..lazy };
        assert_eq!(factorization(&sym, &greedy).unwrap().method, "full");
        let rows = [Phrase::Literal(0), Phrase::Copy { len: 3, src: 1 }, Phrase::Copy { len: 1, src: 1 }, Phrase::Copy { len: 1, src: 1 }];
        assert!(matches!(lpf(&sym, Variant::Overlapping, &rows), Err(CliError::Mismatch(_))));
    }
}
