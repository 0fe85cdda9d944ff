//! Deterministic text generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random(rng: &mut impl Rng, n: usize, sigma: u32) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..sigma)).collect()
}

pub fn unary(n: usize) -> Vec<u32> {
    vec![0; n]
}

/// Prefix of the infinite Fibonacci word over {0, 1}.
pub fn fibonacci(n: usize) -> Vec<u32> {
    let mut a = vec![0u32];
    let mut b = vec![0u32, 1];
    while b.len() < n {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = b;
        b = next;
    }
    b.truncate(n);
    b
}

pub fn thue_morse(n: usize) -> Vec<u32> {
    (0..n).map(|i| (i as u32).count_ones() & 1).collect()
}

/// De Bruijn sequence B(σ, k), length σ^k.
pub fn de_bruijn(sigma: u32, k: usize) -> Vec<u32> {
    fn db(t: usize, p: usize, k: usize, sigma: u32, a: &mut Vec<u32>, out: &mut Vec<u32>) {
        if t > k {
            if k % p == 0 {
                out.extend_from_slice(&a[1..=p]);
            }
        } else {
            a[t] = a[t - p];
            db(t + 1, p, k, sigma, a, out);
            for c in a[t - p] + 1..sigma {
                a[t] = c;
                db(t + 1, t, k, sigma, a, out);
            }
        }
    }
    let mut a = vec![0u32; k + 1];
    let mut out = Vec::new();
    db(1, 1, k, sigma, &mut a, &mut out);
    out
}

/// Concatenated powers of short random roots.
pub fn run_rich(rng: &mut impl Rng, n: usize, sigma: u32, max_root: usize) -> Vec<u32> {
    let mut t = Vec::with_capacity(n);
    while t.len() < n {
        let p = rng.gen_range(1..=max_root);
        let root = random(rng, p, sigma);
        let reps = rng.gen_range(1..=40 / p + 2);
        for _ in 0..reps {
            t.extend_from_slice(&root);
        }
        if rng.gen_bool(0.3) {
            t.push(rng.gen_range(0..sigma));
        }
    }
    t.truncate(n);
    t
}

/// Few roots reused many times, so equal runs recur across the text.
pub fn periodic_rich(rng: &mut impl Rng, n: usize, sigma: u32, max_root: usize) -> Vec<u32> {
    let roots: Vec<Vec<u32>> = (0..3)
        .map(|_| {
            let p = rng.gen_range(1..=max_root);
            random(rng, p, sigma)
        })
        .collect();
    let mut t = Vec::with_capacity(n);
    while t.len() < n {
        let root = &roots[rng.gen_range(0..roots.len())];
        let len = rng.gen_range(1..=60);
        let skip = rng.gen_range(0..root.len());
        t.extend((0..len).map(|k| root[(skip + k) % root.len()]));
        if rng.gen_bool(0.5) {
            t.push(rng.gen_range(0..sigma));
        }
    }
    t.truncate(n);
    t
}

/// A named text with its alphabet size.
#[derive(Clone, Debug)]
pub struct Sample {
    pub name: String,
    pub sigma: u32,
    pub text: Vec<u32>,
}

/// Mixed corpus of `count` texts with lengths in [1..=max_n].
pub fn corpus(seed: u64, count: usize, max_n: usize) -> Vec<Sample> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=max_n);
            let (name, sigma, text) = match i % 8 {
                0 => ("random2", 2, random(&mut r, n, 2)),
                1 => ("random4", 4, random(&mut r, n, 4)),
                2 => ("random16", 16, random(&mut r, n, 16)),
                3 => ("runrich2", 2, run_rich(&mut r, n, 2, 4)),
                4 => ("periodic3", 3, periodic_rich(&mut r, n, 3, 3)),
                5 => ("fibonacci", 2, fibonacci(n)),
                6 => ("unary", 2, unary(n)),
                _ => ("random256", 256, random(&mut r, n, 256)),
            };
            Sample { name: format!("{name}-{i}"), sigma, text }
        })
        .collect()
}
