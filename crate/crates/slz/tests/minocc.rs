use proptest::prelude::*;
use rand::Rng;
use slz::error::Error;
use slz::minocc::bmin::{build_bmin, build_bmin_direct, compute_emin};
use slz::minocc::periodic::build_runs;
use slz::minocc::{Config, MinOccIndex, Mode};
use slz::text::{PackedText, SuffixScaffold};
use slz_oracle::periodic::{bmin as oracle_bmin, Side};
use slz_oracle::{self as oracle, gen};

fn full(sym: &[u32], sigma: u32, tau: usize) -> Result<MinOccIndex, Error> {
    let text = PackedText::new(sym, sigma, true).unwrap();
    MinOccIndex::build(text, Config { tau: Some(tau), force_full: true, ..Config::default() })
}

fn taus(n: usize, sigma: u32) -> Vec<usize> {
    let bits = 32 - sigma.leading_zeros();
    let key_ok = |t: usize| (6 * t) as f64 * (sigma as f64).log2() < 127.0;
    [1, 2, 3, 4, 6, 9]
        .into_iter()
        .filter(|&t| 3 * t - 1 <= n && 3 * t * bits as usize <= 128 && key_ok(t))
        .collect()
}

fn check_windows(idx: &MinOccIndex, t: &[u32]) {
    let n = t.len();
    for j in 1..=n {
        for len in 1..=n + 1 - j {
            assert_eq!(idx.minocc_window(j, len).unwrap(), oracle::minocc_window(t, j, len), "τ={} ({j},{len})", idx.tau());
        }
    }
}

#[test]
fn exhaustive_windows_on_corpus() {
    for s in gen::corpus(5, 48, 220) {
        let t = oracle::with_sentinel(&s.text, s.sigma);
        for tau in taus(t.len(), s.sigma + 1) {
            let idx = full(&s.text, s.sigma, tau).unwrap_or_else(|e| panic!("{} τ={tau}: {e}", s.name));
            check_windows(&idx, &t);
        }
    }
}

#[test]
fn exhaustive_windows_on_periodic_texts() {
    let mut r = gen::rng(21);
    for i in 0..24 {
        let n = r.gen_range(50..260);
        let sym = if i % 2 == 0 { gen::periodic_rich(&mut r, n, 2, 3) } else { gen::run_rich(&mut r, n, 3, 3) };
        let sigma = if i % 2 == 0 { 2 } else { 3 };
        let t = oracle::with_sentinel(&sym, sigma);
        for tau in [3, 6, 9] {
            if 3 * tau - 1 <= t.len() {
                check_windows(&full(&sym, sigma, tau).unwrap(), &t);
            }
        }
    }
}

#[test]
fn explicit_patterns() {
    let mut r = gen::rng(8);
    for s in gen::corpus(9, 40, 400) {
        let t = oracle::with_sentinel(&s.text, s.sigma);
        for tau in taus(t.len(), s.sigma + 1) {
            let idx = full(&s.text, s.sigma, tau).unwrap();
            for _ in 0..200 {
                let pat: Vec<u32> = if r.gen_bool(0.6) {
                    let j = r.gen_range(1..=s.text.len());
                    let len = r.gen_range(1..=s.text.len() + 1 - j);
                    s.text[j - 1..j - 1 + len].to_vec()
                } else {
                    let len = r.gen_range(1..=3 * tau + 6);
                    (0..len).map(|_| r.gen_range(0..s.sigma)).collect()
                };
                match (idx.minocc_pattern(&pat), oracle::minocc(&t, &pat)) {
                    (Ok(p), Some(q)) => assert_eq!(p, q, "{} τ={tau} {pat:?}", s.name),
                    (Err(Error::NotFound), None) => {}
                    (got, want) => panic!("{} τ={tau} {pat:?}: {got:?} vs {want:?}", s.name),
                }
            }
        }
    }
}

#[test]
fn fallback_mode() {
    let sym: Vec<u32> = (0..40).map(|i| (i * 7 % 16) as u32).collect();
    let text = PackedText::new(&sym, 16, true).unwrap();
    let idx = MinOccIndex::build(text, Config::default()).unwrap();
    assert_eq!(idx.mode(), Mode::Fallback);
    check_windows(&idx, &oracle::with_sentinel(&sym, 16));
    assert!(matches!(idx.minocc_pattern(&[15, 15]), Err(Error::NotFound)));
}

#[test]
fn window_range_errors() {
    let idx = full(&[0, 1, 0, 1], 2, 1).unwrap();
    assert!(matches!(idx.minocc_window(0, 1), Err(Error::Parameter(_))));
    assert!(matches!(idx.minocc_window(2, 0), Err(Error::Parameter(_))));
    assert!(matches!(idx.minocc_window(5, 2), Err(Error::Parameter(_))));
    assert_eq!(idx.minocc_window(5, 1).unwrap(), 5);
}

fn bmin_check(sym: &[u32], sigma: u32, tau: usize) {
    let text = PackedText::new(sym, sigma, true).unwrap();
    let t = oracle::with_sentinel(sym, sigma);
    if 3 * tau - 1 > t.len() {
        return;
    }
    let sa = SuffixScaffold::build(&text).unwrap();
    let runs = build_runs(&text, tau);
    let swept = build_bmin(t.len(), &sa, &runs, tau).unwrap();
    let direct = build_bmin_direct(t.len(), &sa, &runs, tau).unwrap();
    for (side, k) in [(Side::Minus, 0), (Side::Plus, 1)] {
        let want = oracle_bmin(&t, tau, side);
        assert_eq!(direct[k].to_bools(), want, "direct {side:?} τ={tau}");
        assert_eq!(swept[k].to_bools(), want, "sweep {side:?} τ={tau}");
    }
}

#[test]
fn bmin_matches_definition() {
    let mut r = gen::rng(33);
    for i in 0..60 {
        let n = r.gen_range(20..500);
        let sigma = [2, 3, 4][i % 3];
        let sym = gen::periodic_rich(&mut r, n, sigma, 4);
        for tau in [3, 6, 9, 12] {
            bmin_check(&sym, sigma, tau);
        }
    }
    bmin_check(&gen::unary(100), 2, 6);
    bmin_check(&gen::fibonacci(300), 2, 9);
}

#[test]
fn emin_examples() {
    // one run of root "ab": prefix of length min(p, r)
    let mut sym: Vec<u32> = (0..40).map(|i| i % 2).collect();
    sym.extend([0, 0, 1, 1, 1, 0]);
    let text = PackedText::new(&sym, 2, true).unwrap();
    let runs = build_runs(&text, 6);
    assert_eq!(runs.len(), 1);
    let r = runs[0];
    let slack = r.r_end(6) - r.start as usize;
    assert_eq!(compute_emin(&runs, 6).unwrap(), vec![r.start as usize + 2.min(slack)]);
    // the second of two identical runs adds nothing
    let block: Vec<u32> = [vec![0; 20], vec![1, 1]].concat();
    let sym = [block.clone(), block].concat();
    let text = PackedText::new(&sym, 2, true).unwrap();
    let runs = build_runs(&text, 6);
    assert_eq!(runs.len(), 2);
    let e = compute_emin(&runs, 6).unwrap();
    assert_eq!(e[0], runs[0].start as usize + 1);
    assert_eq!(e[1], runs[1].start as usize);
}

#[test]
fn run_bounds() {
    let mut r = gen::rng(4);
    for i in 0..80 {
        let n = r.gen_range(10..3000);
        let sym = if i % 2 == 0 { gen::periodic_rich(&mut r, n, 2, 4) } else { gen::run_rich(&mut r, n, 2, 4) };
        let text = PackedText::new(&sym, 2, true).unwrap();
        let n = text.n_total();
        for tau in [3, 6, 9] {
            let runs = build_runs(&text, tau);
            assert!(runs.len() * tau <= 2 * n, "|R'| = {} τ = {tau} n = {n}", runs.len());
            let total: usize = runs.iter().map(|r| (r.end - r.start) as usize).sum();
            assert!(total <= 2 * n);
            let mask = oracle::periodic::r_mask(&oracle::with_sentinel(&sym, 2), tau);
            let covered: usize = runs.iter().map(|r| r.r_end(tau) - r.start as usize).sum();
            assert_eq!(covered, mask.iter().filter(|&&b| b).count());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn windows_agree(sym in prop::collection::vec(0u32..3, 1..120), tau in 1usize..7, pick in any::<u64>()) {
        let t = oracle::with_sentinel(&sym, 3);
        prop_assume!(3 * tau - 1 <= t.len());
        let idx = full(&sym, 3, tau).unwrap();
        let n = t.len();
        let mut x = pick;
        for _ in 0..200 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = 1 + (x >> 33) as usize % n;
            let len = 1 + (x >> 13) as usize % (n + 1 - j);
            let got = idx.minocc_window(j, len).unwrap();
            prop_assert_eq!(got, oracle::minocc_window(&t, j, len));
            prop_assert!(got <= j);
            if len > 1 {
                prop_assert!(idx.minocc_window(j, len - 1).unwrap() <= got);
            }
        }
    }

    #[test]
    fn bmin_sweep_equals_direct(sym in prop::collection::vec(0u32..2, 1..300), tau in 3usize..10) {
        let text = PackedText::new(&sym, 2, true).unwrap();
        prop_assume!(3 * tau - 1 <= text.n_total());
        let sa = SuffixScaffold::build(&text).unwrap();
        let runs = build_runs(&text, tau);
        let a = build_bmin(text.n_total(), &sa, &runs, tau).unwrap();
        let b = build_bmin_direct(text.n_total(), &sa, &runs, tau).unwrap();
        prop_assert_eq!(a, b);
    }
}
