use proptest::prelude::*;
use slz::sync_set::{in_r, r_mask, SyncSet};
use slz::text::{PackedText, SuffixScaffold};
use slz_oracle::{self as oracle, gen, sync};

fn check(sym: &[u32], sigma: u32, tau: usize) -> Option<f64> {
    let text = PackedText::new(sym, sigma, true).unwrap();
    let t = oracle::with_sentinel(sym, sigma);
    let n = t.len();
    if 3 * tau - 1 > n {
        return None;
    }
    let sa = SuffixScaffold::build(&text).unwrap();
    let set = SyncSet::build(&text, &sa, tau).unwrap();
    let pos: Vec<usize> = set.positions().iter().map(|&p| p as usize).collect();
    assert!(sync::in_range(&t, tau, &pos));
    assert!(sync::consistent(&t, tau, &pos), "consistency τ={tau}");
    assert!(sync::dense(&t, tau, &pos), "density τ={tau}");
    assert!(*pos.last().unwrap() + 3 * tau >= n + 2);
    let rmask = oracle::periodic::r_mask(&t, tau);
    let r = r_mask(&text, tau);
    for j in 1..=n + 2 - 3 * tau {
        assert_eq!(in_r(&text, tau, j).unwrap(), rmask[j]);
        assert_eq!(r.get(j), rmask[j]);
        if !rmask[j] {
            let s = set.successor(j).unwrap();
            assert!(s >= j && s - j < tau && pos.binary_search(&s).is_ok());
            assert!(pos.iter().all(|&p| p < j || p >= s));
        }
    }
    let lex = set.lex_sorted();
    assert!(lex.windows(2).all(|w| t[w[0] as usize - 1..] < t[w[1] as usize - 1..]));
    Some(pos.len() as f64 * tau as f64 / n as f64)
}

#[test]
fn corpus_satisfies_contract() {
    let mut worst: f64 = 0.0;
    for s in gen::corpus(11, 200, 2000) {
        for tau in [1, 2, 3, 4, 8] {
            if let Some(c) = check(&s.text, s.sigma, tau) {
                assert!(c <= 8.0, "{}: |S|·τ/n = {c}", s.name);
                worst = worst.max(c);
            }
        }
    }
    eprintln!("max |S|·τ/n = {worst:.3}");
}

#[test]
fn adversarial_texts() {
    for tau in [2, 3, 4, 8] {
        check(&gen::unary(500), 2, tau);
        check(&gen::fibonacci(700), 2, tau);
        check(&gen::thue_morse(512), 2, tau);
        check(&gen::de_bruijn(2, 8), 2, tau);
    }
}

#[test]
fn examples() {
    let text = PackedText::new(&[0, 0, 0, 0, 0, 0, 0, 0, 1], 2, true).unwrap();
    assert!(in_r(&text, 3, 1).unwrap());
    let sa = SuffixScaffold::build(&text).unwrap();
    let set = SyncSet::build(&text, &sa, 1).unwrap();
    assert_eq!(set.len(), text.n_total() - 1);
    assert_eq!(set.successor(3).unwrap(), 3);
}

proptest! {
    #[test]
    fn random_texts(sym in prop::collection::vec(0u32..3, 1..400), tau in 1usize..7) {
        check(&sym, 3, tau);
    }
}
