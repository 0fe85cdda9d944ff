use proptest::prelude::*;
use slz::lpf::{BlockSizes, LpfIndex, Variant};
use slz::lz77::Phrase;
use slz::minocc::{Config, MinOccIndex};
use slz::text::PackedText;
use slz_oracle::{self as oracle, gen, Overlap};

fn index(sym: &[u32], sigma: u32, tau: Option<usize>) -> MinOccIndex {
    let text = PackedText::new(sym, sigma, true).unwrap();
    MinOccIndex::build(text, Config { tau, force_full: true, ..Config::default() }).unwrap()
}

fn bytes(s: &str) -> Vec<u32> {
    s.bytes().map(u32::from).collect()
}

fn overlap(v: Variant) -> Overlap {
    match v {
        Variant::Overlapping => Overlap::Allowed,
        Variant::NonOverlapping => Overlap::Forbidden,
    }
}

#[test]
fn examples() {
    let aaaa = index(&bytes("aaaa"), 256, Some(1));
    let lpf = LpfIndex::new(&aaaa, Variant::Overlapping).unwrap();
    assert_eq!(lpf.lpf_array().unwrap(), vec![0, 3, 2, 1]);
    let lpnf = LpfIndex::new(&aaaa, Variant::NonOverlapping).unwrap();
    assert_eq!(lpnf.lpf_array().unwrap(), vec![0, 1, 2, 1]);
    let abab = index(&bytes("abab"), 256, Some(1));
    let lpf = LpfIndex::new(&abab, Variant::Overlapping).unwrap();
    assert_eq!(lpf.lpf_array().unwrap(), vec![0, 0, 2, 1]);
    assert_eq!(lpf.lpf_at(1).unwrap(), Phrase::Literal(b'a' as u32));
    assert_eq!(lpf.lpf_at(2).unwrap(), Phrase::Literal(b'b' as u32));
    assert_eq!(lpf.lpf_at(3).unwrap(), Phrase::Copy { len: 2, src: 1 });
    assert_eq!(lpf.lpf_at(4).unwrap(), Phrase::Copy { len: 1, src: 2 });
    assert!(lpf.lpf_at(0).is_err() && lpf.lpf_at(5).is_err());
}

fn check_full(sym: &[u32], idx: &MinOccIndex, sizes: BlockSizes) {
    for v in [Variant::Overlapping, Variant::NonOverlapping] {
        let lpf = LpfIndex::with_blocks(idx, v, sizes).unwrap();
        let want = oracle::lpf_array(sym, overlap(v));
        let got = lpf.lpf_array().unwrap();
        assert_eq!(got, want, "{v:?} τ={} b={:?}", idx.tau(), lpf.block_sizes());
        for j in 1..=sym.len() {
            let (len, src) = oracle::lpf_at(sym, j, overlap(v));
            match lpf.lpf_at(j).unwrap() {
                Phrase::Literal(c) => assert!(len == 0 && c == sym[j - 1]),
                Phrase::Copy { len: l, src: s } => assert_eq!((l, s), (len, src)),
            }
        }
        let n = sym.len();
        let (_, bp) = lpf.block_sizes();
        assert!(lpf.marked_blocks() * bp <= n + 1, "marked {} b' {bp}", lpf.marked_blocks());
        for j in 2..=n {
            assert!(got[j - 1] + 1 >= got[j - 2]);
            assert!(j + got[j - 1] >= j - 1 + got[j - 2] && j + got[j - 1] <= n + 1);
        }
    }
}

#[test]
fn full_arrays_on_corpus() {
    for (k, s) in gen::corpus(13, 60, 700).into_iter().enumerate() {
        let tau = if s.sigma <= 4 { [None, Some(1), Some(3), Some(6)][k % 4] } else { None };
        let tau = tau.filter(|&t| 3 * t - 1 <= s.text.len() + 1);
        let idx = index(&s.text, s.sigma, tau);
        check_full(&s.text, &idx, BlockSizes::default());
        check_full(&s.text, &idx, BlockSizes { b: Some(4), b_prime: Some(8) });
    }
}

#[test]
fn marked_blocks_are_used() {
    // a long repeat right after a fresh prefix forces a jump in A
    let mut r = gen::rng(2);
    let head = gen::random(&mut r, 200, 2);
    let sym = [head.clone(), head.clone(), head].concat();
    let idx = index(&sym, 2, Some(3));
    let lpf = LpfIndex::with_blocks(&idx, Variant::Overlapping, BlockSizes { b: Some(5), b_prime: Some(12) }).unwrap();
    assert!(lpf.marked_blocks() > 0);
    check_full(&sym, &idx, BlockSizes { b: Some(5), b_prime: Some(12) });
}

#[test]
fn bad_block_sizes() {
    let idx = index(&bytes("abcabc"), 256, None);
    assert!(LpfIndex::with_blocks(&idx, Variant::Overlapping, BlockSizes { b: Some(0), b_prime: None }).is_err());
    assert!(LpfIndex::with_blocks(&idx, Variant::Overlapping, BlockSizes { b: Some(4), b_prime: Some(4) }).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lpf_matches_oracle(sym in prop::collection::vec(0u32..3, 1..160), tau in 1usize..5, b in 2usize..9) {
        prop_assume!(3 * tau - 1 <= sym.len() + 1);
        let idx = index(&sym, 3, Some(tau));
        for v in [Variant::Overlapping, Variant::NonOverlapping] {
            let lpf = LpfIndex::with_blocks(&idx, v, BlockSizes { b: Some(b), b_prime: Some(2 * b) }).unwrap();
            prop_assert_eq!(lpf.lpf_array().unwrap(), oracle::lpf_array(&sym, overlap(v)));
        }
    }
}
