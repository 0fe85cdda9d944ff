use proptest::prelude::*;
use slz::lpf::{LpfIndex, Variant};
use slz::lz77::{factorize, Factorization, Phrase};
use slz::minocc::{Config, MinOccIndex};
use slz::text::PackedText;
use slz_oracle::{self as oracle, gen, NaivePhrase, Overlap};

fn parse(sym: &[u32], sigma: u32, v: Variant, config: Config) -> Factorization {
    let text = PackedText::new(sym, sigma, true).unwrap();
    let idx = MinOccIndex::build(text, config).unwrap();
    factorize(&LpfIndex::new(&idx, v).unwrap()).unwrap()
}

fn naive(sym: &[u32], v: Variant) -> Vec<Phrase> {
    let o = if v == Variant::Overlapping { Overlap::Allowed } else { Overlap::Forbidden };
    oracle::lz77(sym, o)
        .into_iter()
        .map(|p| match p {
            NaivePhrase::Literal(c) => Phrase::Literal(c),
            NaivePhrase::Copy { len, src } => Phrase::Copy { len, src },
        })
        .collect()
}

#[test]
fn examples() {
    let a = b'a' as u32;
    let b = b'b' as u32;
    let aaaa = vec![a; 4];
    let cfg = Config::default();
    assert_eq!(
        parse(&aaaa, 256, Variant::Overlapping, cfg).phrases,
        vec![Phrase::Literal(a), Phrase::Copy { len: 3, src: 1 }]
    );
    assert_eq!(
        parse(&aaaa, 256, Variant::NonOverlapping, cfg).phrases,
        vec![Phrase::Literal(a), Phrase::Copy { len: 1, src: 1 }, Phrase::Copy { len: 2, src: 1 }]
    );
    for v in [Variant::Overlapping, Variant::NonOverlapping] {
        let f = parse(&[a, b, a, b], 256, v, cfg);
        assert_eq!(f.phrases, vec![Phrase::Literal(a), Phrase::Literal(b), Phrase::Copy { len: 2, src: 1 }]);
    }
    let one = parse(&[a], 256, Variant::Overlapping, cfg);
    assert_eq!(one.len(), 1);
    assert_eq!(one.decode().unwrap(), vec![a]);
}

#[test]
fn matches_naive_parser() {
    for (k, s) in gen::corpus(17, 120, 1200).into_iter().enumerate() {
        let tau = if s.sigma <= 4 && k % 3 == 0 { Some(3).filter(|_| s.text.len() >= 8) } else { None };
        let cfg = Config { tau, force_full: k % 2 == 0, ..Config::default() };
        for v in [Variant::Overlapping, Variant::NonOverlapping] {
            let f = parse(&s.text, s.sigma, v, cfg);
            assert_eq!(f.phrases, naive(&s.text, v), "{} {v:?}", s.name);
            assert_eq!(f.decode().unwrap(), s.text);
            assert_eq!(Factorization::from_binary(&f.to_binary()).unwrap().decode().unwrap(), s.text);
            assert_eq!(Factorization::from_tsv(&f.to_tsv()).unwrap().decode().unwrap(), s.text);
        }
    }
}

#[test]
fn unary_ratio_is_tiny() {
    let f = parse(&gen::unary(5000), 2, Variant::Overlapping, Config::default());
    assert_eq!(f.len(), 2);
    assert!(f.ratio(2) < 0.01);
}

#[test]
fn malformed_dumps() {
    assert!(Factorization::from_tsv("L\ta\nC\t3\t2\n").is_err());
    assert!(Factorization::from_tsv("X\t1\n").is_err());
    assert!(Factorization::from_tsv("L\tab\n").is_err());
    assert!(Factorization::from_binary(b"SLZ77v0").is_err());
}

fn greedy_maximal(sym: &[u32], f: &Factorization) -> bool {
    let mut j = 1;
    for ph in &f.phrases {
        if let Phrase::Copy { len, .. } = *ph {
            let l = len + 1;
            if j + l <= sym.len() + 1 {
                let pat = &sym[j - 1..j - 1 + l];
                let ok = (1..j).any(|i| {
                    i + l <= sym.len() + 1
                        && &sym[i - 1..i - 1 + l] == pat
                        && (f.variant == Variant::Overlapping || i + l <= j)
                });
                if ok {
                    return false;
                }
            }
        }
        j += ph.len();
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn round_trip_and_maximality(sym in prop::collection::vec(0u32..4, 1..300), nonov in any::<bool>(), full in any::<bool>()) {
        let v = if nonov { Variant::NonOverlapping } else { Variant::Overlapping };
        let f = parse(&sym, 4, v, Config { force_full: full, ..Config::default() });
        prop_assert_eq!(f.decode().unwrap(), sym.clone());
        prop_assert_eq!(f.phrases.iter().map(Phrase::len).sum::<usize>(), sym.len());
        prop_assert!(greedy_maximal(&sym, &f));
    }
}
