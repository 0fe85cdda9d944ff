use rand::Rng;
use slz::container::{read_packed2, write_packed2};
use slz::error::Error;
use slz::minocc::{Config, MinOccIndex};
use slz::prefix_rmq::Layout;
use slz::text::PackedText;
use slz_oracle::gen;

fn replay(a: &MinOccIndex, b: &MinOccIndex, seed: u64, queries: usize) {
    let mut r = gen::rng(seed);
    let n = a.text().n_total();
    for _ in 0..queries {
        let j = r.gen_range(1..=n);
        let len = r.gen_range(1..=(n + 1 - j).min(80));
        assert_eq!(a.minocc_window(j, len).unwrap(), b.minocc_window(j, len).unwrap(), "({j},{len})");
        let pat: Vec<u32> = (0..len).map(|_| r.gen_range(0..a.text().sigma() - 1)).collect();
        assert_eq!(a.minocc_pattern(&pat).ok(), b.minocc_pattern(&pat).ok());
    }
}

#[test]
fn save_load_reproduces_answers() {
    let mut r = gen::rng(1);
    let cases: Vec<(Vec<u32>, u32, Config)> = vec![
        (gen::periodic_rich(&mut r, 3000, 2, 4), 2, Config { tau: Some(6), force_full: true, ..Config::default() }),
        (gen::random(&mut r, 2000, 2), 2, Config { tau: Some(3), force_full: true, memory_relaxed: true, layout: Layout::Combined(Some(2)), ..Config::default() }),
        (gen::random(&mut r, 500, 16), 16, Config::default()),
        (gen::random(&mut r, 900, 16), 16, Config { tau: Some(1), force_full: true, ..Config::default() }),
        (gen::unary(700), 2, Config { tau: Some(9), force_full: true, ..Config::default() }),
    ];
    for (k, (sym, sigma, cfg)) in cases.into_iter().enumerate() {
        let idx = MinOccIndex::build(PackedText::new(&sym, sigma, true).unwrap(), cfg).unwrap();
        let bytes = idx.to_bytes();
        let back = MinOccIndex::from_bytes(&bytes).unwrap();
        assert_eq!(back.to_bytes(), bytes, "case {k} not byte-stable");
        assert_eq!((back.tau(), back.mode(), back.stats()), (idx.tau(), idx.mode(), idx.stats()));
        replay(&idx, &back, k as u64, 2000);
    }
}

#[test]
fn file_round_trip() {
    let sym: Vec<u32> = b"abracadabra abracadabra".iter().map(|&c| c as u32).collect();
    let idx = MinOccIndex::build(PackedText::new(&sym, 256, true).unwrap(), Config::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.slzix");
    idx.save(&path).unwrap();
    let back = MinOccIndex::load(&path).unwrap();
    assert_eq!(back.minocc_window(13, 11).unwrap(), 1);
    assert!(matches!(MinOccIndex::load(dir.path().join("missing")), Err(Error::Io(_))));
}

#[test]
fn corrupt_containers_are_rejected() {
    let mut r = gen::rng(5);
    let sym = gen::periodic_rich(&mut r, 400, 2, 3);
    let idx = MinOccIndex::build(
        PackedText::new(&sym, 2, true).unwrap(),
        Config { tau: Some(3), force_full: true, ..Config::default() },
    )
    .unwrap();
    let bytes = idx.to_bytes();
    assert!(matches!(MinOccIndex::from_bytes(&bytes[..6]), Err(Error::Format(_))));
    assert!(matches!(MinOccIndex::from_bytes(&bytes[..bytes.len() - 3]), Err(Error::Format(_))));
    for _ in 0..300 {
        let mut bad = bytes.clone();
        let i = r.gen_range(7..bad.len());
        bad[i] ^= 1 << r.gen_range(0..8);
        // must not panic; either an error or a loadable index
        let _ = MinOccIndex::from_bytes(&bad);
    }
}

#[test]
fn packed2_texts() {
    let mut r = gen::rng(3);
    for n in [1, 3, 4, 5, 1000] {
        let s = gen::random(&mut r, n, 4);
        assert_eq!(read_packed2(&write_packed2(&s).unwrap()).unwrap(), s);
    }
    assert!(read_packed2(b"SLZ1\0\0\0\0\0\0\0\0").is_err());
}
