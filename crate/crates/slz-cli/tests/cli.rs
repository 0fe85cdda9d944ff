use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use slz::container::write_packed2;
use slz::lz77::Factorization;

fn slz77(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slz77")).args(args).output().expect("binary runs")
}

fn file(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, bytes).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().expect("stderr line")).expect("stderr is JSON")
}

#[test]
fn factorize_aaaa() {
    let dir = tempfile::tempdir().unwrap();
    let f = file(dir.path(), "a.txt", b"aaaa");
    let o = slz77(&["factorize", "--variant", "overlap", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L\ta\nC\t3\t1\n");
    let stats = stderr_json(&o);
    assert_eq!(stats["n"], 4);
    assert_eq!(stats["z"], 2);
    assert!(stats["ratio"].as_f64().unwrap() > 0.0);
    assert!(stats["seconds"].is_number());
}

#[test]
fn lpf_rows() {
    let dir = tempfile::tempdir().unwrap();
    let abab = file(dir.path(), "b.txt", b"abab");
    let o = slz77(&["lpf", s(&abab)]);
    assert_eq!(stdout(&o), "1\t0\ta\n2\t0\tb\n3\t2\t1\n4\t1\t2\n");
    let c = file(dir.path(), "c.txt", b"c");
    assert_eq!(stdout(&slz77(&["lpf", s(&c)])), "1\t0\tc\n");
    let aaaa = file(dir.path(), "a.txt", b"aaaa");
    let o = slz77(&["lpf", "--variant", "nonoverlap", "--verify", s(&aaaa)]);
    let lens: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    assert_eq!(lens, ["0", "1", "2", "1"]);
    assert_eq!(stderr_json(&o)["verify"]["method"], "full");
}

#[test]
fn errors_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = file(dir.path(), "e.txt", b"");
    let o = slz77(&["factorize", s(&empty)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty input"));
    let missing = dir.path().join("missing");
    assert_eq!(slz77(&["factorize", s(&missing)]).status.code(), Some(2));
    assert_eq!(slz77(&["bench", s(&missing)]).status.code(), Some(2));
    // rejected before the (missing) file is touched
    let o = slz77(&["factorize", "--packed", "--sigma", "8", s(&missing)]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds 4"));
    assert_eq!(slz77(&["factorize", "--tau", "0", s(&missing)]).status.code(), Some(2));
    assert_eq!(slz77(&["factorize", "--variant", "sideways", s(&missing)]).status.code(), Some(2));
    let abc = file(dir.path(), "abc.txt", b"abc");
    let o = slz77(&["factorize", "--sigma", "2", s(&abc)]);
    assert_eq!(o.status.code(), Some(2));
    let junk = file(dir.path(), "junk.tsv", b"X\t1\n");
    assert_eq!(slz77(&["decode", s(&junk)]).status.code(), Some(2));
}

#[test]
fn verify_reports_both_variants() {
    let dir = tempfile::tempdir().unwrap();
    let t = file(dir.path(), "t.txt", b"abracadabra");
    let o = slz77(&["verify", s(&t)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ok"], true);
    assert_eq!(report["results"].as_array().unwrap().len(), 2);
}

#[test]
fn round_trips_through_decode() {
    let dir = tempfile::tempdir().unwrap();
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let mut inputs: Vec<(String, Vec<u8>)> = ["README.md", "Cargo.toml", "crates/slz/src/lpf.rs"]
        .iter()
        .filter_map(|name| std::fs::read(root.join(name)).ok().map(|b| (name.replace('/', "_"), b)))
        .collect();
    inputs.push(("binary".into(), (0..5000u32).map(|i| b"01"[(i * i % 7 % 2) as usize]).collect()));
    inputs.push(("bytes".into(), (0..3000u32).map(|i| (i * 37 % 256) as u8).collect()));
    inputs.push(("runs".into(), b"ab".repeat(400)));
    for (name, bytes) in inputs {
        let src = file(dir.path(), &name, &bytes);
        for variant in ["overlap", "nonoverlap"] {
            for format in ["tsv", "bin"] {
                let dump = dir.path().join(format!("{name}.{variant}.{format}"));
                let back = dir.path().join(format!("{name}.{variant}.{format}.out"));
                let o = slz77(&["factorize", "--variant", variant, "--format", format, "--verify", "-o", s(&dump), s(&src)]);
                assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
                assert_eq!(slz77(&["decode", s(&dump), "-o", s(&back)]).status.code(), Some(0));
                assert_eq!(std::fs::read(&back).unwrap(), bytes, "{name} {variant} {format}");
            }
        }
    }
}

#[test]
fn packed_binary_input() {
    let dir = tempfile::tempdir().unwrap();
    let sym: Vec<u32> = (0..3000u32).map(|i| i.count_ones() % 2).collect();
    let packed = file(dir.path(), "t.slz2", &write_packed2(&sym).unwrap());
    let dump = dir.path().join("t.bin");
    let o = slz77(&["factorize", "--packed", "--sigma", "2", "--format", "bin", "--verify", "-o", s(&dump), s(&packed)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stats = stderr_json(&o);
    assert_eq!(stats["mode"], "full");
    let f = Factorization::from_binary(&std::fs::read(&dump).unwrap()).unwrap();
    assert_eq!(f.decode().unwrap(), sym);
    let back = dir.path().join("back.slz2");
    assert_eq!(slz77(&["decode", "--packed", s(&dump), "-o", s(&back)]).status.code(), Some(0));
    assert_eq!(std::fs::read(&back).unwrap(), std::fs::read(&packed).unwrap());
}

#[test]
fn compacted_alphabet_keeps_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let t = file(dir.path(), "bits.txt", b"0110100110010110");
    let o = slz77(&["factorize", "--sigma", "2", "--tau", "1", s(&t)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("L\t0\nL\t1\n"));
}

#[test]
fn bench_reports_samples() {
    let dir = tempfile::tempdir().unwrap();
    let t = file(dir.path(), "t.txt", &b"the cat sat on the mat. ".repeat(50));
    let o = slz77(&["bench", "--reps", "3", s(&t)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["reps"], 3);
    assert_eq!(report["samples"].as_array().unwrap().len(), 3);
    for key in ["core_s", "nonperiodic_s", "periodic_s", "lpf_s", "throughput_mb_s", "query_p99_us"] {
        assert!(report["samples"][0][key].is_number(), "{key}");
    }
    assert!(report["summary"]["factorize_s"]["median"].is_number());
}

#[test]
fn inspect_saves_and_loads() {
    let dir = tempfile::tempdir().unwrap();
    let t = file(dir.path(), "t.txt", &b"0100101001001010010100100101001001".repeat(4));
    let idx = dir.path().join("t.slzix");
    let o = slz77(&["inspect", "--sigma", "2", "--tau", "3", "--save", s(&idx), s(&t)]);
    assert_eq!(o.status.code(), Some(0));
    let built: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let o = slz77(&["inspect", s(&idx)]);
    let loaded: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(loaded["source"], "index");
    for key in ["n", "sigma", "mode", "tau", "runs", "sync_size", "bmin_ones", "serialized_bytes"] {
        assert_eq!(built[key], loaded[key], "{key}");
    }
}
