//! Timing report for `slz77 bench`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use serde::Serialize;
use slz::lpf::{LpfIndex, Variant};
use slz::lz77::factorize;
use slz::minocc::{Config, MinOccIndex};
use slz::text::PackedText;

use crate::input::Input;
use crate::CliError;

pub const QUERIES: usize = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub scaffold_s: f64,
    pub core_s: f64,
    pub nonperiodic_s: f64,
    pub periodic_s: f64,
    pub index_s: f64,
    pub lpf_s: f64,
    pub factorize_s: f64,
    pub throughput_mb_s: f64,
    pub z: usize,
    pub query_p50_us: f64,
    pub query_p90_us: f64,
    pub query_p99_us: f64,
    pub query_max_us: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Spread {
    pub min: f64,
    pub median: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub n: usize,
    pub sigma: u32,
    pub mode: String,
    pub tau: usize,
    pub variant: &'static str,
    pub reps: usize,
    pub queries: usize,
    pub samples: Vec<Sample>,
    pub summary: std::collections::BTreeMap<&'static str, Spread>,
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn micros(sorted: &[Duration], p: f64) -> f64 {
    sorted[((sorted.len() - 1) as f64 * p).round() as usize].as_secs_f64() * 1e6
}

fn one(input: &Input, config: Config, variant: Variant, seed: u64) -> Result<(Sample, MinOccIndex), CliError> {
    let start = Instant::now();
    let text = PackedText::new(&input.symbols, input.sigma, true)?;
    let idx = MinOccIndex::build(text, config)?;
    let index_s = secs(start.elapsed());
    let t = idx.build_times();
    let clock = Instant::now();
    let lpf = LpfIndex::new(&idx, variant)?;
    let lpf_s = secs(clock.elapsed());
    let clock = Instant::now();
    let f = factorize(&lpf)?;
    let factorize_s = secs(clock.elapsed());
    let total = secs(start.elapsed());

    let n = idx.text().n_total();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut lat = Vec::with_capacity(QUERIES);
    for _ in 0..QUERIES {
        let j = rng.gen_range(1..=n);
        let len = rng.gen_range(1..=(n + 1 - j).min(1 << 10));
        let clock = Instant::now();
        idx.minocc_window(j, len)?;
        lat.push(clock.elapsed());
    }
    lat.sort();
    let sample = Sample {
        scaffold_s: secs(t.scaffold),
        core_s: secs(t.core),
        nonperiodic_s: secs(t.nonperiodic),
        periodic_s: secs(t.periodic),
        index_s,
        lpf_s,
        factorize_s,
        throughput_mb_s: input.len() as f64 / 1e6 / total,
        z: f.len(),
        query_p50_us: micros(&lat, 0.5),
        query_p90_us: micros(&lat, 0.9),
        query_p99_us: micros(&lat, 0.99),
        query_max_us: micros(&lat, 1.0),
    };
    Ok((sample, idx))
}

pub fn run(input: &Input, config: Config, variant: Variant, reps: usize) -> Result<Report, CliError> {
    let mut samples = Vec::with_capacity(reps);
    let mut last = None;
    for r in 0..reps {
        let (s, idx) = one(input, config, variant, r as u64)?;
        samples.push(s);
        last = Some(idx);
    }
    let idx = last.expect("reps ≥ 1");
    let metric = |f: fn(&Sample) -> f64| {
        let mut v: Vec<f64> = samples.iter().map(f).collect();
        v.sort_by(f64::total_cmp);
        Spread { min: v[0], median: v[v.len() / 2] }
    };
    let summary = [
        ("index_s", metric(|s| s.index_s)),
        ("lpf_s", metric(|s| s.lpf_s)),
        ("factorize_s", metric(|s| s.factorize_s)),
        ("throughput_mb_s", metric(|s| s.throughput_mb_s)),
        ("query_p99_us", metric(|s| s.query_p99_us)),
    ]
    .into_iter()
    .collect();
    Ok(Report {
        n: input.len(),
        sigma: input.sigma,
        mode: format!("{:?}", idx.mode()).to_lowercase(),
        tau: idx.tau(),
        variant: crate::variant_name(variant),
        reps,
        queries: QUERIES,
        samples,
        summary,
    })
}
