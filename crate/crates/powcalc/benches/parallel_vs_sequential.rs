//! Compares the rayon-backed entry points against their sequential
//! counterparts on a reduced workload.
//!
//! With the default `parallel` feature the `parallel` benchmark ids exercise
//! the rayon paths; built with `--no-default-features` both ids run the
//! sequential fallback, which is useful for measuring rayon's overhead on
//! this workload shape.

use criterion::{criterion_group, criterion_main, Criterion};
use powcalc::optimizer::{self, presets, DEFAULT_EXACT_DIGITS};
use powcalc::powmodel::MiningDesign;
use powcalc::simulator::{self, Mode, RaceConfig};
use std::hint::black_box;

/// A window of the baseline scenario grid around its optimum, small enough
/// for a benchmark iteration but wide enough to contain feasible tuples.
fn reduced_constants() -> optimizer::ScenarioConstants {
    let mut c = presets::table_constants();
    c.s_l = 12;
    c.s_u = 22;
    c.r_l = 44;
    c.r_u = 52;
    c.d_l = 30;
    c.d_u = 44;
    c
}

fn bench_enumeration(cr: &mut Criterion) {
    let c = reduced_constants();
    let mut group = cr.benchmark_group("enumerate_reduced_grid");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            optimizer::enumerate_optimal_detailed(black_box(&c), DEFAULT_EXACT_DIGITS).unwrap()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| optimizer::enumerate_optimal_seq(black_box(&c), DEFAULT_EXACT_DIGITS).unwrap())
    });
    group.finish();
}

fn bench_campaign(cr: &mut Criterion) {
    let design = MiningDesign::new(8, 16, 12).unwrap();
    let config = RaceConfig::new(design, Mode::GeometricSampling, 97);
    let mut group = cr.benchmark_group("campaign_geometric_2000_races");
    group.bench_function("parallel", |b| {
        b.iter(|| simulator::run_campaign(black_box(&config), 2000).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| simulator::run_campaign_seq(black_box(&config), 2000).unwrap())
    });
    group.finish();

    let design = MiningDesign::new(4, 10, 6).unwrap();
    let config = RaceConfig::new(design, Mode::RealHash, 97);
    let mut group = cr.benchmark_group("campaign_realhash_500_races");
    group.bench_function("parallel", |b| {
        b.iter(|| simulator::run_campaign(black_box(&config), 500).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| simulator::run_campaign_seq(black_box(&config), 500).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_enumeration, bench_campaign);
criterion_main!(benches);
