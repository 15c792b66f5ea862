//! Parallel vs sequential comparison for the brute-force hot loops.
//!
//! Requires the `parallel` feature (on by default):
//! `cargo bench -p singleton-lab --bench parallel`.

use criterion::{criterion_group, criterion_main, Criterion};

use singleton_lab::stabilizer::corpus;
use singleton_lab::{gf, qstate, verify};

fn bench_min_distance(c: &mut Criterion) {
    let field = gf::Field::new(2, 4).unwrap(); // GF(16)
    let code = gf::reed_solomon(&field, 16, 5).unwrap();
    let mut g = c.benchmark_group("min_distance/rs_16_5_gf16");
    g.bench_function("parallel", |b| b.iter(|| gf::min_distance(&code).unwrap()));
    g.bench_function("sequential", |b| {
        b.iter(|| gf::min_distance_seq(&code).unwrap())
    });
    g.finish();
}

fn bench_knill_laflamme(c: &mut Criterion) {
    let entry = corpus::five_qubit();
    let mut g = c.benchmark_group("knill_laflamme/five_qubit_d4");
    g.bench_function("parallel", |b| {
        b.iter(|| entry.code.knill_laflamme(4).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| entry.code.knill_laflamme_seq(4).unwrap())
    });
    g.finish();
}

fn bench_avg_block_entropy(c: &mut Criterion) {
    let dm = qstate::random_density(&[2; 8], 64, 7).unwrap();
    let mut g = c.benchmark_group("avg_block_entropy/8_qubits_block4");
    g.sample_size(20);
    g.bench_function("parallel", |b| {
        b.iter(|| qstate::avg_block_entropy(&dm, 4).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| qstate::avg_block_entropy_seq(&dm, 4).unwrap())
    });
    g.finish();
}

fn bench_lemma_fuzz(c: &mut Criterion) {
    let mut g = c.benchmark_group("fuzz/lemma1_50_trials");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| verify::fuzz(1, 50, 512, 3).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| verify::fuzz_seq(1, 50, 512, 3).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_min_distance,
    bench_knill_laflamme,
    bench_avg_block_entropy,
    bench_lemma_fuzz
);
criterion_main!(benches);
