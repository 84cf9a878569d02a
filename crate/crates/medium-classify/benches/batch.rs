use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use medium_classify::{
    classify_batch, classify_batch_sequential, random_jacobian, random_params, realize, MetaclassId, DEFAULT_SEPARATION,
    DEFAULT_TOL,
};
use medium_exact::Mat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn inputs(n: usize) -> Vec<Mat<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ids: Vec<MetaclassId> = MetaclassId::all().collect();
    (0..n)
        .map(|k| {
            let id = ids[k % ids.len()];
            let p = random_params(id, &mut rng, DEFAULT_SEPARATION);
            let j = random_jacobian(&mut rng, 10.0);
            realize(id, &p, 1, Some(&j), DEFAULT_SEPARATION).unwrap().to_f64()
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_batch");
    group.sample_size(10);
    for n in [23, 230] {
        let data = inputs(n);
        group.bench_with_input(BenchmarkId::new("parallel", n), &data, |b, d| b.iter(|| classify_batch(d, DEFAULT_TOL)));
        group.bench_with_input(BenchmarkId::new("sequential", n), &data, |b, d| {
            b.iter(|| classify_batch_sequential(d, DEFAULT_TOL))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
