use criterion::{black_box, criterion_group, criterion_main, Criterion};
use wavefactor_core::{
    autocorrelation, box_expand, curlicue_series, decompose_real_time, decomposition_sum,
    default_m_range, factor, gauss_sum_table, propagate_box, uniform_grid, FactorMethod,
    FactorOptions, PropagatorConfig, RevivalParams, WavePacket, WeightTable,
};

fn bench_gauss_sum_table(c: &mut Criterion) {
    c.bench_function("gauss_sum_table r=187", |b| {
        b.iter(|| gauss_sum_table(black_box(187), black_box(1)).unwrap())
    });
    c.bench_function("gauss_sum_table r=1309", |b| {
        b.iter(|| gauss_sum_table(black_box(1309), black_box(1)).unwrap())
    });
}

fn bench_curlicue(c: &mut Criterion) {
    c.bench_function("curlicue_series N=1309", |b| {
        b.iter(|| curlicue_series(black_box(1309)).unwrap())
    });
}

fn bench_autocorrelation(c: &mut Criterion) {
    let params = RevivalParams::new(1309, WeightTable::gaussian(250.0).unwrap()).unwrap();
    c.bench_function("autocorrelation N=1309 dn=250", |b| {
        b.iter(|| autocorrelation(black_box(&params), black_box(7.123)))
    });
}

fn bench_decomposition(c: &mut Criterion) {
    let params = RevivalParams::new(187, WeightTable::gaussian(40.0).unwrap()).unwrap();
    let (frac, dt) = decompose_real_time(11.3, 187, 50).unwrap();
    c.bench_function("decomposition_sum N=187", |b| {
        b.iter(|| {
            decomposition_sum(
                black_box(&params),
                black_box(&frac),
                black_box(dt),
                default_m_range(&params, &frac, dt),
            )
        })
    });
}

fn bench_box_propagation(c: &mut Criterion) {
    let config = PropagatorConfig::particle_box(1.0, 128).unwrap();
    let grid = uniform_grid(0.0, 1.0, 1025);
    let packet = WavePacket::gaussian(&grid, 0.5, 0.05).unwrap();
    let coeffs = box_expand(&packet, &config).unwrap();
    let x_grid = uniform_grid(0.0, 1.0, 256);
    c.bench_function("propagate_box 128 modes x 256 points", |b| {
        b.iter(|| propagate_box(black_box(&coeffs), black_box(0.37), &config, &x_grid).unwrap())
    });
}

fn bench_factor(c: &mut Criterion) {
    c.bench_function("factor 1309 revival", |b| {
        b.iter(|| {
            factor(
                black_box(1309),
                FactorMethod::Revival,
                &FactorOptions::default(),
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_gauss_sum_table,
    bench_curlicue,
    bench_autocorrelation,
    bench_decomposition,
    bench_box_propagation,
    bench_factor
);
criterion_main!(benches);
