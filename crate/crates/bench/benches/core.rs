use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use zlab_core::chambers::enumerate_chambers;
use zlab_core::cutkosky::{h0_section_count, volume_l_eps};
use zlab_core::scalar::ratio;
use zlab_core::weyl::weyl_group_order;
use zlab_core::{zariski_decompose, SurfaceModel};

fn zariski(c: &mut Criterion) {
    let m = SurfaceModel::del_pezzo(6).unwrap();
    // non-nef: pulls several lines into the negative part
    let d = m.class_from_ints(&[3, 2, 1, -1, -1, -1, 0]).unwrap();
    c.bench_function("zariski_decompose dP6", |b| b.iter(|| zariski_decompose(&m, black_box(&d)).unwrap()));
}

fn chambers(c: &mut Criterion) {
    let m = SurfaceModel::del_pezzo(4).unwrap();
    c.bench_function("enumerate_chambers dP4", |b| b.iter(|| enumerate_chambers(black_box(&m)).unwrap()));
}

fn weyl(c: &mut Criterion) {
    let m = SurfaceModel::del_pezzo(6).unwrap();
    let mut g = c.benchmark_group("weyl");
    g.sample_size(10);
    g.bench_function("group order r=6", |b| b.iter(|| weyl_group_order(black_box(&m), 6).unwrap()));
    g.finish();
}

fn threefold(c: &mut Criterion) {
    let eps = ratio(1, 4);
    c.bench_function("volume_l_eps", |b| b.iter(|| volume_l_eps(black_box(&eps)).unwrap()));
    c.bench_function("h0 k=200", |b| b.iter(|| h0_section_count(black_box(200), &eps).unwrap()));
}

criterion_group!(benches, zariski, chambers, weyl, threefold);
criterion_main!(benches);
