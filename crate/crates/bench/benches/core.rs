use criterion::{black_box, criterion_group, criterion_main, Criterion};
use flagcert_bench::fixture;
use flagcert_core::certificates::verify;
use flagcert_core::constructions::{blowup_density, profile_table, BlowupModel};
use flagcert_core::exactmath::{int, rat};
use flagcert_core::flagalgebra::{flag_product, Flag};
use flagcert_core::oracle::counting_identity_check;
use flagcert_core::smallgraph::{canonical_code, count_induced, enumerate_graphs, named};
use flagcert_core::SmallGraph;

fn graphs(c: &mut Criterion) {
    let g = SmallGraph::from_pair_code("122121212221211122212121212221111222").unwrap();
    c.bench_function("canonical_code/9", |b| b.iter(|| canonical_code(black_box(&g))));
    let classes = enumerate_graphs(7).unwrap();
    let h = named::k221();
    c.bench_function("count_induced/k221 over F7", |b| {
        b.iter(|| classes.iter().map(|g| count_induced(&h, g)).sum::<u64>())
    });
    c.bench_function("counting_identity/7", |b| b.iter(|| counting_identity_check(black_box(7)).unwrap()));
}

fn algebra(c: &mut Criterion) {
    let f = Flag::new(SmallGraph::from_pair_code("122221").unwrap(), 3).unwrap();
    let g = Flag::new(SmallGraph::from_pair_code("121212").unwrap(), 3).unwrap();
    c.bench_function("flag_product/type 3", |b| b.iter(|| flag_product(black_box(&f), black_box(&g)).unwrap()));
}

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for name in ["k4.cert", "k3.cert", "e074.cert"] {
        let cert = fixture(name);
        group.bench_function(name, |b| b.iter(|| verify(black_box(&cert), None).unwrap()));
    }
    let cert = fixture("parametric.cert");
    group.bench_function("parametric.cert", |b| b.iter(|| verify(black_box(&cert), Some(&int(5))).unwrap()));
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let model = BlowupModel::new(
        SmallGraph::complete(5).unwrap(),
        vec![rat(1, 5), rat(1, 5), rat(1, 5), rat(1, 5), rat(1, 5)],
    )
    .unwrap();
    let h = named::k221();
    c.bench_function("blowup_density/K5", |b| b.iter(|| blowup_density(black_box(&model), &h).unwrap()));
    c.bench_function("profile_table/1/300", |b| b.iter(|| profile_table(&int(0), &int(1), &rat(1, 300)).unwrap()));
}

criterion_group!(benches, graphs, algebra, certificates, constructions);
criterion_main!(benches);
