use criterion::{criterion_group, criterion_main, Criterion};
use gbg_core::{corpus, cube, grapes, icomplex, products, ud};

fn bench_build_ud(c: &mut Criterion) {
    let k33 = corpus::complete_bipartite(3, 3);
    c.bench_function("build_ud2_k33", |b| {
        b.iter(|| ud::build_ud(std::hint::black_box(&k33), 2).unwrap())
    });
    let k24 = corpus::complete_bipartite(2, 4);
    c.bench_function("build_ud3_k24", |b| {
        b.iter(|| ud::build_ud(std::hint::black_box(&k24), 3).unwrap())
    });
}

fn bench_homology(c: &mut Criterion) {
    let k33 = corpus::complete_bipartite(3, 3);
    let cs = ud::build_ud(&k33, 2).unwrap();
    c.bench_function("homology_ud2_k33", |b| {
        b.iter(|| cube::homology_summary(std::hint::black_box(&cs.complex)).unwrap())
    });
}

fn bench_maximal_products(c: &mut Criterion) {
    let sun = corpus::sun();
    c.bench_function("maximal_products_sun", |b| {
        b.iter(|| products::maximal_products(std::hint::black_box(&sun)).unwrap())
    });
    let dumbbell = corpus::dumbbell();
    c.bench_function("up2_dumbbell", |b| {
        b.iter(|| products::build_up2(std::hint::black_box(&dumbbell)).unwrap())
    });
}

fn bench_icomplex(c: &mut Criterion) {
    let grape = corpus::example_grape_normal();
    c.bench_function("grape_icomplex_wide", |b| {
        b.iter(|| grapes::grape_icomplex(std::hint::black_box(&grape)).unwrap())
    });
    let ambient = corpus::s3_grape().materialize();
    c.bench_function("intersection_complex_s3", |b| {
        b.iter(|| icomplex::build_intersection_complex(std::hint::black_box(&ambient)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_build_ud,
    bench_homology,
    bench_maximal_products,
    bench_icomplex
);
criterion_main!(benches);
