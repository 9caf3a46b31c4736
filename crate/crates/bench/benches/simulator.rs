use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dynadisp::adversary::gen_random_with_property;
use dynadisp::harness::{parse_scenario, verify_trace};
use dynadisp::{check_property, Property, Schedule};

fn classifiers(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_property");
    let trace = gen_random_with_property(1, 30, Property::TPath, 4, 0.05)
        .unwrap()
        .prefix(200)
        .unwrap();
    for p in Property::ALL {
        g.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| check_property(black_box(&trace), p, 4).unwrap())
        });
    }
    g.finish();
}

fn engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("run");
    for n in [10usize, 30, 60] {
        let sc = parse_scenario(&format!(
            "n={n} k={n} T=3 seed=3 schedule=random property=t_path algorithm=alg1_explicit placement=colocated"
        ))
        .unwrap();
        g.bench_with_input(BenchmarkId::new("alg1_random", n), &sc, |b, sc| {
            b.iter(|| sc.run().unwrap())
        });
    }
    let adaptive = parse_scenario("n=20 k=19 T=1 adversary=sorted_path_comm algorithm=alg3 communication=f2f max_rounds=200").unwrap();
    g.bench_function("sorted_path_oracle", |b| b.iter(|| adaptive.run().unwrap()));
    g.finish();

    let rep = parse_scenario("n=40 k=40 T=4 seed=9 schedule=random property=t_path algorithm=alg1_explicit").unwrap().run().unwrap();
    c.bench_function("verify_trace", |b| b.iter(|| verify_trace(black_box(&rep.trace))));
}

criterion_group!(benches, classifiers, engine);
criterion_main!(benches);
