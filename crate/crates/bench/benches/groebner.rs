use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use traceideal::catalog::{family, Params};
use traceideal::groebner::buchberger;
use traceideal::trace::trace_ideal_oracle;
use traceideal::{Field, MonomialOrder};
use traceideal_bench::{polys, ring};

fn cyclic4(c: &mut Criterion) {
    let r = ring(&["a", "b", "c", "d"], Field::Rational);
    let gens = polys(
        &r,
        &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"],
    );
    c.bench_function("cyclic4 grevlex", |b| {
        b.iter(|| buchberger(black_box(&gens), MonomialOrder::GrevLex))
    });
    let r = ring(&["a", "b", "c", "d"], Field::prime(32003).unwrap());
    let gens = polys(
        &r,
        &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"],
    );
    c.bench_function("cyclic4 grevlex mod p", |b| {
        b.iter(|| buchberger(black_box(&gens), MonomialOrder::GrevLex))
    });
}

fn oracle(c: &mut Criterion) {
    let inst = family("E8").unwrap().instantiate(&Params::none(), None).unwrap();
    let widest = inst
        .modules
        .iter()
        .max_by_key(|m| m.zform().map_or(0, |z| z.rank()))
        .unwrap();
    let pres = widest.module.presentation(&inst.ctx).unwrap();
    c.bench_function("E8 widest module oracle", |b| {
        b.iter(|| trace_ideal_oracle(black_box(&pres)).unwrap())
    });
}

fn mcm(c: &mut Criterion) {
    let inst = family("Dn-dim2")
        .unwrap()
        .instantiate(&Params::single("n", 8), None)
        .unwrap();
    c.bench_function("D8 mcm test ideal", |b| b.iter(|| inst.mcm_test_ideal().unwrap()));
}

criterion_group!(benches, cyclic4, oracle, mcm);
criterion_main!(benches);
