use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use latcalc_bench::{expressions, tuple};
use latcalc_core::calculus::{apply_calculus, CalculusInstance};
use latcalc_core::growth::{box_sup_bound, DEFAULT_NODE_BUDGET};
use latcalc_core::interval::IntervalBox;
use latcalc_core::models::Pointwise;
use latcalc_core::rational::ratio;
use latcalc_core::parse;

fn eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval");
    for depth in [4, 8] {
        let es = expressions(3, depth, 64, 1);
        let t = tuple(1, 3, 2).remove(0);
        group.bench_with_input(BenchmarkId::from_parameter(depth), &es, |b, es| {
            b.iter(|| es.iter().map(|e| e.eval(black_box(&t))).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn sup(c: &mut Criterion) {
    let mut group = c.benchmark_group("box_sup_bound");
    group.sample_size(10);
    let quad = parse("x1 * (1 - x1)", 1).unwrap();
    let cube = IntervalBox::unit_cube(1);
    for den in [100, 1000] {
        let tol = ratio(1, den);
        group.bench_with_input(BenchmarkId::new("quadratic", den), &tol, |b, tol| {
            b.iter(|| box_sup_bound(&quad, &cube, tol, DEFAULT_NODE_BUDGET).unwrap())
        });
    }
    let hat = parse("max(min(x1, x2), -abs(x1 - 2 * x2))", 2).unwrap();
    let square = IntervalBox::parse("-1,1;-1,1").unwrap();
    let tol = ratio(1, 100);
    group.bench_function("lattice-linear-2d", |b| {
        b.iter(|| box_sup_bound(&hat, &square, &tol, DEFAULT_NODE_BUDGET).unwrap())
    });
    group.finish();
}

fn calculus(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_calculus");
    for k in [4, 8] {
        let model = Pointwise::new(k).unwrap();
        let es = expressions(3, 8, 64, 3);
        let inst = CalculusInstance::new(&model, tuple(3, k, 4)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &es, |b, es| {
            b.iter(|| {
                for e in es {
                    black_box(apply_calculus(e, &inst).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, eval, sup, calculus);
criterion_main!(benches);
