use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diffalg::frobenius::acyclicity_report;
use diffalg::kaehler::der_module;
use diffalg::linalg::Matrix;
use diffalg::module::*;
use diffalg::par::Execution;
use diffalg::quotient::QuotientRing;
use diffalg::{Field, PolyRing, Polynomial};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn quotient(field: Field, vars: &[&str], weights: Vec<u32>, domain: bool, gens: impl Fn(&[Polynomial]) -> Vec<Polynomial>) -> Arc<QuotientRing> {
    let s = PolyRing::weighted(field, vars.iter().map(|v| v.to_string()).collect(), weights).unwrap();
    let v: Vec<Polynomial> = (0..vars.len()).map(|i| Polynomial::var(&s, i)).collect();
    if domain {
        QuotientRing::domain(&s, gens(&v)).unwrap()
    } else {
        QuotientRing::new(&s, gens(&v)).unwrap()
    }
}

// dense matrix over F_p with entries from a quadratic residue pattern
fn dense(field: Field, n: usize) -> Matrix {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| field.from_i64(((i * 31 + j * 17) * (i + 3 * j + 1) % 1009) as i64)).collect())
        .collect();
    Matrix::from_rows(field, n, rows)
}

fn row_elimination(c: &mut Criterion) {
    let mut g = c.benchmark_group("row_elimination");
    let field = Field::prime(32003).unwrap();
    for n in [64, 192] {
        let m = dense(field, n);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| black_box(m.clone().rref_with(exec)))
            });
        }
    }
    g.finish();
}

fn frobenius_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("frobenius_sweep");
    g.sample_size(20);
    let r = quotient(Field::Prime(3), &["X", "Y"], vec![1, 1], false, |v| vec![v[0].pow(3), v[1].pow(3)]);
    let m = ideal_module(&r, &r.variables(), DEFAULT_DEGREE_BOUND, Backend::Auto).unwrap();
    let id = Complex::new(vec![m.clone(), m.clone()], vec![RMatrix::identity(&r, m.ngens())]).unwrap();
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(acyclicity_report(&id, 3, DEFAULT_DEGREE_BOUND, Backend::Auto, exec).unwrap()))
        });
    }
    g.finish();
}

fn der_routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("der_routes_join");
    g.sample_size(20);
    let rings = [
        ("artinian", quotient(Field::Prime(2), &["X", "Y"], vec![1, 1], false, |v| vec![v[0].pow(4), &v[0].pow(2) * &v[1].pow(2), v[1].pow(4)])),
        ("curve", quotient(Field::Rationals, &["X", "Y", "Z"], vec![3, 4, 5], true, |v| {
            vec![&(&v[0].pow(2) * &v[1]) - &v[2].pow(2), &(&v[0] * &v[2]) - &v[1].pow(2), &(&v[1] * &v[2]) - &v[0].pow(3)]
        })),
    ];
    for (label, r) in &rings {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, label), r, |b, r| {
                b.iter(|| black_box(der_module(r, DEFAULT_DEGREE_BOUND, Backend::Auto, exec).unwrap()))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, row_elimination, frobenius_sweep, der_routes);
criterion_main!(benches);
