//! Ext of cyclic modules with inhomogeneous relations over an artinian ring.
//! For `M = R/(f)`, `Ext^1(M, R) = (0 : (0 : f)) / (f)`, which is computed
//! here straight from multiplication matrices.

use std::sync::Arc;

use diffalg::linalg::Matrix;
use diffalg::module::*;
use diffalg::quotient::QuotientRing;
use diffalg::{Field, PolyRing, Polynomial};

fn ring() -> Arc<QuotientRing> {
    let s = PolyRing::new(Field::Prime(2), &["X", "Y"]).unwrap();
    let x = Polynomial::var(&s, 0);
    let y = Polynomial::var(&s, 1);
    QuotientRing::new(&s, vec![x.pow(4), &x.pow(2) * &y.pow(2), y.pow(4)]).unwrap()
}

fn ext1_by_annihilators(r: &QuotientRing, f: &Polynomial) -> usize {
    let field = r.field();
    let n = r.basis().unwrap().len();
    let mult_f = r.multiplication_matrix(f).unwrap();
    let mut rows = Vec::new();
    for a in mult_f.nullspace() {
        let a = r.from_coords(&a).unwrap();
        let t = r.multiplication_matrix(&a).unwrap().transpose();
        rows.extend((0..n).map(|i| t.column(i)));
    }
    let double_ann = n - Matrix::from_rows(field, n, rows).rank();
    double_ann - mult_f.rank()
}

fn sum(r: &QuotientRing, terms: &[Polynomial]) -> Polynomial {
    r.nf(&terms.iter().fold(r.zero(), |a, t| &a + t))
}

#[test]
fn inhomogeneous_cyclic_modules_match_double_annihilator() {
    let r = ring();
    let (x, y) = (r.var(0), r.var(1));
    let cases = vec![
        sum(&r, &[&x.pow(3) * &y, &x * &y.pow(3), x.pow(3), &x.pow(2) * &y, &x * &y.pow(2), y.pow(3), y.pow(2), x.clone(), y.clone()]),
        sum(&r, &[x.clone(), y.pow(2)]),
        sum(&r, &[x.pow(2), y.pow(3)]),
        sum(&r, &[&x * &y, x.pow(3)]),
    ];
    for f in cases {
        let expected = ext1_by_annihilators(&r, &f);
        for backend in [Backend::LinearAlgebra, Backend::Groebner, Backend::Auto] {
            let m = PresentedModule::cokernel(&r, vec![0], RMatrix::from_columns(1, vec![vec![f.clone()]]).unwrap()).unwrap();
            let e = ext(&m, 1, DEFAULT_DEGREE_BOUND, backend).unwrap();
            assert_eq!(e.dim_k(), Some(expected), "f = {f}, {backend:?}");
        }
    }
}

#[test]
fn kernel_into_inhomogeneous_quotient_is_not_split_by_degree() {
    // x + y and y^2 both map into R/(x + y^2); their relations mix degrees
    let r = ring();
    let (x, y) = (r.var(0), r.var(1));
    let f = sum(&r, &[x.clone(), y.pow(2)]);
    let target = PresentedModule::quotient_ring(&r, &[f]);
    let images = RMatrix::from_columns(1, vec![vec![x.clone()], vec![y.pow(2)]]).unwrap();
    let a = kernel(&[1, 2], &images, &target, DEFAULT_DEGREE_BOUND, Backend::LinearAlgebra).unwrap();
    let b = kernel(&[1, 2], &images, &target, DEFAULT_DEGREE_BOUND, Backend::Groebner).unwrap();
    let free = PresentedModule::free(&r, vec![1, 2]);
    let sa = free.quotient_by(&a).unwrap();
    let sb = free.quotient_by(&b).unwrap();
    assert_eq!(sa.dim_k(), sb.dim_k());
    for v in a.iter().chain(&b) {
        let image = sum(&r, &[r.mul(&v[0], &x), r.mul(&v[1], &y.pow(2))]);
        assert!(target.is_zero_element(&[image]));
    }
}
