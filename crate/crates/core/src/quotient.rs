//! Quotient rings `R = S/I` with cached Groebner data.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groebner::{GroebnerBasis, Staircase};
use crate::linalg::Matrix;
use crate::poly::{Monomial, PolyRing, Polynomial};

#[derive(Debug)]
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    gb: GroebnerBasis,
    graded: bool,
    domain: bool,
    staircase: Option<Staircase>,
    index: HashMap<Monomial, usize>,
}

impl QuotientRing {
    pub fn new(ambient: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Arc<Self>> {
        Self::build(ambient, generators, false)
    }

    /// A quotient the caller asserts is an integral domain.
    pub fn domain(ambient: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Arc<Self>> {
        Self::build(ambient, generators, true)
    }

    pub fn polynomial_ring(ambient: &Arc<PolyRing>) -> Arc<Self> {
        Self::build(ambient, Vec::new(), true).expect("zero ideal is proper")
    }

    fn build(ambient: &Arc<PolyRing>, generators: Vec<Polynomial>, domain: bool) -> Result<Arc<Self>> {
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.iter().any(|g| g.ring() != ambient) {
            return Err(Error::MismatchedRings);
        }
        let gb = GroebnerBasis::new(ambient, &generators);
        if gb.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let graded = generators.iter().all(Polynomial::is_homogeneous);
        let staircase = if gb.is_artinian() { Some(gb.staircase(None)?) } else { None };
        let index = staircase
            .as_ref()
            .map(|s| s.monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .unwrap_or_default();
        Ok(Arc::new(QuotientRing { ambient: ambient.clone(), generators, gb, graded, domain, staircase, index }))
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn field(&self) -> Field {
        self.ambient.field
    }

    pub fn characteristic(&self) -> u32 {
        self.ambient.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        &self.ambient.weights
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn is_domain(&self) -> bool {
        self.domain
    }

    pub fn is_artinian(&self) -> bool {
        self.staircase.is_some()
    }

    /// `dim_k R`, when finite.
    pub fn dim_k(&self) -> Option<usize> {
        self.staircase.as_ref().map(Staircase::len)
    }

    pub fn krull_dimension(&self) -> usize {
        self.gb.krull_dimension().expect("proper ideal")
    }

    /// Standard monomials of the artinian quotient, by degree.
    pub fn basis(&self) -> Result<&[Monomial]> {
        self.staircase.as_ref().map(|s| s.monomials.as_slice()).ok_or(Error::NotArtinian)
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn basis_of_degree(&self, d: i64) -> Vec<Monomial> {
        self.gb.standard_monomials_of_degree(d)
    }

    /// Largest degree carrying a nonzero element (artinian graded rings).
    pub fn top_degree(&self) -> Option<i64> {
        let w = self.weights();
        self.staircase.as_ref().and_then(|s| s.monomials.iter().map(|m| m.degree(w)).max())
    }

    pub fn nf(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.gb.contains(f)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.nf(&Polynomial::var(&self.ambient, i))
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.nf(&(a * b))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ambient)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.ambient)
    }

    /// Coordinates of `f` in the standard monomial basis (artinian rings).
    pub fn coords(&self, f: &Polynomial) -> Result<Vec<Scalar>> {
        let basis = self.basis()?;
        let mut v = vec![self.field().zero(); basis.len()];
        for (m, c) in self.nf(f).terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[Scalar]) -> Result<Polynomial> {
        let basis = self.basis()?;
        Ok(Polynomial::from_terms(
            &self.ambient,
            basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    /// Matrix of multiplication by `f` on the standard basis (artinian rings).
    pub fn multiplication_matrix(&self, f: &Polynomial) -> Result<Matrix> {
        let basis = self.basis()?;
        let cols = basis
            .iter()
            .map(|m| {
                let prod = f.mul_term(m, &self.field().one());
                self.coords(&prod)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.field(), basis.len(), &cols))
    }

    /// Every variable is nilpotent, so `m = (x_1, ..., x_n)` is the unique maximal ideal.
    pub fn check_local(&self) -> Result<()> {
        if self.graded && self.generators.iter().all(|g| g.constant_term().is_zero()) {
            return Ok(());
        }
        let Some(n) = self.dim_k() else {
            return Err(Error::NotLocal("positive-dimensional ungraded ring".into()));
        };
        for i in 0..self.nvars() {
            let x = Polynomial::var(&self.ambient, i);
            if !self.is_zero(&x.pow(n as u32 + 1)) {
                return Err(Error::NotLocal(self.ambient.vars[i].clone()));
            }
        }
        Ok(())
    }

    /// Inverse of a unit of a local ring: a nonzero constant plus a nilpotent.
    pub fn inverse(&self, f: &Polynomial) -> Option<Polynomial> {
        let f = self.nf(f);
        let c = f.constant_term();
        let cinv = c.inv()?;
        let n = self.nf(&(&Polynomial::one(&self.ambient) - &f.scale(&cinv)));
        // f = c (1 - n), f^{-1} = c^{-1} (1 + n + n^2 + ...)
        let mut sum = Polynomial::one(&self.ambient);
        let mut power = n.clone();
        let cap = self.dim_k().unwrap_or(0) + 1;
        for _ in 0..cap {
            if power.is_zero() {
                return Some(sum.scale(&cinv));
            }
            sum = &sum + &power;
            power = self.mul(&power, &n);
        }
        power.is_zero().then(|| sum.scale(&cinv))
    }

    /// Degree of a homogeneous element, `None` for zero or inhomogeneous.
    pub fn degree_of(&self, f: &Polynomial) -> Option<i64> {
        let f = self.nf(f);
        if f.is_zero() || !f.is_homogeneous() {
            return None;
        }
        f.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, gens: &[&[u32]]) -> Arc<QuotientRing> {
        let s = PolyRing::new(Field::Prime(p), &["X", "Y"]).unwrap();
        let gens = gens
            .iter()
            .map(|e| Polynomial::term(&s, Monomial::from_exponents(e.to_vec()), s.field.one()))
            .collect();
        QuotientRing::new(&s, gens).unwrap()
    }

    #[test]
    fn artinian_data() {
        let r = ring(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(r.dim_k(), Some(4));
        assert_eq!(r.top_degree(), Some(2));
        assert!(r.check_local().is_ok());
        let mx = r.multiplication_matrix(&r.var(0)).unwrap();
        assert!(mx.mul(&mx).is_zero());
        let one_plus_x = &r.one() + &r.var(0);
        let inv = r.inverse(&one_plus_x).unwrap();
        assert_eq!(r.mul(&inv, &one_plus_x), r.one());
    }

    #[test]
    fn positive_dimensional() {
        let r = ring(2, &[&[2, 0], &[1, 2]]);
        assert!(!r.is_artinian());
        assert_eq!(r.krull_dimension(), 1);
        assert_eq!(r.basis(), Err(Error::NotArtinian));
        assert_eq!(r.basis_of_degree(3).len(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let r = ring(3, &[&[3, 0], &[0, 3]]);
        let f = &(&r.var(0) * &r.var(1)) + &r.var(1).pow(2);
        let v = r.coords(&f).unwrap();
        assert_eq!(r.from_coords(&v).unwrap(), f);
    }
}
