use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::SubmoduleGb;
use crate::linalg::Matrix;
use crate::module::matrix::RMatrix;
use crate::poly::{Monomial, Polynomial};
use crate::quotient::QuotientRing;

/// Degree of a vector in a graded free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VecDegree {
    Zero,
    Homogeneous(i64),
    Mixed,
}

pub fn vector_degree(ring: &QuotientRing, degrees: &[i64], v: &[Polynomial]) -> VecDegree {
    let mut found = None;
    for (e, d) in v.iter().zip(degrees) {
        let e = ring.nf(e);
        if e.is_zero() {
            continue;
        }
        if !e.is_homogeneous() {
            return VecDegree::Mixed;
        }
        let deg = e.degree().expect("nonzero") + d;
        match found {
            None => found = Some(deg),
            Some(f) if f != deg => return VecDegree::Mixed,
            _ => {}
        }
    }
    found.map_or(VecDegree::Zero, VecDegree::Homogeneous)
}

/// `M = coker(R^r -> R^g)`, with generator degrees for graded modules.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Arc<QuotientRing>,
    degrees: Vec<i64>,
    relations: RMatrix,
    gb: OnceLock<SubmoduleGb>,
}

impl PresentedModule {
    pub fn cokernel(ring: &Arc<QuotientRing>, degrees: Vec<i64>, relations: RMatrix) -> Result<Self> {
        if relations.nrows() != degrees.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator degrees for a presentation with {} rows",
                degrees.len(),
                relations.nrows()
            )));
        }
        Ok(PresentedModule { ring: ring.clone(), degrees, relations: relations.nf(ring), gb: OnceLock::new() })
    }

    /// Cokernel with generators in degree zero.
    pub fn cokernel_of(ring: &Arc<QuotientRing>, relations: RMatrix) -> Result<Self> {
        Self::cokernel(ring, vec![0; relations.nrows()], relations)
    }

    pub fn free(ring: &Arc<QuotientRing>, degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        Self::cokernel(ring, degrees, RMatrix::zeros(ring, n, 0)).expect("shape")
    }

    pub fn free_of_rank(ring: &Arc<QuotientRing>, n: usize) -> Self {
        Self::free(ring, vec![0; n])
    }

    /// `R/J` as a cyclic module.
    pub fn quotient_ring(ring: &Arc<QuotientRing>, ideal: &[Polynomial]) -> Self {
        let cols = ideal.iter().map(|f| vec![f.clone()]).collect();
        Self::cokernel(ring, vec![0], RMatrix::from_columns(1, cols).expect("shape")).expect("shape")
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Arc<QuotientRing>) -> Self {
        Self::quotient_ring(ring, &ring.variables())
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn relations(&self) -> &RMatrix {
        &self.relations
    }

    pub fn is_graded(&self) -> bool {
        self.ring.is_graded()
            && self
                .relations
                .columns()
                .iter()
                .all(|c| vector_degree(&self.ring, &self.degrees, c) != VecDegree::Mixed)
    }

    /// Degrees of the relation columns (zero columns get degree 0).
    pub fn relation_degrees(&self) -> Vec<i64> {
        self.relations
            .columns()
            .iter()
            .map(|c| match vector_degree(&self.ring, &self.degrees, c) {
                VecDegree::Homogeneous(d) => d,
                _ => 0,
            })
            .collect()
    }

    /// Relation columns together with `f e_j` for the ideal's basis elements.
    pub fn modulo_generators(&self) -> Vec<Vec<Polynomial>> {
        let mut out: Vec<Vec<Polynomial>> = self.relations.columns().to_vec();
        out.extend(ideal_multiples(&self.ring, self.ngens()));
        out
    }

    pub fn relation_gb(&self) -> &SubmoduleGb {
        self.gb
            .get_or_init(|| SubmoduleGb::new(self.ring.ambient(), self.ngens(), &self.modulo_generators()))
    }

    pub fn reduce(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        self.relation_gb().reduce(v)
    }

    /// Whether a vector of `R^g` maps to zero in `M`.
    pub fn is_zero_element(&self, v: &[Polynomial]) -> bool {
        self.relation_gb().contains(v)
    }

    pub fn unit_vector(&self, j: usize) -> Vec<Polynomial> {
        unit_vector(&self.ring, self.ngens(), j)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.ngens()).all(|j| self.is_zero_element(&self.unit_vector(j)))
    }

    /// Standard monomials `(j, m)` of the relation module's Groebner basis.
    /// They form a k-basis of `M`; `top` truncates by degree.
    pub fn standard_basis(&self, top: Option<i64>) -> Result<Vec<(usize, Monomial)>> {
        let gb = self.relation_gb();
        let leads = gb.leading_terms();
        let n = self.ring.nvars();
        let w = self.ring.weights();
        let mut out = Vec::new();
        for j in 0..self.ngens() {
            let lms: Vec<Monomial> = leads.iter().filter(|(p, _)| *p == j).map(|(_, m)| m.clone()).collect();
            let bound = top.map(|t| t - self.degrees[j]);
            let stairs = monomial_staircase(n, w, &lms, bound)?;
            out.extend(stairs.into_iter().map(|m| (j, m)));
        }
        out.sort_by_key(|(j, m)| (self.degrees[*j] + m.degree(w), *j));
        Ok(out)
    }

    pub fn dim_k(&self) -> Option<usize> {
        self.standard_basis(None).ok().map(|b| b.len())
    }

    /// `dim_k M_d` for graded modules.
    pub fn hilbert_function(&self, d: i64) -> Result<usize> {
        let w = self.ring.weights().to_vec();
        Ok(self
            .standard_basis(Some(d))?
            .iter()
            .filter(|(j, m)| self.degrees[*j] + m.degree(&w) == d)
            .count())
    }

    /// `mu(M)`: the number of generators minus the rank of the presentation
    /// matrix modulo `m`. Requires a local ring.
    pub fn mu(&self) -> Result<usize> {
        self.ring.check_local()?;
        let field = self.ring.field();
        let rows = self
            .relations
            .columns()
            .iter()
            .map(|c| c.iter().map(|e| e.constant_term()).collect())
            .collect();
        let constant = Matrix::from_rows(field, self.ngens(), rows);
        Ok(self.ngens() - constant.rank())
    }

    /// Adjoins relations.
    pub fn quotient_by(&self, extra: &[Vec<Polynomial>]) -> Result<PresentedModule> {
        let rel = self.relations.hstack(&RMatrix::from_columns(self.ngens(), extra.to_vec())?)?;
        Self::cokernel(&self.ring, self.degrees.clone(), rel)
    }

    /// Every `x_i e_j` vanishes in `M`.
    pub fn killed_by_maximal_ideal(&self) -> bool {
        (0..self.ngens()).all(|j| {
            (0..self.ring.nvars()).all(|i| {
                let mut v = self.unit_vector(j);
                v[j] = self.ring.var(i);
                self.is_zero_element(&v)
            })
        })
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if !Arc::ptr_eq(&self.ring, &other.ring) && self.ring.generators() != other.ring.generators() {
            return Err(Error::MismatchedRings);
        }
        let (g1, g2) = (self.ngens(), other.ngens());
        let zero = self.ring.zero();
        let mut cols = Vec::new();
        for c in self.relations.columns() {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(zero.clone(), g2));
            cols.push(v);
        }
        for c in other.relations.columns() {
            let mut v = vec![zero.clone(); g1];
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        Self::cokernel(&self.ring, degrees, RMatrix::from_columns(g1 + g2, cols)?)
    }

    pub fn direct_power(&self, n: usize) -> Result<PresentedModule> {
        let mut out = PresentedModule::free(&self.ring, Vec::new());
        for _ in 0..n {
            out = out.direct_sum(self)?;
        }
        Ok(out)
    }
}

pub(crate) fn unit_vector(ring: &QuotientRing, n: usize, j: usize) -> Vec<Polynomial> {
    let mut v = vec![ring.zero(); n];
    v[j] = ring.one();
    v
}

/// `f e_j` for every basis element `f` of the defining ideal.
pub(crate) fn ideal_multiples(ring: &QuotientRing, n: usize) -> Vec<Vec<Polynomial>> {
    let mut out = Vec::new();
    for f in ring.gb().elements() {
        for j in 0..n {
            let mut v = vec![ring.zero(); n];
            v[j] = f.clone();
            out.push(v);
        }
    }
    out
}

/// Monomials outside the ideal spanned by `lms`, of degree at most `bound`.
pub(crate) fn monomial_staircase(
    nvars: usize,
    weights: &[u32],
    lms: &[Monomial],
    bound: Option<i64>,
) -> Result<Vec<Monomial>> {
    let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let one = Monomial::one(nvars);
    if !standard(&one) || bound.is_some_and(|b| b < 0) {
        return Ok(Vec::new());
    }
    if bound.is_none() {
        let finite = (0..nvars).all(|i| lms.iter().any(|m| !m.is_one() && m.support().all(|j| j == i)));
        if !finite {
            return Err(Error::InfiniteStaircase);
        }
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(one.clone());
    let mut stack = vec![one];
    let mut out = Vec::new();
    while let Some(m) = stack.pop() {
        for i in 0..nvars {
            let next = m.mul(&Monomial::var(nvars, i));
            if bound.is_some_and(|b| next.degree(weights) > b) {
                continue;
            }
            if standard(&next) && seen.insert(next.clone()) {
                stack.push(next);
            }
        }
        out.push(m);
    }
    out.sort();
    Ok(out)
}
