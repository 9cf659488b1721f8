use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::buchberger::{groebner, reduce, MVec};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Generators of an ideal in the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub ring: Arc<PolyRing>,
    pub generators: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !g.same_ring(&Polynomial::zero(ring))) {
            return Err(Error::MismatchedRings);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealBasis { ring: ring.clone(), generators })
    }
}

/// Reduced Groebner basis of an ideal: monic, interreduced.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    raw: Vec<MVec>,
}

/// Reduced Groebner basis of `gens` under `ord`.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial], ord: &MonomialOrder) -> GroebnerBasis {
    let input = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| MVec::from_components(ord, std::slice::from_ref(g)))
        .collect();
    let raw = groebner(ord, 1, input);
    let elements = raw.iter().map(|v| v.to_components(ring, 1).remove(0)).collect();
    GroebnerBasis { ring: ring.clone(), order: ord.clone(), elements, raw }
}

/// Staircase of `S/I`: the standard monomials, outside the leading-term ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub monomials: Vec<Monomial>,
    pub finite: bool,
    pub degree_bound: Option<i64>,
}

impl Staircase {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

impl GroebnerBasis {
    pub fn new(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Self {
        buchberger(ring, gens, &ring.order)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.raw.iter().map(|v| v.lead().mono.clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.raw.is_empty() || f.is_zero() {
            return f.clone();
        }
        let v = MVec::from_components(&self.order, std::slice::from_ref(f));
        reduce(&self.order, &self.raw, &v).to_components(&self.ring, 1).remove(0)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &[Polynomial]) -> bool {
        other.iter().all(|g| self.contains(g))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.raw.iter().any(|v| v.lead().mono.divides(m))
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_artinian(&self) -> bool {
        let lms = self.leading_monomials();
        (0..self.ring.nvars()).all(|i| lms.iter().any(|m| m.support().all(|j| j == i) && !m.is_one()))
            || self.is_unit()
    }

    /// Standard monomials; a `degree_bound` truncates by weighted degree.
    pub fn staircase(&self, degree_bound: Option<i64>) -> Result<Staircase> {
        let finite = self.is_artinian();
        if !finite && degree_bound.is_none() {
            return Err(Error::InfiniteStaircase);
        }
        let n = self.ring.nvars();
        let w = &self.ring.weights;
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut frontier = Vec::new();
        let one = Monomial::one(n);
        if self.is_standard(&one) {
            seen.insert(one.clone());
            frontier.push(one);
        }
        while let Some(m) = frontier.pop() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i));
                if degree_bound.is_some_and(|b| next.degree(w) > b) {
                    continue;
                }
                if self.is_standard(&next) && seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
            out.push(m);
        }
        out.sort_by(|a, b| a.degree(w).cmp(&b.degree(w)).then_with(|| self.order.cmp(b, a)));
        Ok(Staircase { monomials: out, finite, degree_bound })
    }

    /// Standard monomials of weighted degree exactly `d`.
    pub fn standard_monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = monomials_of_degree(&self.ring.weights, d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }

    /// Krull dimension of `S/I`: the largest set of variables supporting
    /// no leading monomial.
    pub fn krull_dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let lms = self.leading_monomials();
        let n = self.ring.nvars();
        let mut best = 0;
        let mut chosen = vec![false; n];
        independent_search(&lms, &mut chosen, 0, 0, &mut best);
        Ok(best)
    }
}

fn independent_search(lms: &[Monomial], chosen: &mut [bool], start: usize, size: usize, best: &mut usize) {
    *best = (*best).max(size);
    let n = chosen.len();
    if size + (n - start) <= *best {
        return;
    }
    for v in start..n {
        chosen[v] = true;
        if !lms.iter().any(|m| m.support().all(|j| chosen[j])) {
            independent_search(lms, chosen, v + 1, size + 1, best);
        }
        chosen[v] = false;
    }
}

/// All exponent vectors of weighted degree exactly `d`.
pub fn monomials_of_degree(weights: &[u32], d: i64) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let w = weights[i] as i64;
        let mut e = 0;
        while e * w <= left {
            cur.push(e as u32);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(weights, 0, d, &mut Vec::new(), &mut out);
    }
    out
}

/// `I ∩ J` in the ambient ring, by eliminating a tag variable.
pub fn intersect_ideals(ring: &Arc<PolyRing>, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let tagged = ring.with_tag_variable("__t");
    let t = Polynomial::var(&tagged, 0);
    let one_minus_t = &Polynomial::one(&tagged) - &t;
    let mut gens: Vec<Polynomial> = a.iter().map(|f| &t * &f.embed(&tagged, 1)).collect();
    gens.extend(b.iter().map(|g| &one_minus_t * &g.embed(&tagged, 1)));
    let gb = GroebnerBasis::new(&tagged, &gens);
    gb.elements().iter().filter_map(|g| g.restrict(ring, 1)).collect()
}

/// Exact division `f / g` in the ambient ring, `None` if not divisible.
pub fn divide_exact(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let ord = &f.ring().order;
    let (lg, cg) = g.leading_term(ord).ok()?;
    let cinv = cg.inv()?;
    let mut rem = f.clone();
    let mut q = Polynomial::zero(f.ring());
    while !rem.is_zero() {
        let (lr, cr) = rem.leading_term(ord).ok()?;
        let m = lg.quotient_of(&lr)?;
        let c = &cr * &cinv;
        q = &q + &Polynomial::term(f.ring(), m.clone(), c.clone());
        rem = &rem - &g.mul_term(&m, &c);
    }
    Some(q)
}

/// The ideal quotient `(I : f)` in the ambient ring, via `(I ∩ (f)) / f`.
pub fn ideal_quotient(ring: &Arc<PolyRing>, ideal: &[Polynomial], f: &Polynomial) -> Result<Vec<Polynomial>> {
    if f.is_zero() {
        return Ok(vec![Polynomial::one(ring)]);
    }
    intersect_ideals(ring, ideal, std::slice::from_ref(f))
        .iter()
        .map(|h| divide_exact(h, f).ok_or_else(|| Error::Internal("intersection element not divisible".into())))
        .collect()
}
