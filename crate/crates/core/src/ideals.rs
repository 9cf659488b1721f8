//! Ideals of a quotient ring `R = S/I`, given by lifts of generators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{ideal_quotient, intersect_ideals, GroebnerBasis};
use crate::module::{kernel, minimalize, Backend, PresentedModule, RMatrix, DEFAULT_DEGREE_BOUND};
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

/// Groebner basis of `J + I` in the ambient ring.
pub fn lifted_basis(ring: &QuotientRing, gens: &[Polynomial]) -> GroebnerBasis {
    let mut all: Vec<Polynomial> = gens.to_vec();
    all.extend(ring.generators().iter().cloned());
    GroebnerBasis::new(ring.ambient(), &all)
}

pub fn contains(ring: &QuotientRing, gens: &[Polynomial], f: &Polynomial) -> bool {
    lifted_basis(ring, gens).contains(f)
}

/// Equality of ideals of `R`.
pub fn ideals_equal(ring: &QuotientRing, a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ga = lifted_basis(ring, a);
    let gb = lifted_basis(ring, b);
    ga.contains_ideal(b) && gb.contains_ideal(a)
}

/// A minimal homogeneous generating set; its size is `mu(J) = dim_k J/mJ`.
/// Ungraded input is accepted only over artinian local rings.
pub fn minimal_generators(ring: &QuotientRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let gens: Vec<Polynomial> = gens.iter().map(|g| ring.nf(g)).filter(|g| !g.is_zero()).collect();
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        if !(ring.is_artinian() && ring.check_local().is_ok()) {
            return Err(Error::Inhomogeneous(g.to_string()));
        }
    }
    if !ring.is_graded() && !ring.is_artinian() {
        return Err(Error::Inhomogeneous("defining ideal is not homogeneous".into()));
    }
    if gens.iter().any(|g| !g.constant_term().is_zero()) {
        return Err(Error::UnitIdeal);
    }
    let vectors = gens.into_iter().map(|g| vec![g]).collect();
    Ok(minimalize(ring, &[0], vectors, &[]).into_iter().map(|mut v| v.remove(0)).collect())
}

pub fn mu(ring: &QuotientRing, gens: &[Polynomial]) -> Result<usize> {
    Ok(minimal_generators(ring, gens)?.len())
}

/// `(0 :_R f)`: linear algebra when `R` is artinian, elimination otherwise.
/// Every returned `g` satisfies `g f = 0` in `R`.
pub fn annihilator(ring: &Arc<QuotientRing>, f: &Polynomial) -> Result<Vec<Polynomial>> {
    annihilator_of(ring, std::slice::from_ref(f))
}

/// `(0 :_R (f_1, ..., f_k))`, the elements killing every `f_i`.
pub fn annihilator_of(ring: &Arc<QuotientRing>, elements: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let elements: Vec<Polynomial> = elements.iter().map(|f| ring.nf(f)).filter(|f| !f.is_zero()).collect();
    if elements.is_empty() {
        return Ok(vec![ring.one()]);
    }
    let out = if ring.is_artinian() {
        // r -> (r f_1, ..., r f_k), with R^k shifted so the map has degree 0
        let images = RMatrix::from_columns(elements.len(), vec![elements.clone()])?;
        let shifts = elements.iter().map(|f| if f.is_homogeneous() { -f.degree().unwrap_or(0) } else { 0 }).collect();
        let target = PresentedModule::free(ring, shifts);
        kernel(&[0], &images, &target, DEFAULT_DEGREE_BOUND, Backend::LinearAlgebra)?
            .into_iter()
            .map(|mut v| v.remove(0))
            .collect()
    } else {
        let mut acc: Option<Vec<Polynomial>> = None;
        for f in &elements {
            let q = ideal_quotient(ring.ambient(), ring.generators(), f)?;
            acc = Some(match acc {
                None => q,
                Some(prev) => intersect_ideals(ring.ambient(), &prev, &q),
            });
        }
        acc.expect("nonempty")
    };
    let out: Vec<Polynomial> = out.iter().map(|g| ring.nf(g)).filter(|g| !g.is_zero()).collect();
    for g in &out {
        for f in &elements {
            if !ring.is_zero(&(g * f)) {
                return Err(Error::Internal(format!("annihilator element {g} does not kill {f}")));
            }
        }
    }
    match minimal_generators(ring, &out) {
        Ok(min) => Ok(min),
        Err(_) => Ok(out),
    }
}

/// `dim_k R/J`, when finite.
pub fn colength(ring: &Arc<QuotientRing>, gens: &[Polynomial]) -> Option<usize> {
    PresentedModule::quotient_ring(ring, gens).dim_k()
}

/// Krull dimension of `R/J`.
pub fn quotient_dimension(ring: &QuotientRing, gens: &[Polynomial]) -> Result<usize> {
    lifted_basis(ring, gens).krull_dimension()
}

/// The ring `R/J`.
pub fn quotient_ring(ring: &QuotientRing, gens: &[Polynomial]) -> Result<Arc<QuotientRing>> {
    let mut all = ring.generators().to_vec();
    all.extend(gens.iter().cloned());
    QuotientRing::new(ring.ambient(), all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::PolyRing;

    fn ring(kind: &str) -> Arc<QuotientRing> {
        let s = PolyRing::new(Field::Prime(2), &["X", "Y"]).unwrap();
        let x = Polynomial::var(&s, 0);
        let y = Polynomial::var(&s, 1);
        let g = match kind {
            "ex414" => vec![x.pow(2), &x * &y.pow(2)],
            "m2" => vec![x.pow(2), &x * &y, y.pow(2)],
            "x2y2" => vec![x.pow(2), y.pow(2)],
            _ => unreachable!(),
        };
        QuotientRing::new(&s, g).unwrap()
    }

    #[test]
    fn annihilator_of_y_squared() {
        let r = ring("ex414");
        let y2 = r.var(1).pow(2);
        let ann = annihilator(&r, &y2).unwrap();
        assert!(ideals_equal(&r, &ann, &[r.var(0)]));
    }

    #[test]
    fn annihilator_of_maximal_ideal_generators() {
        let r = ring("m2");
        let ann = annihilator_of(&r, &[r.var(1), r.var(0)]).unwrap();
        assert!(ideals_equal(&r, &ann, &[r.var(0), r.var(1)]));
        assert_eq!(annihilator(&r, &r.one()).unwrap(), Vec::<Polynomial>::new());
    }

    #[test]
    fn mu_counts() {
        let r = ring("x2y2");
        assert_eq!(mu(&r, &[r.var(0), r.var(1), &r.var(0) * &r.var(1)]).unwrap(), 2);
        let s = PolyRing::new(Field::Prime(2), &["X", "Y"]).unwrap();
        let free = QuotientRing::polynomial_ring(&s);
        let x = Polynomial::var(&s, 0);
        assert!(matches!(minimal_generators(&free, &[&x + &x.pow(2)]), Err(Error::Inhomogeneous(_))));
    }
}
