//! Chain complexes of presented modules and their homology.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::kernel::{degrees_of, kernel, submodule_presentation, Backend};
use crate::module::matrix::RMatrix;
use crate::module::presented::PresentedModule;
use crate::quotient::QuotientRing;

/// `F_L -> ... -> F_0` with `F_i = R^{b_i}`; `maps[i]` is `d_{i+1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Arc<QuotientRing>,
    degrees: Vec<Vec<i64>>,
    maps: Vec<RMatrix>,
}

impl FreeComplex {
    pub fn new(ring: &Arc<QuotientRing>, degrees: Vec<Vec<i64>>, maps: Vec<RMatrix>) -> Result<Self> {
        if degrees.len() != maps.len() + 1 {
            return Err(Error::ShapeMismatch(format!("{} free modules for {} differentials", degrees.len(), maps.len())));
        }
        for (i, d) in maps.iter().enumerate() {
            if d.nrows() != degrees[i].len() || d.ncols() != degrees[i + 1].len() {
                return Err(Error::ShapeMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    d.nrows(),
                    d.ncols(),
                    degrees[i].len(),
                    degrees[i + 1].len()
                )));
            }
        }
        let maps = maps.into_iter().map(|d| d.nf(ring)).collect();
        Ok(FreeComplex { ring: ring.clone(), degrees, maps })
    }

    /// Builds a complex from its differentials, all generators in degree zero.
    pub fn from_maps(ring: &Arc<QuotientRing>, maps: Vec<RMatrix>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::ShapeMismatch("a complex needs at least one differential".into()));
        };
        let mut degrees = vec![vec![0; first.nrows()]];
        degrees.extend(maps.iter().map(|d| vec![0; d.ncols()]));
        Self::new(ring, degrees, maps)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn degrees(&self, i: usize) -> &[i64] {
        &self.degrees[i]
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= len`.
    pub fn map(&self, i: usize) -> &RMatrix {
        &self.maps[i - 1]
    }

    pub fn maps(&self) -> &[RMatrix] {
        &self.maps
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for i in 1..self.maps.len() {
            let comp = self.maps[i - 1].mul(&self.ring, &self.maps[i])?;
            if !comp.is_zero(&self.ring) {
                return Err(Error::NotAComplex(format!("d_{} d_{} = {}", i, i + 1, comp)));
            }
        }
        Ok(())
    }

    pub fn to_complex(&self) -> Complex {
        Complex {
            ring: self.ring.clone(),
            modules: self.degrees.iter().map(|d| PresentedModule::free(&self.ring, d.clone())).collect(),
            maps: self.maps.clone(),
        }
    }

    /// Replaces every differential (same shapes and degrees).
    pub fn with_maps(&self, maps: Vec<RMatrix>) -> Result<FreeComplex> {
        FreeComplex::new(&self.ring, self.degrees.clone(), maps)
    }

    /// `Hom_R(F, R)` read as a chain complex: position `j` holds `F_{L-j}^*`.
    pub fn dual(&self) -> Result<FreeComplex> {
        let l = self.len();
        let degrees = (0..=l).map(|j| self.degrees[l - j].iter().map(|d| -d).collect()).collect();
        let maps = (1..=l).map(|j| self.maps[l - j].transpose(&self.ring)).collect();
        FreeComplex::new(&self.ring, degrees, maps)
    }

    pub fn homology(&self, i: usize, bound: i64, backend: Backend) -> Result<PresentedModule> {
        self.to_complex().homology(i, bound, backend)
    }
}

/// `M_L -> ... -> M_0` of presented modules; `maps[i]` sends generators of
/// `M_{i+1}` into the free cover of `M_i`.
#[derive(Clone, Debug)]
pub struct Complex {
    ring: Arc<QuotientRing>,
    modules: Vec<PresentedModule>,
    maps: Vec<RMatrix>,
}

impl Complex {
    pub fn new(modules: Vec<PresentedModule>, maps: Vec<RMatrix>) -> Result<Self> {
        let Some(first) = modules.first() else {
            return Err(Error::ShapeMismatch("empty complex".into()));
        };
        let ring = first.ring().clone();
        if modules.len() != maps.len() + 1 {
            return Err(Error::ShapeMismatch(format!("{} modules for {} maps", modules.len(), maps.len())));
        }
        for (i, d) in maps.iter().enumerate() {
            if d.nrows() != modules[i].ngens() || d.ncols() != modules[i + 1].ngens() {
                return Err(Error::ShapeMismatch(format!("map {} has shape {}x{}", i + 1, d.nrows(), d.ncols())));
            }
        }
        let maps = maps.into_iter().map(|d| d.nf(&ring)).collect();
        Ok(Complex { ring, modules, maps })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn modules(&self) -> &[PresentedModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[RMatrix] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Every composite `M_{i+1} -> M_{i-1}` vanishes.
    pub fn check_d_squared(&self) -> Result<()> {
        for i in 1..self.maps.len() {
            let comp = self.maps[i - 1].mul(&self.ring, &self.maps[i])?;
            let target = &self.modules[i - 1];
            if let Some(c) = comp.columns().iter().position(|c| !target.is_zero_element(c)) {
                return Err(Error::NotAComplex(format!("d_{} d_{} is nonzero on generator {}", i, i + 1, c)));
            }
        }
        Ok(())
    }

    /// `H_i = ker(M_i -> M_{i-1}) / im(M_{i+1} -> M_i)`, presented on
    /// generators of the kernel.
    pub fn homology(&self, i: usize, bound: i64, backend: Backend) -> Result<PresentedModule> {
        if i >= self.modules.len() {
            return Err(Error::ShapeMismatch(format!("no module at position {i}")));
        }
        let middle = &self.modules[i];
        let cycles: Vec<Vec<_>> = if i == 0 {
            (0..middle.ngens()).map(|j| middle.unit_vector(j)).collect()
        } else {
            kernel(middle.degrees(), &self.maps[i - 1], &self.modules[i - 1], bound, backend)?
        };
        let boundaries = if i < self.maps.len() { self.maps[i].columns().to_vec() } else { Vec::new() };
        let target = middle.quotient_by(&boundaries)?;
        let degs = degrees_of(&self.ring, middle.degrees(), &cycles);
        submodule_presentation(&target, &cycles, degs, bound, backend)
    }

    /// `dim_k H_i` for `i >= 1`; `None` entries are infinite.
    pub fn higher_homology_dims(&self, bound: i64, backend: Backend) -> Result<Vec<Option<usize>>> {
        (1..self.modules.len()).map(|i| Ok(self.homology(i, bound, backend)?.dim_k())).collect()
    }

    /// All `H_i`, `i >= 1`, vanish.
    pub fn is_acyclic(&self, bound: i64, backend: Backend) -> Result<bool> {
        for i in 1..self.modules.len() {
            if !self.homology(i, bound, backend)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::module::kernel::DEFAULT_DEGREE_BOUND;
    use crate::poly::{PolyRing, Polynomial};

    #[test]
    fn koszul_on_nilpotent() {
        // 0 -> R -x-> R -> 0 over F2[X]/(X^2): H_1 = (0:x) = (x), dim 1
        let s = PolyRing::new(Field::Prime(2), &["X"]).unwrap();
        let x = Polynomial::var(&s, 0);
        let r = QuotientRing::new(&s, vec![x.pow(2)]).unwrap();
        let d = RMatrix::from_columns(1, vec![vec![r.var(0)]]).unwrap();
        let c = FreeComplex::new(&r, vec![vec![0], vec![1]], vec![d]).unwrap();
        assert!(c.check_d_squared().is_ok());
        let h1 = c.homology(1, DEFAULT_DEGREE_BOUND, Backend::Auto).unwrap();
        assert_eq!(h1.dim_k(), Some(1));
        let h0 = c.homology(0, DEFAULT_DEGREE_BOUND, Backend::Auto).unwrap();
        assert_eq!(h0.dim_k(), Some(1));
    }

    #[test]
    fn identity_complex_is_acyclic() {
        let s = PolyRing::new(Field::Prime(2), &["X", "Y"]).unwrap();
        let x = Polynomial::var(&s, 0);
        let y = Polynomial::var(&s, 1);
        let r = QuotientRing::new(&s, vec![x.pow(2), y.pow(2)]).unwrap();
        let id = RMatrix::identity(&r, 1);
        let c = FreeComplex::new(&r, vec![vec![0], vec![0]], vec![id]).unwrap();
        assert!(c.to_complex().is_acyclic(DEFAULT_DEGREE_BOUND, Backend::Auto).unwrap());
    }

    #[test]
    fn detects_nonzero_square() {
        let s = PolyRing::new(Field::Rationals, &["X"]).unwrap();
        let r = QuotientRing::new(&s, vec![Polynomial::var(&s, 0).pow(3)]).unwrap();
        let d = RMatrix::from_columns(1, vec![vec![r.var(0)]]).unwrap();
        let c = FreeComplex::from_maps(&r, vec![d.clone(), d]).unwrap();
        assert!(matches!(c.check_d_squared(), Err(Error::NotAComplex(_))));
    }
}
