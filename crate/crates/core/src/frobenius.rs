//! The Frobenius functor `F^n = - (x)_R {}^nR` on presentations and
//! complexes: every matrix entry is raised to the `p^n`-th power.

use crate::error::{Error, Result};
use crate::module::{Backend, Complex, FreeComplex, PresentedModule, RMatrix};
use crate::par::{self, Execution};
use crate::quotient::QuotientRing;

/// Default largest `n` in an acyclicity report.
pub const DEFAULT_FROBENIUS_MAX: u32 = 3;

fn frobenius_exponent(ring: &QuotientRing, n: u32) -> Result<u64> {
    let p = ring.characteristic();
    if p == 0 {
        return Err(Error::CharacteristicZero);
    }
    (p as u64).checked_pow(n).ok_or_else(|| Error::Unsupported(format!("{p}^{n} overflows")))
}

/// `(a_ij) -> (a_ij^{p^n})`, in normal form. `n = 0` is the identity.
pub fn frobenius_twist_matrix(ring: &QuotientRing, a: &RMatrix, n: u32) -> Result<RMatrix> {
    let q = frobenius_exponent(ring, n)?;
    Ok(a.map_entries(|e| ring.nf(&e.frobenius_power(q))))
}

/// `F^n(M)` for `M = coker P`: generator degrees scale by `p^n`.
pub fn frobenius_twist_module(m: &PresentedModule, n: u32) -> Result<PresentedModule> {
    let ring = m.ring();
    let q = frobenius_exponent(ring, n)? as i64;
    let rel = frobenius_twist_matrix(ring, m.relations(), n)?;
    PresentedModule::cokernel(ring, m.degrees().iter().map(|d| d * q).collect(), rel)
}

/// Twists every differential of a free complex.
pub fn frobenius_free_complex(c: &FreeComplex, n: u32) -> Result<FreeComplex> {
    let ring = c.ring();
    let q = frobenius_exponent(ring, n)? as i64;
    let maps = c.maps().iter().map(|d| frobenius_twist_matrix(ring, d, n)).collect::<Result<Vec<_>>>()?;
    let degrees = (0..=c.len()).map(|i| c.degrees(i).iter().map(|d| d * q).collect()).collect();
    let out = FreeComplex::new(ring, degrees, maps)?;
    out.check_d_squared().map_err(|e| Error::Internal(format!("Frobenius twist broke d^2 = 0: {e}")))?;
    Ok(out)
}

/// Twists the presentations of every module and every map of a complex.
pub fn frobenius_complex(c: &Complex, n: u32) -> Result<Complex> {
    let ring = c.ring();
    let modules = c.modules().iter().map(|m| frobenius_twist_module(m, n)).collect::<Result<Vec<_>>>()?;
    let maps = c.maps().iter().map(|d| frobenius_twist_matrix(ring, d, n)).collect::<Result<Vec<_>>>()?;
    let out = Complex::new(modules, maps)?;
    out.check_d_squared().map_err(|e| Error::Internal(format!("Frobenius twist broke d^2 = 0: {e}")))?;
    Ok(out)
}

/// `dim_k H_i(F^n C)` for `i >= 1` at one `n`; `None` entries are infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistHomology {
    pub n: u32,
    pub higher_homology: Vec<Option<usize>>,
    pub acyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub twists: Vec<TwistHomology>,
}

impl AcyclicityReport {
    pub fn all_acyclic(&self) -> bool {
        self.twists.iter().all(|t| t.acyclic)
    }
}

/// Homology of `F^n C` for `n = 1..=n_max`, one twist per task. Twisting
/// multiplies degrees by `q = p^n`, so the degree bound is scaled by `q` too.
pub fn acyclicity_report(c: &Complex, n_max: u32, bound: i64, backend: Backend, exec: Execution) -> Result<AcyclicityReport> {
    frobenius_exponent(c.ring(), 1)?;
    let ns: Vec<u32> = (1..=n_max).collect();
    let twists = par::map(exec, &ns, |&n| -> Result<TwistHomology> {
        let q = frobenius_exponent(c.ring(), n)? as i64;
        let bound = bound.saturating_mul(q);
        let twisted = frobenius_complex(c, n)?;
        let mut higher_homology = Vec::new();
        let mut acyclic = true;
        for i in 1..twisted.modules().len() {
            let h = twisted.homology(i, bound, backend)?;
            acyclic &= h.is_zero();
            higher_homology.push(h.dim_k());
        }
        Ok(TwistHomology { n, higher_homology, acyclic })
    });
    Ok(AcyclicityReport { twists: twists.into_iter().collect::<Result<Vec<_>>>()? })
}
