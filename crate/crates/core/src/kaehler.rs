//! Jacobians, `Omega_{R/k}`, `Der_k(R)`, module rank and freeness.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::derivation::{check_well_defined, Derivation};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::module::{hom_dual, Backend, PresentedModule, RMatrix};
use crate::par::{self, Execution};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::QuotientRing;

/// Entry `(j, i)` is `df_j/dX_i` for the defining generators `f_j`.
pub fn jacobian(ring: &QuotientRing) -> Result<RMatrix> {
    let n = ring.nvars();
    let rows = ring.generators().iter().map(|f| (0..n).map(|i| f.partial(i)).collect()).collect();
    RMatrix::from_rows(ring, n, rows)
}

/// `Omega = (R dx_1 + ... + R dx_n) / (df_1, ..., df_m)` with `dx_i` in
/// degree `w_i`. Zero relations are kept.
pub fn omega_presentation(ring: &Arc<QuotientRing>) -> Result<PresentedModule> {
    let j = jacobian(ring)?;
    let degrees = ring.weights().iter().map(|&w| w as i64).collect();
    PresentedModule::cokernel(ring, degrees, j.transpose(ring))
}

/// `Der_k(R)` inside `R^n`, where `theta` stands for `x_i -> theta_i`.
#[derive(Clone, Debug)]
pub struct DerModule {
    pub module: PresentedModule,
    /// Column `l` lists the images of the variables under the `l`-th generator.
    pub embedding: RMatrix,
    /// `(degree, dim_k)` from `Hom(Omega, R)`.
    pub dual_route: Vec<(i64, usize)>,
    /// `(degree, dim_k)` from the kernel of the Jacobian.
    pub jacobian_route: Vec<(i64, usize)>,
}

impl DerModule {
    pub fn dim_k(&self) -> Option<usize> {
        self.module.dim_k()
    }

    /// The generators as verified derivations.
    pub fn derivations(&self) -> Result<Vec<Derivation>> {
        let ring = self.module.ring();
        self.embedding
            .columns()
            .iter()
            .map(|c| {
                check_well_defined(ring, c.clone())?
                    .derivation()
                    .ok_or_else(|| Error::Internal("a generator of Der is not a derivation".into()))
            })
            .collect()
    }

    /// `R^n / Der`, with `R^n` graded like the dual of `Omega`'s generators.
    pub fn cokernel(&self) -> Result<PresentedModule> {
        let ring = self.module.ring();
        let degrees = ring.weights().iter().map(|&w| -(w as i64)).collect();
        PresentedModule::cokernel(ring, degrees, self.embedding.clone())
    }
}

/// Degrees spanned by derivations of an artinian ring, or up to `bound`.
fn degree_window(ring: &QuotientRing, bound: i64) -> Option<(i64, i64)> {
    if !ring.is_graded() {
        return None;
    }
    let wmax = ring.weights().iter().copied().max().unwrap_or(1) as i64;
    let wmin = ring.weights().iter().copied().min().unwrap_or(1) as i64;
    let top = match ring.top_degree() {
        Some(t) => t - wmin,
        None => bound,
    };
    Some((-wmax, top))
}

/// dim_k of `{theta : sum_i theta_i df_j/dX_i = 0 in R for all j}`, one
/// linear system per degree.
fn jacobian_kernel_dims(ring: &QuotientRing, jac: &RMatrix, window: Option<(i64, i64)>) -> Result<Vec<(i64, usize)>> {
    let n = ring.nvars();
    let field = ring.field();
    let one = field.one();
    let blocks: Vec<(i64, Vec<(usize, Monomial)>)> = match window {
        Some((lo, hi)) => (lo..=hi)
            .map(|d| {
                let src = (0..n)
                    .flat_map(|i| {
                        ring.basis_of_degree(d + ring.weights()[i] as i64).into_iter().map(move |m| (i, m))
                    })
                    .collect();
                (d, src)
            })
            .collect(),
        None => {
            let basis = ring.basis()?;
            vec![(0, (0..n).flat_map(|i| basis.iter().map(move |m| (i, m.clone()))).collect())]
        }
    };
    let mut out = Vec::new();
    for (d, src) in blocks {
        if src.is_empty() {
            continue;
        }
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(src.len());
        for (i, m) in &src {
            let mut col = Vec::new();
            for j in 0..jac.nrows() {
                let v = ring.nf(&jac.entry(j, *i).mul_term(m, &one));
                for (mono, c) in v.terms() {
                    let len = index.len();
                    let k = *index.entry((j, mono.clone())).or_insert(len);
                    col.push((k, c.clone()));
                }
            }
            cols.push(col);
        }
        let dense: Vec<Vec<Scalar>> = cols
            .into_iter()
            .map(|col| {
                let mut v = vec![field.zero(); index.len()];
                for (k, c) in col {
                    v[k] = c;
                }
                v
            })
            .collect();
        let rank = Matrix::from_columns(field, index.len(), &dense).rank();
        let nullity = src.len() - rank;
        if nullity > 0 {
            out.push((d, nullity));
        }
    }
    Ok(out)
}

fn hilbert_dims(m: &PresentedModule, window: Option<(i64, i64)>) -> Result<Vec<(i64, usize)>> {
    match window {
        Some((lo, hi)) => Ok((lo..=hi)
            .map(|d| Ok((d, m.hilbert_function(d)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, n)| *n > 0)
            .collect()),
        None => Ok(m.dim_k().map(|n| vec![(0, n)]).unwrap_or_default()),
    }
}

/// `Der_k(R) = Hom(Omega, R)`, checked against the direct Jacobian-kernel
/// computation; the two routes run through [`par::join`].
pub fn der_module(ring: &Arc<QuotientRing>, bound: i64, backend: Backend, exec: Execution) -> Result<DerModule> {
    let window = degree_window(ring, bound);
    let jac = jacobian(ring)?.nf(ring);
    let (dual, direct) = par::join(
        exec,
        || -> Result<_> {
            let omega = omega_presentation(ring)?;
            let dual = hom_dual(&omega, bound, backend)?;
            let dims = hilbert_dims(&dual.module, window)?;
            Ok((dual, dims))
        },
        || jacobian_kernel_dims(ring, &jac, window),
    );
    let (dual, dual_route) = dual?;
    let jacobian_route = direct?;
    if dual_route != jacobian_route {
        return Err(Error::Internal(format!(
            "Der routes disagree: Hom(Omega, R) gives {dual_route:?}, the Jacobian kernel gives {jacobian_route:?}"
        )));
    }
    Ok(DerModule { module: dual.module, embedding: dual.embedding, dual_route, jacobian_route })
}

/// `g - rank P` over the fraction field, by fraction-free elimination.
/// The ring must be declared a domain.
pub fn module_rank(m: &PresentedModule) -> Result<usize> {
    let ring = m.ring();
    if !ring.is_domain() {
        return Err(Error::NotDomain);
    }
    Ok(m.ngens() - fraction_free_rank(ring, m.relations().columns().to_vec()))
}

fn fraction_free_rank(ring: &QuotientRing, mut cols: Vec<Vec<Polynomial>>) -> usize {
    for c in &mut cols {
        for e in c.iter_mut() {
            *e = ring.nf(e);
        }
    }
    let nrows = cols.first().map_or(0, Vec::len);
    let mut rank = 0;
    for row in 0..nrows {
        let Some(p) = cols.iter().position(|c| !c[row].is_zero()) else {
            continue;
        };
        let pivot = cols.swap_remove(p);
        let a = &pivot[row];
        for c in &mut cols {
            let b = c[row].clone();
            if b.is_zero() {
                continue;
            }
            for (e, q) in c.iter_mut().zip(&pivot) {
                *e = ring.nf(&(&(a * &*e) - &(&b * q)));
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of a freeness test with the numbers behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Freeness {
    pub free: bool,
    pub mu: usize,
    pub rank: Option<usize>,
    pub certificate: String,
}

impl fmt::Display for Freeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", if self.free { "free" } else { "not free" }, self.certificate)
    }
}

/// Artinian rings: `dim_k M = mu(M) dim_k R`. Graded domains: `mu(M) = rank M`.
pub fn is_free(m: &PresentedModule) -> Result<Freeness> {
    let ring = m.ring();
    let mu = m.mu()?;
    if let Some(r) = ring.dim_k() {
        let dim = m.dim_k().ok_or_else(|| Error::Internal("module over an artinian ring is infinite".into()))?;
        let free = dim == mu * r;
        let rel = if free { "=" } else { "≠" };
        return Ok(Freeness { free, mu, rank: free.then_some(mu), certificate: format!("dim_k M = {dim} {rel} {mu}·{r}") });
    }
    if ring.is_domain() && ring.is_graded() && m.is_graded() {
        let rank = module_rank(m)?;
        let free = mu == rank;
        let rel = if free { "=" } else { "≠" };
        return Ok(Freeness { free, mu, rank: Some(rank), certificate: format!("μ = {mu} {rel} {rank} = rank") });
    }
    Err(Error::Unsupported("freeness needs an artinian ring or a graded domain".into()))
}
