//! `Hom(-, R)`, `Ext(-, R)`, `Tor(-, N)` and the biduality map.

use crate::error::Result;
use crate::groebner::SubmoduleGb;
use crate::module::complex::Complex;
use crate::module::kernel::{degrees_of, kernel, submodule_presentation, Backend};
use crate::module::matrix::RMatrix;
use crate::module::presented::{ideal_multiples, PresentedModule};
use crate::module::resolution::free_resolution;

/// `M* = Hom_R(M, R)` together with its embedding into the dual free
/// module: column `l` lists the values `phi_l(e_j)`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub module: PresentedModule,
    pub embedding: RMatrix,
}

pub fn hom_dual(m: &PresentedModule, bound: i64, backend: Backend) -> Result<Dual> {
    let ring = m.ring();
    let dual_degrees: Vec<i64> = m.degrees().iter().map(|d| -d).collect();
    let rel_degrees: Vec<i64> = m.relation_degrees().iter().map(|d| -d).collect();
    // u in R^g with sum_j u_j P_jc = 0 for every column c
    let transpose = m.relations().transpose(ring);
    let target = PresentedModule::free(ring, rel_degrees);
    let gens = kernel(&dual_degrees, &transpose, &target, bound, backend)?;
    let degs = degrees_of(ring, &dual_degrees, &gens);
    let free = PresentedModule::free(ring, dual_degrees);
    let module = submodule_presentation(&free, &gens, degs, bound, backend)?;
    let embedding = RMatrix::from_columns(m.ngens(), gens)?;
    Ok(Dual { module, embedding })
}

/// `Ext^i_R(M, R)` from the dual of a minimal resolution.
pub fn ext(m: &PresentedModule, i: usize, bound: i64, backend: Backend) -> Result<PresentedModule> {
    let res = free_resolution(m, i + 1, bound, backend)?;
    let dual = res.dual()?;
    dual.homology(res.len() - i, bound, backend)
}

/// `Ext^i_R(M, R)` for `i = 1..=n` from a single resolution.
pub fn ext_range(m: &PresentedModule, n: usize, bound: i64, backend: Backend) -> Result<Vec<PresentedModule>> {
    let res = free_resolution(m, n + 1, bound, backend)?;
    let dual = res.dual()?;
    let l = res.len();
    (1..=n).map(|i| dual.homology(l - i, bound, backend)).collect()
}

/// First `i` in `1..=n` with `Ext^i(M, R) != 0`, computing lazily.
pub fn first_nonvanishing_ext(m: &PresentedModule, n: usize, bound: i64, backend: Backend) -> Result<Option<usize>> {
    if n == 0 {
        return Ok(None);
    }
    let res = free_resolution(m, n + 1, bound, backend)?;
    let dual = res.dual()?;
    let l = res.len();
    for i in 1..=n {
        if !dual.homology(l - i, bound, backend)?.is_zero() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `F (x) N` for a free complex `F` built from a resolution of `M`.
fn tensor_complex(res: &crate::module::complex::FreeComplex, n: &PresentedModule) -> Result<Complex> {
    let ring = res.ring();
    let g = n.ngens();
    let modules = (0..=res.len())
        .map(|i| {
            let base = n.direct_power(res.ranks()[i])?;
            let degrees = res
                .degrees(i)
                .iter()
                .flat_map(|d| n.degrees().iter().map(move |e| d + e))
                .collect();
            PresentedModule::cokernel(ring, degrees, base.relations().clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let maps = (1..=res.len())
        .map(|i| {
            let d = res.map(i);
            let mut cols = Vec::new();
            for j in 0..d.ncols() {
                for l in 0..g {
                    let mut v = vec![ring.zero(); d.nrows() * g];
                    for k in 0..d.nrows() {
                        v[k * g + l] = d.entry(k, j).clone();
                    }
                    cols.push(v);
                }
            }
            RMatrix::from_columns(d.nrows() * g, cols)
        })
        .collect::<Result<Vec<_>>>()?;
    Complex::new(modules, maps)
}

/// `Tor_i^R(M, N)`.
pub fn tor(m: &PresentedModule, n: &PresentedModule, i: usize, bound: i64, backend: Backend) -> Result<PresentedModule> {
    let res = free_resolution(m, i + 1, bound, backend)?;
    tensor_complex(&res, n)?.homology(i, bound, backend)
}

/// The natural map `M -> M**`.
#[derive(Clone, Debug)]
pub struct Biduality {
    pub injective: bool,
    pub surjective: bool,
    /// Column `j` is the image of `e_j` in the dual coordinates of `M*`.
    pub evaluation: RMatrix,
    pub dim: Option<usize>,
    pub dual_dim: Option<usize>,
    pub bidual_dim: Option<usize>,
}

impl Biduality {
    pub fn is_iso(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn biduality(m: &PresentedModule, bound: i64, backend: Backend) -> Result<Biduality> {
    let ring = m.ring();
    let dual = hom_dual(m, bound, backend)?;
    let bidual = hom_dual(&dual.module, bound, backend)?;
    // ev(e_j) = (phi_l(e_j))_l, the j-th row of the embedding
    let evaluation = dual.embedding.transpose(ring);
    let h = dual.module.ngens();
    let target_degrees: Vec<i64> = dual.module.degrees().iter().map(|d| -d).collect();
    let target = PresentedModule::free(ring, target_degrees);
    let ker = kernel(m.degrees(), &evaluation, &target, bound, backend)?;
    let injective = ker.iter().all(|v| m.is_zero_element(v));
    let mut span = evaluation.columns().to_vec();
    span.extend(ideal_multiples(ring, h));
    let image = SubmoduleGb::new(ring.ambient(), h, &span);
    let surjective = bidual.embedding.columns().iter().all(|c| image.contains(c));
    Ok(Biduality {
        injective,
        surjective,
        evaluation,
        dim: m.dim_k(),
        dual_dim: dual.module.dim_k(),
        bidual_dim: bidual.module.dim_k(),
    })
}
