//! Kernels of maps `R^a -> M`: exact linear algebra over artinian rings,
//! module Groebner bases otherwise.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{syzygies_modulo, SubmoduleGb};
use crate::linalg::{Matrix, Subspace};
use crate::module::matrix::RMatrix;
use crate::module::presented::{ideal_multiples, vector_degree, PresentedModule, VecDegree};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::QuotientRing;

/// Default degree bound for positive-dimensional graded computations.
pub const DEFAULT_DEGREE_BOUND: i64 = 12;

/// Which backend computes kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Linear algebra for artinian rings, Groebner bases otherwise.
    Auto,
    LinearAlgebra,
    Groebner,
}

/// Coordinates of vectors of `R^a` in the basis `(j, m)`, `m` standard.
pub(crate) struct FreeCoords<'a> {
    ring: &'a QuotientRing,
    rank: usize,
    dim: usize,
}

impl<'a> FreeCoords<'a> {
    pub fn new(ring: &'a QuotientRing, rank: usize) -> Result<Self> {
        let dim = ring.dim_k().ok_or(Error::NotArtinian)?;
        Ok(FreeCoords { ring, rank, dim })
    }

    pub fn len(&self) -> usize {
        self.rank * self.dim
    }

    pub fn coords(&self, v: &[Polynomial]) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.len());
        for e in v {
            out.extend(self.ring.coords(e).expect("artinian"));
        }
        out
    }

    pub fn vector(&self, c: &[Scalar]) -> Vec<Polynomial> {
        (0..self.rank)
            .map(|j| self.ring.from_coords(&c[j * self.dim..(j + 1) * self.dim]).expect("artinian"))
            .collect()
    }
}

/// Coordinates in the standard basis of a presented module.
pub(crate) struct ModuleCoords<'a> {
    module: &'a PresentedModule,
    index: HashMap<(usize, Monomial), usize>,
}

impl<'a> ModuleCoords<'a> {
    pub fn new(module: &'a PresentedModule, top: Option<i64>) -> Result<Self> {
        let basis = module.standard_basis(top)?;
        let index = basis.into_iter().enumerate().map(|(i, b)| (b, i)).collect();
        Ok(ModuleCoords { module, index })
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    /// Coordinates; terms outside a truncated basis are dropped.
    pub fn coords(&self, v: &[Polynomial]) -> Vec<Scalar> {
        let field = self.module.ring().field();
        let mut out = vec![field.zero(); self.len()];
        for (j, e) in self.module.reduce(v).iter().enumerate() {
            for (m, c) in e.terms() {
                if let Some(&i) = self.index.get(&(j, m.clone())) {
                    out[i] = c.clone();
                }
            }
        }
        out
    }
}

/// Sorts by degree and keeps each vector not already generated by the
/// kept ones together with `modulo`. For graded input this is a minimal
/// generating set; ungraded input is further pruned to an irredundant set.
pub fn minimalize(
    ring: &QuotientRing,
    degrees: &[i64],
    vectors: Vec<Vec<Polynomial>>,
    modulo: &[Vec<Polynomial>],
) -> Vec<Vec<Polynomial>> {
    let rank = degrees.len();
    let mut modulo: Vec<Vec<Polynomial>> = modulo.to_vec();
    modulo.extend(ideal_multiples(ring, rank));
    let mut tagged: Vec<(VecDegree, Vec<Polynomial>)> = vectors
        .into_iter()
        .map(|v| {
            let v: Vec<Polynomial> = v.iter().map(|e| ring.nf(e)).collect();
            (vector_degree(ring, degrees, &v), v)
        })
        .filter(|(d, _)| *d != VecDegree::Zero)
        .collect();
    let graded = tagged.iter().all(|(d, _)| matches!(d, VecDegree::Homogeneous(_)));
    tagged.sort_by_key(|(d, _)| match d {
        VecDegree::Homogeneous(x) => *x,
        _ => 0,
    });
    let contains = |kept: &[Vec<Polynomial>], v: &[Polynomial]| {
        let mut gens = modulo.clone();
        gens.extend(kept.iter().cloned());
        SubmoduleGb::new(ring.ambient(), rank, &gens).contains(v)
    };
    let mut kept: Vec<Vec<Polynomial>> = Vec::new();
    for (_, v) in tagged {
        if !contains(&kept, &v) {
            kept.push(v);
        }
    }
    if !graded {
        let mut i = 0;
        while i < kept.len() {
            let others: Vec<Vec<Polynomial>> =
                kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
            if contains(&others, &kept[i]) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
    }
    kept
}

/// Minimal generators of `ker(R^a -> M)`, the map sending `e_j` to column
/// `j` of `images`; `source_degrees` grade the source.
pub fn kernel(
    source_degrees: &[i64],
    images: &RMatrix,
    target: &PresentedModule,
    bound: i64,
    backend: Backend,
) -> Result<Vec<Vec<Polynomial>>> {
    let ring = target.ring();
    if images.nrows() != target.ngens() || images.ncols() != source_degrees.len() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix into a module with {} generators from rank {}",
            images.nrows(),
            images.ncols(),
            target.ngens(),
            source_degrees.len()
        )));
    }
    let use_linalg = match backend {
        Backend::Auto => ring.is_artinian(),
        Backend::LinearAlgebra => true,
        Backend::Groebner => false,
    };
    if use_linalg {
        return kernel_linear_algebra(source_degrees, images, target);
    }
    let raw = syzygies_modulo(ring.ambient(), target.ngens(), images.columns(), &target.modulo_generators());
    let gens = minimalize(ring, source_degrees, raw, &[]);
    let limit = source_degrees.iter().copied().max().unwrap_or(0).max(0) + bound;
    for g in &gens {
        if let VecDegree::Homogeneous(d) = vector_degree(ring, source_degrees, g) {
            if d > limit {
                return Err(Error::BoundTooSmall { degree: d, limit });
            }
        }
    }
    Ok(gens)
}

fn map_is_homogeneous(ring: &QuotientRing, source_degrees: &[i64], images: &RMatrix, target: &PresentedModule) -> bool {
    target.is_graded()
        && images.columns().iter().zip(source_degrees).all(|(c, d)| {
            match vector_degree(ring, target.degrees(), c) {
                VecDegree::Zero => true,
                VecDegree::Homogeneous(e) => e == *d,
                VecDegree::Mixed => false,
            }
        })
}

fn kernel_linear_algebra(
    source_degrees: &[i64],
    images: &RMatrix,
    target: &PresentedModule,
) -> Result<Vec<Vec<Polynomial>>> {
    let ring = target.ring();
    let basis = ring.basis()?.to_vec();
    let w = ring.weights().to_vec();
    let a = source_degrees.len();
    let src = FreeCoords::new(ring, a)?;
    let tgt = ModuleCoords::new(target, None)?;
    let graded = map_is_homogeneous(ring, source_degrees, images, target);

    // source basis (j, m) grouped into blocks of equal degree
    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for j in 0..a {
        for (k, m) in basis.iter().enumerate() {
            let d = if graded { source_degrees[j] + m.degree(&w) } else { 0 };
            blocks.entry(d).or_default().push(j * basis.len() + k);
        }
    }
    let field = ring.field();
    let one = field.one();
    let image_of = |idx: usize| {
        let (j, k) = (idx / basis.len(), idx % basis.len());
        let v: Vec<Polynomial> = images.column(j).iter().map(|e| ring.nf(&e.mul_term(&basis[k], &one))).collect();
        tgt.coords(&v)
    };
    let mut kernel_basis: Vec<Vec<Scalar>> = Vec::new();
    for idxs in blocks.values() {
        let cols: Vec<Vec<Scalar>> = idxs.iter().map(|&i| image_of(i)).collect();
        let m = Matrix::from_columns(field, tgt.len(), &cols);
        for null in m.nullspace() {
            let mut v = vec![field.zero(); src.len()];
            for (c, &i) in null.iter().zip(idxs) {
                v[i] = c.clone();
            }
            kernel_basis.push(v);
        }
    }
    // generators: a basis of K modulo mK
    let vars = ring.variables();
    let mut products = Vec::new();
    for b in &kernel_basis {
        let vec = src.vector(b);
        for x in &vars {
            let prod: Vec<Polynomial> = vec.iter().map(|e| ring.mul(e, x)).collect();
            products.push(src.coords(&prod));
        }
    }
    let mk = Subspace::spanned_by(field, src.len(), products);
    let picked = mk.complement_from(&kernel_basis);
    Ok(picked.into_iter().map(|i| src.vector(&kernel_basis[i])).collect())
}

/// Presentation of the submodule of `M` generated by `gens`, on those generators.
pub fn submodule_presentation(
    target: &PresentedModule,
    gens: &[Vec<Polynomial>],
    gen_degrees: Vec<i64>,
    bound: i64,
    backend: Backend,
) -> Result<PresentedModule> {
    let images = RMatrix::from_columns(target.ngens(), gens.to_vec())?;
    let rel = kernel(&gen_degrees, &images, target, bound, backend)?;
    let rel = RMatrix::from_columns(gens.len(), rel)?;
    PresentedModule::cokernel(target.ring(), gen_degrees, rel)
}

/// Degrees of vectors relative to `degrees` (zero vectors get degree 0).
pub fn degrees_of(ring: &QuotientRing, degrees: &[i64], vectors: &[Vec<Polynomial>]) -> Vec<i64> {
    vectors
        .iter()
        .map(|v| match vector_degree(ring, degrees, v) {
            VecDegree::Homogeneous(d) => d,
            _ => 0,
        })
        .collect()
}
