//! Minimal presentations, syzygy modules and free resolutions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::complex::FreeComplex;
use crate::module::kernel::{degrees_of, kernel, minimalize, Backend};
use crate::module::matrix::RMatrix;
use crate::module::presented::PresentedModule;
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

/// A presentation with no unit entries and irredundant relations, plus the
/// original generators that survive.
#[derive(Clone, Debug)]
pub struct MinimalPresentation {
    pub module: PresentedModule,
    pub kept: Vec<usize>,
}

pub fn minimal_presentation(m: &PresentedModule) -> Result<MinimalPresentation> {
    let ring = m.ring().clone();
    ring.check_local()?;
    let mut degrees: Vec<i64> = m.degrees().to_vec();
    let mut kept: Vec<usize> = (0..m.ngens()).collect();
    let mut cols: Vec<Vec<Polynomial>> = m.relations().columns().to_vec();
    while let Some((c, j, inv)) = find_unit(&ring, &cols) {
        let pivot = cols.remove(c);
        for col in &mut cols {
            let f = ring.mul(&col[j], &inv);
            if f.is_zero() {
                continue;
            }
            for (e, p) in col.iter_mut().zip(&pivot) {
                *e = ring.nf(&(&*e - &(&f * p)));
            }
        }
        for col in &mut cols {
            col.remove(j);
        }
        degrees.remove(j);
        kept.remove(j);
    }
    let cols = minimalize(&ring, &degrees, cols, &[]);
    let module = PresentedModule::cokernel(&ring, degrees.clone(), RMatrix::from_columns(degrees.len(), cols)?)?;
    Ok(MinimalPresentation { module, kept })
}

fn find_unit(ring: &QuotientRing, cols: &[Vec<Polynomial>]) -> Option<(usize, usize, Polynomial)> {
    for (c, col) in cols.iter().enumerate() {
        for (j, e) in col.iter().enumerate() {
            if !e.constant_term().is_zero() {
                if let Some(inv) = ring.inverse(e) {
                    return Some((c, j, inv));
                }
            }
        }
    }
    None
}

/// `Syz_1(M) = ker(R^g -> M)` on the given generators, presented on a
/// minimal generating set of the relations.
pub fn syzygy_module(m: &PresentedModule, bound: i64, backend: Backend) -> Result<PresentedModule> {
    let ring = m.ring();
    let gens = minimalize(ring, m.degrees(), m.relations().columns().to_vec(), &[]);
    let degs = degrees_of(ring, m.degrees(), &gens);
    let images = RMatrix::from_columns(m.ngens(), gens)?;
    let free = PresentedModule::free(ring, m.degrees().to_vec());
    let rel = kernel(&degs, &images, &free, bound, backend)?;
    PresentedModule::cokernel(ring, degs.clone(), RMatrix::from_columns(degs.len(), rel)?)
}

/// The ideal `J` as a module, through `0 -> J -> R -> R/J -> 0`.
pub fn ideal_module(ring: &Arc<QuotientRing>, gens: &[Polynomial], bound: i64, backend: Backend) -> Result<PresentedModule> {
    syzygy_module(&PresentedModule::quotient_ring(ring, gens), bound, backend)
}

/// Minimal free resolution `F_len -> ... -> F_0 -> M`.
pub fn free_resolution(m: &PresentedModule, len: usize, bound: i64, backend: Backend) -> Result<FreeComplex> {
    let ring = m.ring().clone();
    let pres = minimal_presentation(m)?.module;
    let mut degrees = vec![pres.degrees().to_vec()];
    let mut maps = Vec::new();
    if len >= 1 {
        let d1 = pres.relations().clone();
        degrees.push(pres.relation_degrees());
        maps.push(d1);
    }
    while maps.len() < len {
        let i = maps.len();
        let src = degrees[i].clone();
        let prev = PresentedModule::free(&ring, degrees[i - 1].clone());
        let next = kernel(&src, &maps[i - 1], &prev, bound, backend)?;
        let degs = degrees_of(&ring, &src, &next);
        maps.push(RMatrix::from_columns(src.len(), next)?);
        degrees.push(degs);
    }
    FreeComplex::new(&ring, degrees, maps)
}

/// Betti numbers `b_0, ..., b_len`.
pub fn betti_numbers(m: &PresentedModule, len: usize, bound: i64, backend: Backend) -> Result<Vec<usize>> {
    Ok(free_resolution(m, len, bound, backend)?.ranks())
}

/// `Syz_i(M)` for `i >= 1`, the image of `d_i` in a minimal resolution.
pub fn syzygy(m: &PresentedModule, i: usize, bound: i64, backend: Backend) -> Result<PresentedModule> {
    if i == 0 {
        return Err(Error::Unsupported("Syz_0 is the module itself".into()));
    }
    let res = free_resolution(m, i + 1, bound, backend)?;
    let ring = m.ring();
    let rel = res.map(i + 1).clone();
    PresentedModule::cokernel(ring, res.degrees(i).to_vec(), rel)
}
