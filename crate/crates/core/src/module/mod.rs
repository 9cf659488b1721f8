//! Finitely presented modules over `R = S/I`: kernels, resolutions,
//! duals, Ext and Tor, and homology of complexes.

mod complex;
mod duality;
mod kernel;
mod matrix;
mod presented;
mod realize;
mod resolution;

pub use complex::{Complex, FreeComplex};
pub use duality::{biduality, ext, ext_range, first_nonvanishing_ext, hom_dual, tor, Biduality, Dual};
pub use kernel::{degrees_of, kernel, minimalize, submodule_presentation, Backend, DEFAULT_DEGREE_BOUND};
pub use matrix::RMatrix;
pub use presented::{vector_degree, PresentedModule, VecDegree};
pub use realize::{k_realize, KRealization};
pub use resolution::{
    betti_numbers, free_resolution, ideal_module, minimal_presentation, syzygy, syzygy_module, MinimalPresentation,
};
