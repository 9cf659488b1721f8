//! Groebner bases for ideals and submodules of free modules.

mod buchberger;
mod ideal;
mod submodule;

pub use ideal::{
    buchberger, divide_exact, ideal_quotient, intersect_ideals, monomials_of_degree, GroebnerBasis, IdealBasis,
    Staircase,
};
pub use submodule::{syzygies_modulo, SubmoduleGb};
