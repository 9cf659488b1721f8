use crate::error::Result;
use crate::linalg::Matrix;
use crate::module::kernel::ModuleCoords;
use crate::module::presented::PresentedModule;
use crate::poly::{Monomial, Polynomial};

/// A k-basis of a presented module with the matrices of multiplication by
/// the variables. Truncated realizations drop everything above `top`.
#[derive(Clone, Debug)]
pub struct KRealization {
    pub basis: Vec<(usize, Monomial)>,
    pub degrees: Vec<i64>,
    pub multiplication: Vec<Matrix>,
    pub exact: bool,
    pub top: Option<i64>,
}

impl KRealization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Exact when `M` is finite-dimensional; otherwise truncated at degree
/// `max generator degree + bound`, or an error without a bound.
pub fn k_realize(m: &PresentedModule, bound: Option<i64>) -> Result<KRealization> {
    let ring = m.ring();
    let finite = m.dim_k().is_some();
    let top = if finite {
        None
    } else {
        let base = m.degrees().iter().copied().max().unwrap_or(0);
        Some(base + bound.ok_or(crate::error::Error::InfiniteStaircase)?)
    };
    let basis = m.standard_basis(top)?;
    let coords = ModuleCoords::new(m, top)?;
    let w = ring.weights().to_vec();
    let degrees = basis.iter().map(|(j, mono)| m.degrees()[*j] + mono.degree(&w)).collect();
    let field = ring.field();
    let multiplication = (0..ring.nvars())
        .map(|i| {
            let cols: Vec<_> = basis
                .iter()
                .map(|(j, mono)| {
                    let mut v = vec![ring.zero(); m.ngens()];
                    v[*j] = Polynomial::term(ring.ambient(), mono.mul(&Monomial::var(ring.nvars(), i)), field.one());
                    coords.coords(&v)
                })
                .collect();
            Matrix::from_columns(field, basis.len(), &cols)
        })
        .collect();
    Ok(KRealization { basis, degrees, multiplication, exact: finite, top })
}
