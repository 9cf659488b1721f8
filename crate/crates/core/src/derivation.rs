//! k-derivations of `R = S/I`, differential ideals and the maximally
//! differential ideal `B_D`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideals;
use crate::linalg::{Matrix, Subspace};
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

/// A derivation given by the images `D(x_i)`, lifted to the ambient ring.
#[derive(Clone, Debug)]
pub struct Derivation {
    ring: Arc<QuotientRing>,
    images: Vec<Polynomial>,
    verified: bool,
}

/// An ideal generator `f_j` whose image `D(f_j)` is nonzero in `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub generator: Polynomial,
    pub value: Polynomial,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({}) = {} is not in the ideal", self.generator, self.value)
    }
}

#[derive(Clone, Debug)]
pub enum WellDefined {
    Verified(Derivation),
    Violated(Violation),
}

impl WellDefined {
    pub fn is_verified(&self) -> bool {
        matches!(self, WellDefined::Verified(_))
    }

    pub fn derivation(self) -> Option<Derivation> {
        match self {
            WellDefined::Verified(d) => Some(d),
            WellDefined::Violated(_) => None,
        }
    }
}

/// `sum_i (df/dX_i) images_i` in the ambient ring.
fn extend(images: &[Polynomial], f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.ring());
    for (i, img) in images.iter().enumerate() {
        if img.is_zero() {
            continue;
        }
        let d = f.partial(i);
        if !d.is_zero() {
            out = &out + &(&d * img);
        }
    }
    out
}

/// Verifies `D(f_j) = 0` in `R` for every generator of the defining ideal.
/// Only a wrong number of images is an error.
pub fn check_well_defined(ring: &Arc<QuotientRing>, images: Vec<Polynomial>) -> Result<WellDefined> {
    if images.len() != ring.nvars() {
        return Err(Error::ShapeMismatch(format!("{} images for {} variables", images.len(), ring.nvars())));
    }
    if images.iter().any(|p| !Arc::ptr_eq(p.ring(), ring.ambient()) && **p.ring() != **ring.ambient()) {
        return Err(Error::MismatchedRings);
    }
    let images: Vec<Polynomial> = images.iter().map(|p| ring.nf(p)).collect();
    for (index, g) in ring.generators().iter().enumerate() {
        let value = ring.nf(&extend(&images, g));
        if !value.is_zero() {
            return Ok(WellDefined::Violated(Violation { index, generator: g.clone(), value }));
        }
    }
    Ok(WellDefined::Verified(Derivation { ring: ring.clone(), images, verified: true }))
}

impl Derivation {
    /// A derivation that has not been checked against the ideal.
    pub fn unverified(ring: &Arc<QuotientRing>, images: Vec<Polynomial>) -> Self {
        Derivation { ring: ring.clone(), images, verified: false }
    }

    /// Checks the images and returns the verified derivation or the violation.
    pub fn verify(self) -> Result<std::result::Result<Derivation, Violation>> {
        Ok(match check_well_defined(&self.ring, self.images)? {
            WellDefined::Verified(d) => Ok(d),
            WellDefined::Violated(v) => Err(v),
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `D(f)` in normal form.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !self.verified {
            return Err(Error::UnverifiedDerivation(self.to_string()));
        }
        Ok(self.ring.nf(&extend(&self.images, f)))
    }

    /// Matrix on the standard monomial basis of an artinian ring.
    pub fn matrix(&self) -> Result<Matrix> {
        if !self.verified {
            return Err(Error::UnverifiedDerivation(self.to_string()));
        }
        derivation_matrix(&self.ring, &self.images)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = &self.ring.ambient().vars;
        let mut first = true;
        for (img, v) in self.images.iter().zip(vars) {
            if img.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if img.is_constant() && img.constant_term().is_one() {
                write!(f, "d/d{v}")?;
            } else {
                write!(f, "({img}) d/d{v}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The matrix of `f -> sum_i (df/dX_i) images_i` on `ring`'s basis. The
/// images must define a derivation of `ring`.
fn derivation_matrix(ring: &QuotientRing, images: &[Polynomial]) -> Result<Matrix> {
    let basis = ring.basis()?;
    let one = ring.field().one();
    let cols = basis
        .iter()
        .map(|m| ring.coords(&extend(images, &Polynomial::term(ring.ambient(), m.clone(), one.clone()))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(ring.field(), basis.len(), &cols))
}

fn require_verified(ds: &[Derivation]) -> Result<()> {
    match ds.iter().find(|d| !d.verified) {
        Some(d) => Err(Error::UnverifiedDerivation(d.to_string())),
        None => Ok(()),
    }
}

/// `D(g) in J` for every generator `g` and every `D`, which suffices by
/// the Leibniz rule.
pub fn is_differential_ideal(ring: &QuotientRing, gens: &[Polynomial], ds: &[Derivation]) -> Result<bool> {
    Ok(first_escape(ring, gens, ds)?.is_none())
}

/// The first pair `(D, g)` with `D(g)` outside `J`.
fn first_escape(ring: &QuotientRing, gens: &[Polynomial], ds: &[Derivation]) -> Result<Option<String>> {
    require_verified(ds)?;
    let gb = ideals::lifted_basis(ring, gens);
    for d in ds {
        for g in gens {
            let v = d.apply(g)?;
            if !gb.contains(&v) {
                return Ok(Some(format!("{d} sends {g} to {v}")));
            }
        }
    }
    Ok(None)
}

/// How the maximally differential ideal is found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MdiMode {
    /// Shortcut when it applies, the fixpoint on artinian rings otherwise.
    Auto,
    Shortcut,
    Fixpoint,
    /// Certify a candidate of finite colength.
    Verify(Vec<Polynomial>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdiMethod {
    Shortcut,
    Fixpoint,
    Verify,
}

impl fmt::Display for MdiMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MdiMethod::Shortcut => "shortcut",
            MdiMethod::Fixpoint => "fixpoint",
            MdiMethod::Verify => "verify",
        })
    }
}

#[derive(Clone, Debug)]
pub struct MaximalDifferentialIdeal {
    pub generators: Vec<Polynomial>,
    pub method: MdiMethod,
    /// False only in verify mode, when the candidate is strictly smaller than `B`.
    pub certified: bool,
    /// `dim_k W_0 >= dim_k W_1 >= ...` down to the limit.
    pub fixpoint_dims: Vec<usize>,
    /// `l(R/B)` when finite; in verify mode the colength of the candidate.
    pub quotient_length: Option<usize>,
}

/// `B_D`, the largest proper ideal stable under every derivation.
pub fn maximally_differential_ideal(
    ring: &Arc<QuotientRing>,
    ds: &[Derivation],
    mode: MdiMode,
) -> Result<MaximalDifferentialIdeal> {
    require_verified(ds)?;
    ring.check_local()?;
    match mode {
        MdiMode::Shortcut => shortcut(ring, ds)?
            .ok_or_else(|| Error::Unsupported("some D(x_i) lies outside the maximal ideal".into())),
        MdiMode::Fixpoint => fixpoint(ring, ds),
        MdiMode::Verify(candidate) => verify(ring, ds, &candidate),
        MdiMode::Auto => match shortcut(ring, ds)? {
            Some(b) => Ok(b),
            None if ring.is_artinian() => fixpoint(ring, ds),
            None => Err(Error::Unsupported(
                "the shortcut does not apply and the ring is not artinian; give a candidate ideal".into(),
            )),
        },
    }
}

/// `B = m` when every `D(x_i)` lies in `m`.
fn shortcut(ring: &Arc<QuotientRing>, ds: &[Derivation]) -> Result<Option<MaximalDifferentialIdeal>> {
    let vars = ring.variables();
    for d in ds {
        for x in &vars {
            if !d.apply(x)?.constant_term().is_zero() {
                return Ok(None);
            }
        }
    }
    let generators = ideals::minimal_generators(ring, &vars)?;
    Ok(Some(MaximalDifferentialIdeal {
        generators,
        method: MdiMethod::Shortcut,
        certified: true,
        fixpoint_dims: Vec::new(),
        quotient_length: Some(1),
    }))
}

/// Largest subspace `W` of `m` with `D(W), x_i W` inside `W`, together with
/// the dimensions of the iterates.
fn stable_subspace(ring: &QuotientRing, images: &[Vec<Polynomial>]) -> Result<(Subspace, Vec<usize>)> {
    let basis = ring.basis()?;
    let field = ring.field();
    let n = basis.len();
    let mut maps = images.iter().map(|im| derivation_matrix(ring, im)).collect::<Result<Vec<_>>>()?;
    for x in ring.variables() {
        maps.push(ring.multiplication_matrix(&x)?);
    }
    let unit = (0..n).filter(|&i| !basis[i].is_one());
    let mut w = Subspace::spanned_by(
        field,
        n,
        unit.map(|i| {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            v
        }),
    );
    let mut dims = vec![w.dim()];
    loop {
        let next = w.preimage_all(&maps, &w);
        if next.dim() == w.dim() {
            return Ok((w, dims));
        }
        dims.push(next.dim());
        w = next;
    }
}

fn subspace_elements(ring: &QuotientRing, w: &Subspace) -> Result<Vec<Polynomial>> {
    w.basis().iter().map(|v| ring.from_coords(v)).collect()
}

fn generators_of(ring: &QuotientRing, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    ideals::minimal_generators(ring, &gens).unwrap_or(gens)
}

fn fixpoint(ring: &Arc<QuotientRing>, ds: &[Derivation]) -> Result<MaximalDifferentialIdeal> {
    if !ring.is_artinian() {
        return Err(Error::NotArtinian);
    }
    let images: Vec<Vec<Polynomial>> = ds.iter().map(|d| d.images.clone()).collect();
    let (w, dims) = stable_subspace(ring, &images)?;
    let generators = generators_of(ring, subspace_elements(ring, &w)?);
    let quotient_length = ring.dim_k().map(|n| n - w.dim());
    Ok(MaximalDifferentialIdeal { generators, method: MdiMethod::Fixpoint, certified: true, fixpoint_dims: dims, quotient_length })
}

fn verify(ring: &Arc<QuotientRing>, ds: &[Derivation], candidate: &[Polynomial]) -> Result<MaximalDifferentialIdeal> {
    if let Some(why) = first_escape(ring, candidate, ds)? {
        return Err(Error::NotDifferential(why));
    }
    let quotient = ideals::quotient_ring(ring, candidate)?;
    let Some(len) = quotient.dim_k() else {
        return Err(Error::InfiniteColength);
    };
    // the candidate is differential, so the same images induce derivations on R/J
    let images: Vec<Vec<Polynomial>> = ds.iter().map(|d| d.images.clone()).collect();
    let (w, dims) = stable_subspace(&quotient, &images)?;
    let certified = w.dim() == 0;
    let mut gens = candidate.to_vec();
    gens.extend(subspace_elements(&quotient, &w)?);
    Ok(MaximalDifferentialIdeal {
        generators: generators_of(ring, gens),
        method: MdiMethod::Verify,
        certified,
        fixpoint_dims: dims,
        quotient_length: Some(len),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::PolyRing;

    fn ex31() -> Arc<QuotientRing> {
        let s = PolyRing::new(Field::Prime(2), &["X", "Y"]).unwrap();
        let x = Polynomial::var(&s, 0);
        let y = Polynomial::var(&s, 1);
        QuotientRing::new(&s, vec![x.pow(2), y.pow(2)]).unwrap()
    }

    fn ex36() -> Arc<QuotientRing> {
        let s = PolyRing::weighted(Field::Prime(2), vec!["X".into(), "Y".into(), "Z".into()], vec![4, 5, 6]).unwrap();
        let (x, y, z) = (Polynomial::var(&s, 0), Polynomial::var(&s, 1), Polynomial::var(&s, 2));
        QuotientRing::domain(&s, vec![&(&x * &z) - &y.pow(2), &x.pow(3) - &z.pow(2)]).unwrap()
    }

    fn verified(r: &Arc<QuotientRing>, images: Vec<Polynomial>) -> Derivation {
        check_well_defined(r, images).unwrap().derivation().unwrap()
    }

    #[test]
    fn euler_derivation_on_ci() {
        let r = ex31();
        let (x, y) = (r.var(0), r.var(1));
        let d = verified(&r, vec![x.clone(), y.clone()]);
        assert_eq!(d.apply(&x).unwrap(), x);
        assert_eq!(d.apply(&r.one()).unwrap(), r.zero());
        // D(xy) = 2xy = 0 in characteristic 2
        assert!(d.apply(&(&x * &y)).unwrap().is_zero());
        let b = maximally_differential_ideal(&r, &[d], MdiMode::Auto).unwrap();
        assert_eq!(b.method, MdiMethod::Shortcut);
        assert!(ideals::ideals_equal(&r, &b.generators, &[x, y]));
    }

    #[test]
    fn fixpoint_finds_principal_ideal() {
        let r = ex31();
        let (x, y) = (r.var(0), r.var(1));
        let d = verified(&r, vec![x.clone(), r.one()]);
        assert!(!is_differential_ideal(&r, &[x.clone(), y.clone()], &[d.clone()]).unwrap());
        let b = maximally_differential_ideal(&r, &[d.clone()], MdiMode::Auto).unwrap();
        assert_eq!(b.method, MdiMethod::Fixpoint);
        assert!(ideals::ideals_equal(&r, &b.generators, &[x.clone()]));
        assert_eq!(b.fixpoint_dims.last(), Some(&2));
        assert!(b.fixpoint_dims.windows(2).all(|w| w[1] < w[0]));
        assert!(is_differential_ideal(&r, &b.generators, &[d]).unwrap());
    }

    #[test]
    fn well_definedness_depends_on_characteristic() {
        for (field, ok) in [(Field::Prime(2), true), (Field::Rationals, false)] {
            let s = PolyRing::new(field, &["X"]).unwrap();
            let r = QuotientRing::new(&s, vec![Polynomial::var(&s, 0).pow(2)]).unwrap();
            let w = check_well_defined(&r, vec![r.one()]).unwrap();
            assert_eq!(w.is_verified(), ok);
            if let WellDefined::Violated(v) = w {
                assert_eq!(v.index, 0);
            }
        }
    }

    #[test]
    fn unverified_derivations_are_rejected() {
        let r = ex31();
        let d = Derivation::unverified(&r, vec![r.one(), r.zero()]);
        assert!(matches!(d.apply(&r.var(0)), Err(Error::UnverifiedDerivation(_))));
    }

    #[test]
    fn verify_mode_on_numerical_semigroup_ring() {
        let r = ex36();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let euler_y = verified(&r, vec![r.zero(), y.clone(), r.zero()]);
        let b = maximally_differential_ideal(&r, &[euler_y], MdiMode::Auto).unwrap();
        assert_eq!(b.generators.len(), 3);
        let dy = verified(&r, vec![r.zero(), r.one(), r.zero()]);
        assert_eq!(dy.apply(&y).unwrap(), r.one());
        let b = maximally_differential_ideal(&r, &[dy.clone()], MdiMode::Verify(vec![x.clone(), z.clone()])).unwrap();
        assert!(b.certified);
        assert_eq!(b.quotient_length, Some(2));
        let err = maximally_differential_ideal(&r, &[dy.clone()], MdiMode::Verify(vec![x.clone(), y.clone()]));
        assert!(matches!(err, Err(Error::NotDifferential(_))));
        let err = maximally_differential_ideal(&r, &[dy.clone()], MdiMode::Verify(vec![]));
        assert!(matches!(err, Err(Error::InfiniteColength)));
        // R/(x) = k[y,z]/(y^2,z^2) still carries the stable ideal (z)
        let b = maximally_differential_ideal(&r, &[dy.clone()], MdiMode::Verify(vec![x.clone()])).unwrap();
        assert!(!b.certified);
        assert!(ideals::ideals_equal(&r, &b.generators, &[x.clone(), z.clone()]));
        assert!(matches!(maximally_differential_ideal(&r, &[dy], MdiMode::Auto), Err(Error::Unsupported(_))));
    }
}
