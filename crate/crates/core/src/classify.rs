//! Socle, Gorenstein and complete-intersection tests, depth, regular
//! sequences, total reflexivity and G-dimension evidence.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideals;
use crate::linalg::Matrix;
use crate::module::{
    biduality, ext_range, hom_dual, kernel, syzygy, Backend, PresentedModule, RMatrix,
};
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::QuotientRing;

/// A k-basis of `(0 :_R m)` for an artinian ring.
#[derive(Clone, Debug)]
pub struct Socle {
    pub basis: Vec<Polynomial>,
}

impl Socle {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn socle(ring: &QuotientRing) -> Result<Socle> {
    let basis = ring.basis()?.to_vec();
    let field = ring.field();
    let maps = ring.variables().iter().map(|x| ring.multiplication_matrix(x)).collect::<Result<Vec<_>>>()?;
    // graded rings have graded socles: solve one degree at a time
    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let w = ring.weights();
    for (i, m) in basis.iter().enumerate() {
        blocks.entry(if ring.is_graded() { m.degree(w) } else { 0 }).or_default().push(i);
    }
    let mut out = Vec::new();
    for idxs in blocks.values() {
        let cols: Vec<Vec<_>> = idxs
            .iter()
            .map(|&i| maps.iter().flat_map(|a| a.column(i)).collect())
            .collect();
        let system = Matrix::from_columns(field, maps.len() * basis.len(), &cols);
        for null in system.nullspace() {
            let mut v = vec![field.zero(); basis.len()];
            for (c, &i) in null.into_iter().zip(idxs) {
                v[i] = c;
            }
            out.push(ring.from_coords(&v)?);
        }
    }
    Ok(Socle { basis: out })
}

pub fn is_gorenstein_artinian(ring: &QuotientRing) -> Result<bool> {
    Ok(socle(ring)?.dim() == 1)
}

/// `embdim R = mu(m)`.
pub fn embedding_dimension(ring: &QuotientRing) -> Result<usize> {
    ring.check_local()?;
    ideals::mu(ring, &ring.variables())
}

/// Whether `embdim R = dim R + 1`.
pub fn embdim_is_dim_plus_one(ring: &QuotientRing) -> Result<bool> {
    Ok(embedding_dimension(ring)? == ring.krull_dimension() + 1)
}

/// `M` shifted by `s`: generator degrees `d_j + s`.
fn shifted(m: &PresentedModule, s: i64) -> Result<PresentedModule> {
    PresentedModule::cokernel(m.ring(), m.degrees().iter().map(|d| d + s).collect(), m.relations().clone())
}

/// Generators of `(0 :_M m)` that are nonzero in `M`.
pub fn torsion_killed_by_maximal_ideal(m: &PresentedModule, bound: i64, backend: Backend) -> Result<Vec<Vec<Polynomial>>> {
    let ring = m.ring();
    let g = m.ngens();
    let n = ring.nvars();
    let mut target = PresentedModule::free(ring, Vec::new());
    for &w in ring.weights() {
        target = target.direct_sum(&shifted(m, -(w as i64))?)?;
    }
    let cols = (0..g)
        .map(|j| {
            let mut v = vec![ring.zero(); n * g];
            for i in 0..n {
                v[i * g + j] = ring.var(i);
            }
            v
        })
        .collect();
    let images = RMatrix::from_columns(n * g, cols)?;
    let gens = kernel(m.degrees(), &images, &target, bound, backend)?;
    Ok(gens.into_iter().filter(|v| !m.is_zero_element(v)).collect())
}

/// `r` is a nonzerodivisor on `M`.
pub fn is_nonzerodivisor(m: &PresentedModule, r: &Polynomial, bound: i64, backend: Backend) -> Result<bool> {
    let ring = m.ring();
    let r = ring.nf(r);
    if r.is_zero() {
        return Ok(m.is_zero());
    }
    let e = if r.is_homogeneous() { r.degree().unwrap_or(0) } else { 0 };
    let g = m.ngens();
    let cols = (0..g)
        .map(|j| {
            let mut v = vec![ring.zero(); g];
            v[j] = r.clone();
            v
        })
        .collect();
    let images = RMatrix::from_columns(g, cols)?;
    let src: Vec<i64> = m.degrees().iter().map(|d| d - e).collect();
    let ker = kernel(&src, &images, m, bound, backend)?;
    Ok(ker.iter().all(|v| m.is_zero_element(v)))
}

fn quotient_by_element(m: &PresentedModule, r: &Polynomial) -> Result<PresentedModule> {
    let ring = m.ring();
    let g = m.ngens();
    let extra: Vec<Vec<Polynomial>> = (0..g)
        .map(|j| {
            let mut v = vec![ring.zero(); g];
            v[j] = r.clone();
            v
        })
        .collect();
    m.quotient_by(&extra)
}

/// Homogeneous candidates: the variables, then sums of variables of equal weight.
fn nzd_candidates(ring: &QuotientRing) -> Vec<Polynomial> {
    let vars = ring.variables();
    let w = ring.weights();
    let mut out = vars.clone();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            if w[i] == w[j] {
                out.push(&vars[i] + &vars[j]);
            }
        }
    }
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &wi) in w.iter().enumerate() {
        classes.entry(wi).or_default().push(i);
    }
    for idx in classes.values().filter(|c| c.len() > 2) {
        out.push(idx.iter().fold(ring.zero(), |acc, &i| &acc + &vars[i]));
    }
    out
}

/// `depth_R M` with its evidence: a regular sequence of that length and,
/// at the end, an element of `M/(seq)M` killed by `m`.
#[derive(Clone, Debug)]
pub struct Depth {
    pub value: usize,
    pub sequence: Vec<Polynomial>,
    pub witness: Option<Vec<Polynomial>>,
    /// The value was reached through `depth M <= dim R` rather than a witness.
    pub capped: bool,
}

pub fn depth(m: &PresentedModule, bound: i64, backend: Backend) -> Result<Depth> {
    let ring = m.ring();
    ring.check_local()?;
    if m.is_zero() {
        return Err(Error::Unsupported("depth of the zero module".into()));
    }
    let cap = ring.krull_dimension();
    let mut current = m.clone();
    let mut sequence = Vec::new();
    loop {
        let torsion = torsion_killed_by_maximal_ideal(&current, bound, backend)?;
        if let Some(w) = torsion.into_iter().next() {
            return Ok(Depth { value: sequence.len(), sequence, witness: Some(w), capped: false });
        }
        let mut found = None;
        for r in nzd_candidates(ring) {
            if is_nonzerodivisor(&current, &r, bound, backend)? {
                found = Some(r);
                break;
            }
        }
        match found {
            Some(r) => {
                current = quotient_by_element(&current, &r)?;
                sequence.push(r);
                if sequence.len() == cap {
                    return Ok(Depth { value: cap, sequence, witness: None, capped: false });
                }
            }
            None if sequence.len() + 1 == cap => {
                return Ok(Depth { value: cap, sequence, witness: None, capped: true });
            }
            None => return Err(Error::InconclusiveDepth { bound }),
        }
    }
}

pub fn ring_depth(ring: &Arc<QuotientRing>, bound: i64, backend: Backend) -> Result<Depth> {
    depth(&PresentedModule::free(ring, vec![0]), bound, backend)
}

/// Each element is a nonzerodivisor modulo its predecessors and
/// `R/(seq) != 0`.
pub fn is_regular_sequence(ring: &Arc<QuotientRing>, seq: &[Polynomial], bound: i64, backend: Backend) -> Result<bool> {
    let mut current = PresentedModule::free(ring, vec![0]);
    for a in seq {
        if !is_nonzerodivisor(&current, a, bound, backend)? {
            return Ok(false);
        }
        current = quotient_by_element(&current, a)?;
    }
    Ok(!current.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiVerdict {
    pub complete_intersection: bool,
    pub reason: String,
}

impl fmt::Display for CiVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = if self.complete_intersection { "complete intersection" } else { "not a complete intersection" };
        write!(f, "{word} ({})", self.reason)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// `B = 0`, or `B` is generated by a regular sequence.
pub fn is_complete_intersection_ideal(
    ring: &Arc<QuotientRing>,
    gens: &[Polynomial],
    bound: i64,
    backend: Backend,
) -> Result<CiVerdict> {
    let min = ideals::minimal_generators(ring, gens)?;
    if min.is_empty() {
        return Ok(CiVerdict { complete_intersection: true, reason: "B = 0".into() });
    }
    let d = ring_depth(ring, bound, backend)?.value;
    let mu = min.len();
    if d == 0 {
        return Ok(CiVerdict { complete_intersection: false, reason: "depth 0, B ≠ 0".into() });
    }
    if mu > d {
        return Ok(CiVerdict { complete_intersection: false, reason: format!("μ(B)={mu} > depth={d}") });
    }
    for p in permutations(mu) {
        let seq: Vec<Polynomial> = p.iter().map(|&i| min[i].clone()).collect();
        if is_regular_sequence(ring, &seq, bound, backend)? {
            let list: Vec<String> = seq.iter().map(ToString::to_string).collect();
            return Ok(CiVerdict { complete_intersection: true, reason: format!("regular sequence {}", list.join(", ")) });
        }
    }
    Ok(CiVerdict { complete_intersection: false, reason: "no ordering of the minimal generators is a regular sequence".into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationClass {
    CompleteIntersection,
    AlmostCompleteIntersection,
    Neither,
}

impl fmt::Display for PresentationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationClass::CompleteIntersection => "complete_intersection",
            PresentationClass::AlmostCompleteIntersection => "almost_ci",
            PresentationClass::Neither => "neither",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub class: PresentationClass,
    pub mu: usize,
    pub height: usize,
}

/// Compares `mu(I)` with `ht(I) = n - dim S/I` for a homogeneous `I` of `S`.
pub fn ci_presentation_check(ambient: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<PresentationCheck> {
    let s = QuotientRing::polynomial_ring(ambient);
    let mu = ideals::mu(&s, gens)?;
    let gb = GroebnerBasis::new(ambient, gens);
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let height = ambient.nvars() - gb.krull_dimension()?;
    let class = if mu == height {
        PresentationClass::CompleteIntersection
    } else if mu <= height + 1 {
        PresentationClass::AlmostCompleteIntersection
    } else {
        PresentationClass::Neither
    };
    Ok(PresentationCheck { class, mu, height })
}

/// Default number of Ext modules checked: 10 over artinian rings, 5 otherwise.
pub fn default_ext_bound(ring: &QuotientRing) -> usize {
    if ring.is_artinian() {
        10
    } else {
        5
    }
}

/// A bounded total-reflexivity check: `M -> M**` is an isomorphism and
/// `Ext^i(M, R) = Ext^i(M*, R) = 0` for `1 <= i <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalReflexivity {
    pub pass: bool,
    pub ext_bound: usize,
    pub failure: Option<String>,
}

impl fmt::Display for TotalReflexivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS({})", self.ext_bound),
            Some(why) => write!(f, "FAIL({why})"),
        }
    }
}

pub fn totally_reflexive_check(m: &PresentedModule, n: usize, bound: i64, backend: Backend) -> Result<TotalReflexivity> {
    let fail = |why: String| Ok(TotalReflexivity { pass: false, ext_bound: n, failure: Some(why) });
    if !biduality(m, bound, backend)?.is_iso() {
        return fail("biduality".into());
    }
    if let Some(i) = ext_range(m, n, bound, backend)?.iter().position(|e| !e.is_zero()) {
        return fail(format!("Ext^{}(M,R) ≠ 0", i + 1));
    }
    let dual = hom_dual(m, bound, backend)?.module;
    if let Some(i) = ext_range(&dual, n, bound, backend)?.iter().position(|e| !e.is_zero()) {
        return fail(format!("Ext^{}(M*,R) ≠ 0", i + 1));
    }
    Ok(TotalReflexivity { pass: true, ext_bound: n, failure: None })
}

/// Evidence about `Gdim M` from finitely many Ext modules; never a claim
/// that the dimension is infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdimEvidence {
    /// `M` passes the total-reflexivity check up to `Ext^n`.
    Zero(usize),
    /// `Syz_d(M)` passes the check up to `Ext^n`.
    AtMost(usize, usize),
    /// `Ext^i(M, R) != 0` with `i > depth R`.
    Obstructed(usize),
    /// None of the above within `n`.
    Undetermined(usize),
}

impl fmt::Display for GdimEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GdimEvidence::Zero(n) => write!(f, "zero({n})"),
            GdimEvidence::AtMost(d, n) => write!(f, "at_most({d},{n})"),
            GdimEvidence::Obstructed(i) => write!(f, "obstructed({i})"),
            GdimEvidence::Undetermined(n) => write!(f, "undetermined({n})"),
        }
    }
}

pub fn gdim_evidence(m: &PresentedModule, n: usize, bound: i64, backend: Backend) -> Result<GdimEvidence> {
    if totally_reflexive_check(m, n, bound, backend)?.pass {
        return Ok(GdimEvidence::Zero(n));
    }
    let ring = m.ring();
    let depth_r = ring_depth(ring, bound, backend)?.value;
    for d in 1..=depth_r {
        let s = syzygy(m, d, bound, backend)?;
        if s.is_zero() || totally_reflexive_check(&s, n, bound, backend)?.pass {
            return Ok(GdimEvidence::AtMost(d, n));
        }
    }
    let exts = ext_range(m, n, bound, backend)?;
    match (depth_r + 1..=n).find(|&i| !exts[i - 1].is_zero()) {
        Some(i) => Ok(GdimEvidence::Obstructed(i)),
        None => Ok(GdimEvidence::Undetermined(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::module::{ideal_module, DEFAULT_DEGREE_BOUND};

    const B: i64 = DEFAULT_DEGREE_BOUND;

    fn two_var(field: Field, gens: impl Fn(&Polynomial, &Polynomial) -> Vec<Polynomial>) -> Arc<QuotientRing> {
        let s = PolyRing::new(field, &["X", "Y"]).unwrap();
        let x = Polynomial::var(&s, 0);
        let y = Polynomial::var(&s, 1);
        QuotientRing::new(&s, gens(&x, &y)).unwrap()
    }

    #[test]
    fn socles() {
        let r = two_var(Field::Prime(2), |x, y| vec![x.pow(2), y.pow(2)]);
        let s = socle(&r).unwrap();
        assert_eq!(s.basis, vec![&r.var(0) * &r.var(1)]);
        assert!(is_gorenstein_artinian(&r).unwrap());
        let r = two_var(Field::Prime(2), |x, y| vec![x.pow(4), &x.pow(2) * &y.pow(2), y.pow(4)]);
        let s = socle(&r).unwrap();
        assert_eq!(s.dim(), 2);
        let (x, y) = (r.var(0), r.var(1));
        assert!(ideals::ideals_equal(&r, &s.basis, &[&x.pow(3) * &y, &x * &y.pow(3)]));
        let r = two_var(Field::Prime(2), |x, y| vec![x.pow(2), x * y, y.pow(2)]);
        assert_eq!(socle(&r).unwrap().dim(), 2);
    }

    #[test]
    fn embedding_dimensions() {
        let r = two_var(Field::Prime(2), |x, y| vec![x.pow(2), y.pow(2)]);
        assert_eq!(embedding_dimension(&r).unwrap(), 2);
        assert!(!embdim_is_dim_plus_one(&r).unwrap());
        let s = PolyRing::new(Field::Prime(3), &["X"]).unwrap();
        let r = QuotientRing::new(&s, vec![Polynomial::var(&s, 0).pow(2)]).unwrap();
        assert!(embdim_is_dim_plus_one(&r).unwrap());
    }

    #[test]
    fn depth_of_embedded_point() {
        let r = two_var(Field::Prime(2), |x, y| vec![x.pow(2), x * &y.pow(2)]);
        let d = ring_depth(&r, B, Backend::Auto).unwrap();
        assert_eq!(d.value, 0);
        assert_eq!(d.witness, Some(vec![&r.var(0) * &r.var(1)]));
    }

    #[test]
    fn depth_of_node() {
        let r = two_var(Field::Rationals, |x, y| vec![x * y]);
        let d = ring_depth(&r, B, Backend::Auto).unwrap();
        assert_eq!(d.value, 1);
        assert_eq!(d.sequence, vec![&r.var(0) + &r.var(1)]);
        let b = [r.var(0), r.var(1)];
        let v = is_complete_intersection_ideal(&r, &b, B, Backend::Auto).unwrap();
        assert!(!v.complete_intersection);
        assert_eq!(v.reason, "μ(B)=2 > depth=1");
        assert!(is_regular_sequence(&r, &[&r.var(0) + &r.var(1)], B, Backend::Auto).unwrap());
        assert!(!is_regular_sequence(&r, &[r.var(0)], B, Backend::Auto).unwrap());
        let m = ideal_module(&r, &b, B, Backend::Auto).unwrap();
        assert_eq!(gdim_evidence(&m, 4, B, Backend::Auto).unwrap(), GdimEvidence::Zero(4));
    }

    #[test]
    fn ci_verdicts() {
        let r = two_var(Field::Prime(2), |x, y| vec![x.pow(2), y.pow(2)]);
        let v = is_complete_intersection_ideal(&r, &[r.var(0), r.var(1)], B, Backend::Auto).unwrap();
        assert_eq!(v.reason, "depth 0, B ≠ 0");
        let v = is_complete_intersection_ideal(&r, &[], B, Backend::Auto).unwrap();
        assert!(v.complete_intersection);
        assert!(is_regular_sequence(&r, &[], B, Backend::Auto).unwrap());
        // over k[X] itself, (x) is generated by a regular sequence
        let s = PolyRing::new(Field::Rationals, &["X"]).unwrap();
        let line = QuotientRing::polynomial_ring(&s);
        let v = is_complete_intersection_ideal(&line, &[line.var(0)], B, Backend::Auto).unwrap();
        assert!(v.complete_intersection, "{v}");
    }

    #[test]
    fn presentation_classes() {
        let s = PolyRing::new(Field::Rationals, &["X", "Y"]).unwrap();
        let x = Polynomial::var(&s, 0);
        let y = Polynomial::var(&s, 1);
        let c = ci_presentation_check(&s, &[x.pow(2), y.pow(2)]).unwrap();
        assert_eq!((c.class, c.mu, c.height), (PresentationClass::CompleteIntersection, 2, 2));
        let c = ci_presentation_check(&s, &[x.pow(2), &x * &y, y.pow(2)]).unwrap();
        assert_eq!(c.class, PresentationClass::AlmostCompleteIntersection);
        let c = ci_presentation_check(&s, &[x.pow(3), &x.pow(2) * &y, &x * &y.pow(2), y.pow(3)]).unwrap();
        assert_eq!(c.class, PresentationClass::Neither);
    }

    #[test]
    fn residue_field_fails_biduality() {
        let r = two_var(Field::Prime(2), |x, y| vec![x.pow(2), x * y, y.pow(2)]);
        let k = PresentedModule::residue_field(&r);
        let t = totally_reflexive_check(&k, 3, B, Backend::Auto).unwrap();
        assert_eq!(t.failure.as_deref(), Some("biduality"));
        let free = PresentedModule::free_of_rank(&r, 2);
        assert_eq!(gdim_evidence(&free, 3, B, Backend::Auto).unwrap(), GdimEvidence::Zero(3));
        assert!(matches!(gdim_evidence(&k, 3, B, Backend::Auto).unwrap(), GdimEvidence::Obstructed(_)));
    }
}
