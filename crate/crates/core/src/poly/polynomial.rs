use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::monomial::{Monomial, MonomialOrder};
use crate::poly::ring::PolyRing;

/// Sparse polynomial with exact coefficients. No zero coefficients are
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Pow(i64),
}

/// Checked arithmetic: rejects operands from different rings and negative powers.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    if let PolyOp::Pow(n) = op {
        let n = u32::try_from(n).map_err(|_| Error::Unsupported(format!("negative exponent {n}")))?;
        return Ok(a.pow(n));
    }
    if !a.same_ring(b) {
        return Err(Error::MismatchedRings);
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::Pow(_) => unreachable!(),
    })
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_int(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(n))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), ring.field.one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &Arc<PolyRing>, it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f^q` for `q` a power of the characteristic, via `(sum c m)^q = sum c^q m^q`.
    pub fn frobenius_power(&self, q: u64) -> Polynomial {
        let q32 = u32::try_from(q).expect("Frobenius exponent fits in u32");
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.pow(q32), c.pow(q))).collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let field = self.ring.field;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::from_exponents(ex), c * &field.from_i64(e as i64));
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        Ok(self.partial(self.ring.var_index(var)?))
    }

    /// Maximal term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        v
    }

    /// Weighted degree of the top-degree part; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree(&self.ring.weights)).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree(&self.ring.weights)).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Make the leading coefficient one.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            Err(_) => self.clone(),
        }
    }

    /// Re-home into a ring with more variables (appended or prepended).
    pub fn embed(&self, target: &Arc<PolyRing>, offset: usize) -> Polynomial {
        let n = target.nvars();
        Polynomial {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; n];
                    e[offset..offset + m.nvars()].copy_from_slice(m.exponents());
                    (Monomial::from_exponents(e), c.clone())
                })
                .collect(),
        }
    }

    /// Inverse of [`embed`]; `None` if a dropped variable occurs.
    pub fn restrict(&self, target: &Arc<PolyRing>, offset: usize) -> Option<Polynomial> {
        let n = target.nvars();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents();
            if e[..offset].iter().chain(&e[offset + n..]).any(|x| *x > 0) {
                return None;
            }
            terms.insert(Monomial::from_exponents(e[offset..offset + n].to_vec()), c.clone());
        }
        Some(Polynomial { ring: target.clone(), terms })
    }

    /// Substitute a polynomial for every variable (`images[i]` for `X_i`).
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, e) in m.exponents().iter().enumerate() {
                if *e > 0 {
                    t = &t * &images[i].pow(*e);
                }
            }
            out = &out + &t;
        }
        out
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.ring.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.ring.vars[i], e)),
            }
        }
        parts.join("*")
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn assert_same(a: &Polynomial, b: &Polynomial) {
    assert!(a.same_ring(b), "polynomials from different rings");
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms(&self.ring.order) {
            let neg = c.is_negative();
            let mag = if neg { -&c } else { c };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = self.fmt_monomial(&m);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Compare two polynomials by their leading monomials under `ord`.
pub fn cmp_leading(a: &Polynomial, b: &Polynomial, ord: &MonomialOrder) -> Ordering {
    match (a.leading_term(ord), b.leading_term(ord)) {
        (Ok((ma, _)), Ok((mb, _))) => ord.cmp(&ma, &mb),
        (Err(_), Err(_)) => Ordering::Equal,
        (Err(_), _) => Ordering::Less,
        (_, Err(_)) => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::monomial::MonomialOrder;

    fn xy(field: Field) -> (Arc<PolyRing>, Polynomial, Polynomial) {
        let r = PolyRing::new(field, &["X", "Y"]).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn char_two_binomial_square() {
        let (_, x, y) = xy(Field::Prime(2));
        let s = &x + &y;
        assert_eq!(&s * &s, &(&x * &x) + &(&y * &y));
    }

    #[test]
    fn subtraction_cancels() {
        let (r, x, _) = xy(Field::Rationals);
        let f = &x + &Polynomial::one(&r);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn xy_plus_yx_vanishes_in_char_two() {
        let (_, x, y) = xy(Field::Prime(2));
        assert!((&(&x * &y) + &(&y * &x)).is_zero());
    }

    #[test]
    fn derivatives() {
        let (r, x, y) = xy(Field::Prime(2));
        assert!(x.pow(4).partial(0).is_zero());
        assert_eq!((&x * &y).partial(0), y);
        assert!(Polynomial::from_int(&r, 1).partial(0).is_zero());
        assert!(matches!(x.partial_derivative("W"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn leading_terms() {
        let (r, x, y) = xy(Field::Rationals);
        let f = &x.pow(2) + &(&x * &y.pow(2));
        let (m, _) = f.leading_term(&MonomialOrder::grevlex(vec![1, 1])).unwrap();
        assert_eq!(m.exponents(), &[1, 2]);
        let (m, _) = f.leading_term(&MonomialOrder::lex(2)).unwrap();
        assert_eq!(m.exponents(), &[2, 0]);
        let c = Polynomial::from_int(&r, 7);
        let (m, k) = c.leading_term(&r.order).unwrap();
        assert!(m.is_one());
        assert_eq!(k, r.field.from_i64(7));
        assert_eq!(Polynomial::zero(&r).leading_term(&r.order), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn checked_arith_rejects_mismatch() {
        let (_, x, _) = xy(Field::Rationals);
        let (_, u, _) = xy(Field::Prime(3));
        assert_eq!(poly_arith(&x, &u, PolyOp::Add), Err(Error::MismatchedRings));
        assert!(poly_arith(&x, &x, PolyOp::Pow(-1)).is_err());
        assert_eq!(poly_arith(&x, &x, PolyOp::Pow(3)).unwrap(), x.pow(3));
    }

    #[test]
    fn display() {
        let (r, x, y) = xy(Field::Rationals);
        let f = &(&x.pow(2) - &(&y * &Polynomial::from_int(&r, 3))) + &Polynomial::one(&r);
        assert_eq!(f.to_string(), "X^2 - 3*Y + 1");
    }
}
