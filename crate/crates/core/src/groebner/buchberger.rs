//! Buchberger's algorithm over free modules `S^r`, position-over-term.
//! Ideals are the rank-one case.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::field::Scalar;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coef: Scalar,
}

/// Position-over-term: a smaller position index is more significant.
pub(crate) fn cmp_terms(ord: &MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ord.cmp(a.1, b.1))
}

/// A module element as terms sorted descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MVec {
    pub terms: Vec<Term>,
}

impl MVec {
    pub fn from_components(ord: &MonomialOrder, comps: &[Polynomial]) -> MVec {
        let mut terms: Vec<Term> = comps
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| Term { pos, mono: m.clone(), coef: c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| cmp_terms(ord, (b.pos, &b.mono), (a.pos, &a.mono)));
        MVec { terms }
    }

    pub fn to_components(&self, ring: &Arc<PolyRing>, rank: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.pos].push((t.mono.clone(), t.coef.clone()));
        }
        parts.into_iter().map(|p| Polynomial::from_terms(ring, p)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    fn scale(&mut self, c: &Scalar) {
        for t in &mut self.terms {
            t.coef = &t.coef * c;
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            let inv = t.coef.inv().expect("nonzero leading coefficient");
            self.scale(&inv);
        }
    }

    /// `self - c * m * other`.
    fn sub_mul(&self, ord: &MonomialOrder, other: &MVec, c: &Scalar, m: &Monomial) -> MVec {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<Term> = other
            .terms
            .iter()
            .map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coef: -&(&t.coef * c) })
            .collect();
        while i < self.terms.len() || j < shifted.len() {
            let take = if i == self.terms.len() {
                Ordering::Less
            } else if j == shifted.len() {
                Ordering::Greater
            } else {
                cmp_terms(
                    ord,
                    (self.terms[i].pos, &self.terms[i].mono),
                    (shifted[j].pos, &shifted[j].mono),
                )
            };
            match take {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].coef + &shifted[j].coef;
                    if !s.is_zero() {
                        out.push(Term { pos: self.terms[i].pos, mono: self.terms[i].mono.clone(), coef: s });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MVec { terms: out }
    }
}

fn find_reducer<'a>(basis: &'a [MVec], t: &Term) -> Option<&'a MVec> {
    basis.iter().find(|g| {
        let l = g.lead();
        l.pos == t.pos && l.mono.divides(&t.mono)
    })
}

/// Full reduction of `v` modulo `basis` (remainder of the division algorithm).
pub(crate) fn reduce(ord: &MonomialOrder, basis: &[MVec], v: &MVec) -> MVec {
    let mut work = v.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(t) = work.terms.first() {
        match find_reducer(basis, t) {
            Some(g) => {
                let l = g.lead();
                let m = l.mono.quotient_of(&t.mono).expect("divides");
                let c = &t.coef * &l.coef.inv().expect("nonzero");
                work = work.sub_mul(ord, g, &c, &m);
            }
            None => {
                rem.push(work.terms.remove(0));
            }
        }
    }
    MVec { terms: rem }
}

fn s_vector(ord: &MonomialOrder, f: &MVec, g: &MVec) -> MVec {
    let (lf, lg) = (f.lead(), g.lead());
    let l = lf.mono.lcm(&lg.mono);
    let mf = lf.mono.quotient_of(&l).expect("lcm");
    let mg = lg.mono.quotient_of(&l).expect("lcm");
    let cf = lf.coef.inv().expect("nonzero");
    let cg = lg.coef.inv().expect("nonzero");
    let zero = MVec { terms: Vec::new() };
    let a = zero.sub_mul(ord, f, &(-&cf), &mf);
    a.sub_mul(ord, g, &cg, &mg)
}

fn lcm_of(f: &MVec, g: &MVec) -> Monomial {
    f.lead().mono.lcm(&g.lead().mono)
}

/// Reduced Groebner basis of the submodule of `S^rank` generated by `gens`.
pub(crate) fn groebner(ord: &MonomialOrder, rank: usize, gens: Vec<MVec>) -> Vec<MVec> {
    let mut basis: Vec<MVec> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<MVec>, pending: &mut HashSet<(usize, usize)>, mut h: MVec| {
        h.make_monic();
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g.lead().pos == h.lead().pos {
                pending.insert((i, k));
            }
        }
        basis.push(h);
    };

    for g in gens {
        let r = reduce(ord, &basis, &g);
        if !r.is_zero() {
            add(&mut basis, &mut pending, r);
        }
    }

    while !pending.is_empty() {
        // normal selection strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lcm_of(&basis[a.0], &basis[a.1]);
                let lb = lcm_of(&basis[b.0], &basis[b.1]);
                ord.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if rank == 1 && fi.lead().mono.coprime(&fj.lead().mono) {
            continue;
        }
        let l = lcm_of(fi, fj);
        let pos = fi.lead().pos;
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && g.lead().pos == pos
                && g.lead().mono.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_vector(ord, fi, fj);
        let r = reduce(ord, &basis, &s);
        if !r.is_zero() {
            add(&mut basis, &mut pending, r);
        }
    }

    interreduce(ord, basis)
}

fn interreduce(ord: &MonomialOrder, basis: Vec<MVec>) -> Vec<MVec> {
    // drop elements whose leading term is divisible by another's
    let mut keep: Vec<MVec> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.lead();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.lead();
            j != i
                && lh.pos == lg.pos
                && lh.mono.divides(&lg.mono)
                && (lh.mono != lg.mono || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<MVec> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let mut r = reduce(ord, &others, &keep[i]);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| {
        let (ta, tb) = (a.lead(), b.lead());
        cmp_terms(ord, (ta.pos, &ta.mono), (tb.pos, &tb.mono))
    });
    out
}
