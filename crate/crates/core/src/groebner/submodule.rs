use std::sync::Arc;

use crate::groebner::buchberger::{groebner, reduce, MVec};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Groebner basis of a submodule of `S^rank`, position over term.
#[derive(Clone, Debug)]
pub struct SubmoduleGb {
    ring: Arc<PolyRing>,
    rank: usize,
    order: MonomialOrder,
    raw: Vec<MVec>,
}

impl SubmoduleGb {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, gens: &[Vec<Polynomial>]) -> Self {
        let order = ring.order.clone();
        let input = gens
            .iter()
            .map(|g| MVec::from_components(&order, g))
            .filter(|v| !v.is_zero())
            .collect();
        let raw = groebner(&order, rank, input);
        SubmoduleGb { ring: ring.clone(), rank, order, raw }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.raw.iter().map(|v| v.to_components(&self.ring, self.rank)).collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.raw.iter().map(|v| (v.lead().pos, v.lead().mono.clone())).collect()
    }

    pub fn reduce(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let mv = MVec::from_components(&self.order, v);
        reduce(&self.order, &self.raw, &mv).to_components(&self.ring, self.rank)
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        let mv = MVec::from_components(&self.order, v);
        reduce(&self.order, &self.raw, &mv).is_zero()
    }
}

/// Generators of `{u in S^a : sum_j u_j c_j in N}` for columns `c_j` of
/// length `b` and `N` generated by `modulo`, by elimination in `S^{b+a}`.
pub fn syzygies_modulo(
    ring: &Arc<PolyRing>,
    b: usize,
    columns: &[Vec<Polynomial>],
    modulo: &[Vec<Polynomial>],
) -> Vec<Vec<Polynomial>> {
    let a = columns.len();
    let zero = Polynomial::zero(ring);
    let mut gens = Vec::with_capacity(a + modulo.len());
    for (j, c) in columns.iter().enumerate() {
        let mut v = c.clone();
        v.extend((0..a).map(|k| if k == j { Polynomial::one(ring) } else { zero.clone() }));
        gens.push(v);
    }
    for m in modulo {
        let mut v = m.clone();
        v.extend(std::iter::repeat_n(zero.clone(), a));
        gens.push(v);
    }
    let gb = SubmoduleGb::new(ring, b + a, &gens);
    gb.elements()
        .into_iter()
        .zip(gb.leading_terms())
        .filter(|(_, (pos, _))| *pos >= b)
        .map(|(v, _)| v[b..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn koszul_syzygy() {
        let r = PolyRing::new(Field::Rationals, &["X", "Y"]).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let syz = syzygies_modulo(&r, 1, &[vec![x.clone()], vec![y.clone()]], &[]);
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        assert!((&(&s[0] * &x) + &(&s[1] * &y)).is_zero());
        assert!(!s[0].is_zero());
    }

    #[test]
    fn membership_in_submodule() {
        let r = PolyRing::new(Field::Prime(2), &["X", "Y"]).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::zero(&r);
        let gb = SubmoduleGb::new(&r, 2, &[vec![x.clone(), y.clone()], vec![z.clone(), x.clone()]]);
        assert!(gb.contains(&[&x * &y, y.pow(2)]));
        assert!(gb.contains(&[z.clone(), &x * &y]));
        assert!(!gb.contains(&[y.clone(), z]));
    }

    #[test]
    fn syzygies_over_quotient() {
        // columns x, y with relations x^2, y^2: syzygies mod I
        let r = PolyRing::new(Field::Prime(2), &["X", "Y"]).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let syz = syzygies_modulo(&r, 1, &[vec![x.clone()], vec![y.clone()]], &[vec![x.pow(2)], vec![y.pow(2)]]);
        let gb = SubmoduleGb::new(&r, 2, &syz);
        let z = Polynomial::zero(&r);
        assert!(gb.contains(&[x.clone(), z.clone()]));
        assert!(gb.contains(&[z.clone(), y.clone()]));
        assert!(gb.contains(&[y.clone(), x.clone()]));
        assert!(!gb.contains(&[Polynomial::one(&r), z]));
    }
}
