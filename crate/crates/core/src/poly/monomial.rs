use std::cmp::Ordering;

/// Exponent vector `x_1^{e_1} ... x_n^{e_n}`. The derived `Ord` is plain
/// lexicographic on exponents and serves only as the canonical storage key;
/// term orders live in [`MonomialOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn degree(&self, weights: &[u32]) -> i64 {
        self.0.iter().zip(weights).map(|(e, w)| *e as i64 * *w as i64).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    pub fn extended(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Weighted degree, ties broken reverse-lexicographically.
    Grevlex,
    Lex,
    /// Block order eliminating the first `k` variables of the precedence:
    /// grevlex on that block, then grevlex on the rest.
    Elimination(usize),
}

/// A term order. `precedence[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn grevlex(weights: Vec<u32>) -> Self {
        let precedence = (0..weights.len()).collect();
        MonomialOrder { kind: OrderKind::Grevlex, precedence, weights }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            precedence: (0..nvars).collect(),
            weights: vec![1; nvars],
        }
    }

    pub fn elimination(k: usize, weights: Vec<u32>) -> Self {
        let precedence = (0..weights.len()).collect();
        MonomialOrder { kind: OrderKind::Elimination(k), precedence, weights }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.lex_on(&self.precedence, a, b),
            OrderKind::Grevlex => self.grevlex_on(&self.precedence, a, b),
            OrderKind::Elimination(k) => {
                let (head, tail) = self.precedence.split_at(k.min(self.precedence.len()));
                self.grevlex_on(head, a, b).then_with(|| self.grevlex_on(tail, a, b))
            }
        }
    }

    fn lex_on(&self, vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        for &v in vars {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn grevlex_on(&self, vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        let deg = |m: &Monomial| -> i64 { vars.iter().map(|&v| m.0[v] as i64 * self.weights[v] as i64).sum() };
        deg(a).cmp(&deg(b)).then_with(|| {
            for &v in vars.iter().rev() {
                match a.0[v].cmp(&b.0[v]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_prefers_degree_then_reverse_lex() {
        let o = MonomialOrder::grevlex(vec![1, 1, 1]);
        assert_eq!(o.cmp(&m(&[1, 2, 0]), &m(&[2, 0, 0])), Ordering::Greater);
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn weighted_grevlex_uses_weights() {
        let o = MonomialOrder::grevlex(vec![4, 5, 6]);
        // X^3 (weight 12) vs Z^2 (12): tie on degree, revlex: Z^2 smaller
        assert_eq!(o.cmp(&m(&[3, 0, 0]), &m(&[0, 0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_compares_first_variable() {
        let o = MonomialOrder::lex(2);
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 2])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::elimination(1, vec![1, 1, 1]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 1]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 1]).quotient_of(&m(&[2, 1])), Some(m(&[1, 0])));
        assert!(m(&[1, 0]).coprime(&m(&[0, 3])));
        assert_eq!(m(&[1, 0]).lcm(&m(&[0, 3])), m(&[1, 3]));
    }
}
