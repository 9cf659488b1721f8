use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::monomial::{MonomialOrder, OrderKind};

/// The ambient polynomial ring `S = k[X_1, ..., X_n]` with a positive
/// grading and a term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
}

impl PolyRing {
    /// Ring with unit weights and grevlex in declaration order.
    pub fn new(field: Field, vars: &[&str]) -> Result<Arc<Self>> {
        Self::weighted(field, vars.iter().map(|s| s.to_string()).collect(), vec![1; vars.len()])
    }

    pub fn weighted(field: Field, vars: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>> {
        if vars.len() != weights.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| **w == 0) {
            return Err(Error::Inhomogeneous(format!("weight {w} is not positive")));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::ShapeMismatch(format!("variable {v} declared twice")));
            }
        }
        let order = MonomialOrder::grevlex(weights.clone());
        Ok(Arc::new(PolyRing { field, vars, weights, order }))
    }

    pub fn with_order(&self, kind: OrderKind) -> Arc<Self> {
        let order = match kind {
            OrderKind::Grevlex => MonomialOrder::grevlex(self.weights.clone()),
            OrderKind::Lex => MonomialOrder::lex(self.nvars()),
            OrderKind::Elimination(k) => MonomialOrder::elimination(k, self.weights.clone()),
        };
        Arc::new(PolyRing { order, ..self.clone() })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// `k[T, X_1, ..., X_n]` with `T` first and an order eliminating `T`.
    pub fn with_tag_variable(&self, tag: &str) -> Arc<Self> {
        let mut vars = vec![tag.to_string()];
        vars.extend(self.vars.iter().cloned());
        let mut weights = vec![1];
        weights.extend(self.weights.iter().copied());
        let order = MonomialOrder::elimination(1, weights.clone());
        Arc::new(PolyRing { field: self.field, vars, weights, order })
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }
}
