use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::JetVariable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    DegreeReverseLexicographic,
    Lexicographic,
}

/// A monomial order on a fixed variable universe. `variables[0]` is the
/// largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub variables: Vec<JetVariable>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, variables: Vec<JetVariable>) -> Result<Self> {
        let mut sorted = variables.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != variables.len() {
            return Err(Error::Precondition("variable order lists a variable twice".into()));
        }
        Ok(MonomialOrder { kind, variables })
    }

    /// Degree reverse lexicographic with variables ranked by `(k, i, j)`.
    pub fn grevlex(mut variables: Vec<JetVariable>) -> Self {
        variables.sort();
        variables.dedup();
        MonomialOrder { kind: OrderKind::DegreeReverseLexicographic, variables }
    }

    pub fn lex(mut variables: Vec<JetVariable>) -> Self {
        variables.sort();
        variables.dedup();
        MonomialOrder { kind: OrderKind::Lexicographic, variables }
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }
}
