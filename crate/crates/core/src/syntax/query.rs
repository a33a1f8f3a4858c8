use super::axiom::Axiom;
use super::concept::Concept;
use super::signature::Signature;
use crate::error::{Error, Result};

/// The axioms a user expected to follow but that do not, together with the
/// vocabulary explanations may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonEntailmentQuery {
    pub missing: Vec<Axiom>,
    pub signature: Signature,
}

impl NonEntailmentQuery {
    pub fn new(missing: Vec<Axiom>, signature: Signature) -> Result<Self> {
        if missing.is_empty() {
            return Err(Error::EmptyQuery);
        }
        Ok(NonEntailmentQuery { missing, signature })
    }

    /// The single GCI `C ⊑ D` that counterexample methods work on.
    pub fn single_gci(&self) -> Result<(&Concept, &Concept)> {
        match self.missing.as_slice() {
            [Axiom::SubClassOf(c, d)] => Ok((c, d)),
            _ => Err(Error::Unsupported("requires a single subclass axiom".into())),
        }
    }
}
