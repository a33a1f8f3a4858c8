use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::axiom::Axiom;
use super::concept::Concept;
use super::extended::ExtConcept;
use super::names::{ConceptName, IndividualName, RoleName};
use super::ontology::Ontology;

/// A vocabulary: sets of concept, role and individual names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub concepts: BTreeSet<ConceptName>,
    pub roles: BTreeSet<RoleName>,
    pub individuals: BTreeSet<IndividualName>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.roles.is_empty() && self.individuals.is_empty()
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.concepts.is_subset(&other.concepts)
            && self.roles.is_subset(&other.roles)
            && self.individuals.is_subset(&other.individuals)
    }

    pub fn extend(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
        self.individuals.extend(other.individuals.iter().cloned());
    }

    pub fn union(mut self, other: &Signature) -> Signature {
        self.extend(other);
        self
    }
}

/// Anything whose vocabulary can be collected.
pub trait HasSignature {
    fn collect_signature(&self, sig: &mut Signature);
}

/// The names syntactically occurring in `entity`; ⊤ and ⊥ are not names.
pub fn signature_of<T: HasSignature + ?Sized>(entity: &T) -> Signature {
    let mut sig = Signature::new();
    entity.collect_signature(&mut sig);
    sig
}

impl HasSignature for Concept {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            Concept::Top | Concept::Bottom => {}
            Concept::Name(n) => {
                sig.concepts.insert(n.clone());
            }
            Concept::And(cs) => cs.iter().for_each(|c| c.collect_signature(sig)),
            Concept::Exists(r, f) => {
                sig.roles.insert(r.clone());
                f.collect_signature(sig);
            }
        }
    }
}

impl HasSignature for ExtConcept {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            ExtConcept::Top | ExtConcept::Bottom | ExtConcept::Var(_) => {}
            ExtConcept::Name(n) => {
                sig.concepts.insert(n.clone());
            }
            ExtConcept::Nominal(a) => {
                sig.individuals.insert(a.clone());
            }
            ExtConcept::And(cs) | ExtConcept::Or(cs) => {
                cs.iter().for_each(|c| c.collect_signature(sig))
            }
            ExtConcept::Exists(r, f) => {
                sig.roles.insert(r.name().clone());
                f.collect_signature(sig);
            }
            ExtConcept::Mu(_, body) => body.collect_signature(sig),
        }
    }
}

impl<C: HasSignature> HasSignature for Axiom<C> {
    fn collect_signature(&self, sig: &mut Signature) {
        for c in self.concepts() {
            c.collect_signature(sig);
        }
        match self {
            Axiom::ClassAssertion(_, a) => {
                sig.individuals.insert(a.clone());
            }
            Axiom::RoleAssertion(r, a, b) => {
                sig.roles.insert(r.clone());
                sig.individuals.insert(a.clone());
                sig.individuals.insert(b.clone());
            }
            _ => {}
        }
    }
}

impl HasSignature for Ontology {
    fn collect_signature(&self, sig: &mut Signature) {
        self.axioms().for_each(|a| a.collect_signature(sig));
    }
}

impl<T: HasSignature> HasSignature for [T] {
    fn collect_signature(&self, sig: &mut Signature) {
        self.iter().for_each(|a| a.collect_signature(sig));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subclass_signature() {
        let ax = Axiom::SubClassOf(Concept::name("A"), Concept::exists("r", Concept::name("B")));
        let sig = signature_of(&ax);
        assert_eq!(sig.concepts.len(), 2);
        assert!(sig.roles.contains(&RoleName::from("r")));
        assert!(sig.individuals.is_empty());
    }

    #[test]
    fn top_has_empty_signature() {
        assert!(signature_of(&Concept::Top).is_empty());
    }
}
