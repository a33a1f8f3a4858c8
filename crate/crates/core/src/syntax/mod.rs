//! Concepts, axioms, ontologies and their textual syntax.

mod axiom;
mod concept;
mod extended;
mod names;
mod ontology;
mod parser;
mod query;
mod signature;

pub use axiom::{Axiom, ExtAxiom};
pub use concept::Concept;
pub use extended::{ExtConcept, Role};
pub use names::{
    ConceptName, IndividualName, RoleName, BOTTOM_TOKEN, RESERVED_PREFIX, TOP_TOKEN,
};
pub use ontology::{AxiomId, Ontology};
pub use parser::{
    parse, parse_axiom, parse_axioms, parse_concept, parse_extended_axiom,
    parse_extended_blocks, parse_extended_concept, parse_ontology, ParseKind, Parsed,
};
pub use query::NonEntailmentQuery;
pub use signature::{signature_of, HasSignature, Signature};
