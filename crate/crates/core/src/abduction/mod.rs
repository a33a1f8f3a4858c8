//! Hypotheses: axiom sets `H` with `O ∪ H ⊨ P`.

mod naive;
mod postprocess;
mod unravel;

use std::fmt;

use crate::error::Result;
use crate::reasoner::Reasoner;
use crate::syntax::{parse_extended_blocks, Axiom, Concept, ExtAxiom, ExtConcept, NonEntailmentQuery, Ontology, Role};

pub use naive::{naive_abduce, naive_abduce_limited, AbductionBounds};
pub use postprocess::{postprocess_hypotheses, PostprocessOptions};
pub use unravel::{approximant, simplify, unravel_fixpoints};

/// A set of axioms, kept sorted by printed form and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub axioms: Vec<ExtAxiom>,
    pub verified: Option<bool>,
    pub depth: usize,
}

impl Hypothesis {
    pub fn new(axioms: impl IntoIterator<Item = ExtAxiom>) -> Self {
        let mut keyed: Vec<(String, ExtAxiom)> = axioms.into_iter().map(|a| (a.to_string(), a)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let axioms: Vec<ExtAxiom> = keyed.into_iter().map(|(_, a)| a).collect();
        let depth = axioms.iter().map(ExtAxiom::role_depth).max().unwrap_or(0);
        Hypothesis { axioms, verified: None, depth }
    }

    pub fn from_core<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> Self {
        Hypothesis::new(axioms.into_iter().map(ExtAxiom::from))
    }

    /// The axioms in the core language, if none uses an extended construct.
    /// Unions on the left of a subclass axiom are split into one axiom per
    /// disjunct (after distributing ∃ and ⊓ over ⊔), which is equivalent.
    pub fn to_core(&self) -> Option<Vec<Axiom>> {
        let mut out = Vec::new();
        for a in &self.axioms {
            match a {
                Axiom::SubClassOf(c, d) => {
                    let d = d.to_core()?;
                    for c in lhs_disjuncts(c)? {
                        out.push(Axiom::SubClassOf(c, d.clone()));
                    }
                }
                other => out.push(other.to_core()?),
            }
        }
        Some(out)
    }

    pub fn is_core(&self) -> bool {
        self.to_core().is_some()
    }

    pub fn total_depth(&self) -> usize {
        self.axioms.iter().map(ExtAxiom::role_depth).sum()
    }
}

/// Core concepts whose union is `c`, if `c` only adds ⊔ to the core language.
fn lhs_disjuncts(c: &ExtConcept) -> Option<Vec<Concept>> {
    Some(match c {
        ExtConcept::Or(cs) => {
            let mut out = Vec::new();
            for k in cs {
                out.extend(lhs_disjuncts(k)?);
            }
            out
        }
        ExtConcept::And(cs) => {
            let mut acc = vec![Concept::Top];
            for k in cs {
                let parts = lhs_disjuncts(k)?;
                acc = acc
                    .iter()
                    .flat_map(|a| parts.iter().map(move |p| Concept::and([a.clone(), p.clone()])))
                    .collect();
            }
            acc
        }
        ExtConcept::Exists(Role::Named(r), f) => {
            lhs_disjuncts(f)?.into_iter().map(|g| Concept::exists(r.clone(), g)).collect()
        }
        other => vec![other.to_core()?],
    })
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.axioms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Alternative hypotheses that may contain least fixpoints; one entry per
/// alternative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointHypothesisSet {
    pub disjuncts: Vec<Vec<ExtAxiom>>,
}

impl FixpointHypothesisSet {
    /// Parses `---`-separated blocks of extended axioms.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(FixpointHypothesisSet { disjuncts: parse_extended_blocks(text)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    Verified(bool),
    /// The hypothesis uses constructs the reasoner cannot decide.
    Unverifiable,
}

/// Whether `O ∪ H` is consistent and entails every missing axiom.
pub fn verify_hypothesis(ontology: &Ontology, hyp: &Hypothesis, query: &NonEntailmentQuery) -> Result<Verification> {
    verify_with(&Reasoner::from_ontology(ontology), hyp, query)
}

/// As [`verify_hypothesis`] on a reasoner loaded with the ontology; the
/// reasoner itself is left unchanged.
pub fn verify_with(base: &Reasoner, hyp: &Hypothesis, query: &NonEntailmentQuery) -> Result<Verification> {
    let Some(core) = hyp.to_core() else { return Ok(Verification::Unverifiable) };
    let mut r = base.clone();
    r.add_axioms(&core);
    Ok(Verification::Verified(r.is_consistent()? && r.entails_all(&query.missing)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_axiom, parse_extended_axiom, parse_ontology, Signature};

    fn query(p: &str) -> NonEntailmentQuery {
        NonEntailmentQuery::new(vec![parse_axiom(p).unwrap()], Signature::new()).unwrap()
    }

    #[test]
    fn chaining_verifies() {
        let o = parse_ontology("SubClassOf(:B :C)").unwrap();
        let h = Hypothesis::from_core(&[parse_axiom("SubClassOf(:A :B)").unwrap()]);
        assert_eq!(verify_hypothesis(&o, &h, &query("SubClassOf(:A :C)")).unwrap(), Verification::Verified(true));
    }

    #[test]
    fn tautology_does_not_verify() {
        let h = Hypothesis::from_core(&[parse_axiom("SubClassOf(:A :A)").unwrap()]);
        let v = verify_hypothesis(&Ontology::new(), &h, &query("SubClassOf(:A :B)")).unwrap();
        assert_eq!(v, Verification::Verified(false));
    }

    #[test]
    fn inverse_under_fixpoint_is_unverifiable() {
        let a = parse_extended_axiom(
            "ClassAssertion(Mu(?X ObjectSomeValuesFrom(ObjectInverseOf(:r) ObjectUnionOf(:A ?X))) :p)",
        )
        .unwrap();
        let h = Hypothesis::new([a]);
        let v = verify_hypothesis(&Ontology::new(), &h, &query("SubClassOf(:A :B)")).unwrap();
        assert_eq!(v, Verification::Unverifiable);
    }

    #[test]
    fn inconsistent_hypothesis_does_not_verify() {
        let o = parse_ontology("DisjointClasses(:A :B) ClassAssertion(:A :a)").unwrap();
        let h = Hypothesis::from_core(&[parse_axiom("ClassAssertion(:B :a)").unwrap()]);
        let v = verify_hypothesis(&o, &h, &query("SubClassOf(:A :C)")).unwrap();
        assert_eq!(v, Verification::Verified(false));
    }

    #[test]
    fn union_on_the_left_is_split() {
        let a = parse_extended_axiom(
            "SubClassOf(ObjectUnionOf(:B ObjectSomeValuesFrom(:r ObjectUnionOf(:B :C))) :D)",
        )
        .unwrap();
        let core: Vec<String> = Hypothesis::new([a]).to_core().unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(
            core,
            [
                "SubClassOf(:B :D)",
                "SubClassOf(ObjectSomeValuesFrom(:r :B) :D)",
                "SubClassOf(ObjectSomeValuesFrom(:r :C) :D)"
            ]
        );
        let b = parse_extended_axiom("SubClassOf(:D ObjectUnionOf(:B :C))").unwrap();
        assert!(Hypothesis::new([b]).to_core().is_none());
    }

    #[test]
    fn blocks_become_disjuncts() {
        let f = FixpointHypothesisSet::parse("SubClassOf(:A :B)\n---\nSubClassOf(:A :C) SubClassOf(:C :B)").unwrap();
        assert_eq!(f.disjuncts.len(), 2);
        assert_eq!(f.disjuncts[1].len(), 2);
    }
}
