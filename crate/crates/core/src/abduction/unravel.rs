//! Finite approximants of least fixpoint concepts.
//!
//! `μX.C[X]` is approximated by `C⁰ = ⊥`, `Cⁿ⁺¹ = C[X ↦ Cⁿ]`, each step
//! simplified with `∃R.⊥ ≡ ⊥`, `⊥ ⊔ G ≡ G`, `⊥ ⊓ G ≡ ⊥`, `⊤ ⊓ G ≡ G` and
//! `⊤ ⊔ G ≡ ⊤`.

use crate::error::{Error, Result};
use crate::syntax::{ExtAxiom, ExtConcept};

use super::{FixpointHypothesisSet, Hypothesis};

/// Bottom-up equivalence-preserving simplification.
pub fn simplify(c: &ExtConcept) -> ExtConcept {
    match c {
        ExtConcept::And(cs) => {
            let parts: Vec<ExtConcept> = cs.iter().map(simplify).collect();
            if parts.contains(&ExtConcept::Bottom) {
                return ExtConcept::Bottom;
            }
            ExtConcept::and(parts.into_iter().filter(|p| *p != ExtConcept::Top))
        }
        ExtConcept::Or(cs) => {
            let parts: Vec<ExtConcept> = cs.iter().map(simplify).collect();
            if parts.contains(&ExtConcept::Top) {
                return ExtConcept::Top;
            }
            ExtConcept::or(parts.into_iter().filter(|p| *p != ExtConcept::Bottom))
        }
        ExtConcept::Exists(r, f) => match simplify(f) {
            ExtConcept::Bottom => ExtConcept::Bottom,
            f => ExtConcept::exists(r.clone(), f),
        },
        ExtConcept::Mu(v, body) => ExtConcept::mu(v.clone(), simplify(body)),
        other => other.clone(),
    }
}

/// Replaces every fixpoint in `c` by its `n`-th approximant.
pub fn approximant(c: &ExtConcept, n: usize) -> ExtConcept {
    match c {
        ExtConcept::Mu(v, body) => {
            let body = approximant(body, n);
            let mut a = ExtConcept::Bottom;
            for _ in 0..n {
                a = simplify(&body.substitute(v, &a));
            }
            a
        }
        ExtConcept::And(cs) => simplify(&ExtConcept::and(cs.iter().map(|k| approximant(k, n)))),
        ExtConcept::Or(cs) => simplify(&ExtConcept::or(cs.iter().map(|k| approximant(k, n)))),
        ExtConcept::Exists(r, f) => simplify(&ExtConcept::exists(r.clone(), approximant(f, n))),
        other => other.clone(),
    }
}

fn approximant_axioms(axioms: &[ExtAxiom], n: usize) -> Vec<ExtAxiom> {
    axioms.iter().map(|a| a.map_concepts(|c| approximant(c, n))).collect()
}

fn has_fixpoint(axioms: &[ExtAxiom]) -> bool {
    axioms.iter().any(|a| a.concepts().into_iter().any(ExtConcept::contains_mu))
}

/// The first `count` fixpoint-free hypotheses obtained by unraveling every
/// alternative, ordered by role depth and then printed form.
pub fn unravel_fixpoints(fhs: &FixpointHypothesisSet, count: usize) -> Result<Vec<Hypothesis>> {
    if count == 0 {
        return Err(Error::NonPositiveCount);
    }
    let mut all: Vec<Hypothesis> = Vec::new();
    for disjunct in &fhs.disjuncts {
        if !has_fixpoint(disjunct) {
            all.push(Hypothesis::new(disjunct.iter().cloned()));
            continue;
        }
        let mut previous: Option<Vec<ExtAxiom>> = None;
        for n in 1..=count {
            let axioms = approximant_axioms(disjunct, n);
            if previous.as_ref() == Some(&axioms) {
                break;
            }
            all.push(Hypothesis::new(axioms.iter().cloned()));
            previous = Some(axioms);
        }
    }
    let mut keyed: Vec<_> = all.into_iter().map(|h| ((h.depth, h.to_string()), h)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 .1 == b.0 .1);
    Ok(keyed.into_iter().map(|(_, h)| h).take(count).collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_extended_axiom, parse_extended_concept};

    const P2: &str = "ClassAssertion(Mu(?X ObjectSomeValuesFrom(ObjectInverseOf(:infected) \
        ObjectUnionOf(ObjectSomeValuesFrom(:contactWith :EbolaBat) ObjectOneOf(:p1) ?X))) :p2)";

    #[test]
    fn p2_first_approximants() {
        let fhs = FixpointHypothesisSet { disjuncts: vec![vec![parse_extended_axiom(P2).unwrap()]] };
        let hs = unravel_fixpoints(&fhs, 2).unwrap();
        assert_eq!(
            hs[0].to_string(),
            "ClassAssertion(ObjectSomeValuesFrom(ObjectInverseOf(:infected) ObjectUnionOf(ObjectOneOf(:p1) \
             ObjectSomeValuesFrom(:contactWith :EbolaBat))) :p2)"
        );
        assert_eq!(hs[0].depth, 2);
        assert_eq!(hs[1].depth, 3);
    }

    #[test]
    fn fixpoint_free_is_identity() {
        let a = parse_extended_axiom("SubClassOf(:A :B)").unwrap();
        let fhs = FixpointHypothesisSet { disjuncts: vec![vec![a.clone()]] };
        let hs = unravel_fixpoints(&fhs, 3).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].axioms, [a]);
    }

    #[test]
    fn zero_count_rejected() {
        let fhs = FixpointHypothesisSet { disjuncts: vec![] };
        assert_eq!(unravel_fixpoints(&fhs, 0).unwrap_err(), Error::NonPositiveCount);
    }

    #[test]
    fn genuine_fixpoint_keeps_growing() {
        let fhs = FixpointHypothesisSet { disjuncts: vec![vec![parse_extended_axiom(P2).unwrap()]] };
        let hs = unravel_fixpoints(&fhs, 6).unwrap();
        assert_eq!(hs.len(), 6);
        assert!(hs.windows(2).all(|w| w[0].depth < w[1].depth));
    }

    #[test]
    fn bottom_absorption() {
        let c = parse_extended_concept("ObjectIntersectionOf(:A ObjectSomeValuesFrom(:r owl:Nothing))").unwrap();
        assert_eq!(simplify(&c), ExtConcept::Bottom);
        let c = parse_extended_concept("ObjectUnionOf(:A owl:Nothing)").unwrap();
        assert_eq!(simplify(&c), ExtConcept::name("A"));
    }

    #[test]
    fn converging_fixpoint_stops() {
        let a = parse_extended_axiom("SubClassOf(:A Mu(?X ObjectUnionOf(:B ?X)))").unwrap();
        let fhs = FixpointHypothesisSet { disjuncts: vec![vec![a]] };
        let hs = unravel_fixpoints(&fhs, 5).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].to_string(), "SubClassOf(:A :B)");
    }
}
