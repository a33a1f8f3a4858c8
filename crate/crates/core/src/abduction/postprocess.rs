//! Cleaning up hypotheses: redundant axioms, redundant conjuncts and
//! disjuncts, and ordering by specificity.

use crate::error::Result;
use crate::reasoner::Reasoner;
use crate::syntax::{Axiom, Concept, ExtConcept, Ontology};

use super::Hypothesis;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PostprocessOptions {
    pub drop_redundant_axioms: bool,
    pub simplify_members: bool,
    pub order_by_specificity: bool,
}

impl Default for PostprocessOptions {
    fn default() -> Self {
        PostprocessOptions { drop_redundant_axioms: true, simplify_members: true, order_by_specificity: true }
    }
}

/// Drops axioms entailed by the ontology and the rest of the hypothesis,
/// one at a time in printed order, until none is.
fn drop_redundant(base: &Reasoner, axioms: Vec<Axiom>) -> Result<Vec<Axiom>> {
    let mut current = axioms;
    loop {
        let mut removed = false;
        for i in 0..current.len() {
            let mut r = base.clone();
            r.add_axioms(current.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a));
            if r.entails(&current[i])? {
                current.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return Ok(current);
        }
    }
}

/// Drops conjuncts of `c` implied by the remaining ones under the ontology.
fn reduce_conjunction(base: &mut Reasoner, c: &Concept) -> Result<Concept> {
    let mut parts: Vec<Concept> = c.conjuncts().to_vec();
    if parts.len() < 2 {
        return Ok(c.clone());
    }
    let mut i = 0;
    while i < parts.len() && parts.len() > 1 {
        let rest = Concept::and(parts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, k)| k.clone()));
        if base.subsumes(&rest, &parts[i])? {
            parts.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(Concept::and(parts))
}

fn reduce_axiom(base: &mut Reasoner, a: &Axiom) -> Result<Axiom> {
    Ok(match a {
        Axiom::SubClassOf(c, d) => Axiom::SubClassOf(c.clone(), reduce_conjunction(base, d)?),
        Axiom::ClassAssertion(c, i) => Axiom::ClassAssertion(reduce_conjunction(base, c)?, i.clone()),
        other => other.clone(),
    })
}

/// `c ⊑ d` by structure alone.
fn syntactically_below(c: &ExtConcept, d: &ExtConcept) -> bool {
    if c == d || *d == ExtConcept::Top || *c == ExtConcept::Bottom {
        return true;
    }
    match (c, d) {
        (_, ExtConcept::And(ds)) => ds.iter().all(|k| syntactically_below(c, k)),
        (ExtConcept::Or(cs), _) => cs.iter().all(|k| syntactically_below(k, d)),
        (ExtConcept::And(cs), _) => cs.iter().any(|k| syntactically_below(k, d)),
        (_, ExtConcept::Or(ds)) => ds.iter().any(|k| syntactically_below(c, k)),
        (ExtConcept::Exists(r, f), ExtConcept::Exists(s, g)) => r == s && syntactically_below(f, g),
        _ => false,
    }
}

/// Drops disjuncts that sit syntactically below another disjunct.
fn reduce_disjunctions(c: &ExtConcept) -> ExtConcept {
    match c {
        ExtConcept::Or(cs) => {
            let parts: Vec<ExtConcept> = cs.iter().map(reduce_disjunctions).collect();
            let mut keep: Vec<ExtConcept> = Vec::new();
            for (i, k) in parts.iter().enumerate() {
                let dominated = parts.iter().enumerate().any(|(j, other)| {
                    j != i && syntactically_below(k, other) && (!syntactically_below(other, k) || j < i)
                });
                if !dominated {
                    keep.push(k.clone());
                }
            }
            ExtConcept::or(keep)
        }
        ExtConcept::And(cs) => ExtConcept::and(cs.iter().map(reduce_disjunctions)),
        ExtConcept::Exists(r, f) => ExtConcept::exists(r.clone(), reduce_disjunctions(f)),
        ExtConcept::Mu(v, body) => ExtConcept::mu(v.clone(), reduce_disjunctions(body)),
        other => other.clone(),
    }
}

fn implies(base: &Reasoner, h1: &Hypothesis, h2: &Hypothesis) -> Result<bool> {
    let (Some(a), Some(b)) = (h1.to_core(), h2.to_core()) else { return Ok(false) };
    let mut r = base.clone();
    r.add_axioms(&a);
    r.entails_all(&b)
}

/// Applies the enabled steps in order: (1) drop redundant axioms, (2) drop
/// redundant conjuncts (under the ontology) and disjuncts (syntactically),
/// (3) stable reordering so that a hypothesis comes before every hypothesis
/// it strictly implies. Steps (1) and the conjunct part of (2) skip
/// hypotheses using extended constructs.
pub fn postprocess_hypotheses(ontology: &Ontology, hyps: &[Hypothesis], opts: PostprocessOptions) -> Result<Vec<Hypothesis>> {
    let mut base = Reasoner::from_ontology(ontology);
    let mut out = Vec::with_capacity(hyps.len());
    for h in hyps {
        let verified = h.verified;
        let mut next = match h.to_core() {
            Some(mut core) => {
                if opts.drop_redundant_axioms {
                    core = drop_redundant(&base, core)?;
                }
                if opts.simplify_members {
                    core = core.iter().map(|a| reduce_axiom(&mut base, a)).collect::<Result<_>>()?;
                }
                Hypothesis::from_core(&core)
            }
            None if opts.simplify_members => {
                Hypothesis::new(h.axioms.iter().map(|a| a.map_concepts(reduce_disjunctions)))
            }
            None => h.clone(),
        };
        next.verified = verified;
        out.push(next);
    }
    if !opts.order_by_specificity {
        return Ok(out);
    }

    let n = out.len();
    let mut strict = vec![vec![false; n]; n];
    let mut imp = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                imp[i][j] = implies(&base, &out[i], &out[j])?;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            strict[i][j] = imp[i][j] && !imp[j][i];
        }
    }
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .find(|&j| !placed[j] && (0..n).all(|i| placed[i] || !strict[i][j]))
            .unwrap_or_else(|| (0..n).find(|&j| !placed[j]).unwrap_or(0));
        placed[next] = true;
        order.push(next);
    }
    Ok(order.into_iter().map(|i| out[i].clone()).collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_axiom, parse_extended_axiom, parse_ontology};

    fn hyp(axioms: &[&str]) -> Hypothesis {
        let parsed: Vec<Axiom> = axioms.iter().map(|a| parse_axiom(a).unwrap()).collect();
        Hypothesis::from_core(&parsed)
    }

    fn only(step: usize) -> PostprocessOptions {
        PostprocessOptions {
            drop_redundant_axioms: step == 1,
            simplify_members: step == 2,
            order_by_specificity: step == 3,
        }
    }

    #[test]
    fn redundant_axiom_dropped() {
        let h = hyp(&["SubClassOf(:A :B)", "SubClassOf(:A ObjectIntersectionOf(:B :C))"]);
        let out = postprocess_hypotheses(&Ontology::new(), &[h], only(1)).unwrap();
        assert_eq!(out[0].to_string(), "SubClassOf(:A ObjectIntersectionOf(:B :C))");
    }

    #[test]
    fn implied_hypothesis_later() {
        let h2 = hyp(&["SubClassOf(:A :B)"]);
        let h1 = hyp(&["SubClassOf(:A ObjectIntersectionOf(:B :C))"]);
        let out = postprocess_hypotheses(&Ontology::new(), &[h2.clone(), h1.clone()], only(3)).unwrap();
        assert_eq!(out, [h1, h2]);
    }

    #[test]
    fn redundant_conjunct_dropped() {
        let o = parse_ontology("SubClassOf(:B :C)").unwrap();
        let h = hyp(&["SubClassOf(:A ObjectIntersectionOf(:B :C))"]);
        let out = postprocess_hypotheses(&o, &[h], only(2)).unwrap();
        assert_eq!(out[0].to_string(), "SubClassOf(:A :B)");
    }

    #[test]
    fn redundant_disjunct_dropped() {
        let a = parse_extended_axiom(
            "ClassAssertion(ObjectUnionOf(:A ObjectIntersectionOf(:A :B) ObjectOneOf(:p)) :q)",
        )
        .unwrap();
        let out = postprocess_hypotheses(&Ontology::new(), &[Hypothesis::new([a])], only(2)).unwrap();
        assert_eq!(out[0].to_string(), "ClassAssertion(ObjectUnionOf(:A ObjectOneOf(:p)) :q)");
    }

    #[test]
    fn incomparable_keep_order() {
        let a = hyp(&["SubClassOf(:A :B)"]);
        let b = hyp(&["SubClassOf(:C :D)"]);
        let out = postprocess_hypotheses(&Ontology::new(), &[a.clone(), b.clone()], only(3)).unwrap();
        assert_eq!(out, [a, b]);
    }
}
