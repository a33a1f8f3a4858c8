//! Exhaustive, bounded abduction over a permitted vocabulary.

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::reasoner::Reasoner;
use crate::syntax::{Axiom, Concept, NonEntailmentQuery, Ontology};

use super::Hypothesis;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbductionBounds {
    pub max_axioms: usize,
    pub max_depth: usize,
}

impl Default for AbductionBounds {
    fn default() -> Self {
        AbductionBounds { max_axioms: 2, max_depth: 1 }
    }
}

/// Right-hand sides: names and chains `∃r1.…∃rk.X` with `X` a name or ⊤.
fn fillers(query: &NonEntailmentQuery, depth: usize) -> Vec<Concept> {
    let sig = &query.signature;
    let mut out: Vec<Concept> = sig.concepts.iter().cloned().map(Concept::Name).collect();
    let mut bodies = out.clone();
    bodies.push(Concept::Top);
    for _ in 0..depth {
        let next: Vec<Concept> = sig
            .roles
            .iter()
            .flat_map(|r| bodies.iter().map(move |f| Concept::exists(r.clone(), f.clone())))
            .collect();
        out.extend(next.iter().cloned());
        bodies = next;
    }
    out
}

fn candidates(query: &NonEntailmentQuery, depth: usize) -> Vec<Axiom> {
    let fs = fillers(query, depth);
    let mut out = Vec::new();
    for a in &query.signature.concepts {
        let lhs = Concept::Name(a.clone());
        for f in &fs {
            if *f != lhs {
                out.push(Axiom::SubClassOf(lhs.clone(), f.clone()));
            }
        }
    }
    for ind in &query.signature.individuals {
        for f in &fs {
            out.push(Axiom::ClassAssertion(f.clone(), ind.clone()));
        }
    }
    out
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    go(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Every subset-minimal set of at most `max_axioms` candidate axioms over
/// the query's vocabulary that keeps the ontology consistent and entails
/// all missing axioms. Candidates are `A ⊑ F` for vocabulary names `A` and
/// `F(a)` for vocabulary individuals, where `F` is a name or an existential
/// chain of role depth at most `max_depth` (⊥ is never proposed).
///
/// Sorted by number of axioms, total role depth, then printed form.
pub fn naive_abduce(
    ontology: &Ontology,
    query: &NonEntailmentQuery,
    bounds: AbductionBounds,
    cancel: &CancelToken,
) -> Result<Vec<Hypothesis>> {
    naive_abduce_limited(ontology, query, bounds, None, cancel).map(|(hs, _)| hs)
}

/// Like [`naive_abduce`], but stops after the first hypothesis size at which
/// at least `limit` hypotheses are known. The result starts with the same
/// `limit` hypotheses as the full enumeration; the flag tells whether the
/// enumeration ran to completion.
pub fn naive_abduce_limited(
    ontology: &Ontology,
    query: &NonEntailmentQuery,
    bounds: AbductionBounds,
    limit: Option<usize>,
    cancel: &CancelToken,
) -> Result<(Vec<Hypothesis>, bool)> {
    if query.signature.is_empty() {
        return Err(Error::EmptySignature);
    }
    let mut base = Reasoner::from_ontology(ontology).with_cancel(cancel.clone());
    if base.entails_all(&query.missing)? {
        let shown: Vec<String> = query.missing.iter().map(ToString::to_string).collect();
        return Err(Error::AlreadyEntailed(shown.join(" ")));
    }
    let mut pool = Vec::new();
    for ax in candidates(query, bounds.max_depth) {
        cancel.check()?;
        if !base.entails(&ax)? {
            pool.push(ax);
        }
    }

    let mut kept: Vec<Vec<usize>> = Vec::new();
    let mut complete = true;
    let sizes = bounds.max_axioms.min(pool.len());
    for k in 1..=sizes {
        let mut found = Vec::new();
        combinations(pool.len(), k, &mut |set| {
            cancel.check()?;
            if kept.iter().any(|h| h.iter().all(|i| set.contains(i))) {
                return Ok(());
            }
            let mut r = base.clone();
            r.add_axioms(set.iter().map(|&i| &pool[i]));
            if r.is_consistent()? && r.entails_all(&query.missing)? {
                found.push(set.to_vec());
            }
            Ok(())
        })?;
        kept.extend(found);
        if k < sizes && limit.is_some_and(|l| kept.len() >= l) {
            complete = false;
            break;
        }
    }

    let mut out: Vec<Hypothesis> = kept
        .into_iter()
        .map(|set| {
            let mut h = Hypothesis::from_core(set.iter().map(|&i| &pool[i]));
            h.verified = Some(true);
            h
        })
        .collect();
    let mut keyed: Vec<_> = out.drain(..).map(|h| ((h.axioms.len(), h.total_depth(), h.to_string()), h)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((keyed.into_iter().map(|(_, h)| h).collect(), complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_axiom, parse_ontology, ConceptName, Signature};

    fn sig(names: &[&str]) -> Signature {
        let mut s = Signature::new();
        s.concepts.extend(names.iter().map(|n| ConceptName::new(*n)));
        s
    }

    #[test]
    fn single_link() {
        let o = parse_ontology("SubClassOf(:B :C)").unwrap();
        let q = NonEntailmentQuery::new(vec![parse_axiom("SubClassOf(:A :C)").unwrap()], sig(&["A", "B"])).unwrap();
        let hs = naive_abduce(&o, &q, AbductionBounds { max_axioms: 1, max_depth: 0 }, &CancelToken::new()).unwrap();
        let shown: Vec<String> = hs.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["SubClassOf(:A :B)"]);
    }

    #[test]
    fn already_entailed() {
        let o = parse_ontology("SubClassOf(:A :C)").unwrap();
        let q = NonEntailmentQuery::new(vec![parse_axiom("SubClassOf(:A :C)").unwrap()], sig(&["A"])).unwrap();
        let err = naive_abduce(&o, &q, AbductionBounds::default(), &CancelToken::new()).unwrap_err();
        assert!(matches!(err, Error::AlreadyEntailed(_)));
    }

    #[test]
    fn empty_signature() {
        let q = NonEntailmentQuery::new(vec![parse_axiom("SubClassOf(:A :C)").unwrap()], Signature::new()).unwrap();
        let err = naive_abduce(&Ontology::new(), &q, AbductionBounds::default(), &CancelToken::new()).unwrap_err();
        assert_eq!(err, Error::EmptySignature);
    }

    #[test]
    fn unreachable_goal_gives_nothing() {
        let q = NonEntailmentQuery::new(vec![parse_axiom("SubClassOf(:A :C)").unwrap()], sig(&["A", "B"])).unwrap();
        let hs = naive_abduce(&Ontology::new(), &q, AbductionBounds { max_axioms: 2, max_depth: 0 }, &CancelToken::new())
            .unwrap();
        assert!(hs.is_empty());
    }
}
