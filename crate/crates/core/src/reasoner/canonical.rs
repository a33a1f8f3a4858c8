use std::collections::BTreeSet;

use super::interpretation::{Interpretation, Origin};
use super::Reasoner;
use crate::error::{Error, Result};
use crate::syntax::{Axiom, Concept};

/// Canonical model of the terminological part of `tbox` around `seeds`.
///
/// There is one element `d_F` per seed and per existential filler `F`
/// occurring in the TBox or the seeds (seeds first, in order; fillers sorted
/// by printed form). `d_F ∈ A` iff `T ⊨ F ⊑ A` and `(d_F, r, d_G)` iff
/// `T ⊨ F ⊑ ∃r.G`. Unsatisfiable fillers are left out; an unsatisfiable
/// seed is an error.
pub fn canonical_model(tbox: &[Axiom], seeds: &[Concept]) -> Result<Interpretation> {
    let tbox: Vec<&Axiom> = tbox.iter().filter(|a| a.is_tbox()).collect();
    let mut reasoner = Reasoner::from_axioms(tbox.iter().copied());
    canonical_model_with(&mut reasoner, &tbox, seeds)
}

/// As [`canonical_model`], reusing a reasoner already loaded with `tbox`.
pub fn canonical_model_with(
    reasoner: &mut Reasoner,
    tbox: &[&Axiom],
    seeds: &[Concept],
) -> Result<Interpretation> {
    let mut index: Vec<Concept> = Vec::new();
    for s in seeds {
        if !index.contains(s) {
            index.push(s.clone());
        }
    }
    let mut fillers = BTreeSet::new();
    let mut roles = BTreeSet::new();
    let concepts = tbox
        .iter()
        .flat_map(|a| a.concepts())
        .chain(seeds.iter());
    for c in concepts {
        for sub in c.subconcepts() {
            if let Concept::Exists(r, f) = sub {
                fillers.insert((f.to_string(), f.as_ref().clone()));
                roles.insert(r.clone());
            }
        }
    }
    for (_, f) in fillers {
        if !index.contains(&f) {
            index.push(f);
        }
    }

    let mut interp = Interpretation::default();
    let mut members = Vec::new();
    for (i, f) in index.iter().enumerate() {
        match reasoner.named_subsumers(f)? {
            Some(classes) => {
                interp.add_element(Origin::Concept(f.clone()), classes);
                members.push(f.clone());
            }
            None if i < seeds.len() => return Err(Error::SeedInconsistent(f.to_string())),
            None => {}
        }
    }

    let mut pairs = Vec::new();
    let mut keys = Vec::new();
    for (s, f) in members.iter().enumerate() {
        for r in &roles {
            for (t, g) in members.iter().enumerate() {
                pairs.push((f.clone(), Concept::exists(r.clone(), g.clone())));
                keys.push((s, r.clone(), t));
            }
        }
    }
    let verdicts = reasoner.subsumes_all(&pairs)?;
    for ((s, r, t), holds) in keys.into_iter().zip(verdicts) {
        if holds {
            interp.add_edge(s, r, t);
        }
    }
    Ok(interp)
}
