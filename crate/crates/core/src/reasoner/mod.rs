//! EL⊥ reasoning by completion: normalization, saturation, entailment,
//! consistency, canonical models and model checking.
//!
//! Individuals are internalized: each individual `a` gets a reserved concept
//! name `N_a`, a class assertion `C(a)` becomes `N_a ⊑ C` and a role
//! assertion `r(a, b)` becomes `N_a ⊑ ∃r.N_b`. Since EL⊥ has neither inverse
//! roles nor number restrictions, the types of `a` in the least model are
//! exactly the subsumers of `N_a`, so instance checking reduces to
//! subsumption and the ontology is consistent iff neither ⊤ nor any `N_a`
//! is unsatisfiable.

mod canonical;
mod interpretation;
mod normalize;
mod saturation;

use std::collections::{BTreeSet, HashMap, HashSet};

pub use canonical::{canonical_model, canonical_model_with};
pub use interpretation::{Edge, Element, Interpretation, Origin};
pub use normalize::{is_fresh_name, normalize, Atom, NormalAxiom, NormalizedTBox};
pub use saturation::saturation_count;

use crate::cancel::CancelToken;
use crate::error::Result;
use crate::syntax::{Axiom, Concept, ConceptName, IndividualName, Ontology, RoleName, RESERVED_PREFIX};
use normalize::Normalizer;
use saturation::{Cid, IdAxiom, Rid, Saturation, BOTTOM, TOP};

/// Reserved concept name standing for individual `a`.
pub(crate) fn individual_concept(a: &IndividualName) -> ConceptName {
    ConceptName::new(format!("{RESERVED_PREFIX}ind:{}", a.as_str()))
}

/// An incrementally extensible EL⊥ knowledge base.
///
/// Axioms can be added at any time; queries saturate lazily and reuse the
/// closure computed so far. Cloning is cheap enough to branch a base state
/// for hypothetical additions.
#[derive(Debug, Clone)]
pub struct Reasoner {
    norm: Normalizer,
    sat: Saturation,
    ids: HashMap<Atom, Cid>,
    atoms: Vec<Atom>,
    roles: HashMap<RoleName, Rid>,
    individuals: BTreeSet<IndividualName>,
    role_assertions: HashSet<(RoleName, IndividualName, IndividualName)>,
    cancel: CancelToken,
}

impl Default for Reasoner {
    fn default() -> Self {
        Reasoner::new()
    }
}

impl Reasoner {
    pub fn new() -> Self {
        let mut r = Reasoner {
            norm: Normalizer::default(),
            sat: Saturation::new(),
            ids: HashMap::new(),
            atoms: vec![Atom::Top, Atom::Bottom],
            roles: HashMap::new(),
            individuals: BTreeSet::new(),
            role_assertions: HashSet::new(),
            cancel: CancelToken::new(),
        };
        r.ids.insert(Atom::Top, TOP);
        r.ids.insert(Atom::Bottom, BOTTOM);
        r
    }

    pub fn from_axioms<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> Self {
        let mut r = Reasoner::new();
        for a in axioms {
            r.add_axiom(a);
        }
        r
    }

    pub fn from_ontology(o: &Ontology) -> Self {
        Reasoner::from_axioms(o.axioms())
    }

    /// Saturation polls `cancel` and stops with [`crate::Error::Cancelled`].
    pub fn with_cancel(mut self, cancel: CancelToken) -> Self {
        self.cancel = cancel;
        self
    }

    pub fn set_cancel(&mut self, cancel: CancelToken) {
        self.cancel = cancel;
    }

    fn concept_id(&mut self, a: &Atom) -> Cid {
        if let Some(&id) = self.ids.get(a) {
            return id;
        }
        let id = self.sat.add_concept();
        self.ids.insert(a.clone(), id);
        self.atoms.push(a.clone());
        id
    }

    fn role_id(&mut self, r: &RoleName) -> Rid {
        let next = self.roles.len() as Rid;
        *self.roles.entry(r.clone()).or_insert(next)
    }

    fn flush(&mut self) {
        for ax in self.norm.take_new() {
            let id_ax = match &ax {
                NormalAxiom::Sub(a, b) => IdAxiom::Sub(self.concept_id(a), self.concept_id(b)),
                NormalAxiom::Conj(a1, a2, b) => {
                    IdAxiom::Conj(self.concept_id(a1), self.concept_id(a2), self.concept_id(b))
                }
                NormalAxiom::Exists(a, r, b) => {
                    IdAxiom::Exists(self.concept_id(a), self.role_id(r), self.concept_id(b))
                }
                NormalAxiom::ExistsLhs(r, a, b) => {
                    IdAxiom::ExistsLhs(self.role_id(r), self.concept_id(a), self.concept_id(b))
                }
            };
            self.sat.add_axiom(id_ax);
        }
    }

    pub fn add_axiom(&mut self, axiom: &Axiom) {
        match axiom {
            Axiom::ClassAssertion(c, a) => {
                self.individuals.insert(a.clone());
                let n = Concept::Name(individual_concept(a));
                self.concept_id(&Atom::Name(individual_concept(a)));
                self.norm.inclusion(&n, c);
            }
            Axiom::RoleAssertion(r, a, b) => {
                self.individuals.insert(a.clone());
                self.individuals.insert(b.clone());
                self.role_assertions.insert((r.clone(), a.clone(), b.clone()));
                let na = Concept::Name(individual_concept(a));
                let nb = Concept::Name(individual_concept(b));
                self.concept_id(&Atom::Name(individual_concept(b)));
                self.norm.inclusion(&na, &Concept::exists(r.clone(), nb));
            }
            _ => {
                for (c, d) in axiom.as_inclusions() {
                    self.norm.inclusion(&c, &d);
                }
            }
        }
        self.flush();
    }

    pub fn add_axioms<'a>(&mut self, axioms: impl IntoIterator<Item = &'a Axiom>) {
        for a in axioms {
            self.add_axiom(a);
        }
    }

    fn saturate(&mut self) -> Result<()> {
        if !self.sat.is_saturated() {
            self.sat.run(&self.cancel)?;
        }
        Ok(())
    }

    pub fn is_consistent(&mut self) -> Result<bool> {
        self.saturate()?;
        if self.sat.holds(TOP, BOTTOM) {
            return Ok(false);
        }
        for a in &self.individuals {
            let id = self.ids[&Atom::Name(individual_concept(a))];
            if self.sat.holds(id, BOTTOM) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Registers the helper names for `c ⊑ d` without saturating.
    fn prepare(&mut self, c: &Concept, d: &Concept) -> (Cid, Cid) {
        let x = self.norm.rhs_atom(c);
        let y = self.norm.lhs_atom(d);
        let ids = (self.concept_id(&x), self.concept_id(&y));
        self.flush();
        ids
    }

    /// Decides `T ⊨ c ⊑ d` for every pair with a single saturation run.
    /// Ignores consistency of the ABox.
    pub fn subsumes_all(&mut self, pairs: &[(Concept, Concept)]) -> Result<Vec<bool>> {
        let ids: Vec<_> = pairs.iter().map(|(c, d)| self.prepare(c, d)).collect();
        self.saturate()?;
        Ok(ids.into_iter().map(|(x, y)| self.sat.holds(x, y)).collect())
    }

    /// `T ⊨ c ⊑ d` with respect to the terminological part only.
    pub fn subsumes(&mut self, c: &Concept, d: &Concept) -> Result<bool> {
        if *c == Concept::Bottom || *d == Concept::Top || c == d {
            return Ok(true);
        }
        Ok(self.subsumes_all(&[(c.clone(), d.clone())])?[0])
    }

    pub fn is_satisfiable(&mut self, c: &Concept) -> Result<bool> {
        Ok(!self.subsumes(c, &Concept::Bottom)?)
    }

    /// User concept names subsuming `c`; `None` when `c` is unsatisfiable.
    pub fn named_subsumers(&mut self, c: &Concept) -> Result<Option<BTreeSet<ConceptName>>> {
        let x = self.norm.rhs_atom(c);
        let x = self.concept_id(&x);
        self.flush();
        self.saturate()?;
        if self.sat.holds(x, BOTTOM) {
            return Ok(None);
        }
        Ok(Some(
            self.sat
                .subsumers(x)
                .iter()
                .filter_map(|id| match &self.atoms[id as usize] {
                    Atom::Name(n) if !n.is_reserved() => Some(n.clone()),
                    _ => None,
                })
                .collect(),
        ))
    }

    pub fn entails(&mut self, axiom: &Axiom) -> Result<bool> {
        if !self.is_consistent()? {
            return Ok(true);
        }
        match axiom {
            Axiom::ClassAssertion(c, a) => {
                let n = Concept::Name(individual_concept(a));
                self.subsumes(&n, c)
            }
            Axiom::RoleAssertion(r, a, b) => {
                Ok(self.role_assertions.contains(&(r.clone(), a.clone(), b.clone())))
            }
            _ => {
                let pairs = axiom.as_inclusions();
                Ok(self.subsumes_all(&pairs)?.into_iter().all(|b| b))
            }
        }
    }

    pub fn entails_all<'a>(&mut self, axioms: impl IntoIterator<Item = &'a Axiom>) -> Result<bool> {
        for a in axioms {
            if !self.entails(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `ontology ⊨ axiom`; an inconsistent ontology entails everything.
pub fn entails(ontology: &Ontology, axiom: &Axiom) -> Result<bool> {
    Reasoner::from_ontology(ontology).entails(axiom)
}

pub fn is_consistent(ontology: &Ontology) -> Result<bool> {
    Reasoner::from_ontology(ontology).is_consistent()
}

/// Semantic evaluation of `axiom` in a finite interpretation.
pub fn model_satisfies(interp: &Interpretation, axiom: &Axiom) -> Result<bool> {
    interp.satisfies(axiom)
}
