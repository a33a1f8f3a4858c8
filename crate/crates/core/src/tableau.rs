//! Small counterexample models for a non-entailed GCI `C ⊑ D`.
//!
//! The ABox starts as `{C(a*), ⊤(a*)}`, the TBox is extended with `D ⊑ B*`
//! for a fresh goal name `B*` and normalized, and the expansion rules
//!
//! * ⊓: `D(a)` present, `K ∈ At(D)` missing ⟹ add `K(a)`
//! * ∃₁: `r(a,b)`, `A(b)` with `A` a name or ⊤, `∃r.A(a)` missing ⟹ add `∃r.A(a)`
//! * ⊑: `A(a)` with `A ⊑ B`, or `A1(a), A2(a)` with `A1 ⊓ A2 ⊑ B`, or
//!   `∃r.A(a)` with `∃r.A ⊑ B`, and `B(a)` missing ⟹ add `B(a)`
//! * ∃₂: `∃r.E(a)` without an `r`-successor in `E` ⟹ link to the first
//!   existing individual `c` (creation order) for which `T ∪ A ∪ {r(a,c),
//!   E(c)}` is consistent and does not entail `B*(a*)`, else to a new one
//!
//! are applied until none applies, ∃₂ only when no other rule does. Each
//! rule scans its triggers in insertion order. Since assertions are never
//! removed, expansion stops as soon as `B*(a*)` appears: the outcome is then
//! fixed to "entailed".

use std::collections::HashMap;
use std::time::{Duration, Instant};

use indexmap::IndexSet;

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::reasoner::{normalize, Atom, Interpretation, NormalAxiom, NormalizedTBox, Origin, Reasoner};
use crate::syntax::{Axiom, Concept, ConceptName, IndividualName, RoleName, RESERVED_PREFIX};

pub const MAX_RULE_APPLICATIONS: usize = 100_000;
pub const MAX_WALL_TIME: Duration = Duration::from_secs(5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Conjunction,
    ExistsIntro,
    ExistsReuse,
    ExistsFresh,
    Subsumption,
}

impl RuleName {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Conjunction => "and",
            RuleName::ExistsIntro => "exists1",
            RuleName::ExistsReuse => "exists2-reuse",
            RuleName::ExistsFresh => "exists2-fresh",
            RuleName::Subsumption => "subsumption",
        }
    }
}

/// Individuals are indexes into [`TableauState::individuals`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Assertion {
    Concept(Concept, usize),
    Role(RoleName, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: RuleName,
    pub trigger: Vec<Assertion>,
    pub added: Vec<Assertion>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    Applied(RuleName),
    Saturated,
}

#[derive(Debug, Clone)]
struct Index {
    told: HashMap<Atom, Vec<Concept>>,
    conj: HashMap<Atom, Vec<(Atom, Atom)>>,
    exists_lhs: HashMap<(RoleName, Atom), Vec<Atom>>,
}

impl Index {
    fn new(tbox: &NormalizedTBox) -> Self {
        let mut idx = Index { told: HashMap::new(), conj: HashMap::new(), exists_lhs: HashMap::new() };
        for ax in &tbox.axioms {
            match ax {
                NormalAxiom::Sub(a, b) => idx.told.entry(a.clone()).or_default().push(b.to_concept()),
                NormalAxiom::Exists(a, r, b) => idx
                    .told
                    .entry(a.clone())
                    .or_default()
                    .push(Concept::exists(r.clone(), b.to_concept())),
                NormalAxiom::Conj(a1, a2, b) => {
                    idx.conj.entry(a1.clone()).or_default().push((a2.clone(), b.clone()));
                    idx.conj.entry(a2.clone()).or_default().push((a1.clone(), b.clone()));
                }
                NormalAxiom::ExistsLhs(r, a, b) => {
                    idx.exists_lhs.entry((r.clone(), a.clone())).or_default().push(b.clone())
                }
            }
        }
        idx
    }
}

fn atom_of(c: &Concept) -> Option<Atom> {
    match c {
        Concept::Top => Some(Atom::Top),
        Concept::Bottom => Some(Atom::Bottom),
        Concept::Name(n) => Some(Atom::Name(n.clone())),
        _ => None,
    }
}

/// The working ABox of one expansion run.
#[derive(Debug, Clone)]
pub struct TableauState {
    pub individuals: Vec<IndividualName>,
    pub goal: ConceptName,
    pub tbox: NormalizedTBox,
    pub trace: Vec<TraceStep>,
    assertions: IndexSet<Assertion>,
    index: Index,
    reasoner: Reasoner,
    saturated: bool,
}

impl TableauState {
    /// Initial state for the query `c ⊑ d` over the terminological part
    /// of `tbox`.
    pub fn new(tbox: &[Axiom], c: &Concept, d: &Concept) -> Self {
        let goal = ConceptName::new(format!("{RESERVED_PREFIX}Goal"));
        let goal_axiom = Axiom::SubClassOf(d.clone(), Concept::Name(goal.clone()));
        let terminology: Vec<&Axiom> = tbox.iter().filter(|a| a.is_tbox()).chain([&goal_axiom]).collect();
        let normalized = normalize(terminology.iter().copied());
        let reasoner = Reasoner::from_axioms(terminology.iter().copied());
        let mut state = TableauState {
            individuals: vec![IndividualName::new(format!("{RESERVED_PREFIX}a*"))],
            goal,
            index: Index::new(&normalized),
            tbox: normalized,
            trace: Vec::new(),
            assertions: IndexSet::new(),
            reasoner,
            saturated: false,
        };
        state.insert(Assertion::Concept(c.clone(), 0));
        state.insert(Assertion::Concept(Concept::Top, 0));
        state
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn assertions(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter()
    }

    pub fn contains(&self, a: &Assertion) -> bool {
        self.assertions.contains(a)
    }

    pub fn goal_reached(&self) -> bool {
        self.contains(&Assertion::Concept(Concept::Name(self.goal.clone()), 0))
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    fn to_axiom(&self, a: &Assertion) -> Axiom {
        match a {
            Assertion::Concept(c, i) => Axiom::ClassAssertion(c.clone(), self.individuals[*i].clone()),
            Assertion::Role(r, i, j) => {
                Axiom::RoleAssertion(r.clone(), self.individuals[*i].clone(), self.individuals[*j].clone())
            }
        }
    }

    /// Axiom form of every assertion, in insertion order.
    pub fn assertion_axioms(&self) -> Vec<Axiom> {
        self.assertions.iter().map(|a| self.to_axiom(a)).collect()
    }

    fn insert(&mut self, a: Assertion) -> bool {
        if self.assertions.contains(&a) {
            return false;
        }
        let ax = self.to_axiom(&a);
        self.reasoner.add_axiom(&ax);
        self.assertions.insert(a);
        self.saturated = false;
        true
    }

    fn has_concept(&self, c: &Concept, i: usize) -> bool {
        self.assertions.contains(&Assertion::Concept(c.clone(), i))
    }

    fn concept_assertions(&self) -> impl Iterator<Item = (&Concept, usize)> {
        self.assertions.iter().filter_map(|a| match a {
            Assertion::Concept(c, i) => Some((c, *i)),
            _ => None,
        })
    }

    fn find_conjunction(&self) -> Option<(Assertion, Assertion)> {
        for (d, i) in self.concept_assertions() {
            if let Concept::And(cs) = d {
                if let Some(k) = cs.iter().find(|k| !self.has_concept(k, i)) {
                    return Some((Assertion::Concept(d.clone(), i), Assertion::Concept(k.clone(), i)));
                }
            }
        }
        None
    }

    fn find_exists_intro(&self) -> Option<(Vec<Assertion>, Assertion)> {
        for a in &self.assertions {
            let Assertion::Role(r, i, j) = a else { continue };
            for (c, k) in self.concept_assertions() {
                if k != *j || atom_of(c).is_none() || *c == Concept::Bottom {
                    continue;
                }
                let e = Concept::exists(r.clone(), c.clone());
                if !self.has_concept(&e, *i) {
                    let trigger = vec![a.clone(), Assertion::Concept(c.clone(), k)];
                    return Some((trigger, Assertion::Concept(e, *i)));
                }
            }
        }
        None
    }

    fn find_subsumption(&self) -> Option<(Vec<Assertion>, Assertion)> {
        for (x, i) in self.concept_assertions() {
            let here = Assertion::Concept(x.clone(), i);
            if let Some(a) = atom_of(x) {
                for b in self.index.told.get(&a).into_iter().flatten() {
                    if !self.has_concept(b, i) {
                        return Some((vec![here], Assertion::Concept(b.clone(), i)));
                    }
                }
                for (other, b) in self.index.conj.get(&a).into_iter().flatten() {
                    let other = other.to_concept();
                    let b = b.to_concept();
                    if self.has_concept(&other, i) && !self.has_concept(&b, i) {
                        let trigger = vec![here, Assertion::Concept(other, i)];
                        return Some((trigger, Assertion::Concept(b, i)));
                    }
                }
            } else if let Concept::Exists(r, f) = x {
                let Some(fa) = atom_of(f) else { continue };
                for b in self.index.exists_lhs.get(&(r.clone(), fa)).into_iter().flatten() {
                    let b = b.to_concept();
                    if !self.has_concept(&b, i) {
                        return Some((vec![here], Assertion::Concept(b, i)));
                    }
                }
            }
        }
        None
    }

    fn find_exists_demand(&self) -> Option<(RoleName, Concept, usize)> {
        for (x, i) in self.concept_assertions() {
            let Concept::Exists(r, e) = x else { continue };
            let satisfied = self.assertions.iter().any(|a| match a {
                Assertion::Role(rr, s, t) => rr == r && *s == i && self.has_concept(e, *t),
                _ => false,
            });
            if !satisfied {
                return Some((r.clone(), e.as_ref().clone(), i));
            }
        }
        None
    }

    fn admissible(&self, r: &RoleName, e: &Concept, a: usize, c: usize) -> Result<bool> {
        let mut trial = self.reasoner.clone();
        trial.add_axiom(&Axiom::RoleAssertion(r.clone(), self.individuals[a].clone(), self.individuals[c].clone()));
        trial.add_axiom(&Axiom::ClassAssertion(e.clone(), self.individuals[c].clone()));
        if !trial.is_consistent()? {
            return Ok(false);
        }
        let goal = Axiom::ClassAssertion(Concept::Name(self.goal.clone()), self.individuals[0].clone());
        Ok(!trial.entails(&goal)?)
    }

    fn record(&mut self, rule: RuleName, trigger: Vec<Assertion>, added: Vec<Assertion>) -> Result<Expansion> {
        let mut fresh = Vec::new();
        for a in added {
            if let Assertion::Concept(Concept::Bottom, i) = &a {
                return Err(Error::TableauClash(self.individuals[*i].to_string()));
            }
            if self.insert(a.clone()) {
                fresh.push(a);
            }
        }
        self.trace.push(TraceStep { rule, trigger, added: fresh });
        Ok(Expansion::Applied(rule))
    }

    /// Applies one rule instance under the priority ⊓, ∃₁, ⊑, then ∃₂.
    pub fn expand_once(&mut self) -> Result<Expansion> {
        if let Some((trigger, added)) = self.find_conjunction() {
            return self.record(RuleName::Conjunction, vec![trigger], vec![added]);
        }
        if let Some((trigger, added)) = self.find_exists_intro() {
            return self.record(RuleName::ExistsIntro, trigger, vec![added]);
        }
        if let Some((trigger, added)) = self.find_subsumption() {
            return self.record(RuleName::Subsumption, trigger, vec![added]);
        }
        if let Some((r, e, a)) = self.find_exists_demand() {
            let trigger = vec![Assertion::Concept(Concept::exists(r.clone(), e.clone()), a)];
            for c in 0..self.individuals.len() {
                if self.admissible(&r, &e, a, c)? {
                    let added = vec![Assertion::Role(r.clone(), a, c), Assertion::Concept(e, c)];
                    return self.record(RuleName::ExistsReuse, trigger, added);
                }
            }
            let d = self.individuals.len();
            self.individuals.push(IndividualName::new(format!("{RESERVED_PREFIX}d{d}")));
            let added = vec![
                Assertion::Role(r, a, d),
                Assertion::Concept(e, d),
                Assertion::Concept(Concept::Top, d),
            ];
            return self.record(RuleName::ExistsFresh, trigger, added);
        }
        self.saturated = true;
        Ok(Expansion::Saturated)
    }

    /// The interpretation read off a saturated state: one element per
    /// individual, labels from concept-name assertions (reserved names
    /// dropped), edges from role assertions, the root marked.
    pub fn induce_interpretation(&self) -> Result<Interpretation> {
        if !self.saturated {
            return Err(Error::NotSaturated);
        }
        let mut interp = Interpretation::default();
        for (i, name) in self.individuals.iter().enumerate() {
            let classes = self
                .concept_assertions()
                .filter(|(_, k)| *k == i)
                .filter_map(|(c, _)| match c {
                    Concept::Name(n) if !n.is_reserved() => Some(n.clone()),
                    _ => None,
                })
                .collect();
            interp.add_element(Origin::Individual(name.clone()), classes);
        }
        for a in &self.assertions {
            if let Assertion::Role(r, i, j) = a {
                interp.add_edge(*i, r.clone(), *j);
            }
        }
        interp.marked.insert(0);
        Ok(interp)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub rule_counts: Vec<(RuleName, usize)>,
    pub individuals: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Counterexample(Interpretation),
    Entailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleResult {
    pub outcome: Outcome,
    pub stats: Stats,
    pub trace: Vec<TraceStep>,
}

/// Runs the expansion for the GCI `query` and returns either a model of the
/// TBox whose marked root refutes the query, or [`Outcome::Entailed`].
pub fn generate_small_model(tbox: &[Axiom], query: &Axiom, cancel: &CancelToken) -> Result<CounterexampleResult> {
    let Axiom::SubClassOf(c, d) = query else {
        return Err(Error::Unsupported("requires a single subclass axiom".into()));
    };
    let terminology: Vec<&Axiom> = tbox.iter().filter(|a| a.is_tbox()).collect();
    let mut pre = Reasoner::from_axioms(terminology.iter().copied()).with_cancel(cancel.clone());
    if !pre.is_consistent()? || !pre.is_satisfiable(c)? {
        return Err(Error::InconsistentInput);
    }

    let start = Instant::now();
    let mut state = TableauState::new(tbox, c, d);
    state.reasoner.set_cancel(cancel.clone());
    let mut counts: HashMap<RuleName, usize> = HashMap::new();
    let mut steps = 0usize;
    loop {
        cancel.check()?;
        if state.goal_reached() {
            break;
        }
        match state.expand_once()? {
            Expansion::Saturated => break,
            Expansion::Applied(rule) => {
                *counts.entry(rule).or_default() += 1;
                steps += 1;
                if steps >= MAX_RULE_APPLICATIONS || start.elapsed() > MAX_WALL_TIME {
                    return Err(Error::StepBudgetExceeded { steps, millis: start.elapsed().as_millis() });
                }
            }
        }
    }
    let mut rule_counts: Vec<_> = counts.into_iter().collect();
    rule_counts.sort();
    let stats = Stats { rule_counts, individuals: state.individuals.len(), elapsed: start.elapsed() };
    let outcome = if state.goal_reached() {
        Outcome::Entailed
    } else {
        Outcome::Counterexample(state.induce_interpretation()?)
    };
    Ok(CounterexampleResult { outcome, stats, trace: state.trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_axiom, parse_axioms};

    fn run(tbox: &str, query: &str) -> Outcome {
        let tbox = parse_axioms(tbox).unwrap();
        generate_small_model(&tbox, &parse_axiom(query).unwrap(), &CancelToken::new())
            .unwrap()
            .outcome
    }

    fn labels(i: &Interpretation, d: usize) -> Vec<&str> {
        i.elements[d].classes.iter().map(|c| c.as_str()).collect()
    }

    #[test]
    fn empty_tbox_single_element() {
        let Outcome::Counterexample(m) = run("", "SubClassOf(:A :B)") else { panic!() };
        assert_eq!(m.len(), 1);
        assert_eq!(labels(&m, 0), ["A"]);
        assert!(m.marked.contains(&0));
    }

    #[test]
    fn cycle_reuses_root() {
        let Outcome::Counterexample(m) = run("SubClassOf(:A ObjectSomeValuesFrom(:r :A))", "SubClassOf(:A :B)")
        else {
            panic!()
        };
        assert_eq!(m.len(), 1);
        assert_eq!(m.edges.len(), 1);
        let e = m.edges.iter().next().unwrap();
        assert_eq!((e.source, e.target), (0, 0));
    }

    #[test]
    fn inconsistent_reuse_forces_fresh_successor() {
        let tbox = "SubClassOf(:A ObjectSomeValuesFrom(:r :B)) SubClassOf(:B :C) \
                    SubClassOf(ObjectIntersectionOf(:A :C) owl:Nothing)";
        let Outcome::Counterexample(m) = run(tbox, "SubClassOf(:A :C)") else { panic!() };
        assert_eq!(m.len(), 2);
        assert_eq!(labels(&m, 1), ["B", "C"]);
    }

    #[test]
    fn entailed_query() {
        assert_eq!(run("SubClassOf(:A :B)", "SubClassOf(:A :B)"), Outcome::Entailed);
    }

    #[test]
    fn entailed_with_cycle_terminates() {
        let tbox = "SubClassOf(:A ObjectSomeValuesFrom(:r :A)) SubClassOf(ObjectSomeValuesFrom(:r :A) :B)";
        assert_eq!(run(tbox, "SubClassOf(:A :B)"), Outcome::Entailed);
    }

    #[test]
    fn unsatisfiable_lhs() {
        let tbox = parse_axioms("SubClassOf(:A owl:Nothing)").unwrap();
        let err = generate_small_model(&tbox, &parse_axiom("SubClassOf(:A :B)").unwrap(), &CancelToken::new());
        assert_eq!(err.unwrap_err(), Error::InconsistentInput);
    }

    #[test]
    fn conjunction_rule_first() {
        let mut s = TableauState::new(&[], &Concept::and([Concept::name("A"), Concept::name("B")]), &Concept::name("C"));
        assert_eq!(s.expand_once().unwrap(), Expansion::Applied(RuleName::Conjunction));
        assert!(s.contains(&Assertion::Concept(Concept::name("A"), 0)));
    }

    #[test]
    fn induce_requires_saturation() {
        let s = TableauState::new(&[], &Concept::name("A"), &Concept::name("B"));
        assert_eq!(s.induce_interpretation().unwrap_err(), Error::NotSaturated);
    }

    #[test]
    fn deterministic_trace() {
        let tbox = parse_axioms(
            "SubClassOf(:A ObjectSomeValuesFrom(:r ObjectIntersectionOf(:B ObjectSomeValuesFrom(:s :C)))) \
             SubClassOf(:C ObjectSomeValuesFrom(:r :A))",
        )
        .unwrap();
        let q = parse_axiom("SubClassOf(:A :C)").unwrap();
        let a = generate_small_model(&tbox, &q, &CancelToken::new()).unwrap();
        let b = generate_small_model(&tbox, &q, &CancelToken::new()).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.outcome, b.outcome);
    }
}
