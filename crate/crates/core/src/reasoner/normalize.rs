//! Rewriting of EL⊥ inclusions into the four normal shapes
//! `A ⊑ B`, `A1 ⊓ A2 ⊑ B`, `A ⊑ ∃r.B` and `∃r.A ⊑ B`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::syntax::{Axiom, Concept, ConceptName, RoleName, RESERVED_PREFIX};

/// A concept name, ⊤ or ⊥.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Top,
    Bottom,
    Name(ConceptName),
}

impl Atom {
    fn of(c: &Concept) -> Option<Atom> {
        match c {
            Concept::Top => Some(Atom::Top),
            Concept::Bottom => Some(Atom::Bottom),
            Concept::Name(n) => Some(Atom::Name(n.clone())),
            _ => None,
        }
    }

    pub fn to_concept(&self) -> Concept {
        match self {
            Atom::Top => Concept::Top,
            Atom::Bottom => Concept::Bottom,
            Atom::Name(n) => Concept::Name(n.clone()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_concept())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalAxiom {
    /// `A ⊑ B`
    Sub(Atom, Atom),
    /// `A1 ⊓ A2 ⊑ B`
    Conj(Atom, Atom, Atom),
    /// `A ⊑ ∃r.B`
    Exists(Atom, RoleName, Atom),
    /// `∃r.A ⊑ B`
    ExistsLhs(RoleName, Atom, Atom),
}

impl NormalAxiom {
    pub fn to_axiom(&self) -> Axiom {
        match self {
            NormalAxiom::Sub(a, b) => Axiom::SubClassOf(a.to_concept(), b.to_concept()),
            NormalAxiom::Conj(a1, a2, b) => {
                Axiom::SubClassOf(Concept::and([a1.to_concept(), a2.to_concept()]), b.to_concept())
            }
            NormalAxiom::Exists(a, r, b) => {
                Axiom::SubClassOf(a.to_concept(), Concept::exists(r.clone(), b.to_concept()))
            }
            NormalAxiom::ExistsLhs(r, a, b) => {
                Axiom::SubClassOf(Concept::exists(r.clone(), a.to_concept()), b.to_concept())
            }
        }
    }
}

impl fmt::Display for NormalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_axiom())
    }
}

/// A normalized TBox together with the meaning of every introduced name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizedTBox {
    pub axioms: Vec<NormalAxiom>,
    pub fresh_map: BTreeMap<ConceptName, Concept>,
}

/// Normalizes the terminological axioms of `tbox`; assertions are skipped.
/// Equivalences and disjointnesses are lowered to pairwise inclusions.
pub fn normalize<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> NormalizedTBox {
    let mut n = Normalizer::default();
    for ax in tbox {
        for (c, d) in ax.as_inclusions() {
            n.inclusion(&c, &d);
        }
    }
    NormalizedTBox {
        axioms: n.take_new(),
        fresh_map: n.fresh_map,
    }
}

pub fn is_fresh_name(n: &ConceptName) -> bool {
    n.as_str().starts_with(RESERVED_PREFIX)
}

/// Incremental normalizer. Complex subconcepts get one fresh name per
/// polarity, reused across calls, so normalizing further inclusions later
/// (for instance query helpers) extends rather than duplicates the TBox.
#[derive(Debug, Clone, Default)]
pub(crate) struct Normalizer {
    /// `X ⊑ C` names (C occurs positively).
    pos: HashMap<Concept, Atom>,
    /// `C ⊑ X` names (C occurs negatively).
    neg: HashMap<Concept, Atom>,
    next_fresh: usize,
    pub(crate) fresh_map: BTreeMap<ConceptName, Concept>,
    seen: HashSet<NormalAxiom>,
    pending: Vec<NormalAxiom>,
}

impl Normalizer {
    pub(crate) fn take_new(&mut self) -> Vec<NormalAxiom> {
        std::mem::take(&mut self.pending)
    }

    fn emit(&mut self, ax: NormalAxiom) {
        let trivial = match &ax {
            NormalAxiom::Sub(a, b) => a == b || *a == Atom::Bottom || *b == Atom::Top,
            NormalAxiom::Conj(a1, a2, b) => {
                *a1 == Atom::Bottom || *a2 == Atom::Bottom || *b == Atom::Top || a1 == b || a2 == b
            }
            NormalAxiom::Exists(a, _, _) => *a == Atom::Bottom,
            NormalAxiom::ExistsLhs(_, a, b) => *a == Atom::Bottom || *b == Atom::Top,
        };
        if !trivial && self.seen.insert(ax.clone()) {
            self.pending.push(ax);
        }
    }

    fn fresh(&mut self, meaning: &Concept) -> Atom {
        let name = ConceptName::new(format!("{RESERVED_PREFIX}X{}", self.next_fresh));
        self.next_fresh += 1;
        self.fresh_map.insert(name.clone(), meaning.clone());
        Atom::Name(name)
    }

    /// Adds `c ⊑ d`.
    pub(crate) fn inclusion(&mut self, c: &Concept, d: &Concept) {
        if *c == Concept::Bottom || *d == Concept::Top {
            return;
        }
        if let Some(b) = Atom::of(d) {
            self.lhs_into(c, b);
        } else if let Some(a) = Atom::of(c) {
            self.rhs_from(a, d);
        } else {
            let a = self.lhs_atom(c);
            self.rhs_from(a, d);
        }
    }

    /// An atom `X` with `c ⊑ X` such that subsumption by `X` coincides
    /// with subsumption by `c`.
    pub(crate) fn lhs_atom(&mut self, c: &Concept) -> Atom {
        if let Some(a) = Atom::of(c) {
            return a;
        }
        if let Some(a) = self.neg.get(c) {
            return a.clone();
        }
        let x = self.fresh(c);
        self.neg.insert(c.clone(), x.clone());
        self.lhs_into(c, x.clone());
        x
    }

    /// An atom `X` with `X ⊑ c` that may stand in for `c` as a subsumee.
    pub(crate) fn rhs_atom(&mut self, c: &Concept) -> Atom {
        if let Some(a) = Atom::of(c) {
            return a;
        }
        if let Some(a) = self.pos.get(c) {
            return a.clone();
        }
        let x = self.fresh(c);
        self.pos.insert(c.clone(), x.clone());
        self.rhs_from(x.clone(), c);
        x
    }

    fn lhs_into(&mut self, c: &Concept, b: Atom) {
        match c {
            Concept::Top | Concept::Bottom | Concept::Name(_) => {
                if let Some(a) = Atom::of(c) {
                    self.emit(NormalAxiom::Sub(a, b));
                }
            }
            Concept::Exists(r, f) => {
                let a = self.lhs_atom(f);
                self.emit(NormalAxiom::ExistsLhs(r.clone(), a, b));
            }
            Concept::And(cs) => {
                let mut atoms: Vec<Atom> = cs.iter().map(|k| self.lhs_atom(k)).collect();
                let mut parts: Vec<Concept> = cs.clone();
                while atoms.len() > 2 {
                    let pair = Concept::and([parts[0].clone(), parts[1].clone()]);
                    let y = match self.neg.get(&pair) {
                        Some(y) => y.clone(),
                        None => {
                            let y = self.fresh(&pair);
                            self.neg.insert(pair.clone(), y.clone());
                            self.emit(NormalAxiom::Conj(atoms[0].clone(), atoms[1].clone(), y.clone()));
                            y
                        }
                    };
                    atoms.splice(0..2, [y]);
                    parts.splice(0..2, [pair]);
                }
                match atoms.as_slice() {
                    [a1, a2] => self.emit(NormalAxiom::Conj(a1.clone(), a2.clone(), b)),
                    [a] => self.emit(NormalAxiom::Sub(a.clone(), b)),
                    _ => self.emit(NormalAxiom::Sub(Atom::Top, b)),
                }
            }
        }
    }

    fn rhs_from(&mut self, a: Atom, d: &Concept) {
        match d {
            Concept::Top | Concept::Bottom | Concept::Name(_) => {
                if let Some(b) = Atom::of(d) {
                    self.emit(NormalAxiom::Sub(a, b));
                }
            }
            Concept::And(ds) => {
                for k in ds {
                    self.rhs_from(a.clone(), k);
                }
            }
            Concept::Exists(r, f) => {
                let b = self.rhs_atom(f);
                self.emit(NormalAxiom::Exists(a, r.clone(), b));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_axioms;

    fn norm(text: &str) -> Vec<String> {
        let axioms = parse_axioms(text).unwrap();
        normalize(&axioms).axioms.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn existential_conjunction_on_the_right() {
        assert_eq!(
            norm("SubClassOf(:A ObjectSomeValuesFrom(:r ObjectIntersectionOf(:B :C)))"),
            ["SubClassOf(_:X0 :B)", "SubClassOf(_:X0 :C)", "SubClassOf(:A ObjectSomeValuesFrom(:r _:X0))"]
        );
    }

    #[test]
    fn existential_conjunction_on_the_left() {
        assert_eq!(
            norm("SubClassOf(ObjectSomeValuesFrom(:r ObjectIntersectionOf(:A :B)) :C)"),
            ["SubClassOf(ObjectIntersectionOf(:A :B) _:X0)", "SubClassOf(ObjectSomeValuesFrom(:r _:X0) :C)"]
        );
    }

    #[test]
    fn normal_axiom_unchanged() {
        assert_eq!(norm("SubClassOf(:A :B)"), ["SubClassOf(:A :B)"]);
    }

    #[test]
    fn long_conjunction_is_binarized() {
        let out = norm("SubClassOf(ObjectIntersectionOf(:A :B :C) :D)");
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], "SubClassOf(ObjectIntersectionOf(:A :B) _:X0)");
        assert_eq!(out[1], "SubClassOf(ObjectIntersectionOf(:C _:X0) :D)");
    }

    #[test]
    fn disjointness_lowers_to_bottom() {
        assert_eq!(
            norm("DisjointClasses(:A :B :C)"),
            [
                "SubClassOf(ObjectIntersectionOf(:A :B) owl:Nothing)",
                "SubClassOf(ObjectIntersectionOf(:A :C) owl:Nothing)",
                "SubClassOf(ObjectIntersectionOf(:B :C) owl:Nothing)",
            ]
        );
    }

    #[test]
    fn fresh_map_records_meaning() {
        let axioms = parse_axioms("SubClassOf(:A ObjectSomeValuesFrom(:r ObjectIntersectionOf(:B :C)))").unwrap();
        let n = normalize(&axioms);
        let meaning = &n.fresh_map[&ConceptName::new("_:X0")];
        assert_eq!(meaning.to_string(), "ObjectIntersectionOf(:B :C)");
    }
}
