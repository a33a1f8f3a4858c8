use std::fmt;

use super::concept::Concept;
use super::extended::ExtConcept;
use super::names::{IndividualName, RoleName};

/// A logical axiom over concepts of type `C`.
///
/// Equivalence and disjointness are kept as written; reasoning lowers them
/// to pairwise inclusions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom<C = Concept> {
    SubClassOf(C, C),
    EquivalentClasses(Vec<C>),
    DisjointClasses(Vec<C>),
    ClassAssertion(C, IndividualName),
    RoleAssertion(RoleName, IndividualName, IndividualName),
}

/// Axiom over the extended hypothesis language.
pub type ExtAxiom = Axiom<ExtConcept>;

impl<C> Axiom<C> {
    pub fn is_tbox(&self) -> bool {
        matches!(
            self,
            Axiom::SubClassOf(..) | Axiom::EquivalentClasses(_) | Axiom::DisjointClasses(_)
        )
    }

    pub fn concepts(&self) -> Vec<&C> {
        match self {
            Axiom::SubClassOf(a, b) => vec![a, b],
            Axiom::EquivalentClasses(cs) | Axiom::DisjointClasses(cs) => cs.iter().collect(),
            Axiom::ClassAssertion(c, _) => vec![c],
            Axiom::RoleAssertion(..) => vec![],
        }
    }

    pub fn map_concepts<D>(&self, mut f: impl FnMut(&C) -> D) -> Axiom<D> {
        match self {
            Axiom::SubClassOf(a, b) => Axiom::SubClassOf(f(a), f(b)),
            Axiom::EquivalentClasses(cs) => Axiom::EquivalentClasses(cs.iter().map(f).collect()),
            Axiom::DisjointClasses(cs) => Axiom::DisjointClasses(cs.iter().map(f).collect()),
            Axiom::ClassAssertion(c, a) => Axiom::ClassAssertion(f(c), a.clone()),
            Axiom::RoleAssertion(r, a, b) => Axiom::RoleAssertion(r.clone(), a.clone(), b.clone()),
        }
    }

    pub fn try_map_concepts<D>(&self, mut f: impl FnMut(&C) -> Option<D>) -> Option<Axiom<D>> {
        Some(match self {
            Axiom::SubClassOf(a, b) => Axiom::SubClassOf(f(a)?, f(b)?),
            Axiom::EquivalentClasses(cs) => {
                Axiom::EquivalentClasses(cs.iter().map(f).collect::<Option<_>>()?)
            }
            Axiom::DisjointClasses(cs) => {
                Axiom::DisjointClasses(cs.iter().map(f).collect::<Option<_>>()?)
            }
            Axiom::ClassAssertion(c, a) => Axiom::ClassAssertion(f(c)?, a.clone()),
            Axiom::RoleAssertion(r, a, b) => Axiom::RoleAssertion(r.clone(), a.clone(), b.clone()),
        })
    }
}

impl Axiom<Concept> {
    /// Pairwise inclusions equivalent to this terminological axiom
    /// (empty for assertions).
    pub fn as_inclusions(&self) -> Vec<(Concept, Concept)> {
        match self {
            Axiom::SubClassOf(a, b) => vec![(a.clone(), b.clone())],
            Axiom::EquivalentClasses(cs) => {
                let mut out = Vec::new();
                for (i, a) in cs.iter().enumerate() {
                    for (j, b) in cs.iter().enumerate() {
                        if i != j {
                            out.push((a.clone(), b.clone()));
                        }
                    }
                }
                out
            }
            Axiom::DisjointClasses(cs) => {
                let mut out = Vec::new();
                for i in 0..cs.len() {
                    for j in i + 1..cs.len() {
                        out.push((Concept::and([cs[i].clone(), cs[j].clone()]), Concept::Bottom));
                    }
                }
                out
            }
            Axiom::ClassAssertion(..) | Axiom::RoleAssertion(..) => Vec::new(),
        }
    }

    pub fn mentions_bottom(&self) -> bool {
        matches!(self, Axiom::DisjointClasses(_))
            || self.concepts().into_iter().any(Concept::mentions_bottom)
    }

    pub fn role_depth(&self) -> usize {
        self.concepts().into_iter().map(Concept::role_depth).max().unwrap_or(0)
    }
}

impl ExtAxiom {
    pub fn to_core(&self) -> Option<Axiom> {
        self.try_map_concepts(ExtConcept::to_core)
    }

    pub fn role_depth(&self) -> usize {
        self.concepts().into_iter().map(ExtConcept::role_depth).max().unwrap_or(0)
    }
}

impl From<&Axiom> for ExtAxiom {
    fn from(a: &Axiom) -> Self {
        a.map_concepts(|c| ExtConcept::from(c))
    }
}

fn write_list<C: fmt::Display>(f: &mut fmt::Formatter<'_>, head: &str, cs: &[C]) -> fmt::Result {
    write!(f, "{head}(")?;
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

impl<C: fmt::Display> fmt::Display for Axiom<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::SubClassOf(a, b) => write!(f, "SubClassOf({a} {b})"),
            Axiom::EquivalentClasses(cs) => write_list(f, "EquivalentClasses", cs),
            Axiom::DisjointClasses(cs) => write_list(f, "DisjointClasses", cs),
            Axiom::ClassAssertion(c, a) => write!(f, "ClassAssertion({c} {a})"),
            Axiom::RoleAssertion(r, a, b) => write!(f, "ObjectPropertyAssertion({r} {a} {b})"),
        }
    }
}
