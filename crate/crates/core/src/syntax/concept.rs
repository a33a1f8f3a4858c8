use std::fmt;

use super::names::{ConceptName, RoleName, BOTTOM_TOKEN, TOP_TOKEN};

/// An EL⊥ concept.
///
/// Values built through [`Concept::and`] are canonical: conjunctions are
/// flattened, deduplicated and sorted by their printed form, so structural
/// equality coincides with equality of conjunct sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Bottom,
    Name(ConceptName),
    And(Vec<Concept>),
    Exists(RoleName, Box<Concept>),
}

impl Concept {
    pub fn name(name: impl Into<ConceptName>) -> Self {
        Concept::Name(name.into())
    }

    pub fn exists(role: impl Into<RoleName>, filler: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(filler))
    }

    /// Canonical conjunction. Returns ⊤ for no operands and the operand
    /// itself when only one distinct operand remains.
    pub fn and(operands: impl IntoIterator<Item = Concept>) -> Self {
        let mut flat = Vec::new();
        for c in operands {
            match c {
                Concept::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        let mut keyed: Vec<(String, Concept)> =
            flat.into_iter().map(|c| (c.to_string(), c)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        match keyed.len() {
            0 => Concept::Top,
            1 => keyed.pop().map(|(_, c)| c).unwrap_or(Concept::Top),
            _ => Concept::And(keyed.into_iter().map(|(_, c)| c).collect()),
        }
    }

    /// The conjuncts of a conjunction, or the concept itself otherwise.
    pub fn conjuncts(&self) -> &[Concept] {
        match self {
            Concept::And(cs) => cs,
            other => std::slice::from_ref(other),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Concept::Top | Concept::Bottom | Concept::Name(_))
    }

    pub fn role_depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Name(_) => 0,
            Concept::And(cs) => cs.iter().map(Concept::role_depth).max().unwrap_or(0),
            Concept::Exists(_, f) => 1 + f.role_depth(),
        }
    }

    pub fn mentions_bottom(&self) -> bool {
        match self {
            Concept::Bottom => true,
            Concept::Top | Concept::Name(_) => false,
            Concept::And(cs) => cs.iter().any(Concept::mentions_bottom),
            Concept::Exists(_, f) => f.mentions_bottom(),
        }
    }

    /// All subconcepts including the concept itself, in pre-order.
    pub fn subconcepts(&self) -> Vec<&Concept> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(c) = stack.pop() {
            out.push(c);
            match c {
                Concept::And(cs) => stack.extend(cs.iter().rev()),
                Concept::Exists(_, f) => stack.push(f),
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str(TOP_TOKEN),
            Concept::Bottom => f.write_str(BOTTOM_TOKEN),
            Concept::Name(n) => write!(f, "{n}"),
            Concept::And(cs) => {
                f.write_str("ObjectIntersectionOf(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            Concept::Exists(r, c) => write!(f, "ObjectSomeValuesFrom({r} {c})"),
        }
    }
}

impl From<ConceptName> for Concept {
    fn from(n: ConceptName) -> Self {
        Concept::Name(n)
    }
}
