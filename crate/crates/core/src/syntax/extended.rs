//! The richer concept language hypotheses may use: disjunction, nominals,
//! inverse roles and least fixpoints.

use std::fmt;

use super::concept::Concept;
use super::names::{ConceptName, IndividualName, RoleName, BOTTOM_TOKEN, TOP_TOKEN};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Named(RoleName),
    Inverse(RoleName),
}

impl Role {
    pub fn name(&self) -> &RoleName {
        match self {
            Role::Named(r) | Role::Inverse(r) => r,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Named(r) => write!(f, "{r}"),
            Role::Inverse(r) => write!(f, "ObjectInverseOf({r})"),
        }
    }
}

/// Fixpoint variables are written with a leading `?`, e.g. `?X`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtConcept {
    Top,
    Bottom,
    Name(ConceptName),
    And(Vec<ExtConcept>),
    Or(Vec<ExtConcept>),
    Nominal(IndividualName),
    Exists(Role, Box<ExtConcept>),
    Var(String),
    Mu(String, Box<ExtConcept>),
}

fn canonical_list(
    operands: impl IntoIterator<Item = ExtConcept>,
    split: impl Fn(ExtConcept) -> Result<Vec<ExtConcept>, ExtConcept>,
) -> Vec<ExtConcept> {
    let mut flat = Vec::new();
    for c in operands {
        match split(c) {
            Ok(inner) => flat.extend(inner),
            Err(other) => flat.push(other),
        }
    }
    let mut keyed: Vec<(String, ExtConcept)> =
        flat.into_iter().map(|c| (c.to_string(), c)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, c)| c).collect()
}

impl ExtConcept {
    pub fn name(n: impl Into<ConceptName>) -> Self {
        ExtConcept::Name(n.into())
    }

    pub fn exists(role: Role, filler: ExtConcept) -> Self {
        ExtConcept::Exists(role, Box::new(filler))
    }

    pub fn mu(var: impl Into<String>, body: ExtConcept) -> Self {
        ExtConcept::Mu(var.into(), Box::new(body))
    }

    /// Canonical conjunction (flattened, deduplicated, sorted).
    pub fn and(operands: impl IntoIterator<Item = ExtConcept>) -> Self {
        let mut list = canonical_list(operands, |c| match c {
            ExtConcept::And(cs) => Ok(cs),
            other => Err(other),
        });
        match list.len() {
            0 => ExtConcept::Top,
            1 => list.pop().unwrap_or(ExtConcept::Top),
            _ => ExtConcept::And(list),
        }
    }

    /// Canonical disjunction (flattened, deduplicated, sorted).
    pub fn or(operands: impl IntoIterator<Item = ExtConcept>) -> Self {
        let mut list = canonical_list(operands, |c| match c {
            ExtConcept::Or(cs) => Ok(cs),
            other => Err(other),
        });
        match list.len() {
            0 => ExtConcept::Bottom,
            1 => list.pop().unwrap_or(ExtConcept::Bottom),
            _ => ExtConcept::Or(list),
        }
    }

    /// Converts back into the core language, if no extended construct occurs.
    pub fn to_core(&self) -> Option<Concept> {
        Some(match self {
            ExtConcept::Top => Concept::Top,
            ExtConcept::Bottom => Concept::Bottom,
            ExtConcept::Name(n) => Concept::Name(n.clone()),
            ExtConcept::And(cs) => {
                Concept::and(cs.iter().map(ExtConcept::to_core).collect::<Option<Vec<_>>>()?)
            }
            ExtConcept::Exists(Role::Named(r), f) => Concept::Exists(r.clone(), Box::new(f.to_core()?)),
            ExtConcept::Exists(Role::Inverse(_), _)
            | ExtConcept::Or(_)
            | ExtConcept::Nominal(_)
            | ExtConcept::Var(_)
            | ExtConcept::Mu(..) => return None,
        })
    }

    /// Name of the first construct outside EL⊥, for error messages.
    pub fn first_extended_construct(&self) -> Option<&'static str> {
        match self {
            ExtConcept::Top | ExtConcept::Bottom | ExtConcept::Name(_) => None,
            ExtConcept::And(cs) => cs.iter().find_map(ExtConcept::first_extended_construct),
            ExtConcept::Or(_) => Some("ObjectUnionOf"),
            ExtConcept::Nominal(_) => Some("ObjectOneOf"),
            ExtConcept::Exists(Role::Inverse(_), _) => Some("ObjectInverseOf"),
            ExtConcept::Exists(Role::Named(_), f) => f.first_extended_construct(),
            ExtConcept::Var(_) => Some("fixpoint variable"),
            ExtConcept::Mu(..) => Some("Mu"),
        }
    }

    pub fn role_depth(&self) -> usize {
        match self {
            ExtConcept::Top
            | ExtConcept::Bottom
            | ExtConcept::Name(_)
            | ExtConcept::Nominal(_)
            | ExtConcept::Var(_) => 0,
            ExtConcept::And(cs) | ExtConcept::Or(cs) => {
                cs.iter().map(ExtConcept::role_depth).max().unwrap_or(0)
            }
            ExtConcept::Exists(_, f) => 1 + f.role_depth(),
            ExtConcept::Mu(_, body) => body.role_depth(),
        }
    }

    pub fn contains_mu(&self) -> bool {
        match self {
            ExtConcept::Mu(..) => true,
            ExtConcept::And(cs) | ExtConcept::Or(cs) => cs.iter().any(ExtConcept::contains_mu),
            ExtConcept::Exists(_, f) => f.contains_mu(),
            _ => false,
        }
    }

    pub fn mentions_var(&self, var: &str) -> bool {
        match self {
            ExtConcept::Var(v) => v == var,
            ExtConcept::Mu(v, body) => v != var && body.mentions_var(var),
            ExtConcept::And(cs) | ExtConcept::Or(cs) => cs.iter().any(|c| c.mentions_var(var)),
            ExtConcept::Exists(_, f) => f.mentions_var(var),
            _ => false,
        }
    }

    /// Replaces free occurrences of `var` by `with`, rebuilding canonical
    /// conjunctions and disjunctions on the way up.
    pub fn substitute(&self, var: &str, with: &ExtConcept) -> ExtConcept {
        match self {
            ExtConcept::Var(v) if v == var => with.clone(),
            ExtConcept::Mu(v, _) if v == var => self.clone(),
            ExtConcept::Mu(v, body) => ExtConcept::mu(v.clone(), body.substitute(var, with)),
            ExtConcept::And(cs) => ExtConcept::and(cs.iter().map(|c| c.substitute(var, with))),
            ExtConcept::Or(cs) => ExtConcept::or(cs.iter().map(|c| c.substitute(var, with))),
            ExtConcept::Exists(r, f) => ExtConcept::exists(r.clone(), f.substitute(var, with)),
            other => other.clone(),
        }
    }
}

impl From<&Concept> for ExtConcept {
    fn from(c: &Concept) -> Self {
        match c {
            Concept::Top => ExtConcept::Top,
            Concept::Bottom => ExtConcept::Bottom,
            Concept::Name(n) => ExtConcept::Name(n.clone()),
            Concept::And(cs) => ExtConcept::And(cs.iter().map(ExtConcept::from).collect()),
            Concept::Exists(r, f) => {
                ExtConcept::Exists(Role::Named(r.clone()), Box::new(ExtConcept::from(f.as_ref())))
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, head: &str, items: &[ExtConcept]) -> fmt::Result {
    f.write_str(head)?;
    f.write_str("(")?;
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

impl fmt::Display for ExtConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtConcept::Top => f.write_str(TOP_TOKEN),
            ExtConcept::Bottom => f.write_str(BOTTOM_TOKEN),
            ExtConcept::Name(n) => write!(f, "{n}"),
            ExtConcept::And(cs) => write_list(f, "ObjectIntersectionOf", cs),
            ExtConcept::Or(cs) => write_list(f, "ObjectUnionOf", cs),
            ExtConcept::Nominal(a) => write!(f, "ObjectOneOf({a})"),
            ExtConcept::Exists(r, c) => write!(f, "ObjectSomeValuesFrom({r} {c})"),
            ExtConcept::Var(v) => f.write_str(v),
            ExtConcept::Mu(v, body) => write!(f, "Mu({v} {body})"),
        }
    }
}
