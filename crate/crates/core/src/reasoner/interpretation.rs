use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::syntax::{Axiom, Concept, ConceptName, IndividualName, RoleName};

/// Where an element came from: a tableau individual or the concept a
/// canonical-model element represents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Individual(IndividualName),
    Concept(Concept),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub classes: BTreeSet<ConceptName>,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub role: RoleName,
    pub target: usize,
}

/// A finite interpretation. Element ids are indexes into `elements`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub elements: Vec<Element>,
    pub edges: BTreeSet<Edge>,
    pub marked: BTreeSet<usize>,
}

impl Interpretation {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn add_element(&mut self, origin: Origin, classes: BTreeSet<ConceptName>) -> usize {
        self.elements.push(Element { classes, origin });
        self.elements.len() - 1
    }

    pub fn add_edge(&mut self, source: usize, role: RoleName, target: usize) {
        self.edges.insert(Edge { source, role, target });
    }

    pub fn find_origin(&self, origin: &Origin) -> Option<usize> {
        self.elements.iter().position(|e| e.origin == *origin)
    }

    pub fn successors(&self, d: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.source == d)
    }

    /// Elements reachable from `start` along edges, `start` included.
    pub fn reachable(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(d) = stack.pop() {
            for e in self.successors(d) {
                if seen.insert(e.target) {
                    stack.push(e.target);
                }
            }
        }
        seen
    }

    /// Subinterpretation on `keep` (renumbered in ascending order of the
    /// old ids) containing only the given edges between kept elements.
    pub fn restrict(&self, keep: &BTreeSet<usize>, edges: Option<&BTreeSet<Edge>>) -> Interpretation {
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let mut out = Interpretation {
            elements: keep.iter().map(|&d| self.elements[d].clone()).collect(),
            ..Default::default()
        };
        for e in edges.unwrap_or(&self.edges) {
            if let (Some(&s), Some(&t)) = (map.get(&e.source), map.get(&e.target)) {
                out.add_edge(s, e.role.clone(), t);
            }
        }
        out.marked = self.marked.iter().filter_map(|d| map.get(d).copied()).collect();
        out
    }

    /// Extension of `c`.
    pub fn extension(&self, c: &Concept) -> BTreeSet<usize> {
        match c {
            Concept::Top => (0..self.len()).collect(),
            Concept::Bottom => BTreeSet::new(),
            Concept::Name(n) => (0..self.len()).filter(|&d| self.elements[d].classes.contains(n)).collect(),
            Concept::And(cs) => {
                let mut it = cs.iter().map(|k| self.extension(k));
                let first = it.next().unwrap_or_else(|| (0..self.len()).collect());
                it.fold(first, |acc, s| acc.intersection(&s).copied().collect())
            }
            Concept::Exists(r, f) => {
                let fe = self.extension(f);
                self.edges
                    .iter()
                    .filter(|e| e.role == *r && fe.contains(&e.target))
                    .map(|e| e.source)
                    .collect()
            }
        }
    }

    pub fn is_instance(&self, d: usize, c: &Concept) -> bool {
        match c {
            Concept::Top => true,
            Concept::Bottom => false,
            Concept::Name(n) => self.elements[d].classes.contains(n),
            Concept::And(cs) => cs.iter().all(|k| self.is_instance(d, k)),
            Concept::Exists(r, f) => self
                .successors(d)
                .any(|e| e.role == *r && self.is_instance(e.target, f)),
        }
    }

    fn individual(&self, a: &IndividualName) -> Result<usize> {
        self.find_origin(&Origin::Individual(a.clone()))
            .ok_or_else(|| Error::UnknownIndividual(a.to_string()))
    }

    pub fn satisfies(&self, axiom: &Axiom) -> Result<bool> {
        Ok(match axiom {
            Axiom::ClassAssertion(c, a) => self.is_instance(self.individual(a)?, c),
            Axiom::RoleAssertion(r, a, b) => {
                let (s, t) = (self.individual(a)?, self.individual(b)?);
                self.edges.contains(&Edge { source: s, role: r.clone(), target: t })
            }
            _ => axiom
                .as_inclusions()
                .iter()
                .all(|(c, d)| (0..self.len()).all(|x| !self.is_instance(x, c) || self.is_instance(x, d))),
        })
    }
}
