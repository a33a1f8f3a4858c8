use std::fmt;

use super::axiom::Axiom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxiomId(pub u64);

/// TBox and ABox axioms in insertion order, each with a stable id.
///
/// Serialization prints axioms in id order, so appending and later removing
/// axioms restores the original document exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    axioms: Vec<(AxiomId, Axiom)>,
    next_id: u64,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_axioms(axioms: impl IntoIterator<Item = Axiom>) -> Self {
        let mut o = Ontology::new();
        for a in axioms {
            o.add(a);
        }
        o
    }

    pub fn add(&mut self, axiom: Axiom) -> AxiomId {
        let id = AxiomId(self.next_id);
        self.next_id += 1;
        self.axioms.push((id, axiom));
        id
    }

    pub fn remove(&mut self, id: AxiomId) -> Option<Axiom> {
        let pos = self.axioms.iter().position(|(i, _)| *i == id)?;
        Some(self.axioms.remove(pos).1)
    }

    pub fn get(&self, id: AxiomId) -> Option<&Axiom> {
        self.axioms.iter().find(|(i, _)| *i == id).map(|(_, a)| a)
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (AxiomId, &Axiom)> {
        self.axioms.iter().map(|(i, a)| (*i, a))
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().map(|(_, a)| a)
    }

    pub fn tbox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms().filter(|a| a.is_tbox())
    }

    pub fn abox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms().filter(|a| !a.is_tbox())
    }

    /// Copy containing only the terminological axioms (ids preserved).
    pub fn tbox_only(&self) -> Ontology {
        Ontology {
            axioms: self.axioms.iter().filter(|(_, a)| a.is_tbox()).cloned().collect(),
            next_id: self.next_id,
        }
    }

    /// Canonical document: one axiom per line, LF terminated.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (_, a) in &self.axioms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}
