//! Graph documents for displaying models.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::reasoner::{Interpretation, Reasoner};
use crate::syntax::{Concept, ConceptName, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: String,
    pub labels: Vec<String>,
    #[serde(rename = "allClasses")]
    pub all_classes: Vec<String>,
    pub marked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: String,
    pub target: String,
    pub role: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl GraphDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph model {\n");
        for n in &self.nodes {
            let label = escape(&n.labels.join("\n"));
            let _ = write!(out, "  {} [label=\"{}\"", n.id, label);
            if n.marked {
                out.push_str(", penwidth=3");
            }
            out.push_str("];\n");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.source, e.target, escape(&e.role));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Orders an element's class names from most to least specific.
///
/// Names outside `sig` are dropped. A name is suppressed when another
/// retained name is strictly more specific. Survivors come first, ordered by
/// how many names of `sig` subsume them (more first) and then by name; the
/// suppressed names follow in the same order.
pub fn select_labels(
    reasoner: &mut Reasoner,
    classes: &[ConceptName],
    sig: &Signature,
    cache: &mut BTreeMap<ConceptName, usize>,
) -> Result<(Vec<ConceptName>, Vec<ConceptName>)> {
    let cand: Vec<&ConceptName> = classes.iter().filter(|c| sig.concepts.contains(*c)).collect();
    let mut subsumers: BTreeMap<&ConceptName, Vec<ConceptName>> = BTreeMap::new();
    for c in &cand {
        let subs = reasoner.named_subsumers(&Concept::Name((*c).clone()))?.unwrap_or_default();
        subsumers.insert(c, subs.into_iter().collect());
    }
    let below = |a: &ConceptName, b: &ConceptName| subsumers[a].contains(b);
    let mut survivors = Vec::new();
    let mut suppressed = Vec::new();
    for a in &cand {
        let dominated = cand.iter().any(|b| b != a && below(b, a) && !below(a, b));
        if dominated {
            suppressed.push((*a).clone());
        } else {
            survivors.push((*a).clone());
        }
    }
    for c in &cand {
        let count = subsumers[c].iter().filter(|s| sig.concepts.contains(*s)).count();
        cache.insert((*c).clone(), count);
    }
    let key = |c: &ConceptName| (std::cmp::Reverse(cache[c]), c.as_str().to_string());
    survivors.sort_by_key(key);
    suppressed.sort_by_key(key);
    Ok((survivors, suppressed))
}

/// Exports `interp` for display: at most `k` labels per node, names and
/// roles restricted to `sig`.
pub fn export_graph(interp: &Interpretation, k: usize, sig: &Signature, reasoner: &mut Reasoner) -> Result<GraphDoc> {
    let mut cache = BTreeMap::new();
    let mut nodes = Vec::with_capacity(interp.len());
    for (i, e) in interp.elements.iter().enumerate() {
        let classes: Vec<ConceptName> = e.classes.iter().cloned().collect();
        let (survivors, suppressed) = select_labels(reasoner, &classes, sig, &mut cache)?;
        let labels = survivors.iter().take(k).map(|c| c.as_str().to_string()).collect();
        let all_classes = survivors.iter().chain(&suppressed).map(|c| c.as_str().to_string()).collect();
        nodes.push(GraphNode { id: format!("e{i}"), labels, all_classes, marked: interp.marked.contains(&i) });
    }
    let edges = interp
        .edges
        .iter()
        .filter(|e| sig.roles.contains(&e.role))
        .map(|e| GraphEdge {
            source: format!("e{}", e.source),
            target: format!("e{}", e.target),
            role: e.role.as_str().to_string(),
        })
        .collect();
    Ok(GraphDoc { nodes, edges })
}
