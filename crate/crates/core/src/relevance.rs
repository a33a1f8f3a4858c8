//! Relevant parts of the canonical model for a non-entailed GCI `C ⊑ D`.
//!
//! * Alpha: the element `d_C` of the canonical model seeded with `C`, with
//!   everything reachable from it.
//! * Beta: Alpha plus everything reachable from `d_D` in the canonical
//!   model seeded with `C` and `D`.
//! * Delta: the part of Beta that supports `C` at `d_C`, plus for every
//!   contrasting condition `E` (`T ⊨ D ⊑ E`, `T ⊭ C ⊑ E`) a path from `d_D`
//!   realizing `E` and the first-role successors of `d_C`.
//! * DeltaBar: as Delta with each condition cut down to its shallowest
//!   non-entailed truncation, and paths cut to match.
//!
//! Elements of the different parts are compared by their origin concept.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::reasoner::{canonical_model_with, Edge, Interpretation, Origin, Reasoner};
use crate::syntax::{signature_of, Axiom, Concept, RoleName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelevanceMode {
    Alpha,
    Beta,
    Delta,
    DeltaBar,
}

impl RelevanceMode {
    pub const ALL: [RelevanceMode; 4] =
        [RelevanceMode::Alpha, RelevanceMode::Beta, RelevanceMode::Delta, RelevanceMode::DeltaBar];

    pub fn as_str(self) -> &'static str {
        match self {
            RelevanceMode::Alpha => "alpha",
            RelevanceMode::Beta => "beta",
            RelevanceMode::Delta => "delta",
            RelevanceMode::DeltaBar => "delta-bar",
        }
    }
}

impl fmt::Display for RelevanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelevanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelevanceMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelevantPart {
    pub interp: Interpretation,
    pub witness: usize,
    pub contrast: Option<usize>,
    pub conditions: Vec<Concept>,
}

fn split_query(query: &Axiom) -> Result<(&Concept, &Concept)> {
    match query {
        Axiom::SubClassOf(c, d) => Ok((c, d)),
        _ => Err(Error::Unsupported("requires a single subclass axiom".into())),
    }
}

fn terminology(tbox: &[Axiom]) -> Result<Vec<&Axiom>> {
    let t: Vec<&Axiom> = tbox.iter().filter(|a| a.is_tbox()).collect();
    if t.iter().any(|a| a.mentions_bottom()) {
        return Err(Error::BottomInTBox);
    }
    Ok(t)
}

/// Chains `∃r1.…∃rk.X` with `X` a name or ⊤, `k` up to `depth`.
fn candidate_pool(tbox: &[&Axiom], c: &Concept, d: &Concept, depth: usize) -> Vec<Concept> {
    let mut sig = signature_of(&[c.clone(), d.clone()][..]);
    for a in tbox {
        sig.extend(&signature_of(*a));
    }
    let roles: Vec<RoleName> = sig.roles.iter().cloned().collect();
    let mut pool: Vec<Concept> = sig.concepts.iter().cloned().map(Concept::Name).collect();
    let mut bodies = pool.clone();
    bodies.push(Concept::Top);
    for _ in 0..depth {
        let next: Vec<Concept> = roles
            .iter()
            .flat_map(|r| bodies.iter().map(move |f| Concept::exists(r.clone(), f.clone())))
            .collect();
        pool.extend(next.iter().cloned());
        bodies = next;
    }
    pool
}

fn max_depth(tbox: &[&Axiom], d: &Concept) -> usize {
    tbox.iter().map(|a| a.role_depth()).chain([d.role_depth()]).max().unwrap_or(0)
}

fn sort_conditions(mut cs: Vec<Concept>) -> Vec<Concept> {
    let mut keyed: Vec<(usize, String, Concept)> = cs.drain(..).map(|c| (c.role_depth(), c.to_string(), c)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|k| k.2).collect()
}

/// Conditions `E` from the candidate pool with `T ⊨ D ⊑ E` and `T ⊭ C ⊑ E`,
/// sorted by role depth and then printed form.
pub fn contrasting_conditions(tbox: &[Axiom], c: &Concept, d: &Concept) -> Result<Vec<Concept>> {
    let t = terminology(tbox)?;
    let mut r = Reasoner::from_axioms(t.iter().copied());
    contrasting_conditions_with(&mut r, &t, c, d)
}

fn contrasting_conditions_with(r: &mut Reasoner, t: &[&Axiom], c: &Concept, d: &Concept) -> Result<Vec<Concept>> {
    if r.subsumes(c, d)? {
        return Err(Error::IsEntailed);
    }
    let mut pool = candidate_pool(t, c, d, max_depth(t, d));
    if !pool.contains(d) {
        pool.push(d.clone());
    }
    let mut pairs = Vec::with_capacity(pool.len() * 2);
    for e in &pool {
        pairs.push((d.clone(), e.clone()));
        pairs.push((c.clone(), e.clone()));
    }
    let verdicts = r.subsumes_all(&pairs)?;
    let kept = pool
        .into_iter()
        .zip(verdicts.chunks(2))
        .filter(|(_, v)| v[0] && !v[1])
        .map(|(e, _)| e)
        .collect();
    Ok(sort_conditions(kept))
}

/// Splits `∃r1.…∃rk.F` into its role prefix and body `F`.
fn chain(e: &Concept) -> (Vec<RoleName>, &Concept) {
    let mut roles = Vec::new();
    let mut cur = e;
    while let Concept::Exists(r, f) = cur {
        roles.push(r.clone());
        cur = f;
    }
    (roles, cur)
}

fn truncations(e: &Concept) -> Vec<Concept> {
    let (roles, _) = chain(e);
    let mut out: Vec<Concept> = (1..roles.len())
        .map(|k| roles[..k].iter().rev().fold(Concept::Top, |f, r| Concept::exists(r.clone(), f)))
        .collect();
    out.push(e.clone());
    out
}

/// The shallowest of `∃r1.⊤, ∃r1.∃r2.⊤, …, E` that `C` is not subsumed by.
pub fn generalize_condition(tbox: &[Axiom], c: &Concept, e: &Concept) -> Result<Concept> {
    let t = terminology(tbox)?;
    let mut r = Reasoner::from_axioms(t.iter().copied());
    generalize_condition_with(&mut r, c, e)
}

fn generalize_condition_with(r: &mut Reasoner, c: &Concept, e: &Concept) -> Result<Concept> {
    let ladder = truncations(e);
    let pairs: Vec<_> = ladder.iter().map(|g| (c.clone(), g.clone())).collect();
    let verdicts = r.subsumes_all(&pairs)?;
    ladder
        .into_iter()
        .zip(verdicts)
        .find(|(_, entailed)| !entailed)
        .map(|(g, _)| g)
        .ok_or(Error::IsEntailed)
}

/// Collects elements and edges showing that `x` satisfies `c`, choosing the
/// lowest-numbered successor at every existential.
fn support(m: &Interpretation, x: usize, c: &Concept, nodes: &mut BTreeSet<usize>, edges: &mut BTreeSet<Edge>) {
    nodes.insert(x);
    match c {
        Concept::And(cs) => cs.iter().for_each(|k| support(m, x, k, nodes, edges)),
        Concept::Exists(r, f) => {
            let edge = m.successors(x).find(|e| e.role == *r && m.is_instance(e.target, f)).cloned();
            if let Some(e) = edge {
                support(m, e.target, f, nodes, edges);
                edges.insert(e);
            }
        }
        _ => {}
    }
}

/// Edges of a path from `x` realizing the chain `e`.
fn chain_path(m: &Interpretation, x: usize, e: &Concept) -> Vec<Edge> {
    let mut path = Vec::new();
    let mut at = x;
    let mut cur = e;
    while let Concept::Exists(r, f) = cur {
        let Some(edge) = m.successors(at).find(|ed| ed.role == *r && m.is_instance(ed.target, f)).cloned() else {
            break;
        };
        at = edge.target;
        cur = f;
        path.push(edge);
    }
    path
}

/// One of the four relevant parts for the non-entailed `query`.
pub fn extract_relevant_part(tbox: &[Axiom], query: &Axiom, mode: RelevanceMode) -> Result<RelevantPart> {
    let t = terminology(tbox)?;
    let mut r = Reasoner::from_axioms(t.iter().copied());
    extract_relevant_part_with(&mut r, &t, query, mode)
}

/// As [`extract_relevant_part`], with a reasoner already loaded with the
/// terminology `t` (which must not mention ⊥).
pub fn extract_relevant_part_with(
    r: &mut Reasoner,
    t: &[&Axiom],
    query: &Axiom,
    mode: RelevanceMode,
) -> Result<RelevantPart> {
    let (c, d) = split_query(query)?;
    if t.iter().any(|a| a.mentions_bottom()) {
        return Err(Error::BottomInTBox);
    }
    if r.subsumes(c, d)? {
        return Err(Error::IsEntailed);
    }
    let origin_c = Origin::Concept(c.clone());
    let origin_d = Origin::Concept(d.clone());

    let m1 = canonical_model_with(r, t, std::slice::from_ref(c))?;
    let alpha: BTreeSet<Origin> = m1.reachable(0).into_iter().map(|i| m1.elements[i].origin.clone()).collect();
    if mode == RelevanceMode::Alpha {
        let mut interp = m1.restrict(&m1.reachable(0), None);
        let witness = interp.find_origin(&origin_c).unwrap_or(0);
        interp.marked = BTreeSet::from([witness]);
        return Ok(RelevantPart { interp, witness, contrast: None, conditions: Vec::new() });
    }

    let m2 = canonical_model_with(r, t, &[c.clone(), d.clone()])?;
    let dd = m2.find_origin(&origin_d).unwrap_or(0);
    let mut keep: BTreeSet<usize> = m2.reachable(dd);
    keep.extend((0..m2.len()).filter(|&i| alpha.contains(&m2.elements[i].origin)));
    let mut beta = m2.restrict(&keep, None);
    let bc = beta.find_origin(&origin_c).unwrap_or(0);
    let bd = beta.find_origin(&origin_d).unwrap_or(0);
    beta.marked = BTreeSet::from([bc]);
    if mode == RelevanceMode::Beta {
        return Ok(RelevantPart { interp: beta, witness: bc, contrast: Some(bd), conditions: Vec::new() });
    }

    let conditions = contrasting_conditions_with(r, t, c, d)?;
    let mut nodes = BTreeSet::from([bc, bd]);
    let mut edges = BTreeSet::new();
    support(&beta, bc, c, &mut nodes, &mut edges);
    let mut shown = Vec::new();
    for e in &conditions {
        let path = chain_path(&beta, bd, e);
        let (shown_condition, cut) = if mode == RelevanceMode::DeltaBar {
            let g = generalize_condition_with(r, c, e)?;
            let k = chain(&g).0.len();
            (g, k)
        } else {
            (e.clone(), path.len())
        };
        for edge in path.into_iter().take(cut) {
            nodes.insert(edge.target);
            edges.insert(edge);
        }
        if let Some(first) = chain(e).0.first() {
            for edge in beta.successors(bc).filter(|ed| ed.role == *first) {
                nodes.insert(edge.target);
                edges.insert(edge.clone());
            }
        }
        if !shown.contains(&shown_condition) {
            shown.push(shown_condition);
        }
    }
    let mut interp = beta.restrict(&nodes, Some(&edges));
    let witness = interp.find_origin(&origin_c).unwrap_or(0);
    let contrast = interp.find_origin(&origin_d);
    interp.marked = BTreeSet::from([witness]);
    Ok(RelevantPart { interp, witness, contrast, conditions: shown })
}
