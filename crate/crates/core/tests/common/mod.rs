//! Shared test support: a random ontology family and an independent
//! brute-force decision procedure over small finite domains.
#![allow(dead_code)]

use missing_why::syntax::{
    signature_of, Axiom, Concept, ConceptName, ExtAxiom, ExtConcept, IndividualName, Ontology, Role, RoleName, Signature,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const NAMES: [&str; 4] = ["A", "B", "C", "D"];
pub const ROLES: [&str; 2] = ["r", "s"];
pub const INDIVIDUALS: [&str; 2] = ["a", "b"];

pub fn name(rng: &mut StdRng) -> Concept {
    Concept::name(*NAMES.choose(rng).unwrap())
}

fn role(rng: &mut StdRng) -> RoleName {
    RoleName::new(*ROLES.choose(rng).unwrap())
}

/// Role-free concept: a name, ⊤, or a conjunction of two names.
fn flat(rng: &mut StdRng) -> Concept {
    match rng.gen_range(0..6) {
        0 => Concept::Top,
        1 | 2 => Concept::and([name(rng), name(rng)]),
        _ => name(rng),
    }
}

/// Concept of role depth at most `depth`.
pub fn concept(rng: &mut StdRng, depth: usize) -> Concept {
    let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..6) };
    match choice {
        0 | 1 => name(rng),
        2 => flat(rng),
        3 | 4 => Concept::exists(role(rng), concept(rng, depth - 1)),
        _ => Concept::and([concept(rng, depth), name(rng)]),
    }
}

fn inclusion_rhs(rng: &mut StdRng, depth: usize) -> Concept {
    if rng.gen_bool(0.08) {
        Concept::Bottom
    } else {
        concept(rng, depth)
    }
}

/// TBox axiom over concepts of role depth at most `depth`.
pub fn tbox_axiom(rng: &mut StdRng, depth: usize) -> Axiom {
    match rng.gen_range(0..10) {
        0 => Axiom::DisjointClasses(vec![name(rng), concept(rng, depth)]),
        1 => Axiom::EquivalentClasses(vec![name(rng), concept(rng, depth)]),
        _ => Axiom::SubClassOf(concept(rng, depth), inclusion_rhs(rng, depth)),
    }
}

pub fn individual(rng: &mut StdRng) -> IndividualName {
    IndividualName::new(*INDIVIDUALS.choose(rng).unwrap())
}

/// Up to `max_axioms` TBox axioms plus a few assertions when `abox` is set.
pub fn random_ontology(rng: &mut StdRng, max_axioms: usize, depth: usize, abox: bool) -> Ontology {
    let n = rng.gen_range(1..=max_axioms);
    let mut o = Ontology::new();
    for _ in 0..n {
        if abox && rng.gen_bool(0.25) {
            if rng.gen_bool(0.6) {
                o.add(Axiom::ClassAssertion(concept(rng, depth), individual(rng)));
            } else {
                o.add(Axiom::RoleAssertion(role(rng), individual(rng), individual(rng)));
            }
        } else {
            o.add(tbox_axiom(rng, depth));
        }
    }
    o
}

pub fn random_gci(rng: &mut StdRng, depth: usize) -> Axiom {
    Axiom::SubClassOf(concept(rng, depth), concept(rng, depth))
}

pub fn random_name_gci(rng: &mut StdRng) -> (Concept, Concept) {
    (name(rng), name(rng))
}

// ---------------------------------------------------------------------------
// Brute-force semantics over a three-element domain.
//
// Duplicating an element together with its outgoing edges preserves the
// truth of EL⊥ concepts, so every model with at most three elements has a
// three-element counterpart and enumerating size three covers sizes 1-3.
// For concepts of role depth ≤ 1 the truth of a concept at an element only
// depends on the labels of all elements and on that element's own outgoing
// edges, so for a fixed labeling each element's edge set can be chosen
// independently.

const N: usize = 3;

#[derive(Clone)]
enum Flat {
    Top,
    Bottom,
    Name(usize),
    And(Vec<Flat>),
}

impl Flat {
    fn eval(&self, label: u32) -> bool {
        match self {
            Flat::Top => true,
            Flat::Bottom => false,
            Flat::Name(i) => label & (1 << i) != 0,
            Flat::And(cs) => cs.iter().all(|c| c.eval(label)),
        }
    }
}

#[derive(Clone)]
enum Ev {
    Flat(Flat),
    And(Vec<Ev>),
    /// role index, filler index into the filler table
    Exists(usize, usize),
}

struct Compiler {
    names: Vec<ConceptName>,
    roles: Vec<RoleName>,
    fillers: Vec<Flat>,
}

impl Compiler {
    fn name(&mut self, n: &ConceptName) -> usize {
        if let Some(i) = self.names.iter().position(|m| m == n) {
            return i;
        }
        self.names.push(n.clone());
        self.names.len() - 1
    }

    fn role(&mut self, r: &RoleName) -> usize {
        if let Some(i) = self.roles.iter().position(|m| m == r) {
            return i;
        }
        self.roles.push(r.clone());
        self.roles.len() - 1
    }

    fn flat(&mut self, c: &Concept) -> Flat {
        match c {
            Concept::Top => Flat::Top,
            Concept::Bottom => Flat::Bottom,
            Concept::Name(n) => Flat::Name(self.name(n)),
            Concept::And(cs) => Flat::And(cs.iter().map(|k| self.flat(k)).collect()),
            Concept::Exists(..) => panic!("brute force supports role depth <= 1 only"),
        }
    }

    fn compile(&mut self, c: &Concept) -> Ev {
        match c {
            Concept::And(cs) => Ev::And(cs.iter().map(|k| self.compile(k)).collect()),
            Concept::Exists(r, f) => {
                let r = self.role(r);
                let f = self.flat(f);
                self.fillers.push(f);
                Ev::Exists(r, self.fillers.len() - 1)
            }
            other => Ev::Flat(self.flat(other)),
        }
    }
}

/// Per-labeling context: for every (role, filler) the bitmask of edge bits
/// that would witness it.
struct Ctx {
    witness: Vec<Vec<u32>>,
}

impl Ev {
    fn eval(&self, label: u32, out: u32, ctx: &Ctx, roles: usize) -> bool {
        match self {
            Ev::Flat(f) => f.eval(label),
            Ev::And(cs) => cs.iter().all(|c| c.eval(label, out, ctx, roles)),
            Ev::Exists(r, f) => out & ctx.witness[*f][*r] != 0,
        }
    }
}

fn edge_bit(role: usize, target: usize) -> u32 {
    1 << (role * N + target)
}

pub enum Query {
    Gci(Concept, Concept),
    Instance(Concept, IndividualName),
}

/// Decides consistency of `o` and entailment of every query by exhaustive
/// search for models of size at most three. Concepts must have role depth
/// at most one.
pub fn brute_force(o: &Ontology, queries: &[Query]) -> (bool, Vec<bool>) {
    let mut comp = Compiler { names: Vec::new(), roles: Vec::new(), fillers: Vec::new() };
    let mut incl = Vec::new();
    let mut class_asserts = Vec::new();
    let mut role_asserts = Vec::new();
    let mut inds: Vec<IndividualName> = Vec::new();
    let ind_idx = |a: &IndividualName, inds: &mut Vec<IndividualName>| {
        if let Some(i) = inds.iter().position(|b| b == a) {
            i
        } else {
            inds.push(a.clone());
            inds.len() - 1
        }
    };
    for ax in o.axioms() {
        match ax {
            Axiom::ClassAssertion(c, a) => {
                let i = ind_idx(a, &mut inds);
                class_asserts.push((comp.compile(c), i));
            }
            Axiom::RoleAssertion(r, a, b) => {
                let (i, j) = (ind_idx(a, &mut inds), ind_idx(b, &mut inds));
                role_asserts.push((comp.role(r), i, j));
            }
            _ => {
                for (c, d) in ax.as_inclusions() {
                    incl.push((comp.compile(&c), comp.compile(&d)));
                }
            }
        }
    }
    let compiled: Vec<(Ev, Ev, Option<usize>)> = queries
        .iter()
        .map(|q| match q {
            Query::Gci(c, d) => (comp.compile(c), comp.compile(d), None),
            Query::Instance(c, a) => {
                let i = ind_idx(a, &mut inds);
                (Ev::Flat(Flat::Top), comp.compile(c), Some(i))
            }
        })
        .collect();

    let k = comp.names.len();
    let roles = comp.roles.len().max(1);
    let masks = 1u32 << (roles * N);
    let mut consistent = false;
    let mut refuted = vec![false; queries.len()];

    let labels_count = 1u32 << k;
    let ind_maps = N.pow(inds.len() as u32);
    for l0 in 0..labels_count {
        for l1 in l0..labels_count {
            for l2 in l1..labels_count {
                let labels = [l0, l1, l2];
                let ctx = Ctx {
                    witness: comp
                        .fillers
                        .iter()
                        .map(|f| {
                            (0..roles)
                                .map(|r| {
                                    (0..N)
                                        .filter(|&t| f.eval(labels[t]))
                                        .fold(0, |m, t| m | edge_bit(r, t))
                                })
                                .collect()
                        })
                        .collect(),
                };
                // valid[d] = edge masks satisfying the TBox at d
                let valid: Vec<Vec<u32>> = (0..N)
                    .map(|d| {
                        (0..masks)
                            .filter(|&m| {
                                incl.iter().all(|(c, e)| {
                                    !c.eval(labels[d], m, &ctx, roles) || e.eval(labels[d], m, &ctx, roles)
                                })
                            })
                            .collect()
                    })
                    .collect();
                for map in 0..ind_maps {
                    let place: Vec<usize> = (0..inds.len()).map(|i| (map / N.pow(i as u32)) % N).collect();
                    let mut required = [0u32; N];
                    for &(r, i, j) in &role_asserts {
                        required[place[i]] |= edge_bit(r, place[j]);
                    }
                    let ok = |d: usize, m: u32| -> bool {
                        m & required[d] == required[d]
                            && class_asserts
                                .iter()
                                .all(|(c, i)| place[*i] != d || c.eval(labels[d], m, &ctx, roles))
                    };
                    let per: Vec<Vec<u32>> =
                        (0..N).map(|d| valid[d].iter().copied().filter(|&m| ok(d, m)).collect()).collect();
                    if per.iter().any(Vec::is_empty) {
                        continue;
                    }
                    consistent = true;
                    for (q, (c, e, at)) in compiled.iter().enumerate() {
                        if refuted[q] {
                            continue;
                        }
                        let elems: Vec<usize> = match at {
                            Some(i) => vec![place[*i]],
                            None => (0..N).collect(),
                        };
                        refuted[q] = elems.iter().any(|&d| {
                            per[d].iter().any(|&m| {
                                c.eval(labels[d], m, &ctx, roles) && !e.eval(labels[d], m, &ctx, roles)
                            })
                        });
                    }
                }
            }
        }
    }
    let entailed = refuted.iter().map(|r| !consistent || !r).collect();
    (consistent, entailed)
}

/// Random ⊥-free TBox (no disjointness, no owl:Nothing).
pub fn random_el_tbox(rng: &mut StdRng, max_axioms: usize, depth: usize) -> Vec<Axiom> {
    let n = rng.gen_range(1..=max_axioms);
    let mut out = Vec::new();
    while out.len() < n {
        let a = tbox_axiom(rng, depth);
        if !a.mentions_bottom() {
            out.push(a);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Random syntax trees for print/parse round trips.

const WIDE_NAMES: [&str; 6] = ["A", "B", "Pizza_1", "hasPart", "x-y", "Z9"];

fn wide_name(rng: &mut StdRng) -> ConceptName {
    ConceptName::new(*WIDE_NAMES.choose(rng).unwrap())
}

fn wide_role(rng: &mut StdRng) -> RoleName {
    RoleName::new(*["r", "hasTopping", "s_2"].choose(rng).unwrap())
}

fn wide_individual(rng: &mut StdRng) -> IndividualName {
    IndividualName::new(*["a", "p1", "tonights-pizza"].choose(rng).unwrap())
}

/// Any core concept, built through the canonical constructors.
pub fn any_concept(rng: &mut StdRng, depth: usize) -> Concept {
    let top = if depth == 0 { 3 } else { 6 };
    match rng.gen_range(0..top) {
        0 => Concept::Top,
        1 => Concept::Bottom,
        2 => Concept::Name(wide_name(rng)),
        3 | 4 => Concept::exists(wide_role(rng), any_concept(rng, depth - 1)),
        _ => {
            let n = rng.gen_range(2..4);
            Concept::and((0..n).map(|_| any_concept(rng, depth - 1)))
        }
    }
}

pub fn any_axiom(rng: &mut StdRng) -> Axiom {
    let d = rng.gen_range(0..4);
    match rng.gen_range(0..5) {
        0 => Axiom::SubClassOf(any_concept(rng, d), any_concept(rng, d)),
        1 => Axiom::EquivalentClasses((0..rng.gen_range(2..4)).map(|_| any_concept(rng, d)).collect()),
        2 => Axiom::DisjointClasses((0..rng.gen_range(2..4)).map(|_| any_concept(rng, d)).collect()),
        3 => Axiom::ClassAssertion(any_concept(rng, d), wide_individual(rng)),
        _ => Axiom::RoleAssertion(wide_role(rng), wide_individual(rng), wide_individual(rng)),
    }
}

/// Any extended concept whose variables are all bound by an enclosing Mu.
pub fn any_ext_concept(rng: &mut StdRng, depth: usize, bound: &mut Vec<String>) -> ExtConcept {
    let choice = if depth == 0 { rng.gen_range(0..5) } else { rng.gen_range(0..10) };
    match choice {
        0 => ExtConcept::Top,
        1 => ExtConcept::Name(wide_name(rng)),
        2 => ExtConcept::Nominal(wide_individual(rng)),
        3 => match bound.choose(rng) {
            Some(v) => ExtConcept::Var(v.clone()),
            None => ExtConcept::Bottom,
        },
        4 => ExtConcept::Bottom,
        5 | 6 => {
            let role = if rng.gen_bool(0.3) { Role::Inverse(wide_role(rng)) } else { Role::Named(wide_role(rng)) };
            ExtConcept::exists(role, any_ext_concept(rng, depth - 1, bound))
        }
        7 => {
            let n = rng.gen_range(2..4);
            ExtConcept::and((0..n).map(|_| any_ext_concept(rng, depth - 1, bound)).collect::<Vec<_>>())
        }
        8 => {
            let n = rng.gen_range(2..4);
            ExtConcept::or((0..n).map(|_| any_ext_concept(rng, depth - 1, bound)).collect::<Vec<_>>())
        }
        _ => {
            let v = format!("?X{}", bound.len());
            bound.push(v.clone());
            let body = any_ext_concept(rng, depth - 1, bound);
            bound.pop();
            ExtConcept::mu(v, body)
        }
    }
}

pub fn any_ext_axiom(rng: &mut StdRng) -> ExtAxiom {
    let d = rng.gen_range(0..4);
    let mut b = Vec::new();
    if rng.gen_bool(0.3) {
        ExtAxiom::ClassAssertion(any_ext_concept(rng, d, &mut b), wide_individual(rng))
    } else {
        ExtAxiom::SubClassOf(any_ext_concept(rng, d, &mut b), any_ext_concept(rng, d, &mut b))
    }
}

// ---------------------------------------------------------------------------
// Abduction inputs.

/// Up to three symbols, drawn first from the query's own vocabulary.
pub fn random_signature(rng: &mut StdRng, p: &Axiom) -> Signature {
    let mut s = Signature::new();
    let size = rng.gen_range(1..=3);
    let own = signature_of(p);
    let mut names: Vec<_> = own.concepts.into_iter().collect();
    names.shuffle(rng);
    for n in names.into_iter().take(size - 1) {
        s.concepts.insert(n);
    }
    while s.concepts.len() + s.roles.len() + s.individuals.len() < size {
        match rng.gen_range(0..5) {
            0 => {
                s.roles.insert(RoleName::new(*ROLES.choose(rng).unwrap()));
            }
            1 => {
                s.individuals.insert(IndividualName::new(*INDIVIDUALS.choose(rng).unwrap()));
            }
            _ => {
                s.concepts.insert(ConceptName::new(*NAMES.choose(rng).unwrap()));
            }
        }
    }
    s
}

/// All axioms `A ⊑ F` and `F(a)` over `sig`, built independently of the
/// library's enumeration.
pub fn all_candidates(sig: &Signature, depth: usize) -> Vec<Axiom> {
    let names: Vec<Concept> = sig.concepts.iter().map(|n| Concept::Name(n.clone())).collect();
    let mut rhs = names.clone();
    if depth >= 1 {
        for r in &sig.roles {
            for f in names.iter().chain([&Concept::Top]) {
                rhs.push(Concept::exists(r.clone(), f.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for a in &names {
        for f in &rhs {
            if a != f {
                out.push(Axiom::SubClassOf(a.clone(), f.clone()));
            }
        }
    }
    for i in &sig.individuals {
        for f in &rhs {
            out.push(Axiom::ClassAssertion(f.clone(), i.clone()));
        }
    }
    out
}
