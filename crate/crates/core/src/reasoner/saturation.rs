//! Completion-rule closure over integer concept and role ids.

use std::cell::Cell;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::cancel::CancelToken;
use crate::error::Result;

pub(crate) type Cid = u32;
pub(crate) type Rid = u32;

pub(crate) const TOP: Cid = 0;
pub(crate) const BOTTOM: Cid = 1;

thread_local! {
    static SATURATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Number of saturation runs started on the current thread. Used to assert
/// that purely syntactic checks never reach the reasoner.
pub fn saturation_count() -> u64 {
    SATURATIONS.with(Cell::get)
}

#[derive(Debug, Clone, Default)]
pub(crate) struct BitSet(Vec<u64>);

impl BitSet {
    pub(crate) fn insert(&mut self, i: Cid) -> bool {
        let (w, b) = (i as usize / 64, i % 64);
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    pub(crate) fn contains(&self, i: Cid) -> bool {
        let (w, b) = (i as usize / 64, i % 64);
        self.0.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = Cid> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &x)| {
            (0..64).filter(move |b| x & (1u64 << b) != 0).map(move |b| (w * 64 + b) as Cid)
        })
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Sub(Cid, Cid),
    Link(Cid, Rid, Cid),
}

/// Normal axiom over ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum IdAxiom {
    Sub(Cid, Cid),
    Conj(Cid, Cid, Cid),
    Exists(Cid, Rid, Cid),
    ExistsLhs(Rid, Cid, Cid),
}

/// Closure state. Every registered concept is active: its subsumer set
/// starts as {itself, ⊤} and grows under the rules
///
/// * `A ∈ S(X), A ⊑ B` ⟹ `B ∈ S(X)`
/// * `A1, A2 ∈ S(X), A1 ⊓ A2 ⊑ B` ⟹ `B ∈ S(X)`
/// * `A ∈ S(X), A ⊑ ∃r.B` ⟹ link `X -r-> B`
/// * link `X -r-> Y`, `A ∈ S(Y)`, `∃r.A ⊑ B` ⟹ `B ∈ S(X)`
/// * link `X -r-> Y`, `⊥ ∈ S(Y)` ⟹ `⊥ ∈ S(X)`
///
/// Axioms may be added after a run; the affected rule instances are queued
/// and the next run continues from the current closure.
#[derive(Debug, Clone, Default)]
pub(crate) struct Saturation {
    told: Vec<Vec<Cid>>,
    conj: Vec<Vec<(Cid, Cid)>>,
    ex_rhs: Vec<Vec<(Rid, Cid)>>,
    ex_lhs: HashMap<(Rid, Cid), Vec<Cid>>,
    subs: Vec<BitSet>,
    succ: Vec<Vec<(Rid, Cid)>>,
    pred: Vec<Vec<(Rid, Cid)>>,
    links: HashSet<(Cid, Rid, Cid)>,
    queue: VecDeque<Task>,
}

impl Saturation {
    pub(crate) fn new() -> Self {
        let mut s = Saturation::default();
        s.add_concept();
        s.add_concept();
        s
    }

    pub(crate) fn len(&self) -> usize {
        self.subs.len()
    }

    pub(crate) fn add_concept(&mut self) -> Cid {
        let id = self.subs.len() as Cid;
        self.told.push(Vec::new());
        self.conj.push(Vec::new());
        self.ex_rhs.push(Vec::new());
        self.subs.push(BitSet::default());
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        self.queue.push_back(Task::Sub(id, id));
        self.queue.push_back(Task::Sub(id, TOP));
        id
    }

    pub(crate) fn add_axiom(&mut self, ax: IdAxiom) {
        let n = self.len() as Cid;
        match ax {
            IdAxiom::Sub(a, b) => {
                self.told[a as usize].push(b);
                for k in 0..n {
                    if self.subs[k as usize].contains(a) {
                        self.queue.push_back(Task::Sub(k, b));
                    }
                }
            }
            IdAxiom::Conj(a1, a2, b) => {
                self.conj[a1 as usize].push((a2, b));
                if a1 != a2 {
                    self.conj[a2 as usize].push((a1, b));
                }
                for k in 0..n {
                    let s = &self.subs[k as usize];
                    if s.contains(a1) && s.contains(a2) {
                        self.queue.push_back(Task::Sub(k, b));
                    }
                }
            }
            IdAxiom::Exists(a, r, b) => {
                self.ex_rhs[a as usize].push((r, b));
                for k in 0..n {
                    if self.subs[k as usize].contains(a) {
                        self.queue.push_back(Task::Link(k, r, b));
                    }
                }
            }
            IdAxiom::ExistsLhs(r, a, b) => {
                self.ex_lhs.entry((r, a)).or_default().push(b);
                for &(k, rr, l) in &self.links {
                    if rr == r && self.subs[l as usize].contains(a) {
                        self.queue.push_back(Task::Sub(k, b));
                    }
                }
            }
        }
    }

    pub(crate) fn is_saturated(&self) -> bool {
        self.queue.is_empty()
    }

    pub(crate) fn run(&mut self, cancel: &CancelToken) -> Result<()> {
        SATURATIONS.with(|c| c.set(c.get() + 1));
        let mut steps = 0usize;
        let mut scratch = Vec::new();
        while let Some(task) = self.queue.pop_front() {
            steps += 1;
            if steps % 1024 == 0 {
                cancel.check()?;
            }
            match task {
                Task::Sub(x, a) => {
                    if !self.subs[x as usize].insert(a) {
                        continue;
                    }
                    scratch.clear();
                    scratch.extend(self.told[a as usize].iter().map(|&b| Task::Sub(x, b)));
                    for &(other, b) in &self.conj[a as usize] {
                        if self.subs[x as usize].contains(other) {
                            scratch.push(Task::Sub(x, b));
                        }
                    }
                    scratch.extend(self.ex_rhs[a as usize].iter().map(|&(r, b)| Task::Link(x, r, b)));
                    for &(r, k) in &self.pred[x as usize] {
                        if a == BOTTOM {
                            scratch.push(Task::Sub(k, BOTTOM));
                        }
                        if let Some(bs) = self.ex_lhs.get(&(r, a)) {
                            scratch.extend(bs.iter().map(|&b| Task::Sub(k, b)));
                        }
                    }
                    self.queue.extend(scratch.drain(..));
                }
                Task::Link(x, r, y) => {
                    if !self.links.insert((x, r, y)) {
                        continue;
                    }
                    self.succ[x as usize].push((r, y));
                    self.pred[y as usize].push((r, x));
                    scratch.clear();
                    for a in self.subs[y as usize].iter() {
                        if a == BOTTOM {
                            scratch.push(Task::Sub(x, BOTTOM));
                        }
                        if let Some(bs) = self.ex_lhs.get(&(r, a)) {
                            scratch.extend(bs.iter().map(|&b| Task::Sub(x, b)));
                        }
                    }
                    self.queue.extend(scratch.drain(..));
                }
            }
        }
        Ok(())
    }

    /// `y ∈ S(x)` or `x` is unsatisfiable.
    pub(crate) fn holds(&self, x: Cid, y: Cid) -> bool {
        let s = &self.subs[x as usize];
        s.contains(y) || s.contains(BOTTOM)
    }

    pub(crate) fn subsumers(&self, x: Cid) -> &BitSet {
        &self.subs[x as usize]
    }
}
