//! Explanation sessions: a working copy of an ontology, the missing
//! entailment being explained, staged disjointness axioms and the latest
//! result.
//!
//! The latest result survives ontology edits made by [`Session::apply_changes`]
//! and is dropped by every other edit.

mod files;
mod graph;
pub mod http;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard};

use serde_json::{json, Value};

use crate::abduction::{
    naive_abduce_limited, postprocess_hypotheses, unravel_fixpoints, verify_with, AbductionBounds, FixpointHypothesisSet,
    Hypothesis, PostprocessOptions, Verification,
};
use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::reasoner::{Interpretation, Reasoner};
use crate::relevance::{extract_relevant_part_with, RelevanceMode, RelevantPart};
use crate::syntax::{
    parse_ontology, signature_of, Axiom, Concept, ConceptName, NonEntailmentQuery, Ontology, Signature,
};
use crate::tableau::{generate_small_model, Outcome};

pub use files::{
    query_from_json, query_to_json, strip_prefixes, vocabulary_from_json, vocabulary_to_json, QueryFile,
    VocabularyFile,
};
pub use graph::{export_graph, select_labels, GraphDoc, GraphEdge, GraphNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SmallModel,
    RelevantAlpha,
    RelevantBeta,
    RelevantDelta,
    RelevantDeltaBar,
    NaiveAbduction,
    Unravel,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::SmallModel,
        Method::RelevantAlpha,
        Method::RelevantBeta,
        Method::RelevantDelta,
        Method::RelevantDeltaBar,
        Method::NaiveAbduction,
        Method::Unravel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::SmallModel => "small_model",
            Method::RelevantAlpha => "relevant_alpha",
            Method::RelevantBeta => "relevant_beta",
            Method::RelevantDelta => "relevant_delta",
            Method::RelevantDeltaBar => "relevant_deltabar",
            Method::NaiveAbduction => "naive_abduction",
            Method::Unravel => "unravel",
        }
    }

    pub fn relevance_mode(self) -> Option<RelevanceMode> {
        match self {
            Method::RelevantAlpha => Some(RelevanceMode::Alpha),
            Method::RelevantBeta => Some(RelevanceMode::Beta),
            Method::RelevantDelta => Some(RelevanceMode::Delta),
            Method::RelevantDeltaBar => Some(RelevanceMode::DeltaBar),
            _ => None,
        }
    }

    pub fn is_counterexample(self) -> bool {
        self == Method::SmallModel || self.relevance_mode().is_some()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// The permitted vocabulary: everything, or an explicit signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureSpec {
    All,
    Explicit(Signature),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Supported,
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Graph { interp: Interpretation, part: Option<RelevantPart> },
    Hypotheses { items: Vec<Hypothesis>, exhausted: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplanationResult {
    pub method: Method,
    pub payload: Payload,
    pub progress_log: Vec<String>,
    /// The terminology the result was computed against.
    pub context: Vec<Axiom>,
    /// The resolved permitted vocabulary.
    pub signature: Signature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApplyTarget {
    Disjointnesses,
    Hypothesis(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SessionOptions {
    pub bounds: AbductionBounds,
    pub postprocess: PostprocessOptions,
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub ontology: Ontology,
    pub baseline: Ontology,
    missing: Vec<Axiom>,
    signature: SignatureSpec,
    fixpoints: Option<FixpointHypothesisSet>,
    pending: Vec<Axiom>,
    last_result: Option<ExplanationResult>,
    epoch: u64,
    pub options: SessionOptions,
}

const SINGLE_GCI: &str = "requires a single subclass axiom";
const NO_QUERY: &str = "no missing entailment specified";
const EL_CONCEPTS: &str = "requires concepts without owl:Nothing";
const EL_ONTOLOGY: &str = "requires an ontology without owl:Nothing or disjointness axioms";
const NO_FIXPOINTS: &str = "requires a fixpoint hypothesis set";
const EMPTY_VOCABULARY: &str = "requires a non-empty vocabulary";

impl Session {
    pub fn new(id: impl Into<String>, ontology_text: &str) -> Result<Self> {
        let ontology = parse_ontology(ontology_text)?;
        Ok(Session {
            id: id.into(),
            baseline: ontology.clone(),
            ontology,
            missing: Vec::new(),
            signature: SignatureSpec::All,
            fixpoints: None,
            pending: Vec::new(),
            last_result: None,
            epoch: 0,
            options: SessionOptions::default(),
        })
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn missing(&self) -> &[Axiom] {
        &self.missing
    }

    pub fn pending(&self) -> &[Axiom] {
        &self.pending
    }

    pub fn last_result(&self) -> Option<&ExplanationResult> {
        self.last_result.as_ref()
    }

    pub fn set_query(&mut self, missing: Vec<Axiom>, signature: SignatureSpec) -> Result<()> {
        if missing.is_empty() {
            return Err(Error::EmptyQuery);
        }
        self.missing = missing;
        self.signature = signature;
        self.last_result = None;
        Ok(())
    }

    /// Attaches the alternatives the `unravel` method works on.
    pub fn attach_fixpoints(&mut self, fhs: FixpointHypothesisSet) {
        self.fixpoints = Some(fhs);
        self.last_result = None;
    }

    /// The permitted vocabulary, with "all" resolved against the current
    /// ontology and query.
    pub fn resolved_signature(&self) -> Signature {
        match &self.signature {
            SignatureSpec::Explicit(s) => s.clone(),
            SignatureSpec::All => signature_of(&self.ontology).union(&signature_of(&self.missing[..])),
        }
    }

    pub fn query(&self) -> Result<NonEntailmentQuery> {
        if self.missing.is_empty() {
            return Err(Error::NoQuery);
        }
        NonEntailmentQuery::new(self.missing.clone(), self.resolved_signature())
    }

    /// Any edit that does not go through [`Session::apply_changes`].
    pub fn edit_ontology(&mut self, edit: impl FnOnce(&mut Ontology)) {
        edit(&mut self.ontology);
        self.epoch += 1;
        self.last_result = None;
    }

    fn support_against<'a>(&self, method: Method, tbox: impl Iterator<Item = &'a Axiom>) -> Support {
        use Support::*;
        if self.missing.is_empty() {
            return Unsupported(NO_QUERY.into());
        }
        let single = matches!(self.missing.as_slice(), [Axiom::SubClassOf(..)]);
        match method {
            Method::SmallModel if !single => Unsupported(SINGLE_GCI.into()),
            Method::SmallModel => Supported,
            _ if method.relevance_mode().is_some() => {
                if !single {
                    Unsupported(SINGLE_GCI.into())
                } else if self.missing[0].mentions_bottom() {
                    Unsupported(EL_CONCEPTS.into())
                } else if tbox.filter(|a| a.is_tbox()).any(Axiom::mentions_bottom) {
                    Unsupported(EL_ONTOLOGY.into())
                } else {
                    Supported
                }
            }
            Method::NaiveAbduction => match &self.signature {
                SignatureSpec::Explicit(s) if s.is_empty() => Unsupported(EMPTY_VOCABULARY.into()),
                _ => Supported,
            },
            _ if self.fixpoints.is_none() => Unsupported(NO_FIXPOINTS.into()),
            _ => Supported,
        }
    }

    /// Cheap syntactic check whether `method` can run on the current query;
    /// never reasons.
    pub fn check_support(&self, method: Method) -> Support {
        self.support_against(method, self.ontology.axioms())
    }

    fn entailed_error(&self) -> Error {
        Error::AlreadyEntailed(self.missing.first().map(ToString::to_string).unwrap_or_default())
    }

    fn counterexample(&self, method: Method, tbox: Vec<Axiom>, cancel: &CancelToken) -> Result<ExplanationResult> {
        let query = &self.missing[0];
        let signature = self.resolved_signature();
        let mut log = Vec::new();
        let (interp, part) = if let Some(mode) = method.relevance_mode() {
            log.push("building canonical model".to_string());
            let refs: Vec<&Axiom> = tbox.iter().collect();
            let mut r = Reasoner::from_axioms(refs.iter().copied()).with_cancel(cancel.clone());
            let part = match extract_relevant_part_with(&mut r, &refs, query, mode) {
                Err(Error::IsEntailed) => return Err(self.entailed_error()),
                other => other?,
            };
            log.push(format!("{mode} part: {} elements", part.interp.len()));
            (part.interp.clone(), Some(part))
        } else {
            log.push("expanding tableau".to_string());
            let res = generate_small_model(&tbox, query, cancel)?;
            let steps: usize = res.stats.rule_counts.iter().map(|(_, n)| n).sum();
            log.push(format!("saturated after {steps} rule applications, {} individuals", res.stats.individuals));
            match res.outcome {
                Outcome::Entailed => return Err(self.entailed_error()),
                Outcome::Counterexample(m) => (m, None),
            }
        };
        Ok(ExplanationResult { method, payload: Payload::Graph { interp, part }, progress_log: log, context: tbox, signature })
    }

    fn hypotheses(&self, method: Method, page_size: usize, cancel: &CancelToken) -> Result<ExplanationResult> {
        let query = self.query()?;
        let mut base = Reasoner::from_ontology(&self.ontology).with_cancel(cancel.clone());
        if base.entails_all(&query.missing)? {
            return Err(self.entailed_error());
        }
        let previous: Vec<Hypothesis> = match &self.last_result {
            Some(ExplanationResult { method: m, payload: Payload::Hypotheses { items, .. }, .. }) if *m == method => {
                items.clone()
            }
            _ => Vec::new(),
        };
        let start = previous.len();
        let mut log = vec![format!("requesting hypotheses {}-{}", start + 1, start + page_size)];
        let (page, exhausted) = match method {
            Method::NaiveAbduction => {
                let (all, complete) =
                    naive_abduce_limited(&self.ontology, &query, self.options.bounds, Some(start + page_size), cancel)?;
                let end = (start + page_size).min(all.len());
                (all[start.min(end)..end].to_vec(), complete && end >= all.len())
            }
            _ => {
                let fhs = self.fixpoints.as_ref().ok_or_else(|| Error::Unsupported(NO_FIXPOINTS.into()))?;
                let all = unravel_fixpoints(fhs, start + page_size)?;
                let exhausted = all.len() < start + page_size;
                let mut page = all[start.min(all.len())..].to_vec();
                for h in &mut page {
                    cancel.check()?;
                    h.verified = match verify_with(&base, h, &query)? {
                        Verification::Verified(v) => Some(v),
                        Verification::Unverifiable => None,
                    };
                }
                (page, exhausted)
            }
        };
        let page = postprocess_hypotheses(&self.ontology, &page, self.options.postprocess)?;
        log.push(format!("{} new hypotheses", page.len()));
        let mut items = previous;
        items.extend(page);
        Ok(ExplanationResult {
            method,
            payload: Payload::Hypotheses { items, exhausted },
            progress_log: log,
            context: self.ontology.tbox().cloned().collect(),
            signature: query.signature,
        })
    }

    /// Runs `method`; hypothesis methods append `page_size` further results
    /// to the previous ones. On error the previous result is kept.
    pub fn generate_explanations(
        &mut self,
        method: Method,
        page_size: usize,
        cancel: &CancelToken,
    ) -> Result<&ExplanationResult> {
        if let Support::Unsupported(m) = self.check_support(method) {
            return Err(Error::Unsupported(m));
        }
        let result = if method.is_counterexample() {
            self.counterexample(method, self.ontology.tbox().cloned().collect(), cancel)?
        } else {
            if page_size == 0 {
                return Err(Error::NonPositiveCount);
            }
            self.hypotheses(method, page_size, cancel)?
        };
        Ok(self.last_result.insert(result))
    }

    /// Stages `DisjointClasses(names)` without touching the ontology.
    pub fn add_disjointness(&mut self, names: &[ConceptName]) -> Result<()> {
        let mut distinct: Vec<ConceptName> = Vec::new();
        for n in names {
            if !distinct.contains(n) {
                distinct.push(n.clone());
            }
        }
        if distinct.len() < 2 {
            return Err(Error::TooFewNames);
        }
        let known = signature_of(&self.ontology).union(&signature_of(&self.missing[..]));
        if let Some(n) = distinct.iter().find(|n| !known.concepts.contains(*n)) {
            return Err(Error::UnknownName(n.as_str().to_string()));
        }
        self.pending.push(Axiom::DisjointClasses(distinct.into_iter().map(Concept::Name).collect()));
        Ok(())
    }

    pub fn remove_disjointness(&mut self, index: usize) -> Result<()> {
        if index >= self.pending.len() {
            return Err(Error::IndexOutOfRange { index, len: self.pending.len() });
        }
        self.pending.remove(index);
        Ok(())
    }

    /// Reruns a counterexample method against the ontology plus the staged
    /// disjointnesses, without committing them.
    pub fn recompute(&mut self, method: Method, cancel: &CancelToken) -> Result<&ExplanationResult> {
        if !method.is_counterexample() {
            return Err(Error::Unsupported("recompute requires a counterexample method".into()));
        }
        let tbox: Vec<Axiom> = self.ontology.tbox().chain(&self.pending).cloned().collect();
        if let Support::Unsupported(m) = self.support_against(method, tbox.iter()) {
            return Err(Error::Unsupported(m));
        }
        let result = match self.counterexample(method, tbox, cancel) {
            Err(Error::InconsistentInput) if !self.pending.is_empty() => {
                let mut plain = Reasoner::from_axioms(self.ontology.tbox()).with_cancel(cancel.clone());
                let Axiom::SubClassOf(c, _) = &self.missing[0] else { return Err(Error::InconsistentInput) };
                if plain.is_consistent()? && plain.is_satisfiable(c)? {
                    return Err(Error::InconsistentWithDisjointness);
                }
                return Err(Error::InconsistentInput);
            }
            other => other?,
        };
        Ok(self.last_result.insert(result))
    }

    /// Commits staged disjointnesses or a hypothesis from the latest result.
    /// The latest result is kept.
    pub fn apply_changes(&mut self, target: ApplyTarget) -> Result<()> {
        let axioms = match target {
            ApplyTarget::Disjointnesses => {
                if self.pending.is_empty() {
                    return Err(Error::NothingToApply);
                }
                std::mem::take(&mut self.pending)
            }
            ApplyTarget::Hypothesis(i) => {
                let Some(ExplanationResult { payload: Payload::Hypotheses { items, .. }, .. }) = &self.last_result
                else {
                    return Err(Error::NothingToApply);
                };
                let h = items.get(i).ok_or(Error::IndexOutOfRange { index: i, len: items.len() })?;
                h.to_core()
                    .ok_or_else(|| Error::Unsupported("the hypothesis uses constructs outside EL⊥".into()))?
            }
        };
        for a in axioms {
            self.ontology.add(a);
        }
        self.epoch += 1;
        Ok(())
    }

    /// Restores the ontology the session started with and drops staged
    /// axioms and results.
    pub fn revert_changes(&mut self) {
        self.ontology = self.baseline.clone();
        self.pending.clear();
        self.last_result = None;
        self.epoch += 1;
    }

    /// Graph of the latest counterexample result.
    pub fn graph(&self, k: usize) -> Result<GraphDoc> {
        match &self.last_result {
            Some(r @ ExplanationResult { payload: Payload::Graph { interp, .. }, .. }) => {
                let mut reasoner = Reasoner::from_axioms(&r.context);
                export_graph(interp, k, &r.signature, &mut reasoner)
            }
            _ => Err(Error::InvalidRequest("no counterexample has been computed".into())),
        }
    }

    /// JSON view of the session state.
    pub fn state_json(&self) -> Value {
        json!({
            "id": self.id,
            "epoch": self.epoch,
            "ontology": self.ontology.serialize(),
            "missing": self.missing.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "pending": self.pending.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "hasResult": self.last_result.is_some(),
        })
    }
}

pub fn hypothesis_json(h: &Hypothesis) -> Value {
    let status = match h.verified {
        Some(true) => "verified",
        Some(false) => "refuted",
        None => "unverifiable",
    };
    json!({
        "axioms": h.axioms.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "status": status,
        "depth": h.depth,
    })
}

/// JSON view of a result; graphs are exported with at most `k` labels.
pub fn result_json(r: &ExplanationResult, k: usize) -> Result<Value> {
    let mut v = json!({ "method": r.method.as_str(), "progress": r.progress_log });
    match &r.payload {
        Payload::Graph { interp, part } => {
            let mut reasoner = Reasoner::from_axioms(&r.context);
            let doc = export_graph(interp, k, &r.signature, &mut reasoner)?;
            v["graph"] = serde_json::to_value(doc).unwrap_or(Value::Null);
            if let Some(p) = part {
                v["conditions"] = json!(p.conditions.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
        }
        Payload::Hypotheses { items, exhausted } => {
            v["hypotheses"] = Value::Array(items.iter().map(hypothesis_json).collect());
            v["exhausted"] = json!(exhausted);
        }
    }
    Ok(v)
}

/// Sessions by id. Each session is used by one request at a time; the
/// cancellation token of a running request can be fired without waiting.
#[derive(Debug, Default)]
pub struct SessionManager {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    tokens: Mutex<HashMap<String, CancelToken>>,
    next: AtomicU64,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl SessionManager {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn create(&self, ontology_text: &str) -> Result<String> {
        let n = self.next.fetch_add(1, Ordering::SeqCst) + 1;
        let id = format!("s{n}");
        let session = Session::new(id.clone(), ontology_text)?;
        lock(&self.sessions).insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(id)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        lock(&self.sessions).get(id).cloned().ok_or_else(|| Error::UnknownSession(id.to_string()))
    }

    /// Runs `f` with exclusive access to the session.
    pub fn with<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T>) -> Result<T> {
        let s = self.get(id)?;
        let mut guard = lock(&s);
        f(&mut guard)
    }

    /// A fresh token for the next long-running request on `id`.
    pub fn begin(&self, id: &str) -> Result<CancelToken> {
        self.get(id)?;
        let token = CancelToken::new();
        lock(&self.tokens).insert(id.to_string(), token.clone());
        Ok(token)
    }

    pub fn cancel(&self, id: &str) -> Result<()> {
        self.get(id)?;
        if let Some(t) = lock(&self.tokens).get(id) {
            t.cancel();
        }
        Ok(())
    }

    pub fn remove(&self, id: &str) -> Result<()> {
        lock(&self.tokens).remove(id);
        lock(&self.sessions).remove(id).map(|_| ()).ok_or_else(|| Error::UnknownSession(id.to_string()))
    }
}
