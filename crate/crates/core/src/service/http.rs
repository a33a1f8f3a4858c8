//! JSON-over-HTTP front end for [`SessionManager`].
//!
//! Errors are returned as `{"error": {"code": ..., "message": ...}}`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post, put};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{result_json, strip_prefixes, ApplyTarget, Method, SessionManager, SignatureSpec, Support};
use crate::abduction::FixpointHypothesisSet;
use crate::error::Error;
use crate::syntax::{parse_axiom, parse_ontology, ConceptName, Signature};

const DEFAULT_PAGE: usize = 5;
const DEFAULT_LABELS: usize = 3;

pub struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

pub fn status_of(e: &Error) -> StatusCode {
    match e {
        Error::UnknownSession(_) => StatusCode::NOT_FOUND,
        Error::Cancelled => StatusCode::CONFLICT,
        Error::Syntax { .. }
        | Error::UnboundFixpointVariable(_)
        | Error::ExtendedSyntaxInCoreContext(_)
        | Error::InvalidRequest(_)
        | Error::EmptyQuery
        | Error::TooFewNames
        | Error::UnknownName(_)
        | Error::IndexOutOfRange { .. }
        | Error::UnknownMethod(_)
        | Error::NonPositiveCount => StatusCode::BAD_REQUEST,
        Error::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        _ => StatusCode::UNPROCESSABLE_ENTITY,
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "code": self.0.code(), "message": self.0.to_string() } });
        (status_of(&self.0), Json(body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;
type Shared = State<Arc<SessionManager>>;

fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, Error> {
    serde_json::from_slice(bytes).map_err(|e| Error::InvalidRequest(e.to_string()))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, Error> + Send + 'static) -> Result<T, Error> {
    tokio::task::spawn_blocking(f).await.map_err(|e| Error::Io(e.to_string()))?
}

#[derive(Deserialize)]
struct CreateBody {
    ontology: String,
}

#[derive(Deserialize)]
struct QueryBody {
    missing: Vec<String>,
    #[serde(default)]
    signature: Option<Signature>,
    #[serde(default)]
    fixpoints: Option<String>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct ExplainBody {
    method: String,
    #[serde(default)]
    page_size: Option<usize>,
    #[serde(default)]
    k: Option<usize>,
}

#[derive(Deserialize)]
struct NamesBody {
    names: Vec<String>,
}

#[derive(Deserialize)]
struct ApplyBody {
    #[serde(default)]
    hypothesis: Option<usize>,
}

#[derive(Deserialize)]
struct SupportParams {
    method: Option<String>,
}

#[derive(Deserialize)]
struct GraphParams {
    k: Option<usize>,
    format: Option<String>,
}

async fn create(State(m): Shared, bytes: Bytes) -> Result<(StatusCode, Json<Value>), ApiError> {
    let b: CreateBody = body(&bytes)?;
    let m2 = m.clone();
    let id = blocking(move || m2.create(&b.ontology)).await?;
    let state = m.with(&id, |s| Ok(s.state_json()))?;
    Ok((StatusCode::CREATED, Json(state)))
}

async fn state(State(m): Shared, Path(id): Path<String>) -> ApiResult {
    Ok(Json(m.with(&id, |s| Ok(s.state_json()))?))
}

async fn remove(State(m): Shared, Path(id): Path<String>) -> ApiResult {
    m.remove(&id)?;
    Ok(Json(json!({ "removed": id })))
}

async fn set_query(State(m): Shared, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let b: QueryBody = body(&bytes)?;
    let missing = b.missing.iter().map(|a| parse_axiom(a)).collect::<Result<Vec<_>, _>>()?;
    let fixpoints = b.fixpoints.as_deref().map(FixpointHypothesisSet::parse).transpose()?;
    let spec = match b.signature {
        Some(s) => SignatureSpec::Explicit(strip_prefixes(&s)),
        None => SignatureSpec::All,
    };
    Ok(Json(m.with(&id, |s| {
        s.set_query(missing, spec)?;
        if let Some(f) = fixpoints {
            s.attach_fixpoints(f);
        }
        Ok(s.state_json())
    })?))
}

async fn replace_ontology(State(m): Shared, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let b: CreateBody = body(&bytes)?;
    let o = parse_ontology(&b.ontology)?;
    Ok(Json(m.with(&id, |s| {
        s.edit_ontology(|cur| *cur = o);
        Ok(s.state_json())
    })?))
}

fn support_json(method: Method, s: Support) -> Value {
    match s {
        Support::Supported => json!({ "method": method.as_str(), "supported": true }),
        Support::Unsupported(msg) => json!({ "method": method.as_str(), "supported": false, "message": msg }),
    }
}

async fn support(State(m): Shared, Path(id): Path<String>, Query(p): Query<SupportParams>) -> ApiResult {
    let methods = match p.method {
        Some(name) => vec![name.parse::<Method>()?],
        None => Method::ALL.to_vec(),
    };
    let out = m.with(&id, |s| Ok(methods.iter().map(|&mt| support_json(mt, s.check_support(mt))).collect::<Vec<_>>()))?;
    Ok(Json(if out.len() == 1 { out[0].clone() } else { Value::Array(out) }))
}

async fn explain(State(m): Shared, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let b: ExplainBody = body(&bytes)?;
    let method: Method = b.method.parse()?;
    let token = m.begin(&id)?;
    let out = blocking(move || {
        m.with(&id, |s| {
            let r = s.generate_explanations(method, b.page_size.unwrap_or(DEFAULT_PAGE), &token)?;
            result_json(r, b.k.unwrap_or(DEFAULT_LABELS))
        })
    })
    .await?;
    Ok(Json(out))
}

async fn recompute(State(m): Shared, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let b: ExplainBody = body(&bytes)?;
    let method: Method = b.method.parse()?;
    let token = m.begin(&id)?;
    let out = blocking(move || {
        m.with(&id, |s| {
            let r = s.recompute(method, &token)?;
            result_json(r, b.k.unwrap_or(DEFAULT_LABELS))
        })
    })
    .await?;
    Ok(Json(out))
}

fn pending_json(s: &super::Session) -> Value {
    json!({ "pending": s.pending().iter().map(ToString::to_string).collect::<Vec<_>>() })
}

async fn add_disjointness(State(m): Shared, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let b: NamesBody = body(&bytes)?;
    let names: Vec<ConceptName> =
        b.names.iter().map(|n| ConceptName::new(n.strip_prefix(':').unwrap_or(n))).collect();
    Ok(Json(m.with(&id, |s| {
        s.add_disjointness(&names)?;
        Ok(pending_json(s))
    })?))
}

async fn remove_disjointness(State(m): Shared, Path((id, index)): Path<(String, usize)>) -> ApiResult {
    Ok(Json(m.with(&id, |s| {
        s.remove_disjointness(index)?;
        Ok(pending_json(s))
    })?))
}

async fn apply(State(m): Shared, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let b: ApplyBody = if bytes.is_empty() { ApplyBody { hypothesis: None } } else { body(&bytes)? };
    let target = b.hypothesis.map_or(ApplyTarget::Disjointnesses, ApplyTarget::Hypothesis);
    Ok(Json(m.with(&id, |s| {
        s.apply_changes(target)?;
        Ok(s.state_json())
    })?))
}

async fn revert(State(m): Shared, Path(id): Path<String>) -> ApiResult {
    Ok(Json(m.with(&id, |s| {
        s.revert_changes();
        Ok(s.state_json())
    })?))
}

async fn cancel(State(m): Shared, Path(id): Path<String>) -> ApiResult {
    m.cancel(&id)?;
    Ok(Json(json!({ "cancelled": true })))
}

async fn graph(State(m): Shared, Path(id): Path<String>, Query(p): Query<GraphParams>) -> Result<Response, ApiError> {
    let doc = m.with(&id, |s| s.graph(p.k.unwrap_or(DEFAULT_LABELS)))?;
    Ok(match p.format.as_deref() {
        Some("dot") => ([("content-type", "text/vnd.graphviz")], doc.to_dot()).into_response(),
        None | Some("json") => Json(doc).into_response(),
        Some(other) => return Err(Error::InvalidRequest(format!("unknown format {other}")).into()),
    })
}

pub fn router(manager: Arc<SessionManager>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(state).delete(remove))
        .route("/sessions/{id}/ontology", put(replace_ontology))
        .route("/sessions/{id}/query", put(set_query))
        .route("/sessions/{id}/support", get(support))
        .route("/sessions/{id}/explain", post(explain))
        .route("/sessions/{id}/disjointnesses", post(add_disjointness))
        .route("/sessions/{id}/disjointnesses/{index}", delete(remove_disjointness))
        .route("/sessions/{id}/recompute", post(recompute))
        .route("/sessions/{id}/apply", post(apply))
        .route("/sessions/{id}/revert", post(revert))
        .route("/sessions/{id}/cancel", post(cancel))
        .route("/sessions/{id}/graph", get(graph))
        .with_state(manager)
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(Arc::new(SessionManager::new()))).await
}
