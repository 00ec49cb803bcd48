//! HTTP session service used by the explorer front end.
//!
//! A session holds a starting ice quiver and the mutations applied since.
//! Quivers without frozen rows are framed when the session is created.
//!
//! | method | path | body | response |
//! |---|---|---|---|
//! | POST | `/sessions` | quiver document | 201, session view |
//! | GET | `/sessions/{id}` | | session view |
//! | DELETE | `/sessions/{id}` | | 204 |
//! | POST | `/sessions/{id}/mutate` | `{"vertex": k}` (1-based) | session view |
//! | POST | `/sessions/{id}/undo` | | session view |
//! | POST | `/sessions/{id}/reset` | | session view |
//! | POST | `/sessions/{id}/search` | `{"kind": "mgs" or "g2r", "max_depth": d}` | search outcome |
//! | GET | `/sessions/{id}/certificates` | | certificates for the current principal part |
//! | GET | `/examples/{name}` | | quiver document |
//!
//! Errors are `{"error": message}` with 400 for malformed input, 404 for an
//! unknown session or example, 409 for a mutation or undo that cannot be
//! applied and 422 for a search that hit a cap.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use quiverlab_core::quiver::{parse_quiver_value, quiver_to_json};
use quiverlab_core::sequence::search_from;
use quiverlab_core::{
    class_no_mgs_certificate, data, local_acyclicity_certificate, no_mgs_certificate,
    parse_quiver, CertificateCaps, IceQuiver, LaOutcome, MutationSequence, NoMgsCertificate,
    SearchKind, SearchOptions, VertexStatus,
};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::sync::Mutex;

use crate::structured;

#[derive(Debug, Clone, Copy)]
pub struct Config {
    /// Search depth used when a request does not give one.
    pub default_depth: usize,
    /// Largest depth a request may ask for.
    pub max_depth: usize,
    pub certificate_caps: CertificateCaps,
    pub search: SearchOptions,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            default_depth: 8,
            max_depth: 12,
            certificate_caps: CertificateCaps::default(),
            search: SearchOptions::default(),
        }
    }
}

impl Config {
    /// Defaults overridden by the same environment variables the CLI reads.
    pub fn from_env() -> Self {
        fn var(name: &str) -> Option<usize> {
            std::env::var(name).ok()?.parse().ok()
        }
        let mut c = Self::default();
        if let Some(d) = var(crate::MAX_DEPTH_ENV) {
            c.default_depth = d;
            c.max_depth = c.max_depth.max(d);
        }
        if let Some(d) = var(crate::MUTATION_DEPTH_ENV) {
            c.certificate_caps.mutation_depth = d;
        }
        if let Some(d) = var(crate::RECURSION_DEPTH_ENV) {
            c.certificate_caps.recursion_depth = d;
        }
        c
    }
}

struct Session {
    initial: IceQuiver,
    current: IceQuiver,
    history: Vec<usize>,
}

impl Session {
    fn view(&self, id: &str) -> SessionView {
        debug_assert_eq!(
            self.initial.mutate_seq(&self.history).ok().as_ref(),
            Some(&self.current),
            "history replays to the current quiver"
        );
        let colors: Vec<Color> = (0..self.current.n())
            .map(|i| match self.current.vertex_status(i) {
                Ok(VertexStatus::Green) => Color::Green,
                Ok(VertexStatus::Red) => Color::Red,
                Err(_) => Color::Mixed,
            })
            .collect();
        let all_red = colors.iter().all(|&c| c == Color::Red);
        SessionView {
            id: id.to_string(),
            quiver: quiver_to_json(&self.current),
            colors,
            history: MutationSequence(self.history.clone()),
            all_red,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
    /// Frozen column with both signs; cannot happen in the class of a
    /// framed quiver.
    Mixed,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub quiver: serde_json::Value,
    pub colors: Vec<Color>,
    /// Applied mutations, 1-based, comma-separated.
    pub history: MutationSequence,
    pub all_red: bool,
}

#[derive(Debug, Deserialize)]
struct MutateRequest {
    vertex: usize,
}

#[derive(Debug, Deserialize)]
struct SearchRequest {
    kind: SearchKind,
    max_depth: Option<usize>,
}

#[derive(Debug, Serialize)]
struct Certificates {
    no_mgs: Option<NoMgsCertificate>,
    class_no_mgs: Option<NoMgsCertificate>,
    local_acyclicity: LaOutcome,
}

type Sessions = RwLock<HashMap<String, Arc<Mutex<Session>>>>;

struct AppState {
    config: Config,
    sessions: Sessions,
}

type Shared = Arc<AppState>;

#[derive(Debug)]
struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self(StatusCode::BAD_REQUEST, e.body_text())
    }
}

/// Serializes with the same encoder as the CLI's structured output.
fn body<T: Serialize>(status: StatusCode, value: &T) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        structured(value),
    )
        .into_response()
}

fn session(state: &AppState, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
    state
        .sessions
        .read()
        .expect("session map lock")
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no session {id}")))
}

pub fn router(config: Config) -> Router {
    let state = Arc::new(AppState {
        config,
        sessions: RwLock::new(HashMap::new()),
    });
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show).delete(remove))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/reset", post(reset))
        .route("/sessions/{id}/search", post(search))
        .route("/sessions/{id}/certificates", get(certificates))
        .route("/examples/{name}", get(example))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config)).await
}

async fn create(
    State(state): State<Shared>,
    doc: Result<Json<serde_json::Value>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(doc) = doc?;
    let q = parse_quiver_value(doc).map_err(|e| ApiError(StatusCode::BAD_REQUEST, e.to_string()))?;
    let q = if q.frozen_count() == 0 {
        IceQuiver::frame(q.principal())
    } else {
        q
    };
    let id = uuid::Uuid::new_v4().to_string();
    let s = Session {
        initial: q.clone(),
        current: q,
        history: Vec::new(),
    };
    let view = s.view(&id);
    state
        .sessions
        .write()
        .expect("session map lock")
        .insert(id, Arc::new(Mutex::new(s)));
    Ok(body(StatusCode::CREATED, &view))
}

async fn show(State(state): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = session(&state, &id)?;
    let view = s.lock().await.view(&id);
    Ok(body(StatusCode::OK, &view))
}

async fn remove(State(state): State<Shared>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    match state.sessions.write().expect("session map lock").remove(&id) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError(StatusCode::NOT_FOUND, format!("no session {id}"))),
    }
}

async fn mutate(
    State(state): State<Shared>,
    Path(id): Path<String>,
    req: Result<Json<MutateRequest>, JsonRejection>,
) -> Result<Response, ApiError> {
    let s = session(&state, &id)?;
    let Json(req) = req?;
    let mut s = s.lock().await;
    let n = s.current.n();
    if req.vertex == 0 || req.vertex > n {
        let what = if req.vertex > n && req.vertex <= s.current.m() {
            "is frozen"
        } else {
            "does not exist"
        };
        return Err(ApiError(
            StatusCode::CONFLICT,
            format!("vertex {} {what}; mutable vertices are 1..={n}", req.vertex),
        ));
    }
    let k = req.vertex - 1;
    let next = s
        .current
        .mutate(k)
        .map_err(|e| ApiError(StatusCode::CONFLICT, e.to_string()))?;
    s.current = next;
    s.history.push(k);
    Ok(body(StatusCode::OK, &s.view(&id)))
}

async fn undo(State(state): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = session(&state, &id)?;
    let mut s = s.lock().await;
    let Some(k) = s.history.pop() else {
        return Err(ApiError(StatusCode::CONFLICT, "nothing to undo".into()));
    };
    // mutation is an involution, and it succeeded in this direction before
    s.current = s.current.mutate(k).expect("undoing a mutation that succeeded");
    Ok(body(StatusCode::OK, &s.view(&id)))
}

async fn reset(State(state): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = session(&state, &id)?;
    let mut s = s.lock().await;
    s.current = s.initial.clone();
    s.history.clear();
    Ok(body(StatusCode::OK, &s.view(&id)))
}

async fn search(
    State(state): State<Shared>,
    Path(id): Path<String>,
    req: Result<Json<SearchRequest>, JsonRejection>,
) -> Result<Response, ApiError> {
    let s = session(&state, &id)?;
    let Json(req) = req?;
    let depth = req.max_depth.unwrap_or(state.config.default_depth);
    if depth > state.config.max_depth {
        return Err(ApiError(
            StatusCode::BAD_REQUEST,
            format!("max_depth {depth} exceeds the limit {}", state.config.max_depth),
        ));
    }
    let start = s.lock().await.current.clone();
    let options = state.config.search;
    let out = tokio::task::spawn_blocking(move || search_from(&start, req.kind, depth, &options))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(|e| ApiError(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    Ok(body(StatusCode::OK, &out))
}

async fn certificates(
    State(state): State<Shared>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let s = session(&state, &id)?;
    let b = s.lock().await.current.principal().clone();
    let caps = state.config.certificate_caps;
    let certs = tokio::task::spawn_blocking(move || Certificates {
        no_mgs: no_mgs_certificate(&b),
        class_no_mgs: class_no_mgs_certificate(&b),
        local_acyclicity: local_acyclicity_certificate(&IceQuiver::from_principal(b), caps),
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(body(StatusCode::OK, &certs))
}

async fn example(Path(name): Path<String>) -> Result<Response, ApiError> {
    let doc = data::document(&name)
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no example {name}")))?;
    let q = parse_quiver(doc).expect("shipped documents parse");
    Ok(body(StatusCode::OK, &q))
}
