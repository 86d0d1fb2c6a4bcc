//! REST API over review sessions.
//!
//! Each session owns a diagram, an ontology and the last generated review
//! list. Sessions live in memory and, when a state directory is configured,
//! are snapshotted to one JSON file per session after every mutation and
//! restored on startup.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use owlax_core::diagram::validate_diagram;
use owlax_core::generator::GenerateError;
use owlax_core::session::{axiom_delta, declare_diagram_entities, SessionError};
use owlax_core::syntax::{parse_functional, render_functional, render_manchester_document};
use owlax_core::{apply_selection, generate, integrate, merge_existing, Diagram, Ontology};
use owlax_core::{PrefixEnvironment, ReviewList, SessionState};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::services::ServeDir;

pub const DEFAULT_BODY_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Prefix environment for new sessions.
    pub prefixes: PrefixEnvironment,
    pub state_dir: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
    pub body_limit: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            prefixes: PrefixEnvironment::default(),
            state_dir: None,
            static_dir: None,
            body_limit: DEFAULT_BODY_LIMIT,
        }
    }
}

#[derive(Debug)]
struct Session {
    state: SessionState,
    created: u64,
    updated: u64,
    /// Set by DELETE so writers that looked the session up beforehand
    /// cannot resurrect its snapshot.
    deleted: bool,
}

/// On-disk form of a session.
#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Snapshot {
    id: String,
    created: u64,
    updated: u64,
    diagram: Diagram,
    ontology: String,
    last_review: Option<String>,
}

pub struct AppState {
    config: ServiceConfig,
    sessions: RwLock<HashMap<String, Arc<RwLock<Session>>>>,
}

fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn invalid_data(path: &Path, message: impl std::fmt::Display) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, format!("{}: {message}", path.display()))
}

impl AppState {
    /// Creates the store, restoring any snapshots found in the state directory.
    pub fn new(config: ServiceConfig) -> io::Result<Self> {
        let mut sessions = HashMap::new();
        if let Some(dir) = &config.state_dir {
            fs::create_dir_all(dir)?;
            for entry in fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    let (id, session) = Self::restore(&path)?;
                    sessions.insert(id, Arc::new(RwLock::new(session)));
                }
            }
        }
        Ok(AppState {
            config,
            sessions: RwLock::new(sessions),
        })
    }

    fn restore(path: &Path) -> io::Result<(String, Session)> {
        let text = fs::read_to_string(path)?;
        let snap: Snapshot = serde_json::from_str(&text).map_err(|e| invalid_data(path, e))?;
        let ontology = parse_functional(&snap.ontology).map_err(|e| invalid_data(path, e))?;
        let last_review = snap
            .last_review
            .map(|r| ReviewList::from_json(&r, &ontology.prefixes))
            .transpose()
            .map_err(|e| invalid_data(path, e))?;
        let state = SessionState {
            diagram: snap.diagram,
            ontology,
            last_review,
        };
        let session = Session {
            state,
            created: snap.created,
            updated: snap.updated,
            deleted: false,
        };
        Ok((snap.id, session))
    }

    pub fn session_count(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    fn lookup(&self, id: &str) -> Result<Arc<RwLock<Session>>, ApiError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))
    }

    fn snapshot_path(&self, id: &str) -> Option<PathBuf> {
        self.config.state_dir.as_ref().map(|d| d.join(format!("{id}.json")))
    }

    /// Writes the snapshot via a temporary file so a crash never leaves a
    /// half-written session behind.
    fn persist(&self, id: &str, session: &Session) -> Result<(), ApiError> {
        let Some(path) = self.snapshot_path(id) else {
            return Ok(());
        };
        let snap = Snapshot {
            id: id.to_owned(),
            created: session.created,
            updated: session.updated,
            diagram: session.state.diagram.clone(),
            ontology: render_functional(&session.state.ontology),
            last_review: session.state.last_review.as_ref().map(ReviewList::to_json),
        };
        let text = serde_json::to_string_pretty(&snap).map_err(ApiError::internal)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(ApiError::internal)?;
        fs::rename(&tmp, &path).map_err(ApiError::internal)
    }

    /// Runs `f` under the session's write lock, then stamps and persists it.
    fn mutate<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut SessionState) -> Result<T, ApiError>,
    ) -> Result<T, ApiError> {
        let handle = self.lookup(id)?;
        let mut session = handle.write().unwrap();
        if session.deleted {
            return Err(ApiError::not_found(id));
        }
        let out = f(&mut session.state)?;
        session.updated = now_millis().max(session.updated);
        self.persist(id, &session)?;
        Ok(out)
    }

    fn read<T>(&self, id: &str, f: impl FnOnce(&SessionState) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let handle = self.lookup(id)?;
        let session = handle.read().unwrap();
        if session.deleted {
            return Err(ApiError::not_found(id));
        }
        f(&session.state)
    }

    fn create(&self) -> Result<String, ApiError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let now = now_millis();
        let session = Session {
            state: SessionState {
                ontology: Ontology::new(self.config.prefixes.clone()),
                ..SessionState::default()
            },
            created: now,
            updated: now,
            deleted: false,
        };
        self.persist(&id, &session)?;
        self.sessions
            .write()
            .unwrap()
            .insert(id.clone(), Arc::new(RwLock::new(session)));
        Ok(id)
    }

    fn delete(&self, id: &str) -> Result<(), ApiError> {
        let removed = self.sessions.write().unwrap().remove(id);
        let handle = removed.ok_or_else(|| ApiError::not_found(id))?;
        let mut session = handle.write().unwrap();
        session.deleted = true;
        if let Some(path) = self.snapshot_path(id) {
            match fs::remove_file(path) {
                Err(e) if e.kind() != io::ErrorKind::NotFound => return Err(ApiError::internal(e)),
                _ => {}
            }
        }
        Ok(())
    }
}

/// An error response: a status and a JSON body.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl std::fmt::Display) -> Self {
        ApiError {
            status,
            body: json!({ "error": code, "message": message.to_string() }),
        }
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "UNKNOWN_SESSION", format!("no session `{id}`"))
    }

    fn bad_request(code: &str, message: impl std::fmt::Display) -> Self {
        Self::new(StatusCode::BAD_REQUEST, code, message)
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

fn json_text(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn report_json(report: &owlax_core::ValidationReport) -> serde_json::Value {
    serde_json::to_value(report).expect("reports serialize")
}

async fn create_session(State(app): State<Arc<AppState>>) -> Result<Response, ApiError> {
    let id = app.create()?;
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))).into_response())
}

async fn delete_session(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<StatusCode, ApiError> {
    app.delete(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

/// Stores the diagram even when it has validation errors, so the editor
/// can save work in progress; the report tells the client what is wrong.
async fn put_diagram(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Json<serde_json::Value>, ApiError> {
    app.lookup(&id)?;
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::bad_request("MALFORMED_JSON", e))?;
    let diagram = Diagram::from_json(text).map_err(|e| ApiError::bad_request("MALFORMED_JSON", e))?;
    let report = validate_diagram(&diagram);
    app.mutate(&id, |state| {
        state.diagram = diagram;
        state.last_review = None;
        Ok(())
    })?;
    Ok(Json(report_json(&report)))
}

async fn get_diagram(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Response, ApiError> {
    let text = app.read(&id, |state| Ok(state.diagram.to_json()))?;
    Ok(json_text(StatusCode::OK, text))
}

async fn post_candidates(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Response, ApiError> {
    let text = app.mutate(&id, |state| {
        // The 409 body is exactly the validation report.
        let candidates = generate(&state.diagram).map_err(|GenerateError::InvalidDiagram(report)| ApiError {
            status: StatusCode::CONFLICT,
            body: report_json(&report),
        })?;
        let review = merge_existing(candidates, &state.ontology);
        let text = review.to_json();
        state.last_review = Some(review);
        Ok(text)
    })?;
    Ok(json_text(StatusCode::OK, text))
}

async fn post_integrate(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Json<serde_json::Value>, ApiError> {
    app.lookup(&id)?;
    let decisions: BTreeMap<String, bool> =
        serde_json::from_slice(&body).map_err(|e| ApiError::bad_request("MALFORMED_JSON", e))?;
    app.mutate(&id, |state| {
        let review = state.last_review.as_ref().ok_or_else(|| {
            ApiError::new(StatusCode::CONFLICT, "NO_CANDIDATES", "generate candidates before integrating")
        })?;
        let review = apply_selection(review, &decisions).map_err(|e| match e {
            SessionError::UnknownCandidateIds(ids) => ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                body: json!({
                    "error": "UNKNOWN_CANDIDATE_ID",
                    "message": format!("unknown candidate ids: {}", ids.join(", ")),
                    "ids": ids,
                }),
            },
            other => ApiError::internal(other),
        })?;
        let mut next = integrate(&review, &state.ontology);
        declare_diagram_entities(&mut next, &state.diagram);
        let (added, removed) = axiom_delta(&state.ontology, &next);
        let total = next.len();
        state.ontology = next;
        state.last_review = None;
        Ok(Json(json!({ "added": added, "removed": removed, "total": total })))
    })
}

#[derive(Debug, Deserialize)]
struct FormatQuery {
    format: Option<String>,
}

async fn get_ontology(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Query(query): Query<FormatQuery>,
) -> Result<Response, ApiError> {
    let format = query.format.unwrap_or_else(|| "functional".to_owned());
    let text = app.read(&id, |state| match format.as_str() {
        "functional" => Ok(render_functional(&state.ontology)),
        "manchester" => render_manchester_document(&state.ontology)
            .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "UNSUPPORTED_CONSTRUCT", e)),
        other => Err(ApiError::bad_request(
            "BAD_FORMAT",
            format!("unknown format `{other}`; expected functional or manchester"),
        )),
    })?;
    Ok((StatusCode::OK, [(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}

pub fn router(app: Arc<AppState>) -> Router {
    let limit = app.config.body_limit;
    let static_dir = app.config.static_dir.clone();
    let api = Router::new()
        .route("/session", post(create_session))
        .route("/session/{id}", axum::routing::delete(delete_session))
        .route("/session/{id}/diagram", put(put_diagram).get(get_diagram))
        .route("/session/{id}/candidates", post(post_candidates))
        .route("/session/{id}/integrate", post(post_integrate))
        .route("/session/{id}/ontology", get(get_ontology))
        .layer(DefaultBodyLimit::max(limit))
        .with_state(app);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener, config: ServiceConfig) -> io::Result<()> {
    let app = Arc::new(AppState::new(config)?);
    axum::serve(listener, router(app)).await
}
