use std::collections::BTreeSet;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use owlax_core::session::apply_selection;
use owlax_core::syntax::{render_functional, PrefixEnvironment};
use owlax_core::{Ontology, ReviewList};
use owlax_service::{router, AppState, ServiceConfig};
use serde_json::{json, Value};
use tower::ServiceExt;

const PERSON_ADDRESS: &str = r#"{"nodes":[
    {"id":"n1","kind":"class","label":"Person"},
    {"id":"n2","kind":"class","label":"Address"}],
  "edges":[{"id":"e1","kind":"objectProperty","property":"hasAddress","source":"n1","target":"n2"}]}"#;

const TYPING: &str = r#"{"nodes":[
    {"id":"n1","kind":"individual","label":"mary"},
    {"id":"n2","kind":"class","label":"Person"}],
  "edges":[{"id":"e1","kind":"type","source":"n1","target":"n2"}]}"#;

struct Reply {
    status: StatusCode,
    content_type: Option<String>,
    text: String,
}

impl Reply {
    fn json(&self) -> Value {
        serde_json::from_str(&self.text).unwrap_or_else(|e| panic!("{e}: {}", self.text))
    }
}

fn app(config: ServiceConfig) -> Router {
    router(Arc::new(AppState::new(config).unwrap()))
}

async fn send(app: &Router, method: Method, uri: &str, body: &str) -> Reply {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_owned()))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let content_type = response
        .headers()
        .get("content-type")
        .map(|v| v.to_str().unwrap().to_owned());
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    Reply {
        status,
        content_type,
        text: String::from_utf8(bytes.to_vec()).unwrap(),
    }
}

async fn new_session(app: &Router) -> String {
    let reply = send(app, Method::POST, "/session", "").await;
    assert_eq!(reply.status, StatusCode::CREATED);
    reply.json()["id"].as_str().unwrap().to_owned()
}

async fn session_with(app: &Router, diagram: &str) -> String {
    let id = new_session(app).await;
    let reply = send(app, Method::PUT, &format!("/session/{id}/diagram"), diagram).await;
    assert_eq!(reply.status, StatusCode::OK, "{}", reply.text);
    id
}

fn ids(review: &Value) -> Vec<String> {
    review["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap().to_owned())
        .collect()
}

#[tokio::test]
async fn put_diagram_reports_validation() {
    let app = app(ServiceConfig::default());
    let id = new_session(&app).await;
    let uri = format!("/session/{id}/diagram");

    let valid = send(&app, Method::PUT, &uri, PERSON_ADDRESS).await.json();
    assert_eq!(valid, json!({"errors": [], "warnings": []}));

    let empty = send(&app, Method::PUT, &uri, r#"{"nodes":[],"edges":[]}"#).await;
    assert_eq!(empty.status, StatusCode::OK);
    let codes: Vec<_> = empty.json()["errors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["code"].as_str().unwrap().to_owned())
        .collect();
    assert!(codes.contains(&"EMPTY_DIAGRAM".to_owned()));

    let malformed = send(&app, Method::PUT, &uri, r#"{"nodes": 5}"#).await;
    assert_eq!(malformed.status, StatusCode::BAD_REQUEST);
    assert_eq!(malformed.json()["error"], "MALFORMED_JSON");
}

#[tokio::test]
async fn invalid_diagram_is_stored_and_blocks_generation() {
    let app = app(ServiceConfig::default());
    let bad = r#"{"nodes":[{"id":"n1","kind":"datatype","label":"string"},
        {"id":"n2","kind":"class","label":"A"}],
      "edges":[{"id":"e1","kind":"subClassOf","source":"n1","target":"n2"}]}"#;
    let id = new_session(&app).await;
    let report = send(&app, Method::PUT, &format!("/session/{id}/diagram"), bad).await;
    assert_eq!(report.status, StatusCode::OK);

    let stored = send(&app, Method::GET, &format!("/session/{id}/diagram"), "").await;
    assert_eq!(stored.status, StatusCode::OK);
    let stored: Value = stored.json();
    assert_eq!(stored, serde_json::from_str::<Value>(&owlax_core::Diagram::from_json(bad).unwrap().to_json()).unwrap());

    let generated = send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    assert_eq!(generated.status, StatusCode::CONFLICT);
    assert_eq!(generated.json(), report.json());
}

#[tokio::test]
async fn fresh_session_has_empty_diagram() {
    let app = app(ServiceConfig::default());
    let id = new_session(&app).await;
    let generated = send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    assert_eq!(generated.status, StatusCode::CONFLICT);
    assert_eq!(generated.json()["errors"][0]["code"], "EMPTY_DIAGRAM");
}

#[tokio::test]
async fn generate_returns_review_entries() {
    let app = app(ServiceConfig::default());
    let id = session_with(&app, PERSON_ADDRESS).await;
    let reply = send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    assert_eq!(reply.status, StatusCode::OK);
    assert_eq!(reply.content_type.as_deref(), Some("application/json"));
    let review = reply.json();
    let entries = review["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 11);
    let first = &entries[0];
    assert_eq!(first["id"], "e1#DOM");
    assert_eq!(first["manchester"], "hasAddress some owl:Thing SubClassOf Person");
    assert_eq!(first["schema"], "DOM");
    assert_eq!(first["status"], "new");
    assert_eq!(first["accept"], false);
    assert_eq!(entries[10]["id"], "disj#Address#Person");
}

#[tokio::test]
async fn integrate_updates_ontology_and_next_review() {
    let app = app(ServiceConfig::default());
    let id = session_with(&app, PERSON_ADDRESS).await;
    send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    let summary = send(&app, Method::POST, &format!("/session/{id}/integrate"), r#"{"e1#DOM":true}"#).await;
    assert_eq!(summary.status, StatusCode::OK);
    assert_eq!(summary.json(), json!({"added": 1, "removed": 0, "total": 1}));

    let functional = send(&app, Method::GET, &format!("/session/{id}/ontology?format=functional"), "").await;
    assert_eq!(functional.status, StatusCode::OK);
    assert!(functional.content_type.unwrap().starts_with("text/plain"));
    assert!(functional
        .text
        .contains("SubClassOf(ObjectSomeValuesFrom(:hasAddress owl:Thing) :Person)"));
    assert!(functional.text.contains("Declaration(Class(:Address))"));

    let manchester = send(&app, Method::GET, &format!("/session/{id}/ontology?format=manchester"), "").await;
    assert_eq!(manchester.text, "hasAddress some owl:Thing SubClassOf Person\n");

    let review = send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await.json();
    let dom = &review["entries"][0];
    assert_eq!(dom["id"], "e1#DOM");
    assert_eq!(dom["status"], "existing");
    assert_eq!(dom["accept"], true);
    assert_eq!(review["entries"].as_array().unwrap().len(), 11);

    // Unchecking the existing entry removes it again.
    let summary = send(&app, Method::POST, &format!("/session/{id}/integrate"), r#"{"e1#DOM":false}"#).await;
    assert_eq!(summary.json(), json!({"added": 0, "removed": 1, "total": 0}));
}

#[tokio::test]
async fn integrate_examples() {
    let app = app(ServiceConfig::default());
    let id = session_with(&app, TYPING).await;
    send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    let summary = send(&app, Method::POST, &format!("/session/{id}/integrate"), r#"{"e1#TYPE":true}"#).await;
    assert_eq!(summary.json(), json!({"added": 1, "removed": 0, "total": 1}));

    let id = session_with(&app, PERSON_ADDRESS).await;
    send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    let summary = send(&app, Method::POST, &format!("/session/{id}/integrate"), "{}").await;
    assert_eq!(summary.json(), json!({"added": 0, "removed": 0, "total": 0}));
}

#[tokio::test]
async fn integrate_errors() {
    let app = app(ServiceConfig::default());
    let id = session_with(&app, PERSON_ADDRESS).await;
    let uri = format!("/session/{id}/integrate");

    let early = send(&app, Method::POST, &uri, "{}").await;
    assert_eq!(early.status, StatusCode::CONFLICT);
    assert_eq!(early.json()["error"], "NO_CANDIDATES");

    send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    let unknown = send(&app, Method::POST, &uri, r#"{"zzz#DOM":true,"e1#DOM":true,"aaa":false}"#).await;
    assert_eq!(unknown.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(unknown.json()["error"], "UNKNOWN_CANDIDATE_ID");
    assert_eq!(unknown.json()["ids"], json!(["aaa", "zzz#DOM"]));

    // A rejected selection changes nothing; the review stays usable.
    let ok = send(&app, Method::POST, &uri, r#"{"e1#DOM":true}"#).await;
    assert_eq!(ok.json()["total"], 1);

    // Integration consumes the review.
    let again = send(&app, Method::POST, &uri, "{}").await;
    assert_eq!(again.status, StatusCode::CONFLICT);

    send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    let malformed = send(&app, Method::POST, &uri, r#"{"e1#DOM":"yes"}"#).await;
    assert_eq!(malformed.status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn ontology_formats() {
    let app = app(ServiceConfig::default());
    let id = new_session(&app).await;
    let fresh = send(&app, Method::GET, &format!("/session/{id}/ontology"), "").await;
    assert_eq!(fresh.status, StatusCode::OK);
    assert_eq!(fresh.text, render_functional(&Ontology::new(PrefixEnvironment::default())));

    let turtle = send(&app, Method::GET, &format!("/session/{id}/ontology?format=turtle"), "").await;
    assert_eq!(turtle.status, StatusCode::BAD_REQUEST);
    assert_eq!(turtle.json()["error"], "BAD_FORMAT");

    let config = ServiceConfig {
        prefixes: PrefixEnvironment::new("http://ex.com/zoo/").unwrap(),
        ..ServiceConfig::default()
    };
    let zoo = self::app(config);
    let id = new_session(&zoo).await;
    let doc = send(&zoo, Method::GET, &format!("/session/{id}/ontology"), "").await;
    assert!(doc.text.contains("Prefix(:=<http://ex.com/zoo/>)"));
}

#[tokio::test]
async fn unknown_sessions_are_404() {
    let app = app(ServiceConfig::default());
    let cases = [
        (Method::PUT, "/session/nope/diagram", PERSON_ADDRESS),
        (Method::GET, "/session/nope/diagram", ""),
        (Method::POST, "/session/nope/candidates", ""),
        (Method::POST, "/session/nope/integrate", "{}"),
        (Method::GET, "/session/nope/ontology", ""),
        (Method::DELETE, "/session/nope", ""),
    ];
    for (method, uri, body) in cases {
        let reply = send(&app, method.clone(), uri, body).await;
        assert_eq!(reply.status, StatusCode::NOT_FOUND, "{method} {uri}");
        assert_eq!(reply.json()["error"], "UNKNOWN_SESSION");
    }
}

#[tokio::test]
async fn delete_ends_session() {
    let app = app(ServiceConfig::default());
    let id = session_with(&app, PERSON_ADDRESS).await;
    let reply = send(&app, Method::DELETE, &format!("/session/{id}"), "").await;
    assert_eq!(reply.status, StatusCode::NO_CONTENT);
    let gone = send(&app, Method::GET, &format!("/session/{id}/diagram"), "").await;
    assert_eq!(gone.status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn body_limit_is_enforced() {
    let app = app(ServiceConfig {
        body_limit: 64,
        ..ServiceConfig::default()
    });
    let id = new_session(&app).await;
    let reply = send(&app, Method::PUT, &format!("/session/{id}/diagram"), PERSON_ADDRESS).await;
    assert_eq!(reply.status, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn serves_static_assets() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<h1>owlax</h1>").unwrap();
    let app = app(ServiceConfig {
        static_dir: Some(dir.path().to_owned()),
        ..ServiceConfig::default()
    });
    let index = send(&app, Method::GET, "/", "").await;
    assert_eq!(index.status, StatusCode::OK);
    assert_eq!(index.text, "<h1>owlax</h1>");
    assert_eq!(send(&app, Method::GET, "/missing.js", "").await.status, StatusCode::NOT_FOUND);
    // API routes still take precedence.
    assert_eq!(send(&app, Method::POST, "/session", "").await.status, StatusCode::CREATED);
}

#[tokio::test]
async fn returned_ids_are_always_selectable() {
    let app = app(ServiceConfig::default());
    let id = session_with(&app, PERSON_ADDRESS).await;
    send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    send(&app, Method::POST, &format!("/session/{id}/integrate"), r#"{"e1#EX":true,"disj#Address#Person":true}"#)
        .await;
    let text = send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await.text;
    let review = ReviewList::from_json(&text, &PrefixEnvironment::default()).unwrap();
    let all = review.decisions();
    assert!(apply_selection(&review, &all).is_ok());
    let summary = send(&app, Method::POST, &format!("/session/{id}/integrate"), &serde_json::to_string(&all).unwrap()).await;
    assert_eq!(summary.status, StatusCode::OK);
}

async fn probe(app: &Router, sessions: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for id in sessions {
        for uri in [
            format!("/session/{id}/diagram"),
            format!("/session/{id}/ontology"),
            format!("/session/{id}/ontology?format=manchester"),
        ] {
            out.push(send(app, Method::GET, &uri, "").await.text);
        }
    }
    out
}

#[tokio::test]
async fn snapshots_survive_restart_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let config = ServiceConfig {
        state_dir: Some(dir.path().to_owned()),
        ..ServiceConfig::default()
    };
    let first = app(config.clone());
    let a = session_with(&first, PERSON_ADDRESS).await;
    send(&first, Method::POST, &format!("/session/{a}/candidates"), "").await;
    send(&first, Method::POST, &format!("/session/{a}/integrate"), r#"{"e1#DOM":true,"e1#RAN":true}"#).await;
    let b = session_with(&first, TYPING).await;
    send(&first, Method::POST, &format!("/session/{b}/candidates"), "").await;
    let gone = new_session(&first).await;
    send(&first, Method::DELETE, &format!("/session/{gone}"), "").await;

    let before = probe(&first, &[&a, &b]).await;
    let files_before: BTreeSet<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| (e.as_ref().unwrap().file_name(), std::fs::read(e.unwrap().path()).unwrap()))
        .collect();
    drop(first);

    let state = Arc::new(AppState::new(config).unwrap());
    assert_eq!(state.session_count(), 2);
    let second = router(state);
    assert_eq!(probe(&second, &[&a, &b]).await, before);

    // B still holds its review, so integrating works without regenerating.
    let summary = send(&second, Method::POST, &format!("/session/{b}/integrate"), r#"{"e1#TYPE":true}"#).await;
    assert_eq!(summary.json()["added"], 1);
    assert_eq!(send(&second, Method::GET, &format!("/session/{gone}/diagram"), "").await.status, StatusCode::NOT_FOUND);

    // Re-snapshotting an unchanged restored session reproduces the file.
    let a_file = dir.path().join(format!("{a}.json"));
    let a_bytes = files_before.iter().find(|(n, _)| *n == a_file.file_name().unwrap()).unwrap().1.clone();
    assert_eq!(std::fs::read(&a_file).unwrap(), a_bytes);
}

#[tokio::test]
async fn corrupt_snapshot_fails_startup() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{").unwrap();
    let config = ServiceConfig {
        state_dir: Some(dir.path().to_owned()),
        ..ServiceConfig::default()
    };
    assert!(AppState::new(config).is_err());
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_storm_is_linearizable() {
    let app = app(ServiceConfig::default());
    let sessions: Vec<String> = {
        let mut v = Vec::new();
        for _ in 0..4 {
            v.push(session_with(&app, PERSON_ADDRESS).await);
        }
        v
    };
    for id in &sessions {
        send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
    }
    let codes = ["DOM", "SDOM", "RAN", "SRAN", "EX", "IEX", "FUN", "QFUN", "IFUN", "QIFUN"];

    // Each task regenerates then integrates one accepted candidate. Some
    // integrations lose the race for the review (409); every success adds
    // exactly one axiom, so the final total equals the number of successes.
    let mut tasks = Vec::new();
    for (s, id) in sessions.iter().enumerate() {
        for (k, code) in codes.iter().enumerate() {
            let app = app.clone();
            let id = id.clone();
            let decision = format!(r#"{{"e1#{code}":true}}"#);
            tasks.push(tokio::spawn(async move {
                if (s + k) % 2 == 0 {
                    send(&app, Method::POST, &format!("/session/{id}/candidates"), "").await;
                }
                let reply = send(&app, Method::POST, &format!("/session/{id}/integrate"), &decision).await;
                let reader = send(&app, Method::GET, &format!("/session/{id}/ontology"), "").await;
                assert_eq!(reader.status, StatusCode::OK);
                (id, reply.status, reply.text)
            }));
        }
    }
    let mut successes = std::collections::HashMap::<String, usize>::new();
    for task in tasks {
        let (id, status, text) = task.await.unwrap();
        match status {
            StatusCode::OK => {
                let v: Value = serde_json::from_str(&text).unwrap();
                assert_eq!(v["added"], 1);
                assert_eq!(v["removed"], 0);
                *successes.entry(id).or_default() += 1;
            }
            StatusCode::CONFLICT => {}
            other => panic!("unexpected {other}: {text}"),
        }
    }
    for id in &sessions {
        let manchester = send(&app, Method::GET, &format!("/session/{id}/ontology?format=manchester"), "").await;
        let lines = manchester.text.lines().count();
        assert_eq!(lines, successes.get(id).copied().unwrap_or(0), "{id}");
        assert!(lines >= 1);
    }
    let other_ids: Vec<_> = ids(&send(&app, Method::POST, &format!("/session/{}/candidates", sessions[0]), "").await.json());
    assert_eq!(other_ids.len(), 11);
}
