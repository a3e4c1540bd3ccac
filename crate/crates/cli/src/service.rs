//! JSON HTTP service over the same operations as the CLI.

use std::net::SocketAddr;

use axum::extract::Path;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use matchstick::corpus::{get_document, list_corpus};
use matchstick::Error;
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;

use crate::ops::{self, merge, parse_request, to_body, Op};

#[derive(Debug, Clone, Copy)]
pub struct ServiceConfig {
    /// Upper bound on solver iterations per request, whatever the client asks for.
    pub max_iterations: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self { max_iterations: 2000 }
    }
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(err: &Error) -> Response {
    let status = match err {
        Error::Parse(_) | Error::InvalidConfig(_) => StatusCode::BAD_REQUEST,
        Error::UnknownId(_) => StatusCode::NOT_FOUND,
        _ => StatusCode::UNPROCESSABLE_ENTITY,
    };
    json_response(status, to_body(&json!({ "error": err.to_string() })))
}

/// Relax and flex record trajectories unless the client turns them off, and
/// never run longer than the service cap.
fn solver_config(op: Op, config: Option<&Value>, cap: usize) -> Option<Value> {
    if !matches!(op, Op::Relax | Op::Flex) {
        return config.cloned();
    }
    let mut merged = merge(json!({ "record_trajectory": true }), config);
    if let Value::Object(m) = &mut merged {
        let asked = m.get("max_iterations").and_then(Value::as_u64).map_or(cap, |n| n as usize);
        m.insert("max_iterations".into(), json!(asked.min(cap)));
    }
    Some(merged)
}

async fn handle(op: Op, cfg: ServiceConfig, body: String) -> Response {
    let result = tokio::task::spawn_blocking(move || {
        let req = parse_request(&body)?;
        let config = solver_config(op, req.config.as_ref(), cfg.max_iterations);
        ops::run(op, &req.graph, &req.profile, config.as_ref())
    })
    .await;
    match result {
        Ok(Ok(outcome)) => json_response(StatusCode::OK, to_body(&outcome.body)),
        Ok(Err(e)) => error_response(&e),
        Err(join) => json_response(StatusCode::INTERNAL_SERVER_ERROR, to_body(&json!({ "error": join.to_string() }))),
    }
}

async fn corpus_index() -> Response {
    json_response(StatusCode::OK, to_body(&serde_json::to_value(list_corpus()).expect("summaries serialize")))
}

async fn corpus_entry(Path(id): Path<String>) -> Response {
    match get_document(&id) {
        Ok(doc) => json_response(StatusCode::OK, doc.to_owned()),
        Err(e) => error_response(&e),
    }
}

async fn not_found() -> Response {
    json_response(StatusCode::NOT_FOUND, to_body(&json!({ "error": "no such route" })))
}

pub fn router(cfg: ServiceConfig) -> Router {
    let mut r = Router::new().route("/api/corpus", get(corpus_index)).route("/api/corpus/{id}", get(corpus_entry));
    for op in Op::ALL {
        r = r.route(&format!("/api/{}", op.name()), post(move |body: String| handle(op, cfg, body)));
    }
    r.fallback(not_found).layer(CorsLayer::permissive())
}

pub async fn serve(addr: SocketAddr, cfg: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(cfg)).await
}
