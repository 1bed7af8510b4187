//! HTTP API for playing against the engine and analysing positions.
//!
//! | method | path                   | body / query                         |
//! |--------|------------------------|--------------------------------------|
//! | POST   | `/sessions`            | `{variant, a, b, human_first}`       |
//! | GET    | `/sessions/{id}`       |                                      |
//! | POST   | `/sessions/{id}/moves` | `{target_entry, multiplier}`         |
//! | GET    | `/analyze`             | `variant`, `a`, `b`, optional `oracle` |
//!
//! Illegal moves and invalid positions answer 400, unknown sessions 404, both
//! with a JSON body `{"error": "..."}`.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use euclid_core::play::{PlayError, SessionStore, SessionView};
use euclid_core::{analyze, Analysis, Entry, Position, Variant};

/// Largest entry for which `/analyze?oracle=true` runs the brute-force oracle.
pub const ANALYZE_ORACLE_LIMIT: u64 = 1000;

#[derive(Debug, Deserialize)]
pub struct CreateSession {
    pub variant: Variant,
    pub a: u64,
    pub b: u64,
    #[serde(default = "yes")]
    pub human_first: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub target_entry: Entry,
    pub multiplier: u64,
}

#[derive(Debug, Deserialize)]
pub struct AnalyzeQuery {
    pub variant: Variant,
    pub a: u64,
    pub b: u64,
    #[serde(default)]
    pub oracle: bool,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl ToString) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            message: message.to_string(),
        }
    }
}

impl From<PlayError> for ApiError {
    fn from(e: PlayError) -> Self {
        let status = match e {
            PlayError::NotFound(_) => StatusCode::NOT_FOUND,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError {
            status,
            message: e.to_string(),
        }
    }
}

impl From<euclid_core::Error> for ApiError {
    fn from(e: euclid_core::Error) -> Self {
        ApiError::bad_request(e)
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::bad_request(e.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> Self {
        ApiError::bad_request(e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(ErrorBody {
                error: self.message,
            }),
        )
            .into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

async fn create_session(
    State(store): State<Arc<SessionStore>>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let Json(req) = body?;
    let view = store.create(req.variant, Position::new(req.a, req.b), req.human_first)?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<SessionView>> {
    Ok(Json(store.get(&id)?))
}

async fn submit_move(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<Json<SessionView>> {
    let Json(req) = body?;
    Ok(Json(store.play(&id, req.target_entry, req.multiplier)?))
}

async fn analyze_position(
    query: Result<Query<AnalyzeQuery>, QueryRejection>,
) -> ApiResult<Json<Analysis>> {
    let Query(q) = query?;
    let p = Position::new(q.a, q.b);
    let bound = (q.oracle && p.max() <= ANALYZE_ORACLE_LIMIT).then_some(ANALYZE_ORACLE_LIMIT);
    Ok(Json(analyze(q.variant, p, bound)?))
}

/// The API routes, with `static_dir` (if any) served for every other path.
pub fn router(store: Arc<SessionStore>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(submit_move))
        .route("/analyze", get(analyze_position))
        .with_state(store);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until the process is stopped.
pub async fn serve(
    addr: SocketAddr,
    store: Arc<SessionStore>,
    static_dir: Option<PathBuf>,
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store, static_dir)).await
}
