//! HTTP front end. Readers take a snapshot of the last committed index, so an
//! ingest in progress never blocks or half-updates a query.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tokio::sync::Mutex;

use crate::api::{self, ApiError, ApiResult, Envelope, ErrorCode, ErrorEnvelope, TimelineQuery};
use crate::store::{Index, IngestReport};

pub struct AppState {
    index: RwLock<Arc<Index>>,
    writer: Mutex<()>,
    allow_ingest: bool,
}

impl AppState {
    pub fn new(index: Index, allow_ingest: bool) -> Arc<Self> {
        Arc::new(AppState {
            index: RwLock::new(Arc::new(index)),
            writer: Mutex::new(()),
            allow_ingest,
        })
    }

    pub fn snapshot(&self) -> Arc<Index> {
        self.index.read().expect("index lock poisoned").clone()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.code {
            ErrorCode::NotFound => StatusCode::NOT_FOUND,
            ErrorCode::BadRequest => StatusCode::BAD_REQUEST,
            ErrorCode::Forbidden => StatusCode::FORBIDDEN,
            ErrorCode::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(ErrorEnvelope::from(self))).into_response()
    }
}

type Reply<T> = ApiResult<Json<Envelope<T>>>;

fn query<T>(q: Result<Query<T>, QueryRejection>) -> ApiResult<T> {
    q.map(|Query(v)| v).map_err(|e| ApiError::bad_request(e.body_text()))
}

fn ok<T>(data: T) -> Reply<T> {
    Ok(Json(Envelope::new(data)))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/texts", get(texts))
        .route("/texts/{id}/profile", get(profile))
        .route("/texts/{id}/timeline", get(text_timeline))
        .route("/compare", get(compare))
        .route("/collections/{tag}/summary", get(summary))
        .route("/collections/{tag}/histogram", get(histogram))
        .route("/collections/{tag}/ranking", get(ranking))
        .route("/entities/{word}/timeline", get(entity))
        .route("/ingest", post(ingest))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .with_state(state)
}

async fn texts(State(s): State<Arc<AppState>>) -> Reply<api::TextList> {
    ok(api::list_texts(&s.snapshot())?)
}

async fn profile(State(s): State<Arc<AppState>>, Path(id): Path<String>) -> Reply<api::ProfileView> {
    ok(api::text_profile(&s.snapshot(), &id)?)
}

async fn text_timeline(
    State(s): State<Arc<AppState>>,
    Path(id): Path<String>,
    q: Result<Query<TimelineQuery>, QueryRejection>,
) -> Reply<emolit_core::text::TimelineSeries> {
    let q = query(q)?;
    let index = s.snapshot();
    let series = tokio::task::spawn_blocking(move || api::text_timeline(&index, &id, &q))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    ok(series)
}

#[derive(Debug, Deserialize)]
struct CompareQuery {
    a: Option<String>,
    b: Option<String>,
    k: Option<usize>,
}

async fn compare(State(s): State<Arc<AppState>>, q: Result<Query<CompareQuery>, QueryRejection>) -> Reply<api::Comparison> {
    let q = query(q)?;
    let (Some(a), Some(b)) = (q.a, q.b) else {
        return Err(ApiError::bad_request("both `a` and `b` are required"));
    };
    ok(api::compare_texts(&s.snapshot(), &a, &b, q.k)?)
}

async fn summary(State(s): State<Arc<AppState>>, Path(tag): Path<String>) -> Reply<emolit_core::stats::CorpusSummary> {
    ok(api::collection_summary(&s.snapshot(), &tag)?)
}

#[derive(Debug, Deserialize)]
struct HistogramQuery {
    category: Option<String>,
    width: Option<f64>,
}

async fn histogram(
    State(s): State<Arc<AppState>>,
    Path(tag): Path<String>,
    q: Result<Query<HistogramQuery>, QueryRejection>,
) -> Reply<emolit_core::stats::HistogramSpec> {
    let q = query(q)?;
    let category = required_category(q.category.as_deref())?;
    ok(api::collection_histogram(&s.snapshot(), &tag, category, q.width)?)
}

#[derive(Debug, Deserialize)]
struct RankingQuery {
    category: Option<String>,
}

async fn ranking(State(s): State<Arc<AppState>>, Path(tag): Path<String>, q: Result<Query<RankingQuery>, QueryRejection>) -> Reply<api::Ranking> {
    let q = query(q)?;
    let category = required_category(q.category.as_deref())?;
    ok(api::collection_ranking(&s.snapshot(), &tag, category)?)
}

fn required_category(c: Option<&str>) -> ApiResult<emolit_core::AffectCategory> {
    api::parse_category(c.ok_or_else(|| ApiError::bad_request("`category` is required"))?)
}

async fn entity(State(s): State<Arc<AppState>>, Path(word): Path<String>) -> Reply<emolit_core::ngram::EntityTimeline> {
    ok(api::entity_timeline(&s.snapshot(), &word)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IngestRequest {
    pub path: PathBuf,
    pub collection: String,
}

async fn ingest(State(s): State<Arc<AppState>>, Json(req): Json<IngestRequest>) -> Reply<IngestReport> {
    if !s.allow_ingest {
        return Err(ApiError {
            code: ErrorCode::Forbidden,
            message: "ingestion is disabled on this server".into(),
        });
    }
    let _writer = s.writer.lock().await;
    let mut next = (*s.snapshot()).clone();
    let (next, report) = tokio::task::spawn_blocking(move || {
        let report = next.ingest(&req.path, &req.collection);
        (next, report)
    })
    .await
    .map_err(|e| ApiError::internal(e.to_string()))?;
    let report = report?;
    *s.index.write().expect("index lock poisoned") = Arc::new(next);
    ok(report)
}

/// Binds first so that a taken port is reported before anything else runs.
pub async fn bind(addr: SocketAddr) -> std::io::Result<TcpListener> {
    TcpListener::bind(addr).await
}

pub async fn serve(listener: TcpListener, state: Arc<AppState>) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
