//! HTTP API over the vendor selection solver.
//!
//! | method | path | body / query | response |
//! |---|---|---|---|
//! | POST | `/api/instances` | bid-matrix CSV | 201 descriptor |
//! | GET | `/api/instances/{id}` | | descriptor |
//! | GET | `/api/instances/{id}/optimum` | `require`, `forbid`, `k`, `coverage` | solution |
//! | GET | `/api/instances/{id}/curve` | `require`, `forbid`, `coverage` | cost curve |
//! | GET | `/api/instances/{id}/policies` | | both baseline policies |
//!
//! Solution, curve and policy payloads are produced by `mivs_core::io::json`,
//! the same code the CLI uses. Errors are `{"error": <code>, "message": ...}`
//! with 400 for bad input, 404 for unknown ids, 409 for infeasible requests
//! and 422 when the vendor cap or the time budget is exceeded.

mod registry;

use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use mivs_core::io::{curve_json, descriptor_json, parse_bid_csv, policies_json, write_solution_json};
use mivs_core::model::constraints_from_refs;
use mivs_core::policy::{policy_cheapest_per_item, policy_single_vendor};
use mivs_core::solver::solve_with_constraints;
use mivs_core::whatif::{cost_curve, CurveMode};
use mivs_core::{Cardinality, Constraints, CoverageMode, Error, ErrorClass, Instance, SolverOptions};
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

pub use registry::Registry;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Oldest instances are evicted beyond this many.
    pub max_instances: usize,
    /// Server-side limit on a single solve.
    pub time_budget: Duration,
    /// Worker count, pruning and vendor cap for solves.
    pub solver: SolverOptions,
    /// Allowed CORS origin; any origin when `None`.
    pub cors_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            max_instances: 64,
            time_budget: Duration::from_secs(30),
            solver: SolverOptions::default(),
            cors_origin: None,
        }
    }
}

#[derive(Clone)]
struct AppState {
    registry: Arc<Mutex<Registry>>,
    config: Arc<ServiceConfig>,
}

pub fn router(config: ServiceConfig) -> Router {
    let cors = match &config.cors_origin {
        Some(origin) => match HeaderValue::from_str(origin) {
            Ok(value) => CorsLayer::new().allow_origin(AllowOrigin::exact(value)),
            Err(_) => CorsLayer::new().allow_origin(Any),
        },
        None => CorsLayer::new().allow_origin(Any),
    }
    .allow_methods(Any)
    .allow_headers(Any);
    let state = AppState {
        registry: Arc::new(Mutex::new(Registry::new(config.max_instances))),
        config: Arc::new(config),
    };
    Router::new()
        .route("/api/instances", post(create_instance))
        .route("/api/instances/{id}", get(get_descriptor))
        .route("/api/instances/{id}/optimum", get(get_optimum))
        .route("/api/instances/{id}/curve", get(get_curve))
        .route("/api/instances/{id}/policies", get(get_policies))
        .layer(cors)
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config)).await
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    message: String,
}

#[derive(Debug)]
enum ApiError {
    NotFound(String),
    Core(Error),
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError::Core(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, code, message) = match &self {
            ApiError::NotFound(id) => (StatusCode::NOT_FOUND, "NotFound", format!("unknown instance id {id:?}")),
            ApiError::Core(e) => {
                let status = match e.class() {
                    ErrorClass::Input => StatusCode::BAD_REQUEST,
                    ErrorClass::Infeasible => StatusCode::CONFLICT,
                    ErrorClass::SizeCap => StatusCode::UNPROCESSABLE_ENTITY,
                };
                (status, e.code(), e.to_string())
            }
        };
        let body = serde_json::to_string(&ErrorBody { error: code, message }).expect("error body serializes");
        (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
    }
}

fn json(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

#[derive(Debug, Default, Deserialize)]
struct ConstraintQuery {
    require: Option<String>,
    forbid: Option<String>,
    k: Option<String>,
    coverage: Option<String>,
}

impl ConstraintQuery {
    fn to_constraints(&self, instance: &Instance) -> Result<Constraints, Error> {
        let split = |s: &Option<String>| -> Vec<String> {
            s.as_deref().map(|s| s.split(',').map(str::to_string).collect()).unwrap_or_default()
        };
        let cardinality = match self.k.as_deref().map(str::trim).filter(|k| !k.is_empty()) {
            Some(k) => Some(Cardinality::exactly(
                k.parse().map_err(|_| Error::BadConstraint(format!("vendor count {k:?} is not a number")))?,
            )),
            None => None,
        };
        let coverage = match self.coverage.as_deref().map(str::trim) {
            None | Some("") | Some("full") => CoverageMode::Full,
            Some("partial") => CoverageMode::Partial,
            Some(other) => return Err(Error::BadConstraint(format!("coverage must be full or partial, not {other:?}"))),
        };
        constraints_from_refs(instance, &split(&self.require), &split(&self.forbid), cardinality, coverage)
    }
}

impl AppState {
    fn instance(&self, id: &str) -> Result<Arc<Instance>, ApiError> {
        self.registry.lock().expect("registry lock").get(id).ok_or_else(|| ApiError::NotFound(id.to_string()))
    }

    fn solver_options(&self) -> SolverOptions {
        self.config.solver.clone().with_time_budget(self.config.time_budget)
    }
}

/// Run CPU-bound work off the async executor.
async fn blocking<R: Send + 'static>(f: impl FnOnce() -> R + Send + 'static) -> R {
    tokio::task::spawn_blocking(f).await.expect("solver task panicked")
}

async fn create_instance(State(state): State<AppState>, body: String) -> Result<Response, ApiError> {
    let instance: Instance = parse_bid_csv(&body)?;
    let instance = Arc::new(instance);
    let id = state.registry.lock().expect("registry lock").insert(instance.clone());
    Ok(json(StatusCode::CREATED, descriptor_json(&id, &instance)))
}

async fn get_descriptor(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let instance = state.instance(&id)?;
    Ok(json(StatusCode::OK, descriptor_json(&id, &instance)))
}

async fn get_optimum(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<ConstraintQuery>,
) -> Result<Response, ApiError> {
    let instance = state.instance(&id)?;
    let constraints = query.to_constraints(&instance)?;
    let options = state.solver_options();
    let body = blocking(move || {
        solve_with_constraints(&instance, &constraints, &options).map(|r| write_solution_json(&instance, &r))
    })
    .await?;
    Ok(json(StatusCode::OK, body))
}

async fn get_curve(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<ConstraintQuery>,
) -> Result<Response, ApiError> {
    let instance = state.instance(&id)?;
    let constraints = query.to_constraints(&instance)?;
    let options = state.solver_options();
    let body = blocking(move || {
        cost_curve(&instance, &constraints, &options, CurveMode::PerCount).map(|c| curve_json(&instance, &c))
    })
    .await?;
    Ok(json(StatusCode::OK, body))
}

async fn get_policies(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let instance = state.instance(&id)?;
    let body = blocking(move || {
        policies_json(&instance, &policy_single_vendor(&instance), &policy_cheapest_per_item(&instance))
    })
    .await;
    Ok(json(StatusCode::OK, body))
}
