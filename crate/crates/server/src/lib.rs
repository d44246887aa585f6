//! HTTP/JSON front end of the mock-board examination service.
//!
//! Handlers authenticate with bearer tokens, enforce role and course scope,
//! and run store work on the blocking pool. Time comes from an injected
//! [`Clock`] so deadline behaviour is testable.

mod auth;
mod clock;
mod config;
mod error;
mod extract;
mod routes;
mod views;

use std::future::Future;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::extract::Request;
use axum::http::StatusCode;
use axum::middleware::{self, Next};
use axum::response::Response;
use axum::Router;
use chrono::{DateTime, Utc};
use mockboard_api::{codes, API_PREFIX};
use mockboard_core::Attempt;
use mockboard_store::{Store, StoreError};
use tokio::net::TcpListener;

pub use auth::Sessions;
pub use clock::{Clock, ManualClock, SystemClock};
pub use config::{ConfigError, ServerConfig};
pub use error::ApiError;

struct Shared {
    store: Arc<Store>,
    clock: Arc<dyn Clock>,
    sessions: Sessions,
    config: ServerConfig,
}

/// Handle shared by every request handler.
#[derive(Clone)]
pub struct AppState(Arc<Shared>);

impl AppState {
    pub fn new(store: Arc<Store>, clock: Arc<dyn Clock>, config: ServerConfig) -> Self {
        let ttl = chrono::Duration::hours(config.session_hours.into());
        AppState(Arc::new(Shared {
            store,
            clock,
            sessions: Sessions::new(ttl),
            config,
        }))
    }

    pub fn store(&self) -> &Arc<Store> {
        &self.0.store
    }

    pub fn now(&self) -> DateTime<Utc> {
        self.0.clock.now()
    }

    pub fn sessions(&self) -> &Sessions {
        &self.0.sessions
    }

    pub fn config(&self) -> &ServerConfig {
        &self.0.config
    }

    fn past_grace(&self, attempt: &Attempt, at: DateTime<Utc>) -> bool {
        at > attempt.deadline + self.0.store.config().grace
    }

    /// Runs store work (journal syncs, password hashing) off the async
    /// workers.
    pub async fn blocking<T, F>(&self, f: F) -> Result<T, ApiError>
    where
        T: Send + 'static,
        F: FnOnce(&Store) -> Result<T, ApiError> + Send + 'static,
    {
        let store = Arc::clone(&self.0.store);
        tokio::task::spawn_blocking(move || f(&store)).await?
    }
}

async fn log_request(req: Request, next: Next) -> Response {
    let method = req.method().clone();
    let path = req.uri().path().to_string();
    let started = Instant::now();
    let response = next.run(req).await;
    tracing::info!(
        %method,
        %path,
        status = response.status().as_u16(),
        millis = started.elapsed().as_millis() as u64,
        "request"
    );
    response
}

async fn fallback() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, codes::NOT_FOUND, "no such endpoint")
}

/// The complete router, with every endpoint under `/mockboard/api`.
pub fn router(state: AppState) -> Router {
    Router::new()
        .nest(API_PREFIX, routes::api())
        .fallback(fallback)
        .layer(middleware::from_fn(log_request))
        .with_state(state)
}

pub fn open_store(config: &ServerConfig) -> Result<Store, StoreError> {
    Store::open(&config.data_dir, config.store_config())
}

/// Serves until `shutdown` resolves. Expired attempts are swept once a
/// minute so reports do not wait for an examinee to come back.
pub async fn serve(
    listener: TcpListener,
    state: AppState,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    let sweeper = {
        let state = state.clone();
        tokio::spawn(async move {
            let mut tick = tokio::time::interval(Duration::from_secs(60));
            loop {
                tick.tick().await;
                let now = state.now();
                if let Err(e) = state
                    .blocking(move |store| Ok(store.finalize_expired(None, now)?))
                    .await
                {
                    tracing::warn!(error = %e.body.message, "expiry sweep failed");
                }
            }
        })
    };
    let result = axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await;
    sweeper.abort();
    result
}
