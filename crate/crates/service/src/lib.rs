//! HTTP service over the mobilityDCAT-AP toolkit: the federated catalogue,
//! validation and serialization for form clients, controlled vocabularies and
//! the versioned specification resources.

mod config;
mod routes;
mod state;

use std::sync::Arc;
use std::time::Duration;

use mdcat_core::federation::HttpFetcher;
use thiserror::Error;

pub use config::{BIND_ENV, DEFAULT_BIND, ServiceConfig};
pub use routes::router;
pub use state::AppState;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Loads `config`, harvests the registered sources in the background and
/// serves until the process ends.
pub async fn serve(config: &ServiceConfig) -> Result<(), ServiceError> {
    let state = Arc::new(AppState::from_config(config)?);
    let address = config.bind_address(std::env::var(BIND_ENV).ok())?;
    let timeout = Duration::from_secs(config.harvest_timeout_secs.unwrap_or(30));
    if !state.sources().is_empty() {
        let harvesting = state.clone();
        tokio::task::spawn_blocking(move || {
            let fetcher = HttpFetcher::new(timeout);
            for error in harvesting.harvest(&fetcher, chrono::Utc::now()) {
                eprintln!("harvest: {error}");
            }
            eprintln!("harvest: {} records", harvesting.catalog().len());
        });
    }
    let listener = tokio::net::TcpListener::bind(address).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await?;
    Ok(())
}
