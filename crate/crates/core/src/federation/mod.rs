//! Harvesting catalogues from several portals into one searchable catalogue.

mod catalog;
mod harvest;
mod source;

use thiserror::Error;

pub use catalog::{FederatedCatalog, SearchQuery};
pub use harvest::{CatalogRecord, Harvester, split_datasets};
pub use source::{FetchResponse, Fetcher, HttpFetcher, SourcePortal, load_registry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FederationError {
    #[error("fetching '{source_id}' failed: {reason}")]
    FetchFailed { source_id: String, reason: String },
    #[error("'{source_id}' served unparseable RDF: {reason}")]
    ParseFailed { source_id: String, reason: String },
    #[error("source registry: {0}")]
    Registry(String),
    #[error("a search needs at least one criterion")]
    EmptyQuery,
}
