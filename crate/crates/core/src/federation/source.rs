use std::collections::BTreeSet;
use std::time::Duration;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::FederationError;
use crate::io::SerializationFormat;
use crate::rdf::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SourcePortal {
    pub id: String,
    pub endpoint_url: Iri,
    pub preferred_format: SerializationFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_etag: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_harvest: Option<DateTime<Utc>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RegistryFile {
    Wrapped { sources: Vec<SourcePortal> },
    Bare(Vec<SourcePortal>),
}

/// Reads a source registry: a JSON array of sources, or `{"sources": [...]}`.
pub fn load_registry(json: &str) -> Result<Vec<SourcePortal>, FederationError> {
    let file: RegistryFile = serde_json::from_str(json).map_err(|e| FederationError::Registry(e.to_string()))?;
    let sources = match file {
        RegistryFile::Wrapped { sources } | RegistryFile::Bare(sources) => sources,
    };
    let mut ids = BTreeSet::new();
    for s in &sources {
        if s.id.trim().is_empty() {
            return Err(FederationError::Registry("source with an empty id".into()));
        }
        if !ids.insert(s.id.as_str()) {
            return Err(FederationError::Registry(format!("duplicate source id '{}'", s.id)));
        }
        if oxiri::Iri::parse(s.endpoint_url.as_str()).is_err() {
            return Err(FederationError::Registry(format!("endpoint of '{}' is not absolute", s.id)));
        }
    }
    Ok(sources)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchResponse {
    pub status: u16,
    pub etag: Option<String>,
    pub content_type: Option<String>,
    pub body: String,
}

/// Conditional HTTP GET.
pub trait Fetcher {
    fn get(&self, url: &str, accept: &str, if_none_match: Option<&str>) -> Result<FetchResponse, String>;
}

/// A blocking fetcher over HTTP(S).
pub struct HttpFetcher {
    agent: ureq::Agent,
}

impl HttpFetcher {
    pub fn new(timeout: Duration) -> Self {
        let config = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(timeout))
            .build();
        HttpFetcher { agent: config.into() }
    }
}

impl Default for HttpFetcher {
    fn default() -> Self {
        Self::new(Duration::from_secs(30))
    }
}

impl Fetcher for HttpFetcher {
    fn get(&self, url: &str, accept: &str, if_none_match: Option<&str>) -> Result<FetchResponse, String> {
        let mut request = self.agent.get(url).header("Accept", accept);
        if let Some(etag) = if_none_match {
            request = request.header("If-None-Match", etag);
        }
        let mut response = request.call().map_err(|e| e.to_string())?;
        let header = |name: &str| response.headers().get(name).and_then(|v| v.to_str().ok()).map(str::to_owned);
        let etag = header("etag");
        let content_type = header("content-type");
        let status = response.status().as_u16();
        let body = if status == 304 {
            String::new()
        } else {
            response.body_mut().read_to_string().map_err(|e| e.to_string())?
        };
        Ok(FetchResponse {
            status,
            etag,
            content_type,
            body,
        })
    }
}
