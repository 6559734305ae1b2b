use std::sync::Arc;

use axum::Router;
use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{HeaderMap, HeaderValue, StatusCode, header};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use mdcat_core::federation::{CatalogRecord, SearchQuery};
use mdcat_core::io::{PrefixMap, SerializationFormat, serialize};
use mdcat_core::publish::{
    AcceptPreference, PublishError, Representation, StructuredRecord, negotiate, record_to_graph, render,
    resolve_version_route, validate_document, version_graph,
};
use mdcat_core::rdf::ns::dct;
use mdcat_core::rdf::{Graph, Iri, Term};
use mdcat_core::shacl::{Severity, report_to_graph};
use mdcat_core::vocab::{scheme_to_graph, slug};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::state::AppState;

type Shared = Arc<AppState>;

const JSON: &str = "application/json";
const RDF: [Representation; 3] = [
    Representation::Rdf(SerializationFormat::Turtle),
    Representation::Rdf(SerializationFormat::JsonLd),
    Representation::Rdf(SerializationFormat::NTriples),
];

pub fn router(state: Shared) -> Router {
    Router::new()
        .route("/mobilitydcat-ap", get(specification))
        .route("/mobilitydcat-ap/", get(specification))
        .route("/mobilitydcat-ap/{version}", get(specification))
        .route("/mobilitydcat-ap/{version}/", get(specification))
        .route("/api/profile", get(profile))
        .route("/api/records", get(records))
        .route("/api/records/{id}", get(record))
        .route("/api/sources", get(sources))
        .route("/api/validate", post(validate))
        .route("/api/serialize", post(serialize_record))
        .route("/api/vocabularies", get(vocabularies))
        .route("/api/vocabularies/{name}", get(vocabulary))
        .with_state(state)
}

/// An error answered as `{"error": "..."}`.
struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }
}

impl From<PublishError> for ApiError {
    fn from(e: PublishError) -> Self {
        let status = StatusCode::from_u16(e.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        ApiError::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, [(header::VARY, "Accept")], axum::Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult = Result<Response, ApiError>;

fn accept(headers: &HeaderMap) -> Result<AcceptPreference, ApiError> {
    let header = headers.get(header::ACCEPT).map(|v| v.to_str().unwrap_or("\u{0}"));
    Ok(AcceptPreference::parse(header)?)
}

fn body(representation: Representation, text: String) -> Response {
    let media = match representation {
        Representation::Html => "text/html; charset=utf-8",
        r => r.media_type(),
    };
    ([(header::CONTENT_TYPE, media), (header::VARY, "Accept")], text).into_response()
}

fn json_body<T: Serialize>(value: &T) -> Response {
    ([(header::VARY, "Accept")], axum::Json(value)).into_response()
}

/// JSON unless the client ranks an RDF serialization above it. `None` is JSON.
fn json_or_rdf(headers: &HeaderMap) -> Result<Option<SerializationFormat>, ApiError> {
    let accept = accept(headers)?;
    let json_q = accept.quality(JSON);
    let rdf = negotiate(&accept, &RDF).ok();
    match rdf {
        Some(Representation::Rdf(f)) if accept.quality(f.media_type()) > json_q => Ok(Some(f)),
        _ if json_q > 0 => Ok(None),
        _ => Err(PublishError::NotAcceptable.into()),
    }
}

async fn specification(State(_): State<Shared>, uri: axum::http::Uri, headers: HeaderMap) -> ApiResult {
    let route = resolve_version_route(uri.path())?;
    if route.redirect {
        let location = HeaderValue::from_str(&route.versioned_path()).expect("versioned paths are header-safe");
        return Ok((StatusCode::SEE_OTHER, [(header::LOCATION, location), (header::VARY, HeaderValue::from_static("Accept"))])
            .into_response());
    }
    let representation = negotiate(&accept(&headers)?, &Representation::ALL)?;
    let graph = version_graph(route.version)?;
    let title = format!("mobilityDCAT-AP {}", route.version);
    Ok(body(representation, render(&graph, representation, &title, &PrefixMap::common())))
}

async fn profile(State(state): State<Shared>) -> Response {
    json_body(&state.profile)
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase")]
struct SearchParams {
    text: Option<String>,
    theme: Option<String>,
    transport_mode: Option<String>,
    publisher: Option<String>,
    standard: Option<String>,
}

impl SearchParams {
    fn to_query(&self) -> Result<SearchQuery, ApiError> {
        let iri = |name: &str, value: &Option<String>| -> Result<Option<Iri>, ApiError> {
            value
                .as_deref()
                .map(|v| Iri::new(v).map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, format!("{name}: {e}"))))
                .transpose()
        };
        Ok(SearchQuery {
            text: self.text.clone(),
            theme: iri("theme", &self.theme)?,
            transport_mode: iri("transportMode", &self.transport_mode)?,
            publisher: self.publisher.clone(),
            standard: iri("standard", &self.standard)?,
        })
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct RecordSummary<'a> {
    dataset: &'a str,
    source: &'a str,
    title: Option<&'a str>,
    conforms: bool,
    violations: usize,
    harvested_at: String,
}

impl<'a> RecordSummary<'a> {
    fn of(record: &'a CatalogRecord) -> Self {
        let subject = Term::Iri(record.dataset_iri.clone());
        let title = record
            .graph
            .objects(&subject, &Iri::from_static(dct::TITLE))
            .into_iter()
            .filter_map(|t| t.as_literal())
            .map(|l| l.lexical())
            .next();
        RecordSummary {
            dataset: record.dataset_iri.as_str(),
            source: &record.source_id,
            title,
            conforms: record.validation.conforms,
            violations: record.validation.results.iter().filter(|r| r.severity == Severity::Violation).count(),
            harvested_at: record.harvested_at.to_rfc3339(),
        }
    }
}

/// Lists the catalogue, or searches it when any criterion is given.
async fn records(State(state): State<Shared>, Query(params): Query<SearchParams>) -> ApiResult {
    let catalog = state.catalog();
    let query = params.to_query()?;
    let found: Vec<&CatalogRecord> = if query.is_empty() {
        catalog.records().collect()
    } else {
        catalog.search(&query).map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.to_string()))?
    };
    let summaries: Vec<RecordSummary> = found.into_iter().map(RecordSummary::of).collect();
    Ok(json_body(&summaries))
}

#[derive(Debug, Deserialize)]
struct RecordParams {
    source: Option<String>,
}

/// One dataset, from one source or merged over all of them.
async fn record(
    State(state): State<Shared>,
    Path(id): Path<String>,
    Query(params): Query<RecordParams>,
    headers: HeaderMap,
) -> ApiResult {
    let iri = Iri::new(id.as_str()).map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, format!("'{id}': {e}")))?;
    let representation = negotiate(&accept(&headers)?, &Representation::ALL)?;
    let catalog = state.catalog();
    let mut graph = Graph::new();
    let mut found = false;
    for r in catalog.by_dataset(&iri).filter(|r| params.source.as_ref().is_none_or(|s| *s == r.source_id)) {
        graph.extend_from(&r.graph);
        found = true;
    }
    if !found {
        return Err(ApiError::new(StatusCode::NOT_FOUND, format!("no record for '{id}'")));
    }
    Ok(body(representation, render(&graph, representation, iri.as_str(), &PrefixMap::common())))
}

async fn sources(State(state): State<Shared>) -> Response {
    json_body(&state.sources())
}

fn utf8(bytes: &Bytes) -> Result<&str, ApiError> {
    std::str::from_utf8(bytes).map_err(|_| ApiError::new(StatusCode::BAD_REQUEST, "body is not UTF-8"))
}

/// Validates an RDF body named by its Content-Type against the active shapes.
async fn validate(State(state): State<Shared>, headers: HeaderMap, bytes: Bytes) -> ApiResult {
    let content_type = headers.get(header::CONTENT_TYPE).and_then(|v| v.to_str().ok()).unwrap_or("");
    let format = SerializationFormat::from_media_type(content_type).map_err(|_| {
        ApiError::new(StatusCode::UNSUPPORTED_MEDIA_TYPE, format!("unsupported content type '{content_type}'"))
    })?;
    let out = json_or_rdf(&headers)?;
    let report = validate_document(utf8(&bytes)?, format, &state.shapes, &state.vocabularies)?;
    Ok(match out {
        None => json_body(&report),
        Some(f) => body(Representation::Rdf(f), serialize(&report_to_graph(&report), f, &PrefixMap::common())),
    })
}

#[derive(Debug, Deserialize)]
struct SerializeParams {
    format: Option<String>,
}

/// Turns a structured record into RDF. `?format=` wins over Accept.
async fn serialize_record(
    State(state): State<Shared>,
    Query(params): Query<SerializeParams>,
    headers: HeaderMap,
    bytes: Bytes,
) -> ApiResult {
    let format = match &params.format {
        Some(name) => SerializationFormat::from_extension(name)
            .or_else(|| SerializationFormat::from_media_type(name).ok())
            .ok_or_else(|| ApiError::new(StatusCode::BAD_REQUEST, format!("unknown format '{name}'")))?,
        None => match negotiate(&accept(&headers)?, &RDF)? {
            Representation::Rdf(f) => f,
            Representation::Html => unreachable!("only RDF is offered"),
        },
    };
    let record: StructuredRecord = serde_json::from_str(utf8(&bytes)?)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, format!("record: {e}")))?;
    let graph = record_to_graph(&record, &state.profile)?;
    let mut prefixes = PrefixMap::common();
    for (label, ns) in state.profile.prefixes.iter() {
        let _ = prefixes.insert(label, ns.clone());
    }
    Ok(body(Representation::Rdf(format), serialize(&graph, format, &prefixes)))
}

#[derive(Debug, Serialize)]
struct VocabularySummary<'a> {
    name: &'a str,
    iri: &'a str,
    title: &'a str,
    version: String,
    concepts: usize,
}

async fn vocabularies(State(state): State<Shared>) -> Response {
    let list: Vec<VocabularySummary> = state
        .vocabularies
        .iter()
        .map(|(_, s)| VocabularySummary {
            name: slug(&s.iri),
            iri: s.iri.as_str(),
            title: &s.title,
            version: s.version.to_string(),
            concepts: s.len(),
        })
        .collect();
    json_body(&list)
}

async fn vocabulary(State(state): State<Shared>, Path(name): Path<String>, headers: HeaderMap) -> ApiResult {
    let scheme = state
        .vocabularies
        .get(&name)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no vocabulary '{name}'")))?;
    Ok(match json_or_rdf(&headers)? {
        None => json_body(scheme),
        Some(f) => body(Representation::Rdf(f), serialize(&scheme_to_graph(scheme), f, &PrefixMap::common())),
    })
}
