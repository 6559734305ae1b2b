use std::collections::{BTreeSet, VecDeque};

use chrono::{DateTime, Utc};

use super::FederationError;
use super::source::{Fetcher, SourcePortal};
use crate::io::{SerializationFormat, parse};
use crate::rdf::ns::{dcat, rdf};
use crate::rdf::{Graph, Iri, Term};
use crate::shacl::{ConceptLookup, ShapeSet, ValidationReport, validate_with};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRecord {
    pub dataset_iri: Iri,
    pub source_id: String,
    /// The dataset's description subgraph.
    pub graph: Graph,
    pub validation: ValidationReport,
    pub harvested_at: DateTime<Utc>,
}

/// Splits a graph into one description per IRI-named `dcat:Dataset`: the
/// triples reachable from the dataset, not expanding through other datasets.
pub fn split_datasets(graph: &Graph) -> Vec<(Iri, Graph)> {
    let dataset_type = Term::Iri(Iri::from_static(dcat::DATASET));
    let datasets: BTreeSet<&Term> = graph
        .subjects(&Iri::from_static(rdf::TYPE), &dataset_type)
        .into_iter()
        .filter(|t| t.is_iri())
        .collect();
    let mut out = Vec::new();
    for &root in &datasets {
        let mut sub = Graph::new();
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(node) = queue.pop_front() {
            for triple in graph.outgoing(node) {
                sub.insert(triple.clone());
                let object = triple.object();
                if !object.is_literal() && !datasets.contains(object) && seen.insert(object) {
                    queue.push_back(object);
                }
            }
        }
        out.push((root.as_iri().expect("filtered to IRIs").clone(), sub));
    }
    out
}

/// Harvests sources and validates what they serve.
pub struct Harvester<'a> {
    pub shapes: &'a ShapeSet,
    pub concepts: &'a dyn ConceptLookup,
}

impl Harvester<'_> {
    /// One conditional GET of `source`. A 304 gives no records and the source
    /// unchanged.
    pub fn harvest(
        &self,
        source: &SourcePortal,
        fetcher: &dyn Fetcher,
        now: DateTime<Utc>,
    ) -> Result<(Vec<CatalogRecord>, SourcePortal), FederationError> {
        let failed = |reason: String| FederationError::FetchFailed {
            source_id: source.id.clone(),
            reason,
        };
        let response = fetcher
            .get(source.endpoint_url.as_str(), source.preferred_format.media_type(), source.last_etag.as_deref())
            .map_err(&failed)?;
        match response.status {
            304 => return Ok((Vec::new(), source.clone())),
            200 => {}
            status => return Err(failed(format!("HTTP status {status}"))),
        }
        let format = response
            .content_type
            .as_deref()
            .and_then(|ct| SerializationFormat::from_media_type(ct).ok())
            .unwrap_or(source.preferred_format);
        let (graph, _) = parse(&response.body, format, Some(&source.endpoint_url)).map_err(|e| FederationError::ParseFailed {
            source_id: source.id.clone(),
            reason: e.to_string(),
        })?;
        let records = split_datasets(&graph)
            .into_iter()
            .map(|(dataset_iri, sub)| CatalogRecord {
                validation: validate_with(&sub, self.shapes, self.concepts),
                dataset_iri,
                source_id: source.id.clone(),
                graph: sub,
                harvested_at: now,
            })
            .collect();
        let mut updated = source.clone();
        updated.last_etag = response.etag;
        updated.last_harvest = Some(now);
        Ok((records, updated))
    }
}
