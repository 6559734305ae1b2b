use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use super::FederationError;
use super::harvest::CatalogRecord;
use crate::rdf::ns::{dcat, dct, foaf, mobility, rdfs};
use crate::rdf::{Graph, Iri, Term};

/// Conjunctive search criteria.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchQuery {
    pub text: Option<String>,
    pub theme: Option<Iri>,
    pub transport_mode: Option<Iri>,
    pub publisher: Option<String>,
    pub standard: Option<Iri>,
}

impl SearchQuery {
    pub fn is_empty(&self) -> bool {
        self.text.is_none()
            && self.theme.is_none()
            && self.transport_mode.is_none()
            && self.publisher.is_none()
            && self.standard.is_none()
    }
}

/// What search looks at in one record.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct IndexEntry {
    text: Vec<String>,
    themes: BTreeSet<Iri>,
    transport_modes: BTreeSet<Iri>,
    publishers: BTreeSet<String>,
    standards: BTreeSet<Iri>,
}

impl IndexEntry {
    fn build(record: &CatalogRecord) -> Self {
        let g = &record.graph;
        let subject = Term::Iri(record.dataset_iri.clone());
        let iris = |node: &Term, property: &'static str| -> Vec<Iri> {
            g.objects(node, &Iri::from_static(property)).into_iter().filter_map(|t| t.as_iri().cloned()).collect()
        };
        let mut entry = IndexEntry::default();
        for property in [dct::TITLE, dct::DESCRIPTION] {
            entry.text.extend(literals(g, &subject, property).map(|l| l.to_lowercase()));
        }
        entry.themes.extend(iris(&subject, mobility::MOBILITY_THEME));
        entry.themes.extend(iris(&subject, dcat::THEME));
        entry.transport_modes.extend(iris(&subject, mobility::TRANSPORT_MODE));
        for publisher in g.objects(&subject, &Iri::from_static(dct::PUBLISHER)) {
            match publisher {
                Term::Literal(l) => {
                    entry.publishers.insert(l.lexical().to_lowercase());
                }
                node => {
                    if let Term::Iri(iri) = node {
                        entry.publishers.insert(iri.as_str().to_lowercase());
                    }
                    for property in [foaf::NAME, rdfs::LABEL, dct::TITLE] {
                        entry.publishers.extend(literals(g, node, property).map(|l| l.to_lowercase()));
                    }
                }
            }
        }
        let distributions = g.objects(&subject, &Iri::from_static(dcat::DISTRIBUTION_LINK));
        for node in std::iter::once(&subject).chain(distributions) {
            entry.standards.extend(iris(node, mobility::MOBILITY_DATA_STANDARD));
            entry.standards.extend(iris(node, dct::CONFORMS_TO));
        }
        entry
    }

    fn matches(&self, q: &SearchQuery) -> bool {
        q.text.as_ref().is_none_or(|t| {
            let needle = t.to_lowercase();
            self.text.iter().any(|s| s.contains(&needle))
        }) && q.theme.as_ref().is_none_or(|t| self.themes.contains(t))
            && q.transport_mode.as_ref().is_none_or(|t| self.transport_modes.contains(t))
            && q.publisher.as_ref().is_none_or(|p| self.publishers.contains(&p.to_lowercase()))
            && q.standard.as_ref().is_none_or(|s| self.standards.contains(s))
    }
}

fn literals<'g>(g: &'g Graph, node: &Term, property: &'static str) -> impl Iterator<Item = &'g str> {
    g.objects(node, &Iri::from_static(property)).into_iter().filter_map(|t| t.as_literal()).map(|l| l.lexical())
}

/// Harvested records keyed by (dataset, source), with a search index.
#[derive(Debug, Clone, Default)]
pub struct FederatedCatalog {
    records: BTreeMap<(Iri, String), CatalogRecord>,
    index: BTreeMap<(Iri, String), IndexEntry>,
}

impl FederatedCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records ordered by dataset IRI, then source id.
    pub fn records(&self) -> impl Iterator<Item = &CatalogRecord> {
        self.records.values()
    }

    pub fn get(&self, dataset: &Iri, source_id: &str) -> Option<&CatalogRecord> {
        self.records.get(&(dataset.clone(), source_id.to_owned()))
    }

    /// Every source's record for a dataset.
    pub fn by_dataset<'a>(&'a self, dataset: &'a Iri) -> impl Iterator<Item = &'a CatalogRecord> {
        self.records
            .range((dataset.clone(), String::new())..)
            .take_while(move |((d, _), _)| d == dataset)
            .map(|(_, r)| r)
    }

    /// Upserts by (dataset, source); an older record never replaces a newer one.
    pub fn merge(&mut self, records: impl IntoIterator<Item = CatalogRecord>) {
        for record in records {
            let key = (record.dataset_iri.clone(), record.source_id.clone());
            if self.records.get(&key).is_some_and(|old| old.harvested_at > record.harvested_at) {
                continue;
            }
            self.index.insert(key.clone(), IndexEntry::build(&record));
            self.records.insert(key, record);
        }
    }

    /// Drops every record from `source_id`.
    pub fn remove_source(&mut self, source_id: &str) {
        self.records.retain(|(_, s), _| s != source_id);
        self.index.retain(|(_, s), _| s != source_id);
    }

    pub fn search(&self, query: &SearchQuery) -> Result<Vec<&CatalogRecord>, FederationError> {
        if query.is_empty() {
            return Err(FederationError::EmptyQuery);
        }
        Ok(self
            .index
            .iter()
            .filter(|(_, entry)| entry.matches(query))
            .map(|(key, _)| &self.records[key])
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use chrono::{TimeZone, Utc};

    use super::*;
    use crate::io::parse_turtle;
    use crate::shacl::ValidationReport;

    fn record(source: &str, ttl: &str, hour: u32) -> CatalogRecord {
        let (graph, _) = parse_turtle(
            &format!(
                "@prefix dcat: <http://www.w3.org/ns/dcat#> . @prefix dct: <http://purl.org/dc/terms/> . @prefix ex: <https://ex.org/> .
                 @prefix m: <https://w3id.org/mobilitydcat-ap#> . @prefix foaf: <http://xmlns.com/foaf/0.1/> .\n{ttl}"
            ),
            None,
        )
        .unwrap();
        let dataset = graph.subject_terms().into_iter().next().unwrap().as_iri().unwrap().clone();
        CatalogRecord {
            dataset_iri: dataset,
            source_id: source.to_owned(),
            graph,
            validation: ValidationReport::from_results(Vec::new()),
            harvested_at: Utc.with_ymd_and_hms(2024, 5, 1, hour, 0, 0).unwrap(),
        }
    }

    fn fixture() -> FederatedCatalog {
        let mut c = FederatedCatalog::new();
        c.merge([
            record("p1", "ex:a dct:title \"Bike share\" ; m:mobilityTheme ex:T ; dct:publisher ex:x . ex:x foaf:name \"X\" .", 1),
            record("p1", "ex:b dct:title \"Bus GTFS\" ; m:mobilityTheme ex:T ; dct:publisher \"Y\" .", 1),
            record("p2", "ex:c dct:title \"Parking\" ; dct:description \"Bicycle and bike racks\" ; m:mobilityTheme ex:U .", 1),
        ]);
        c
    }

    fn ids(results: Vec<&CatalogRecord>) -> Vec<&str> {
        results.into_iter().map(|r| r.dataset_iri.local_name()).collect()
    }

    #[test]
    fn theme_text_and_conjunction() {
        let c = fixture();
        let theme = |t: &'static str| SearchQuery { theme: Some(Iri::from_static(t)), ..Default::default() };
        assert_eq!(ids(c.search(&theme("https://ex.org/T")).unwrap()), ["a", "b"]);
        let text = SearchQuery { text: Some("BIKE".into()), ..Default::default() };
        assert_eq!(ids(c.search(&text).unwrap()), ["a", "c"]);
        let both = SearchQuery { publisher: Some("x".into()), ..theme("https://ex.org/T") };
        assert_eq!(ids(c.search(&both).unwrap()), ["a"]);
        assert!(c.search(&theme("https://ex.org/none")).unwrap().is_empty());
        assert!(matches!(c.search(&SearchQuery::default()), Err(FederationError::EmptyQuery)));
    }

    #[test]
    fn upsert_keeps_newest_and_provenance() {
        let mut c = fixture();
        c.merge([record("p1", "ex:a dct:title \"Bike share v2\" .", 2)]);
        assert_eq!(c.len(), 3);
        let title = SearchQuery { text: Some("v2".into()), ..Default::default() };
        assert_eq!(c.search(&title).unwrap().len(), 1);
        c.merge([record("p1", "ex:a dct:title \"stale\" .", 0)]);
        assert!(c.search(&SearchQuery { text: Some("stale".into()), ..Default::default() }).unwrap().is_empty());
        c.merge([record("p2", "ex:a dct:title \"Bike share\" .", 1)]);
        assert_eq!(c.len(), 4);
        assert_eq!(c.by_dataset(&Iri::from_static("https://ex.org/a")).count(), 2);
    }
}
