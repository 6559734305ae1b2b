//! Three fixture portals behind a mock fetcher.

use std::cell::RefCell;
use std::collections::BTreeMap;

use chrono::{DateTime, TimeZone, Utc};

use mdcat_core::federation::{FederatedCatalog, FetchResponse, Fetcher, Harvester, SourcePortal};
use mdcat_core::io::SerializationFormat;
use mdcat_core::rdf::Iri;
use mdcat_core::shacl::{ShapeSet, mobility_shapes};
use mdcat_core::vocab::{Vocabularies, load_bundled_vocabularies};

const PORTAL_A: &str = include_str!("../fixtures/federation/portal-a.ttl");
const PORTAL_B: &str = include_str!("../fixtures/federation/portal-b.nt");
const PORTAL_C: &str = include_str!("../fixtures/federation/portal-c.jsonld");

pub struct Portal {
    pub body: &'static str,
    pub content_type: &'static str,
    pub etag: Option<&'static str>,
}

/// Serves fixture bodies and logs each request.
pub struct MockFetcher {
    pub portals: BTreeMap<&'static str, Portal>,
    pub log: RefCell<Vec<(String, String, Option<String>)>>,
}

impl MockFetcher {
    pub fn new() -> Self {
        let mut portals = BTreeMap::new();
        portals.insert(
            "https://nap-a.example.org/catalog",
            Portal {
                body: PORTAL_A,
                content_type: "text/turtle; charset=utf-8",
                etag: Some("\"a-v1\""),
            },
        );
        portals.insert(
            "https://nap-b.example.org/catalog",
            Portal {
                body: PORTAL_B,
                content_type: "application/n-triples",
                etag: None,
            },
        );
        portals.insert(
            "https://nap-c.example.org/catalog",
            Portal {
                body: PORTAL_C,
                content_type: "application/ld+json",
                etag: None,
            },
        );
        MockFetcher {
            portals,
            log: RefCell::new(Vec::new()),
        }
    }
}

impl Fetcher for MockFetcher {
    fn get(&self, url: &str, accept: &str, if_none_match: Option<&str>) -> Result<FetchResponse, String> {
        self.log.borrow_mut().push((url.to_owned(), accept.to_owned(), if_none_match.map(str::to_owned)));
        let Some(portal) = self.portals.get(url) else {
            return Ok(FetchResponse {
                status: 404,
                etag: None,
                content_type: None,
                body: String::new(),
            });
        };
        if portal.etag.is_some() && portal.etag == if_none_match {
            return Ok(FetchResponse {
                status: 304,
                etag: portal.etag.map(str::to_owned),
                content_type: None,
                body: String::new(),
            });
        }
        Ok(FetchResponse {
            status: 200,
            etag: portal.etag.map(str::to_owned),
            content_type: Some(portal.content_type.to_owned()),
            body: portal.body.to_owned(),
        })
    }
}

pub fn source(id: &str, host: &str, format: SerializationFormat) -> SourcePortal {
    SourcePortal {
        id: id.to_owned(),
        endpoint_url: Iri::new(format!("https://{host}/catalog")).unwrap(),
        preferred_format: format,
        last_etag: None,
        last_harvest: None,
    }
}

pub fn sources() -> Vec<SourcePortal> {
    vec![
        source("nap-a", "nap-a.example.org", SerializationFormat::Turtle),
        source("nap-b", "nap-b.example.org", SerializationFormat::NTriples),
        source("nap-c", "nap-c.example.org", SerializationFormat::JsonLd),
    ]
}

pub fn at(hour: u32) -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2024, 6, 1, hour, 0, 0).unwrap()
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub struct Setup {
    pub shapes: ShapeSet,
    pub vocabularies: Vocabularies,
}

impl Setup {
    pub fn new() -> Self {
        Setup {
            shapes: mobility_shapes(),
            vocabularies: load_bundled_vocabularies().unwrap(),
        }
    }

    pub fn harvester(&self) -> Harvester<'_> {
        Harvester {
            shapes: &self.shapes,
            concepts: &self.vocabularies,
        }
    }
}

pub fn harvest_all(
    harvester: &Harvester<'_>,
    fetcher: &MockFetcher,
    sources: &mut [SourcePortal],
    catalog: &mut FederatedCatalog,
    now: DateTime<Utc>,
) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for s in sources.iter_mut() {
        let (records, updated) = harvester.harvest(s, fetcher, now).unwrap();
        counts.insert(s.id.clone(), records.len());
        catalog.merge(records);
        *s = updated;
    }
    counts
}

