//! Random catalogs whose expected search hits are computed from the spec
//! alone.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use mdcat_core::federation::{CatalogRecord, FederatedCatalog, SearchQuery};
use mdcat_core::rdf::{Graph, Iri, Literal, Term};
use mdcat_core::shacl::ValidationReport;

use super::portals::{at, iri};

const DCAT: &str = "http://www.w3.org/ns/dcat#";
const DCT: &str = "http://purl.org/dc/terms/";
const FOAF_NAME: &str = "http://xmlns.com/foaf/0.1/name";
const MOB: &str = "https://w3id.org/mobilitydcat-ap#";
const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

const WORDS: [&str; 6] = ["Bike", "bus", "Parking", "rail", "TRAFFIC", "ferry"];
pub const PUBLISHERS: [&str; 3] = ["Agency One", "agency two", "City"];

#[derive(Debug, Clone)]
pub struct Spec {
    pub dataset: usize,
    pub source: usize,
    pub title: Vec<usize>,
    pub description: Vec<usize>,
    pub themes: BTreeSet<usize>,
    pub modes: BTreeSet<usize>,
    pub standards: BTreeSet<usize>,
    /// 0: literal, 1: named IRI node, 2: blank node with a name
    pub publisher: Option<(usize, u8)>,
    pub hour: u32,
}

pub fn spec_strategy() -> impl Strategy<Value = Spec> {
    (
        (0..8usize, 0..3usize, prop::collection::vec(0..6usize, 0..3), prop::collection::vec(0..6usize, 0..3)),
        (
            prop::collection::btree_set(0..4usize, 0..3),
            prop::collection::btree_set(0..3usize, 0..2),
            prop::collection::btree_set(0..3usize, 0..3),
            prop::option::of((0..3usize, 0..3u8)),
            0..4u32,
        ),
    )
        .prop_map(|((dataset, source, title, description), (themes, modes, standards, publisher, hour))| Spec {
            dataset,
            source,
            title,
            description,
            themes,
            modes,
            standards,
            publisher,
            hour,
        })
}

pub fn t(s: &str) -> Term {
    Term::Iri(iri(s))
}

pub fn ex(kind: &str, n: usize) -> Term {
    t(&format!("https://ex.org/{kind}/{n}"))
}

pub fn build(spec: &Spec) -> CatalogRecord {
    let mut g = Graph::new();
    let d = ex("dataset", spec.dataset);
    g.add(d.clone(), iri(RDF_TYPE), t(&format!("{DCAT}Dataset")));
    let words = |ix: &[usize]| ix.iter().map(|&i| WORDS[i]).collect::<Vec<_>>().join(" ");
    if !spec.title.is_empty() {
        g.add(d.clone(), iri(&format!("{DCT}title")), Literal::string(words(&spec.title)));
    }
    if !spec.description.is_empty() {
        g.add(d.clone(), iri(&format!("{DCT}description")), Literal::lang_string(words(&spec.description), "en").unwrap());
    }
    for &th in &spec.themes {
        let p = if th % 2 == 0 { format!("{MOB}mobilityTheme") } else { format!("{DCAT}theme") };
        g.add(d.clone(), iri(&p), ex("theme", th));
    }
    for &m in &spec.modes {
        g.add(d.clone(), iri(&format!("{MOB}transportMode")), ex("mode", m));
    }
    for &s in &spec.standards {
        // alternate between the dataset and a distribution, and between the two properties
        let p = if s == 1 { format!("{DCT}conformsTo") } else { format!("{MOB}mobilityDataStandard") };
        if s == 2 {
            let dist = ex("distribution", spec.dataset);
            g.add(d.clone(), iri(&format!("{DCAT}distribution")), dist.clone());
            g.add(dist, iri(&p), ex("standard", s));
        } else {
            g.add(d.clone(), iri(&p), ex("standard", s));
        }
    }
    if let Some((p, form)) = spec.publisher {
        let name = Literal::string(PUBLISHERS[p]);
        match form {
            0 => {
                g.add(d.clone(), iri(&format!("{DCT}publisher")), name);
            }
            _ => {
                let node = if form == 1 { ex("agent", p) } else { Term::blank(format!("agent{p}")).unwrap() };
                g.add(d.clone(), iri(&format!("{DCT}publisher")), node.clone());
                g.add(node, iri(FOAF_NAME), name);
            }
        }
    }
    CatalogRecord {
        dataset_iri: d.as_iri().unwrap().clone(),
        source_id: format!("src{}", spec.source),
        graph: g,
        validation: ValidationReport::from_results(Vec::new()),
        harvested_at: at(spec.hour),
    }
}

pub fn query_strategy() -> impl Strategy<Value = SearchQuery> {
    (
        prop::option::of(prop_oneof![
            (0..6usize).prop_map(|i| WORDS[i].to_lowercase()),
            (0..6usize).prop_map(|i| WORDS[i][1..3].to_uppercase()),
        ]),
        prop::option::of(0..5usize),
        prop::option::of(0..4usize),
        prop::option::of((0..4usize, any::<bool>())),
        prop::option::of(0..4usize),
    )
        .prop_map(|(text, theme, mode, publisher, standard)| SearchQuery {
            text,
            theme: theme.map(|i| ex("theme", i).as_iri().unwrap().clone()),
            transport_mode: mode.map(|i| ex("mode", i).as_iri().unwrap().clone()),
            publisher: publisher.map(|(i, upper)| {
                let name = PUBLISHERS.get(i).copied().unwrap_or("Nobody");
                if upper { name.to_uppercase() } else { name.to_owned() }
            }),
            standard: standard.map(|i| ex("standard", i).as_iri().unwrap().clone()),
        })
        .prop_filter("at least one criterion", |q| !q.is_empty())
}

/// Expected hits worked out from the specs alone.
pub fn oracle(specs: &[Spec], q: &SearchQuery) -> Vec<(Iri, String)> {
    let mut winners: BTreeMap<(usize, usize), &Spec> = BTreeMap::new();
    for s in specs {
        let slot = winners.entry((s.dataset, s.source)).or_insert(s);
        if s.hour >= slot.hour {
            *slot = s;
        }
    }
    let term_iri = |kind: &str, n: usize| ex(kind, n).as_iri().unwrap().clone();
    let mut hits: Vec<(Iri, String)> = winners
        .values()
        .filter(|s| {
            let text_ok = q.text.as_ref().is_none_or(|needle| {
                let needle = needle.to_lowercase();
                [&s.title, &s.description].iter().any(|ix| {
                    !ix.is_empty() && ix.iter().map(|&i| WORDS[i]).collect::<Vec<_>>().join(" ").to_lowercase().contains(&needle)
                })
            });
            let theme_ok = q.theme.as_ref().is_none_or(|x| s.themes.iter().any(|&i| &term_iri("theme", i) == x));
            let mode_ok = q.transport_mode.as_ref().is_none_or(|x| s.modes.iter().any(|&i| &term_iri("mode", i) == x));
            let standard_ok = q.standard.as_ref().is_none_or(|x| s.standards.iter().any(|&i| &term_iri("standard", i) == x));
            let publisher_ok = q.publisher.as_ref().is_none_or(|name| {
                s.publisher.is_some_and(|(p, form)| {
                    PUBLISHERS[p].eq_ignore_ascii_case(name)
                        || (form == 1 && term_iri("agent", p).as_str().eq_ignore_ascii_case(name))
                })
            });
            text_ok && theme_ok && mode_ok && standard_ok && publisher_ok
        })
        .map(|s| (term_iri("dataset", s.dataset), format!("src{}", s.source)))
        .collect();
    hits.sort();
    hits
}

pub fn catalog_of(specs: &[Spec]) -> FederatedCatalog {
    let mut c = FederatedCatalog::new();
    c.merge(specs.iter().map(build));
    c
}

pub fn keys(found: Vec<&CatalogRecord>) -> Vec<(Iri, String)> {
    found.into_iter().map(|r| (r.dataset_iri.clone(), r.source_id.clone())).collect()
}

