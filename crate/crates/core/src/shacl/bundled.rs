//! The shape graphs shipped with the toolkit.

use std::sync::LazyLock;

use super::load::{ImportResolver, load_shapes};
use super::model::ShapeSet;
use crate::io::parse_turtle;
use crate::rdf::{Graph, Iri};

pub const BASE_SHAPES_IRI: &str = "http://data.europa.eu/r5r/shacl_shapes";
pub const MOBILITY_SHAPES_IRI: &str = "https://w3id.org/mobilitydcat-ap/shacl-shapes";

const BASE_TTL: &str = include_str!("../../data/shapes/dcat-ap-base.ttl");
const MOBILITY_TTL: &str = include_str!("../../data/shapes/mobilitydcat-ap.ttl");

static BASE: LazyLock<Graph> = LazyLock::new(|| parse_turtle(BASE_TTL, None).expect("bundled base shapes parse").0);
static MOBILITY: LazyLock<Graph> =
    LazyLock::new(|| parse_turtle(MOBILITY_TTL, None).expect("bundled mobility shapes parse").0);

pub fn base_shapes_graph() -> &'static Graph {
    &BASE
}

pub fn mobility_shapes_graph() -> &'static Graph {
    &MOBILITY
}

/// Resolves the IRIs of the bundled shape graphs.
pub struct BundledShapes;

impl ImportResolver for BundledShapes {
    fn resolve(&self, iri: &Iri) -> Option<Graph> {
        match iri.as_str() {
            BASE_SHAPES_IRI => Some(BASE.clone()),
            MOBILITY_SHAPES_IRI => Some(MOBILITY.clone()),
            _ => None,
        }
    }
}

/// The mobility shapes with the DCAT-AP base imported.
pub fn mobility_shapes() -> ShapeSet {
    load_shapes(&MOBILITY, &BundledShapes).expect("bundled shapes load")
}
