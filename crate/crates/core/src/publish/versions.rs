//! Versioned IRIs of the published specification.

use super::PublishError;
use crate::profile::{Version, minimum_profile};
use crate::rdf::ns::{dct, owl, rdf};
use crate::rdf::{Graph, Iri, Literal, Term};
use crate::shacl::mobility_shapes_graph;

/// The unversioned resource path.
pub const SPEC_PATH: &str = "/mobilitydcat-ap";
/// The specification's namespace IRI.
pub const SPEC_IRI: &str = "https://w3id.org/mobilitydcat-ap";
/// Released versions, oldest first.
pub const PUBLISHED_VERSIONS: [&str; 3] = ["1.0.0", "1.0.1", "1.1.0"];

pub fn latest_version() -> &'static str {
    PUBLISHED_VERSIONS[PUBLISHED_VERSIONS.len() - 1]
}

/// A request for the specification, resolved to a published version.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VersionRoute {
    pub resource_path: String,
    pub version: &'static str,
    /// True when the path named no version and should see-other to the latest.
    pub redirect: bool,
}

impl VersionRoute {
    pub fn versioned_path(&self) -> String {
        format!("{}/{}", self.resource_path, self.version)
    }

    pub fn iri(&self) -> Iri {
        Iri::new(format!("{SPEC_IRI}/{}", self.version)).expect("published versions form IRIs")
    }
}

/// Resolves `/mobilitydcat-ap` and `/mobilitydcat-ap/{version}`; a trailing
/// slash is ignored.
pub fn resolve_version_route(path: &str) -> Result<VersionRoute, PublishError> {
    let not_found = || PublishError::NotFound(path.to_owned());
    let trimmed = path.strip_suffix('/').unwrap_or(path);
    let rest = trimmed.strip_prefix(SPEC_PATH).ok_or_else(not_found)?;
    let (version, redirect) = match rest {
        "" => (latest_version(), true),
        _ => {
            let asked = rest.strip_prefix('/').ok_or_else(not_found)?;
            let version = PUBLISHED_VERSIONS.iter().find(|v| **v == asked).ok_or_else(not_found)?;
            (*version, false)
        }
    };
    Ok(VersionRoute {
        resource_path: SPEC_PATH.to_owned(),
        version,
        redirect,
    })
}

/// Release description of `version`. The current release also carries its
/// shapes.
pub fn version_graph(version: &str) -> Result<Graph, PublishError> {
    let index = PUBLISHED_VERSIONS
        .iter()
        .position(|v| *v == version)
        .ok_or_else(|| PublishError::NotFound(format!("{SPEC_PATH}/{version}")))?;
    let this = Term::Iri(Iri::new(format!("{SPEC_IRI}/{version}")).expect("published versions form IRIs"));
    let mut g = Graph::new();
    g.add(this.clone(), Iri::from_static(rdf::TYPE), Term::Iri(Iri::from_static(owl::ONTOLOGY)));
    g.add(this.clone(), Iri::from_static(owl::VERSION_INFO), Literal::string(version));
    g.add(this.clone(), Iri::from_static(dct::TITLE), Literal::lang_string(format!("mobilityDCAT-AP {version}"), "en").expect("static tag"));
    g.add(this.clone(), Iri::from_static(dct::IS_VERSION_OF), Term::Iri(Iri::from_static(SPEC_IRI)));
    if index > 0 {
        let prior = Iri::new(format!("{SPEC_IRI}/{}", PUBLISHED_VERSIONS[index - 1])).expect("published versions form IRIs");
        g.add(this.clone(), Iri::from_static(owl::PRIOR_VERSION), Term::Iri(prior));
    }
    if version == latest_version() {
        g.extend_from(mobility_shapes_graph());
    }
    Ok(g)
}

/// The bundled profile is the latest release.
pub fn bundled_version_is_latest() -> bool {
    minimum_profile().version == latest_version().parse::<Version>().expect("published versions parse")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes() {
        let r = resolve_version_route("/mobilitydcat-ap").unwrap();
        assert_eq!((r.version, r.redirect), ("1.1.0", true));
        assert_eq!(r.versioned_path(), "/mobilitydcat-ap/1.1.0");
        for v in PUBLISHED_VERSIONS {
            let r = resolve_version_route(&format!("/mobilitydcat-ap/{v}/")).unwrap();
            assert_eq!((r.version, r.redirect), (v, false));
        }
        for bad in ["/mobilitydcat-ap/9.9.9", "/mobilitydcat-ap/1.0", "/mobilitydcat-apx", "/other", "/mobilitydcat-ap/1.0.0/x"] {
            assert!(matches!(resolve_version_route(bad), Err(PublishError::NotFound(_))), "{bad}");
        }
    }

    #[test]
    fn release_graphs() {
        assert!(bundled_version_is_latest());
        let old = version_graph("1.0.0").unwrap();
        assert_eq!(old.len(), 4);
        assert_eq!(version_graph("1.0.1").unwrap().len(), 5);
        assert_eq!(version_graph("1.1.0").unwrap().len(), 5 + mobility_shapes_graph().len());
        assert!(version_graph("2.0.0").is_err());
    }
}
