use std::collections::BTreeMap;

use super::VocabError;
use super::model::ConceptScheme;
use super::table::tabular_to_scheme;
use crate::profile::SchemeMembers;
use crate::rdf::{Iri, Term};
use crate::shacl::ConceptLookup;

/// Named concept schemes.
#[derive(Debug, Clone, Default)]
pub struct Vocabularies {
    schemes: BTreeMap<String, ConceptScheme>,
}

impl Vocabularies {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a scheme under its title, replacing any scheme with that title.
    pub fn insert(&mut self, scheme: ConceptScheme) {
        self.schemes.insert(scheme.title.clone(), scheme);
    }

    pub fn len(&self) -> usize {
        self.schemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ConceptScheme)> {
        self.schemes.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Looks a scheme up by title, by the last segment of its IRI, or by IRI.
    pub fn get(&self, key: &str) -> Option<&ConceptScheme> {
        self.schemes.get(key).or_else(|| {
            self.schemes
                .values()
                .find(|s| s.iri.as_str() == key || slug(&s.iri).eq_ignore_ascii_case(key))
        })
    }

    pub fn by_iri(&self, iri: &Iri) -> Option<&ConceptScheme> {
        self.schemes.values().find(|s| &s.iri == iri)
    }
}

/// The last path segment of a scheme IRI.
pub fn slug(iri: &Iri) -> &str {
    iri.as_str().trim_end_matches(['/', '#']).rsplit(['/', '#']).next().unwrap_or_default()
}

impl ConceptLookup for Vocabularies {
    fn is_in_scheme(&self, value: &Term, scheme: &Iri) -> bool {
        self.by_iri(scheme).is_some_and(|s| s.is_in_scheme(value))
    }
}

impl SchemeMembers for Vocabularies {
    fn members(&self, scheme: &Iri) -> Option<Vec<Iri>> {
        self.by_iri(scheme).map(|s| s.concepts().iter().map(|c| c.iri.clone()).collect())
    }
}

const BUNDLED: [(&str, &str); 11] = [
    ("application-layer-protocol", include_str!("../../data/vocabularies/application-layer-protocol.csv")),
    ("communication-method", include_str!("../../data/vocabularies/communication-method.csv")),
    ("conditions-for-access-and-usage", include_str!("../../data/vocabularies/conditions-for-access-and-usage.csv")),
    ("mobility-theme", include_str!("../../data/vocabularies/mobility-theme.csv")),
    ("mobility-data-standard", include_str!("../../data/vocabularies/mobility-data-standard.csv")),
    ("georeferencing-method", include_str!("../../data/vocabularies/georeferencing-method.csv")),
    ("grammar", include_str!("../../data/vocabularies/grammar.csv")),
    ("network-coverage", include_str!("../../data/vocabularies/network-coverage.csv")),
    ("intended-information-service", include_str!("../../data/vocabularies/intended-information-service.csv")),
    ("transport-mode", include_str!("../../data/vocabularies/transport-mode.csv")),
    ("update-frequency", include_str!("../../data/vocabularies/update-frequency.csv")),
];

/// The eleven mobilityDCAT-AP vocabularies, keyed by title.
pub fn load_bundled_vocabularies() -> Result<Vocabularies, VocabError> {
    let mut out = Vocabularies::new();
    for (name, table) in BUNDLED {
        let (scheme, _) = tabular_to_scheme(table).map_err(|e| VocabError::BundleCorrupt {
            name: name.to_owned(),
            reason: e.to_string(),
        })?;
        out.insert(scheme);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_keys() {
        let v = load_bundled_vocabularies().unwrap();
        let by_title = v.get("Update Frequency").unwrap();
        assert_eq!(v.get("update-frequency").unwrap(), by_title);
        assert_eq!(v.get("https://w3id.org/mobilitydcat-ap/update-frequency").unwrap(), by_title);
        assert!(v.get("colour").is_none());
        let daily = Term::iri("http://publications.europa.eu/resource/authority/frequency/DAILY").unwrap();
        assert!(v.is_in_scheme(&daily, &by_title.iri));
        assert!(!v.is_in_scheme(&daily, &Iri::from_static("https://w3id.org/mobilitydcat-ap/mobility-theme")));
        assert_eq!(v.members(&by_title.iri).unwrap().len(), by_title.len());
    }
}
