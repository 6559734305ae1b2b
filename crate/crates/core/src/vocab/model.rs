use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::VocabError;
use crate::profile::Version;
use crate::rdf::{Iri, Term};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Concept {
    pub iri: Iri,
    /// Language tag to label.
    pub pref_labels: BTreeMap<String, String>,
    pub definitions: BTreeMap<String, String>,
    pub broader: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConceptScheme {
    pub iri: Iri,
    pub title: String,
    pub version: Version,
    /// Free-text remark carried from the table header.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    concepts: Vec<Concept>,
    #[serde(skip)]
    index: HashMap<Iri, usize>,
}

impl ConceptScheme {
    /// Builds a scheme, checking IRI uniqueness, labels and the broader
    /// hierarchy.
    pub fn new(iri: Iri, title: String, version: Version, concepts: Vec<Concept>) -> Result<Self, VocabError> {
        let mut index = HashMap::with_capacity(concepts.len());
        for (i, c) in concepts.iter().enumerate() {
            if c.pref_labels.is_empty() {
                return Err(VocabError::MissingLabel(c.iri.clone()));
            }
            if index.insert(c.iri.clone(), i).is_some() {
                return Err(VocabError::DuplicateConceptIri(c.iri.clone()));
            }
        }
        for c in &concepts {
            if let Some(b) = &c.broader
                && !index.contains_key(b)
            {
                return Err(VocabError::DanglingBroader {
                    concept: c.iri.clone(),
                    broader: b.clone(),
                });
            }
        }
        for c in &concepts {
            let mut chain = vec![c.iri.clone()];
            let mut cursor = c.broader.as_ref();
            while let Some(b) = cursor {
                if b == &c.iri {
                    return Err(VocabError::BroaderCycle(chain));
                }
                if chain.len() > concepts.len() {
                    break;
                }
                chain.push(b.clone());
                cursor = concepts[index[b]].broader.as_ref();
            }
        }
        Ok(ConceptScheme {
            iri,
            title,
            version,
            note: None,
            concepts,
            index,
        })
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concept(&self, iri: &Iri) -> Option<&Concept> {
        self.index.get(iri).map(|&i| &self.concepts[i])
    }

    /// True iff `value` is the IRI of one of the scheme's concepts.
    pub fn is_in_scheme(&self, value: &Term) -> bool {
        value.as_iri().is_some_and(|iri| self.index.contains_key(iri))
    }

    /// The first label in `preference` order, else the label with the lowest
    /// language tag.
    pub fn label_for(&self, concept: &Iri, preference: &[&str]) -> Result<&str, VocabError> {
        let c = self.concept(concept).ok_or_else(|| VocabError::UnknownConcept(concept.clone()))?;
        let label = preference
            .iter()
            .find_map(|lang| {
                c.pref_labels
                    .iter()
                    .find(|(tag, _)| tag.eq_ignore_ascii_case(lang))
                    .map(|(_, l)| l)
            })
            .or_else(|| c.pref_labels.values().next())
            .expect("concepts have at least one label");
        Ok(label)
    }
}
