//! Structured records as sent by a form: resources with typed property values.
//!
//! ```json
//! {"resources": [{
//!   "id": "https://ex.org/dataset/1",
//!   "type": "dcat:Dataset",
//!   "values": {
//!     "dct:title": ["Parking", {"@value": "Parken", "@language": "de"}],
//!     "dcat:distribution": [{"@id": "_:d1"}]
//!   }
//! }]}
//! ```

use std::collections::BTreeMap;

use serde::Deserialize;

use super::PublishError;
use crate::io::PrefixMap;
use crate::profile::Profile;
use crate::rdf::ns::rdf;
use crate::rdf::{Graph, Iri, Literal, Term};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct StructuredRecord {
    pub resources: Vec<StructuredResource>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct StructuredResource {
    /// An IRI, a prefixed name or `_:label`.
    pub id: String,
    #[serde(rename = "type")]
    pub class: String,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<StructuredValue>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum StructuredValue {
    /// Typed by the profile: IRI-valued properties get an IRI when the text is
    /// one, datatyped properties get a typed literal, anything else a string.
    Text(String),
    Node {
        #[serde(rename = "@id")]
        id: String,
    },
    Literal {
        #[serde(rename = "@value")]
        value: String,
        #[serde(rename = "@language")]
        language: Option<String>,
        #[serde(rename = "@type")]
        datatype: Option<String>,
    },
}

fn invalid(message: impl Into<String>) -> PublishError {
    PublishError::InvalidRecord(message.into())
}

/// Builds the graph of `record`. Names are expanded with the profile's
/// prefixes, then the common ones.
pub fn record_to_graph(record: &StructuredRecord, profile: &Profile) -> Result<Graph, PublishError> {
    let mut prefixes = PrefixMap::common();
    for (label, ns) in profile.prefixes.iter() {
        prefixes.insert(label, ns.clone()).map_err(|e| invalid(e.to_string()))?;
    }
    let name = |text: &str| -> Result<Iri, PublishError> {
        Iri::new(prefixes.expand(text).unwrap_or_else(|| text.to_owned())).map_err(|e| invalid(format!("'{text}': {e}")))
    };
    let node = |text: &str| -> Result<Term, PublishError> {
        match text.strip_prefix("_:") {
            Some(label) => Term::blank(label).map_err(|e| invalid(format!("'{text}': {e}"))),
            None => name(text).map(Term::Iri),
        }
    };
    let mut g = Graph::new();
    for resource in &record.resources {
        let subject = node(&resource.id)?;
        let class = name(&resource.class)?;
        g.add(subject.clone(), Iri::from_static(rdf::TYPE), Term::Iri(class.clone()));
        for (property, values) in &resource.values {
            let property = name(property)?;
            let declared = profile.property(&class, &property);
            for value in values {
                let object = match value {
                    StructuredValue::Node { id } => node(id)?,
                    StructuredValue::Literal { value, language: Some(lang), datatype: None } => {
                        Term::Literal(Literal::lang_string(value, lang).map_err(|e| invalid(e.to_string()))?)
                    }
                    StructuredValue::Literal { value, language: None, datatype } => match datatype {
                        Some(dt) => Term::Literal(Literal::typed(value, name(dt)?)),
                        None => Term::Literal(Literal::string(value)),
                    },
                    StructuredValue::Literal { .. } => return Err(invalid("a value has both @language and @type")),
                    StructuredValue::Text(text) => {
                        let text = text.trim();
                        if text.is_empty() {
                            continue;
                        }
                        match declared {
                            Some(p) if p.range_class.is_some() || p.vocabulary_binding.is_some() => {
                                match Iri::new(text).ok().filter(|_| !text.contains(char::is_whitespace)) {
                                    Some(iri) => Term::Iri(iri),
                                    None => Term::Literal(Literal::string(text)),
                                }
                            }
                            Some(p) if p.datatype.is_some() => {
                                Term::Literal(Literal::typed(text, p.datatype.clone().expect("checked datatype")))
                            }
                            _ => Term::Literal(Literal::string(text)),
                        }
                    }
                };
                g.add(subject.clone(), property.clone(), object);
            }
        }
    }
    Ok(g)
}
