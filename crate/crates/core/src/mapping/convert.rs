use percent_encoding::{AsciiSet, NON_ALPHANUMERIC, utf8_percent_encode};

use super::{ConversionIssue, IssueKind, LegacyRecord, MappingTable};
use crate::profile::Profile;
use crate::rdf::ns::rdf;
use crate::rdf::{Graph, Iri, Literal, Term};

const ID_SAFE: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

/// The subject IRI for a record id.
pub fn mint_subject(table: &MappingTable, record_id: &str) -> Iri {
    let encoded = utf8_percent_encode(record_id, ID_SAFE).to_string();
    Iri::new(table.id_template.replace("{recordId}", &encoded)).expect("template checked at load time")
}

/// Converts one record. Content problems never fail the conversion; they
/// come back as issues.
///
/// Values of an enumerated field (one with value mappings, or bound to a
/// vocabulary by `profile`) without a mapping stay literals and raise
/// `UnmappedValue`. Where the profile gives a property an IRI range or a
/// datatype, plain values are typed accordingly.
pub fn convert_record(record: &LegacyRecord, table: &MappingTable, profile: &Profile) -> (Graph, Vec<ConversionIssue>) {
    let subject = Term::Iri(mint_subject(table, &record.record_id));
    let mut graph = Graph::new();
    let mut issues = Vec::new();
    graph.add(subject.clone(), Iri::from_static(rdf::TYPE), Term::Iri(table.target_class.clone()));
    let issue = |field: &str, kind, detail: String| ConversionIssue {
        record_id: record.record_id.clone(),
        field_name: field.to_owned(),
        kind,
        detail,
    };
    for (field, values) in &record.fields {
        let Some(property) = table.field_mappings.get(field) else {
            issues.push(issue(field, IssueKind::UnmappedField, format!("no mapping for field '{field}'")));
            continue;
        };
        let declared = profile.property(&table.target_class, property);
        let bound = declared.is_some_and(|p| p.vocabulary_binding.is_some());
        let enumerated = bound || table.is_enumerated(field);
        for value in values {
            let value = value.trim();
            if value.is_empty() {
                issues.push(issue(field, IssueKind::EmptyValue, format!("empty value for '{field}'")));
                continue;
            }
            let object = match table.value_mappings.get(&(field.clone(), value.to_owned())) {
                Some(concept) => Term::Iri(concept.clone()),
                None if enumerated => {
                    issues.push(issue(
                        field,
                        IssueKind::UnmappedValue,
                        format!("'{value}' has no concept mapping for '{field}'"),
                    ));
                    Term::Literal(Literal::string(value))
                }
                None => match declared {
                    Some(p) if p.range_class.is_some() && is_absolute_iri(value) => {
                        Term::Iri(Iri::new(value).expect("checked absolute IRI"))
                    }
                    Some(p) if p.datatype.is_some() => {
                        Term::Literal(Literal::typed(value, p.datatype.clone().expect("checked datatype")))
                    }
                    _ => Term::Literal(Literal::string(value)),
                },
            };
            graph.add(subject.clone(), property.clone(), object);
        }
    }
    (graph, issues)
}

fn is_absolute_iri(text: &str) -> bool {
    oxiri::Iri::parse(text).is_ok() && !text.contains(char::is_whitespace)
}
