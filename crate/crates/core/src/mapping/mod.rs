//! Conversion of legacy flat metadata records into profile-conformant RDF.

mod convert;
mod legacy;
mod table;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::rdf::Iri;

pub use convert::{convert_record, mint_subject};
pub use legacy::{records_from_csv, records_from_json};
pub use table::{load_mapping_table, render_mapping_table};

/// A flat record in a legacy scheme: field name to values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LegacyRecord {
    pub record_id: String,
    pub fields: BTreeMap<String, Vec<String>>,
}

impl LegacyRecord {
    pub fn new(record_id: impl Into<String>) -> Result<Self, MappingError> {
        let record_id = record_id.into();
        if record_id.trim().is_empty() {
            return Err(MappingError::InvalidRecord("empty record id".into()));
        }
        Ok(LegacyRecord {
            record_id,
            fields: BTreeMap::new(),
        })
    }

    pub fn push(&mut self, field: &str, value: impl Into<String>) -> Result<(), MappingError> {
        if field.trim().is_empty() {
            return Err(MappingError::InvalidRecord(format!("record '{}' has an empty field name", self.record_id)));
        }
        self.fields.entry(field.to_owned()).or_default().push(value.into());
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTable {
    pub target_class: Iri,
    /// Template with a `{recordId}` placeholder.
    pub id_template: String,
    pub field_mappings: BTreeMap<String, Iri>,
    pub value_mappings: BTreeMap<(String, String), Iri>,
}

impl MappingTable {
    /// True when the field has at least one value mapping.
    pub fn is_enumerated(&self, field: &str) -> bool {
        self.value_mappings.range((field.to_owned(), String::new())..).next().is_some_and(|((f, _), _)| f == field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IssueKind {
    UnmappedField,
    UnmappedValue,
    EmptyValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConversionIssue {
    pub record_id: String,
    pub field_name: String,
    pub kind: IssueKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingError {
    #[error("mapping table line {line}: {message}")]
    TableSyntax { line: u64, message: String },
    #[error("value mapping for '{field}' = '{value}' has no field mapping")]
    OrphanValueMapping { field: String, value: String },
    #[error("legacy input: {0}")]
    LegacySyntax(String),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
}
