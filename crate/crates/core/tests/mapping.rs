use std::collections::BTreeSet;

use mdcat_core::mapping::{IssueKind, LegacyRecord, MappingTable, convert_record, load_mapping_table, mint_subject};
use mdcat_core::profile::{compile_to_shapes, minimum_profile};
use mdcat_core::rdf::{Iri, Literal, Term, Triple};
use mdcat_core::shacl::validate;
use proptest::prelude::*;

const TABLE: &str = include_str!("../data/mappings/cmc-dataset.csv");

fn table() -> MappingTable {
    load_mapping_table(TABLE).unwrap()
}

#[test]
fn frequency_value_becomes_concept() {
    let mut record = LegacyRecord::new("r1").unwrap();
    record.push("update_interval", "daily").unwrap();
    let (graph, issues) = convert_record(&record, &table(), minimum_profile());
    let expected = Triple::new(
        Term::iri("https://data.example.org/dataset/r1").unwrap(),
        Iri::from_static("http://purl.org/dc/terms/accrualPeriodicity"),
        Term::iri("http://publications.europa.eu/resource/authority/frequency/DAILY").unwrap(),
    )
    .unwrap();
    assert!(graph.contains(&expected));
    assert!(issues.is_empty());
}

#[test]
fn supplier_becomes_publisher() {
    let mut record = LegacyRecord::new("r1").unwrap();
    record.push("supplier", "ACME").unwrap();
    record.push("color", "red").unwrap();
    let (graph, issues) = convert_record(&record, &table(), minimum_profile());
    let expected = Triple::new(
        Term::iri("https://data.example.org/dataset/r1").unwrap(),
        Iri::from_static("http://purl.org/dc/terms/publisher"),
        Term::Literal(Literal::string("ACME")),
    )
    .unwrap();
    assert!(graph.contains(&expected));
    assert_eq!(issues.len(), 1);
    assert_eq!((issues[0].kind, issues[0].field_name.as_str()), (IssueKind::UnmappedField, "color"));
}

#[test]
fn record_ids_are_percent_encoded() {
    assert_eq!(
        mint_subject(&table(), "Park & Ride/Nord 1").as_str(),
        "https://data.example.org/dataset/Park%20%26%20Ride%2FNord%201"
    );
}

fn field_strategy() -> impl Strategy<Value = (String, Vec<String>)> {
    let fields = ["name", "summary", "supplier", "update_interval", "data_category", "area", "tags", "color", "legacy_id"];
    let values = prop::sample::select(vec!["daily", "weekly", "parking", "fortnightly", "misc", "", " ", "Parking Nord"]);
    (prop::sample::select(fields.to_vec()), prop::collection::btree_set(values, 0..4))
        .prop_map(|(f, vs)| (f.to_owned(), vs.into_iter().map(str::to_owned).collect()))
}

proptest! {
    #[test]
    fn triples_and_issues_are_counted(id in "[A-Za-z0-9 /]{1,10}", fields in prop::collection::btree_map("[a-z]{1}", field_strategy(), 0..6)) {
        prop_assume!(!id.trim().is_empty());
        let t = table();
        let mut record = LegacyRecord::new(id).unwrap();
        for (field, values) in fields.into_values() {
            record.fields.insert(field, values);
        }
        let (graph, issues) = convert_record(&record, &t, minimum_profile());
        let mut pairs = 0;
        let mut expected_issues = 0;
        for (field, values) in &record.fields {
            if !t.field_mappings.contains_key(field) {
                expected_issues += 1;
                continue;
            }
            let enumerated = t.is_enumerated(field);
            for v in values {
                if v.trim().is_empty() {
                    expected_issues += 1;
                } else {
                    pairs += 1;
                    if enumerated && !t.value_mappings.contains_key(&(field.clone(), v.trim().to_owned())) {
                        expected_issues += 1;
                    }
                }
            }
        }
        // One extra triple types the subject.
        prop_assert_eq!(graph.len(), pairs + 1);
        prop_assert_eq!(issues.len(), expected_issues);
        prop_assert_eq!(convert_record(&record, &t, minimum_profile()), (graph, issues));
    }

    #[test]
    fn covering_records_have_no_min_count_violations(extra in prop::collection::vec(field_strategy(), 0..4)) {
        let t = table();
        let mut record = LegacyRecord::new("cover").unwrap();
        for (field, value) in [
            ("name", "Parking"),
            ("summary", "Occupancy"),
            ("update_interval", "daily"),
            ("data_category", "parking"),
            ("distribution", "https://data.example.org/dist/1"),
        ] {
            record.push(field, value).unwrap();
        }
        for (field, values) in extra {
            for v in values {
                record.push(&field, v).unwrap();
            }
        }
        let (graph, _) = convert_record(&record, &t, minimum_profile());
        let subject = Term::Iri(mint_subject(&t, "cover"));
        let report = validate(&graph, &compile_to_shapes(minimum_profile()));
        let min_count: BTreeSet<_> = report
            .results
            .iter()
            .filter(|r| r.focus_node == subject && r.source_constraint_component.as_str().ends_with("MinCountConstraintComponent"))
            .filter(|r| r.severity == mdcat_core::shacl::Severity::Violation)
            .map(|r| r.path.clone())
            .collect();
        prop_assert!(min_count.is_empty(), "{:?}", min_count);
    }
}
