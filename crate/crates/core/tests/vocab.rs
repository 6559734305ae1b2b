use std::collections::BTreeSet;
use std::fmt::Write;

use mdcat_core::rdf::ns::skos;
use mdcat_core::rdf::{Graph, Iri, Term};
use mdcat_core::vocab::{VocabError, load_bundled_vocabularies, scheme_to_table, tabular_to_scheme};
use proptest::prelude::*;

const ELEVEN: [&str; 11] = [
    "Application Layer Protocol",
    "Communication Method",
    "Conditions for Access and Usage",
    "Mobility Theme",
    "Mobility Data Standard",
    "Georeferencing Method",
    "Grammar",
    "Network Coverage",
    "Intended Information Service",
    "Transport Mode",
    "Update Frequency",
];

fn count(g: &Graph, predicate: &'static str) -> usize {
    g.matches(None, Some(&Iri::from_static(predicate)), None).len()
}

#[test]
fn bundled_vocabularies_are_the_eleven() {
    let v = load_bundled_vocabularies().unwrap();
    assert_eq!(v.len(), 11);
    let names: BTreeSet<&str> = v.iter().map(|(n, _)| n).collect();
    assert_eq!(names, ELEVEN.into_iter().collect());
    for (name, scheme) in v.iter() {
        assert!(!scheme.is_empty(), "{name}");
        for c in scheme.concepts() {
            assert!(scheme.is_in_scheme(&Term::Iri(c.iri.clone())), "{}", c.iri);
            let iri = c.iri.as_str();
            assert!(
                iri.starts_with("https://w3id.org/mobilitydcat-ap/") || iri.starts_with("http://publications.europa.eu/resource/authority/"),
                "{iri}"
            );
        }
    }
    assert!(!v.get("Update Frequency").unwrap().is_empty());
}

#[test]
fn three_rows_three_memberships() {
    let table = "#meta:scheme,https://ex.org/s\n#meta:title,S\n#meta:version,0.1.0\niri,prefLabel@en\nhttps://ex.org/a,A\nhttps://ex.org/b,B\nhttps://ex.org/c,C\n";
    let (scheme, graph) = tabular_to_scheme(table).unwrap();
    assert_eq!(scheme.len(), 3);
    assert_eq!(count(&graph, skos::IN_SCHEME), 3);
    assert_eq!(count(&graph, skos::BROADER), 0);
}

#[test]
fn broader_cycles_are_rejected() {
    let table = "#meta:scheme,https://ex.org/s\n#meta:title,S\n#meta:version,0.1.0\niri,prefLabel@en,broader\nhttps://ex.org/a,A,https://ex.org/c\nhttps://ex.org/b,B,https://ex.org/a\nhttps://ex.org/c,C,https://ex.org/b\n";
    assert!(matches!(tabular_to_scheme(table), Err(VocabError::BroaderCycle(_))));
}

#[derive(Debug, Clone)]
struct Row {
    labels: Vec<Option<String>>,
    definition: Option<String>,
    broader: Option<usize>,
}

const LANGS: [&str; 3] = ["de", "en", "fr"];

fn row_strategy() -> impl Strategy<Value = Row> {
    let text = "[A-Za-zäöü ,\"'-]{1,12}".prop_map(|s| s.trim().to_owned()).prop_filter("non-empty", |s| !s.is_empty());
    (
        prop::collection::vec(prop::option::of(text.clone()), 3),
        prop::option::of(text),
        prop::option::of(any::<prop::sample::Index>()),
    )
        .prop_filter("one label", |(labels, _, _)| labels.iter().any(Option::is_some))
        .prop_map(|(labels, definition, broader)| Row {
            labels,
            definition,
            broader: broader.map(|i| i.index(usize::MAX)),
        })
}

/// Broader links only point at earlier rows, so the table is acyclic.
fn table(rows: &[Row]) -> (String, usize) {
    let mut out = String::from("#meta:scheme,https://ex.org/s\n#meta:title,Random\n#meta:version,1.2.3\n");
    out.push_str("iri,prefLabel@de,prefLabel@en,prefLabel@fr,definition@en,broader\n");
    let mut broader_count = 0;
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    for (i, r) in rows.iter().enumerate() {
        let broader = match r.broader {
            Some(k) if i > 0 => {
                broader_count += 1;
                format!("https://ex.org/s/{}", k % i)
            }
            _ => String::new(),
        };
        let mut record = vec![format!("https://ex.org/s/{i}")];
        record.extend(r.labels.iter().map(|l| l.clone().unwrap_or_default()));
        record.push(r.definition.clone().unwrap_or_default());
        record.push(broader);
        w.write_record(&record).unwrap();
    }
    out.push_str(&String::from_utf8(w.into_inner().unwrap()).unwrap());
    (out, broader_count)
}

proptest! {
    #[test]
    fn tables_round_trip(rows in prop::collection::vec(row_strategy(), 1..12)) {
        let (text, broader_count) = table(&rows);
        let (scheme, graph) = tabular_to_scheme(&text).unwrap();
        prop_assert_eq!(scheme.len(), rows.len());
        prop_assert_eq!(count(&graph, skos::IN_SCHEME), rows.len());
        prop_assert_eq!(count(&graph, skos::BROADER), broader_count);
        let labels: usize = rows.iter().map(|r| r.labels.iter().flatten().count()).sum();
        prop_assert_eq!(count(&graph, skos::PREF_LABEL), labels);
        for (i, r) in rows.iter().enumerate() {
            let c = scheme.concept(&Iri::new(format!("https://ex.org/s/{i}")).unwrap()).unwrap();
            for (lang, label) in LANGS.iter().zip(&r.labels) {
                prop_assert_eq!(c.pref_labels.get(*lang), label.as_ref());
            }
        }
        let (again, again_graph) = tabular_to_scheme(&scheme_to_table(&scheme)).unwrap();
        prop_assert_eq!(&again, &scheme);
        prop_assert_eq!(again_graph, graph);
    }

    #[test]
    fn labels_resolve_for_any_preference(rows in prop::collection::vec(row_strategy(), 1..6), pref in prop::collection::vec(0..3usize, 0..3)) {
        let (text, _) = table(&rows);
        let (scheme, _) = tabular_to_scheme(&text).unwrap();
        let pref: Vec<&str> = pref.into_iter().map(|i| LANGS[i]).collect();
        for (i, r) in rows.iter().enumerate() {
            let iri = Iri::new(format!("https://ex.org/s/{i}")).unwrap();
            let expected = pref
                .iter()
                .find_map(|l| r.labels[LANGS.iter().position(|x| x == l).unwrap()].as_deref())
                .or_else(|| r.labels.iter().flatten().next().map(String::as_str))
                .unwrap();
            prop_assert_eq!(scheme.label_for(&iri, &pref).unwrap(), expected);
        }
    }
}

#[test]
fn rendered_table_lists_every_row() {
    let v = load_bundled_vocabularies().unwrap();
    let theme = v.get("Mobility Theme").unwrap();
    let text = scheme_to_table(theme);
    let mut expected = String::new();
    for c in theme.concepts() {
        writeln!(expected, "{}", c.iri).unwrap();
    }
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("https://")).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(rows, expected.lines().collect::<Vec<_>>());
}
