//! Hand-built SHACL fixtures. Each directory holds `shapes.ttl`, `data.ttl`
//! and `expected.tsv`; the expected reports were also checked against
//! pyshacl with `tests/fixtures/shacl/crosscheck.py`.

use std::fs;
use std::path::{Path, PathBuf};

use mdcat_core::io::parse_turtle;
use mdcat_core::rdf::Term;
use mdcat_core::shacl::{NoImports, load_shapes, validate};

pub type Row = (String, String, String, String, String);

pub fn fixture_dirs() -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/shacl");
    let mut dirs: Vec<PathBuf> = fs::read_dir(root)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.join("expected.tsv").exists())
        .collect();
    dirs.sort();
    dirs
}

fn norm(term: Option<&Term>) -> String {
    match term {
        None => "-".into(),
        Some(Term::Blank(_)) => "_".into(),
        Some(t) => t.to_string(),
    }
}

fn expand(text: &str, header: &str) -> String {
    if text == "-" || text == "_" {
        return text.to_owned();
    }
    let (g, _) = parse_turtle(&format!("{header}<urn:s> <urn:p> {text} ."), None).unwrap();
    norm(g.iter().next().map(|t| t.object()))
}

pub fn expected(dir: &Path) -> (bool, Vec<Row>) {
    let header: String = fs::read_to_string(dir.join("shapes.ttl"))
        .unwrap()
        .lines()
        .filter(|l| l.starts_with("@prefix"))
        .map(|l| format!("{l}\n"))
        .collect();
    let text = fs::read_to_string(dir.join("expected.tsv")).unwrap();
    let mut lines = text.lines();
    let conforms = lines.next().unwrap().ends_with("true");
    let mut rows: Vec<Row> = lines
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            (expand(f[0], &header), expand(f[1], &header), f[2].to_owned(), f[3].to_owned(), expand(f[4], &header))
        })
        .collect();
    rows.sort();
    (conforms, rows)
}

pub fn actual(dir: &Path) -> (bool, Vec<Row>) {
    let (shapes, _) = parse_turtle(&fs::read_to_string(dir.join("shapes.ttl")).unwrap(), None).unwrap();
    let (data, _) = parse_turtle(&fs::read_to_string(dir.join("data.ttl")).unwrap(), None).unwrap();
    let set = load_shapes(&shapes, &NoImports).unwrap();
    assert!(set.warnings.is_empty(), "{}: {:?}", dir.display(), set.warnings);
    let report = validate(&data, &set);
    let mut rows: Vec<Row> = report
        .results
        .iter()
        .map(|r| {
            let component = r.source_constraint_component.local_name().trim_end_matches("ConstraintComponent");
            (
                norm(Some(&r.focus_node)),
                r.path.as_ref().map_or("-".into(), |p| format!("<{p}>")),
                r.severity.to_string(),
                component.to_owned(),
                norm(r.value.as_ref()),
            )
        })
        .collect();
    rows.sort();
    (report.conforms, rows)
}
