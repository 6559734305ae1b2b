//! Random profile documents.

use std::fmt::Write;

use mdcat_core::profile::Obligation;
use proptest::prelude::*;

pub const HEADER: &str = "profile https://ex.org/p\nversion 1.0.0\nnamespace https://ex.org/ns#\nprefix ex https://ex.org/ns#\n";

#[derive(Debug, Clone)]
pub struct Prop {
    pub obligation: Obligation,
    pub min: u64,
    pub max: Option<u64>,
    pub range: u8,
    pub scheme: Option<u8>,
}

pub fn prop_strategy() -> impl Strategy<Value = Prop> {
    (0..3usize, 1..4u64, prop::option::of(0..3u64), 0..5u8, prop::option::of(0..2u8)).prop_map(
        |(o, min, extra, range, scheme)| {
            let obligation = Obligation::ALL[o];
            let min = if obligation == Obligation::Mandatory { min } else { 0 };
            let max = extra.map(|e| min.max(1) + e);
            let scheme = if range == 2 { None } else { scheme };
            Prop { obligation, min, max, range, scheme }
        },
    )
}

/// Classes `ex:C{i}` holding properties `ex:p{j}`, as a profile document body.
pub fn profile_strategy() -> impl Strategy<Value = Vec<Vec<Option<Prop>>>> {
    prop::collection::vec(prop::collection::vec(prop::option::of(prop_strategy()), 1..5), 1..4)
}

pub fn render(classes: &[Vec<Option<Prop>>], header: &str) -> String {
    let mut doc = header.to_owned();
    for (i, props) in classes.iter().enumerate() {
        writeln!(doc, "[class ex:C{i}]").unwrap();
        for (j, p) in props.iter().enumerate() {
            let Some(p) = p else { continue };
            let max = p.max.map_or("*".to_owned(), |m| m.to_string());
            let range = match p.range {
                0 => String::new(),
                1 => "rdfs:Resource".to_owned(),
                2 => "^^xsd:date".to_owned(),
                k => format!("ex:R{k}"),
            };
            let scheme = p.scheme.map_or(String::new(), |s| format!("ex:S{s}"));
            writeln!(doc, "ex:p{j} | {} | {}..{max} | {range} | {scheme}", p.obligation, p.min).unwrap();
        }
    }
    doc
}
