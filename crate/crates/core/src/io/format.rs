use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::rdf::Iri;
use crate::rdf::ns;

/// The RDF serializations the toolkit reads and writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SerializationFormat {
    Turtle,
    NTriples,
    JsonLd,
}

impl SerializationFormat {
    pub const ALL: [SerializationFormat; 3] = [Self::Turtle, Self::NTriples, Self::JsonLd];

    pub fn media_type(self) -> &'static str {
        match self {
            Self::Turtle => "text/turtle",
            Self::NTriples => "application/n-triples",
            Self::JsonLd => "application/ld+json",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Self::Turtle => "ttl",
            Self::NTriples => "nt",
            Self::JsonLd => "jsonld",
        }
    }

    /// Matches a media type, ignoring parameters and case.
    pub fn from_media_type(media_type: &str) -> Result<Self, IoError> {
        let essence = media_type.split(';').next().unwrap_or("").trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|f| f.media_type() == essence)
            .ok_or_else(|| IoError::UnsupportedFormat(media_type.to_owned()))
    }

    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "ttl" | "turtle" => Some(Self::Turtle),
            "nt" | "ntriples" => Some(Self::NTriples),
            "jsonld" | "json-ld" | "json" => Some(Self::JsonLd),
            _ => None,
        }
    }
}

impl fmt::Display for SerializationFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.media_type())
    }
}

impl FromStr for SerializationFormat {
    type Err = IoError;

    /// Accepts a media type, a file extension or a short name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_extension(s)
            .or_else(|| match s.to_ascii_lowercase().as_str() {
                "n-triples" => Some(Self::NTriples),
                _ => None,
            })
            .map_or_else(|| Self::from_media_type(s), Ok)
    }
}

impl Serialize for SerializationFormat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.media_type())
    }
}

impl<'de> Deserialize<'de> for SerializationFormat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordered prefix bindings plus an optional base IRI.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    bindings: Vec<(String, Iri)>,
    base: Option<Iri>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// The prefixes used throughout the toolkit's own documents.
    pub fn common() -> Self {
        let mut map = Self::new();
        for (label, ns) in [
            ("rdf", ns::rdf::NS),
            ("rdfs", ns::rdfs::NS),
            ("xsd", ns::xsd::NS),
            ("owl", ns::owl::NS),
            ("sh", ns::sh::NS),
            ("skos", ns::skos::NS),
            ("dcat", ns::dcat::NS),
            ("dct", ns::dct::NS),
            ("foaf", ns::foaf::NS),
            ("mobilitydcatap", ns::mobility::NS),
            ("mdt", ns::toolkit::NS),
        ] {
            map.insert(label, Iri::from_static(ns)).expect("static prefix is valid");
        }
        map
    }

    /// Binds `label`, replacing an existing binding with the same label in place.
    pub fn insert(&mut self, label: &str, namespace: Iri) -> Result<(), IoError> {
        if !is_prefix_label(label) {
            return Err(IoError::InvalidPrefix(label.to_owned()));
        }
        match self.bindings.iter_mut().find(|(l, _)| l == label) {
            Some(entry) => entry.1 = namespace,
            None => self.bindings.push((label.to_owned(), namespace)),
        }
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.bindings.iter().find(|(l, _)| l == label).map(|(_, ns)| ns)
    }

    /// Expands `prefix:local` when the prefix is bound; `scheme://` forms are
    /// never treated as prefixed names.
    pub fn expand(&self, text: &str) -> Option<String> {
        let (prefix, local) = text.split_once(':')?;
        if local.starts_with("//") {
            return None;
        }
        self.get(prefix).map(|ns| format!("{ns}{local}"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.bindings.iter().map(|(l, ns)| (l.as_str(), ns))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn base(&self) -> Option<&Iri> {
        self.base.as_ref()
    }

    pub fn set_base(&mut self, base: Option<Iri>) {
        self.base = base;
    }

    /// Finds the binding with the longest namespace that `iri` starts with.
    pub(crate) fn longest_match<'a>(&'a self, iri: &'a str) -> Option<(&'a str, &'a str)> {
        self.bindings
            .iter()
            .filter(|(_, ns)| iri.starts_with(ns.as_str()))
            .max_by_key(|(l, ns)| (ns.as_str().len(), std::cmp::Reverse(l.as_str())))
            .map(|(l, ns)| (l.as_str(), &iri[ns.as_str().len()..]))
    }
}

/// Valid Turtle `PN_PREFIX` (or the empty prefix).
pub(crate) fn is_prefix_label(label: &str) -> bool {
    let chars: Vec<char> = label.chars().collect();
    let Some((&first, rest)) = chars.split_first() else {
        return true;
    };
    if !super::chars::is_pn_chars_base(first) {
        return false;
    }
    match rest.split_last() {
        None => true,
        Some((&last, middle)) => {
            super::chars::is_pn_chars(last) && middle.iter().all(|&c| super::chars::is_pn_chars(c) || c == '.')
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn media_types_are_exact() {
        assert_eq!(SerializationFormat::Turtle.media_type(), "text/turtle");
        assert_eq!(SerializationFormat::NTriples.media_type(), "application/n-triples");
        assert_eq!(SerializationFormat::JsonLd.media_type(), "application/ld+json");
        assert_eq!(
            SerializationFormat::from_media_type("text/turtle; charset=utf-8").unwrap(),
            SerializationFormat::Turtle
        );
        assert!(matches!(
            SerializationFormat::from_media_type("application/rdf+xml"),
            Err(IoError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn parses_short_names() {
        assert_eq!("ttl".parse::<SerializationFormat>().unwrap(), SerializationFormat::Turtle);
        assert_eq!("nt".parse::<SerializationFormat>().unwrap(), SerializationFormat::NTriples);
        assert_eq!("jsonld".parse::<SerializationFormat>().unwrap(), SerializationFormat::JsonLd);
        assert!("rdfxml".parse::<SerializationFormat>().is_err());
    }

    #[test]
    fn prefix_labels_unique_and_valid() {
        let mut map = PrefixMap::new();
        map.insert("ex", Iri::from_static("http://ex.org/")).unwrap();
        map.insert("ex", Iri::from_static("http://ex.com/")).unwrap();
        assert_eq!(map.len(), 1);
        assert_eq!(map.get("ex").unwrap().as_str(), "http://ex.com/");
        assert!(map.insert("1bad", Iri::from_static("http://x/")).is_err());
        assert!(map.insert("", Iri::from_static("http://x/")).is_ok());
    }

    #[test]
    fn longest_namespace_wins() {
        let mut map = PrefixMap::new();
        map.insert("a", Iri::from_static("http://ex.org/")).unwrap();
        map.insert("b", Iri::from_static("http://ex.org/sub/")).unwrap();
        assert_eq!(map.longest_match("http://ex.org/sub/x"), Some(("b", "x")));
        assert_eq!(map.longest_match("http://ex.org/x"), Some(("a", "x")));
        assert_eq!(map.longest_match("http://other/x"), None);
    }
}
