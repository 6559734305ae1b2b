use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::io::PrefixMap;
use crate::rdf::Iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Obligation {
    Optional,
    Recommended,
    Mandatory,
}

impl Obligation {
    pub const ALL: [Obligation; 3] = [Obligation::Optional, Obligation::Recommended, Obligation::Mandatory];

    pub fn as_str(self) -> &'static str {
        match self {
            Obligation::Optional => "optional",
            Obligation::Recommended => "recommended",
            Obligation::Mandatory => "mandatory",
        }
    }
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Obligation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Obligation::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| format!("unknown obligation '{s}'"))
    }
}

/// Upper cardinality bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxCard {
    Bounded(u64),
    Unbounded,
}

impl MaxCard {
    pub fn admits(self, n: u64) -> bool {
        match self {
            MaxCard::Bounded(max) => n <= max,
            MaxCard::Unbounded => true,
        }
    }

    pub fn bound(self) -> Option<u64> {
        match self {
            MaxCard::Bounded(max) => Some(max),
            MaxCard::Unbounded => None,
        }
    }
}

impl Ord for MaxCard {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MaxCard::Bounded(a), MaxCard::Bounded(b)) => a.cmp(b),
            (MaxCard::Bounded(_), MaxCard::Unbounded) => Ordering::Less,
            (MaxCard::Unbounded, MaxCard::Bounded(_)) => Ordering::Greater,
            (MaxCard::Unbounded, MaxCard::Unbounded) => Ordering::Equal,
        }
    }
}

impl PartialOrd for MaxCard {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MaxCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxCard::Bounded(n) => write!(f, "{n}"),
            MaxCard::Unbounded => f.write_str("*"),
        }
    }
}

impl Serialize for MaxCard {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MaxCard::Bounded(n) => serializer.serialize_u64(*n),
            MaxCard::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

/// A `MAJOR.MINOR.PATCH` version.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Version {
    pub major: u64,
    pub minor: u64,
    pub patch: u64,
}

impl FromStr for Version {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('.').collect();
        let number = |p: &str| -> Result<u64, String> {
            let leading_zero = p.len() > 1 && p.starts_with('0');
            if p.is_empty() || leading_zero || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("'{s}' is not MAJOR.MINOR.PATCH"));
            }
            p.parse().map_err(|_| format!("'{s}' is not MAJOR.MINOR.PATCH"))
        };
        match parts.as_slice() {
            [major, minor, patch] => Ok(Version {
                major: number(major)?,
                minor: number(minor)?,
                patch: number(patch)?,
            }),
            _ => Err(format!("'{s}' is not MAJOR.MINOR.PATCH")),
        }
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.major, self.minor, self.patch)
    }
}

impl Serialize for Version {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyProfile {
    pub property_iri: Iri,
    pub obligation: Obligation,
    pub min_card: u64,
    pub max_card: MaxCard,
    pub range_class: Option<Iri>,
    pub datatype: Option<Iri>,
    pub vocabulary_binding: Option<Iri>,
}

impl PropertyProfile {
    pub fn new(property_iri: Iri, obligation: Obligation) -> Self {
        PropertyProfile {
            property_iri,
            obligation,
            min_card: if obligation == Obligation::Mandatory { 1 } else { 0 },
            max_card: MaxCard::Unbounded,
            range_class: None,
            datatype: None,
            vocabulary_binding: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassProfile {
    pub class_iri: Iri,
    pub sub_class_of: Option<Iri>,
    pub properties: Vec<PropertyProfile>,
}

impl ClassProfile {
    pub fn new(class_iri: Iri) -> Self {
        ClassProfile {
            class_iri,
            sub_class_of: None,
            properties: Vec::new(),
        }
    }

    pub fn property(&self, iri: &Iri) -> Option<&PropertyProfile> {
        self.properties.iter().find(|p| &p.property_iri == iri)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Profile {
    pub id: Iri,
    pub version: Version,
    pub title: Option<String>,
    pub base_profile: Option<Iri>,
    pub namespace: Iri,
    pub classes: Vec<ClassProfile>,
    /// Declared `(sub-scheme, scheme)` pairs.
    pub narrows: BTreeSet<(Iri, Iri)>,
    #[serde(skip)]
    pub prefixes: PrefixMap,
}

impl Profile {
    pub fn class(&self, iri: &Iri) -> Option<&ClassProfile> {
        self.classes.iter().find(|c| &c.class_iri == iri)
    }

    pub fn property(&self, class: &Iri, property: &Iri) -> Option<&PropertyProfile> {
        self.class(class)?.property(property)
    }

    pub fn property_count(&self) -> usize {
        self.classes.iter().map(|c| c.properties.len()).sum()
    }
}
