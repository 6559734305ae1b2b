//! The profile document format.
//!
//! ```text
//! # comment
//! profile   https://example.org/profile
//! version   1.0.0
//! title     Example profile
//! namespace https://example.org/ns#
//! base      http://data.europa.eu/r5r/
//! prefix    ex https://example.org/ns#
//! narrows   <https://example.org/sub-scheme> <https://example.org/scheme>
//!
//! [class dcat:Dataset]
//! subClassOf dcat:Resource
//! dct:title              | mandatory   | 1..* |                 |
//! dct:issued             | optional    | 0..1 | ^^xsd:date      |
//! dct:accrualPeriodicity | mandatory   | 1..1 |                 | <https://example.org/scheme>
//! dcat:distribution      | recommended | 0..* | dcat:Distribution |
//! ```
//!
//! Property lines have exactly five `|`-separated columns: property,
//! obligation, `min..max` (`*` for unbounded), range (a class, or `^^` and a
//! datatype) and vocabulary. The last two may be empty. Terms are `<IRI>` or
//! prefixed names; the toolkit's common prefixes are predeclared.

use std::collections::BTreeSet;

use super::ProfileError;
use super::model::{ClassProfile, MaxCard, Obligation, Profile, PropertyProfile, Version};
use crate::io::PrefixMap;
use crate::rdf::Iri;

pub fn load_profile(document: &str) -> Result<Profile, ProfileError> {
    let mut parser = DocumentParser {
        prefixes: PrefixMap::common(),
        line: 0,
    };
    let mut id = None;
    let mut version = None;
    let mut title = None;
    let mut namespace = None;
    let mut base_profile = None;
    let mut narrows = BTreeSet::new();
    let mut classes: Vec<ClassProfile> = Vec::new();

    for (i, raw) in document.lines().enumerate() {
        parser.line = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("[class") {
            let term = rest
                .strip_suffix(']')
                .ok_or_else(|| parser.error("class header must end with ']'"))?
                .trim();
            let class_iri = parser.term(term)?;
            if classes.iter().any(|c| c.class_iri == class_iri) {
                return Err(ProfileError::Consistency(format!("class <{class_iri}> declared twice")));
            }
            classes.push(ClassProfile::new(class_iri));
            continue;
        }
        if let Some(class) = classes.last_mut() {
            if let Some(rest) = line.strip_prefix("subClassOf") {
                if class.sub_class_of.is_some() || !class.properties.is_empty() {
                    return Err(parser.error("subClassOf must directly follow its class header, once"));
                }
                class.sub_class_of = Some(parser.term(rest.trim())?);
                continue;
            }
            let property = parser.property(line)?;
            if class.property(&property.property_iri).is_some() {
                return Err(ProfileError::Consistency(format!(
                    "property <{}> listed twice under <{}>",
                    property.property_iri, class.class_iri
                )));
            }
            class.properties.push(property);
            continue;
        }
        let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let value = value.trim();
        match key {
            "profile" => id = Some(parser.absolute(value)?),
            "version" => version = Some(value.parse::<Version>().map_err(|e| parser.error(e))?),
            "title" => title = Some(value.to_owned()),
            "namespace" => namespace = Some(parser.absolute(value)?),
            "base" => base_profile = Some(parser.absolute(value)?),
            "prefix" => {
                let (label, ns) = value
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| parser.error("prefix needs a label and a namespace"))?;
                let ns = parser.absolute(ns.trim())?;
                parser.prefixes.insert(label, ns).map_err(|e| parser.error(e.to_string()))?;
            }
            "narrows" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [sub, sup] = parts.as_slice() else {
                    return Err(parser.error("narrows needs a sub-scheme and a scheme"));
                };
                narrows.insert((parser.term(sub)?, parser.term(sup)?));
            }
            other => return Err(parser.error(format!("unknown header '{other}'"))),
        }
    }

    let missing = |what: &str| ProfileError::Syntax {
        line: 0,
        message: format!("missing '{what}' header"),
    };
    Ok(Profile {
        id: id.ok_or_else(|| missing("profile"))?,
        version: version.ok_or_else(|| missing("version"))?,
        title,
        base_profile,
        namespace: namespace.ok_or_else(|| missing("namespace"))?,
        classes,
        narrows,
        prefixes: parser.prefixes,
    })
}

struct DocumentParser {
    prefixes: PrefixMap,
    line: usize,
}

impl DocumentParser {
    fn error(&self, message: impl Into<String>) -> ProfileError {
        ProfileError::Syntax {
            line: self.line,
            message: message.into(),
        }
    }

    fn absolute(&self, text: &str) -> Result<Iri, ProfileError> {
        let inner = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')).unwrap_or(text);
        Iri::new(inner).map_err(|e| self.error(e.to_string()))
    }

    fn term(&self, text: &str) -> Result<Iri, ProfileError> {
        if text.starts_with('<') {
            return self.absolute(text);
        }
        let (prefix, local) = text
            .split_once(':')
            .ok_or_else(|| self.error(format!("expected <IRI> or prefixed name, found '{text}'")))?;
        let ns = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| self.error(format!("unknown prefix '{prefix}:'")))?;
        Iri::new(format!("{ns}{local}")).map_err(|e| self.error(e.to_string()))
    }

    fn property(&self, line: &str) -> Result<PropertyProfile, ProfileError> {
        let columns: Vec<&str> = line.split('|').map(str::trim).collect();
        if columns.len() > 5 {
            return Err(self.error(format!("unexpected column {}: '{}'", 6, columns[5])));
        }
        if columns.len() < 3 {
            return Err(self.error("property line needs property | obligation | min..max"));
        }
        let column = |i: usize| columns.get(i).copied().unwrap_or("");
        let property_iri = self.term(column(0))?;
        let obligation: Obligation = column(1).parse().map_err(|e: String| self.error(e))?;
        let (min, max) = column(2)
            .split_once("..")
            .ok_or_else(|| self.error(format!("cardinality '{}' is not min..max", column(2))))?;
        let min_card: u64 = min
            .trim()
            .parse()
            .map_err(|_| self.error(format!("bad minimum cardinality '{min}'")))?;
        let max_card = match max.trim() {
            "*" | "n" => MaxCard::Unbounded,
            n => MaxCard::Bounded(n.parse().map_err(|_| self.error(format!("bad maximum cardinality '{n}'")))?),
        };
        let mut property = PropertyProfile {
            property_iri,
            obligation,
            min_card,
            max_card,
            range_class: None,
            datatype: None,
            vocabulary_binding: None,
        };
        match column(3) {
            "" => {}
            dt if dt.starts_with("^^") => property.datatype = Some(self.term(&dt[2..])?),
            class => property.range_class = Some(self.term(class)?),
        }
        if !column(4).is_empty() {
            property.vocabulary_binding = Some(self.term(column(4))?);
        }
        check_property(&property)?;
        Ok(property)
    }
}

fn check_property(p: &PropertyProfile) -> Result<(), ProfileError> {
    let fail = |m: &str| Err(ProfileError::Consistency(format!("<{}>: {m}", p.property_iri)));
    if p.max_card == MaxCard::Bounded(0) {
        return fail("maximum cardinality must be positive");
    }
    if !p.max_card.admits(p.min_card) {
        return fail("minimum cardinality exceeds maximum");
    }
    if p.datatype.is_some() && p.vocabulary_binding.is_some() {
        return fail("a vocabulary-bound property takes concepts, not typed literals");
    }
    match p.obligation {
        Obligation::Mandatory if p.min_card == 0 => fail("mandatory property with minimum cardinality 0"),
        Obligation::Optional if p.min_card > 0 => fail("optional property with positive minimum cardinality"),
        _ => Ok(()),
    }
}

/// Renders a profile in the document format; `load_profile` reads it back
/// to an equal profile.
pub fn render_profile(profile: &Profile) -> String {
    let term = |iri: &Iri| -> String {
        match profile.prefixes.longest_match(iri.as_str()) {
            Some((label, local))
                if !local.is_empty() && !local.contains([':', '<', '>', '|', '#', '/']) =>
            {
                format!("{label}:{local}")
            }
            _ => format!("<{iri}>"),
        }
    };
    let common = PrefixMap::common();
    let mut out = String::new();
    out.push_str(&format!("profile {}\nversion {}\n", profile.id, profile.version));
    if let Some(title) = &profile.title {
        out.push_str(&format!("title {title}\n"));
    }
    out.push_str(&format!("namespace {}\n", profile.namespace));
    if let Some(base) = &profile.base_profile {
        out.push_str(&format!("base {base}\n"));
    }
    for (label, ns) in profile.prefixes.iter() {
        if common.get(label) != Some(ns) {
            out.push_str(&format!("prefix {label} {ns}\n"));
        }
    }
    for (sub, sup) in &profile.narrows {
        out.push_str(&format!("narrows {} {}\n", term(sub), term(sup)));
    }
    for class in &profile.classes {
        out.push_str(&format!("\n[class {}]\n", term(&class.class_iri)));
        if let Some(sup) = &class.sub_class_of {
            out.push_str(&format!("subClassOf {}\n", term(sup)));
        }
        for p in &class.properties {
            let range = match (&p.range_class, &p.datatype) {
                (Some(c), _) => term(c),
                (None, Some(dt)) => format!("^^{}", term(dt)),
                (None, None) => String::new(),
            };
            let vocabulary = p.vocabulary_binding.as_ref().map(&term).unwrap_or_default();
            out.push_str(&format!(
                "{} | {} | {}..{} | {} | {}\n",
                term(&p.property_iri),
                p.obligation,
                p.min_card,
                p.max_card,
                range,
                vocabulary
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "profile https://ex.org/p\nversion 1.0.0\nnamespace https://ex.org/ns#\nprefix ex https://ex.org/ns#\n";

    fn load(body: &str) -> Result<Profile, ProfileError> {
        load_profile(&format!("{HEADER}{body}"))
    }

    #[test]
    fn one_mandatory_property() {
        let p = load("[class ex:C]\nex:p | mandatory | 1..1 | |\n").unwrap();
        assert_eq!(p.classes.len(), 1);
        let prop = &p.classes[0].properties[0];
        assert_eq!(prop.min_card, 1);
        assert_eq!(prop.max_card, MaxCard::Bounded(1));
        assert_eq!(prop.obligation, Obligation::Mandatory);
    }

    #[test]
    fn duplicate_property_is_inconsistent() {
        let err = load("[class ex:C]\nex:p | optional | 0..1 | |\nex:p | optional | 0..* | |\n").unwrap_err();
        assert!(matches!(err, ProfileError::Consistency(_)));
    }

    #[test]
    fn obligation_cardinality_rules() {
        assert!(matches!(load("[class ex:C]\nex:p | mandatory | 0..1 | |\n"), Err(ProfileError::Consistency(_))));
        assert!(matches!(load("[class ex:C]\nex:p | optional | 1..1 | |\n"), Err(ProfileError::Consistency(_))));
        assert!(matches!(load("[class ex:C]\nex:p | optional | 0..0 | |\n"), Err(ProfileError::Consistency(_))));
        assert!(matches!(load("[class ex:C]\nex:p | mandatory | 3..2 | |\n"), Err(ProfileError::Consistency(_))));
        assert!(matches!(load("[class ex:C]\nex:p | optional | 0..1 | ^^xsd:date | ex:S\n"), Err(ProfileError::Consistency(_))));
    }

    #[test]
    fn unknown_columns_and_headers_are_rejected() {
        let err = load("[class ex:C]\nex:p | optional | 0..1 | | | extra\n").unwrap_err();
        assert!(matches!(err, ProfileError::Syntax { line: 6, .. }), "{err:?}");
        assert!(matches!(load_profile("colour blue\n"), Err(ProfileError::Syntax { line: 1, .. })));
        assert!(matches!(load_profile("version 1.0\n"), Err(ProfileError::Syntax { .. })));
        assert!(matches!(load("[class nope:C]\n"), Err(ProfileError::Syntax { .. })));
    }

    #[test]
    fn ranges_datatypes_and_vocabularies() {
        let p = load(
            "narrows ex:Sub ex:Super\n[class ex:C]\nsubClassOf ex:B\nex:p | recommended | 0..* | ex:D | ex:Sub\nex:q | optional | 0..1 | ^^xsd:date |\n",
        )
        .unwrap();
        let c = &p.classes[0];
        assert_eq!(c.sub_class_of.as_ref().unwrap().as_str(), "https://ex.org/ns#B");
        assert_eq!(c.properties[0].range_class.as_ref().unwrap().as_str(), "https://ex.org/ns#D");
        assert_eq!(c.properties[0].vocabulary_binding.as_ref().unwrap().as_str(), "https://ex.org/ns#Sub");
        assert_eq!(c.properties[1].datatype.as_ref().unwrap().as_str(), "http://www.w3.org/2001/XMLSchema#date");
        assert_eq!(p.narrows.len(), 1);
    }

    #[test]
    fn render_round_trips() {
        let p = load(
            "narrows ex:Sub <https://other.org/scheme>\n[class ex:C]\nsubClassOf ex:B\nex:p | recommended | 0..* | ex:D | ex:Sub\nex:q | mandatory | 2..5 | ^^xsd:date |\n<https://other.org/x/y> | optional | 0..1 | |\n",
        )
        .unwrap();
        assert_eq!(load_profile(&render_profile(&p)).unwrap(), p);
    }
}
