//! Lexical-space checks for the XSD datatypes a literal can claim.

use std::sync::LazyLock;

use regex::Regex;

use crate::rdf::Literal;
use crate::rdf::ns::{rdf, xsd};

static DECIMAL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$").unwrap());
static DOUBLE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?|[+-]?INF|NaN)$").unwrap()
});
static DATE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^-?[0-9]{4,}-[0-9]{2}-[0-9]{2}(Z|[+-][0-9]{2}:[0-9]{2})?$").unwrap());
static DATE_TIME: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^-?[0-9]{4,}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}(\.[0-9]+)?(Z|[+-][0-9]{2}:[0-9]{2})?$")
        .unwrap()
});
static G_YEAR: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^-?[0-9]{4,}(Z|[+-][0-9]{2}:[0-9]{2})?$").unwrap());

/// Whether the literal's lexical form is in the lexical space of its datatype.
/// Unknown datatypes are accepted.
pub(crate) fn is_well_formed(literal: &Literal) -> bool {
    let lexical = literal.lexical();
    let local = match literal.datatype().as_str().strip_prefix(xsd::NS) {
        Some(local) => local,
        None => return literal.datatype().as_str() != rdf::LANG_STRING || literal.language().is_some(),
    };
    match local {
        "boolean" => matches!(lexical, "true" | "false" | "1" | "0"),
        "decimal" => DECIMAL.is_match(lexical),
        "double" | "float" => DOUBLE.is_match(lexical),
        "date" => DATE.is_match(lexical) && valid_date(lexical.trim_start_matches('-')),
        "dateTime" => DATE_TIME.is_match(lexical) && valid_date(lexical.trim_start_matches('-')),
        "gYear" => G_YEAR.is_match(lexical),
        _ => match integer_bounds(local) {
            Some((min, max)) => parse_integer(lexical).is_some_and(|v| min.is_none_or(|m| v >= m) && max.is_none_or(|m| v <= m)),
            None => true,
        },
    }
}

fn parse_integer(lexical: &str) -> Option<i128> {
    let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    lexical.parse().ok()
}

fn integer_bounds(local: &str) -> Option<(Option<i128>, Option<i128>)> {
    Some(match local {
        "integer" => (None, None),
        "nonNegativeInteger" => (Some(0), None),
        "positiveInteger" => (Some(1), None),
        "nonPositiveInteger" => (None, Some(0)),
        "negativeInteger" => (None, Some(-1)),
        "long" => (Some(i64::MIN.into()), Some(i64::MAX.into())),
        "int" => (Some(i32::MIN.into()), Some(i32::MAX.into())),
        "short" => (Some(i16::MIN.into()), Some(i16::MAX.into())),
        "byte" => (Some(i8::MIN.into()), Some(i8::MAX.into())),
        "unsignedLong" => (Some(0), Some(u64::MAX.into())),
        "unsignedInt" => (Some(0), Some(u32::MAX.into())),
        "unsignedShort" => (Some(0), Some(u16::MAX.into())),
        "unsignedByte" => (Some(0), Some(u8::MAX.into())),
        _ => return None,
    })
}

fn valid_date(text: &str) -> bool {
    let mut parts = text.splitn(3, '-');
    let (Some(year), Some(month), Some(rest)) = (parts.next(), parts.next(), parts.next()) else {
        return false;
    };
    let (Ok(year), Ok(month), Ok(day)) = (year.parse::<i64>(), month.parse::<u32>(), rest[..2].parse::<u32>()) else {
        return false;
    };
    let leap = year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
    let days = match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if leap => 29,
        2 => 28,
        _ => return false,
    };
    (1..=days).contains(&day)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Iri;

    fn typed(lexical: &str, local: &str) -> Literal {
        Literal::typed(lexical, Iri::new(format!("{}{local}", xsd::NS)).unwrap())
    }

    #[test]
    fn integers() {
        assert!(is_well_formed(&typed("-12", "integer")));
        assert!(!is_well_formed(&typed("1.5", "integer")));
        assert!(!is_well_formed(&typed("-1", "nonNegativeInteger")));
        assert!(!is_well_formed(&typed("300", "byte")));
        assert!(!is_well_formed(&typed("", "integer")));
    }

    #[test]
    fn dates() {
        assert!(is_well_formed(&typed("2024-02-29", "date")));
        assert!(!is_well_formed(&typed("2023-02-29", "date")));
        assert!(is_well_formed(&typed("2024-01-01T10:00:00Z", "dateTime")));
        assert!(!is_well_formed(&typed("yesterday", "date")));
    }

    #[test]
    fn other_types() {
        assert!(is_well_formed(&typed("true", "boolean")));
        assert!(!is_well_formed(&typed("yes", "boolean")));
        assert!(is_well_formed(&typed("1.5E3", "double")));
        assert!(is_well_formed(&typed("anything", "string")));
        assert!(is_well_formed(&Literal::typed("x", Iri::from_static("http://ex.org/dt"))));
    }
}
