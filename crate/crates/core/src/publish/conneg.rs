//! Accept-header negotiation between RDF serializations and an HTML view.

use std::fmt;

use super::PublishError;
use crate::io::SerializationFormat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Representation {
    Rdf(SerializationFormat),
    Html,
}

impl Representation {
    /// Server preference order, most preferred first.
    pub const ALL: [Representation; 4] = [
        Representation::Rdf(SerializationFormat::Turtle),
        Representation::Rdf(SerializationFormat::JsonLd),
        Representation::Rdf(SerializationFormat::NTriples),
        Representation::Html,
    ];

    pub fn media_type(self) -> &'static str {
        match self {
            Representation::Rdf(f) => f.media_type(),
            Representation::Html => "text/html",
        }
    }

    fn rank(self) -> usize {
        Self::ALL.iter().position(|r| *r == self).expect("every representation is ranked")
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.media_type())
    }
}

/// One media range of an Accept header. `q` is in thousandths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptEntry {
    pub media_type: String,
    pub q: u16,
}

impl AcceptEntry {
    /// 3 for an exact type, 2 for `type/*`, 1 for `*/*`, 0 for no match.
    fn specificity(&self, media_type: &str) -> u8 {
        let (kind, _) = media_type.split_once('/').expect("representation media types have a slash");
        match self.media_type.as_str() {
            "*/*" => 1,
            range if range.strip_suffix("/*") == Some(kind) => 2,
            range if range == media_type => 3,
            _ => 0,
        }
    }
}

/// Accept entries in header order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptPreference {
    pub entries: Vec<AcceptEntry>,
}

impl AcceptPreference {
    /// A missing or blank header accepts anything.
    pub fn parse(header: Option<&str>) -> Result<Self, PublishError> {
        let header = header.map(str::trim).filter(|h| !h.is_empty()).unwrap_or("*/*");
        let mut entries = Vec::new();
        for part in header.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let malformed = || PublishError::MalformedAcceptHeader(part.to_owned());
            let mut params = part.split(';').map(str::trim);
            let media_type = params.next().unwrap_or_default().to_ascii_lowercase();
            let (kind, sub) = media_type.split_once('/').ok_or_else(malformed)?;
            if kind.is_empty() || sub.is_empty() || (kind == "*" && sub != "*") || !media_type.chars().all(is_token_char) {
                return Err(malformed());
            }
            let mut q = 1000;
            for param in params {
                let (name, value) = param.split_once('=').ok_or_else(malformed)?;
                if name.trim().eq_ignore_ascii_case("q") {
                    q = parse_qvalue(value.trim()).ok_or_else(malformed)?;
                }
            }
            entries.push(AcceptEntry { media_type, q });
        }
        if entries.is_empty() {
            return Err(PublishError::MalformedAcceptHeader(header.to_owned()));
        }
        Ok(AcceptPreference { entries })
    }

    /// The q the header gives `media_type`: that of the most specific matching
    /// range, the first one on equal specificity.
    pub fn quality(&self, media_type: &str) -> u16 {
        let mut best: Option<(u8, u16)> = None;
        for entry in &self.entries {
            let s = entry.specificity(media_type);
            if s > 0 && best.is_none_or(|(b, _)| s > b) {
                best = Some((s, entry.q));
            }
        }
        best.map_or(0, |(_, q)| q)
    }
}

fn is_token_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "!#$%&'*+-.^_`|~/".contains(c)
}

/// `0`, `1`, or a decimal with at most three places, in thousandths.
fn parse_qvalue(text: &str) -> Option<u16> {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.len() > 3 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let frac_value: u16 = format!("{frac:0<3}").parse().ok()?;
    match int {
        "0" => Some(frac_value),
        "1" if frac_value == 0 => Some(1000),
        _ => None,
    }
}

/// Picks the highest-q representation among `available`; ties go to the
/// server preference order. A q of 0 excludes.
pub fn negotiate(accept: &AcceptPreference, available: &[Representation]) -> Result<Representation, PublishError> {
    available
        .iter()
        .map(|&r| (accept.quality(r.media_type()), r))
        .filter(|(q, _)| *q > 0)
        .max_by(|(qa, ra), (qb, rb)| qa.cmp(qb).then(rb.rank().cmp(&ra.rank())))
        .map(|(_, r)| r)
        .ok_or(PublishError::NotAcceptable)
}
