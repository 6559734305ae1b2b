use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::ProfileError;
use super::model::{Profile, PropertyProfile};
use crate::rdf::Iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ExtensionRule {
    ObligationDecreased,
    MinCardDecreased,
    MaxCardIncreased,
    RangeNotPreserved,
    DatatypeNotPreserved,
    VocabularyNotPreserved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtensionViolation {
    pub class_iri: Iri,
    pub property_iri: Iri,
    /// Every rule the restated property breaks, in rule order.
    pub rules: Vec<ExtensionRule>,
    pub detail: String,
}

/// Checks that `extension` lawfully extends `base`. A profile also counts as
/// extending itself.
pub fn check_extension(base: &Profile, extension: &Profile) -> Result<Vec<ExtensionViolation>, ProfileError> {
    if extension.base_profile.as_ref() != Some(&base.id) && extension.id != base.id {
        return Err(ProfileError::BaseMismatch {
            expected: base.id.clone(),
            found: extension.base_profile.clone(),
        });
    }
    Ok(extension_violations(base, extension))
}

/// The extension rules alone, without the base-identity precondition.
pub fn extension_violations(base: &Profile, extension: &Profile) -> Vec<ExtensionViolation> {
    let subclasses = closure(
        base.classes
            .iter()
            .chain(&extension.classes)
            .filter_map(|c| Some((c.class_iri.clone(), c.sub_class_of.clone()?))),
    );
    let narrows = closure(base.narrows.iter().chain(&extension.narrows).cloned());
    let mut out = Vec::new();
    for base_class in &base.classes {
        let Some(ext_class) = extension.class(&base_class.class_iri) else { continue };
        for b in &base_class.properties {
            let Some(e) = ext_class.property(&b.property_iri) else { continue };
            let broken = compare(b, e, &subclasses, &narrows);
            if broken.is_empty() {
                continue;
            }
            let (rules, details): (Vec<_>, Vec<_>) = broken.into_iter().unzip();
            out.push(ExtensionViolation {
                class_iri: base_class.class_iri.clone(),
                property_iri: b.property_iri.clone(),
                rules,
                detail: details.join("; "),
            });
        }
    }
    out
}

fn compare(
    b: &PropertyProfile,
    e: &PropertyProfile,
    subclasses: &Closure,
    narrows: &Closure,
) -> Vec<(ExtensionRule, String)> {
    let mut out = Vec::new();
    if e.obligation < b.obligation {
        out.push((ExtensionRule::ObligationDecreased, format!("obligation lowered from {} to {}", b.obligation, e.obligation)));
    }
    if e.min_card < b.min_card {
        out.push((ExtensionRule::MinCardDecreased, format!("minimum cardinality lowered from {} to {}", b.min_card, e.min_card)));
    }
    if e.max_card > b.max_card {
        out.push((ExtensionRule::MaxCardIncreased, format!("maximum cardinality raised from {} to {}", b.max_card, e.max_card)));
    }
    if let Some(range) = &b.range_class
        && !e.range_class.as_ref().is_some_and(|r| closure_contains(subclasses, r, range))
    {
        out.push((ExtensionRule::RangeNotPreserved, format!("range <{range}> not preserved or narrowed")));
    }
    if let Some(dt) = &b.datatype
        && e.datatype.as_ref() != Some(dt)
    {
        out.push((ExtensionRule::DatatypeNotPreserved, format!("datatype <{dt}> not preserved")));
    }
    if let Some(scheme) = &b.vocabulary_binding
        && !e.vocabulary_binding.as_ref().is_some_and(|s| closure_contains(narrows, s, scheme))
    {
        out.push((
            ExtensionRule::VocabularyNotPreserved,
            format!("vocabulary <{scheme}> not preserved or narrowed by a declared sub-scheme"),
        ));
    }
    out
}

type Closure = BTreeMap<Iri, BTreeSet<Iri>>;

fn closure(pairs: impl Iterator<Item = (Iri, Iri)>) -> Closure {
    let mut direct: Closure = BTreeMap::new();
    for (child, parent) in pairs {
        direct.entry(child).or_default().insert(parent);
    }
    let mut all = Closure::new();
    for start in direct.keys() {
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(node) = stack.pop() {
            for parent in direct.get(node).into_iter().flatten() {
                if seen.insert(parent.clone()) {
                    stack.push(parent);
                }
            }
        }
        all.insert(start.clone(), seen);
    }
    all
}

fn closure_contains(closure: &Closure, child: &Iri, ancestor: &Iri) -> bool {
    child == ancestor || closure.get(child).is_some_and(|s| s.contains(ancestor))
}
