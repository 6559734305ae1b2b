//! Application profiles: a declarative model of classes and properties with
//! obligations, cardinalities, ranges and vocabulary bindings.

mod bundled;
mod compile;
mod document;
mod extension;
mod model;

use thiserror::Error;

use crate::rdf::Iri;

pub use bundled::{base_fragment, minimum_profile, minimum_profile_shapes};
pub use compile::{SchemeMembers, SchemeMode, compile_layered, compile_to_shapes, compile_with};
pub use document::{load_profile, render_profile};
pub use extension::{ExtensionRule, ExtensionViolation, check_extension, extension_violations};
pub use model::{ClassProfile, MaxCard, Obligation, Profile, PropertyProfile, Version};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("inconsistent profile: {0}")]
    Consistency(String),
    #[error("extension is based on {}, not <{expected}>", found.as_ref().map_or("nothing".to_owned(), |f| format!("<{f}>")))]
    BaseMismatch { expected: Iri, found: Option<Iri> },
}

impl Profile {
    /// The profile as seen by a record author: base classes and properties,
    /// with this profile's declarations taking precedence.
    pub fn effective(&self, base: &Profile) -> Profile {
        let mut classes = base.classes.clone();
        for class in &self.classes {
            match classes.iter_mut().find(|c| c.class_iri == class.class_iri) {
                Some(existing) => {
                    if class.sub_class_of.is_some() {
                        existing.sub_class_of = class.sub_class_of.clone();
                    }
                    for p in &class.properties {
                        match existing.properties.iter_mut().find(|q| q.property_iri == p.property_iri) {
                            Some(q) => *q = p.clone(),
                            None => existing.properties.push(p.clone()),
                        }
                    }
                }
                None => classes.push(class.clone()),
            }
        }
        let mut prefixes = self.prefixes.clone();
        for (label, ns) in base.prefixes.iter() {
            if prefixes.get(label).is_none() {
                prefixes.insert(label, ns.clone()).expect("prefix from a loaded profile");
            }
        }
        Profile {
            id: self.id.clone(),
            version: self.version,
            title: self.title.clone(),
            base_profile: self.base_profile.clone(),
            namespace: self.namespace.clone(),
            classes,
            narrows: base.narrows.union(&self.narrows).cloned().collect(),
            prefixes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effective_overrides_base() {
        let base = load_profile(
            "profile https://ex.org/b\nversion 1.0.0\nnamespace https://ex.org/ns#\nprefix ex https://ex.org/ns#\n[class ex:D]\nex:a | optional | 0..1 | |\nex:b | mandatory | 1..* | |\n",
        )
        .unwrap();
        let ext = load_profile(
            "profile https://ex.org/e\nversion 1.0.0\nnamespace https://ex.org/ns#\nbase https://ex.org/b\nprefix ex https://ex.org/ns#\n[class ex:D]\nex:a | mandatory | 1..1 | |\nex:c | optional | 0..1 | |\n[class ex:E]\n",
        )
        .unwrap();
        let eff = ext.effective(&base);
        let d = &eff.classes[0];
        let names: Vec<&str> = d.properties.iter().map(|p| p.property_iri.local_name()).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert_eq!(d.properties[0].obligation, Obligation::Mandatory);
        assert_eq!(eff.classes.len(), 2);
        assert_eq!(eff.id, ext.id);
    }
}
