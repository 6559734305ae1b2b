use std::collections::BTreeSet;

use super::model::{ClassProfile, Obligation, Profile, PropertyProfile};
use crate::rdf::ns::rdfs;
use crate::rdf::{Iri, Term};
use crate::shacl::{NodeKind, NodeShape, PropertyShape, Severity, ShapeSet};

/// Enumerates the members of a concept scheme, for `sh:in` output.
pub trait SchemeMembers {
    fn members(&self, scheme: &Iri) -> Option<Vec<Iri>>;
}

/// How vocabulary bindings compile.
#[derive(Clone, Copy)]
pub enum SchemeMode<'a> {
    /// The native in-scheme constraint.
    Native,
    /// `sh:in` over the scheme's concepts; unknown schemes stay native.
    Enumerate(&'a dyn SchemeMembers),
}

pub fn compile_to_shapes(profile: &Profile) -> ShapeSet {
    compile_with(profile, SchemeMode::Native)
}

/// Compiles one node shape per class and, per property, a Violation shape
/// for counts and ranges plus (for recommended properties) a Warning shape
/// for presence.
pub fn compile_with(profile: &Profile, mode: SchemeMode<'_>) -> ShapeSet {
    let shape_ns = format!("{}/shapes#", profile.id.as_str().trim_end_matches(['/', '#']));
    let mut set = ShapeSet::default();
    for class in &profile.classes {
        if let Some(sup) = &class.sub_class_of {
            set.subclass_of.insert((class.class_iri.clone(), sup.clone()));
        }
        set.shapes.push(node_shape(&shape_ns, class, mode));
    }
    set
}

/// Compiles each profile in turn into one set, as a base and its
/// extensions are validated together.
pub fn compile_layered(profiles: &[&Profile], mode: SchemeMode<'_>) -> ShapeSet {
    let mut set = ShapeSet::default();
    for profile in profiles {
        let layer = compile_with(profile, mode);
        set.shapes.extend(layer.shapes);
        set.subclass_of.extend(layer.subclass_of);
    }
    set
}

fn node_shape(shape_ns: &str, class: &ClassProfile, mode: SchemeMode<'_>) -> NodeShape {
    let stem = format!("{shape_ns}{}", class.class_iri.local_name());
    let mut shape = NodeShape::new(shape_iri(&stem));
    shape.target_classes = BTreeSet::from([class.class_iri.clone()]);
    for p in &class.properties {
        let prop_stem = format!("{stem}-{}", p.property_iri.local_name());
        let main = property_shape(shape_iri(&prop_stem), p, mode);
        if p.obligation == Obligation::Recommended {
            let mut presence = PropertyShape::new(shape_iri(&format!("{prop_stem}-recommended")), p.property_iri.clone());
            presence.min_count = Some(p.min_card.max(1));
            presence.severity = Severity::Warning;
            if main.constraint_count() > 0 {
                shape.properties.push(main);
            }
            shape.properties.push(presence);
        } else {
            shape.properties.push(main);
        }
    }
    shape
}

fn shape_iri(text: &str) -> Term {
    Term::Iri(Iri::new(text).unwrap_or_else(|_| Iri::new(text.replace(char::is_whitespace, "_")).expect("sanitized IRI")))
}

fn property_shape(id: Term, p: &PropertyProfile, mode: SchemeMode<'_>) -> PropertyShape {
    let mut shape = PropertyShape::new(id, p.property_iri.clone());
    if p.min_card > 0 {
        shape.min_count = Some(p.min_card);
    }
    shape.max_count = p.max_card.bound();
    match &p.range_class {
        // Every IRI denotes an rdfs:Resource, so the range only demands an IRI.
        Some(class) if class.as_str() == rdfs::RESOURCE => shape.node_kind = Some(NodeKind::Iri),
        Some(class) => shape.class = Some(class.clone()),
        None => {}
    }
    shape.datatype = p.datatype.clone();
    if let Some(scheme) = &p.vocabulary_binding {
        let members = match mode {
            SchemeMode::Native => None,
            SchemeMode::Enumerate(lookup) => lookup.members(scheme),
        };
        match members {
            Some(members) => shape.allowed_values = Some(members.into_iter().map(Term::Iri).collect()),
            None => shape.required_scheme = Some(scheme.clone()),
        }
    }
    shape
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::load_profile;

    fn profile(body: &str) -> Profile {
        load_profile(&format!(
            "profile https://ex.org/p\nversion 1.0.0\nnamespace https://ex.org/ns#\nprefix ex https://ex.org/ns#\n{body}"
        ))
        .unwrap()
    }

    #[test]
    fn optional_without_range_has_no_counts() {
        let set = compile_to_shapes(&profile("[class ex:C]\nex:p | optional | 0..* | |\n"));
        let p = &set.shapes[0].properties[0];
        assert_eq!((p.min_count, p.max_count), (None, None));
        assert_eq!(p.constraint_count(), 0);
    }

    #[test]
    fn mandatory_binding() {
        let set = compile_to_shapes(&profile("[class ex:C]\nex:freq | mandatory | 1..1 | | ex:Scheme\n"));
        let p = &set.shapes[0].properties[0];
        assert_eq!(p.min_count, Some(1));
        assert_eq!(p.severity, Severity::Violation);
        assert_eq!(p.required_scheme.as_ref().unwrap().as_str(), "https://ex.org/ns#Scheme");
    }

    #[test]
    fn recommended_warns() {
        let set = compile_to_shapes(&profile("[class ex:C]\nex:p | recommended | 0..* | |\n"));
        assert_eq!(set.shapes[0].properties.len(), 1);
        let p = &set.shapes[0].properties[0];
        assert_eq!((p.min_count, p.severity), (Some(1), Severity::Warning));

        let set = compile_to_shapes(&profile("[class ex:C]\nex:p | recommended | 0..1 | ex:D |\n"));
        let severities: Vec<Severity> = set.shapes[0].properties.iter().map(|p| p.severity).collect();
        assert_eq!(severities, [Severity::Violation, Severity::Warning]);
    }

    #[test]
    fn enumerated_schemes() {
        struct Fixed;
        impl SchemeMembers for Fixed {
            fn members(&self, _: &Iri) -> Option<Vec<Iri>> {
                Some(vec![Iri::from_static("https://ex.org/a"), Iri::from_static("https://ex.org/b")])
            }
        }
        let set = compile_with(&profile("[class ex:C]\nex:p | optional | 0..1 | | ex:S\n"), SchemeMode::Enumerate(&Fixed));
        let p = &set.shapes[0].properties[0];
        assert_eq!(p.allowed_values.as_ref().unwrap().len(), 2);
        assert!(p.required_scheme.is_none());
    }

    #[test]
    fn subclass_and_resource_ranges() {
        let set = compile_to_shapes(&profile(
            "[class ex:C]\nsubClassOf ex:B\nex:url | mandatory | 1..* | rdfs:Resource |\n",
        ));
        assert!(set.subclass_of.contains(&(Iri::from_static("https://ex.org/ns#C"), Iri::from_static("https://ex.org/ns#B"))));
        let p = &set.shapes[0].properties[0];
        assert_eq!(p.node_kind, Some(NodeKind::Iri));
        assert!(p.class.is_none());
    }
}
