use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::datatypes::is_well_formed;
use super::model::{NodeShape, PropertyShape, Severity, ShapeSet};
use crate::rdf::ns::{rdf, rdfs, sh, skos, toolkit};
use crate::rdf::{Graph, Iri, Term};

/// Membership test backing the native in-scheme constraint.
pub trait ConceptLookup {
    fn is_in_scheme(&self, value: &Term, scheme: &Iri) -> bool;
}

/// Looks membership up through `skos:inScheme` triples of a graph.
pub struct GraphConcepts<'g>(pub &'g Graph);

impl ConceptLookup for GraphConcepts<'_> {
    fn is_in_scheme(&self, value: &Term, scheme: &Iri) -> bool {
        value.is_iri() && self.0.objects(value, &Iri::from_static(skos::IN_SCHEME)).contains(&&Term::Iri(scheme.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationResult {
    pub focus_node: Term,
    pub path: Option<Iri>,
    pub source_shape: Term,
    pub source_constraint_component: Iri,
    pub severity: Severity,
    pub message: String,
    pub value: Option<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub conforms: bool,
    pub results: Vec<ValidationResult>,
}

impl ValidationReport {
    pub fn from_results(mut results: Vec<ValidationResult>) -> Self {
        results.sort_by(|a, b| {
            (&a.focus_node, &a.path, &a.source_constraint_component, &a.value, &a.source_shape).cmp(&(
                &b.focus_node,
                &b.path,
                &b.source_constraint_component,
                &b.value,
                &b.source_shape,
            ))
        });
        ValidationReport {
            conforms: results.iter().all(|r| r.severity != Severity::Violation),
            results,
        }
    }

    pub fn count(&self, severity: Severity) -> usize {
        self.results.iter().filter(|r| r.severity == severity).count()
    }

    pub fn max_severity(&self) -> Option<Severity> {
        self.results.iter().map(|r| r.severity).max()
    }
}

/// Validates `data`, resolving in-scheme constraints through the data graph's
/// own `skos:inScheme` statements.
pub fn validate(data: &Graph, shapes: &ShapeSet) -> ValidationReport {
    validate_with(data, shapes, &GraphConcepts(data))
}

pub fn validate_with(data: &Graph, shapes: &ShapeSet, concepts: &dyn ConceptLookup) -> ValidationReport {
    let hierarchy = ClassHierarchy::new(data, shapes);
    let instances = hierarchy.instances(data);
    let mut results = Vec::new();
    for shape in shapes.shapes.iter().filter(|s| !s.deactivated) {
        let focus: BTreeSet<&Term> = shape
            .target_classes
            .iter()
            .filter_map(|c| instances.get(c))
            .flatten()
            .copied()
            .collect();
        for node in focus {
            check_node(data, shape, node, &hierarchy, concepts, &mut results);
        }
    }
    ValidationReport::from_results(results)
}

fn check_node(
    data: &Graph,
    shape: &NodeShape,
    focus: &Term,
    hierarchy: &ClassHierarchy,
    concepts: &dyn ConceptLookup,
    results: &mut Vec<ValidationResult>,
) {
    for property in shape.properties.iter().filter(|p| !p.deactivated) {
        let values = data.objects(focus, &property.path);
        let mut report = |component: &'static str, value: Option<&Term>, default: String| {
            results.push(ValidationResult {
                focus_node: focus.clone(),
                path: Some(property.path.clone()),
                source_shape: property.id.clone(),
                source_constraint_component: Iri::from_static(component),
                severity: property.severity,
                message: property.message.clone().unwrap_or(default),
                value: value.cloned(),
            });
        };
        check_property(data, property, &values, hierarchy, concepts, &mut report);
    }
}

fn check_property(
    data: &Graph,
    p: &PropertyShape,
    values: &[&Term],
    hierarchy: &ClassHierarchy,
    concepts: &dyn ConceptLookup,
    report: &mut dyn FnMut(&'static str, Option<&Term>, String),
) {
    let n = values.len() as u64;
    if let Some(min) = p.min_count
        && n < min
    {
        report(sh::MIN_COUNT_COMPONENT, None, format!("Less than {min} values on <{}>", p.path));
    }
    if let Some(max) = p.max_count
        && n > max
    {
        report(sh::MAX_COUNT_COMPONENT, None, format!("More than {max} values on <{}>", p.path));
    }
    if let Some(required) = &p.has_value
        && !values.contains(&required)
    {
        report(sh::HAS_VALUE_COMPONENT, None, format!("Missing required value {required}"));
    }
    for value in values {
        let value = *value;
        if let Some(kind) = p.node_kind
            && !kind.admits(value)
        {
            report(sh::NODE_KIND_COMPONENT, Some(value), format!("Value is not of node kind <{}>", kind.iri()));
        }
        if let Some(datatype) = &p.datatype {
            let ok = value
                .as_literal()
                .is_some_and(|l| l.datatype() == datatype && is_well_formed(l));
            if !ok {
                report(sh::DATATYPE_COMPONENT, Some(value), format!("Value is not a valid literal of datatype <{datatype}>"));
            }
        }
        if let Some(class) = &p.class
            && !hierarchy.is_instance(data, value, class)
        {
            report(sh::CLASS_COMPONENT, Some(value), format!("Value is not an instance of <{class}>"));
        }
        if let Some(allowed) = &p.allowed_values
            && !allowed.contains(value)
        {
            report(sh::IN_COMPONENT, Some(value), "Value is not in the list of allowed values".to_owned());
        }
        if let Some(pattern) = &p.pattern {
            let text = match value {
                Term::Iri(iri) => Some(iri.as_str()),
                Term::Literal(l) => Some(l.lexical()),
                Term::Blank(_) => None,
            };
            if !text.is_some_and(|t| pattern.is_match(t)) {
                report(
                    sh::PATTERN_COMPONENT,
                    Some(value),
                    format!("Value does not match pattern \"{}\"", pattern.source()),
                );
            }
        }
        if let Some(scheme) = &p.required_scheme
            && !concepts.is_in_scheme(value, scheme)
        {
            report(toolkit::IN_SCHEME_COMPONENT, Some(value), format!("Value is not a concept of scheme <{scheme}>"));
        }
    }
}

/// `rdfs:subClassOf` closure over the data graph plus the shapes' own axioms.
struct ClassHierarchy {
    supers: HashMap<Iri, BTreeSet<Iri>>,
}

impl ClassHierarchy {
    fn new(data: &Graph, shapes: &ShapeSet) -> Self {
        let sub = Iri::from_static(rdfs::SUB_CLASS_OF);
        let mut direct: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        let data_axioms = data
            .matches(None, Some(&sub), None)
            .into_iter()
            .filter_map(|t| Some((t.subject().as_iri()?.clone(), t.object().as_iri()?.clone())));
        for (child, parent) in data_axioms.chain(shapes.subclass_of.iter().cloned()) {
            direct.entry(child).or_default().insert(parent);
        }
        let mut supers = HashMap::new();
        for class in direct.keys() {
            let mut seen = BTreeSet::from([class.clone()]);
            let mut stack = vec![class];
            while let Some(c) = stack.pop() {
                for parent in direct.get(c).into_iter().flatten() {
                    if seen.insert(parent.clone()) {
                        stack.push(parent);
                    }
                }
            }
            supers.insert(class.clone(), seen);
        }
        ClassHierarchy { supers }
    }

    fn is_subclass(&self, class: &Iri, of: &Iri) -> bool {
        class == of || self.supers.get(class).is_some_and(|s| s.contains(of))
    }

    fn is_instance(&self, data: &Graph, node: &Term, class: &Iri) -> bool {
        !node.is_literal()
            && data
                .objects(node, &Iri::from_static(rdf::TYPE))
                .into_iter()
                .filter_map(Term::as_iri)
                .any(|t| self.is_subclass(t, class))
    }

    /// Every class (including superclasses) mapped to its instances.
    fn instances<'g>(&self, data: &'g Graph) -> HashMap<Iri, BTreeSet<&'g Term>> {
        let mut out: HashMap<Iri, BTreeSet<&Term>> = HashMap::new();
        for t in data.matches(None, Some(&Iri::from_static(rdf::TYPE)), None) {
            let Term::Iri(class) = t.object() else { continue };
            match self.supers.get(class) {
                Some(all) => {
                    for c in all {
                        out.entry(c.clone()).or_default().insert(t.subject());
                    }
                }
                None => {
                    out.entry(class.clone()).or_default().insert(t.subject());
                }
            }
        }
        out
    }
}
