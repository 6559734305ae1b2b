use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::ShaclError;
use super::model::{NodeKind, NodeShape, Pattern, PropertyShape, Severity, ShapeSet};
use crate::io::read_rdf_list;
use crate::rdf::ns::{owl, rdf, rdfs, sh, toolkit, xsd};
use crate::rdf::{Graph, Iri, Term, merge_graphs};

/// Supplies the graphs named by `owl:imports`.
pub trait ImportResolver {
    fn resolve(&self, iri: &Iri) -> Option<Graph>;
}

/// Resolver that knows no imports.
pub struct NoImports;

impl ImportResolver for NoImports {
    fn resolve(&self, _: &Iri) -> Option<Graph> {
        None
    }
}

impl ImportResolver for HashMap<Iri, Graph> {
    fn resolve(&self, iri: &Iri) -> Option<Graph> {
        self.get(iri).cloned()
    }
}

impl ImportResolver for BTreeMap<Iri, Graph> {
    fn resolve(&self, iri: &Iri) -> Option<Graph> {
        self.get(iri).cloned()
    }
}

/// Resolves imports and extracts the node shapes of the closure.
pub fn load_shapes(graph: &Graph, resolver: &dyn ImportResolver) -> Result<ShapeSet, ShaclError> {
    let closure = resolve_imports(graph, resolver)?;
    shapes_from_graph(&closure)
}

/// Merges `graph` with everything it transitively imports. Each ontology is
/// merged once; blank nodes are renamed apart.
pub fn resolve_imports(graph: &Graph, resolver: &dyn ImportResolver) -> Result<Graph, ShaclError> {
    let mut merged = graph.clone();
    let mut seen: HashSet<Iri> = ontology_iris(graph);
    let mut queue: VecDeque<Iri> = imports_of(graph).into_iter().collect();
    while let Some(iri) = queue.pop_front() {
        if !seen.insert(iri.clone()) {
            continue;
        }
        let imported = resolver
            .resolve(&iri)
            .ok_or_else(|| ShaclError::UnresolvableImport(iri.clone()))?;
        seen.extend(ontology_iris(&imported));
        queue.extend(imports_of(&imported));
        merged = merge_graphs(&merged, &imported);
    }
    Ok(merged)
}

fn imports_of(graph: &Graph) -> BTreeSet<Iri> {
    let imports = Iri::from_static(owl::IMPORTS);
    graph
        .matches(None, Some(&imports), None)
        .into_iter()
        .filter_map(|t| t.object().as_iri().cloned())
        .collect()
}

fn ontology_iris(graph: &Graph) -> HashSet<Iri> {
    let imports = Iri::from_static(owl::IMPORTS);
    let ontology = Term::Iri(Iri::from_static(owl::ONTOLOGY));
    let typed = graph.subjects(&Iri::from_static(rdf::TYPE), &ontology);
    graph
        .matches(None, Some(&imports), None)
        .into_iter()
        .map(|t| t.subject())
        .chain(typed)
        .filter_map(|s| s.as_iri().cloned())
        .collect()
}

/// Extracts node shapes from an already import-resolved shapes graph.
pub fn shapes_from_graph(graph: &Graph) -> Result<ShapeSet, ShaclError> {
    let mut set = ShapeSet {
        subclass_of: subclass_axioms(graph),
        ..ShapeSet::default()
    };
    let path = Iri::from_static(sh::PATH);
    let mut candidates: BTreeSet<&Term> = BTreeSet::new();
    candidates.extend(graph.subjects(&Iri::from_static(rdf::TYPE), &Term::Iri(Iri::from_static(sh::NODE_SHAPE))));
    for p in [sh::TARGET_CLASS, sh::PROPERTY] {
        let p = Iri::from_static(p);
        candidates.extend(graph.matches(None, Some(&p), None).into_iter().map(|t| t.subject()));
    }
    for id in candidates {
        if graph.object(id, &path).is_some() {
            set.warnings
                .push(format!("{id}: targets on property shapes are not supported; shape ignored"));
            continue;
        }
        let shape = node_shape(graph, id, &mut set.warnings)?;
        set.shapes.push(shape);
    }
    Ok(set)
}

fn subclass_axioms(graph: &Graph) -> BTreeSet<(Iri, Iri)> {
    let sub = Iri::from_static(rdfs::SUB_CLASS_OF);
    graph
        .matches(None, Some(&sub), None)
        .into_iter()
        .filter_map(|t| Some((t.subject().as_iri()?.clone(), t.object().as_iri()?.clone())))
        .collect()
}

fn malformed(shape: &Term, reason: impl Into<String>) -> ShaclError {
    ShaclError::MalformedShape {
        shape: shape.to_string(),
        reason: reason.into(),
    }
}

fn node_shape(graph: &Graph, id: &Term, warnings: &mut Vec<String>) -> Result<NodeShape, ShaclError> {
    let mut shape = NodeShape::new(id.clone());
    let mut property_ids = Vec::new();
    let mut triples: Vec<_> = graph.outgoing(id).collect();
    triples.sort();
    for t in triples {
        let object = t.object();
        match t.predicate().as_str() {
            rdf::TYPE => {
                if object.as_iri().is_some_and(|c| c.as_str() == rdfs::CLASS)
                    && let Term::Iri(own) = id
                {
                    shape.target_classes.insert(own.clone());
                }
            }
            sh::TARGET_CLASS => match object {
                Term::Iri(class) => {
                    shape.target_classes.insert(class.clone());
                }
                _ => return Err(malformed(id, "sh:targetClass must be an IRI")),
            },
            sh::PROPERTY => property_ids.push(object),
            sh::DEACTIVATED => shape.deactivated = boolean(id, object)?,
            sh::CLOSED => {
                if boolean(id, object)? {
                    warnings.push(format!("{id}: sh:closed is not supported; shape treated as open"));
                }
            }
            sh::SEVERITY | sh::MESSAGE | sh::NAME | sh::DESCRIPTION | sh::ORDER | sh::GROUP => {}
            other if other.starts_with(sh::NS) => {
                warnings.push(format!("{id}: unsupported constraint <{other}> ignored"));
            }
            _ => {}
        }
    }
    for pid in property_ids {
        if let Some(property) = property_shape(graph, pid, warnings)? {
            shape.properties.push(property);
        }
    }
    shape.properties.sort_by(|a, b| (&a.path, &a.id).cmp(&(&b.path, &b.id)));
    Ok(shape)
}

fn property_shape(graph: &Graph, id: &Term, warnings: &mut Vec<String>) -> Result<Option<PropertyShape>, ShaclError> {
    let paths = graph.objects(id, &Iri::from_static(sh::PATH));
    let path = match paths.as_slice() {
        [] => return Err(malformed(id, "property shape without sh:path")),
        [Term::Iri(p)] => p.clone(),
        [_] => {
            warnings.push(format!("{id}: complex property paths are not supported; shape skipped"));
            return Ok(None);
        }
        _ => return Err(malformed(id, "more than one sh:path")),
    };
    let mut shape = PropertyShape::new(id.clone(), path);
    let mut pattern: Option<String> = None;
    let mut flags: Option<String> = None;
    let mut seen: HashSet<&str> = HashSet::new();
    let mut triples: Vec<_> = graph.outgoing(id).collect();
    triples.sort();
    for t in triples {
        let predicate = t.predicate().as_str();
        let object = t.object();
        let single_valued = [
            sh::MIN_COUNT,
            sh::MAX_COUNT,
            sh::NODE_KIND,
            sh::DATATYPE,
            sh::CLASS,
            sh::IN,
            sh::HAS_VALUE,
            sh::PATTERN,
            sh::FLAGS,
            sh::SEVERITY,
            sh::DEACTIVATED,
            toolkit::IN_SCHEME,
        ];
        if single_valued.contains(&predicate) && !seen.insert(predicate) {
            return Err(malformed(id, format!("more than one value for <{predicate}>")));
        }
        match predicate {
            sh::PATH | rdf::TYPE => {}
            sh::MIN_COUNT => shape.min_count = Some(count(id, object)?),
            sh::MAX_COUNT => shape.max_count = Some(count(id, object)?),
            sh::NODE_KIND => {
                let kind = object.as_iri().and_then(NodeKind::from_iri);
                shape.node_kind = Some(kind.ok_or_else(|| malformed(id, format!("unknown node kind {object}")))?);
            }
            sh::DATATYPE => shape.datatype = Some(iri(id, "sh:datatype", object)?),
            sh::CLASS => shape.class = Some(iri(id, "sh:class", object)?),
            sh::IN => {
                let values = read_rdf_list(graph, object).map_err(|e| malformed(id, format!("sh:in: {e}")))?;
                shape.allowed_values = Some(values);
            }
            sh::HAS_VALUE => shape.has_value = Some(object.clone()),
            sh::PATTERN => pattern = Some(text(id, "sh:pattern", object)?),
            sh::FLAGS => flags = Some(text(id, "sh:flags", object)?),
            sh::SEVERITY => {
                let severity = object.as_iri().and_then(Severity::from_iri);
                shape.severity = severity.ok_or_else(|| malformed(id, format!("unknown severity {object}")))?;
            }
            sh::MESSAGE => {
                // Several messages (one per language) are allowed; keep the first in term order.
                if shape.message.is_none() {
                    shape.message = Some(text(id, "sh:message", object)?);
                }
            }
            sh::DEACTIVATED => shape.deactivated = boolean(id, object)?,
            toolkit::IN_SCHEME => shape.required_scheme = Some(iri(id, "inScheme", object)?),
            sh::NAME | sh::DESCRIPTION | sh::ORDER | sh::GROUP => {}
            other if other.starts_with(sh::NS) => {
                warnings.push(format!("{id}: unsupported constraint <{other}> ignored"));
            }
            _ => {}
        }
    }
    match (pattern, flags) {
        (Some(source), flags) => {
            shape.pattern = Some(Pattern::new(source, flags).map_err(|e| malformed(id, format!("sh:pattern: {e}")))?);
        }
        (None, Some(_)) => return Err(malformed(id, "sh:flags without sh:pattern")),
        (None, None) => {}
    }
    if let (Some(min), Some(max)) = (shape.min_count, shape.max_count)
        && min > max
    {
        return Err(malformed(id, format!("sh:minCount {min} exceeds sh:maxCount {max}")));
    }
    if shape.allowed_values.is_some() && shape.required_scheme.is_some() {
        return Err(malformed(id, "sh:in and inScheme are mutually exclusive"));
    }
    Ok(Some(shape))
}

fn count(shape: &Term, object: &Term) -> Result<u64, ShaclError> {
    object
        .as_literal()
        .filter(|l| l.datatype().as_str() == xsd::INTEGER)
        .and_then(|l| l.lexical().trim_start_matches('+').parse().ok())
        .ok_or_else(|| malformed(shape, format!("count {object} is not a non-negative xsd:integer")))
}

fn boolean(shape: &Term, object: &Term) -> Result<bool, ShaclError> {
    match object.as_literal().filter(|l| l.datatype().as_str() == xsd::BOOLEAN).map(|l| l.lexical()) {
        Some("true" | "1") => Ok(true),
        Some("false" | "0") => Ok(false),
        _ => Err(malformed(shape, format!("{object} is not an xsd:boolean"))),
    }
}

fn iri(shape: &Term, what: &str, object: &Term) -> Result<Iri, ShaclError> {
    object
        .as_iri()
        .cloned()
        .ok_or_else(|| malformed(shape, format!("{what} must be an IRI, found {object}")))
}

fn text(shape: &Term, what: &str, object: &Term) -> Result<String, ShaclError> {
    object
        .as_literal()
        .map(|l| l.lexical().to_owned())
        .ok_or_else(|| malformed(shape, format!("{what} must be a literal, found {object}")))
}
