use super::model::ShapeSet;
use crate::rdf::ns::{rdf, rdfs, sh, toolkit};
use crate::rdf::{BlankNode, Graph, Iri, Literal, Term};

/// Renders a shape set as a SHACL shapes graph that `shapes_from_graph`
/// reads back to an equal set (warnings aside).
pub fn shapes_to_graph(set: &ShapeSet) -> Graph {
    let mut g = Graph::new();
    let p = Iri::from_static;
    let mut lists = 0usize;
    for (child, parent) in &set.subclass_of {
        g.add(child.clone(), p(rdfs::SUB_CLASS_OF), parent.clone());
    }
    for shape in &set.shapes {
        let id = shape.id.clone();
        g.add(id.clone(), p(rdf::TYPE), p(sh::NODE_SHAPE));
        for class in &shape.target_classes {
            g.add(id.clone(), p(sh::TARGET_CLASS), class.clone());
        }
        if shape.deactivated {
            g.add(id.clone(), p(sh::DEACTIVATED), Literal::boolean(true));
        }
        for prop in &shape.properties {
            let pid = prop.id.clone();
            g.add(id.clone(), p(sh::PROPERTY), pid.clone());
            g.add(pid.clone(), p(rdf::TYPE), p(sh::PROPERTY_SHAPE));
            g.add(pid.clone(), p(sh::PATH), prop.path.clone());
            g.add(pid.clone(), p(sh::SEVERITY), prop.severity.iri());
            if let Some(n) = prop.min_count {
                g.add(pid.clone(), p(sh::MIN_COUNT), Literal::integer(n as i64));
            }
            if let Some(n) = prop.max_count {
                g.add(pid.clone(), p(sh::MAX_COUNT), Literal::integer(n as i64));
            }
            if let Some(kind) = prop.node_kind {
                g.add(pid.clone(), p(sh::NODE_KIND), kind.iri());
            }
            if let Some(dt) = &prop.datatype {
                g.add(pid.clone(), p(sh::DATATYPE), dt.clone());
            }
            if let Some(class) = &prop.class {
                g.add(pid.clone(), p(sh::CLASS), class.clone());
            }
            if let Some(values) = &prop.allowed_values {
                let mut head = Term::Iri(p(rdf::NIL));
                for value in values.iter().rev() {
                    let cell = Term::Blank(BlankNode::new(format!("list{lists}")).expect("generated label"));
                    lists += 1;
                    g.add(cell.clone(), p(rdf::FIRST), value.clone());
                    g.add(cell.clone(), p(rdf::REST), head);
                    head = cell;
                }
                g.add(pid.clone(), p(sh::IN), head);
            }
            if let Some(value) = &prop.has_value {
                g.add(pid.clone(), p(sh::HAS_VALUE), value.clone());
            }
            if let Some(scheme) = &prop.required_scheme {
                g.add(pid.clone(), p(toolkit::IN_SCHEME), scheme.clone());
            }
            if let Some(pattern) = &prop.pattern {
                g.add(pid.clone(), p(sh::PATTERN), Literal::string(pattern.source()));
                if let Some(flags) = pattern.flags() {
                    g.add(pid.clone(), p(sh::FLAGS), Literal::string(flags));
                }
            }
            if let Some(message) = &prop.message {
                g.add(pid.clone(), p(sh::MESSAGE), Literal::string(message.clone()));
            }
            if prop.deactivated {
                g.add(pid, p(sh::DEACTIVATED), Literal::boolean(true));
            }
        }
    }
    g
}
