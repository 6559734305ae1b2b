use super::validate::ValidationReport;
use crate::rdf::ns::{rdf, sh};
use crate::rdf::{BlankNode, Graph, Iri, Literal, Term};

/// Renders a report with the SHACL results vocabulary: one report node and
/// one result node per result.
pub fn report_to_graph(report: &ValidationReport) -> Graph {
    let mut g = Graph::new();
    let root = Term::Blank(BlankNode::new("report").expect("static label"));
    let p = Iri::from_static;
    g.add(root.clone(), p(rdf::TYPE), p(sh::VALIDATION_REPORT));
    g.add(root.clone(), p(sh::CONFORMS), Literal::boolean(report.conforms));
    for (i, r) in report.results.iter().enumerate() {
        let node = Term::Blank(BlankNode::new(format!("result{i}")).expect("generated label"));
        g.add(root.clone(), p(sh::RESULT), node.clone());
        g.add(node.clone(), p(rdf::TYPE), p(sh::VALIDATION_RESULT));
        g.add(node.clone(), p(sh::FOCUS_NODE), r.focus_node.clone());
        if let Some(path) = &r.path {
            g.add(node.clone(), p(sh::RESULT_PATH), path.clone());
        }
        if let Some(value) = &r.value {
            g.add(node.clone(), p(sh::VALUE), value.clone());
        }
        g.add(node.clone(), p(sh::RESULT_SEVERITY), r.severity.iri());
        g.add(node.clone(), p(sh::SOURCE_SHAPE), r.source_shape.clone());
        g.add(node.clone(), p(sh::SOURCE_CONSTRAINT_COMPONENT), r.source_constraint_component.clone());
        g.add(node, p(sh::RESULT_MESSAGE), Literal::string(r.message.clone()));
    }
    g
}
