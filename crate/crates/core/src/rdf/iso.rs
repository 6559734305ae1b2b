//! Blank-node-aware graph comparison.
//!
//! Blank nodes are coloured by iterated signature refinement: a node's new
//! colour is the rank of (old colour, sorted multiset of incident edges),
//! where an edge names its predicate, its direction and either the ground
//! term on the other end or that blank node's colour. When refinement leaves
//! cells with more than one node, the search individualises one node per
//! cell and backtracks over the candidates on the other side.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::graph::Graph;
use super::term::{BlankNode, Iri, Term, Triple};

#[derive(Debug, Clone)]
enum Other {
    Ground(Term),
    Blank(usize),
    Itself,
}

#[derive(Debug, Clone)]
struct Edge {
    outgoing: bool,
    predicate: Iri,
    other: Other,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum NeighborKey<'a> {
    Itself,
    Ground(&'a Term),
    Blank(u32),
}

type Signature<'a> = (u32, Vec<(bool, &'a Iri, NeighborKey<'a>)>);

/// Blank nodes of one graph with their incident edges.
struct BlankStructure {
    nodes: Vec<BlankNode>,
    edges: Vec<Vec<Edge>>,
}

impl BlankStructure {
    fn new(graph: &Graph) -> Self {
        let nodes: Vec<BlankNode> = graph.blank_nodes().into_iter().cloned().collect();
        let index: HashMap<&BlankNode, usize> = nodes.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut edges = vec![Vec::new(); nodes.len()];
        for t in graph.iter().filter(|t| !t.is_ground()) {
            let s = t.subject().as_blank().map(|b| index[b]);
            let o = t.object().as_blank().map(|b| index[b]);
            match (s, o) {
                (Some(si), Some(oi)) if si == oi => {
                    edges[si].push(Edge {
                        outgoing: true,
                        predicate: t.predicate().clone(),
                        other: Other::Itself,
                    });
                }
                (Some(si), Some(oi)) => {
                    edges[si].push(Edge {
                        outgoing: true,
                        predicate: t.predicate().clone(),
                        other: Other::Blank(oi),
                    });
                    edges[oi].push(Edge {
                        outgoing: false,
                        predicate: t.predicate().clone(),
                        other: Other::Blank(si),
                    });
                }
                (Some(si), None) => edges[si].push(Edge {
                    outgoing: true,
                    predicate: t.predicate().clone(),
                    other: Other::Ground(t.object().clone()),
                }),
                (None, Some(oi)) => edges[oi].push(Edge {
                    outgoing: false,
                    predicate: t.predicate().clone(),
                    other: Other::Ground(t.subject().clone()),
                }),
                (None, None) => unreachable!("ground triples are filtered out"),
            }
        }
        BlankStructure { nodes, edges }
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }
}

/// Refines `colors` (indexed over the concatenation of `sides`) until the
/// number of colour classes stops growing. Colours are comparable across
/// sides because ranks are assigned over the union.
fn refine(sides: &[&BlankStructure], colors: &mut [u32]) {
    let mut class_count = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut signatures: Vec<Signature<'_>> = Vec::with_capacity(colors.len());
        let mut offset = 0;
        for side in sides {
            for (local, edges) in side.edges.iter().enumerate() {
                let mut neigh: Vec<(bool, &Iri, NeighborKey<'_>)> = edges
                    .iter()
                    .map(|e| {
                        let key = match &e.other {
                            Other::Ground(t) => NeighborKey::Ground(t),
                            Other::Blank(j) => NeighborKey::Blank(colors[offset + j]),
                            Other::Itself => NeighborKey::Itself,
                        };
                        (e.outgoing, &e.predicate, key)
                    })
                    .collect();
                neigh.sort();
                signatures.push((colors[offset + local], neigh));
            }
            offset += side.len();
        }
        let ranks: BTreeMap<&Signature<'_>, u32> = signatures
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(rank, sig)| (sig, rank as u32))
            .collect();
        let next: Vec<u32> = signatures.iter().map(|sig| ranks[sig]).collect();
        let next_count = ranks.len();
        colors.copy_from_slice(&next);
        if next_count == class_count {
            return;
        }
        class_count = next_count;
    }
}

fn histogram(colors: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Returns a blank-node bijection mapping `left` onto `right` exactly, if one
/// exists.
pub fn find_blank_bijection(left: &Graph, right: &Graph) -> Option<HashMap<BlankNode, BlankNode>> {
    if left.len() != right.len() {
        return None;
    }
    let ground_left: Vec<&Triple> = left.iter().filter(|t| t.is_ground()).collect();
    let ground_right: Vec<&Triple> = right.iter().filter(|t| t.is_ground()).collect();
    if ground_left != ground_right {
        return None;
    }
    let a = BlankStructure::new(left);
    let b = BlankStructure::new(right);
    if a.len() != b.len() {
        return None;
    }
    let mut colors = vec![0u32; a.len() + b.len()];
    search(&a, &b, right, &mut colors)
}

fn search(
    a: &BlankStructure,
    b: &BlankStructure,
    right: &Graph,
    colors: &mut [u32],
) -> Option<HashMap<BlankNode, BlankNode>> {
    refine(&[a, b], colors);
    let (ca, cb) = colors.split_at(a.len());
    let hist = histogram(ca);
    if hist != histogram(cb) {
        return None;
    }
    let cell = hist
        .iter()
        .filter(|&(_, &n)| n > 1)
        .min_by_key(|&(&c, &n)| (n, c))
        .map(|(&c, _)| c);
    let Some(cell) = cell else {
        let by_color: HashMap<u32, usize> = cb.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        let mapping: HashMap<BlankNode, BlankNode> = ca
            .iter()
            .enumerate()
            .map(|(i, c)| (a.nodes[i].clone(), b.nodes[by_color[c]].clone()))
            .collect();
        return verify(a, right, &mapping).then_some(mapping);
    };
    let x = ca.iter().position(|&c| c == cell).expect("cell is nonempty");
    let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
    let candidates: Vec<usize> = cb
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == cell)
        .map(|(j, _)| j)
        .collect();
    for y in candidates {
        let mut trial = colors.to_vec();
        trial[x] = fresh;
        trial[a.len() + y] = fresh;
        if let Some(found) = search(a, b, right, &mut trial) {
            return Some(found);
        }
    }
    None
}

fn verify(a: &BlankStructure, right: &Graph, mapping: &HashMap<BlankNode, BlankNode>) -> bool {
    let map = |t: &Term| match t {
        Term::Blank(bn) => Term::Blank(mapping[bn].clone()),
        other => other.clone(),
    };
    a.nodes.iter().enumerate().all(|(i, node)| {
        a.edges[i].iter().filter(|e| e.outgoing).all(|e| {
            let subject = Term::Blank(mapping[node].clone());
            let object = match &e.other {
                Other::Itself => subject.clone(),
                Other::Blank(j) => Term::Blank(mapping[&a.nodes[*j]].clone()),
                Other::Ground(t) => map(t),
            };
            Triple::new(subject, e.predicate.clone(), object).is_ok_and(|t| right.contains(&t))
        }) && a.edges[i].iter().filter(|e| !e.outgoing).all(|e| match &e.other {
            // Blank-to-blank edges are checked from their subject side.
            Other::Ground(s) => Triple::new(s.clone(), e.predicate.clone(), Term::Blank(mapping[node].clone()))
                .is_ok_and(|t| right.contains(&t)),
            _ => true,
        })
    })
}

/// `true` iff a bijection on blank nodes maps `left`'s triples exactly onto
/// `right`'s.
pub fn is_isomorphic(left: &Graph, right: &Graph) -> bool {
    find_blank_bijection(left, right).is_some()
}

/// A deterministic order on the blank nodes of `graph` derived from graph
/// structure. Remaining symmetric ties are broken by label.
pub fn canonical_blank_order(graph: &Graph) -> Vec<BlankNode> {
    let side = BlankStructure::new(graph);
    let mut colors = vec![0u32; side.len()];
    loop {
        refine(&[&side], &mut colors);
        let hist = histogram(&colors);
        let Some((&cell, _)) = hist.iter().find(|&(_, &n)| n > 1) else {
            break;
        };
        // nodes are sorted by label, so the first hit is the smallest label.
        let x = colors.iter().position(|&c| c == cell).expect("cell is nonempty");
        colors[x] = colors.iter().max().copied().unwrap_or(0) + 1;
    }
    let mut order: Vec<(u32, &BlankNode)> = colors.iter().copied().zip(side.nodes.iter()).collect();
    order.sort();
    order.into_iter().map(|(_, b)| b.clone()).collect()
}
