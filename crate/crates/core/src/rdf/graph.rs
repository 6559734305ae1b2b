use std::collections::btree_set;
use std::collections::{BTreeSet, HashMap, HashSet};

use super::term::{BlankNode, Iri, Term, Triple};

/// A set of triples with subject, predicate and object indexes.
///
/// Iteration order is the total order on triples, so everything built on top
/// of a `Graph` is deterministic without extra sorting.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    by_subject: HashMap<Term, BTreeSet<Triple>>,
    by_predicate: HashMap<Iri, BTreeSet<Triple>>,
    by_object: HashMap<Term, BTreeSet<Triple>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Adds a triple, returning `true` when it was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.triples.contains(&triple) {
            return false;
        }
        self.by_subject
            .entry(triple.subject().clone())
            .or_default()
            .insert(triple.clone());
        self.by_predicate
            .entry(triple.predicate().clone())
            .or_default()
            .insert(triple.clone());
        self.by_object
            .entry(triple.object().clone())
            .or_default()
            .insert(triple.clone());
        self.triples.insert(triple)
    }

    /// Convenience for callers that already hold valid parts.
    ///
    /// Panics if `subject` is a literal.
    pub fn add(&mut self, subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> bool {
        let triple = Triple::new(subject, predicate, object).expect("literal in subject position");
        self.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        if !self.triples.remove(triple) {
            return false;
        }
        remove_from(&mut self.by_subject, triple.subject(), triple);
        remove_from(&mut self.by_predicate, triple.predicate(), triple);
        remove_from(&mut self.by_object, triple.object(), triple);
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    /// Returns every triple agreeing with the bound positions, in triple order.
    pub fn matches(&self, subject: Option<&Term>, predicate: Option<&Iri>, object: Option<&Term>) -> Vec<&Triple> {
        let keep = |t: &&Triple| {
            subject.is_none_or(|s| t.subject() == s)
                && predicate.is_none_or(|p| t.predicate() == p)
                && object.is_none_or(|o| t.object() == o)
        };
        // Start from the most selective bound index.
        let candidates: Box<dyn Iterator<Item = &Triple>> = match (subject, predicate, object) {
            (Some(s), _, _) => match self.by_subject.get(s) {
                Some(set) => Box::new(set.iter()),
                None => return Vec::new(),
            },
            (None, _, Some(o)) => match self.by_object.get(o) {
                Some(set) => Box::new(set.iter()),
                None => return Vec::new(),
            },
            (None, Some(p), None) => match self.by_predicate.get(p) {
                Some(set) => Box::new(set.iter()),
                None => return Vec::new(),
            },
            (None, None, None) => Box::new(self.triples.iter()),
        };
        candidates.filter(keep).collect()
    }

    /// All objects of `(subject, predicate, ?)`.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &Iri) -> Vec<&'a Term> {
        self.matches(Some(subject), Some(predicate), None)
            .into_iter()
            .map(Triple::object)
            .collect()
    }

    pub fn object<'a>(&'a self, subject: &Term, predicate: &Iri) -> Option<&'a Term> {
        self.objects(subject, predicate).into_iter().next()
    }

    /// All subjects of `(?, predicate, object)`.
    pub fn subjects<'a>(&'a self, predicate: &Iri, object: &Term) -> Vec<&'a Term> {
        self.matches(None, Some(predicate), Some(object))
            .into_iter()
            .map(Triple::subject)
            .collect()
    }

    /// Triples with `term` as subject.
    pub fn outgoing(&self, term: &Term) -> impl Iterator<Item = &Triple> {
        self.by_subject.get(term).into_iter().flatten()
    }

    /// Triples with `term` as object.
    pub fn incoming(&self, term: &Term) -> impl Iterator<Item = &Triple> {
        self.by_object.get(term).into_iter().flatten()
    }

    pub fn subject_terms(&self) -> BTreeSet<&Term> {
        self.by_subject.keys().collect()
    }

    pub fn blank_nodes(&self) -> BTreeSet<&BlankNode> {
        self.by_subject
            .keys()
            .chain(self.by_object.keys())
            .filter_map(Term::as_blank)
            .collect()
    }

    /// Adds every triple of `other` verbatim, without renaming blank nodes.
    pub fn extend_from(&mut self, other: &Graph) {
        for t in other.iter() {
            self.insert(t.clone());
        }
    }

    /// Index cardinalities; each equals `len()` when the indexes are consistent.
    pub fn index_sizes(&self) -> (usize, usize, usize) {
        (
            index_total(&self.by_subject),
            index_total(&self.by_predicate),
            index_total(&self.by_object),
        )
    }
}

fn index_total<K>(index: &HashMap<K, BTreeSet<Triple>>) -> usize {
    index.values().map(BTreeSet::len).sum()
}

fn remove_from<K: std::hash::Hash + Eq>(index: &mut HashMap<K, BTreeSet<Triple>>, key: &K, triple: &Triple) {
    if let Some(set) = index.get_mut(key) {
        set.remove(triple);
        if set.is_empty() {
            index.remove(key);
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = btree_set::Iter<'a, Triple>;
    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

/// Union of two graphs with `right`'s blank nodes renamed apart from every
/// label used in either input. Fresh labels come from a counter starting at 0.
pub fn merge_graphs(left: &Graph, right: &Graph) -> Graph {
    let taken: HashSet<String> = left
        .blank_nodes()
        .into_iter()
        .chain(right.blank_nodes())
        .map(|b| b.label().to_owned())
        .collect();
    let mut counter = 0usize;
    let mut renaming: HashMap<BlankNode, BlankNode> = HashMap::new();
    for b in right.blank_nodes() {
        let fresh = loop {
            let label = format!("m{counter}");
            counter += 1;
            if !taken.contains(&label) {
                break label;
            }
        };
        renaming.insert(b.clone(), BlankNode::new(fresh).expect("generated label is valid"));
    }
    let rename = |t: &Term| match t {
        Term::Blank(b) => Term::Blank(renaming[b].clone()),
        other => other.clone(),
    };
    let mut merged = left.clone();
    for t in right.iter() {
        merged.add(rename(t.subject()), t.predicate().clone(), rename(t.object()));
    }
    merged
}
