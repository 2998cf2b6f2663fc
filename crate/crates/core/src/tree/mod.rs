//! Combinatorial trees, rootings, edge decompositions into subtrees,
//! combinatorial embeddings and the folding operation.

mod decomposition;
mod embedding;
mod fivary;
mod fold;
mod iso;
mod rooted;

pub use decomposition::PartOverlap;
pub use decomposition::{
    validate_decomposition, BoundMode, Decomposition, DecompositionKind, DecompositionReport, DecompositionViolation,
    DegreeBound, Part,
};
pub use embedding::{good_embedding, EdgeClass, Embedding};
pub use fivary::{complete_5ary, homomorphism_into_5ary, Homomorphism, ImageTree, QAddress};
pub use fold::{find_fold_site, find_fold_site_ranked, fold, unfold, FoldRecord, FoldSite, Folded, PairOrder};
pub use iso::{canonical_form, is_isomorphic};
pub use rooted::RootedTree;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("not a tree: {0}")]
    InvalidTree(TreeReport),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(DecompositionReport),
    #[error("the two parts do not cover the tree")]
    NotACovering,
    #[error("edge {0} is outside the tree")]
    EdgeOutOfRange(usize),
    #[error("fold precondition violated: {0}")]
    FoldPrecondition(String),
    #[error("a rotation system must list exactly the incident edges of `{0}`")]
    InvalidEmbedding(String),
    #[error("no free edge of the 5-ary tree at the image of `{0}`")]
    HomomorphismInfeasible(String),
}

/// A finite simple graph intended to be a tree; [`Tree::validate`]
/// reports whether it is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeViolation {
    Empty,
    SelfLoop { edge: usize, vertex: String },
    DuplicateEdge { edge: usize, a: String, b: String },
    EdgeCount { vertices: usize, edges: usize },
    Disconnected { components: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub violations: Vec<TreeViolation>,
}

impl TreeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for TreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{v:?}")).collect();
        f.write_str(&parts.join("; "))
    }
}

impl Tree {
    /// Builds the graph without checking that it is a tree.
    pub fn from_edges<S: AsRef<str>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, ModelError> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), VertexId(i)).is_some() {
                return Err(ModelError::DuplicateVertex(n.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| ModelError::UnknownVertex(s.into()));
        let mut pairs = Vec::new();
        for (a, b) in edges {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Ok(Self::from_ids(names, pairs))
    }

    pub(crate) fn from_ids(names: Vec<String>, edges: Vec<(VertexId, VertexId)>) -> Self {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), VertexId(i))).collect();
        let mut incidence = vec![Vec::new(); names.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            incidence[a.0].push(EdgeId(e));
            if a != b {
                incidence[b.0].push(EdgeId(e));
            }
        }
        Tree { names, index, edges, incidence }
    }

    /// Builds and validates.
    pub fn new<S: AsRef<str>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, ModelError> {
        let t = Self::from_edges(names, edges)?;
        let report = t.validate();
        if report.is_valid() {
            Ok(t)
        } else {
            Err(ModelError::InvalidTree(report))
        }
    }

    /// Star with centre `c` and leaves `l1..ln`.
    pub fn star(leaves: usize) -> Self {
        let mut names = vec!["c".to_string()];
        names.extend((1..=leaves).map(|i| format!("l{i}")));
        let edges = (1..=leaves).map(|i| (VertexId(0), VertexId(i))).collect();
        Self::from_ids(names, edges)
    }

    /// Path `p0 - p1 - ... - p(n-1)`.
    pub fn path(n: usize) -> Self {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let edges = (1..n).map(|i| (VertexId(i - 1), VertexId(i))).collect();
        Self::from_ids(names, edges)
    }

    pub fn validate(&self) -> TreeReport {
        let mut violations = Vec::new();
        let n = self.names.len();
        if n == 0 {
            violations.push(TreeViolation::Empty);
            return TreeReport { violations };
        }
        let mut seen = HashMap::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                violations.push(TreeViolation::SelfLoop { edge: e, vertex: self.names[a.0].clone() });
                continue;
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key, e).is_some() {
                violations.push(TreeViolation::DuplicateEdge {
                    edge: e,
                    a: self.names[a.0].clone(),
                    b: self.names[b.0].clone(),
                });
            }
        }
        if self.edges.len() + 1 != n {
            violations.push(TreeViolation::EdgeCount { vertices: n, edges: self.edges.len() });
        }
        let mut uf = UnionFind::<usize>::new(n);
        for &(a, b) in &self.edges {
            uf.union(a.0, b.0);
        }
        let mut roots: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() > 1 {
            violations.push(TreeViolation::Disconnected { components: roots.len() });
        }
        TreeReport { violations }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<VertexId, ModelError> {
        self.vertex(name).ok_or_else(|| ModelError::UnknownVertex(name.to_string()))
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.0]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v.0].iter().map(move |&e| self.other(e, v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.0].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.incidence[a.0].iter().copied().find(|&e| self.other(e, a) == b)
    }

    /// Breadth-first distances from `start`.
    pub fn distances(&self, start: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[start.0] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w.0] == usize::MAX {
                    dist[w.0] = dist[v.0] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, v: VertexId) -> usize {
        self.distances(v).into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0)
    }

    /// First vertex (by index) of maximum degree.
    pub fn max_degree_vertex(&self) -> VertexId {
        let best = self.max_degree();
        self.vertices().find(|&v| self.degree(v) == best).unwrap_or(VertexId(0))
    }
}

/// A tree together with the optional root and decomposition it is to be
/// drawn with.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub tree: Tree,
    pub root: Option<VertexId>,
    pub decomposition: Option<Decomposition>,
    pub bound: Option<DegreeBound>,
}

impl Instance {
    pub fn bare(tree: Tree) -> Self {
        Instance { tree, root: None, decomposition: None, bound: None }
    }

    /// The declared parts, or the whole tree as a single part.
    pub fn parts(&self) -> Vec<Part> {
        match &self.decomposition {
            Some(d) => d.parts.clone(),
            None => vec![Part::new(self.tree.edge_ids())],
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let report = self.tree.validate();
        if !report.is_valid() {
            return Err(ModelError::InvalidTree(report));
        }
        if let (Some(dec), Some(bound)) = (&self.decomposition, self.bound) {
            let report = validate_decomposition(&self.tree, dec, bound, self.root);
            if !report.is_valid() {
                return Err(ModelError::InvalidDecomposition(report));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_on_three_vertices_is_valid() {
        let t = Tree::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert!(t.validate().is_valid());
        assert_eq!(t.max_degree(), 2);
    }

    #[test]
    fn triangle_has_too_many_edges() {
        let t = Tree::from_edges(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let report = t.validate();
        assert!(report.violations.contains(&TreeViolation::EdgeCount { vertices: 3, edges: 3 }));
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let t = Tree::from_edges(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap();
        let report = t.validate();
        assert!(report.violations.contains(&TreeViolation::Disconnected { components: 2 }));
        assert!(report.violations.contains(&TreeViolation::EdgeCount { vertices: 4, edges: 2 }));
    }

    #[test]
    fn self_loops_and_duplicates_are_reported() {
        let t = Tree::from_edges(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap();
        let v = t.validate().violations;
        assert!(matches!(v[0], TreeViolation::SelfLoop { edge: 0, .. }));
        assert!(matches!(v[1], TreeViolation::DuplicateEdge { edge: 2, .. }));
    }

    #[test]
    fn unknown_and_duplicate_names_are_errors() {
        assert_eq!(Tree::from_edges(["a"], [("a", "z")]), Err(ModelError::UnknownVertex("z".into())));
        assert_eq!(
            Tree::from_edges(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(ModelError::DuplicateVertex("a".into()))
        );
    }

    #[test]
    fn eccentricity_of_path_ends() {
        let t = Tree::path(5);
        assert_eq!(t.eccentricity(VertexId(0)), 4);
        assert_eq!(t.eccentricity(VertexId(2)), 2);
    }
}
