use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::{EdgeId, RootedTree, Tree, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    Partition,
    Covering,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    Degree,
    Outdegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    pub bound: usize,
    pub mode: BoundMode,
}

impl DegreeBound {
    pub fn degree(bound: usize) -> Self {
        DegreeBound { bound, mode: BoundMode::Degree }
    }

    pub fn outdegree(bound: usize) -> Self {
        DegreeBound { bound, mode: BoundMode::Outdegree }
    }
}

/// An edge subset of the host tree, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Part {
    edges: Vec<EdgeId>,
}

impl Part {
    pub fn new(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut edges: Vec<EdgeId> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Part { edges }
    }

    /// Keeps duplicates so validation can report them.
    #[cfg(test)]
    pub(crate) fn raw(edges: Vec<EdgeId>) -> Self {
        Part { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// Vertices induced by the part's edges, sorted by index.
    pub fn vertices(&self, tree: &Tree) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .edges
            .iter()
            .flat_map(|&e| {
                let (a, b) = tree.endpoints(e);
                [a, b]
            })
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn degree_at(&self, tree: &Tree, v: VertexId) -> usize {
        tree.incident(v).iter().filter(|&&e| self.contains(e)).count()
    }

    pub fn outdegree_at(&self, rooted: &RootedTree, v: VertexId) -> usize {
        rooted.children(v).iter().filter(|&&(_, e)| self.contains(e)).count()
    }

    pub fn intersection(&self, other: &Part) -> Part {
        Part { edges: self.edges.iter().copied().filter(|&e| other.contains(e)).collect() }
    }

    pub fn minus(&self, other: &Part) -> Part {
        Part { edges: self.edges.iter().copied().filter(|&e| !other.contains(e)).collect() }
    }

    /// The part as a standalone tree on its induced vertex set.
    pub fn subtree(&self, tree: &Tree) -> Tree {
        let vs = self.vertices(tree);
        let names = vs.iter().map(|&v| tree.name(v).to_string()).collect();
        let local = |v: VertexId| VertexId(vs.binary_search(&v).unwrap());
        let edges = self
            .edges
            .iter()
            .map(|&e| {
                let (a, b) = tree.endpoints(e);
                (local(a), local(b))
            })
            .collect();
        Tree::from_ids(names, edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn partition(parts: Vec<Part>) -> Self {
        Decomposition { kind: DecompositionKind::Partition, parts }
    }

    pub fn covering(parts: Vec<Part>) -> Self {
        Decomposition { kind: DecompositionKind::Covering, parts }
    }

    /// Every edge in a single part.
    pub fn trivial(tree: &Tree) -> Self {
        Self::partition(vec![Part::new(tree.edge_ids())])
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parts containing each edge.
    pub fn membership(&self, edge_count: usize) -> Vec<Vec<usize>> {
        let mut m = vec![Vec::new(); edge_count];
        for (i, p) in self.parts.iter().enumerate() {
            for &e in p.edges() {
                if e.0 < edge_count && m[e.0].last() != Some(&i) {
                    m[e.0].push(i);
                }
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionViolation {
    MissingRoot,
    EdgeOutOfRange { part: usize, edge: usize },
    DuplicateEdgeInPart { part: usize, edge: usize },
    Disconnected { part: usize, components: usize },
    Uncovered { edge: usize },
    MultiplyAssigned { edge: usize, parts: Vec<usize> },
    BoundExceeded { part: usize, vertex: String, degree: usize, bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartOverlap {
    pub a: usize,
    pub b: usize,
    pub shared_edges: usize,
    pub shared_vertices: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub violations: Vec<DecompositionViolation>,
    pub overlaps: Vec<PartOverlap>,
}

impl DecompositionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{v:?}")).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks the decomposition invariants against `bound`. An outdegree bound is
/// measured under the rooting at `root`.
pub fn validate_decomposition(
    tree: &Tree,
    dec: &Decomposition,
    bound: DegreeBound,
    root: Option<VertexId>,
) -> DecompositionReport {
    let mut violations = Vec::new();
    let m = tree.edge_count();
    let rooted = match (bound.mode, root) {
        (BoundMode::Outdegree, None) => {
            violations.push(DecompositionViolation::MissingRoot);
            None
        }
        (BoundMode::Outdegree, Some(r)) => RootedTree::new(tree.clone(), r).ok(),
        (BoundMode::Degree, _) => None,
    };

    let mut clean = Vec::with_capacity(dec.parts.len());
    for (i, part) in dec.parts.iter().enumerate() {
        let mut seen = std::collections::HashSet::new();
        let mut ok = Vec::new();
        for &e in part.edges() {
            if e.0 >= m {
                violations.push(DecompositionViolation::EdgeOutOfRange { part: i, edge: e.0 });
            } else if !seen.insert(e) {
                violations.push(DecompositionViolation::DuplicateEdgeInPart { part: i, edge: e.0 });
            } else {
                ok.push(e);
            }
        }
        clean.push(Part::new(ok));
    }

    for (i, part) in clean.iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        let vs = part.vertices(tree);
        let mut uf = UnionFind::<usize>::new(vs.len());
        let local = |v: VertexId| vs.binary_search(&v).unwrap();
        for &e in part.edges() {
            let (a, b) = tree.endpoints(e);
            uf.union(local(a), local(b));
        }
        let mut reps: Vec<usize> = (0..vs.len()).map(|x| uf.find(x)).collect();
        reps.sort_unstable();
        reps.dedup();
        if reps.len() != 1 {
            violations.push(DecompositionViolation::Disconnected { part: i, components: reps.len() });
        }
        for &v in &vs {
            let degree = match (&rooted, bound.mode) {
                (Some(r), BoundMode::Outdegree) => part.outdegree_at(r, v),
                (None, BoundMode::Outdegree) => continue,
                (_, BoundMode::Degree) => part.degree_at(tree, v),
            };
            if degree > bound.bound {
                violations.push(DecompositionViolation::BoundExceeded {
                    part: i,
                    vertex: tree.name(v).to_string(),
                    degree,
                    bound: bound.bound,
                });
            }
        }
    }

    let membership = Decomposition { kind: dec.kind, parts: clean.clone() }.membership(m);
    for (e, owners) in membership.iter().enumerate() {
        if owners.is_empty() {
            violations.push(DecompositionViolation::Uncovered { edge: e });
        } else if owners.len() > 1 && dec.kind == DecompositionKind::Partition {
            violations.push(DecompositionViolation::MultiplyAssigned { edge: e, parts: owners.clone() });
        }
    }

    let mut overlaps = Vec::new();
    if dec.kind == DecompositionKind::Covering {
        let vsets: Vec<Vec<VertexId>> = clean.iter().map(|p| p.vertices(tree)).collect();
        for a in 0..clean.len() {
            for b in a + 1..clean.len() {
                let shared_edges = clean[a].intersection(&clean[b]).len();
                let shared_vertices = vsets[a].iter().filter(|v| vsets[b].binary_search(v).is_ok()).count();
                if shared_vertices > 0 {
                    overlaps.push(PartOverlap { a, b, shared_edges, shared_vertices });
                }
            }
        }
    }
    DecompositionReport { violations, overlaps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_parts(t: &Tree, groups: &[&[usize]]) -> Vec<Part> {
        let _ = t;
        groups.iter().map(|g| Part::new(g.iter().map(|&i| EdgeId(i)))).collect()
    }

    #[test]
    fn six_star_split_into_two_three_stars() {
        let t = Tree::star(6);
        let dec = Decomposition::partition(star_parts(&t, &[&[0, 1, 2], &[3, 4, 5]]));
        assert!(validate_decomposition(&t, &dec, DegreeBound::degree(3), None).is_valid());
    }

    #[test]
    fn seven_star_as_one_part_breaks_degree_five() {
        let t = Tree::star(7);
        let dec = Decomposition::trivial(&t);
        let report = validate_decomposition(&t, &dec, DegreeBound::degree(5), None);
        assert_eq!(
            report.violations,
            vec![DecompositionViolation::BoundExceeded { part: 0, vertex: "c".into(), degree: 7, bound: 5 }]
        );
    }

    #[test]
    fn six_star_three_part_covering() {
        let t = Tree::star(6);
        let dec = Decomposition::covering(star_parts(&t, &[&[0, 1, 2, 3], &[0, 1, 4, 5], &[2, 3, 4, 5]]));
        let report = validate_decomposition(&t, &dec, DegreeBound::degree(4), None);
        assert!(report.is_valid(), "{report}");
        assert_eq!(report.overlaps.len(), 3);
        assert!(report.overlaps.iter().all(|o| o.shared_edges == 2 && o.shared_vertices == 3));
    }

    #[test]
    fn detects_disconnected_uncovered_and_repeated() {
        let t = Tree::path(5);
        let dec = Decomposition::partition(vec![Part::new([EdgeId(0), EdgeId(2)]), Part::new([EdgeId(2)])]);
        let v = validate_decomposition(&t, &dec, DegreeBound::degree(5), None).violations;
        assert!(v.contains(&DecompositionViolation::Disconnected { part: 0, components: 2 }));
        assert!(v.contains(&DecompositionViolation::Uncovered { edge: 1 }));
        assert!(v.contains(&DecompositionViolation::Uncovered { edge: 3 }));
        assert!(v.contains(&DecompositionViolation::MultiplyAssigned { edge: 2, parts: vec![0, 1] }));
    }

    #[test]
    fn outdegree_needs_root() {
        let t = Tree::star(3);
        let dec = Decomposition::trivial(&t);
        let v = validate_decomposition(&t, &dec, DegreeBound::outdegree(4), None).violations;
        assert_eq!(v, vec![DecompositionViolation::MissingRoot]);
    }

    #[test]
    fn outdegree_bound_depends_on_root() {
        let t = Tree::star(5);
        let dec = Decomposition::trivial(&t);
        let at_centre = validate_decomposition(&t, &dec, DegreeBound::outdegree(4), t.vertex("c"));
        let at_leaf = validate_decomposition(&t, &dec, DegreeBound::outdegree(4), t.vertex("l1"));
        assert!(!at_centre.is_valid());
        assert!(at_leaf.is_valid());
    }

    #[test]
    fn out_of_range_and_duplicates() {
        let t = Tree::path(2);
        let dec = Decomposition::partition(vec![Part::raw(vec![EdgeId(0), EdgeId(0), EdgeId(7)])]);
        let v = validate_decomposition(&t, &dec, DegreeBound::degree(5), None).violations;
        assert!(v.contains(&DecompositionViolation::DuplicateEdgeInPart { part: 0, edge: 0 }));
        assert!(v.contains(&DecompositionViolation::EdgeOutOfRange { part: 0, edge: 7 }));
    }
}
