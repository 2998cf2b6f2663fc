use super::{EdgeId, ModelError, Part, RootedTree, Tree, VertexId};

/// Membership of an edge relative to a two-part covering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeClass {
    FirstOnly,
    Shared,
    SecondOnly,
}

impl EdgeClass {
    pub fn of(e: EdgeId, t1: &Part, t2: &Part) -> Option<Self> {
        match (t1.contains(e), t2.contains(e)) {
            (true, false) => Some(EdgeClass::FirstOnly),
            (true, true) => Some(EdgeClass::Shared),
            (false, true) => Some(EdgeClass::SecondOnly),
            (false, false) => None,
        }
    }
}

/// Clockwise cyclic order of the incident edges at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<EdgeId>>,
}

impl Embedding {
    pub fn new(tree: &Tree, rotation: Vec<Vec<EdgeId>>) -> Result<Self, ModelError> {
        if rotation.len() != tree.vertex_count() {
            return Err(ModelError::InvalidEmbedding(format!("{} rotations", rotation.len())));
        }
        for v in tree.vertices() {
            let mut have = rotation[v.0].clone();
            let mut want = tree.incident(v).to_vec();
            have.sort_unstable();
            want.sort_unstable();
            if have != want {
                return Err(ModelError::InvalidEmbedding(tree.name(v).to_string()));
            }
        }
        Ok(Embedding { rotation })
    }

    /// The incidence order of the tree itself.
    pub fn from_incidence(tree: &Tree) -> Self {
        Embedding { rotation: tree.vertices().map(|v| tree.incident(v).to_vec()).collect() }
    }

    pub(crate) fn from_raw(rotation: Vec<Vec<EdgeId>>) -> Self {
        Embedding { rotation }
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v.0]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotation
    }

    pub fn position(&self, v: VertexId, e: EdgeId) -> Option<usize> {
        self.rotation[v.0].iter().position(|&f| f == e)
    }

    /// The edge following `e` clockwise around `v`.
    pub fn next(&self, v: VertexId, e: EdgeId) -> Option<EdgeId> {
        let r = &self.rotation[v.0];
        self.position(v, e).map(|i| r[(i + 1) % r.len()])
    }

    /// True when `order` is a cyclic shift of the rotation at `v`.
    pub fn matches_at(&self, v: VertexId, order: &[EdgeId]) -> bool {
        cyclic_eq(&self.rotation[v.0], order)
    }

    /// Vertices whose rotation differs cyclically from `other`.
    pub fn mismatches(&self, other: &Embedding) -> Vec<VertexId> {
        (0..self.rotation.len()).filter(|&i| !cyclic_eq(&self.rotation[i], &other.rotation[i])).map(VertexId).collect()
    }

    /// Whether the three classes at `v` sit in contiguous clockwise runs in
    /// the order first-only, shared, second-only.
    pub fn is_good_at(&self, v: VertexId, t1: &Part, t2: &Part) -> bool {
        let classes: Option<Vec<EdgeClass>> = self.rotation[v.0].iter().map(|&e| EdgeClass::of(e, t1, t2)).collect();
        classes.is_some_and(|c| cyclic_runs_ordered(&c))
    }

    pub fn is_good(&self, tree: &Tree, t1: &Part, t2: &Part) -> bool {
        tree.vertices().all(|v| self.is_good_at(v, t1, t2))
    }
}

pub(crate) fn cyclic_eq(a: &[EdgeId], b: &[EdgeId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&e| e == a[0]) {
        Some(off) => (0..a.len()).all(|i| a[i] == b[(i + off) % b.len()]),
        None => false,
    }
}

fn cyclic_runs_ordered(classes: &[EdgeClass]) -> bool {
    let mut runs: Vec<EdgeClass> = Vec::new();
    for &c in classes {
        if runs.last() != Some(&c) {
            runs.push(c);
        }
    }
    if runs.len() > 1 && runs.first() == runs.last() {
        runs.pop();
    }
    let mut distinct = runs.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != runs.len() {
        return false;
    }
    let start = runs.iter().enumerate().min_by_key(|(_, c)| **c).map_or(0, |(i, _)| i);
    (1..runs.len()).all(|k| runs[(start + k - 1) % runs.len()] < runs[(start + k) % runs.len()])
}

/// A good embedding for the covering `{t1, t2}`. Within a class, edges are
/// ordered by the size of the component they lead into (largest first), then
/// by the name of the far endpoint.
pub fn good_embedding(tree: &Tree, t1: &Part, t2: &Part) -> Result<Embedding, ModelError> {
    let m = tree.edge_count();
    if let Some(&e) = t1.edges().iter().chain(t2.edges()).find(|e| e.0 >= m) {
        return Err(ModelError::EdgeOutOfRange(e.0));
    }
    if tree.vertex_count() == 0 {
        return Ok(Embedding { rotation: Vec::new() });
    }
    let rooted = RootedTree::new(tree.clone(), VertexId(0))?;
    let size = rooted.subtree_sizes();
    let n = tree.vertex_count();
    let reach = |v: VertexId, e: EdgeId| {
        let w = tree.other(e, v);
        if rooted.parent(w).map(|(p, _)| p) == Some(v) {
            size[w.0]
        } else {
            n - size[v.0]
        }
    };
    let mut rotation = Vec::with_capacity(n);
    for v in tree.vertices() {
        let mut keyed = Vec::new();
        for &e in tree.incident(v) {
            let class = EdgeClass::of(e, t1, t2).ok_or(ModelError::NotACovering)?;
            // Low-degree private neighbours meet at the wrap, where folds happen.
            let deg = tree.degree(tree.other(e, v)) as i64;
            let key = match class {
                EdgeClass::FirstOnly => deg,
                EdgeClass::SecondOnly => -deg,
                EdgeClass::Shared => -(reach(v, e) as i64),
            };
            keyed.push((class, key, tree.name(tree.other(e, v)), e));
        }
        keyed.sort();
        rotation.push(keyed.into_iter().map(|k| k.3).collect());
    }
    Ok(Embedding { rotation })
}
