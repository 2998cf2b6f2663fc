use std::collections::VecDeque;

use super::{EdgeId, ModelError, Tree, VertexId};

/// A tree with every edge oriented away from `root`.
#[derive(Clone, Debug)]
pub struct RootedTree {
    tree: Tree,
    root: VertexId,
    parent: Vec<Option<(VertexId, EdgeId)>>,
    children: Vec<Vec<(VertexId, EdgeId)>>,
    order: Vec<VertexId>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn new(tree: Tree, root: VertexId) -> Result<Self, ModelError> {
        if root.0 >= tree.vertex_count() {
            return Err(ModelError::UnknownVertex(format!("#{}", root.0)));
        }
        let n = tree.vertex_count();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        depth[root.0] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in tree.incident(v) {
                let w = tree.other(e, v);
                if depth[w.0] == usize::MAX {
                    depth[w.0] = depth[v.0] + 1;
                    parent[w.0] = Some((v, e));
                    children[v.0].push((w, e));
                    queue.push_back(w);
                }
            }
        }
        Ok(RootedTree { tree, root, parent, children, order, depth })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn into_tree(self) -> Tree {
        self.tree
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn parent(&self, v: VertexId) -> Option<(VertexId, EdgeId)> {
        self.parent[v.0]
    }

    pub fn children(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.children[v.0]
    }

    pub fn outdegree(&self, v: VertexId) -> usize {
        self.children[v.0].len()
    }

    pub fn max_outdegree(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.0]
    }

    pub fn height(&self) -> usize {
        self.order.iter().map(|v| self.depth[v.0]).max().unwrap_or(0)
    }

    /// Oriented edge `(tail, head)` for `e`.
    pub fn oriented(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (a, b) = self.tree.endpoints(e);
        if self.parent[b.0].map(|(_, pe)| pe) == Some(e) {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Number of vertices in the subtree hanging from `v`, for every `v`.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.tree.vertex_count()];
        for &v in self.order.iter().rev() {
            if let Some((p, _)) = self.parent[v.0] {
                size[p.0] += size[v.0];
            }
        }
        size
    }
}

impl Tree {
    /// Orients every edge away from the vertex named `root`.
    pub fn root_at(self, root: &str) -> Result<RootedTree, ModelError> {
        let r = self.require(root)?;
        RootedTree::new(self, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_rooted_at_centre() {
        let r = Tree::star(5).root_at("c").unwrap();
        assert_eq!(r.outdegree(r.root()), 5);
        assert_eq!(r.max_outdegree(), 5);
    }

    #[test]
    fn star_rooted_at_leaf() {
        let r = Tree::star(5).root_at("l1").unwrap();
        assert_eq!(r.outdegree(r.root()), 1);
        let c = r.tree().vertex("c").unwrap();
        assert_eq!(r.outdegree(c), 4);
    }

    #[test]
    fn path_orientation() {
        let t = Tree::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let r = t.root_at("a").unwrap();
        let name = |v: VertexId| r.tree().name(v).to_string();
        let (t0, h0) = r.oriented(EdgeId(0));
        let (t1, h1) = r.oriented(EdgeId(1));
        assert_eq!((name(t0), name(h0)), ("a".into(), "b".into()));
        assert_eq!((name(t1), name(h1)), ("b".into(), "c".into()));
        assert_eq!(r.height(), 2);
    }

    #[test]
    fn unknown_root() {
        assert!(matches!(Tree::path(2).root_at("x"), Err(ModelError::UnknownVertex(_))));
    }

    #[test]
    fn every_non_root_has_indegree_one() {
        let r = Tree::path(6).root_at("p3").unwrap();
        let mut indeg = vec![0; 6];
        for e in r.tree().edge_ids() {
            indeg[r.oriented(e).1 .0] += 1;
        }
        for v in r.tree().vertices() {
            assert_eq!(indeg[v.0], usize::from(v != r.root()));
        }
    }
}
