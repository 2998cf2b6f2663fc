use std::collections::HashMap;
use std::fmt;

use super::decomposition::{validate_decomposition, DegreeBound};
use super::{Decomposition, EdgeId, ModelError, Part, RootedTree, Tree, VertexId};

/// Path from the root of the complete 5-ary tree: child indices, 0..5 at
/// the root and 0..4 below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QAddress(pub Vec<u8>);

impl QAddress {
    pub fn root() -> Self {
        QAddress(Vec::new())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn child_count(&self) -> u8 {
        if self.0.is_empty() {
            5
        } else {
            4
        }
    }

    pub fn child(&self, i: u8) -> Self {
        let mut p = self.0.clone();
        p.push(i);
        QAddress(p)
    }

    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(QAddress(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn is_adjacent(&self, other: &QAddress) -> bool {
        self.parent().as_ref() == Some(other) || other.parent().as_ref() == Some(self)
    }
}

impl fmt::Display for QAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("r")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

/// The complete 5-ary tree of the given height, vertices named by address.
pub fn complete_5ary(height: usize) -> Tree {
    let mut level = vec![QAddress::root()];
    let mut names = vec![QAddress::root().to_string()];
    let mut edges = Vec::new();
    let mut index: HashMap<QAddress, usize> = HashMap::from([(QAddress::root(), 0)]);
    for _ in 0..height {
        let mut next = Vec::new();
        for a in &level {
            for i in 0..a.child_count() {
                let c = a.child(i);
                let id = names.len();
                names.push(c.to_string());
                edges.push((VertexId(index[a]), VertexId(id)));
                index.insert(c.clone(), id);
                next.push(c);
            }
        }
        level = next;
    }
    Tree::from_ids(names, edges)
}

/// A vertex map into the complete 5-ary tree of height `height`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub height: usize,
    pub images: Vec<QAddress>,
}

/// The subtree of Q actually hit by a homomorphism, with the induced maps.
#[derive(Clone, Debug)]
pub struct ImageTree {
    pub tree: Tree,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
    pub parts: Vec<Part>,
}

impl Homomorphism {
    pub fn image(&self, v: VertexId) -> &QAddress {
        &self.images[v.0]
    }

    pub fn image_tree(&self, tree: &Tree, dec: &Decomposition) -> ImageTree {
        let mut index: HashMap<&QAddress, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut vertex_map = Vec::with_capacity(tree.vertex_count());
        for a in &self.images {
            let next = index.len();
            let id = *index.entry(a).or_insert_with(|| {
                names.push(a.to_string());
                next
            });
            vertex_map.push(VertexId(id));
        }
        let mut edge_index: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut edge_map = Vec::with_capacity(tree.edge_count());
        for &(a, b) in tree.edges() {
            let (fa, fb) = (vertex_map[a.0], vertex_map[b.0]);
            let key = (fa.min(fb), fa.max(fb));
            let next = edge_index.len();
            let id = *edge_index.entry(key).or_insert_with(|| {
                edges.push(key);
                next
            });
            edge_map.push(EdgeId(id));
        }
        let parts = dec.parts.iter().map(|p| Part::new(p.edges().iter().map(|&e| edge_map[e.0]))).collect();
        ImageTree { tree: Tree::from_ids(names, edges), vertex_map, edge_map, parts }
    }
}

/// Maps `tree` into the complete 5-ary tree of height `ecc(start)` so that
/// distinct edges of the same part land on distinct edges.
pub fn homomorphism_into_5ary(tree: &Tree, dec: &Decomposition, start: VertexId) -> Result<Homomorphism, ModelError> {
    let report = validate_decomposition(tree, dec, DegreeBound::degree(5), None);
    if !report.is_valid() || dec.kind != super::DecompositionKind::Partition {
        return Err(ModelError::InvalidDecomposition(report));
    }
    let rooted = RootedTree::new(tree.clone(), start)?;
    let height = rooted.height();
    let membership = dec.membership(tree.edge_count());
    let part_of = |e: EdgeId| membership[e.0][0];

    let mut images: Vec<Option<QAddress>> = vec![None; tree.vertex_count()];
    images[start.0] = Some(QAddress::root());
    for &v in rooted.bfs_order() {
        let fv = images[v.0].clone().unwrap();
        let mut used: HashMap<usize, Vec<QAddress>> = HashMap::new();
        if let Some((p, e)) = rooted.parent(v) {
            used.entry(part_of(e)).or_default().push(images[p.0].clone().unwrap());
        }
        let mut candidates: Vec<QAddress> = Vec::new();
        if fv.depth() < height {
            candidates.extend((0..fv.child_count()).map(|i| fv.child(i)));
        }
        candidates.extend(fv.parent());
        for &(c, e) in rooted.children(v) {
            let taken = used.entry(part_of(e)).or_default();
            let pick = candidates
                .iter()
                .find(|a| !taken.contains(a))
                .cloned()
                .ok_or_else(|| ModelError::HomomorphismInfeasible(tree.name(v).to_string()))?;
            taken.push(pick.clone());
            images[c.0] = Some(pick);
        }
    }
    Ok(Homomorphism { height, images: images.into_iter().map(Option::unwrap).collect() })
}

#[cfg(test)]
mod tests {
    use super::super::is_isomorphic;
    use super::*;

    #[test]
    fn sizes_of_small_complete_trees() {
        assert_eq!(complete_5ary(0).vertex_count(), 1);
        let k15 = complete_5ary(1);
        assert!(is_isomorphic(&k15, &Tree::star(5)));
        assert_eq!(complete_5ary(2).vertex_count(), 26);
        assert_eq!(complete_5ary(3).vertex_count(), 106);
    }

    #[test]
    fn every_internal_vertex_has_degree_five() {
        let q = complete_5ary(3);
        for v in q.vertices() {
            let d = q.degree(v);
            assert!(d == 5 || d == 1, "{} has degree {d}", q.name(v));
        }
    }

    #[test]
    fn trivial_partition_is_injective() {
        let t = Tree::new(["a", "b", "c", "d", "e", "f"], [("a", "b"), ("b", "c"), ("b", "d"), ("d", "e"), ("d", "f")])
            .unwrap();
        let dec = Decomposition::trivial(&t);
        let f = homomorphism_into_5ary(&t, &dec, VertexId(0)).unwrap();
        let mut imgs = f.images.clone();
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), t.vertex_count());
    }

    #[test]
    fn ten_star_two_parts_share_slots() {
        let t = Tree::star(10);
        let dec = Decomposition::partition(vec![
            Part::new([0, 1, 2, 3, 4].map(EdgeId)),
            Part::new([5, 6, 7, 8, 9].map(EdgeId)),
        ]);
        let f = homomorphism_into_5ary(&t, &dec, VertexId(0)).unwrap();
        assert_eq!(f.height, 1);
        for p in &dec.parts {
            let mut imgs: Vec<_> = p.edges().iter().map(|&e| f.image(t.endpoints(e).1).clone()).collect();
            imgs.sort();
            imgs.dedup();
            assert_eq!(imgs.len(), 5);
        }
        assert_eq!(f.image(VertexId(1)), f.image(VertexId(6)));
    }

    #[test]
    fn images_are_edges_and_parts_are_isomorphic() {
        // a caterpillar of stars split into degree-5 stars
        let mut names = vec!["s0".to_string()];
        let mut edges = Vec::new();
        let mut parts = Vec::new();
        for s in 0..3 {
            let centre = format!("s{s}");
            let mut part = Vec::new();
            for j in 0..9 {
                let leaf = format!("s{s}l{j}");
                names.push(leaf.clone());
                part.push(edges.len());
                edges.push((centre.clone(), leaf));
                if part.len() == 5 {
                    parts.push(std::mem::take(&mut part));
                }
            }
            parts.push(part);
            if s < 2 {
                let next = format!("s{}", s + 1);
                names.push(next.clone());
                parts.push(vec![edges.len()]);
                edges.push((centre, next));
            }
        }
        let t = Tree::new(names, edges).unwrap();
        let dec = Decomposition::partition(parts.into_iter().map(|p| Part::new(p.into_iter().map(EdgeId))).collect());
        let f = homomorphism_into_5ary(&t, &dec, VertexId(0)).unwrap();
        for &(a, b) in t.edges() {
            assert!(f.image(a).is_adjacent(f.image(b)));
        }
        let img = f.image_tree(&t, &dec);
        assert!(img.tree.validate().is_valid());
        for (p, q) in dec.parts.iter().zip(&img.parts) {
            assert!(is_isomorphic(&p.subtree(&t), &q.subtree(&img.tree)));
        }
    }

    #[test]
    fn rejects_degree_six_part() {
        let t = Tree::star(6);
        let dec = Decomposition::trivial(&t);
        assert!(matches!(homomorphism_into_5ary(&t, &dec, VertexId(0)), Err(ModelError::InvalidDecomposition(_))));
    }

    #[test]
    fn address_display() {
        assert_eq!(QAddress(vec![0, 3]).to_string(), "r.0.3");
        assert_eq!(QAddress::root().to_string(), "r");
    }
}
