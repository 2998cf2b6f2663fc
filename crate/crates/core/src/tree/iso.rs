use super::{RootedTree, Tree, VertexId};

/// Canonical string of an unrooted tree: the smaller of the AHU encodings
/// rooted at its centre vertices. Equal strings iff isomorphic.
pub fn canonical_form(tree: &Tree) -> String {
    if tree.vertex_count() == 0 {
        return String::new();
    }
    centres(tree)
        .into_iter()
        .map(|c| rooted_form(&RootedTree::new(tree.clone(), c).expect("centre is a vertex")))
        .min()
        .unwrap()
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

fn rooted_form(r: &RootedTree) -> String {
    let mut code = vec![String::new(); r.tree().vertex_count()];
    for &v in r.bfs_order().iter().rev() {
        let mut kids: Vec<String> = r.children(v).iter().map(|&(c, _)| std::mem::take(&mut code[c.0])).collect();
        kids.sort_unstable();
        code[v.0] = format!("({})", kids.concat());
    }
    std::mem::take(&mut code[r.root().0])
}

fn centres(tree: &Tree) -> Vec<VertexId> {
    let n = tree.vertex_count();
    let mut degree: Vec<usize> = tree.vertices().map(|v| tree.degree(v)).collect();
    let mut layer: Vec<VertexId> = tree.vertices().filter(|&v| degree[v.0] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for w in tree.neighbors(v) {
                degree[w.0] -= 1;
                if degree[w.0] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_paths_are_isomorphic() {
        let a = Tree::path(6);
        let b = Tree::new(["e", "a", "c", "f", "b", "d"], [("a", "b"), ("c", "b"), ("c", "d"), ("e", "d"), ("e", "f")])
            .unwrap();
        assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn star_and_path_differ() {
        assert!(!is_isomorphic(&Tree::star(3), &Tree::path(4)));
    }

    #[test]
    fn spiders_with_different_legs_differ() {
        let names = ["c", "a1", "a2", "a3", "b1", "b2", "d1"];
        let a = Tree::new(names, [("c", "a1"), ("a1", "a2"), ("a2", "a3"), ("c", "b1"), ("b1", "b2"), ("c", "d1")])
            .unwrap();
        let b = Tree::new(names, [("c", "a1"), ("a1", "a2"), ("c", "a3"), ("c", "b1"), ("b1", "b2"), ("d1", "a3")])
            .unwrap();
        assert!(!is_isomorphic(&a, &b));
    }
}
