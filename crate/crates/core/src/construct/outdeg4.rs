use std::collections::BTreeMap;

use super::engine::{run, Anchor, Expansion, Placement, Planner};
use super::{names, ConstructError, Construction, Drawing, DrawingMeta};
use crate::geometry::{ConstructionFrame, LensPairs};
use crate::tree::{
    validate_decomposition, Decomposition, DecompositionKind, DegreeBound, Instance, ModelError, RootedTree, VertexId,
};

/// Children of `v` grouped by the part of their parent edge, both in index
/// order.
pub(crate) fn children_by_part(rooted: &RootedTree, owner: &[usize], v: VertexId) -> BTreeMap<usize, Vec<VertexId>> {
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for &(c, e) in rooted.children(v) {
        groups.entry(owner[e.0]).or_default().push(c);
    }
    for kids in groups.values_mut() {
        kids.sort_unstable();
    }
    groups
}

pub(crate) fn edge_owner(dec: &Decomposition, edge_count: usize) -> Vec<usize> {
    dec.membership(edge_count).into_iter().map(|m| m[0]).collect()
}

pub(crate) fn require_partition(
    rooted: &RootedTree,
    dec: &Decomposition,
    bound: DegreeBound,
) -> Result<(), ConstructError> {
    if dec.kind != DecompositionKind::Partition {
        return Err(ConstructError::WrongInput("a partition".into()));
    }
    let report = validate_decomposition(rooted.tree(), dec, bound, Some(rooted.root()));
    if !report.is_valid() {
        return Err(ModelError::InvalidDecomposition(report).into());
    }
    Ok(())
}

struct Outdeg4 {
    owner: Vec<usize>,
}

impl Planner for Outdeg4 {
    fn plan(&self, rooted: &RootedTree, v: VertexId) -> Result<Expansion, ConstructError> {
        let groups = children_by_part(rooted, &self.owner, v);
        let slots = groups.values().map(Vec::len).max().unwrap_or(0);
        let placements = groups
            .values()
            .enumerate()
            .flat_map(|(sub, kids)| kids.iter().enumerate().map(move |(slot, &child)| Placement { child, slot, sub }))
            .collect();
        Ok(Expansion { slots, subslots: groups.len(), pairs: LensPairs::All, placements })
    }
}

/// Draws a rooted tree partitioned into outdegree-4 subtrees inside the
/// lune of `frame`, non-crossing, with every part the relative
/// neighbourhood graph of its points.
pub fn draw_outdeg4_partition(
    rooted: &RootedTree,
    dec: &Decomposition,
    frame: &ConstructionFrame,
) -> Result<Drawing, ConstructError> {
    construct_outdeg4_partition(rooted, dec, frame).map(|c| c.drawing)
}

pub fn construct_outdeg4_partition(
    rooted: &RootedTree,
    dec: &Decomposition,
    frame: &ConstructionFrame,
) -> Result<Construction, ConstructError> {
    let bound = DegreeBound::outdegree(4);
    require_partition(rooted, dec, bound)?;
    let planner = Outdeg4 { owner: edge_owner(dec, rooted.tree().edge_count()) };
    let (positions, trace) = run(rooted, &planner, Anchor::Lune(frame.clone()))?;
    let instance = Instance {
        tree: rooted.tree().clone(),
        root: Some(rooted.root()),
        decomposition: Some(dec.clone()),
        bound: Some(bound),
    };
    let meta = DrawingMeta { precision_bits: frame.prec(), construction: names::PART4.into(), seed: None };
    Ok(Construction { drawing: Drawing::new(instance, positions, meta)?, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lens_contains;
    use crate::tree::{EdgeId, Part, Tree};
    use crate::verify::{check_noncrossing, check_rng_drawing};

    fn frame() -> ConstructionFrame {
        ConstructionFrame::standard(256)
    }

    #[test]
    fn single_vertex_sits_at_q() {
        let t = Tree::new(["a"], Vec::<(&str, &str)>::new()).unwrap().root_at("a").unwrap();
        let dec = Decomposition::partition(vec![]);
        let d = draw_outdeg4_partition(&t, &dec, &frame()).unwrap();
        assert_eq!(d.position(VertexId(0)), frame().q());
    }

    #[test]
    fn caterpillar_rooted_at_leaf() {
        let mut names = vec!["s0".to_string()];
        let mut edges = Vec::new();
        for i in 1..5 {
            names.push(format!("s{i}"));
            edges.push((format!("s{}", i - 1), format!("s{i}")));
            for j in 0..3 {
                names.push(format!("s{i}l{j}"));
                edges.push((format!("s{i}"), format!("s{i}l{j}")));
            }
        }
        let t = Tree::new(names, edges).unwrap();
        let dec = Decomposition::trivial(&t);
        let rooted = t.root_at("s0").unwrap();
        let c = construct_outdeg4_partition(&rooted, &dec, &frame()).unwrap();
        let part = &dec.parts[0];
        assert!(check_rng_drawing(&c.drawing, part).passed);
        assert!(check_noncrossing(&c.drawing).passed());
        assert!(c.frame_violations(rooted.root()).is_empty());
    }

    #[test]
    fn three_four_stars_share_the_root() {
        let t = Tree::star(12);
        let dec = Decomposition::partition((0..3).map(|i| Part::new((0..4).map(|j| EdgeId(4 * i + j)))).collect());
        let rooted = t.clone().root_at("c").unwrap();
        let d = draw_outdeg4_partition(&rooted, &dec, &frame()).unwrap();
        for part in &dec.parts {
            assert!(check_rng_drawing(&d, part).passed);
        }
        assert!(check_noncrossing(&d).passed());
        let p = frame().p().clone();
        for v in t.vertices().skip(1) {
            assert!(lens_contains(d.position(v), &p, frame().q()));
        }
    }

    #[test]
    fn rejects_outdegree_five() {
        let t = Tree::star(5);
        let dec = Decomposition::trivial(&t);
        let rooted = t.root_at("c").unwrap();
        assert!(matches!(
            draw_outdeg4_partition(&rooted, &dec, &frame()),
            Err(ConstructError::Model(ModelError::InvalidDecomposition(_)))
        ));
    }
}
