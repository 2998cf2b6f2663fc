use super::engine::{run, Anchor, Expansion, Placement, Planner};
use super::outdeg4::{children_by_part, edge_owner, require_partition};
use super::{names, ConstructError, Construction, Drawing, DrawingMeta};
use crate::geometry::{ConstructionFrame, LensPairs};
use crate::tree::{Decomposition, DegreeBound, Instance, RootedTree, VertexId};

/// Slot order of the children of one vertex. `groups[g]` lists the 1 to 3
/// children contributed by the `g`-th part present (in part order); the
/// result names `(g, j)` for each slot from first to last: first children
/// of three-child parts, of two-child parts, the first half of the
/// one-child parts, second children of three- and two-child parts, the
/// remaining one-child parts, then third children.
pub fn outdeg3_order(groups: &[Vec<VertexId>]) -> Vec<(usize, usize)> {
    let with = |len: usize| -> Vec<usize> { (0..groups.len()).filter(|&g| groups[g].len() == len).collect() };
    let (x, y, z) = (with(3), with(2), with(1));
    let (z1, z2) = z.split_at(z.len().div_ceil(2));
    let mut order = Vec::new();
    order.extend(x.iter().map(|&g| (g, 0)));
    order.extend(y.iter().map(|&g| (g, 0)));
    order.extend(z1.iter().map(|&g| (g, 0)));
    order.extend(x.iter().map(|&g| (g, 1)));
    order.extend(y.iter().map(|&g| (g, 1)));
    order.extend(z2.iter().map(|&g| (g, 0)));
    order.extend(x.iter().map(|&g| (g, 2)));
    order
}

/// Smallest slot distance between two children of the same part.
pub fn slot_gaps(order: &[(usize, usize)]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a].0 == order[b].0 {
                best = Some(best.map_or(b - a, |m| m.min(b - a)));
            }
        }
    }
    best
}

struct Outdeg3 {
    owner: Vec<usize>,
}

impl Planner for Outdeg3 {
    fn plan(&self, rooted: &RootedTree, v: VertexId) -> Result<Expansion, ConstructError> {
        let groups: Vec<Vec<VertexId>> = children_by_part(rooted, &self.owner, v).into_values().collect();
        let order = outdeg3_order(&groups);
        let mut pairs = Vec::new();
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                if order[a].0 == order[b].0 {
                    pairs.push((a, b));
                }
            }
        }
        let placements =
            order.iter().enumerate().map(|(slot, &(g, j))| Placement { child: groups[g][j], slot, sub: 0 }).collect();
        Ok(Expansion { slots: order.len(), subslots: 1, pairs: LensPairs::Only(pairs), placements })
    }
}

/// Draws a rooted tree partitioned into outdegree-3 subtrees: as the
/// outdegree-4 construction, but with one arc slot per child so that the
/// angular resolution exceeds `pi / max(outdeg - 1, 4)`.
pub fn draw_outdeg3_partition(
    rooted: &RootedTree,
    dec: &Decomposition,
    frame: &ConstructionFrame,
) -> Result<Drawing, ConstructError> {
    construct_outdeg3_partition(rooted, dec, frame).map(|c| c.drawing)
}

pub fn construct_outdeg3_partition(
    rooted: &RootedTree,
    dec: &Decomposition,
    frame: &ConstructionFrame,
) -> Result<Construction, ConstructError> {
    let bound = DegreeBound::outdegree(3);
    require_partition(rooted, dec, bound)?;
    let planner = Outdeg3 { owner: edge_owner(dec, rooted.tree().edge_count()) };
    let (positions, trace) = run(rooted, &planner, Anchor::Lune(frame.clone()))?;
    let instance = Instance {
        tree: rooted.tree().clone(),
        root: Some(rooted.root()),
        decomposition: Some(dec.clone()),
        bound: Some(bound),
    };
    let meta = DrawingMeta { precision_bits: frame.prec(), construction: names::PART3.into(), seed: None };
    Ok(Construction { drawing: Drawing::new(instance, positions, meta)?, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{EdgeId, Part, Tree};
    use crate::verify::{angular_resolution, check_noncrossing, check_rng_drawing};
    use proptest::prelude::*;
    use rug::float::Constant;
    use rug::Float;

    fn groups(sizes: &[usize]) -> Vec<Vec<VertexId>> {
        let mut next = 0;
        sizes
            .iter()
            .map(|&s| {
                let g = (next..next + s).map(VertexId).collect();
                next += s;
                g
            })
            .collect()
    }

    #[test]
    fn eight_part_slot_positions() {
        // parts 1,2 have three children, 3,4 two, 5..8 one
        let order = outdeg3_order(&groups(&[3, 3, 2, 2, 1, 1, 1, 1]));
        assert_eq!(order.len(), 14);
        let slots_of = |g: usize| -> Vec<usize> {
            order.iter().enumerate().filter(|(_, o)| o.0 == g).map(|(a, _)| a + 1).collect()
        };
        assert_eq!(slots_of(0), vec![1, 7, 13]);
        assert_eq!(slots_of(2), vec![3, 9]);
        assert_eq!(slots_of(4), vec![5]);
        assert_eq!(slots_of(6), vec![11]);
    }

    proptest! {
        #[test]
        fn same_part_children_are_a_third_apart(sizes in prop::collection::vec(1usize..=3, 1..12)) {
            let order = outdeg3_order(&groups(&sizes));
            let d = order.len();
            prop_assert_eq!(d, sizes.iter().sum::<usize>());
            if let Some(gap) = slot_gaps(&order) {
                prop_assert!(3 * gap >= d - 1);
            }
        }
    }

    #[test]
    fn fifteen_children_keep_angular_resolution() {
        let t = Tree::star(15);
        let dec = Decomposition::partition((0..5).map(|i| Part::new((0..3).map(|j| EdgeId(3 * i + j)))).collect());
        let rooted = t.root_at("c").unwrap();
        let frame = ConstructionFrame::standard(256);
        let c = construct_outdeg3_partition(&rooted, &dec, &frame).unwrap();
        for part in &dec.parts {
            assert!(check_rng_drawing(&c.drawing, part).passed);
        }
        assert!(check_noncrossing(&c.drawing).passed());
        let (res, _) = angular_resolution(&c.drawing).unwrap();
        let bound = Float::with_val(256, Constant::Pi) / 14u32;
        assert!(res > bound);
    }
}
