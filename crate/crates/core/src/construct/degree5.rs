use rug::Float;

use super::engine::{run, Anchor, Expansion, Placement, Planner};
use super::{names, ConstructError, Construction, Drawing, DrawingMeta};
use crate::geometry::{LensPairs, Point};
use crate::tree::{good_embedding, Embedding, Instance, Part, RootedTree, Tree, VertexId};

/// Where the root goes and how large its disc is.
#[derive(Clone, Debug)]
pub struct Degree5Options {
    pub center: Point,
    pub delta: Float,
    /// Direction of the root's first slot.
    pub phase: Float,
}

impl Degree5Options {
    pub fn standard(prec: u32) -> Self {
        Degree5Options {
            center: Point::origin(prec),
            delta: Float::with_val(prec, 0.5),
            phase: Float::with_val(prec, 0.25),
        }
    }
}

/// Children clockwise after the parent edge (or from the start of the
/// rotation at the root) take the arc slots from the counterclockwise end.
struct Embedded<'a> {
    emb: &'a Embedding,
}

impl Planner for Embedded<'_> {
    fn plan(&self, rooted: &RootedTree, v: VertexId) -> Result<Expansion, ConstructError> {
        let tree = rooted.tree();
        let rot = self.emb.rotation(v);
        let start = match rooted.parent(v) {
            Some((_, pe)) => self.emb.position(v, pe).expect("rotation lists the parent edge") + 1,
            None => 0,
        };
        let kids: Vec<VertexId> = (0..rot.len())
            .map(|i| rot[(start + i) % rot.len()])
            .filter(|&e| rooted.parent(v).map(|(_, pe)| pe) != Some(e))
            .map(|e| tree.other(e, v))
            .collect();
        let m = kids.len();
        let placements =
            kids.iter().enumerate().map(|(i, &child)| Placement { child, slot: m - 1 - i, sub: 0 }).collect();
        Ok(Expansion { slots: m, subslots: 1, pairs: LensPairs::All, placements })
    }
}

/// Draws a tree of maximum degree at most 5 as the relative neighbourhood
/// graph of its points, rooted at its first vertex of maximum degree.
pub fn draw_degree5(tree: &Tree, prec: u32) -> Result<Drawing, ConstructError> {
    let all = Part::new(tree.edge_ids());
    let emb = good_embedding(tree, &all, &Part::default())?;
    draw_degree5_embedded(tree, &emb, &Degree5Options::standard(prec))
}

/// As [`draw_degree5`], realizing the clockwise edge orders of `emb`.
pub fn draw_degree5_embedded(tree: &Tree, emb: &Embedding, opts: &Degree5Options) -> Result<Drawing, ConstructError> {
    construct_degree5(tree, emb, opts).map(|c| c.drawing)
}

pub fn construct_degree5(tree: &Tree, emb: &Embedding, opts: &Degree5Options) -> Result<Construction, ConstructError> {
    let report = tree.validate();
    if !report.is_valid() {
        return Err(crate::tree::ModelError::InvalidTree(report).into());
    }
    if tree.max_degree() > 5 {
        return Err(ConstructError::DegreeTooLarge { max: 5, found: tree.max_degree() });
    }
    let rooted = RootedTree::new(tree.clone(), tree.max_degree_vertex())?;
    let anchor = Anchor::Free { q: opts.center.clone(), delta: opts.delta.clone(), phase: opts.phase.clone() };
    let prec = opts.center.prec().max(opts.delta.prec());
    let (positions, trace) = run(&rooted, &Embedded { emb }, anchor)?;
    let meta = DrawingMeta { precision_bits: prec, construction: names::DEGREE5.into(), seed: None };
    let instance = Instance { root: Some(rooted.root()), ..Instance::bare(tree.clone()) };
    Ok(Construction { drawing: Drawing::new(instance, positions, meta)?, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::angle_at;
    use crate::tree::EdgeId;
    use crate::verify::{check_mst_drawing, check_noncrossing, check_rng_drawing, realized_embedding};

    #[test]
    fn five_star_has_seventy_two_degree_spacing() {
        let t = Tree::star(5);
        let d = draw_degree5(&t, 128).unwrap();
        let c = d.position(VertexId(0));
        let deg72 = std::f64::consts::PI * 2.0 / 5.0;
        let mut min = f64::INFINITY;
        for a in 1..=5 {
            for b in a + 1..=5 {
                let ang = angle_at(c, d.position(VertexId(a)), d.position(VertexId(b))).unwrap().to_f64();
                min = min.min(ang);
            }
        }
        assert!((min - deg72).abs() < 1e-12);
        assert!(check_rng_drawing(&d, &Part::new(t.edge_ids())).passed);
    }

    #[test]
    fn single_edge() {
        let t = Tree::path(2);
        let d = draw_degree5(&t, 128).unwrap();
        assert_ne!(d.position(VertexId(0)), d.position(VertexId(1)));
        assert!(check_mst_drawing(&d, &Part::new([EdgeId(0)])).passed);
    }

    #[test]
    fn embedding_is_realized() {
        let t = Tree::new(
            ["c", "a", "b", "x", "y", "z", "w"],
            [("c", "a"), ("c", "b"), ("c", "x"), ("a", "y"), ("a", "z"), ("a", "w")],
        )
        .unwrap();
        let mut rot: Vec<Vec<EdgeId>> = t.vertices().map(|v| t.incident(v).to_vec()).collect();
        rot[0] = vec![EdgeId(2), EdgeId(0), EdgeId(1)];
        rot[1] = vec![EdgeId(0), EdgeId(5), EdgeId(3), EdgeId(4)];
        let emb = Embedding::new(&t, rot).unwrap();
        let d = draw_degree5_embedded(&t, &emb, &Degree5Options::standard(128)).unwrap();
        let got = realized_embedding(&d);
        assert!(got.mismatches(&emb).is_empty());
        assert!(check_noncrossing(&d).passed());
    }

    #[test]
    fn rejects_degree_six() {
        assert!(matches!(draw_degree5(&Tree::star(6), 128), Err(ConstructError::DegreeTooLarge { max: 5, found: 6 })));
    }
}
