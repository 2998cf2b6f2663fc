use rug::float::Constant;
use rug::Float;

use super::degree5::{construct_degree5, Degree5Options};
use super::engine::check_precision;
use super::{names, ConstructError, Drawing, DrawingMeta};
use crate::geometry::Point;
use crate::tree::{
    good_embedding, validate_decomposition, Decomposition, DecompositionKind, DegreeBound, Homomorphism, ImageTree,
    Instance, ModelError, Part, Tree, VertexId,
};
use crate::verify::{check_general_position, rng_stability_radius};

const RETRIES: usize = 8;

/// The drawing together with the image tree it was perturbed from.
#[derive(Clone, Debug)]
pub struct Part5Construction {
    pub drawing: Drawing,
    pub image: ImageTree,
    pub image_drawing: Drawing,
    pub homomorphism: Homomorphism,
    /// Every vertex lies within this distance of its image's point.
    pub epsilon: Float,
}

/// Draws a tree partitioned into degree-5 subtrees so that every part is
/// the relative neighbourhood graph of its points. Edges may cross.
pub fn draw_deg5_partition(
    tree: &Tree,
    dec: &Decomposition,
    start: VertexId,
    prec: u32,
) -> Result<Drawing, ConstructError> {
    construct_deg5_partition(tree, dec, start, prec).map(|c| c.drawing)
}

pub fn construct_deg5_partition(
    tree: &Tree,
    dec: &Decomposition,
    start: VertexId,
    prec: u32,
) -> Result<Part5Construction, ConstructError> {
    let bound = DegreeBound::degree(5);
    if dec.kind != DecompositionKind::Partition {
        return Err(ConstructError::WrongInput("a partition".into()));
    }
    let report = validate_decomposition(tree, dec, bound, None);
    if !report.is_valid() {
        return Err(ModelError::InvalidDecomposition(report).into());
    }
    if start.0 >= tree.vertex_count() {
        return Err(ModelError::UnknownVertex(format!("#{}", start.0)).into());
    }
    let hom = crate::tree::homomorphism_into_5ary(tree, dec, start)?;
    let image = hom.image_tree(tree, dec);
    let all = Part::new(image.tree.edge_ids());
    let emb = good_embedding(&image.tree, &all, &Part::default())?;
    let opts = Degree5Options::standard(prec);
    let base = construct_degree5(&image.tree, &emb, &opts)?.drawing;

    let radius = rng_stability_radius(&base, &image.parts, None)?;
    let epsilon = Float::with_val(prec, radius / 2u32);

    let mut occupants: Vec<Vec<VertexId>> = vec![Vec::new(); image.tree.vertex_count()];
    for v in tree.vertices() {
        occupants[image.vertex_map[v.0].0].push(v);
    }
    let max_load = occupants.iter().map(Vec::len).max().unwrap_or(1);
    let smallest = Float::with_val(prec, &epsilon / (max_load as u32 + 1));
    check_precision(prec, 0, &smallest, image.tree.vertex_count(), image.tree.vertex_count())?;

    let golden =
        Float::with_val(prec, Constant::Pi) * (Float::with_val(prec, 3u32) - Float::with_val(prec, 5u32).sqrt());
    let instance = Instance { tree: tree.clone(), root: None, decomposition: Some(dec.clone()), bound: Some(bound) };
    let meta = DrawingMeta { precision_bits: prec, construction: names::PART5.into(), seed: None };
    let mut scale = Float::with_val(prec, 1u32);
    for attempt in 0..RETRIES {
        let mut positions = vec![Point::origin(prec); tree.vertex_count()];
        for (x, occ) in occupants.iter().enumerate() {
            let load = occ.len() as u32;
            for (rank, &v) in occ.iter().enumerate() {
                let rank = rank as u32 + 1;
                let r = Float::with_val(prec, &epsilon * rank) / (load + 1) * &scale;
                let turn = (rank + x as u32) as f64 + 0.1 * attempt as f64;
                let theta = Float::with_val(prec, &golden * turn);
                positions[v.0] = base.position(VertexId(x)).polar_offset(&r, &theta);
            }
        }
        let drawing = Drawing::new(instance.clone(), positions, meta.clone())?;
        if check_general_position(&drawing).passed() {
            return Ok(Part5Construction { drawing, image, image_drawing: base, homomorphism: hom, epsilon });
        }
        scale *= 0.75;
    }
    Err(ConstructError::Unplaceable("perturbed vertices".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dist;
    use crate::tree::EdgeId;
    use crate::verify::{check_mst_drawing, check_rng_drawing};

    #[test]
    fn ten_star_as_two_five_stars() {
        let t = Tree::star(10);
        let dec = Decomposition::partition(vec![
            Part::new([0, 1, 2, 3, 4].map(EdgeId)),
            Part::new([5, 6, 7, 8, 9].map(EdgeId)),
        ]);
        let c = construct_deg5_partition(&t, &dec, VertexId(0), 128).unwrap();
        for part in &dec.parts {
            assert!(check_rng_drawing(&c.drawing, part).passed);
            assert!(check_mst_drawing(&c.drawing, part).passed);
        }
        for v in t.vertices() {
            let x = c.image.vertex_map[v.0];
            assert!(dist(c.drawing.position(v), c.image_drawing.position(x)) < c.epsilon);
        }
    }

    #[test]
    fn one_part_reduces_to_a_perturbed_degree_five_drawing() {
        let t = Tree::path(7);
        let dec = Decomposition::trivial(&t);
        let d = draw_deg5_partition(&t, &dec, VertexId(3), 128).unwrap();
        assert!(check_rng_drawing(&d, &dec.parts[0]).passed);
        assert!(check_mst_drawing(&d, &dec.parts[0]).passed);
    }
}
