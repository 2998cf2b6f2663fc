use super::*;
use crate::construct::{draw_degree5, DrawingMeta};
use crate::tree::{EdgeId, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn drawing(tree: Tree, coords: &[(f64, f64)]) -> Drawing {
    let positions = coords.iter().map(|&(x, y)| Point::from_f64(x, y, 128)).collect();
    let meta = DrawingMeta { precision_bits: 128, construction: "test".into(), seed: None };
    Drawing::new(Instance::bare(tree), positions, meta).unwrap()
}

fn polar(deg: &[f64]) -> Vec<(f64, f64)> {
    std::iter::once((0.0, 0.0)).chain(deg.iter().map(|a| (a.to_radians().cos(), a.to_radians().sin()))).collect()
}

fn whole(t: &Tree) -> Part {
    Part::new(t.edge_ids())
}

#[test]
fn close_leaves_create_an_extra_proximity_edge() {
    let d = drawing(Tree::star(5), &polar(&[0.0, 30.0, 130.0, 210.0, 290.0]));
    let r = check_rng_drawing(&d, &whole(d.tree()));
    assert!(!r.passed);
    assert_eq!(r.extra, vec![("l1".to_string(), "l2".to_string())]);
}

#[test]
fn single_edge_passes_both_checks() {
    let t = Tree::path(2);
    let d = drawing(t.clone(), &[(0.0, 0.0), (1.0, 0.5)]);
    assert!(check_rng_drawing(&d, &whole(&t)).passed);
    assert!(check_mst_drawing(&d, &whole(&t)).passed);
}

#[test]
fn detour_fails_the_length_check() {
    let t = Tree::new(["a", "b", "c"], [("a", "c"), ("c", "b")]).unwrap();
    let d = drawing(t.clone(), &[(0.0, 0.0), (1.0, 0.0), (3.0, 0.1)]);
    let r = check_mst_drawing(&d, &whole(&t));
    assert!(!r.passed);
    assert!(r.excess.parse::<f64>().unwrap() > 1.9);
}

#[test]
fn crossing_pair_is_found() {
    let t = Tree::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
    let d = drawing(t, &[(0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0)]);
    assert_eq!(check_noncrossing(&d).crossings.len(), 1);
}

#[test]
fn three_star_at_equal_spacing() {
    let d = drawing(Tree::star(3), &polar(&[90.0, 210.0, 330.0]));
    let (a, v) = angular_resolution(&d).unwrap();
    assert_eq!(v, VertexId(0));
    assert!((a.to_f64() - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
}

#[test]
fn collinear_triple_is_reported() {
    let d = drawing(Tree::path(3), &[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
    let r = check_general_position(&d);
    assert!(!r.passed());
    assert_eq!(r.collinear_count, 1);
}

#[test]
fn rotation_is_clockwise() {
    let d = drawing(Tree::star(3), &polar(&[90.0, 210.0, 330.0]));
    assert_eq!(rotation_at(d.tree(), d.positions(), VertexId(0)), vec![EdgeId(2), EdgeId(1), EdgeId(0)]);
}

#[test]
fn single_edge_radius_is_a_quarter_of_its_length() {
    let t = Tree::path(2);
    let d = drawing(t.clone(), &[(0.0, 0.0), (2.0, 0.0)]);
    let r = rng_stability_radius(&d, &[whole(&t)], None).unwrap();
    assert_eq!(r.to_f64(), 0.5);
}

#[test]
fn radius_needs_a_valid_drawing() {
    let d = drawing(Tree::star(5), &polar(&[0.0, 30.0, 130.0, 210.0, 290.0]));
    let parts = [whole(d.tree())];
    assert_eq!(rng_stability_radius(&d, &parts, None), Err(VerifyError::NotRng { part: 0 }));
}

#[test]
fn half_radius_moves_keep_proximity() {
    let t = Tree::new(
        ["a", "b", "c", "d", "e", "f", "g"],
        [("a", "b"), ("a", "c"), ("a", "d"), ("b", "e"), ("b", "f"), ("c", "g")],
    )
    .unwrap();
    let d = draw_degree5(&t, 192).unwrap();
    let parts = [whole(&t)];
    for v in t.vertices() {
        let eps = rng_stability_radius(&d, &parts, Some(v)).unwrap();
        let half = Float::with_val(192, &eps / 2u32);
        for k in 0..16 {
            let theta = Float::with_val(192, Constant::Pi) * k / 8u32;
            let moved = d.moved(v, d.position(v).polar_offset(&half, &theta));
            assert!(check_rng_drawing(&moved, &parts[0]).passed);
        }
    }
}

fn six_star_covering() -> Vec<Part> {
    vec![Part::new([0, 1, 2, 3].map(EdgeId)), Part::new([2, 3, 4, 5].map(EdgeId)), Part::new([4, 5, 0, 1].map(EdgeId))]
}

#[test]
fn six_star_always_has_a_failing_part() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let coords: Vec<(f64, f64)> = std::iter::once((0.0, 0.0))
            .chain((0..6).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        let d = drawing(Tree::star(6), &coords);
        let w = check_impossible_covering(&d, &six_star_covering()).unwrap();
        assert!(w.below_third_turn && w.mst_failed);
        assert!(w.part.is_some());
    }
}

#[test]
fn regular_six_star_is_rejected() {
    let s = 3f64.sqrt() / 2.0;
    let coords = [(0.0, 0.0), (1.0, 0.0), (0.5, s), (-0.5, s), (-1.0, 0.0), (-0.5, -s), (0.5, -s)];
    let d = drawing(Tree::star(6), &coords);
    assert!(matches!(check_impossible_covering(&d, &six_star_covering()), Err(VerifyError::Degenerate(_))));
}

#[test]
fn census_of_a_star_part() {
    let t = Tree::new(["r", "a", "b", "c"], [("r", "a"), ("a", "b"), ("r", "c")]).unwrap();
    let c = proof_case_census(&t, VertexId(0), &whole(&t));
    assert_eq!(c, CaseCensus { root_edge: 2, root_nonedge: 1, same_component: 1, distinct_components: 2 });
}

#[test]
fn feasibility_of_good_rotations() {
    let t = Tree::star(6);
    let t1 = Part::new([0, 1, 2, 3, 4].map(EdgeId));
    let t2 = Part::new([1, 2, 3, 4, 5].map(EdgeId));
    assert!(good_embedding_feasible_at(&t, &t1, &t2, VertexId(0)));
    let t = Tree::star(7);
    let t1 = Part::new([0, 1, 2, 3, 4].map(EdgeId));
    let t2 = Part::new([4, 5, 6].map(EdgeId));
    assert!(!good_embedding_feasible_at(&t, &t1, &t2, VertexId(0)));
    let t2 = Part::new([5, 6].map(EdgeId));
    let t1 = Part::new([0, 1, 2, 3, 4].map(EdgeId));
    assert!(good_embedding_feasible_at(&t, &t1, &t2, VertexId(0)));
}

#[test]
fn report_for_a_degree_five_drawing() {
    let t = Tree::star(5);
    let d = draw_degree5(&t, 128).unwrap();
    let r = verify_drawing(&d);
    assert!(r.passed(), "{}", r.summary());
    assert!(r.summary().ends_with("PASS\n"));
}
