use std::cmp::Ordering;
use std::collections::BTreeSet;

use rug::float::Constant;
use rug::Float;

use super::degree5::{draw_degree5_embedded, Degree5Options};
use super::engine::check_precision;
use super::{names, ConstructError, Drawing, DrawingMeta};
use crate::geometry::{crosses_in, direction_angle, dist, Lattice, Point};
use crate::proximity::{rng, PointSet};
use crate::tree::{
    find_fold_site_ranked, fold, good_embedding, unfold, validate_decomposition, Decomposition, DegreeBound, EdgeId,
    Embedding, FoldRecord, FoldSite, Instance, ModelError, Part, Tree, VertexId,
};
use crate::verify::{rng_stability_radius, rotation_at};

/// How the fold/unfold recursion went.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverStats {
    pub folds: usize,
    /// Folds whose two edges were not adjacent in the rotation.
    pub non_consecutive: usize,
    /// Unfolds that could not keep the rotation at `v`, `x` or `y`.
    pub relaxed: usize,
}

/// Edges at a merged vertex inherited from each of the two vertices it
/// replaced. Separating them again needs each group contiguous around it.
#[derive(Clone, Debug)]
struct Blocks {
    at: VertexId,
    x_side: BTreeSet<EdgeId>,
    y_side: BTreeSet<EdgeId>,
}

impl Blocks {
    fn through(&self, r: &FoldRecord) -> Blocks {
        Blocks {
            at: r.folded_vertex(self.at),
            x_side: self.x_side.iter().map(|&e| r.folded_edge(e)).collect(),
            y_side: self.y_side.iter().map(|&e| r.folded_edge(e)).collect(),
        }
    }

    fn kept_by(&self, rotation: &[EdgeId]) -> bool {
        contiguous(rotation, &self.x_side) && contiguous(rotation, &self.y_side)
    }
}

fn contiguous(rotation: &[EdgeId], set: &BTreeSet<EdgeId>) -> bool {
    let n = rotation.len();
    let starts = (0..n).filter(|&i| set.contains(&rotation[i]) && !set.contains(&rotation[(i + n - 1) % n])).count();
    starts <= 1
}

/// How many of the two ways `vy` can land next to `vx` break the blocks at
/// `v`.
fn site_rank(tree: &Tree, emb: &Embedding, pending: &[Blocks], site: &FoldSite) -> usize {
    let (Some(a), Some(b)) = (tree.edge_between(site.v, site.x), tree.edge_between(site.v, site.y)) else {
        return 2;
    };
    let at_v: Vec<&Blocks> = pending.iter().filter(|b| b.at == site.v).collect();
    let without: Vec<EdgeId> = emb.rotation(site.v).iter().copied().filter(|&e| e != b).collect();
    let i = without.iter().position(|&e| e == a).unwrap_or(0);
    [i + 1, i]
        .into_iter()
        .filter(|&k| {
            let mut r = without.clone();
            r.insert(k, b);
            !at_v.iter().all(|blocks| blocks.kept_by(&r))
        })
        .count()
}

/// Draws a tree covered by two degree-5 subtrees without crossings, with
/// each subtree the relative neighbourhood graph of its points.
pub fn draw_two_covering(tree: &Tree, t1: &Part, t2: &Part, prec: u32) -> Result<Drawing, ConstructError> {
    construct_two_covering(tree, t1, t2, prec).map(|(d, _)| d)
}

pub fn construct_two_covering(
    tree: &Tree,
    t1: &Part,
    t2: &Part,
    prec: u32,
) -> Result<(Drawing, CoverStats), ConstructError> {
    let bound = DegreeBound::degree(5);
    let dec = Decomposition::covering(vec![t1.clone(), t2.clone()]);
    let report = tree.validate();
    if !report.is_valid() {
        return Err(ModelError::InvalidTree(report).into());
    }
    let report = validate_decomposition(tree, &dec, bound, None);
    if !report.is_valid() {
        return Err(ModelError::InvalidDecomposition(report).into());
    }
    let target = good_embedding(tree, t1, t2)?;

    let mut stats = CoverStats::default();
    let mut pending: Vec<Blocks> = Vec::new();
    let mut stack: Vec<(FoldRecord, Vec<Blocks>)> = Vec::new();
    let (mut cur_tree, mut cur_parts, mut cur_emb) = (tree.clone(), [t1.clone(), t2.clone()], target);
    while let Some(site) =
        find_fold_site_ranked(&cur_tree, &cur_parts, &cur_emb, |s| site_rank(&cur_tree, &cur_emb, &pending, s))
    {
        let folded = fold(&cur_tree, &cur_parts, &cur_emb, site)?;
        stats.folds += 1;
        stats.non_consecutive += usize::from(!site.consecutive);
        let r = &folded.record;
        let mut next: Vec<Blocks> = pending.iter().map(|b| b.through(r)).collect();
        let y_side: BTreeSet<EdgeId> = r.y_edges.iter().copied().collect();
        let x_side = folded.embedding.rotation(r.w).iter().copied().filter(|e| *e != r.vw && !y_side.contains(e));
        next.push(Blocks { at: r.w, x_side: x_side.collect(), y_side });
        stack.push((folded.record, std::mem::replace(&mut pending, next)));
        (cur_tree, cur_parts, cur_emb) = (folded.tree, folded.parts, folded.embedding);
    }

    let base = draw_degree5_embedded(&cur_tree, &cur_emb, &Degree5Options::standard(prec))?;
    let mut positions = base.positions().to_vec();

    while let Some((record, blocks)) = stack.pop() {
        let folded_instance = Instance {
            tree: cur_tree.clone(),
            root: None,
            decomposition: Some(Decomposition::covering(cur_parts.to_vec())),
            bound: Some(bound),
        };
        let meta = DrawingMeta { precision_bits: prec, construction: names::COVER2.into(), seed: None };
        let folded_drawing = Drawing::new(folded_instance, positions.clone(), meta)?;
        let mu = rng_stability_radius(&folded_drawing, &cur_parts, Some(record.w))?;

        let (prev_tree, prev_parts, prev_emb) = unfold(&cur_tree, &cur_parts, &cur_emb, &record)?;
        let mut lifted: Vec<Point> = prev_tree
            .vertices()
            .map(|u| {
                let fu = if u.0 == record.y_index { record.w } else { record.folded_vertex(u) };
                positions[fu.0].clone()
            })
            .collect();
        let unfolding = Unfolding {
            tree: &prev_tree,
            emb: &prev_emb,
            blocks: &blocks,
            folded: &cur_tree,
            folded_emb: &cur_emb,
            folded_pos: &positions,
            record: &record,
            parts: &prev_parts,
        };
        let kept = unfolding.place(&mu, &mut lifted, prec)?;
        stats.relaxed += usize::from(!kept);
        positions = lifted;
        (cur_tree, cur_parts, cur_emb) = (prev_tree, prev_parts, prev_emb);
    }

    let instance = Instance { tree: tree.clone(), root: None, decomposition: Some(dec), bound: Some(bound) };
    let meta = DrawingMeta { precision_bits: prec, construction: names::COVER2.into(), seed: None };
    Ok((Drawing::new(instance, positions, meta)?, stats))
}

struct Candidate {
    angle: Float,
    mover: VertexId,
}

struct Unfolding<'a> {
    tree: &'a Tree,
    emb: &'a Embedding,
    /// Groups that later unfolds need kept together, in `tree`'s ids.
    blocks: &'a [Blocks],
    folded: &'a Tree,
    folded_emb: &'a Embedding,
    folded_pos: &'a [Point],
    record: &'a FoldRecord,
    /// The parts of `tree`.
    parts: &'a [Part; 2],
}

impl Unfolding<'_> {
    /// Moves `x` or `y` off `w` along a separating ray. Returns whether the
    /// target rotations at the affected vertices were kept.
    fn place(&self, mu: &Float, positions: &mut [Point], prec: u32) -> Result<bool, ConstructError> {
        let Unfolding { tree, emb, blocks, folded, folded_emb, folded_pos, record, .. } = *self;
        let x = VertexId(record.x_index);
        let y = VertexId(record.y_index);
        let v = tree.other(EdgeId(record.vx_index), x);
        let w = record.w;
        let wp = folded_pos[w.0].clone();
        let pi = Float::with_val(prec, Constant::Pi);
        let two_pi = Float::with_val(prec, &pi * 2u32);

        let norm = |a: Float| -> Float {
            let mut a = a % &two_pi;
            if a < 0 {
                a += &two_pi;
            }
            a
        };
        let away_from_v = norm(direction_angle(&wp, &folded_pos[folded.other(record.vw, w).0]) + &pi);

        // Gaps between consecutive edges at w in the realized clockwise order,
        // the one just before the first x-side edge first.
        let realized = rotation_at(folded, folded_pos, w);
        let dir = |e: EdgeId| norm(direction_angle(&wp, &folded_pos[folded.other(e, w).0]));
        let m = realized.len();
        let first_x = realized.iter().position(|&e| e != record.vw && !record.y_edges.contains(&e));
        let x_gap_end = first_x.unwrap_or_else(|| {
            let last_y = realized.iter().rposition(|e| record.y_edges.contains(e));
            last_y.map_or(0, |i| (i + 1) % m)
        });
        let matches_fold = folded_emb.matches_at(w, &realized);

        let mut gaps: Vec<(Float, Float)> = (0..m)
            .map(|i| {
                let to = realized[(x_gap_end + i) % m];
                let from = realized[(x_gap_end + i + m - 1) % m];
                // clockwise from `from` to `to` means decreasing angle
                let width = if m == 1 { two_pi.clone() } else { norm(dir(from) - dir(to)) };
                (dir(from), width)
            })
            .collect();
        let first = gaps.remove(0);
        gaps.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal));
        gaps.insert(0, first);

        let side_of = |angle: &Float, u: VertexId| -> Ordering {
            let tip = wp.polar_offset(&Float::with_val(prec, 1u32), angle);
            let l = Lattice::new([&wp, &tip, &positions[u.0]]);
            l.orient(0, 1, 2)
        };
        let two_sided = |angle: &Float, who: VertexId| -> bool {
            let sides: Vec<Ordering> = tree.neighbors(who).map(|u| side_of(angle, u)).collect();
            sides.contains(&Ordering::Less) && sides.contains(&Ordering::Greater)
        };

        let mut candidates = Vec::new();
        let mut two_sided_candidates = Vec::new();
        let mut both_sided = false;
        for (gi, (from, width)) in gaps.iter().enumerate() {
            for frac in [0.5, 1.0 / 3.0, 2.0 / 3.0, 0.25, 0.75, 1.0 / 6.0, 5.0 / 6.0] {
                let angle = norm(Float::with_val(prec, from - Float::with_val(prec, width * frac)));
                let gap = Float::with_val(prec, &angle - &away_from_v).abs();
                if gap < 1e-9 || Float::with_val(prec, &two_pi - gap) < 1e-9 {
                    continue;
                }
                let (xs, ys) = (two_sided(&angle, x), two_sided(&angle, y));
                if gi == 0 && frac == 0.5 && matches_fold && xs && ys {
                    both_sided = true;
                }
                for (mover, sided) in [(y, ys), (x, xs)] {
                    let cand = Candidate { angle: angle.clone(), mover };
                    if sided {
                        two_sided_candidates.push(cand);
                    } else {
                        candidates.push(cand);
                    }
                }
            }
        }
        candidates.extend(two_sided_candidates);

        // Sound placements ranked by (blocks kept, rotations kept).
        let mut best: Option<((bool, bool), Vec<Point>)> = None;
        for cand in &candidates {
            let mut dist = Float::with_val(prec, mu / 2u32);
            for _ in 0..6 {
                check_precision(prec, 0, &dist, 1, 1)?;
                let mut trial = positions.to_vec();
                let stay = if cand.mover == y { x } else { y };
                trial[stay.0] = wp.clone();
                trial[cand.mover.0] = wp.polar_offset(&dist, &cand.angle);
                if locally_sound(tree, &trial, cand.mover) {
                    let watch: BTreeSet<VertexId> = [v, x, y].into_iter().chain(tree.neighbors(cand.mover)).collect();
                    let rotations: Vec<(VertexId, Vec<EdgeId>)> =
                        watch.iter().map(|&u| (u, rotation_at(tree, &trial, u))).collect();
                    let matched = rotations.iter().all(|(u, r)| emb.matches_at(*u, r));
                    let grouped =
                        rotations.iter().all(|(u, r)| blocks.iter().filter(|b| b.at == *u).all(|b| b.kept_by(r)));
                    if matched && grouped {
                        positions.clone_from_slice(&trial);
                        return Ok(true);
                    }
                    if best.as_ref().map_or(true, |(score, _)| (grouped, matched) > *score) {
                        best = Some(((grouped, matched), trial));
                    }
                }
                dist /= 2u32;
            }
        }
        if !best.as_ref().is_some_and(|((grouped, _), _)| *grouped) {
            if let Some(found) = self.place_wide(mu, positions, prec)? {
                best = Some(found);
            }
        }
        match best {
            Some(((_, matched), trial)) => {
                positions.clone_from_slice(&trial);
                Ok(matched)
            }
            None if both_sided => {
                Err(ConstructError::UnfoldSides { x: tree.name(x).to_string(), y: tree.name(y).to_string() })
            }
            None => Err(ConstructError::Unplaceable(tree.name(y).to_string())),
        }
    }
}

impl Unfolding<'_> {
    /// Searches farther from `w` than the stability radius allows, checking the
    /// parts through the mover exactly. Used when no nearby point keeps the
    /// blocks at `w` apart.
    #[allow(clippy::type_complexity)]
    fn place_wide(
        &self,
        mu: &Float,
        positions: &[Point],
        prec: u32,
    ) -> Result<Option<((bool, bool), Vec<Point>)>, ConstructError> {
        let Unfolding { tree, emb, blocks, record, folded_pos, parts, .. } = *self;
        let x = VertexId(record.x_index);
        let y = VertexId(record.y_index);
        let v = tree.other(EdgeId(record.vx_index), x);
        let wp = folded_pos[record.w.0].clone();
        let nearest = tree
            .neighbors(x)
            .chain(tree.neighbors(y))
            .map(|u| dist(&wp, &positions[u.0]))
            .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
            .unwrap_or_else(|| mu.clone());
        let turn = Float::with_val(prec, Constant::Pi) * 2u32;
        let mut best: Option<((bool, bool), Vec<Point>)> = None;
        for mover in [y, x] {
            let stay = if mover == y { x } else { y };
            let mut dist = Float::with_val(prec, mu / 2u32);
            while dist < nearest {
                check_precision(prec, 0, &dist, 1, 1)?;
                for k in 0..WIDE_DIRECTIONS {
                    let angle = Float::with_val(prec, &turn * (k as f64 + 0.37)) / WIDE_DIRECTIONS as u32;
                    let mut trial = positions.to_vec();
                    trial[stay.0] = wp.clone();
                    trial[mover.0] = wp.polar_offset(&dist, &angle);
                    if !locally_sound(tree, &trial, mover) {
                        continue;
                    }
                    if !parts.iter().filter(|p| p.vertices(tree).contains(&mover)).all(|p| part_is_rng(tree, p, &trial))
                    {
                        continue;
                    }
                    let watch: BTreeSet<VertexId> = [v, x, y].into_iter().chain(tree.neighbors(mover)).collect();
                    let rotations: Vec<(VertexId, Vec<EdgeId>)> =
                        watch.iter().map(|&u| (u, rotation_at(tree, &trial, u))).collect();
                    let matched = rotations.iter().all(|(u, r)| emb.matches_at(*u, r));
                    let grouped =
                        rotations.iter().all(|(u, r)| blocks.iter().filter(|b| b.at == *u).all(|b| b.kept_by(r)));
                    if grouped && matched {
                        return Ok(Some(((true, true), trial)));
                    }
                    if best.as_ref().map_or(true, |(score, _)| (grouped, matched) > *score) {
                        best = Some(((grouped, matched), trial));
                    }
                }
                dist *= 2u32;
            }
        }
        if best.as_ref().is_some_and(|((grouped, _), _)| *grouped) {
            return Ok(best);
        }
        // Carry the mover's whole side along, turning it about `v` or shifting
        // it. The side holds no vertex of the other part, so only its own part
        // needs rechecking.
        let vp = positions[v.0].clone();
        for mover in [y, x] {
            let stay = if mover == y { x } else { y };
            let side = side_of_edge(tree, v, mover);
            let mut motions: Vec<Box<dyn Fn(&Point) -> Point>> = Vec::new();
            for k in 1..WIDE_DIRECTIONS {
                let theta = Float::with_val(prec, &turn * k as u32) / WIDE_DIRECTIONS as u32;
                let (sin, cos) = theta.sin_cos(Float::new(prec));
                let vp = vp.clone();
                motions.push(Box::new(move |p: &Point| {
                    let dx = Float::with_val(prec, p.x() - vp.x());
                    let dy = Float::with_val(prec, p.y() - vp.y());
                    let rx = Float::with_val(prec, &dx * &cos) - Float::with_val(prec, &dy * &sin);
                    let ry = Float::with_val(prec, &dx * &sin) + Float::with_val(prec, &dy * &cos);
                    vp.offset(&rx, &ry)
                }));
            }
            let mut dist = Float::with_val(prec, mu / 2u32);
            let floor = Float::with_val(prec, mu / 256u32);
            while dist > floor {
                check_precision(prec, 0, &dist, 1, 1)?;
                for k in 0..WIDE_DIRECTIONS {
                    let angle = Float::with_val(prec, &turn * (k as f64 + 0.37)) / WIDE_DIRECTIONS as u32;
                    let shift = Point::origin(prec).polar_offset(&dist, &angle);
                    motions.push(Box::new(move |p: &Point| p.offset(shift.x(), shift.y())));
                }
                dist /= 2u32;
            }
            for motion in &motions {
                let mut trial = positions.to_vec();
                trial[stay.0] = wp.clone();
                trial[mover.0] = wp.clone();
                for u in (0..trial.len()).filter(|&u| side[u]) {
                    trial[u] = motion(&trial[u]);
                }
                if !sound_after_moving(tree, &trial, &side) {
                    continue;
                }
                if !parts.iter().filter(|p| p.vertices(tree).contains(&mover)).all(|p| part_is_rng(tree, p, &trial)) {
                    continue;
                }
                let watch: BTreeSet<VertexId> = [v, x, y].into_iter().chain(tree.neighbors(mover)).collect();
                let rotations: Vec<(VertexId, Vec<EdgeId>)> =
                    watch.iter().map(|&u| (u, rotation_at(tree, &trial, u))).collect();
                let matched = rotations.iter().all(|(u, r)| emb.matches_at(*u, r));
                let grouped = rotations.iter().all(|(u, r)| blocks.iter().filter(|b| b.at == *u).all(|b| b.kept_by(r)));
                if grouped && matched {
                    return Ok(Some(((true, true), trial)));
                }
                if best.as_ref().map_or(true, |(score, _)| (grouped, matched) > *score) {
                    best = Some(((grouped, matched), trial));
                }
            }
        }
        Ok(best)
    }
}

const WIDE_DIRECTIONS: usize = 48;

fn part_is_rng(tree: &Tree, part: &Part, positions: &[Point]) -> bool {
    let verts = part.vertices(tree);
    let Ok(ps) = PointSet::from_points(verts.iter().map(|u| positions[u.0].clone()).collect()) else {
        return false;
    };
    let index = |u: VertexId| verts.iter().position(|&w| w == u).expect("part vertex");
    let drawn: BTreeSet<(usize, usize)> = part
        .edges()
        .iter()
        .map(|&e| {
            let (a, b) = tree.endpoints(e);
            let (i, j) = (index(a), index(b));
            (i.min(j), i.max(j))
        })
        .collect();
    rng(&ps).edges() == &drawn
}

/// No coincidence or collinearity involving `mover`, and none of its edges
/// crosses another edge.
fn locally_sound(tree: &Tree, positions: &[Point], mover: VertexId) -> bool {
    let mut moved = vec![false; positions.len()];
    moved[mover.0] = true;
    sound_after_moving(tree, positions, &moved)
}

/// As [`locally_sound`] for a set of vertices moved together: only
/// coincidences, collinear triples and crossings mixing moved and fixed
/// vertices are checked.
fn sound_after_moving(tree: &Tree, positions: &[Point], moved: &[bool]) -> bool {
    let l = Lattice::new(positions);
    let n = positions.len();
    for m in (0..n).filter(|&m| moved[m]) {
        for a in 0..n {
            if !moved[a] && l.same_point(a, m) {
                return false;
            }
            for b in a + 1..n {
                if a != m && b != m && !(moved[a] && moved[b]) && l.orient(m, a, b) == Ordering::Equal {
                    return false;
                }
            }
        }
    }
    let edges = tree.edges();
    let kind = |(a, b): (VertexId, VertexId)| (moved[a.0], moved[b.0]);
    for (e, &(a, b)) in edges.iter().enumerate() {
        let ke = kind((a, b));
        if ke == (false, false) {
            continue;
        }
        for (f, &(c, d)) in edges.iter().enumerate() {
            if f == e || (ke == (true, true) && kind((c, d)) == (true, true)) {
                continue;
            }
            if crosses_in(&l, [a.0, b.0], [c.0, d.0]) {
                return false;
            }
        }
    }
    true
}

/// Vertices reached from `from` without passing through `cut`.
fn side_of_edge(tree: &Tree, cut: VertexId, from: VertexId) -> Vec<bool> {
    let mut seen = vec![false; tree.vertex_count()];
    seen[from.0] = true;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        for w in tree.neighbors(u) {
            if w != cut && !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{check_general_position, check_noncrossing, check_rng_drawing, realized_embedding};

    fn check(tree: &Tree, t1: &Part, t2: &Part) -> CoverStats {
        let (d, stats) = construct_two_covering(tree, t1, t2, 256).unwrap();
        assert!(check_rng_drawing(&d, t1).passed);
        if !t2.is_empty() {
            assert!(check_rng_drawing(&d, t2).passed);
        }
        assert!(check_noncrossing(&d).passed());
        assert!(check_general_position(&d).passed());
        stats
    }

    #[test]
    fn every_pairing_merges_heavily() {
        // c: shared s1..s3; first-only p (4 leaves), a (3 leaves); second-only q, b (3 leaves each).
        let mut names: Vec<String> = ["c", "s1", "s2", "s3", "p", "a", "q", "b"].map(String::from).to_vec();
        let mut edges: Vec<(String, String)> =
            ["s1", "s2", "s3", "p", "a", "q", "b"].iter().map(|&u| ("c".to_string(), u.to_string())).collect();
        for (hub, k) in [("p", 4), ("a", 3), ("q", 3), ("b", 3)] {
            for i in 0..k {
                names.push(format!("{hub}{i}"));
                edges.push((hub.to_string(), format!("{hub}{i}")));
            }
        }
        let t = Tree::new(names, edges).unwrap();
        let hubs = |hs: &[&str]| -> Vec<EdgeId> {
            t.edge_ids()
                .into_iter()
                .filter(|&e| {
                    let (u, w) = t.endpoints(e);
                    let (u, w) = (t.name(u), t.name(w));
                    ["s1", "s2", "s3"].contains(&w) || hs.iter().any(|h| u == *h || w == *h)
                })
                .collect()
        };
        let t1 = Part::new(hubs(&["p", "a"]));
        let t2 = Part::new(hubs(&["q", "b"]));
        check(&t, &t1, &t2);
    }

    #[test]
    fn six_star_sharing_four_edges() {
        let t = Tree::star(6);
        let t1 = Part::new([0, 1, 2, 3, 4].map(EdgeId));
        let t2 = Part::new([1, 2, 3, 4, 5].map(EdgeId));
        let stats = check(&t, &t1, &t2);
        assert_eq!(stats.folds, 1);
        let (d, _) = construct_two_covering(&t, &t1, &t2, 256).unwrap();
        let target = good_embedding(&t, &t1, &t2).unwrap();
        assert!(realized_embedding(&d).mismatches(&target).is_empty());
    }

    #[test]
    fn eight_star_needs_three_folds() {
        let t = Tree::star(8);
        let t1 = Part::new([0, 1, 2, 3, 4].map(EdgeId));
        let t2 = Part::new([3, 4, 5, 6, 7].map(EdgeId));
        assert_eq!(check(&t, &t1, &t2).folds, 3);
    }

    #[test]
    fn empty_second_part_matches_degree_five() {
        let t = Tree::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("b", "d")]).unwrap();
        let all = Part::new(t.edge_ids());
        let d = draw_two_covering(&t, &all, &Part::default(), 128).unwrap();
        let base = super::super::draw_degree5(&t, 128).unwrap();
        assert_eq!(d.positions(), base.positions());
    }
}
