use std::collections::BTreeSet;

use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use super::{
    angle_at, check_general_position, check_mst_drawing, check_rng_drawing, class_counts, float_str, rotation_at,
    NamePair, VerifyError,
};
use crate::construct::Drawing;
use crate::geometry::Lattice;
use crate::tree::{Part, Tree, VertexId};

/// One strict inequality that keeps a part's proximity graph unchanged.
struct Margin {
    value: Float,
    pair: (usize, usize),
    third: Option<usize>,
}

fn distance_matrix(d: &Drawing, prec: u32) -> Vec<Vec<Float>> {
    let l = d.lattice();
    let n = l.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sq = l.to_float(&l.dist2(i, j), 2);
                    Float::with_val(prec, sq.sqrt_ref())
                })
                .collect()
        })
        .collect()
}

fn margins(d: &Drawing, parts: &[Part], focus: Option<VertexId>) -> Result<Vec<Margin>, VerifyError> {
    let tree = d.tree();
    let prec = d.meta().precision_bits.max(crate::MIN_PRECISION) + 32;
    let dm = distance_matrix(d, prec);
    let touches = |ids: &[usize]| focus.map_or(true, |f| ids.contains(&f.0));
    let mut out = Vec::new();

    for (index, part) in parts.iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        if !check_rng_drawing(d, part).passed {
            return Err(VerifyError::NotRng { part: index });
        }
        let vertices: Vec<usize> = part.vertices(tree).into_iter().map(|v| v.0).collect();
        let edges: BTreeSet<(usize, usize)> = part
            .edges()
            .iter()
            .map(|&e| {
                let (a, b) = tree.endpoints(e);
                (a.0.min(b.0), a.0.max(b.0))
            })
            .collect();
        for (ai, &a) in vertices.iter().enumerate() {
            for &b in &vertices[ai + 1..] {
                let far = |c: usize| if dm[c][a] > dm[c][b] { &dm[c][a] } else { &dm[c][b] };
                let thirds = vertices.iter().copied().filter(|&c| c != a && c != b);
                if edges.contains(&(a, b)) {
                    for c in thirds.filter(|&c| touches(&[a, b, c])) {
                        let value = Float::with_val(prec, far(c) - &dm[a][b]);
                        out.push(Margin { value, pair: (a, b), third: Some(c) });
                    }
                } else {
                    let witness = |c: usize| Float::with_val(prec, &dm[a][b] - far(c));
                    let relevant: Vec<usize> = match focus {
                        Some(f) if f.0 != a && f.0 != b => {
                            let others_hold = thirds.clone().any(|c| c != f.0 && witness(c) > 0);
                            if others_hold || !vertices.contains(&f.0) {
                                continue;
                            }
                            vec![f.0]
                        }
                        _ => thirds.collect(),
                    };
                    let best = relevant.into_iter().map(|c| (witness(c), c)).max_by(|x, y| x.0.total_cmp(&y.0));
                    if let Some((value, c)) = best {
                        out.push(Margin { value, pair: (a, b), third: Some(c) });
                    }
                }
            }
        }
    }

    let n = dm.len();
    for a in 0..n {
        for b in a + 1..n {
            if touches(&[a, b]) {
                out.push(Margin { value: dm[a][b].clone(), pair: (a, b), third: None });
            }
        }
    }
    Ok(out)
}

/// A radius such that moving `focus` (or, with no focus, any single vertex)
/// by less than it keeps every part drawn as the relative neighbourhood
/// graph of its points. Each witnessing inequality changes by at most twice
/// the displacement, so a quarter of the smallest margin leaves room for
/// two vertices moving at once.
pub fn rng_stability_radius(d: &Drawing, parts: &[Part], focus: Option<VertexId>) -> Result<Float, VerifyError> {
    let all = margins(d, parts, focus)?;
    let prec = d.meta().precision_bits.max(crate::MIN_PRECISION) + 32;
    let Some(min) = all.iter().map(|m| &m.value).min_by(|a, b| a.total_cmp(b)) else {
        return Ok(Float::with_val(prec, rug::float::Special::Infinity));
    };
    if *min <= 0 {
        let m = all.iter().find(|m| m.value <= 0).unwrap();
        let tree = d.tree();
        return Err(VerifyError::Degenerate(format!(
            "zero margin at ({}, {})",
            tree.name(VertexId(m.pair.0)),
            tree.name(VertexId(m.pair.1))
        )));
    }
    Ok(Float::with_val(prec, min / 4u32))
}

/// Witnessing inequalities whose slack is below `2^(-P/2)` times the
/// drawing's diameter, described for a report.
pub fn fragile_margins(d: &Drawing, parts: &[Part]) -> Result<Vec<String>, VerifyError> {
    let all = margins(d, parts, None)?;
    let prec = d.meta().precision_bits.max(crate::MIN_PRECISION);
    let diameter = all.iter().filter(|m| m.third.is_none()).map(|m| &m.value).max_by(|a, b| a.total_cmp(b));
    let Some(diameter) = diameter else {
        return Ok(vec![]);
    };
    let threshold = Float::with_val(prec, diameter * Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2)));
    let tree = d.tree();
    let name = |i: usize| tree.name(VertexId(i));
    Ok(all
        .iter()
        .filter(|m| m.value < threshold)
        .map(|m| match m.third {
            Some(c) => format!(
                "margin {} for ({}, {}) against {}",
                float_str(&m.value),
                name(m.pair.0),
                name(m.pair.1),
                name(c)
            ),
            None => format!("points {} and {} are {} apart", name(m.pair.0), name(m.pair.1), float_str(&m.value)),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImpossibleCoveringWitness {
    /// Consecutive leaves around the centre with the smallest angle.
    pub pair: NamePair,
    pub angle: String,
    pub below_third_turn: bool,
    /// A part containing both edges to `pair`.
    pub part: Option<usize>,
    pub mst_failed: bool,
}

/// For a drawing of the star with six leaves and a covering of it, finds
/// two consecutive edges less than a third of a half-turn apart and the
/// part containing both, which then cannot be drawn as a minimum spanning
/// tree.
pub fn check_impossible_covering(d: &Drawing, covering: &[Part]) -> Result<ImpossibleCoveringWitness, VerifyError> {
    let tree = d.tree();
    let r = tree.max_degree_vertex();
    if tree.vertex_count() != 7 || tree.degree(r) != 6 {
        return Err(VerifyError::WrongShape("the star with six leaves".into()));
    }
    let gp = check_general_position(d);
    if !gp.passed() {
        return Err(VerifyError::Degenerate(format!("{} collinear triples", gp.collinear_count)));
    }
    let prec = d.meta().precision_bits.max(crate::MIN_PRECISION);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let rot = rotation_at(tree, d.positions(), r);
    let c = d.position(r);
    let mut best: Option<(Float, usize)> = None;
    for i in 0..rot.len() {
        let a = d.position(tree.other(rot[i], r));
        let b = d.position(tree.other(rot[(i + 1) % rot.len()], r));
        let mut angle = angle_at(c, a, b).map_err(|e| VerifyError::Degenerate(e.to_string()))?;
        if Lattice::new([c, a, b]).orient(0, 1, 2) == std::cmp::Ordering::Greater {
            angle = Float::with_val(prec, &two_pi - angle);
        }
        if best.as_ref().map_or(true, |(m, _)| angle < *m) {
            best = Some((angle, i));
        }
    }
    let (angle, i) = best.expect("six edges");
    let (e, f) = (rot[i], rot[(i + 1) % rot.len()]);
    let third = Float::with_val(prec, Constant::Pi) / 3u32;
    let part = covering.iter().position(|p| p.contains(e) && p.contains(f));
    let mst_failed = part.map_or(false, |k| !check_mst_drawing(d, &covering[k]).passed);
    Ok(ImpossibleCoveringWitness {
        pair: (tree.name(tree.other(e, r)).to_string(), tree.name(tree.other(f, r)).to_string()),
        below_third_turn: angle < third,
        angle: float_str(&angle),
        part,
        mst_failed,
    })
}

/// Vertex pairs of a part, sorted by their position relative to the root:
/// root with a part edge, root without one, both in one component of the
/// tree minus the root, or in different components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CaseCensus {
    pub root_edge: usize,
    pub root_nonedge: usize,
    pub same_component: usize,
    pub distinct_components: usize,
}

pub fn proof_case_census(tree: &Tree, root: VertexId, part: &Part) -> CaseCensus {
    let mut component = vec![usize::MAX; tree.vertex_count()];
    for (k, u) in tree.neighbors(root).enumerate() {
        let mut stack = vec![u];
        component[u.0] = k;
        while let Some(x) = stack.pop() {
            for y in tree.neighbors(x) {
                if y != root && component[y.0] == usize::MAX {
                    component[y.0] = k;
                    stack.push(y);
                }
            }
        }
    }
    let vertices = part.vertices(tree);
    let mut census = CaseCensus::default();
    for (i, &v) in vertices.iter().enumerate() {
        for &w in &vertices[i + 1..] {
            if v == root || w == root {
                let joined = tree.edge_between(v, w).is_some_and(|e| part.contains(e));
                if joined {
                    census.root_edge += 1;
                } else {
                    census.root_nonedge += 1;
                }
            } else if component[v.0] == component[w.0] {
                census.same_component += 1;
            } else {
                census.distinct_components += 1;
            }
        }
    }
    census
}

/// Whether some drawing can realize a good rotation at `v` with both parts
/// drawn as minimum spanning trees. Each part needs its consecutive edges
/// more than a third of a half-turn apart; with shared edges present the
/// single unconstrained gap forces degree at most 6, without them two
/// gaps are free and degree 7 fits.
pub fn good_embedding_feasible_at(tree: &Tree, t1: &Part, t2: &Part, v: VertexId) -> bool {
    let [a, b, c] = class_counts(tree, t1, t2, v);
    let deg = a + b + c;
    if b == 0 {
        deg <= 7
    } else {
        deg <= 6
    }
}
