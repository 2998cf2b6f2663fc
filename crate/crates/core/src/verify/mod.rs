//! Conformance checks that look only at coordinates and the instance:
//! proximity equalities per part, crossings, collinearity, angular
//! resolution and rotation systems.

mod report;
mod stability;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::construct::Drawing;
use crate::geometry::{angle_at, crosses_in, dist, Lattice, Point};
use crate::proximity::{emst, rng, PointSet, ProximityError};
use crate::tree::{EdgeClass, Embedding, Part, Tree, VertexId};

pub use report::{verify_drawing, EmbeddingReport, PartReport, Report};
pub use stability::{
    check_impossible_covering, fragile_margins, good_embedding_feasible_at, proof_case_census, rng_stability_radius,
    CaseCensus, ImpossibleCoveringWitness,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("part {part} is not drawn as the relative neighbourhood graph of its points")]
    NotRng { part: usize },
    #[error("degenerate drawing: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Proximity(#[from] ProximityError),
    #[error("expected {0}")]
    WrongShape(String),
}

pub(crate) fn float_str(f: &Float) -> String {
    f.to_string_radix(10, Some(24))
}

type NamePair = (String, String);

fn name_pair(tree: &Tree, a: VertexId, b: VertexId) -> NamePair {
    (tree.name(a).to_string(), tree.name(b).to_string())
}

/// A third point strictly inside the lens of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: String,
    pub v: String,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RngReport {
    pub passed: bool,
    /// Part edges that are not proximity edges, with a blocking point.
    pub missing: Vec<Witness>,
    /// Proximity edges between part vertices that the part does not have.
    pub extra: Vec<NamePair>,
    pub degenerate: Option<String>,
}

fn part_points(d: &Drawing, vertices: &[VertexId]) -> Result<PointSet, ProximityError> {
    let tree = d.tree();
    PointSet::new(vertices.iter().map(|&v| (tree.name(v).to_string(), d.position(v).clone())))
}

fn local_edges(tree: &Tree, part: &Part, vertices: &[VertexId]) -> BTreeSet<(usize, usize)> {
    part.edges()
        .iter()
        .map(|&e| {
            let (a, b) = tree.endpoints(e);
            let i = vertices.binary_search(&a).unwrap();
            let j = vertices.binary_search(&b).unwrap();
            (i.min(j), i.max(j))
        })
        .collect()
}

pub fn check_rng_drawing(d: &Drawing, part: &Part) -> RngReport {
    let tree = d.tree();
    let vertices = part.vertices(tree);
    let ps = match part_points(d, &vertices) {
        Ok(ps) => ps,
        Err(e) => {
            return RngReport { passed: false, missing: vec![], extra: vec![], degenerate: Some(e.to_string()) };
        }
    };
    let drawn = local_edges(tree, part, &vertices);
    let g = rng(&ps);
    let lattice = ps.lattice();
    let missing: Vec<Witness> = drawn
        .difference(g.edges())
        .map(|&(i, j)| {
            let dij = lattice.dist2(i, j);
            let c = (0..ps.len())
                .find(|&c| c != i && c != j && lattice.dist2(c, i) < dij && lattice.dist2(c, j) < dij)
                .expect("a non-edge has a lens witness");
            Witness { u: ps.id(i).into(), v: ps.id(j).into(), c: ps.id(c).into() }
        })
        .collect();
    let extra: Vec<NamePair> =
        g.edges().difference(&drawn).map(|&(i, j)| (ps.id(i).to_string(), ps.id(j).to_string())).collect();
    RngReport { passed: missing.is_empty() && extra.is_empty(), missing, extra, degenerate: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MstReport {
    pub passed: bool,
    pub drawn_length: String,
    pub mst_length: String,
    /// Drawn length minus minimum length.
    pub excess: String,
    /// Pairs of candidate edges of exactly equal length.
    pub ties: usize,
    pub same_edges: bool,
    pub degenerate: Option<String>,
}

pub fn check_mst_drawing(d: &Drawing, part: &Part) -> MstReport {
    let tree = d.tree();
    let prec = d.meta().precision_bits.max(crate::MIN_PRECISION) + 32;
    let vertices = part.vertices(tree);
    let ps = match part_points(d, &vertices) {
        Ok(ps) => ps,
        Err(e) => {
            return MstReport {
                passed: false,
                drawn_length: String::new(),
                mst_length: String::new(),
                excess: String::new(),
                ties: 0,
                same_edges: false,
                degenerate: Some(e.to_string()),
            };
        }
    };
    let drawn = local_edges(tree, part, &vertices);
    let mst = emst(&ps);
    let length = |edges: &BTreeSet<(usize, usize)>| {
        edges.iter().fold(Float::with_val(prec, 0), |acc, &(i, j)| acc + dist(ps.point(i), ps.point(j)))
    };
    let drawn_length = length(&drawn);
    let mst_length = length(mst.edges());
    let excess = Float::with_val(prec, &drawn_length - &mst_length);
    let same_edges = drawn == *mst.edges();
    let all_pairs: Vec<(usize, usize)> = (0..ps.len()).flat_map(|i| (i + 1..ps.len()).map(move |j| (i, j))).collect();
    let ties = if same_edges { 0 } else { crate::proximity::equal_length_pairs(&ps, &all_pairs).len() };
    // Different edge sets can only both be minimal through equal lengths.
    let slack = Float::with_val(prec, &mst_length * Float::with_val(prec, Float::i_exp(1, 16 - prec as i32)));
    let passed = same_edges || (ties > 0 && excess <= slack);
    MstReport {
        passed,
        drawn_length: float_str(&drawn_length),
        mst_length: float_str(&mst_length),
        excess: float_str(&excess),
        ties,
        same_edges,
        degenerate: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncrossingReport {
    pub crossings: Vec<(NamePair, NamePair)>,
}

impl NoncrossingReport {
    pub fn passed(&self) -> bool {
        self.crossings.is_empty()
    }
}

/// Every pair of edges that meet anywhere other than a shared endpoint.
pub fn check_noncrossing(d: &Drawing) -> NoncrossingReport {
    let tree = d.tree();
    let l = d.lattice();
    let edges = tree.edges();
    let crossings = (0..edges.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let l = &l;
            (i + 1..edges.len()).filter_map(move |j| {
                let (a, b) = edges[i];
                let (c, e) = edges[j];
                crosses_in(l, [a.0, b.0], [c.0, e.0]).then(|| (name_pair(tree, a, b), name_pair(tree, c, e)))
            })
        })
        .collect();
    NoncrossingReport { crossings }
}

/// Incident edges of `v` in clockwise order, i.e. by decreasing direction
/// angle.
pub fn rotation_at(tree: &Tree, positions: &[Point], v: VertexId) -> Vec<crate::tree::EdgeId> {
    let incident = tree.incident(v);
    let l =
        Lattice::new(std::iter::once(&positions[v.0]).chain(incident.iter().map(|&e| &positions[tree.other(e, v).0])));
    let mut order: Vec<usize> = (1..=incident.len()).collect();
    order.sort_by(|&a, &b| l.cmp_direction(0, b, a).then(b.cmp(&a)));
    order.into_iter().map(|i| incident[i - 1]).collect()
}

pub fn realized_embedding(d: &Drawing) -> Embedding {
    let tree = d.tree();
    Embedding::from_raw(tree.vertices().map(|v| rotation_at(tree, d.positions(), v)).collect())
}

/// Smallest angle between edges consecutive around a vertex, and a vertex
/// where it occurs. `None` when no vertex has two edges.
pub fn angular_resolution(d: &Drawing) -> Option<(Float, VertexId)> {
    let tree = d.tree();
    let prec = d.meta().precision_bits.max(crate::MIN_PRECISION);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut best: Option<(Float, VertexId)> = None;
    for v in tree.vertices().filter(|&v| tree.degree(v) >= 2) {
        let rot = rotation_at(tree, d.positions(), v);
        let c = d.position(v);
        for (i, &e) in rot.iter().enumerate() {
            let f = rot[(i + 1) % rot.len()];
            let a = d.position(tree.other(e, v));
            let b = d.position(tree.other(f, v));
            let Ok(mut angle) = angle_at(c, a, b) else {
                return Some((Float::with_val(prec, 0), v));
            };
            // clockwise from a to b
            if Lattice::new([c, a, b]).orient(0, 1, 2) == Ordering::Greater {
                angle = Float::with_val(prec, &two_pi - angle);
            }
            if best.as_ref().map_or(true, |(m, _)| angle < *m) {
                best = Some((angle, v));
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPositionReport {
    pub coincident: Vec<NamePair>,
    pub collinear_count: usize,
    /// The first few collinear triples.
    pub collinear: Vec<(String, String, String)>,
}

impl GeneralPositionReport {
    pub fn passed(&self) -> bool {
        self.coincident.is_empty() && self.collinear_count == 0
    }
}

const LISTED: usize = 32;

/// Exhaustive test for coincident points and collinear triples.
pub fn check_general_position(d: &Drawing) -> GeneralPositionReport {
    let tree = d.tree();
    let l = d.lattice();
    let n = l.len();
    let coincident: Vec<NamePair> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| l.same_point(i, j))
        .map(|(i, j)| name_pair(tree, VertexId(i), VertexId(j)))
        .collect();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let l = &l;
            (i + 1..n).flat_map(move |j| {
                (j + 1..n)
                    .filter(move |&k| !l.same_point(i, j) && l.orient(i, j, k) == Ordering::Equal)
                    .map(move |k| (i, j, k))
            })
        })
        .collect();
    let name = |i: usize| tree.name(VertexId(i)).to_string();
    GeneralPositionReport {
        coincident,
        collinear_count: triples.len(),
        collinear: triples.iter().take(LISTED).map(|&(i, j, k)| (name(i), name(j), name(k))).collect(),
    }
}

/// Rotations at vertices that differ from `declared`.
pub fn embedding_mismatches(d: &Drawing, declared: &Embedding) -> Vec<VertexId> {
    realized_embedding(d).mismatches(declared)
}

pub(crate) fn class_counts(tree: &Tree, t1: &Part, t2: &Part, v: VertexId) -> [usize; 3] {
    let mut counts = [0; 3];
    for &e in tree.incident(v) {
        match EdgeClass::of(e, t1, t2) {
            Some(EdgeClass::FirstOnly) => counts[0] += 1,
            Some(EdgeClass::Shared) => counts[1] += 1,
            Some(EdgeClass::SecondOnly) => counts[2] += 1,
            None => {}
        }
    }
    counts
}

#[cfg(test)]
mod tests;
