//! Exact Euclidean minimum spanning trees and relative neighbourhood graphs.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use rug::{Float, Integer};
use thiserror::Error;

use crate::geometry::{dist, Lattice, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProximityError {
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("`{0}` and `{1}` occupy the same point")]
    Coincident(String, String),
    #[error("edge ({0}, {1}) is out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("graphs are over different point sets")]
    MismatchedPointSets,
}

/// Labelled points with pairwise distinct positions.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    ids: Vec<String>,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(entries: impl IntoIterator<Item = (String, Point)>) -> Result<Self, ProximityError> {
        let (ids, points): (Vec<String>, Vec<Point>) = entries.into_iter().unzip();
        let mut seen = HashSet::new();
        for id in &ids {
            if !seen.insert(id) {
                return Err(ProximityError::DuplicateId(id.clone()));
            }
        }
        let set = PointSet { ids, points };
        if let Some((i, j)) = set.coincident_pair() {
            return Err(ProximityError::Coincident(set.ids[i].clone(), set.ids[j].clone()));
        }
        Ok(set)
    }

    /// Points named by their position in the slice.
    pub fn from_points(points: Vec<Point>) -> Result<Self, ProximityError> {
        Self::new(points.into_iter().enumerate().map(|(i, p)| (i.to_string(), p)))
    }

    fn coincident_pair(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (&self.points[a], &self.points[b]);
            pa.x().partial_cmp(pb.x()).unwrap().then(pa.y().partial_cmp(pb.y()).unwrap())
        });
        order.windows(2).find(|w| self.points[w[0]] == self.points[w[1]]).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(&self.points)
    }

    /// Restriction to the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }
}

/// A point set with a set of straight-line edges, stored as sorted index
/// pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricGraph {
    points: PointSet,
    edges: BTreeSet<(usize, usize)>,
}

impl GeometricGraph {
    pub fn new(points: PointSet, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ProximityError> {
        let n = points.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(ProximityError::EdgeOutOfRange(a, b));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(GeometricGraph { points, edges: set })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Edges as identifier pairs, each pair sorted.
    pub fn id_edges(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.points.id(a).to_string(), self.points.id(b).to_string());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn total_length(&self, prec: u32) -> Float {
        let mut sum = Float::new(prec);
        for &(a, b) in &self.edges {
            sum += dist(self.points.point(a), self.points.point(b));
        }
        sum
    }

    pub fn is_spanning_tree(&self) -> bool {
        let n = self.points.len();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut uf = UnionFind::<usize>::new(n);
        self.edges.iter().all(|&(a, b)| uf.union(a, b))
    }
}

fn distance_matrix(lattice: &Lattice) -> Vec<Vec<Integer>> {
    let n = lattice.len();
    (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| if i == j { Integer::new() } else { lattice.dist2(i, j) }).collect())
        .collect()
}

/// Euclidean minimum spanning tree by Kruskal's algorithm on exact squared
/// distances; equal lengths are resolved by index pair.
pub fn emst(ps: &PointSet) -> GeometricGraph {
    let n = ps.len();
    let lattice = ps.lattice();
    let mut pairs: Vec<(Integer, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let lattice = &lattice;
            (i + 1..n).map(move |j| (lattice.dist2(i, j), i, j))
        })
        .collect();
    pairs.par_sort_unstable_by(|a, b| a.0.cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut uf = UnionFind::<usize>::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (_, i, j) in pairs {
        if uf.union(i, j) {
            edges.push((i, j));
            if edges.len() + 1 == n {
                break;
            }
        }
    }
    GeometricGraph { points: ps.clone(), edges: edges.into_iter().collect() }
}

/// Relative neighbourhood graph: `ij` is an edge iff no third point lies
/// strictly inside their lens.
pub fn rng(ps: &PointSet) -> GeometricGraph {
    let n = ps.len();
    let d = distance_matrix(&ps.lattice());
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let d = &d;
            (i + 1..n).filter_map(move |j| {
                let dij = &d[i][j];
                let blocked = (0..n).any(|k| k != i && k != j && d[i][k] < *dij && d[j][k] < *dij);
                (!blocked).then_some((i, j))
            })
        })
        .collect();
    GeometricGraph { points: ps.clone(), edges: edges.into_iter().collect() }
}

/// Whether every edge of `g1` is an edge of `g2`.
pub fn is_subgraph(g1: &GeometricGraph, g2: &GeometricGraph) -> Result<bool, ProximityError> {
    if g1.points != g2.points {
        return Err(ProximityError::MismatchedPointSets);
    }
    Ok(g1.edges.is_subset(&g2.edges))
}

/// Pairs of point pairs at exactly equal distance among the given pairs.
pub fn equal_length_pairs(ps: &PointSet, pairs: &[(usize, usize)]) -> Vec<((usize, usize), (usize, usize))> {
    let lattice = ps.lattice();
    let mut keyed: Vec<(Integer, (usize, usize))> = pairs.iter().map(|&(a, b)| (lattice.dist2(a, b), (a, b))).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.windows(2).filter(|w| w[0].0.cmp(&w[1].0) == Ordering::Equal).map(|w| (w[0].1, w[1].1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(coords: &[(f64, f64)]) -> PointSet {
        PointSet::from_points(coords.iter().map(|&(x, y)| Point::from_f64(x, y, 128)).collect()).unwrap()
    }

    /// Minimum total length over all labelled trees, via Prufer sequences.
    fn brute_force_mst_length(ps: &PointSet) -> f64 {
        let n = ps.len();
        if n < 2 {
            return 0.0;
        }
        let len = |a: usize, b: usize| dist(ps.point(a), ps.point(b)).to_f64();
        if n == 2 {
            return len(0, 1);
        }
        let total = n.pow((n - 2) as u32);
        let mut best = f64::INFINITY;
        for code in 0..total {
            let mut seq = Vec::with_capacity(n - 2);
            let mut c = code;
            for _ in 0..n - 2 {
                seq.push(c % n);
                c /= n;
            }
            let mut degree = vec![1; n];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut sum = 0.0;
            for &s in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                sum += len(leaf, s);
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            sum += len(rest[0], rest[1]);
            best = best.min(sum);
        }
        best
    }

    #[test]
    fn right_angle_triple() {
        let ps = pts(&[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)]);
        let t = emst(&ps);
        assert_eq!(t.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(t.total_length(128), 4);
    }

    #[test]
    fn two_points() {
        let ps = pts(&[(0.0, 0.0), (1.0, 5.0)]);
        assert_eq!(emst(&ps).edge_count(), 1);
        assert_eq!(rng(&ps).edge_count(), 1);
    }

    #[test]
    fn near_equilateral_triangle_depends_on_apex_height() {
        let h = Float::with_val(256, 3).sqrt() / 2;
        let nudge = Float::with_val(256, Float::i_exp(1, -250));
        let triangle = |apex: Float| {
            PointSet::from_points(vec![
                Point::from_f64(0.0, 0.0, 256),
                Point::from_f64(1.0, 0.0, 256),
                Point::new(Float::with_val(256, 0.5), apex).unwrap(),
            ])
            .unwrap()
        };
        assert_eq!(rng(&triangle(Float::with_val(256, &h - &nudge))).edge_count(), 2);
        assert_eq!(rng(&triangle(Float::with_val(256, &h + &nudge))).edge_count(), 3);
    }

    #[test]
    fn middle_point_blocks_long_pair() {
        let ps = pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0001)]);
        let g = rng(&ps);
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn coincident_points_rejected() {
        let e = PointSet::from_points(vec![Point::from_f64(1.0, 1.0, 64), Point::from_f64(1.0, 1.0, 64)]);
        assert!(matches!(e, Err(ProximityError::Coincident(_, _))));
    }

    #[test]
    fn subgraph_directions() {
        let ps = pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.9)]);
        let full = GeometricGraph::new(ps.clone(), [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = emst(&ps);
        assert!(is_subgraph(&t, &full).unwrap());
        assert!(!is_subgraph(&full, &t).unwrap());
        assert!(is_subgraph(&full, &full).unwrap());
    }

    #[test]
    fn ties_are_reported() {
        let ps = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(equal_length_pairs(&ps, &[(0, 1), (0, 2), (1, 2)]), vec![((0, 1), (0, 2))]);
    }

    fn arb_points(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-1000i32..1000, -1000i32..1000), 2..=max).prop_map(|v| {
            let mut seen = HashSet::new();
            v.into_iter().filter(|p| seen.insert(*p)).map(|(x, y)| (f64::from(x) / 7.0, f64::from(y) / 11.0)).collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mst_matches_cayley_enumeration(coords in arb_points(7)) {
            prop_assume!(coords.len() >= 2);
            let ps = pts(&coords);
            let t = emst(&ps);
            prop_assert!(t.is_spanning_tree());
            let got = t.total_length(128).to_f64();
            let want = brute_force_mst_length(&ps);
            prop_assert!((got - want).abs() <= 1e-9 * want.max(1.0));
        }

        #[test]
        fn mst_inside_rng(coords in arb_points(40)) {
            prop_assume!(coords.len() >= 2);
            let ps = pts(&coords);
            prop_assert!(is_subgraph(&emst(&ps), &rng(&ps)).unwrap());
        }

        #[test]
        fn rng_ignores_input_order(coords in arb_points(25), seed in any::<u64>()) {
            prop_assume!(coords.len() >= 2);
            let n = coords.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let a = rng(&pts(&coords));
            let shuffled: Vec<(f64, f64)> = perm.iter().map(|&i| coords[i]).collect();
            let b = rng(&pts(&shuffled));
            let mapped: BTreeSet<(usize, usize)> = b
                .edges()
                .iter()
                .map(|&(x, y)| (perm[x].min(perm[y]), perm[x].max(perm[y])))
                .collect();
            prop_assert_eq!(a.edges(), &mapped);
        }

        #[test]
        fn rng_tree_equals_mst(coords in arb_points(30)) {
            prop_assume!(coords.len() >= 2);
            let ps = pts(&coords);
            let r = rng(&ps);
            if r.is_spanning_tree() {
                let t = emst(&ps);
                let pairs: Vec<(usize, usize)> = (0..ps.len()).flat_map(|i| (i + 1..ps.len()).map(move |j| (i, j))).collect();
                if equal_length_pairs(&ps, &pairs).is_empty() {
                    prop_assert_eq!(r.edges(), t.edges());
                } else {
                    prop_assert!((r.total_length(128) - t.total_length(128)).abs() < 1e-20);
                }
            }
        }
    }
}
