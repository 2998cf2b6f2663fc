use super::embedding::EdgeClass;
use super::{EdgeId, Embedding, ModelError, Part, Tree, VertexId};

/// A vertex `v` with neighbours `x` (via a first-only edge) and `y` (via a
/// second-only edge) to be identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldSite {
    pub v: VertexId,
    pub x: VertexId,
    pub y: VertexId,
    pub consecutive: bool,
}

/// How `vx` and `vy` sat in the clockwise rotation at `v` before folding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrder {
    XThenY,
    YThenX,
    /// Not adjacent; `vy` followed this edge (named in the folded tree).
    Apart {
        after: EdgeId,
    },
}

/// Everything needed to undo a fold. Ids marked "folded" refer to the
/// folded tree, the rest to the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldRecord {
    pub v: VertexId,
    pub w: VertexId,
    pub vw: EdgeId,
    pub x_name: String,
    pub y_name: String,
    pub x_index: usize,
    pub y_index: usize,
    pub vx_index: usize,
    pub vy_index: usize,
    /// Folded edges at `w` inherited from `y`.
    pub y_edges: Vec<EdgeId>,
    pub order: PairOrder,
}

impl FoldRecord {
    /// Original vertex to folded vertex; `y` maps to `w`.
    pub fn folded_vertex(&self, u: VertexId) -> VertexId {
        match u.0 {
            i if i == self.y_index => self.w,
            i if i > self.y_index => VertexId(i - 1),
            i => VertexId(i),
        }
    }

    /// Original edge to folded edge; `vy` maps to `vw`.
    pub fn folded_edge(&self, e: EdgeId) -> EdgeId {
        match e.0 {
            i if i == self.vy_index => self.vw,
            i if i > self.vy_index => EdgeId(i - 1),
            i => EdgeId(i),
        }
    }

    /// Folded vertex back to the original; `w` maps to `x`.
    pub fn original_vertex(&self, u: VertexId) -> VertexId {
        if u.0 >= self.y_index {
            VertexId(u.0 + 1)
        } else {
            VertexId(u.0)
        }
    }

    pub fn original_edge(&self, e: EdgeId) -> EdgeId {
        if e.0 >= self.vy_index {
            EdgeId(e.0 + 1)
        } else {
            EdgeId(e.0)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Folded {
    pub tree: Tree,
    pub parts: [Part; 2],
    pub embedding: Embedding,
    pub record: FoldRecord,
}

/// Identifies `x` and `y` into a new vertex `w`.
pub fn fold(tree: &Tree, parts: &[Part; 2], emb: &Embedding, site: FoldSite) -> Result<Folded, ModelError> {
    let FoldSite { v, x, y, .. } = site;
    let bad = |msg: &str| ModelError::FoldPrecondition(msg.to_string());
    if x == y || x == v || y == v {
        return Err(bad("v, x and y must be distinct"));
    }
    let vx = tree.edge_between(v, x).ok_or_else(|| bad("vx is not an edge"))?;
    let vy = tree.edge_between(v, y).ok_or_else(|| bad("vy is not an edge"))?;
    if EdgeClass::of(vx, &parts[0], &parts[1]) != Some(EdgeClass::FirstOnly) {
        return Err(bad("vx must lie only in the first part"));
    }
    if EdgeClass::of(vy, &parts[0], &parts[1]) != Some(EdgeClass::SecondOnly) {
        return Err(bad("vy must lie only in the second part"));
    }

    let base = format!("{}+{}", tree.name(x), tree.name(y));
    let mut w_name = base.clone();
    let mut k = 1;
    while tree.vertex(&w_name).is_some() {
        w_name = format!("{base}#{k}");
        k += 1;
    }

    let mut record = FoldRecord {
        v: VertexId(0),
        w: VertexId(0),
        vw: EdgeId(0),
        x_name: tree.name(x).to_string(),
        y_name: tree.name(y).to_string(),
        x_index: x.0,
        y_index: y.0,
        vx_index: vx.0,
        vy_index: vy.0,
        y_edges: Vec::new(),
        order: PairOrder::XThenY,
    };
    record.v = record.folded_vertex(v);
    record.w = record.folded_vertex(x);
    record.vw = record.folded_edge(vx);

    let mut names: Vec<String> = tree.names().to_vec();
    names[x.0] = w_name;
    names.remove(y.0);
    let edges: Vec<(VertexId, VertexId)> = tree
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != vy.0)
        .map(|(_, &(a, b))| (record.folded_vertex(a), record.folded_vertex(b)))
        .collect();
    let folded = Tree::from_ids(names, edges);

    let fold_part = |p: &Part| Part::new(p.edges().iter().map(|&e| record.folded_edge(e)));
    let mut new_parts = [fold_part(&parts[0]), fold_part(&parts[1])];
    for p in &mut new_parts {
        if !p.contains(record.vw) {
            *p = Part::new(p.edges().iter().copied().chain([record.vw]));
        }
    }

    let rot_v = emb.rotation(v);
    let len = rot_v.len();
    let ix = emb.position(v, vx).ok_or_else(|| bad("embedding lacks vx"))?;
    let iy = emb.position(v, vy).ok_or_else(|| bad("embedding lacks vy"))?;
    record.order = if (ix + 1) % len == iy {
        PairOrder::XThenY
    } else if (iy + 1) % len == ix {
        PairOrder::YThenX
    } else {
        PairOrder::Apart { after: record.folded_edge(rot_v[(iy + len - 1) % len]) }
    };

    let after = |r: &[EdgeId], e: EdgeId| -> Vec<EdgeId> {
        let i = r.iter().position(|&f| f == e).unwrap();
        (1..r.len()).map(|k| r[(i + k) % r.len()]).collect()
    };
    let x_tail: Vec<EdgeId> = after(emb.rotation(x), vx).into_iter().map(|e| record.folded_edge(e)).collect();
    let y_tail: Vec<EdgeId> = after(emb.rotation(y), vy).into_iter().map(|e| record.folded_edge(e)).collect();
    record.y_edges = y_tail.clone();

    let mut rotation = vec![Vec::new(); folded.vertex_count()];
    for u in tree.vertices() {
        if u == y {
            continue;
        }
        let fu = record.folded_vertex(u);
        rotation[fu.0] = if u == x {
            x_tail.iter().copied().chain([record.vw]).chain(y_tail.iter().copied()).collect()
        } else if u == v {
            emb.rotation(v).iter().filter(|&&e| e != vy).map(|&e| record.folded_edge(e)).collect()
        } else {
            emb.rotation(u).iter().map(|&e| record.folded_edge(e)).collect()
        };
    }
    let embedding = Embedding::new(&folded, rotation)?;
    Ok(Folded { tree: folded, parts: new_parts, embedding, record })
}

/// Inverts [`fold`].
pub fn unfold(
    folded: &Tree,
    parts: &[Part; 2],
    emb: &Embedding,
    record: &FoldRecord,
) -> Result<(Tree, [Part; 2], Embedding), ModelError> {
    let mut names: Vec<String> = folded.names().to_vec();
    names[record.w.0] = record.x_name.clone();
    names.insert(record.y_index, record.y_name.clone());
    let x = VertexId(record.x_index);
    let y = VertexId(record.y_index);
    let v = record.original_vertex(record.v);
    let vx = EdgeId(record.vx_index);
    let vy = EdgeId(record.vy_index);

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(folded.edge_count() + 1);
    for (i, &(a, b)) in folded.edges().iter().enumerate() {
        let e = EdgeId(i);
        let lift = |u: VertexId| {
            if u == record.w && record.y_edges.contains(&e) {
                y
            } else {
                record.original_vertex(u)
            }
        };
        edges.push((lift(a), lift(b)));
    }
    edges.insert(vy.0, (v, y));
    let tree = Tree::from_ids(names, edges);

    let lift_edge = |e: EdgeId| record.original_edge(e);
    let p1 = Part::new(parts[0].edges().iter().map(|&e| lift_edge(e)));
    let p2 = Part::new(parts[1].edges().iter().map(|&e| if e == record.vw { vy } else { lift_edge(e) }));

    let mut rotation = vec![Vec::new(); tree.vertex_count()];
    for fu in folded.vertices() {
        let u = record.original_vertex(fu);
        let r: Vec<EdgeId> = emb.rotation(fu).to_vec();
        if fu == record.w {
            let i = r
                .iter()
                .position(|&e| e == record.vw)
                .ok_or_else(|| ModelError::InvalidEmbedding(record.x_name.clone()))?;
            let seq: Vec<EdgeId> = (1..r.len()).map(|k| r[(i + k) % r.len()]).collect();
            rotation[x.0] = std::iter::once(vx)
                .chain(seq.iter().filter(|e| !record.y_edges.contains(e)).map(|&e| lift_edge(e)))
                .collect();
            rotation[y.0] = std::iter::once(vy)
                .chain(seq.iter().filter(|e| record.y_edges.contains(e)).map(|&e| lift_edge(e)))
                .collect();
        } else if fu == record.v {
            let mut out = Vec::with_capacity(r.len() + 1);
            for &e in &r {
                if e == record.vw {
                    match record.order {
                        PairOrder::XThenY => out.extend([vx, vy]),
                        PairOrder::YThenX => out.extend([vy, vx]),
                        PairOrder::Apart { .. } => out.push(vx),
                    }
                } else {
                    out.push(lift_edge(e));
                }
                if let PairOrder::Apart { after } = record.order {
                    if e == after {
                        out.push(vy);
                    }
                }
            }
            rotation[u.0] = out;
        } else {
            rotation[u.0] = r.into_iter().map(lift_edge).collect();
        }
    }
    let embedding = Embedding::new(&tree, rotation)?;
    Ok((tree, [p1, p2], embedding))
}

/// A fold site at a vertex of maximum degree, preferring a consecutive
/// first-only/second-only pair. `None` once the maximum degree is at most 5.
pub fn find_fold_site(tree: &Tree, parts: &[Part; 2], emb: &Embedding) -> Option<FoldSite> {
    find_fold_site_ranked(tree, parts, emb, |_| 0)
}

/// As [`find_fold_site`], but when no adjacent pair exists takes the
/// first-only/second-only pair at the chosen vertex with the lowest `rank`,
/// then nearest in the rotation.
///
/// Only pairs belonging to some set of `deg(v) - 5` disjoint pairs with the
/// smallest possible largest merged degree are considered, since a merged
/// vertex that itself needs several folds cannot be unfolded without
/// interleaving its two sides.
pub fn find_fold_site_ranked(
    tree: &Tree,
    parts: &[Part; 2],
    emb: &Embedding,
    rank: impl Fn(&FoldSite) -> usize,
) -> Option<FoldSite> {
    if tree.max_degree() <= 5 {
        return None;
    }
    let mut candidates: Vec<VertexId> = tree.vertices().filter(|&v| tree.degree(v) >= 6).collect();
    candidates.sort_by_key(|&v| (std::cmp::Reverse(tree.degree(v)), v));
    let class = |e: EdgeId| EdgeClass::of(e, &parts[0], &parts[1]);
    let pools: Vec<Vec<(EdgeId, EdgeId)>> = candidates.iter().map(|&v| balanced_pairs(tree, parts, v)).collect();
    for (&v, pool) in candidates.iter().zip(&pools) {
        let r = emb.rotation(v);
        for i in 0..r.len() {
            let (a, b) = (r[i], r[(i + 1) % r.len()]);
            let pair = match (class(a), class(b)) {
                (Some(EdgeClass::FirstOnly), Some(EdgeClass::SecondOnly)) => (a, b),
                (Some(EdgeClass::SecondOnly), Some(EdgeClass::FirstOnly)) => (b, a),
                _ => continue,
            };
            if pool.contains(&pair) {
                return Some(FoldSite { v, x: tree.other(pair.0, v), y: tree.other(pair.1, v), consecutive: true });
            }
        }
    }
    let v = candidates[0];
    let r = emb.rotation(v);
    let len = r.len();
    let at = |e: EdgeId| r.iter().position(|&f| f == e).expect("incident edge");
    pools[0]
        .iter()
        .map(|&(a, b)| {
            let (i, j) = (at(a), at(b));
            let gap = (j + len - i) % len;
            let site = FoldSite { v, x: tree.other(a, v), y: tree.other(b, v), consecutive: false };
            let merged = tree.degree(site.x) + tree.degree(site.y);
            (rank(&site), merged, gap.min(len - gap), site)
        })
        .min_by_key(|&(rank, merged, gap, site)| (rank, merged, gap, site.x, site.y))
        .map(|(_, _, _, site)| site)
}

/// A merged vertex of this degree needs at most one fold of its own.
const SAFE_MERGED_DEGREE: usize = 6;

/// First-only/second-only edge pairs at `v` that extend to `deg(v) - 5`
/// disjoint pairs whose largest merged degree is as small as possible, or at
/// most [`SAFE_MERGED_DEGREE`].
fn balanced_pairs(tree: &Tree, parts: &[Part; 2], v: VertexId) -> Vec<(EdgeId, EdgeId)> {
    let of = |c: EdgeClass| -> Vec<EdgeId> {
        tree.incident(v).iter().copied().filter(|&e| EdgeClass::of(e, &parts[0], &parts[1]) == Some(c)).collect()
    };
    let (first, second) = (of(EdgeClass::FirstOnly), of(EdgeClass::SecondOnly));
    let merged = |a: EdgeId, b: EdgeId| tree.degree(tree.other(a, v)) + tree.degree(tree.other(b, v)) - 1;
    let need = (tree.degree(v) - 5).min(first.len()).min(second.len());
    let mut all = Vec::new();
    for &a in &first {
        for &b in &second {
            all.push((a, b));
        }
    }
    debug_assert!(!all.is_empty(), "degree >= 6 under a degree-5 covering forces both classes");
    let fits = |limit: usize, skip: Option<(EdgeId, EdgeId)>| {
        let want = if skip.is_some() { need.saturating_sub(1) } else { need };
        let ok = |a: EdgeId, b: EdgeId| merged(a, b) <= limit && skip.map_or(true, |(sa, sb)| a != sa && b != sb);
        max_matching(&first, &second, ok) >= want
    };
    let mut limits: Vec<usize> = all.iter().map(|&(a, b)| merged(a, b)).collect();
    limits.sort_unstable();
    limits.dedup();
    let limit =
        limits.into_iter().find(|&l| fits(l, None)).expect("the full pair set always fits").max(SAFE_MERGED_DEGREE);
    all.into_iter().filter(|&(a, b)| merged(a, b) <= limit && fits(limit, Some((a, b)))).collect()
}

/// Size of a maximum matching between `left` and `right` along `edge`.
fn max_matching(left: &[EdgeId], right: &[EdgeId], edge: impl Fn(EdgeId, EdgeId) -> bool) -> usize {
    fn augment(
        i: usize,
        left: &[EdgeId],
        right: &[EdgeId],
        edge: &dyn Fn(EdgeId, EdgeId) -> bool,
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for j in 0..right.len() {
            if !seen[j] && edge(left[i], right[j]) {
                seen[j] = true;
                if owner[j].map_or(true, |k| augment(k, left, right, edge, owner, seen)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right.len()];
    (0..left.len()).filter(|&i| augment(i, left, right, &edge, &mut owner, &mut vec![false; right.len()])).count()
}
