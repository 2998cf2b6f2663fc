//! Seeded random instances whose decompositions always satisfy the
//! construction preconditions.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::Point;
use crate::tree::{BoundMode, Decomposition, DecompositionKind, DegreeBound, EdgeId, Instance, Part, Tree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub kind: DecompositionKind,
    pub mode: BoundMode,
    pub bound: usize,
    /// Number of parts.
    pub k: usize,
    /// Cap on the degree (or outdegree) of the whole tree.
    pub max_degree: Option<usize>,
}

impl GenParams {
    pub fn partition(n: usize, mode: BoundMode, bound: usize, k: usize) -> Self {
        GenParams { n, kind: DecompositionKind::Partition, mode, bound, k, max_degree: None }
    }

    pub fn covering(n: usize) -> Self {
        GenParams { n, kind: DecompositionKind::Covering, mode: BoundMode::Degree, bound: 5, k: 2, max_degree: Some(9) }
    }

    pub fn with_max_degree(mut self, cap: usize) -> Self {
        self.max_degree = Some(cap);
        self
    }
}

fn vertex_name(i: usize) -> String {
    format!("v{i}")
}

struct Growth {
    parent: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Vec<Vec<usize>>,
    degree: Vec<usize>,
    children: Vec<usize>,
    /// Per part: edges at each vertex counted by the bound.
    load: Vec<Vec<usize>>,
    member: Vec<Vec<bool>>,
}

impl Growth {
    fn new(n: usize, k: usize) -> Self {
        let mut g = Growth {
            parent: vec![None],
            edges: Vec::with_capacity(n.saturating_sub(1)),
            labels: Vec::new(),
            degree: vec![0],
            children: vec![0],
            load: vec![vec![0]; k],
            member: vec![vec![false]; k],
        };
        g.parent.reserve(n);
        g
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn whole_degree(&self, u: usize, mode: BoundMode) -> usize {
        match mode {
            BoundMode::Degree => self.degree[u],
            BoundMode::Outdegree => self.children[u],
        }
    }

    fn attach(&mut self, u: usize, parts: &[usize], mode: BoundMode) {
        let v = self.len();
        self.parent.push(Some(u));
        self.degree.push(1);
        self.children.push(0);
        self.degree[u] += 1;
        self.children[u] += 1;
        for (i, (load, member)) in self.load.iter_mut().zip(&mut self.member).enumerate() {
            let inside = parts.contains(&i);
            load.push(usize::from(inside && mode == BoundMode::Degree));
            member.push(inside);
            if inside {
                load[u] += 1;
                member[u] = true;
            }
        }
        self.edges.push((u, v));
        self.labels.push(parts.to_vec());
    }

    fn into_instance(self, kind: DecompositionKind, bound: DegreeBound) -> Instance {
        let names: Vec<String> = (0..self.len()).map(vertex_name).collect();
        let k = self.load.len();
        let mut parts = vec![Vec::new(); k];
        for (e, labels) in self.labels.iter().enumerate() {
            for &i in labels {
                parts[i].push(EdgeId(e));
            }
        }
        let tree = Tree::from_ids(names, self.edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))).collect());
        let parts = parts.into_iter().map(Part::new).collect();
        let decomposition = match kind {
            DecompositionKind::Partition => Decomposition::partition(parts),
            DecompositionKind::Covering => Decomposition::covering(parts),
        };
        Instance {
            tree,
            root: (bound.mode == BoundMode::Outdegree).then_some(VertexId(0)),
            decomposition: Some(decomposition),
            bound: Some(bound),
        }
    }
}

/// Picks a vertex with probability growing with its degree among those
/// accepted by `ok`.
fn pick(rng: &mut ChaCha8Rng, g: &Growth, ok: impl Fn(usize) -> bool) -> Option<usize> {
    let candidates: Vec<usize> = (0..g.len()).filter(|&u| ok(u)).collect();
    if candidates.is_empty() {
        return None;
    }
    let weights = candidates.iter().map(|&u| 1 + 2 * g.degree[u]);
    let dist = WeightedIndex::new(weights).ok()?;
    Some(candidates[dist.sample(rng)])
}

/// A random tree on `n` vertices named `v0, v1, ...` with a decomposition
/// into `k` subtrees obeying the bound. Deterministic per seed.
pub fn gen_instance(seed: u64, params: &GenParams) -> Result<Instance, GenError> {
    let GenParams { n, kind, mode, bound, k, max_degree } = params.clone();
    if n == 0 || bound == 0 || k == 0 {
        return Err(GenError::Infeasible("n, bound and k must be positive".into()));
    }
    if kind == DecompositionKind::Partition && n - 1 < k {
        return Err(GenError::Infeasible(format!("{k} nonempty parts need at least {} vertices", k + 1)));
    }
    if kind == DecompositionKind::Covering && (k != 2 || mode != BoundMode::Degree) {
        return Err(GenError::Infeasible("coverings are generated with two degree-bounded parts".into()));
    }
    let cap = max_degree.unwrap_or(usize::MAX);
    if cap == 0 && n > 1 {
        return Err(GenError::Infeasible("a degree cap of 0 admits a single vertex only".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Growth::new(n, k);
    let dbound = DegreeBound { bound, mode };

    let room = |g: &Growth, u: usize, i: usize| g.load[i][u] < bound;
    let whole_room = |g: &Growth, u: usize| g.whole_degree(u, mode) < cap;
    let mut stalls = 0;
    while g.len() < n {
        let step = g.edges.len();
        let attached = match kind {
            DecompositionKind::Partition => {
                let i = if step < k { step } else { rng.gen_range(0..k) };
                let fresh = !g.member[i].iter().any(|&m| m);
                let u = pick(&mut rng, &g, |u| whole_room(&g, u) && room(&g, u, i) && (fresh || g.member[i][u]));
                u.map(|u| g.attach(u, &[i], mode))
            }
            DecompositionKind::Covering => {
                // The first edge is shared so that both parts overlap.
                let roll = if step == 0 { 1 } else { rng.gen_range(0..3) };
                let parts: &[usize] = match roll {
                    0 => &[0],
                    1 => &[0, 1],
                    _ => &[1],
                };
                let u = pick(&mut rng, &g, |u| {
                    whole_room(&g, u) && parts.iter().all(|&i| room(&g, u, i) && (step == 0 || g.member[i][u]))
                });
                u.map(|u| g.attach(u, parts, mode))
            }
        };
        stalls += usize::from(attached.is_none());
        if stalls > 64 * n {
            return Err(GenError::Infeasible(format!("no room to grow past {} vertices", g.len())));
        }
    }
    Ok(g.into_instance(kind, dbound))
}

/// The star with six leaves and its covering by three stars with four
/// leaves each, every pair of edges sharing a part.
pub fn six_star_instance() -> Instance {
    let tree = Tree::star(6);
    let parts = [[0, 1, 2, 3], [2, 3, 4, 5], [4, 5, 0, 1]].map(|p| Part::new(p.map(EdgeId)));
    Instance {
        tree,
        root: None,
        decomposition: Some(Decomposition::covering(parts.to_vec())),
        bound: Some(DegreeBound::degree(4)),
    }
}

/// `n` points with coordinates uniform in the unit square, at the given
/// precision.
pub fn random_points(seed: u64, n: usize, prec: u32) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Point::from_f64(rng.gen::<f64>(), rng.gen::<f64>(), prec)).collect()
}
