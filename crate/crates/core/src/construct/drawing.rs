use rug::Float;

use super::ConstructError;
use crate::geometry::{Lattice, LuneRegion, Point};
use crate::proximity::{PointSet, ProximityError};
use crate::tree::{Instance, Part, RootedTree, Tree, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingMeta {
    pub precision_bits: u32,
    pub construction: String,
    pub seed: Option<u64>,
}

/// A straight-line drawing: one point per vertex of the instance's tree.
#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    instance: Instance,
    positions: Vec<Point>,
    meta: DrawingMeta,
}

impl Drawing {
    pub fn new(instance: Instance, positions: Vec<Point>, meta: DrawingMeta) -> Result<Self, ConstructError> {
        if positions.len() != instance.tree.vertex_count() {
            return Err(ConstructError::WrongInput(format!(
                "{} positions for {} vertices",
                positions.len(),
                instance.tree.vertex_count()
            )));
        }
        Ok(Drawing { instance, positions, meta })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn tree(&self) -> &Tree {
        &self.instance.tree
    }

    pub fn parts(&self) -> Vec<Part> {
        self.instance.parts()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn position(&self, v: VertexId) -> &Point {
        &self.positions[v.0]
    }

    pub fn meta(&self) -> &DrawingMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut DrawingMeta {
        &mut self.meta
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(&self.positions)
    }

    /// The drawing with `v` moved to `to`.
    pub fn moved(&self, v: VertexId, to: Point) -> Self {
        let mut d = self.clone();
        d.positions[v.0] = to;
        d
    }

    pub fn with_instance(mut self, instance: Instance) -> Result<Self, ConstructError> {
        if instance.tree.vertex_count() != self.positions.len() {
            return Err(ConstructError::WrongInput("instance size differs from drawing".into()));
        }
        self.instance = instance;
        Ok(self)
    }

    pub fn point_set(&self) -> Result<PointSet, ProximityError> {
        let tree = self.tree();
        PointSet::new(tree.vertices().map(|v| (tree.name(v).to_string(), self.positions[v.0].clone())))
    }
}

/// One expansion step of a lune construction.
#[derive(Clone, Debug)]
pub struct FrameRecord {
    pub vertex: VertexId,
    /// `None` for a root drawn with the full circle available.
    pub p: Option<Point>,
    pub q: Point,
    pub delta: Float,
    pub delta_prime: Option<Float>,
    pub epsilon: Option<Float>,
    pub children: usize,
    pub depth: usize,
}

/// A drawing together with the frames that produced it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub drawing: Drawing,
    pub trace: Vec<FrameRecord>,
}

impl Construction {
    /// Vertices found outside the lune of a frame whose subtree contains
    /// them, as `(frame vertex, offending vertex)` pairs.
    pub fn frame_violations(&self, root: VertexId) -> Vec<(VertexId, VertexId)> {
        let rooted = RootedTree::new(self.drawing.tree().clone(), root).expect("root is a vertex");
        let mut bad = Vec::new();
        for rec in &self.trace {
            let Some(p) = &rec.p else { continue };
            let lune = match LuneRegion::new(p.clone(), rec.q.clone(), rec.delta.clone()) {
                Ok(l) => l,
                Err(_) => {
                    bad.push((rec.vertex, rec.vertex));
                    continue;
                }
            };
            let mut stack = vec![rec.vertex];
            while let Some(u) = stack.pop() {
                if !lune.contains(self.drawing.position(u)) {
                    bad.push((rec.vertex, u));
                }
                stack.extend(rooted.children(u).iter().map(|&(c, _)| c));
            }
        }
        bad
    }

    /// Deepest frame depth reached.
    pub fn depth(&self) -> usize {
        self.trace.iter().map(|r| r.depth).max().unwrap_or(0)
    }
}
