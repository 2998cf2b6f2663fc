use rug::Float;

use super::{ConstructError, FrameRecord};
use crate::geometry::{
    arc_points_skewed, circle_points, direction_angle, safe_epsilon, ConstructionFrame, EpsilonBounds, LensPairs, Point,
};
use crate::tree::{RootedTree, VertexId};

/// Fraction of the free end margin by which arc patterns are rotated, so
/// that no child lands on the line through its grandparent and parent.
pub(crate) const SKEW: f64 = 0.381_966_011_250_105;

/// Bits kept below the smallest feature size.
const GUARD_BITS: i64 = 48;

pub(crate) enum Anchor {
    Lune(ConstructionFrame),
    /// A root with the whole circle available; children at `2 pi / 5` steps.
    Free {
        q: Point,
        delta: Float,
        phase: Float,
    },
}

impl Anchor {
    fn q(&self) -> &Point {
        match self {
            Anchor::Lune(f) => f.q(),
            Anchor::Free { q, .. } => q,
        }
    }

    fn delta(&self) -> &Float {
        match self {
            Anchor::Lune(f) => f.delta(),
            Anchor::Free { delta, .. } => delta,
        }
    }

    fn prec(&self) -> u32 {
        match self {
            Anchor::Lune(f) => f.prec(),
            Anchor::Free { q, delta, .. } => q.prec().max(delta.prec()),
        }
    }

    fn scale_exp(&self) -> i64 {
        let mut vals: Vec<&Float> = vec![self.q().x(), self.q().y(), self.delta()];
        if let Anchor::Lune(f) = self {
            vals.extend([f.p().x(), f.p().y()]);
        }
        vals.into_iter().filter_map(|v| v.get_exp()).map(i64::from).max().unwrap_or(0)
    }
}

/// Child `child` goes to sub-position `sub` of arc slot `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Placement {
    pub child: VertexId,
    pub slot: usize,
    pub sub: usize,
}

pub(crate) struct Expansion {
    pub slots: usize,
    pub subslots: usize,
    pub pairs: LensPairs,
    pub placements: Vec<Placement>,
}

pub(crate) trait Planner {
    fn plan(&self, rooted: &RootedTree, v: VertexId) -> Result<Expansion, ConstructError>;
}

/// Draws `rooted` depth-first from `anchor`, returning positions indexed by
/// vertex and one record per expanded vertex.
pub(crate) fn run(
    rooted: &RootedTree,
    planner: &dyn Planner,
    anchor: Anchor,
) -> Result<(Vec<Point>, Vec<FrameRecord>), ConstructError> {
    let prec = anchor.prec();
    let scale_exp = anchor.scale_exp();
    let height = rooted.height();
    let n = rooted.tree().vertex_count();
    let mut positions: Vec<Option<Point>> = vec![None; n];
    let mut trace = Vec::with_capacity(n);
    let mut stack = vec![(rooted.root(), anchor, 0usize)];

    while let Some((v, anchor, depth)) = stack.pop() {
        assert!(depth <= n, "recursion deeper than the tree");
        let q = anchor.q().clone();
        positions[v.0] = Some(q.clone());
        let p = match &anchor {
            Anchor::Lune(f) => Some(f.p().clone()),
            Anchor::Free { .. } => None,
        };
        if rooted.outdegree(v) == 0 {
            trace.push(FrameRecord {
                vertex: v,
                p,
                q,
                delta: anchor.delta().clone(),
                delta_prime: None,
                epsilon: None,
                children: 0,
                depth,
            });
            continue;
        }
        let plan = planner.plan(rooted, v)?;
        let delta_prime = Float::with_val(prec, anchor.delta() / 2u32);
        let (s, eps) = match &anchor {
            Anchor::Lune(frame) => {
                let s = arc_points_skewed(frame, &delta_prime, plan.slots, SKEW)?;
                let eps = safe_epsilon(frame, &delta_prime, &s, &plan.pairs)?;
                (s, eps)
            }
            Anchor::Free { q, delta, phase } => {
                let s = circle_points(q, &delta_prime, plan.slots, phase)?;
                let eps = EpsilonBounds::compute(None, q, delta, &s, &plan.pairs).epsilon()?;
                (s, eps)
            }
        };
        let k = plan.subslots.max(1) as u32;
        let child_delta = Float::with_val(prec, &eps / k);
        check_precision(prec, scale_exp, &child_delta, depth + 1, height)?;

        let step = if k > 1 {
            let ratio = Float::with_val(prec, &eps / Float::with_val(prec, &delta_prime * k));
            Some(Float::with_val(prec, ratio.asin() * 2u32))
        } else {
            None
        };
        for pl in &plan.placements {
            let t = match &step {
                None => s[pl.slot].clone(),
                Some(step) => {
                    let base = direction_angle(&q, &s[pl.slot]);
                    let offset = Float::with_val(prec, step * (2 * pl.sub as i64 - (k as i64 - 1))) / 2u32;
                    q.polar_offset(&delta_prime, &Float::with_val(prec, base + offset))
                }
            };
            let frame = ConstructionFrame::new(q.clone(), t, child_delta.clone())?;
            stack.push((pl.child, Anchor::Lune(frame), depth + 1));
        }
        trace.push(FrameRecord {
            vertex: v,
            p,
            q,
            delta: anchor.delta().clone(),
            delta_prime: Some(delta_prime),
            epsilon: Some(eps),
            children: plan.placements.len(),
            depth,
        });
    }
    let positions = positions
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.unwrap_or_else(|| panic!("vertex {i} was never placed")))
        .collect();
    Ok((positions, trace))
}

/// Fails when `feature` is too small to resolve against coordinates of
/// magnitude `2^scale_exp` at `prec` bits, estimating the bits the whole
/// tree needs from the growth so far (roughly quadratic in depth).
pub(crate) fn check_precision(
    prec: u32,
    scale_exp: i64,
    feature: &Float,
    depth: usize,
    height: usize,
) -> Result<(), ConstructError> {
    let exp = i64::from(feature.get_exp().unwrap_or(i32::MIN / 2));
    let needed = (scale_exp - exp + GUARD_BITS).max(0);
    if needed <= i64::from(prec) {
        return Ok(());
    }
    let depth = depth.max(1) as f64;
    let ratio = (height.max(1) as f64 / depth).max(1.0);
    let estimate = (needed as f64 * ratio * ratio).max(needed as f64 + 64.0);
    Err(ConstructError::PrecisionExhausted {
        available: prec,
        required_bits: estimate.min(f64::from(u32::MAX / 2)).ceil() as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_check_reports_an_estimate_above_current_need() {
        let tiny = Float::with_val(128, Float::i_exp(1, -200));
        let err = check_precision(128, 0, &tiny, 2, 4).unwrap_err();
        let ConstructError::PrecisionExhausted { available, required_bits } = err else { panic!() };
        assert_eq!(available, 128);
        assert!(required_bits >= 4 * 247);
        assert!(check_precision(512, 0, &tiny, 2, 4).is_ok());
    }
}
