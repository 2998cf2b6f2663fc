use std::cmp::Ordering;

use rug::float::Constant;
use rug::Float;

use super::predicates::direction_angle;
use super::{dist, GeometryError, LuneRegion, Point};

/// Recursion state of the lune constructions: the subtree being drawn is
/// confined to `LUNE(p, q, delta)` with its root at `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionFrame {
    p: Point,
    q: Point,
    delta: Float,
}

impl ConstructionFrame {
    pub fn new(p: Point, q: Point, delta: Float) -> Result<Self, GeometryError> {
        // LuneRegion performs the 0 < delta < |pq| check.
        LuneRegion::new(p.clone(), q.clone(), delta.clone())?;
        Ok(ConstructionFrame { p, q, delta })
    }

    /// The default whole-tree frame `p = (-1, 0)`, `q = (0, 0)`, `delta = 1/2`.
    pub fn standard(prec: u32) -> Self {
        ConstructionFrame {
            p: Point::from_f64(-1.0, 0.0, prec),
            q: Point::origin(prec),
            delta: Float::with_val(prec, 0.5),
        }
    }

    pub fn p(&self) -> &Point {
        &self.p
    }

    pub fn q(&self) -> &Point {
        &self.q
    }

    pub fn delta(&self) -> &Float {
        &self.delta
    }

    pub fn prec(&self) -> u32 {
        self.p.prec().max(self.q.prec()).max(self.delta.prec())
    }

    pub fn lune(&self) -> LuneRegion {
        LuneRegion::new(self.p.clone(), self.q.clone(), self.delta.clone())
            .expect("frame invariant guarantees a valid lune")
    }

    /// Applies `z -> scale * R(angle) z + (tx, ty)` to the frame.
    pub fn transformed(&self, scale: &Float, angle: &Float, tx: &Float, ty: &Float) -> Self {
        let map = |pt: &Point| {
            let prec = pt.prec();
            let (s, c) = Float::with_val(prec, angle).sin_cos(Float::new(prec));
            let x = Float::with_val(prec, pt.x() * &c) - Float::with_val(prec, pt.y() * &s);
            let y = Float::with_val(prec, pt.x() * &s) + Float::with_val(prec, pt.y() * &c);
            let x = Float::with_val(prec, Float::with_val(prec, x * scale) + tx);
            let y = Float::with_val(prec, Float::with_val(prec, y * scale) + ty);
            Point::from_floats(x, y)
        };
        ConstructionFrame {
            p: map(&self.p),
            q: map(&self.q),
            delta: Float::with_val(self.delta.prec(), &self.delta * scale),
        }
    }
}

/// Angular extent available for children around `q`.
#[derive(Clone, Debug)]
pub enum ArcSpan {
    /// `circle(q, delta') - disc(p, |pq|)`: centred on the direction `axis`
    /// (from `p` towards `q`) with half-width `half_angle > pi/2`.
    Lune { axis: Float, half_angle: Float, slack: Float },
    /// The whole circle; used for a root that has no anchor point.
    Full,
}

impl ArcSpan {
    pub fn of_frame(frame: &ConstructionFrame, delta_prime: &Float) -> Self {
        let prec = frame.prec();
        let pq = dist(frame.p(), frame.q());
        let ratio = Float::with_val(prec, delta_prime / Float::with_val(prec, &pq * 2u32));
        let slack = ratio.asin();
        let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
        ArcSpan::Lune {
            axis: direction_angle(frame.p(), frame.q()),
            half_angle: Float::with_val(prec, &half_pi + &slack),
            slack,
        }
    }
}

/// Which pairs of arc points must see `q` inside every lens spanned by
/// points of their discs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LensPairs {
    All,
    Only(Vec<(usize, usize)>),
}

fn check_radius(frame: &ConstructionFrame, delta_prime: &Float) -> Result<(), GeometryError> {
    if delta_prime.cmp0() != Some(Ordering::Greater) || delta_prime >= frame.delta() {
        return Err(GeometryError::InvalidArcRadius);
    }
    Ok(())
}

/// `count` points on `circle(q, delta') - disc(p, |pq|)` in counterclockwise
/// order, centred on the arc, with consecutive gaps of
/// `(pi + slack) / (count - 1)` where `slack` is half the arc's excess over
/// `pi`. A single point lands on the arc's midline.
pub fn arc_points(frame: &ConstructionFrame, delta_prime: &Float, count: usize) -> Result<Vec<Point>, GeometryError> {
    arc_points_skewed(frame, delta_prime, count, 0.0)
}

/// As [`arc_points`], with the whole pattern rotated along the arc by
/// `skew` (in `(-1, 1)`) times the free margin at either end. The
/// constructions use a non-zero skew so that no child lands on the line
/// through `p` and `q`.
pub fn arc_points_skewed(
    frame: &ConstructionFrame,
    delta_prime: &Float,
    count: usize,
    skew: f64,
) -> Result<Vec<Point>, GeometryError> {
    check_radius(frame, delta_prime)?;
    if count == 0 {
        return Err(GeometryError::InfeasibleArc { count });
    }
    assert!(skew.abs() < 1.0, "skew must stay inside the end margins");
    let prec = frame.prec();
    let ArcSpan::Lune { axis, half_angle, slack } = ArcSpan::of_frame(frame, delta_prime) else { unreachable!() };
    let pi = Float::with_val(prec, Constant::Pi);
    let angles: Vec<Float> = if count == 1 {
        vec![Float::with_val(prec, &half_angle * skew) / 2u32]
    } else {
        let gap = Float::with_val(prec, &pi + &slack) / (count as u32 - 1);
        let start = -Float::with_val(prec, &gap * (count as u32 - 1)) / 2u32;
        let shift = Float::with_val(prec, &slack * skew) / 2u32;
        (0..count)
            .map(|a| {
                let base = Float::with_val(prec, &gap * a as u32) + &start;
                base + &shift
            })
            .collect()
    };
    Ok(angles
        .into_iter()
        .map(|theta| frame.q().polar_offset(delta_prime, &Float::with_val(prec, theta + &axis)))
        .collect())
}

/// Up to five points on `circle(q, radius)` at successive counterclockwise
/// steps of `2 pi / 5`, starting at `phase`.
pub fn circle_points(q: &Point, radius: &Float, count: usize, phase: &Float) -> Result<Vec<Point>, GeometryError> {
    if count == 0 || count > 5 {
        return Err(GeometryError::InfeasibleArc { count });
    }
    let prec = q.prec().max(radius.prec());
    let step = Float::with_val(prec, Constant::Pi) * 2u32 / 5u32;
    Ok((0..count)
        .map(|a| {
            let theta = Float::with_val(prec, &step * a as u32) + phase;
            q.polar_offset(radius, &theta)
        })
        .collect())
}

/// The individual worst-case bounds behind [`safe_epsilon`], kept for
/// diagnostics and tests.
#[derive(Clone, Debug)]
pub struct EpsilonBounds {
    /// `delta - max |q s_i|`: discs stay inside the including disc.
    pub outer: Float,
    /// `min |p s_i| - |pq|`: discs stay off the excluded disc.
    pub inner: Option<Float>,
    /// `min (|s_i s_j| - max(|q s_i|, |q s_j|)) / 3` over the lens pairs.
    pub apex: Option<Float>,
    /// `min |q s_i| / 3`: `q` never falls in a lens spanned inside one disc.
    pub own: Float,
    /// `min |s_i s_j| / 4`: lenses spanned inside one disc miss the others.
    pub separation: Option<Float>,
}

impl EpsilonBounds {
    pub fn compute(p: Option<&Point>, q: &Point, delta: &Float, s: &[Point], pairs: &LensPairs) -> Self {
        let prec = q.prec().max(delta.prec());
        let qs: Vec<Float> = s.iter().map(|si| dist(q, si)).collect();
        let max_qs = qs.iter().fold(Float::new(prec), |m, d| m.max(d));
        let min_qs = qs.iter().fold(Float::with_val(prec, rug::float::Special::Infinity), |m, d| m.min(d));
        let outer = Float::with_val(prec, delta - &max_qs);
        let inner = p.map(|p| {
            let pq = dist(p, q);
            s.iter()
                .map(|si| Float::with_val(prec, dist(p, si) - &pq))
                .fold(Float::with_val(prec, rug::float::Special::Infinity), |m, d| m.min(&d))
        });
        let own = Float::with_val(prec, &min_qs / 3u32);
        let mut separation: Option<Float> = None;
        let mut apex: Option<Float> = None;
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                let sij = dist(&s[i], &s[j]);
                let sep = Float::with_val(prec, &sij / 4u32);
                separation = Some(match separation {
                    Some(m) => m.min(&sep),
                    None => sep,
                });
                let wanted = match pairs {
                    LensPairs::All => true,
                    LensPairs::Only(list) => list.contains(&(i, j)) || list.contains(&(j, i)),
                };
                if wanted {
                    let reach = Float::with_val(prec, qs[i].max_ref(&qs[j]));
                    let b = Float::with_val(prec, sij - reach) / 3u32;
                    apex = Some(match apex {
                        Some(m) => m.min(&b),
                        None => b,
                    });
                }
            }
        }
        EpsilonBounds { outer, inner, apex, own, separation }
    }

    /// Half of the smallest bound.
    pub fn epsilon(&self) -> Result<Float, GeometryError> {
        let candidates = [
            ("outer", Some(&self.outer)),
            ("inner", self.inner.as_ref()),
            ("apex", self.apex.as_ref()),
            ("own", Some(&self.own)),
            ("separation", self.separation.as_ref()),
        ];
        let (which, value) = candidates
            .into_iter()
            .filter_map(|(name, v)| v.map(|v| (name, v)))
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite bounds"))
            .expect("outer bound is always present");
        if value.cmp0() != Some(Ordering::Greater) {
            return Err(GeometryError::InfeasibleEpsilon { which, value: value.to_string_radix(10, Some(8)) });
        }
        Ok(Float::with_val(value.prec(), value / 2u32))
    }
}

/// A radius `epsilon` such that the discs of radius `2 epsilon` around the
/// points `s` keep every strict inequality the lune recursion relies on:
/// they lie inside the frame's lune, `q` lies in every lens spanned across
/// two discs of a lens pair, `q` lies in no lens spanned within one disc,
/// and such a lens misses every other disc.
pub fn safe_epsilon(
    frame: &ConstructionFrame,
    delta_prime: &Float,
    s: &[Point],
    pairs: &LensPairs,
) -> Result<Float, GeometryError> {
    check_radius(frame, delta_prime)?;
    EpsilonBounds::compute(Some(frame.p()), frame.q(), frame.delta(), s, pairs).epsilon()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::angle_at;

    fn frame(prec: u32) -> ConstructionFrame {
        ConstructionFrame::new(Point::from_f64(-10.0, 0.0, prec), Point::origin(prec), Float::with_val(prec, 2))
            .unwrap()
    }

    #[test]
    fn single_point_sits_on_the_midline() {
        let f = frame(128);
        let one = Float::with_val(128, 1);
        let s = arc_points(&f, &one, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(dist(&s[0], f.q()), 1);
        assert!(s[0].y().is_zero());
        assert!(*s[0].x() > 0);
    }

    #[test]
    fn four_points_are_pairwise_beyond_sixty_degrees() {
        let prec = 128;
        let f = frame(prec);
        let one = Float::with_val(prec, 1);
        let s = arc_points(&f, &one, 4).unwrap();
        let third = Float::with_val(prec, Constant::Pi) / 3u32;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let a = angle_at(f.q(), &s[i], &s[j]).unwrap();
                assert!(a > third, "pair {i},{j}");
            }
        }
    }

    #[test]
    fn points_lie_on_the_arc_strictly_outside_the_excluded_disc() {
        let prec = 160;
        let f = frame(prec);
        let r = Float::with_val(prec, 1.5);
        let pq = dist(f.p(), f.q());
        for count in 1..=6 {
            for s in arc_points_skewed(&f, &r, count, 0.4).unwrap() {
                let d = dist(&s, f.q());
                let rel = Float::with_val(prec, &d - &r).abs() / &r;
                assert!(rel < Float::with_val(prec, Float::i_exp(1, -150)));
                assert!(dist(&s, f.p()) > pq);
            }
        }
    }

    #[test]
    fn rejects_radius_outside_frame() {
        let f = frame(128);
        assert_eq!(arc_points(&f, &Float::with_val(128, 2), 2), Err(GeometryError::InvalidArcRadius));
    }

    #[test]
    fn circle_points_step_by_seventy_two_degrees() {
        let prec = 128;
        let q = Point::origin(prec);
        let pts = circle_points(&q, &Float::with_val(prec, 1), 5, &Float::new(prec)).unwrap();
        let step = Float::with_val(prec, Constant::Pi) * 2u32 / 5u32;
        let a = angle_at(&q, &pts[0], &pts[1]).unwrap();
        let diff = Float::with_val(prec, a - &step).abs();
        assert!(diff < Float::with_val(prec, Float::i_exp(1, -120)));
        assert!(circle_points(&q, &Float::with_val(prec, 1), 6, &Float::new(prec)).is_err());
    }

    #[test]
    fn epsilon_is_below_delta_prime() {
        let prec = 128;
        let f = frame(prec);
        let one = Float::with_val(prec, 1);
        let s = arc_points(&f, &one, 4).unwrap();
        let eps = safe_epsilon(&f, &one, &s, &LensPairs::All).unwrap();
        assert!(eps > 0 && eps < one);
    }
}
