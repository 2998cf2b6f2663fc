use std::cmp::Ordering;

use rug::Float;

use super::exact::Lattice;
use super::{dist, GeometryError, Point};

/// Intersection of the two open discs of radius `|ab|` centred at `a` and
/// at `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LensRegion {
    a: Point,
    b: Point,
}

impl LensRegion {
    pub fn new(a: Point, b: Point) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateLens);
        }
        Ok(LensRegion { a, b })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    /// Strict membership: `|ca| < |ab|` and `|cb| < |ab|`.
    pub fn contains(&self, c: &Point) -> bool {
        let l = Lattice::new([&self.a, &self.b, c]);
        let ab = l.dist2(0, 1);
        l.dist2(2, 0) < ab && l.dist2(2, 1) < ab
    }
}

/// `(disc(q, delta) - closed disc(p, |pq|)) ∪ {q}`: the region a recursive
/// construction step is confined to.
#[derive(Clone, Debug, PartialEq)]
pub struct LuneRegion {
    p: Point,
    q: Point,
    delta: Float,
}

impl LuneRegion {
    pub fn new(p: Point, q: Point, delta: Float) -> Result<Self, GeometryError> {
        let pq = dist(&p, &q);
        if delta.cmp0() != Some(Ordering::Greater) || delta >= pq {
            return Err(GeometryError::InvalidLune {
                delta: delta.to_string_radix(10, Some(12)),
                pq: pq.to_string_radix(10, Some(12)),
            });
        }
        Ok(LuneRegion { p, q, delta })
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

    pub fn contains(&self, c: &Point) -> bool {
        if *c == self.q {
            return true;
        }
        let l = Lattice::with_scalars([&self.p, &self.q, c], [&self.delta]);
        l.dist2(2, 1) < l.scalar2(0) && l.dist2(2, 0) > l.dist2(0, 1)
    }
}

/// Convenience wrapper over [`LensRegion::contains`]; `false` when the lens
/// is degenerate.
pub fn lens_contains(a: &Point, b: &Point, c: &Point) -> bool {
    LensRegion::new(a.clone(), b.clone()).map(|l| l.contains(c)).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::from_f64(x, y, 256)
    }

    fn lens() -> LensRegion {
        LensRegion::new(pt(0.0, 0.0), pt(2.0, 0.0)).unwrap()
    }

    #[test]
    fn midpoint_is_inside() {
        assert!(lens().contains(&pt(1.0, 0.0)));
    }

    #[test]
    fn endpoint_is_outside_by_strictness() {
        assert!(!lens().contains(&pt(2.0, 0.0)));
        assert!(!lens().contains(&pt(0.0, 0.0)));
    }

    #[test]
    fn boundary_apex_straddle() {
        // The two circles meet at (1, sqrt 3); nudge the apex by 1e-9
        // relative in either direction.
        let prec = 256;
        let root3 = Float::with_val(prec, 3).sqrt();
        let nudge = Float::with_val(prec, 1e-9);
        let inside_y = Float::with_val(prec, &root3 * Float::with_val(prec, 1 - &nudge));
        let outside_y = Float::with_val(prec, &root3 * Float::with_val(prec, 1 + &nudge));
        let one = Float::with_val(prec, 1);
        let inside = Point::new(one.clone(), inside_y).unwrap();
        let outside = Point::new(one, outside_y).unwrap();
        // Independent check by distances at doubled precision.
        let two = Float::with_val(2 * prec, 2);
        for (c, expect) in [(&inside, true), (&outside, false)] {
            let c2 = c.with_prec(2 * prec);
            let da = dist(&c2, &pt(0.0, 0.0).with_prec(2 * prec));
            assert_eq!(da < two, expect);
            assert_eq!(lens().contains(c), expect);
        }
    }

    #[test]
    fn lens_is_symmetric() {
        let a = pt(0.3, -1.0);
        let b = pt(2.0, 0.7);
        for c in [pt(1.0, 0.0), pt(1.1, -0.2), pt(3.0, 3.0), pt(-0.5, -1.5)] {
            assert_eq!(lens_contains(&a, &b, &c), lens_contains(&b, &a, &c));
        }
    }

    #[test]
    fn lune_contains_its_apex_but_not_p() {
        let lune = LuneRegion::new(pt(0.0, 0.0), pt(10.0, 0.0), Float::with_val(256, 2)).unwrap();
        assert!(lune.contains(&pt(10.0, 0.0)));
        assert!(!lune.contains(&pt(0.0, 0.0)));
        assert!(lune.contains(&pt(11.0, 0.0)));
        // on the excluded closed circle
        assert!(!lune.contains(&pt(6.0, 8.0)));
        // just outside the including disc
        assert!(!lune.contains(&pt(12.0, 0.0)));
    }

    #[test]
    fn lune_rejects_invalid_delta() {
        let p = pt(0.0, 0.0);
        let q = pt(1.0, 0.0);
        assert!(LuneRegion::new(p.clone(), q.clone(), Float::with_val(64, 1)).is_err());
        assert!(LuneRegion::new(p, q, Float::with_val(64, 0)).is_err());
    }
}
