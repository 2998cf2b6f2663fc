use std::cmp::Ordering;

use rug::{Float, Integer};

use super::exact::Lattice;
use super::{GeometryError, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Exact orientation of the triple `(a, b, c)`.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    from_ordering(Lattice::new([a, b, c]).orient(0, 1, 2))
}

fn from_ordering(o: Ordering) -> Orientation {
    match o {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

/// True when the segments meet anywhere other than at a shared endpoint.
pub fn segments_cross(s1: &Segment, s2: &Segment) -> bool {
    let l = Lattice::new([&s1.a, &s1.b, &s2.a, &s2.b]);
    crosses_in(&l, [0, 1], [2, 3])
}

/// Crossing test on lattice indices; shared by the bulk verifier.
pub(crate) fn crosses_in(l: &Lattice, s: [usize; 2], t: [usize; 2]) -> bool {
    let [a, b] = s;
    let [c, d] = t;
    let shared = [(a, c), (a, d), (b, c), (b, d)].into_iter().filter(|&(i, j)| l.same_point(i, j)).count();
    if shared >= 2 {
        // identical segments overlap everywhere
        return true;
    }
    if shared == 1 {
        // Meeting beyond the common endpoint requires collinear overlap.
        let (common, other_s, other_t) = if l.same_point(a, c) {
            (a, b, d)
        } else if l.same_point(a, d) {
            (a, b, c)
        } else if l.same_point(b, c) {
            (b, a, d)
        } else {
            (b, a, c)
        };
        return l.orient(common, other_s, other_t) == Ordering::Equal
            && l.dot_sign(common, other_s, other_t) == Ordering::Greater;
    }
    let o1 = l.orient(a, b, c);
    let o2 = l.orient(a, b, d);
    let o3 = l.orient(c, d, a);
    let o4 = l.orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && on_segment(l, a, b, c))
        || (o2 == Ordering::Equal && on_segment(l, a, b, d))
        || (o3 == Ordering::Equal && on_segment(l, c, d, a))
        || (o4 == Ordering::Equal && on_segment(l, c, d, b))
}

// `r` collinear with segment `pq`: is it within the closed segment?
fn on_segment(l: &Lattice, p: usize, q: usize, r: usize) -> bool {
    l.dot_sign(p, q, r) != Ordering::Less && l.dot_sign(q, p, r) != Ordering::Less
}

/// Angle in `[0, pi]` between the rays `v -> a` and `v -> b`.
pub fn angle_at(v: &Point, a: &Point, b: &Point) -> Result<Float, GeometryError> {
    if a == v || b == v {
        return Err(GeometryError::DegenerateAngle);
    }
    let prec = v.prec().max(a.prec()).max(b.prec());
    let l = Lattice::new([v, a, b]);
    let (ax, ay) = l.delta(0, 1);
    let (bx, by) = l.delta(0, 2);
    let cross = Float::with_val(prec, Integer::from(&ax * &by) - Integer::from(&ay * &bx));
    let dot = Float::with_val(prec, Integer::from(&ax * &bx) + Integer::from(&ay * &by));
    Ok(Float::with_val(prec, cross.atan2_ref(&dot)).abs())
}

/// Direction of `to - from` in `(-pi, pi]`.
pub fn direction_angle(from: &Point, to: &Point) -> Float {
    let prec = from.prec().max(to.prec());
    let l = Lattice::new([from, to]);
    let (dx, dy) = l.delta(0, 1);
    let dx = Float::with_val(prec, &dx);
    let dy = Float::with_val(prec, &dy);
    Float::with_val(prec, dy.atan2_ref(&dx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn pt(x: f64, y: f64) -> Point {
        Point::from_f64(x, y, 128)
    }

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(pt(a.0, a.1), pt(b.0, b.1))
    }

    #[test]
    fn x_crossing() {
        assert!(segments_cross(&seg((0., 0.), (2., 2.)), &seg((0., 2.), (2., 0.))));
    }

    #[test]
    fn shared_endpoint_is_not_a_crossing() {
        assert!(!segments_cross(&seg((0., 0.), (1., 0.)), &seg((1., 0.), (2., 1.))));
    }

    #[test]
    fn parallel_segments_do_not_cross() {
        assert!(!segments_cross(&seg((0., 0.), (1., 0.)), &seg((0., 1.), (1., 1.))));
    }

    #[test]
    fn touching_interior_counts() {
        assert!(segments_cross(&seg((0., 0.), (2., 0.)), &seg((1., 0.), (1., 1.))));
    }

    #[test]
    fn collinear_overlap_through_shared_endpoint() {
        assert!(segments_cross(&seg((0., 0.), (2., 0.)), &seg((0., 0.), (1., 0.))));
        assert!(!segments_cross(&seg((0., 0.), (2., 0.)), &seg((0., 0.), (-1., 0.))));
    }

    #[test]
    fn right_straight_and_eighth_angles() {
        let pi = Float::with_val(128, Constant::Pi);
        let v = pt(0., 0.);
        let a = pt(1., 0.);
        assert_eq!(angle_at(&v, &a, &pt(0., 1.)).unwrap(), Float::with_val(128, &pi / 2));
        assert_eq!(angle_at(&v, &a, &pt(-1., 0.)).unwrap(), pi);
        assert_eq!(angle_at(&v, &a, &pt(1., 1.)).unwrap(), Float::with_val(128, &pi / 4));
    }

    #[test]
    fn degenerate_angle_is_an_error() {
        let v = pt(0., 0.);
        assert_eq!(angle_at(&v, &v, &pt(1., 0.)), Err(GeometryError::DegenerateAngle));
    }
}
