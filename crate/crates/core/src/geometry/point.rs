use std::fmt;

use rug::Float;

use super::exact::Lattice;
use super::GeometryError;
use crate::MIN_PRECISION;

/// A planar point with arbitrary-precision coordinates.
#[derive(Clone, PartialEq)]
pub struct Point {
    x: Float,
    y: Float,
}

impl Point {
    /// Builds a point, rejecting non-finite or too-narrow coordinates.
    pub fn new(x: Float, y: Float) -> Result<Self, GeometryError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        let prec = x.prec().min(y.prec());
        if prec < MIN_PRECISION {
            return Err(GeometryError::PrecisionTooLow(prec));
        }
        Ok(Point { x, y })
    }

    pub(crate) fn from_floats(x: Float, y: Float) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point { x, y }
    }

    pub fn from_f64(x: f64, y: f64, prec: u32) -> Self {
        Point::new(Float::with_val(prec, x), Float::with_val(prec, y))
            .expect("finite f64 coordinates at a valid precision")
    }

    pub fn origin(prec: u32) -> Self {
        Point::from_f64(0.0, 0.0, prec)
    }

    pub fn x(&self) -> &Float {
        &self.x
    }

    pub fn y(&self) -> &Float {
        &self.y
    }

    pub fn prec(&self) -> u32 {
        self.x.prec().max(self.y.prec())
    }

    /// The same point rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Point { x: Float::with_val(prec, &self.x), y: Float::with_val(prec, &self.y) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// `self + r * (cos theta, sin theta)`.
    pub fn polar_offset(&self, r: &Float, theta: &Float) -> Self {
        let prec = self.prec().max(r.prec());
        let (s, c) = Float::with_val(prec, theta).sin_cos(Float::new(prec));
        let x = Float::with_val(prec, &self.x + Float::with_val(prec, r * c));
        let y = Float::with_val(prec, &self.y + Float::with_val(prec, r * s));
        Point::from_floats(x, y)
    }

    /// `self + t * (dx, dy)`.
    pub fn offset(&self, dx: &Float, dy: &Float) -> Self {
        let prec = self.prec();
        Point::from_floats(Float::with_val(prec, &self.x + dx), Float::with_val(prec, &self.y + dy))
    }

    /// Largest absolute coordinate.
    pub fn magnitude(&self) -> Float {
        let ax = Float::with_val(self.prec(), self.x.abs_ref());
        let ay = Float::with_val(self.prec(), self.y.abs_ref());
        ax.max(&ay)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x.to_f64(), self.y.to_f64())
    }
}

/// Euclidean distance, correctly rounded at the wider operand precision.
pub fn dist(a: &Point, b: &Point) -> Float {
    let prec = a.prec().max(b.prec());
    let lattice = Lattice::new([a, b]);
    let (dx, dy) = lattice.delta(0, 1);
    let (dx, dy) = (lattice.to_float(&dx, 1), lattice.to_float(&dy, 1));
    Float::with_val(prec, dx.hypot_ref(&dy))
}

/// Exact squared distance, returned as a float wide enough to hold it.
pub fn dist_squared(a: &Point, b: &Point) -> Float {
    let lattice = Lattice::new([a, b]);
    lattice.to_float(&lattice.dist2(0, 1), 2)
}
