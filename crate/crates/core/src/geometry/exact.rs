use std::cmp::Ordering;

use rug::{Float, Integer};

use super::Point;

/// Coordinates (and optional scalar lengths) lifted onto a common integer
/// lattice `value = integer * 2^shift`, so that squared distances and
/// orientation determinants are computed without rounding.
#[derive(Clone, Debug)]
pub struct Lattice {
    xs: Vec<Integer>,
    ys: Vec<Integer>,
    scalars: Vec<Integer>,
    shift: i32,
}

fn decompose(v: &Float) -> Option<(Integer, i32)> {
    if v.is_zero() {
        None
    } else {
        v.to_integer_exp()
    }
}

impl Lattice {
    pub fn new<'a>(points: impl IntoIterator<Item = &'a Point>) -> Self {
        Self::with_scalars(points, std::iter::empty())
    }

    pub fn with_scalars<'a>(
        points: impl IntoIterator<Item = &'a Point>,
        scalars: impl IntoIterator<Item = &'a Float>,
    ) -> Self {
        let points: Vec<&Point> = points.into_iter().collect();
        let scalars: Vec<&Float> = scalars.into_iter().collect();
        let parts_x: Vec<_> = points.iter().map(|p| decompose(p.x())).collect();
        let parts_y: Vec<_> = points.iter().map(|p| decompose(p.y())).collect();
        let parts_s: Vec<_> = scalars.iter().map(|s| decompose(s)).collect();
        let shift = parts_x.iter().chain(&parts_y).chain(&parts_s).flatten().map(|(_, e)| *e).min().unwrap_or(0);
        let lift = |part: Option<(Integer, i32)>| match part {
            None => Integer::new(),
            Some((m, e)) => m << ((e - shift) as u32),
        };
        Lattice {
            xs: parts_x.into_iter().map(lift).collect(),
            ys: parts_y.into_iter().map(lift).collect(),
            scalars: parts_s.into_iter().map(lift).collect(),
            shift,
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn same_point(&self, i: usize, j: usize) -> bool {
        self.xs[i] == self.xs[j] && self.ys[i] == self.ys[j]
    }

    /// Squared distance in lattice units (scale `2^(2 shift)`).
    pub fn dist2(&self, i: usize, j: usize) -> Integer {
        let dx = Integer::from(&self.xs[i] - &self.xs[j]);
        let dy = Integer::from(&self.ys[i] - &self.ys[j]);
        dx.square() + dy.square()
    }

    /// Square of the `k`-th scalar, in the same units as [`Lattice::dist2`].
    pub fn scalar2(&self, k: usize) -> Integer {
        Integer::from(self.scalars[k].square_ref())
    }

    /// Sign of the cross product `(j - i) x (k - i)`.
    pub fn orient(&self, i: usize, j: usize, k: usize) -> Ordering {
        let ax = Integer::from(&self.xs[j] - &self.xs[i]);
        let ay = Integer::from(&self.ys[j] - &self.ys[i]);
        let bx = Integer::from(&self.xs[k] - &self.xs[i]);
        let by = Integer::from(&self.ys[k] - &self.ys[i]);
        let lhs = ax * by;
        let rhs = ay * bx;
        lhs.cmp(&rhs)
    }

    /// Sign of the dot product `(j - i) . (k - i)`.
    pub fn dot_sign(&self, i: usize, j: usize, k: usize) -> Ordering {
        let ax = Integer::from(&self.xs[j] - &self.xs[i]);
        let ay = Integer::from(&self.ys[j] - &self.ys[i]);
        let bx = Integer::from(&self.xs[k] - &self.xs[i]);
        let by = Integer::from(&self.ys[k] - &self.ys[i]);
        (ax * bx + ay * by).cmp0()
    }

    /// Exact difference vector `j - i` in lattice units.
    pub fn delta(&self, i: usize, j: usize) -> (Integer, Integer) {
        (Integer::from(&self.xs[j] - &self.xs[i]), Integer::from(&self.ys[j] - &self.ys[i]))
    }

    /// Compares the directions of `a - c` and `b - c` by counterclockwise
    /// angle in `[0, 2 pi)` from the positive x-axis.
    pub fn cmp_direction(&self, c: usize, a: usize, b: usize) -> Ordering {
        let (ax, ay) = self.delta(c, a);
        let (bx, by) = self.delta(c, b);
        let lower = |x: &Integer, y: &Integer| {
            y.cmp0() == Ordering::Less || (y.cmp0() == Ordering::Equal && x.cmp0() == Ordering::Less)
        };
        match (lower(&ax, &ay), lower(&bx, &by)) {
            (false, true) => Ordering::Less,
            (true, false) => Ordering::Greater,
            _ => {
                let lhs = Integer::from(&ax * &by);
                let rhs = Integer::from(&ay * &bx);
                rhs.cmp(&lhs)
            }
        }
    }

    /// Converts a lattice quantity of the given power (1 for lengths, 2 for
    /// squared lengths) back into an exact float.
    pub fn to_float(&self, value: &Integer, power: i32) -> Float {
        let bits = value.significant_bits().max(1);
        let mut f = Float::with_val(bits, value);
        f <<= self.shift * power;
        f
    }
}
