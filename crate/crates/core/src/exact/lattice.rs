//! Integer lattice vectors and rational points of the plane.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, int, Rational};
use super::ExactError;

/// Integral vector of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct IntVec2 {
    pub x: i64,
    pub y: i64,
}

impl From<[i64; 2]> for IntVec2 {
    fn from([x, y]: [i64; 2]) -> Self {
        IntVec2 { x, y }
    }
}

impl From<IntVec2> for [i64; 2] {
    fn from(v: IntVec2) -> Self {
        [v.x, v.y]
    }
}

impl IntVec2 {
    pub const ZERO: IntVec2 = IntVec2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        IntVec2 { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn dot(self, other: IntVec2) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Lattice length: the gcd of the absolute coordinates.
    pub fn lattice_length(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn to_point(self) -> PointQ2 {
        PointQ2::new(int(self.x), int(self.y))
    }

    /// Rotates by a quarter turn clockwise: `(x, y) -> (y, -x)`.
    pub fn rot_cw(self) -> IntVec2 {
        IntVec2::new(self.y, -self.x)
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for IntVec2 {
    type Output = IntVec2;
    fn add(self, o: IntVec2) -> IntVec2 {
        IntVec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for IntVec2 {
    type Output = IntVec2;
    fn sub(self, o: IntVec2) -> IntVec2 {
        IntVec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for IntVec2 {
    type Output = IntVec2;
    fn neg(self) -> IntVec2 {
        IntVec2::new(-self.x, -self.y)
    }
}

impl Mul<i64> for IntVec2 {
    type Output = IntVec2;
    fn mul(self, k: i64) -> IntVec2 {
        IntVec2::new(self.x * k, self.y * k)
    }
}

impl std::iter::Sum for IntVec2 {
    fn sum<I: Iterator<Item = IntVec2>>(iter: I) -> IntVec2 {
        iter.fold(IntVec2::ZERO, |a, b| a + b)
    }
}

/// Splits `v` into a primitive direction and a positive weight with `v = w * u`.
pub fn primitive_decompose(v: IntVec2) -> Result<(IntVec2, i64), ExactError> {
    if v.is_zero() {
        return Err(ExactError::ZeroDirection);
    }
    let w = v.lattice_length();
    Ok((IntVec2::new(v.x / w, v.y / w), w))
}

/// `u.x * v.y - u.y * v.x`.
pub fn det2(u: IntVec2, v: IntVec2) -> i64 {
    u.x * v.y - u.y * v.x
}

/// Point of the plane with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointQ2 {
    pub x: Rational,
    pub y: Rational,
}

impl PointQ2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        PointQ2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PointQ2::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        PointQ2::from_ints(0, 0)
    }

    /// `self + t * dir`.
    pub fn offset(&self, dir: IntVec2, t: &Rational) -> PointQ2 {
        PointQ2::new(&self.x + t * int(dir.x), &self.y + t * int(dir.y))
    }

    pub fn sub(&self, other: &PointQ2) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// Pairing with an integer covector, `a.x * x + a.y * y`.
    pub fn pair(&self, a: IntVec2) -> Rational {
        &self.x * int(a.x) + &self.y * int(a.y)
    }
}

impl fmt::Display for PointQ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl Serialize for PointQ2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointQ2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (x, y) = super::rational::serde_pair::deserialize(d)?;
        Ok(PointQ2::new(x, y))
    }
}

/// Writes a rational displacement `(dx, dy)` as `len * u` with `u` primitive
/// integral and `len > 0` rational.
pub fn rational_direction(dx: &Rational, dy: &Rational) -> Result<(IntVec2, Rational), ExactError> {
    if dx.is_zero() && dy.is_zero() {
        return Err(ExactError::ZeroDirection);
    }
    let den = dx.denom().lcm(dy.denom());
    let nx = (dx * Rational::from_integer(den.clone())).to_integer();
    let ny = (dy * Rational::from_integer(den.clone())).to_integer();
    let g = nx.gcd(&ny);
    let ux = (&nx / &g).to_i64().ok_or(ExactError::Overflow)?;
    let uy = (&ny / &g).to_i64().ok_or(ExactError::Overflow)?;
    let len = Rational::new(g, den);
    Ok((IntVec2::new(ux, uy), len))
}

/// Twice the signed area of the triangle `a, b, c`.
pub fn orient(a: IntVec2, b: IntVec2, c: IntVec2) -> i64 {
    det2(b - a, c - a)
}

/// Twice the area of a lattice polygon given in cyclic order.
pub fn twice_area(poly: &[IntVec2]) -> i64 {
    let n = poly.len();
    if n < 3 {
        return 0;
    }
    (0..n)
        .map(|i| det2(poly[i], poly[(i + 1) % n]))
        .sum::<i64>()
        .abs()
}

/// Convex hull in counter-clockwise order, without collinear boundary points.
/// Degenerate inputs return one point or the two endpoints of a segment.
pub fn convex_hull(points: &[IntVec2]) -> Vec<IntVec2> {
    let mut pts: Vec<IntVec2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<IntVec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<IntVec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Lattice points of the closed convex polygon with counter-clockwise vertices `poly`.
pub fn lattice_points_in(poly: &[IntVec2]) -> Vec<IntVec2> {
    if poly.is_empty() {
        return Vec::new();
    }
    let (xmin, xmax) = (poly.iter().map(|p| p.x).min().unwrap(), poly.iter().map(|p| p.x).max().unwrap());
    let (ymin, ymax) = (poly.iter().map(|p| p.y).min().unwrap(), poly.iter().map(|p| p.y).max().unwrap());
    let mut out = Vec::new();
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            let q = IntVec2::new(x, y);
            if point_in_convex(poly, q) {
                out.push(q);
            }
        }
    }
    out
}

/// Membership of `q` in the closed convex polygon `poly` (ccw, possibly degenerate).
pub fn point_in_convex(poly: &[IntVec2], q: IntVec2) -> bool {
    match poly.len() {
        0 => false,
        1 => poly[0] == q,
        2 => {
            let (a, b) = (poly[0], poly[1]);
            orient(a, b, q) == 0 && (q - a).dot(b - a) >= 0 && (q - b).dot(a - b) >= 0
        }
        n => (0..n).all(|i| orient(poly[i], poly[(i + 1) % n], q) >= 0),
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
