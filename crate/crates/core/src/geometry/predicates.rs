//! Orientation and in-circle predicates.
//!
//! Each predicate is first evaluated in plain `f64` together with a forward
//! error bound. Only when the sign is not certain is the determinant
//! re-evaluated in double-double arithmetic (about 106 bits), where the
//! coordinate differences are exact.

use std::ops::{Add, Mul, Sub};

use super::Point;

const EPSILON: f64 = f64::EPSILON * 0.5;
const CCW_ERRBOUND: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;
const ICC_ERRBOUND: f64 = (10.0 + 96.0 * EPSILON) * EPSILON;

/// Positive when `c` lies left of the directed line `a -> b` (the triangle
/// `abc` is counterclockwise), negative when right, zero when collinear.
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    let left = (a[0] - c[0]) * (b[1] - c[1]);
    let right = (a[1] - c[1]) * (b[0] - c[0]);
    let det = left - right;
    let bound = CCW_ERRBOUND * (left.abs() + right.abs());
    if det > bound || -det > bound {
        return det;
    }
    orient2d_dd(a, b, c)
}

/// Positive when `d` lies strictly inside the circumcircle of the
/// counterclockwise triangle `abc`, negative outside, zero on the circle.
pub fn incircle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let adx = a[0] - d[0];
    let ady = a[1] - d[1];
    let bdx = b[0] - d[0];
    let bdy = b[1] - d[1];
    let cdx = c[0] - d[0];
    let cdy = c[1] - d[1];

    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let alift = adx * adx + ady * ady;
    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let blift = bdx * bdx + bdy * bdy;
    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;
    let clift = cdx * cdx + cdy * cdy;

    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * alift
        + (cdxady.abs() + adxcdy.abs()) * blift
        + (adxbdy.abs() + bdxady.abs()) * clift;
    let bound = ICC_ERRBOUND * permanent;
    if det > bound || -det > bound {
        return det;
    }
    incircle_dd(a, b, c, d)
}

fn orient2d_dd(a: Point, b: Point, c: Point) -> f64 {
    let acx = Dd::diff(a[0], c[0]);
    let acy = Dd::diff(a[1], c[1]);
    let bcx = Dd::diff(b[0], c[0]);
    let bcy = Dd::diff(b[1], c[1]);
    (acx * bcy - acy * bcx).value()
}

fn incircle_dd(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let adx = Dd::diff(a[0], d[0]);
    let ady = Dd::diff(a[1], d[1]);
    let bdx = Dd::diff(b[0], d[0]);
    let bdy = Dd::diff(b[1], d[1]);
    let cdx = Dd::diff(c[0], d[0]);
    let cdy = Dd::diff(c[1], d[1]);
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    let det = alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady);
    det.value()
}

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd {
            hi: s,
            lo: b - (s - a),
        }
    }

    /// `a - b` exactly.
    fn diff(a: f64, b: f64) -> Dd {
        Dd::two_sum(a, -b)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, rhs: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, rhs.hi);
        let t = Dd::two_sum(self.lo, rhs.lo);
        let s = Dd::quick_two_sum(s.hi, s.lo + t.hi);
        Dd::quick_two_sum(s.hi, s.lo + t.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;

    fn sub(self, rhs: Dd) -> Dd {
        self + Dd {
            hi: -rhs.hi,
            lo: -rhs.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;

    fn mul(self, rhs: Dd) -> Dd {
        let p = self.hi * rhs.hi;
        let e = self.hi.mul_add(rhs.hi, -p);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        Dd::quick_two_sum(p, e)
    }
}
