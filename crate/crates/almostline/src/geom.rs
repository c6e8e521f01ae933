//! Exact rational points and predicates.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Point {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point { x: Q::from_integer(x.into()), y: Q::from_integer(y.into()) }
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn add(&self, o: &Point) -> Point {
        Point { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn scale(&self, k: &Q) -> Point {
        Point { x: &self.x * k, y: &self.y * k }
    }

    /// `max(|x|, |y|)`.
    pub fn norm_inf(&self) -> Q {
        let (a, b) = (self.x.abs(), self.y.abs());
        if a > b { a } else { b }
    }

    pub fn norm1(&self) -> Q {
        self.x.abs() + self.y.abs()
    }
}

pub fn cross(a: &Point, b: &Point) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Twice the signed area of `abc`; positive when counterclockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Q {
    cross(&b.sub(a), &c.sub(a))
}

pub fn orient_sign(a: &Point, b: &Point, c: &Point) -> Ordering {
    orient(a, b, c).cmp(&Q::zero())
}

pub fn dist2(a: &Point, b: &Point) -> Q {
    let d = a.sub(b);
    dot(&d, &d)
}

/// Squared distance from `p` to segment `ab`.
pub fn seg_dist2(p: &Point, a: &Point, b: &Point) -> Q {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len2 = dot(&ab, &ab);
    if len2.is_zero() {
        return dist2(p, a);
    }
    let t = dot(&ap, &ab);
    if t <= Q::zero() {
        dist2(p, a)
    } else if t >= len2 {
        dist2(p, b)
    } else {
        let c = cross(&ab, &ap);
        &c * &c / len2
    }
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if !orient(a, b, p).is_zero() {
        return false;
    }
    dot(&p.sub(a), &p.sub(b)) <= Q::zero()
}

/// Intersection point of lines `ab` and `cd`, if not parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let r = b.sub(a);
    let s = d.sub(c);
    let den = cross(&r, &s);
    if den.is_zero() {
        return None;
    }
    let t = cross(&c.sub(a), &s) / den;
    Some(a.add(&r.scale(&t)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentRelation {
    Disjoint,
    /// Interiors cross at a single point.
    Proper(Point),
    /// Any other contact: shared endpoint, endpoint on the other segment or
    /// collinear overlap.
    Touch,
}

pub fn segment_relation(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentRelation {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    use Ordering::*;
    if o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal {
        if o1 != o2 && o3 != o4 {
            return SegmentRelation::Proper(line_intersection(a, b, c, d).expect("not parallel"));
        }
        return SegmentRelation::Disjoint;
    }
    if on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d) {
        SegmentRelation::Touch
    } else {
        SegmentRelation::Disjoint
    }
}

/// Compares directions by clockwise angle starting from straight up.
pub fn cmp_clockwise(a: &Point, b: &Point) -> Ordering {
    // Half 0: directions from up (inclusive) clockwise to down (exclusive).
    let half = |p: &Point| {
        let zero = Q::zero();
        if p.x > zero || (p.x.is_zero() && p.y > zero) { 0 } else { 1 }
    };
    half(a).cmp(&half(b)).then_with(|| Q::zero().cmp(&cross(a, b)).reverse())
}

pub fn to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        let (n, d) = (q.numer().bits() as i64, q.denom().bits() as i64);
        let sign = if q.is_negative() { -1.0 } else { 1.0 };
        sign * 2f64.powi((n - d).clamp(-1000, 1000) as i32)
    })
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn relations() {
        let r = segment_relation(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0));
        assert_eq!(r, SegmentRelation::Proper(p(1, 1)));
        assert_eq!(segment_relation(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 3)), SegmentRelation::Touch);
        assert_eq!(segment_relation(&p(0, 0), &p(2, 0), &p(3, 0), &p(5, 0)), SegmentRelation::Disjoint);
        assert_eq!(segment_relation(&p(0, 0), &p(2, 0), &p(1, 0), &p(5, 0)), SegmentRelation::Touch);
        assert_eq!(segment_relation(&p(0, 0), &p(1, 1), &p(3, 0), &p(2, 5)), SegmentRelation::Disjoint);
    }

    #[test]
    fn clockwise_order() {
        let mut dirs = vec![p(-1, 0), p(0, -1), p(1, 0), p(0, 1), p(1, 1), p(-1, 1)];
        dirs.sort_by(cmp_clockwise);
        assert_eq!(dirs, vec![p(0, 1), p(1, 1), p(1, 0), p(0, -1), p(-1, 0), p(-1, 1)]);
    }

    #[test]
    fn distances() {
        assert_eq!(seg_dist2(&p(1, 3), &p(0, 0), &p(4, 0)), q(9, 1));
        assert_eq!(seg_dist2(&p(7, 4), &p(0, 0), &p(4, 0)), q(25, 1));
        assert!(on_segment(&p(2, 0), &p(0, 0), &p(4, 0)));
        assert!(!on_segment(&p(5, 0), &p(0, 0), &p(4, 0)));
        assert_eq!(line_intersection(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)), None);
        assert_eq!(to_f64(&q(-3, 4)), -0.75);
    }
}
