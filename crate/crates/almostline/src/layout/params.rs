use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geom::{dist2, line_intersection, orient, Point, Q};
use crate::transform::SplitDecomposition;

use super::LayoutError;

/// Sizes derived from the separating polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutParams {
    /// Rational lower bound on the shortest polygon side.
    pub d: Q,
    pub n: usize,
    /// `d / n`.
    pub delta: Q,
    /// Per polygon side `(cycle[i], cycle[i+1])`: half the height of the
    /// triangle `u', beta, u''` over that side.
    pub eps1: Vec<Q>,
}

/// Rational approximation of `sqrt(x)` from below (`upper = false`) or above.
fn sqrt_bound(x: &Q, upper: bool) -> Q {
    let bits = 32u64;
    let scale = BigInt::one() << (2 * bits);
    let y = (x * Q::from_integer(scale)).floor().to_integer();
    let mut r = y.sqrt();
    if upper {
        r += 1;
    }
    Q::new(r, BigInt::one() << bits)
}

/// Point on segment `from -> to` at distance at most `dist` from `from`.
fn toward(from: &Point, to: &Point, dist: &Q) -> Point {
    let len = sqrt_bound(&dist2(from, to), true);
    from.add(&to.sub(from).scale(&(dist / len)))
}

pub fn compute_params(dec: &SplitDecomposition, outer: &HashMap<usize, Point>) -> Result<LayoutParams, LayoutError> {
    let c = &dec.cycle;
    let m = c.len();
    let p = |i: usize| &outer[&c[i % m]];
    let mut min2: Option<Q> = None;
    for i in 0..m {
        let l = dist2(p(i), p(i + 1));
        if l.is_zero() {
            return Err(LayoutError::Engine("degenerate separating polygon".into()));
        }
        if min2.as_ref().is_none_or(|b| l < *b) {
            min2 = Some(l);
        }
    }
    let d = sqrt_bound(&min2.expect("cycle has sides"), false);
    let n = dec.graph.n();
    let delta = &d / Q::from_integer(n.into());
    let mut eps1 = Vec::with_capacity(m);
    for i in 0..m {
        let (prev, a, b, next) = (p(i + m - 1), p(i), p(i + 1), p(i + 2));
        let alpha1 = toward(a, prev, &delta);
        let alpha2 = toward(b, next, &delta);
        let beta = line_intersection(a, &alpha2, b, &alpha1)
            .ok_or_else(|| LayoutError::Engine("parallel pillow sides".into()))?;
        let twice_area = orient(a, b, &beta).abs();
        let base = sqrt_bound(&dist2(a, b), true);
        eps1.push(twice_area / base / Q::from_integer(4.into()));
    }
    Ok(LayoutParams { d, n, delta, eps1 })
}
