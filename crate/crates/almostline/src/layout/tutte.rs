//! Barycentric drawings solved exactly.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::geom::{q, Point, Q};

/// `m` rational points on the unit circle in counterclockwise order.
pub fn circle_points(m: usize) -> Vec<Point> {
    (0..m)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64 - std::f64::consts::PI;
            let t = ((theta / 2.0).tan() * 1024.0).round() as i64;
            let t = q(t, 1024);
            let one = Q::one();
            let den = &one + &t * &t;
            Point::new((&one - &t * &t) / &den, (Q::from_integer(2.into()) * &t) / &den)
        })
        .collect()
}

/// Places every vertex with an entry in `adj` but no fixed position at the
/// average of its neighbours.
pub fn barycentric(adj: &HashMap<usize, Vec<usize>>, fixed: &HashMap<usize, Point>) -> HashMap<usize, Point> {
    let mut free: Vec<usize> = adj.keys().copied().filter(|v| !fixed.contains_key(v)).collect();
    free.sort_unstable();
    let index: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut den = BigInt::one();
    for p in fixed.values() {
        den = den.lcm(p.x.denom()).lcm(p.y.denom());
    }
    let scaled = |x: &Q| x.numer() * (&den / x.denom());
    let m = free.len();
    let mut a = vec![vec![BigInt::zero(); m + 2]; m];
    for (i, &v) in free.iter().enumerate() {
        a[i][i] = BigInt::from(adj[&v].len());
        for w in &adj[&v] {
            if let Some(&j) = index.get(w) {
                a[i][j] -= 1;
            } else if let Some(p) = fixed.get(w) {
                a[i][m] += scaled(&p.x);
                a[i][m + 1] += scaled(&p.y);
            }
        }
    }
    let sol = solve(a, m);
    let den = Q::from_integer(den);
    let mut out: HashMap<usize, Point> = fixed.clone();
    for (i, v) in free.into_iter().enumerate() {
        out.insert(v, Point::new(&sol[i].0 / &den, &sol[i].1 / &den));
    }
    out
}

/// Fraction-free elimination of `m` equations with two right-hand sides.
fn solve(mut a: Vec<Vec<BigInt>>, m: usize) -> Vec<(Q, Q)> {
    let mut prev = BigInt::one();
    for k in 0..m {
        if a[k][k].is_zero() {
            let r = (k + 1..m).find(|&r| !a[r][k].is_zero()).expect("nonsingular system");
            a.swap(k, r);
        }
        for i in k + 1..m {
            if a[i][k].is_zero() {
                for j in k + 1..m + 2 {
                    a[i][j] = &a[i][j] * &a[k][k] / &prev;
                }
                continue;
            }
            for j in k + 1..m + 2 {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![(Q::zero(), Q::zero()); m];
    for i in (0..m).rev() {
        let mut bx = Q::from_integer(a[i][m].clone());
        let mut by = Q::from_integer(a[i][m + 1].clone());
        for j in i + 1..m {
            let c = Q::from_integer(a[i][j].clone());
            bx -= &c * &x[j].0;
            by -= &c * &x[j].1;
        }
        let d = Q::from_integer(a[i][i].clone());
        x[i] = (bx / &d, by / &d);
    }
    x
}
