#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use cyclecones::cone::{Certificate, RayCone};
use cyclecones::linalg::rank;
use cyclecones::rational::{ints, primitive, q, to_q};

pub type Q = BigRational;

pub fn full_rank(d: usize, rays: &[Vec<i64>]) -> bool {
    let m: Vec<Vec<Q>> = rays.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    rank(&m) == d
}

pub fn cone_of(d: usize, rays: &[Vec<i64>]) -> RayCone {
    RayCone::new(d, rays.iter().map(|r| ints(r)).collect(), None).unwrap()
}

/// Scales a row `a·λ <= b` to primitive integers so duplicates collapse.
fn normalize((a, b): (Vec<Q>, Q)) -> (Vec<Q>, Q) {
    let all: Vec<Q> = a.iter().chain(std::iter::once(&b)).cloned().collect();
    let v = primitive(&all);
    let mut out: Vec<Q> = v.into_iter().map(Q::from_integer).collect();
    let b = out.pop().unwrap();
    (out, b)
}

/// Feasibility of `Σ λ_i r_i = v, λ >= 0`. The equalities are solved by row
/// reduction, then the free λ's are removed by Fourier–Motzkin elimination.
pub fn fm_member(rays: &[Vec<i64>], v: &[i64]) -> bool {
    let m = rays.len();
    let mut a: Vec<Vec<Q>> = (0..v.len())
        .map(|i| rays.iter().map(|r| q(r[i])).chain(std::iter::once(q(v[i]))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[m].is_zero()) {
        return false;
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    // rows: c·μ <= b over the free variables μ
    let mut rows: BTreeSet<(Vec<Q>, Q)> = BTreeSet::new();
    let push = |rows: &mut BTreeSet<(Vec<Q>, Q)>, row: (Vec<Q>, Q)| {
        if row.0.iter().all(Zero::is_zero) {
            if row.1.is_negative() {
                rows.insert(row);
            }
        } else {
            rows.insert(normalize(row));
        }
    };
    for (i, _) in pivots.iter().enumerate() {
        push(&mut rows, (free.iter().map(|&f| a[i][f].clone()).collect(), a[i][m].clone()));
    }
    for j in 0..free.len() {
        let mut c = vec![Q::zero(); free.len()];
        c[j] = q(-1);
        push(&mut rows, (c, Q::zero()));
    }
    for j in 0..free.len() {
        let (pos, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|(a, _)| a[j].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(a, _)| a[j].is_negative());
        let mut next: BTreeSet<(Vec<Q>, Q)> = zero.into_iter().collect();
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let s = ap[j].clone();
                let t = -an[j].clone();
                let a: Vec<Q> = ap.iter().zip(an).map(|(x, y)| x * &t + y * &s).collect();
                push(&mut next, (a, bp * &t + bn * &s));
            }
        }
        rows = next;
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

pub fn check_certificate(cone: &RayCone, v: &[BigInt], cert: &Certificate, inside: bool) -> bool {
    match cert {
        Certificate::Combination { rays, lineality } => {
            let mut sum = vec![Q::zero(); v.len()];
            for (&i, c) in rays {
                if c.is_negative() {
                    return false;
                }
                for (s, x) in sum.iter_mut().zip(&cone.rays()[i]) {
                    *s += c * Q::from_integer(x.clone());
                }
            }
            for (&i, c) in lineality {
                for (s, x) in sum.iter_mut().zip(&cone.lineality()[i]) {
                    *s += c * Q::from_integer(x.clone());
                }
            }
            inside && sum == to_q(v)
        }
        Certificate::Separator { separator, .. } => {
            let dot = |a: &[BigInt]| -> BigInt { separator.iter().zip(a).map(|(x, y)| x * y).sum() };
            !inside
                && cone.rays().iter().all(|r| !dot(r).is_negative())
                && cone.lineality().iter().all(|l| dot(l).is_zero())
                && dot(v).is_negative()
        }
    }
}
