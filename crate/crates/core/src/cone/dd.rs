//! Double description: the extreme rays and lineality space of
//! `{w : a·w >= 0 for every constraint a}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::bits::Bits;
use crate::linalg::{inverse, mat_mul, mat_vec, nullspace, rank, transpose, Matrix};
use crate::rational::{dot, primitive, primitive_int, to_q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polar {
    /// Extreme rays of the pointed part, chosen in the row space of the
    /// constraints, primitive and sorted.
    pub rays: Vec<Vec<BigInt>>,
    /// A basis of the lineality space, primitive.
    pub lineality: Vec<Vec<BigInt>>,
}

/// Primitive, deduplicated, lexicographically sorted nonzero constraints.
pub fn normalize_constraints(constraints: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = constraints
        .iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .map(|c| primitive_int(c))
        .collect();
    a.sort();
    a.dedup();
    a
}

struct Ray {
    v: Vec<BigInt>,
    tight: Bits,
}

pub fn polar(dim: usize, constraints: &[Vec<BigInt>]) -> Polar {
    let a = normalize_constraints(constraints);
    let aq: Matrix = a.iter().map(|c| to_q(c)).collect();
    let lineality: Vec<Vec<BigInt>> = nullspace(&aq, dim).iter().map(|v| primitive(v)).collect();
    let rho = dim - lineality.len();
    if rho == 0 {
        return Polar { rays: vec![], lineality };
    }

    // A maximal independent prefix-greedy subset seeds a simplicial cone.
    let mut seed: Vec<usize> = Vec::with_capacity(rho);
    let mut seed_rows: Matrix = Vec::with_capacity(rho);
    for (i, row) in aq.iter().enumerate() {
        if seed.len() == rho {
            break;
        }
        seed_rows.push(row.clone());
        if rank(&seed_rows) == seed_rows.len() {
            seed.push(i);
        } else {
            seed_rows.pop();
        }
    }
    let gram = mat_mul(&seed_rows, &transpose(&seed_rows));
    let right_inverse = mat_mul(&transpose(&seed_rows), &inverse(&gram).expect("independent rows"));
    let cols = transpose(&right_inverse);

    let m = a.len();
    let mut rays: Vec<Ray> = cols
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut tight = Bits::new(m);
            for (k, &i) in seed.iter().enumerate() {
                if k != j {
                    tight.set(i);
                }
            }
            debug_assert!(mat_vec(&seed_rows, col)[j].is_positive());
            Ray { v: primitive(col), tight }
        })
        .collect();

    for (ci, c) in a.iter().enumerate() {
        if seed.contains(&ci) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.set(ci);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].tight.and(&rays[n].tight);
                if common.count() + 2 < rho {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !common.is_subset(&r.tight));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &vals[p] * x - &vals[n] * y)
                    .collect();
                let mut tight = common;
                tight.set(ci);
                next.push(Ray { v: primitive_int(&v), tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.tight.set(ci);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Polar { rays: out, lineality }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    #[test]
    fn octant_is_self_polar() {
        let p = polar(3, &[ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
        assert_eq!(p.rays, vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]);
        assert!(p.lineality.is_empty());
    }

    #[test]
    fn square_cone() {
        // x >= ±y, x >= ±z: rays (1, ±1, ±1).
        let c = [ints(&[1, 1, 0]), ints(&[1, -1, 0]), ints(&[1, 0, 1]), ints(&[1, 0, -1])];
        let p = polar(3, &c);
        assert_eq!(
            p.rays,
            vec![ints(&[1, -1, -1]), ints(&[1, -1, 1]), ints(&[1, 1, -1]), ints(&[1, 1, 1])]
        );
    }

    #[test]
    fn halfspace_and_lineality() {
        let p = polar(3, &[ints(&[0, 2, 0])]);
        assert_eq!(p.rays, vec![ints(&[0, 1, 0])]);
        assert_eq!(p.lineality.len(), 2);
        let p = polar(2, &[ints(&[1, 1]), ints(&[-1, -1])]);
        assert!(p.rays.is_empty());
        assert_eq!(p.lineality.len(), 1);
        let p = polar(2, &[]);
        assert_eq!(p.lineality.len(), 2);
    }
}
