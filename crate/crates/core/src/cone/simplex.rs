//! Exact phase-one simplex with Bland's rule, returning a Farkas
//! alternative.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Either a nonnegative `x` with `Σ x_j cols_j = b`, or a functional `φ`
/// with `φ·cols_j >= 0` for all `j` and `φ·b < 0`.
pub fn farkas(cols: &[Vec<Q>], b: &[Q]) -> Result<Vec<Q>, Vec<Q>> {
    let m = b.len();
    let nv = cols.len();
    let width = nv + m;
    let sign: Vec<Q> = b
        .iter()
        .map(|x| if x.is_negative() { -Q::one() } else { Q::one() })
        .collect();
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| &c[i] * &sign[i]).collect();
            row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            row.push(&b[i] * &sign[i]);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (nv..width).collect();
    // Reduced costs of the phase-one objective (sum of artificials), with
    // the negated objective value in the last slot.
    let mut z: Vec<Q> = (0..=width)
        .map(|j| {
            if (nv..width).contains(&j) {
                Q::zero()
            } else {
                -t.iter().map(|row| row[j].clone()).sum::<Q>()
            }
        })
        .collect();

    while let Some(enter) = (0..width).find(|&j| z[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let lhs = &t[i][width] * &t[l][enter];
                    let rhs = &t[l][width] * &t[i][enter];
                    lhs < rhs || (lhs == rhs && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(l) = leave else {
            unreachable!("phase-one objective is bounded below");
        };
        let inv = t[l][enter].recip();
        for x in t[l].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == l || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= p * &f;
            }
        }
        let f = z[enter].clone();
        for (x, p) in z.iter_mut().zip(&pivot_row) {
            *x -= p * &f;
        }
        basis[l] = enter;
    }

    if z[width].is_zero() {
        let mut x = vec![Q::zero(); nv];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < nv {
                x[bv] = t[i][width].clone();
            }
        }
        Ok(x)
    } else {
        // y_i = 1 - (reduced cost of artificial i) are the phase-one duals.
        Err((0..m).map(|i| -(&sign[i] * (Q::one() - &z[nv + i]))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{dot_q, q};

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| q(a)).collect()
    }

    #[test]
    fn inside_octant() {
        let cols = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let x = farkas(&cols, &v(&[2, 3])).unwrap();
        let mut sum = v(&[0, 0]);
        for (c, xi) in cols.iter().zip(&x) {
            assert!(!xi.is_negative());
            for (s, ci) in sum.iter_mut().zip(c) {
                *s += ci * xi;
            }
        }
        assert_eq!(sum, v(&[2, 3]));
    }

    #[test]
    fn outside_with_separator() {
        let cols = vec![v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 1, 1])];
        let b = v(&[-1, 2, 1]);
        let phi = farkas(&cols, &b).unwrap_err();
        for c in &cols {
            assert!(!dot_q(&phi, c).is_negative());
        }
        assert!(dot_q(&phi, &b).is_negative());
    }

    #[test]
    fn empty_generators() {
        assert_eq!(farkas(&[], &v(&[0, 0])).unwrap(), Vec::<Q>::new());
        let phi = farkas(&[], &v(&[0, 3])).unwrap_err();
        assert!(dot_q(&phi, &v(&[0, 3])).is_negative());
    }
}
