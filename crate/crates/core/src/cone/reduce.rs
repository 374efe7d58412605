use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::raycone::RayCone;
use super::simplex::farkas;
use crate::error::{Error, Result};
use crate::linalg::{inverse, nullspace, rref, Matrix};
use crate::rational::{primitive, to_q, Q};
use crate::ring::GradedClass;

/// Shifts by nonnegative integer combinations of linearly independent
/// vectors.
pub struct ShiftOrder {
    dim: usize,
    shifts: Vec<Vec<BigInt>>,
    annihilator: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    solver: Vec<Vec<BigInt>>,
    denom: BigInt,
}

impl ShiftOrder {
    pub fn new(shifts: &[Vec<BigInt>]) -> Result<Self> {
        let dim = shifts.first().map_or(0, Vec::len);
        if shifts.iter().any(|s| s.len() != dim) {
            return Err(Error::Domain("shift vectors of different lengths".into()));
        }
        let rows: Matrix = shifts.iter().map(|s| to_q(s)).collect();
        let (_, pivots) = rref(&rows);
        if pivots.len() != rows.len() {
            return Err(Error::Domain("shift vectors must be linearly independent".into()));
        }
        let square: Matrix = pivots
            .iter()
            .map(|&p| rows.iter().map(|r| r[p].clone()).collect())
            .collect();
        let inv = inverse(&square).expect("pivot minor is invertible");
        let denom = inv
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let solver = inv
            .iter()
            .map(|row| row.iter().map(|x| (x * Q::from_integer(denom.clone())).to_integer()).collect())
            .collect();
        let annihilator = nullspace(&rows, dim).iter().map(|y| primitive(y)).collect();
        Ok(ShiftOrder { dim, shifts: shifts.to_vec(), annihilator, pivots, solver, denom })
    }

    /// The part of `v` that shifts cannot change; `from` reaches `to` only
    /// when the signatures agree.
    pub fn signature(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.annihilator
            .iter()
            .map(|y| y.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// The coefficients `c` with `to = from + Σ c_k shift_k`, when they are
    /// nonnegative integers.
    pub fn reaches(&self, from: &[BigInt], to: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.shifts.is_empty() {
            return (from == to).then(Vec::new);
        }
        if from.len() != self.dim || to.len() != self.dim {
            return None;
        }
        let diff: Vec<BigInt> = to.iter().zip(from).map(|(a, b)| a - b).collect();
        let mut c = Vec::with_capacity(self.solver.len());
        for row in &self.solver {
            let scaled: BigInt = row.iter().zip(&self.pivots).map(|(a, &p)| a * &diff[p]).sum();
            if scaled.is_negative() || !scaled.is_multiple_of(&self.denom) {
                return None;
            }
            c.push(scaled / &self.denom);
        }
        let reached = (0..self.dim).all(|i| {
            let s: BigInt = self.shifts.iter().zip(&c).map(|(v, k)| &v[i] * k).sum();
            s == diff[i]
        });
        reached.then_some(c)
    }
}

/// Minimal elements of `rays` under `a <= b` iff `b - a` is a nonnegative
/// integer combination of `shifts`, sorted lexicographically. Every input
/// ray is reachable from one of them.
pub fn maximally_incident_reduce(rays: &[Vec<BigInt>], shifts: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let order = ShiftOrder::new(shifts)?;
    let mut uniq = rays.to_vec();
    uniq.sort();
    uniq.dedup();
    let mut buckets: HashMap<Vec<BigInt>, Vec<usize>> = HashMap::new();
    for (i, v) in uniq.iter().enumerate() {
        buckets.entry(order.signature(v)).or_default().push(i);
    }
    let minimal: Vec<Vec<BigInt>> = uniq
        .iter()
        .filter(|a| {
            let bucket = &buckets[&order.signature(a)];
            !bucket.iter().any(|&j| uniq[j] != **a && order.reaches(&uniq[j], a).is_some())
        })
        .cloned()
        .collect();
    Ok(minimal)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub holds: bool,
    pub residual: GradedClass,
}

/// Whether `target` equals the sum of `parts` exactly; the residual is
/// `target - Σ parts`.
pub fn decomposition_check(target: &GradedClass, parts: &[GradedClass]) -> Result<Decomposition> {
    let mut residual = target.clone();
    for p in parts {
        residual = residual.sub(p)?;
    }
    Ok(Decomposition {
        holds: residual.is_zero(),
        residual,
    })
}

/// The checkable hypotheses for passing nefness from `alpha` to `beta`:
/// `beta - alpha` is a nonnegative combination of classes supported on
/// exceptional divisors, and `beta` lies in the dual of the linear cone.
pub fn shift_certificate(
    beta: &GradedClass,
    alpha: &GradedClass,
    exceptional_parts: &[GradedClass],
    lin_dual: &RayCone,
) -> Result<bool> {
    let diff = beta.sub(alpha)?;
    for p in exceptional_parts {
        beta.space().check_same(&p.space())?;
        if p.degree() != beta.degree() {
            return Err(Error::Domain("exceptional parts must have the degree of beta".into()));
        }
    }
    let cols: Vec<Vec<Q>> = exceptional_parts.iter().map(|p| p.coords().to_vec()).collect();
    let combination = farkas(&cols, diff.coords()).is_ok();
    Ok(combination && lin_dual.contains(&primitive(beta.coords()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;
    use crate::ring::SpaceSignature;

    #[test]
    fn reduction_keeps_minimal_elements() {
        let shifts = [ints(&[0, 1, 0]), ints(&[0, 1, 1])];
        let rays = [ints(&[1, 0, 0]), ints(&[1, 1, 0]), ints(&[1, 2, 1]), ints(&[2, 0, 0]), ints(&[1, 0, 1])];
        let red = maximally_incident_reduce(&rays, &shifts).unwrap();
        assert_eq!(red, vec![ints(&[1, 0, 0]), ints(&[1, 0, 1]), ints(&[2, 0, 0])]);
        assert_eq!(maximally_incident_reduce(&rays[..1], &shifts).unwrap(), vec![ints(&[1, 0, 0])]);
        assert!(maximally_incident_reduce(&rays, &[ints(&[0, 1, 0]), ints(&[0, 2, 0])]).is_err());
    }

    #[test]
    fn decompositions() {
        let x = SpaceSignature::new(4, 2, 0).unwrap();
        let h = GradedClass::h(x);
        let e = GradedClass::line_divisor(x, 1).unwrap();
        let d = decomposition_check(&h.scale_int(2).sub(&e).unwrap(), &[h.clone(), h.sub(&e).unwrap()]).unwrap();
        assert!(d.holds);
        let d = decomposition_check(&h, std::slice::from_ref(&e)).unwrap();
        assert!(!d.holds);
        assert_eq!(d.residual, h.sub(&e).unwrap());
    }

    #[test]
    fn trivial_shift() {
        let x = SpaceSignature::new(4, 1, 0).unwrap();
        let h = GradedClass::h(x);
        let dual = RayCone::new(2, vec![ints(&[1, 0])], None).unwrap();
        assert!(shift_certificate(&h, &h, &[], &dual).unwrap());
    }
}
