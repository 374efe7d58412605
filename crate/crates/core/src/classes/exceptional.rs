//! Classes supported on exceptional divisors, and classes determined by
//! their traces on them, computed by solving the pairing system.
//!
//! Over a line, `E_i ≅ P^1 × P^m` with `m = n-2`. Its ring is generated by
//! the ruling classes `u` (pulled back from `P^1`) and `v` (from `P^m`), with
//! `u^2 = 0`, `v^{m+1} = 0`, `∫ u v^m = 1`, and `H|_E = u`, `E|_E = u - v`.
//! Computations run in the frame `w = v + c u`, so that the result can be
//! checked to be independent of `c`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{solve, transpose};
use crate::rational::{q, sign_pow, Q};
use crate::ring::{canonical_basis, pairing_matrix, Center, GradedClass, RawMonomial, SpaceSignature};

/// A polynomial in `u` and `w` on `P^1 × P^m`, stored as coefficients of
/// `w^j` and `u w^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RulingPoly {
    m: usize,
    c: Q,
    plain: Vec<Q>,
    with_u: Vec<Q>,
}

impl RulingPoly {
    fn zero_in(m: usize, c: &Q) -> Self {
        RulingPoly {
            m,
            c: c.clone(),
            plain: vec![Q::zero(); m + 2],
            with_u: vec![Q::zero(); m + 2],
        }
    }

    pub fn constant(m: usize, c: &Q, x: Q) -> Self {
        let mut p = Self::zero_in(m, c);
        p.plain[0] = x;
        p
    }

    pub fn u(m: usize, c: &Q) -> Self {
        let mut p = Self::zero_in(m, c);
        p.with_u[0] = Q::one();
        p
    }

    pub fn w(m: usize, c: &Q) -> Self {
        let mut p = Self::zero_in(m, c);
        p.plain[1] = Q::one();
        p
    }

    /// `v = w - c u`.
    pub fn v(m: usize, c: &Q) -> Self {
        Self::w(m, c).add(&Self::u(m, c).scale(&-c.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let zip = |a: &[Q], b: &[Q]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        RulingPoly {
            plain: zip(&self.plain, &o.plain),
            with_u: zip(&self.with_u, &o.with_u),
            ..self.clone()
        }
    }

    pub fn scale(&self, x: &Q) -> Self {
        RulingPoly {
            plain: self.plain.iter().map(|a| a * x).collect(),
            with_u: self.with_u.iter().map(|a| a * x).collect(),
            ..self.clone()
        }
    }

    /// Product, truncated above the dimension `m + 1` of the variety.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero_in(self.m, &self.c);
        let top = self.m + 1;
        for i in 0..=top {
            for j in 0..=top - i {
                let pp = &self.plain[i] * &o.plain[j];
                out.plain[i + j] += pp;
                if i + j < top {
                    let pu = &self.plain[i] * &o.with_u[j] + &self.with_u[i] * &o.plain[j];
                    out.with_u[i + j] += pu;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(self.m, &self.c, Q::one()), |acc, _| acc.mul(self))
    }

    /// The degree of the top-dimensional part: `∫ u w^m = 1` and
    /// `∫ w^{m+1} = (m+1) c`.
    pub fn integrate(&self) -> Q {
        &self.with_u[self.m] + &self.plain[self.m + 1] * &self.c * q(self.m as i64 + 1)
    }
}

/// Linear cycles inside `E_i ≅ P^1 × P^{n-2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineShape {
    /// `{pt} × P^d`, `0 <= d <= n-2`.
    FiberSlice(usize),
    /// `P^1 × P^{d-1}`, `1 <= d <= n-1`.
    Sweep(usize),
}

impl LineShape {
    pub fn dim(&self) -> usize {
        match *self {
            LineShape::FiberSlice(d) | LineShape::Sweep(d) => d,
        }
    }
}

/// The class in `N^{n-d}` pairing with each basis monomial `t` of `N^d` as
/// `numbers(t)`.
fn solve_for_class(
    space: &SpaceSignature,
    d: usize,
    numbers: impl Fn(&RawMonomial) -> Q,
) -> Result<GradedClass> {
    let n = space.n;
    let rhs: Vec<Q> = canonical_basis(space, d)?.iter().map(|t| numbers(&t.raw())).collect();
    let g = transpose(&pairing_matrix(space, n - d)?);
    let coords = solve(&g, &rhs).ok_or_else(|| Error::Domain("pairing system is inconsistent".into()))?;
    GradedClass::from_coords(*space, n - d, coords)
}

/// Restriction of a raw monomial to `E_line`, zero if it involves another
/// center.
fn restrict_to_line(t: &RawMonomial, line: usize, m: usize, c: &Q) -> Option<RulingPoly> {
    let e = match t.exc {
        None => 0,
        Some((Center::Line(i), e)) if i == line => e,
        Some(_) => return None,
    };
    let self_restriction = RulingPoly::u(m, c)
        .scale(&(Q::one() + c))
        .add(&RulingPoly::w(m, c).scale(&-Q::one()));
    Some(RulingPoly::u(m, c).pow(t.h).mul(&self_restriction.pow(e)))
}

fn check_line(space: &SpaceSignature, line: usize) -> Result<()> {
    if line == 0 || line > space.r {
        return Err(Error::Range(format!("line {line} does not exist on {space}")));
    }
    Ok(())
}

/// The class of a linear cycle in `E_line`, derived in the ruling frame `c`.
pub fn exceptional_line_cycle_in_frame(
    space: &SpaceSignature,
    line: usize,
    shape: LineShape,
    c: &Q,
) -> Result<GradedClass> {
    check_line(space, line)?;
    let m = space.n - 2;
    let cycle = match shape {
        LineShape::FiberSlice(d) if d <= m => RulingPoly::u(m, c).mul(&RulingPoly::w(m, c).pow(m - d)),
        LineShape::Sweep(d) if (1..=m + 1).contains(&d) => RulingPoly::v(m, c).pow(m + 1 - d),
        _ => return Err(Error::Range(format!("{shape:?} does not fit in an exceptional divisor of {space}"))),
    };
    solve_for_class(space, shape.dim(), |t| {
        restrict_to_line(t, line, m, c).map_or_else(Q::zero, |r| r.mul(&cycle).integrate())
    })
}

pub fn exceptional_line_cycle(space: &SpaceSignature, line: usize, shape: LineShape) -> Result<GradedClass> {
    exceptional_line_cycle_in_frame(space, line, shape, &Q::zero())
}

/// The class of a `d`-plane inside `e_point ≅ P^{n-1}`, where `e|_e = -h`.
pub fn exceptional_point_cycle(space: &SpaceSignature, point: usize, d: usize) -> Result<GradedClass> {
    if point == 0 || point > space.s {
        return Err(Error::Range(format!("point {point} does not exist on {space}")));
    }
    if d >= space.n {
        return Err(Error::Range(format!("a {d}-plane does not fit in an exceptional divisor of {space}")));
    }
    solve_for_class(space, d, |t| match t.exc {
        None if t.h == 0 => Q::one(),
        Some((Center::Point(j), e)) if j == point && t.h == 0 => q(sign_pow(e)),
        _ => Q::zero(),
    })
}

/// The class of a `dim`-dimensional subvariety of degree `degree` in `P^n`
/// meeting no center in a positive-dimensional family beyond what its
/// traces record. `line_traces[i]` is the class of `Z̃ ∩ E_i` as a polynomial
/// in the standard ruling frame; `point_traces[j]` the multiple of
/// `h^{n-dim}` cut on `e_j`.
pub fn class_from_traces(
    space: &SpaceSignature,
    dim: usize,
    degree: i64,
    line_traces: &[(usize, RulingPoly)],
    point_traces: &[(usize, Q)],
) -> Result<GradedClass> {
    for (i, _) in line_traces {
        check_line(space, *i)?;
    }
    let m = space.n - 2;
    let c = Q::zero();
    solve_for_class(space, dim, |t| match t.exc {
        None => q(degree),
        Some((Center::Line(i), e)) => line_traces
            .iter()
            .find(|(l, _)| *l == i)
            .map_or_else(Q::zero, |(_, tr)| {
                let rest = RawMonomial { h: t.h, exc: Some((Center::Line(i), e - 1)) };
                let r = restrict_to_line(&rest, i, m, &c).expect("same line");
                tr.mul(&r).integrate()
            }),
        Some((Center::Point(j), e)) if t.h == 0 => point_traces
            .iter()
            .find(|(p, _)| *p == j)
            .map_or_else(Q::zero, |(_, a)| a * q(sign_pow(e - 1))),
        Some(_) => Q::zero(),
    })
}

/// The trace polynomial on `P^1 × P^{n-2}` in the standard frame.
pub fn trace(space: &SpaceSignature, coeff_u_v: &[(usize, usize, i64)]) -> RulingPoly {
    let m = space.n - 2;
    let c = Q::zero();
    coeff_u_v.iter().fold(RulingPoly::constant(m, &c, Q::zero()), |acc, &(a, b, x)| {
        acc.add(
            &RulingPoly::u(m, &c)
                .pow(a)
                .mul(&RulingPoly::v(m, &c).pow(b))
                .scale(&q(x)),
        )
    })
}
