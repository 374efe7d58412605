use std::fmt;

use super::class::GradedClass;
use super::monomial::{canonical_basis, Monomial};
use super::space::SpaceSignature;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, sign_pow, Q};

/// The display conventions for signed coordinates. Signs are chosen so that
/// effective cycles inside exceptional divisors get nonnegative coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `H, E_i, e_j`.
    Divisor,
    /// `l = H^{n-1}`, `l_i` a line in `E_i`, and a line in each `e_j`.
    Curve,
    /// `H^2, F_i = H E_i, G_i = -E_i^2`.
    Codim2,
    /// `H^3, f_i = -H E_i^2, g_i = E_i^3`.
    Codim3,
    /// Signed monomials in every other degree.
    Generic,
}

impl Convention {
    pub fn for_degree(space: &SpaceSignature, k: usize) -> Convention {
        match k {
            1 => Convention::Divisor,
            k if k + 1 == space.n => Convention::Curve,
            2 => Convention::Codim2,
            3 => Convention::Codim3,
            _ => Convention::Generic,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Convention::Divisor => "divisor",
            Convention::Curve => "curve",
            Convention::Codim2 => "codim2",
            Convention::Codim3 => "codim3",
            Convention::Generic => "generic",
        }
    }
}

/// The sign relating a signed basis vector to its canonical monomial.
pub fn monomial_sign(m: &Monomial) -> i64 {
    match *m {
        Monomial::Hyperplane { .. } => 1,
        Monomial::LineMixed { k, .. } => sign_pow(k),
        Monomial::LinePure { k, .. } | Monomial::PointPure { k, .. } => sign_pow(k + 1),
    }
}

pub fn signed_basis_signs(space: &SpaceSignature, k: usize) -> Result<Vec<i64>> {
    Ok(canonical_basis(space, k)?.iter().map(monomial_sign).collect())
}

/// Column headers for signed coordinates, e.g. `H^2 F1 F2 G1 G2`.
pub fn signed_basis_labels(space: &SpaceSignature, k: usize) -> Result<Vec<String>> {
    let conv = Convention::for_degree(space, k);
    Ok(canonical_basis(space, k)?
        .iter()
        .map(|m| {
            let named = match (conv, *m) {
                (Convention::Curve, Monomial::Hyperplane { .. }) => Some("l".to_string()),
                (Convention::Curve, Monomial::LineMixed { line, .. }) => Some(format!("l{line}")),
                (Convention::Codim2, Monomial::LineMixed { line, .. }) => Some(format!("F{line}")),
                (Convention::Codim2, Monomial::LinePure { line, .. }) => Some(format!("G{line}")),
                (Convention::Codim3, Monomial::LineMixed { line, .. }) => Some(format!("f{line}")),
                (Convention::Codim3, Monomial::LinePure { line, .. }) => Some(format!("g{line}")),
                _ => None,
            };
            named.unwrap_or_else(|| {
                if monomial_sign(m) < 0 {
                    format!("-{}", m.key())
                } else {
                    m.key()
                }
            })
        })
        .collect())
}

/// A class in signed display coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedClass {
    pub space: SpaceSignature,
    pub degree: usize,
    pub convention: Convention,
    pub coords: Vec<Q>,
}

impl SignedClass {
    pub fn from_class(c: &GradedClass) -> Result<SignedClass> {
        let signs = signed_basis_signs(&c.space(), c.degree())?;
        Ok(SignedClass {
            space: c.space(),
            degree: c.degree(),
            convention: Convention::for_degree(&c.space(), c.degree()),
            coords: c.coords().iter().zip(signs).map(|(x, s)| x * Q::from_integer(s.into())).collect(),
        })
    }

    pub fn new(space: SpaceSignature, degree: usize, coords: Vec<Q>) -> Result<SignedClass> {
        let len = canonical_basis(&space, degree)?.len();
        if coords.len() != len {
            return Err(Error::Domain(format!(
                "expected {len} signed coordinates in degree {degree} on {space}, got {}",
                coords.len()
            )));
        }
        Ok(SignedClass {
            space,
            degree,
            convention: Convention::for_degree(&space, degree),
            coords,
        })
    }

    pub fn from_ints(space: SpaceSignature, degree: usize, coords: &[i64]) -> Result<SignedClass> {
        Self::new(space, degree, coords.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn to_class(&self) -> Result<GradedClass> {
        let signs = signed_basis_signs(&self.space, self.degree)?;
        let coords = self.coords.iter().zip(signs).map(|(x, s)| x * Q::from_integer(s.into())).collect();
        GradedClass::from_coords(self.space, self.degree, coords)
    }
}

impl fmt::Display for SignedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn labels() {
        let x = SpaceSignature::new(4, 2, 1).unwrap();
        assert_eq!(signed_basis_labels(&x, 2).unwrap(), ["H^2", "F1", "F2", "G1", "G2", "-e1^2"]);
        assert_eq!(signed_basis_labels(&x, 3).unwrap(), ["l", "l1", "l2", "e1^3"]);
        assert_eq!(signed_basis_labels(&x, 1).unwrap(), ["H", "E1", "E2", "e1"]);
        let x = SpaceSignature::new(5, 1, 0).unwrap();
        assert_eq!(signed_basis_labels(&x, 3).unwrap(), ["H^3", "f1", "g1"]);
    }

    #[test]
    fn signed_roundtrip_and_values() {
        let x = SpaceSignature::new(4, 1, 0).unwrap();
        let g = GradedClass::monomial(x, Monomial::LinePure { line: 1, k: 2 }).unwrap();
        let s = SignedClass::from_class(&g).unwrap();
        assert_eq!(s.coords, vec![q(0), q(0), q(-1)]);
        assert_eq!(s.to_class().unwrap(), g);
        assert_eq!(s.to_string(), "(0 0 -1)");
    }
}
