use num_traits::Zero;

use super::monomial::{canonical_basis, Monomial};
use super::signed::monomial_sign;
use super::space::SpaceSignature;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::rational::Q;

/// The top-degree number of a product of two basis monomials.
pub(crate) fn monomial_pairing(space: &SpaceSignature, a: &Monomial, b: &Monomial) -> Q {
    let Some(raw) = a.raw().mul(&b.raw()) else {
        return Q::zero();
    };
    raw.reduce(space.n)
        .into_iter()
        .find(|(m, _)| *m == Monomial::Hyperplane { k: space.n })
        .map_or_else(Q::zero, |(_, x)| x)
}

/// The pairing `N^k × N^{n-k} → Q` over the canonical bases; rows index
/// `N^k`, columns `N^{n-k}`.
pub fn pairing_matrix(space: &SpaceSignature, k: usize) -> Result<Matrix> {
    let rows = canonical_basis(space, k)?;
    let cols = canonical_basis(space, space.n - k)?;
    Ok(rows
        .iter()
        .map(|a| cols.iter().map(|b| monomial_pairing(space, a, b)).collect())
        .collect())
}

/// As [`pairing_matrix`] but over the signed display bases.
pub fn signed_pairing_matrix(space: &SpaceSignature, k: usize) -> Result<Matrix> {
    let rows = canonical_basis(space, k)?;
    let cols = canonical_basis(space, space.n - k)?;
    Ok(rows
        .iter()
        .map(|a| {
            cols.iter()
                .map(|b| {
                    monomial_pairing(space, a, b)
                        * Q::from_integer((monomial_sign(a) * monomial_sign(b)).into())
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn x4_codim2_block() {
        let x = SpaceSignature::new(4, 1, 0).unwrap();
        assert_eq!(
            signed_pairing_matrix(&x, 2).unwrap(),
            m(&[&[1, 0, 0], &[0, 0, -1], &[0, -1, 3]])
        );
    }

    #[test]
    fn x5_codim2_block() {
        let x = SpaceSignature::new(5, 1, 0).unwrap();
        assert_eq!(
            signed_pairing_matrix(&x, 2).unwrap(),
            m(&[&[1, 0, 0], &[0, 0, -1], &[0, -1, 4]])
        );
    }

    #[test]
    fn nonsingular_small() {
        let x = SpaceSignature::new(3, 2, 2).unwrap();
        for k in 0..=3 {
            assert!(!determinant(&pairing_matrix(&x, k).unwrap()).is_zero());
        }
    }
}
