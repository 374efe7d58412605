use std::fmt;

use num_traits::{One, Zero};

use super::space::SpaceSignature;
use crate::error::{Error, Result};
use crate::rational::{q, sign_pow, Q};

/// A canonical basis monomial. Line and point indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    /// `H^k`, `0 <= k <= n`.
    Hyperplane { k: usize },
    /// `H·E_i^{k-1}`, `2 <= k <= n-1`.
    LineMixed { line: usize, k: usize },
    /// `E_i^k`, `1 <= k <= n-2`.
    LinePure { line: usize, k: usize },
    /// `e_j^k`, `1 <= k <= n-1`.
    PointPure { point: usize, k: usize },
}

impl Monomial {
    pub fn degree(&self) -> usize {
        match *self {
            Monomial::Hyperplane { k }
            | Monomial::LineMixed { k, .. }
            | Monomial::LinePure { k, .. }
            | Monomial::PointPure { k, .. } => k,
        }
    }

    pub fn raw(&self) -> RawMonomial {
        match *self {
            Monomial::Hyperplane { k } => RawMonomial { h: k, exc: None },
            Monomial::LineMixed { line, k } => RawMonomial {
                h: 1,
                exc: Some((Center::Line(line), k - 1)),
            },
            Monomial::LinePure { line, k } => RawMonomial {
                h: 0,
                exc: Some((Center::Line(line), k)),
            },
            Monomial::PointPure { point, k } => RawMonomial {
                h: 0,
                exc: Some((Center::Point(point), k)),
            },
        }
    }

    /// The fixed JSON spelling: `1`, `H`, `H^2`, `H*E1`, `H*E1^2`, `E1`,
    /// `E1^2`, `e1`, `e1^3`.
    pub fn key(&self) -> String {
        fn pow(base: String, e: usize) -> String {
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        }
        match *self {
            Monomial::Hyperplane { k: 0 } => "1".into(),
            Monomial::Hyperplane { k } => pow("H".into(), k),
            Monomial::LineMixed { line, k } => format!("H*{}", pow(format!("E{line}"), k - 1)),
            Monomial::LinePure { line, k } => pow(format!("E{line}"), k),
            Monomial::PointPure { point, k } => pow(format!("e{point}"), k),
        }
    }

    pub fn parse(key: &str) -> Result<Monomial> {
        let bad = || Error::Parse(format!("unknown monomial key {key:?}"));
        let split_pow = |s: &str| -> Result<(String, usize)> {
            match s.split_once('^') {
                Some((b, e)) => Ok((b.to_string(), e.parse().map_err(|_| bad())?)),
                None => Ok((s.to_string(), 1)),
            }
        };
        let index = |s: &str| -> Result<usize> {
            let i: usize = s.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            Ok(i)
        };
        if key == "1" {
            return Ok(Monomial::Hyperplane { k: 0 });
        }
        if let Some(rest) = key.strip_prefix("H*") {
            let (base, e) = split_pow(rest)?;
            let line = index(base.strip_prefix('E').ok_or_else(bad)?)?;
            return Ok(Monomial::LineMixed { line, k: e + 1 });
        }
        let (base, e) = split_pow(key)?;
        if base == "H" {
            Ok(Monomial::Hyperplane { k: e })
        } else if let Some(i) = base.strip_prefix('E') {
            Ok(Monomial::LinePure { line: index(i)?, k: e })
        } else if let Some(j) = base.strip_prefix('e') {
            Ok(Monomial::PointPure { point: index(j)?, k: e })
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// A blowup center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Center {
    Line(usize),
    Point(usize),
}

/// An unreduced monomial `H^h · X^e` with at most one exceptional generator
/// `X`. Monomials mixing distinct exceptional generators are always zero and
/// are never materialised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RawMonomial {
    pub h: usize,
    pub exc: Option<(Center, usize)>,
}

impl RawMonomial {
    pub fn degree(&self) -> usize {
        self.h + self.exc.map_or(0, |(_, e)| e)
    }

    /// Product of two monomials, `None` when it vanishes because two distinct
    /// exceptional generators meet.
    pub fn mul(&self, other: &RawMonomial) -> Option<RawMonomial> {
        let exc = match (self.exc, other.exc) {
            (None, x) | (x, None) => x,
            (Some((c1, e1)), Some((c2, e2))) => {
                if c1 != c2 {
                    return None;
                }
                Some((c1, e1 + e2))
            }
        };
        Some(RawMonomial {
            h: self.h + other.h,
            exc: exc.filter(|&(_, e)| e > 0),
        })
    }

    /// Rewrites to canonical monomials. Returns `(monomial, coefficient)`
    /// pairs; an empty list is the zero class (including every degree above
    /// `n`).
    pub fn reduce(&self, n: usize) -> Vec<(Monomial, Q)> {
        let deg = self.degree();
        if deg > n {
            return vec![];
        }
        let hn = Monomial::Hyperplane { k: n };
        match self.exc {
            None => vec![(Monomial::Hyperplane { k: self.h }, Q::one())],
            Some((Center::Line(line), b)) => match self.h {
                0 if b <= n - 2 => vec![(Monomial::LinePure { line, k: b }, Q::one())],
                0 if b == n - 1 => vec![
                    (Monomial::Hyperplane { k: n - 1 }, q(sign_pow(n))),
                    (Monomial::LineMixed { line, k: n - 1 }, q(n as i64 - 1)),
                ],
                0 => vec![(hn, q(sign_pow(n) * (n as i64 - 1)))],
                1 if b <= n - 2 => vec![(Monomial::LineMixed { line, k: b + 1 }, Q::one())],
                1 => vec![(hn, q(sign_pow(n)))],
                _ => vec![],
            },
            Some((Center::Point(point), c)) => match self.h {
                0 if c < n => vec![(Monomial::PointPure { point, k: c }, Q::one())],
                0 => vec![(hn, q(sign_pow(n - 1)))],
                _ => vec![],
            },
        }
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect()
    }
}

/// The canonical basis of `N^k(X^n_{r,s})`, ordered `H^k`, then `H E_i^{k-1}`
/// by `i`, then `E_i^k` by `i`, then `e_j^k` by `j`.
pub fn canonical_basis(space: &SpaceSignature, k: usize) -> Result<Vec<Monomial>> {
    let SpaceSignature { n, r, s } = *space;
    if k > n {
        return Err(Error::Range(format!("degree {k} outside [0, {n}]")));
    }
    let mut basis = vec![Monomial::Hyperplane { k }];
    if k == 0 || k == n {
        return Ok(basis);
    }
    if (2..=n - 1).contains(&k) {
        basis.extend((1..=r).map(|line| Monomial::LineMixed { line, k }));
    }
    if (1..=n.saturating_sub(2)).contains(&k) {
        basis.extend((1..=r).map(|line| Monomial::LinePure { line, k }));
    }
    basis.extend((1..=s).map(|point| Monomial::PointPure { point, k }));
    Ok(basis)
}

/// Position of `m` in `canonical_basis(space, m.degree())`.
pub fn basis_index(space: &SpaceSignature, m: &Monomial) -> Option<usize> {
    let SpaceSignature { n, r, s } = *space;
    let k = m.degree();
    if k > n {
        return None;
    }
    let mixed = if (2..n).contains(&k) { r } else { 0 };
    let pure = if k >= 1 && k + 2 <= n { r } else { 0 };
    match *m {
        Monomial::Hyperplane { .. } => Some(0),
        Monomial::LineMixed { line, k } if (1..=r).contains(&line) && (2..n).contains(&k) => {
            Some(line)
        }
        Monomial::LinePure { line, k } if (1..=r).contains(&line) && k >= 1 && k + 2 <= n => {
            Some(1 + mixed + line - 1)
        }
        Monomial::PointPure { point, k } if (1..=s).contains(&point) && (1..n).contains(&k) => {
            Some(1 + mixed + pure + point - 1)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(space: SpaceSignature, k: usize) -> Vec<String> {
        canonical_basis(&space, k).unwrap().iter().map(Monomial::key).collect()
    }

    #[test]
    fn basis_of_x44_in_degree_two() {
        let b = keys(SpaceSignature::new(4, 4, 0).unwrap(), 2);
        assert_eq!(b.len(), 9);
        assert_eq!(
            b,
            ["H^2", "H*E1", "H*E2", "H*E3", "H*E4", "E1^2", "E2^2", "E3^2", "E4^2"]
        );
    }

    #[test]
    fn basis_of_x322_in_degree_two() {
        // n = 3: the pure band 2 <= k <= n-2 is empty.
        let b = keys(SpaceSignature::new(3, 2, 2).unwrap(), 2);
        assert_eq!(b, ["H^2", "H*E1", "H*E2", "e1^2", "e2^2"]);
    }

    #[test]
    fn degree_zero_and_top() {
        let x = SpaceSignature::new(5, 3, 2).unwrap();
        assert_eq!(keys(x, 0), ["1"]);
        assert_eq!(keys(x, 5), ["H^5"]);
        assert_eq!(keys(x, 1), ["H", "E1", "E2", "E3", "e1", "e2"]);
        assert_eq!(keys(x, 4), ["H^4", "H*E1^3", "H*E2^3", "H*E3^3", "e1^4", "e2^4"]);
        assert!(canonical_basis(&x, 6).is_err());
    }

    #[test]
    fn index_matches_position_and_keys_roundtrip() {
        for (n, r, s) in [(3, 2, 2), (4, 3, 1), (5, 2, 3), (6, 1, 2)] {
            let x = SpaceSignature::new(n, r, s).unwrap();
            for k in 0..=n {
                for (i, m) in canonical_basis(&x, k).unwrap().iter().enumerate() {
                    assert_eq!(basis_index(&x, m), Some(i), "{m} in {x}");
                    assert_eq!(Monomial::parse(&m.key()).unwrap(), *m);
                }
            }
        }
    }

    #[test]
    fn rewriting_top_relations() {
        // E^{n-1} on X^4: H^3 + 3 H E^2.
        let e3 = RawMonomial { h: 0, exc: Some((Center::Line(1), 3)) }.reduce(4);
        assert_eq!(
            e3,
            vec![
                (Monomial::Hyperplane { k: 3 }, q(1)),
                (Monomial::LineMixed { line: 1, k: 3 }, q(3))
            ]
        );
        let e5 = RawMonomial { h: 0, exc: Some((Center::Point(2), 5)) }.reduce(5);
        assert_eq!(e5, vec![(Monomial::Hyperplane { k: 5 }, q(1))]);
        assert!(RawMonomial { h: 2, exc: Some((Center::Line(1), 1)) }.reduce(5).is_empty());
        assert!(RawMonomial { h: 1, exc: Some((Center::Point(1), 1)) }.reduce(5).is_empty());
        assert!(RawMonomial { h: 6, exc: None }.reduce(5).is_empty());
    }
}
