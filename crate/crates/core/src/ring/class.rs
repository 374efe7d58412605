use std::fmt;

use num_traits::{One, Zero};

use super::monomial::{basis_index, canonical_basis, Center, Monomial, RawMonomial};
use super::space::SpaceSignature;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};

/// A numerical class in `N^k(X^n_{r,s})`: exact coordinates over
/// [`canonical_basis`]. Classes of degree above `n` are the zero class and
/// carry no coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedClass {
    space: SpaceSignature,
    degree: usize,
    coords: Vec<Q>,
}

impl GradedClass {
    pub fn zero(space: SpaceSignature, degree: usize) -> Self {
        let len = if degree > space.n {
            0
        } else {
            canonical_basis(&space, degree).map_or(0, |b| b.len())
        };
        GradedClass {
            space,
            degree,
            coords: vec![Q::zero(); len],
        }
    }

    pub fn from_coords(space: SpaceSignature, degree: usize, coords: Vec<Q>) -> Result<Self> {
        let basis = canonical_basis(&space, degree)?;
        if basis.len() != coords.len() {
            return Err(Error::Domain(format!(
                "expected {} coordinates in degree {degree} on {space}, got {}",
                basis.len(),
                coords.len()
            )));
        }
        Ok(GradedClass { space, degree, coords })
    }

    /// Sum of `coefficient · monomial` terms, all of degree `degree`.
    pub fn from_terms(
        space: SpaceSignature,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, Q)>,
    ) -> Result<Self> {
        let mut c = GradedClass::zero(space, degree);
        canonical_basis(&space, degree)?;
        for (m, x) in terms {
            if m.degree() != degree {
                return Err(Error::Domain(format!("{m} does not have degree {degree}")));
            }
            let i = basis_index(&space, &m)
                .ok_or_else(|| Error::Range(format!("{m} is not a basis monomial on {space}")))?;
            c.coords[i] += x;
        }
        Ok(c)
    }

    pub fn monomial(space: SpaceSignature, m: Monomial) -> Result<Self> {
        Self::from_terms(space, m.degree(), [(m, Q::one())])
    }

    /// The reduction of an arbitrary raw monomial, checking indices.
    pub fn raw(space: SpaceSignature, m: RawMonomial) -> Result<Self> {
        if let Some((c, _)) = m.exc {
            let ok = match c {
                Center::Line(i) => (1..=space.r).contains(&i),
                Center::Point(j) => (1..=space.s).contains(&j),
            };
            if !ok {
                return Err(Error::Range(format!("{c:?} does not exist on {space}")));
            }
        }
        let mut out = GradedClass::zero(space, m.degree());
        for (mono, x) in m.reduce(space.n) {
            let i = basis_index(&space, &mono).expect("reduction yields basis monomials");
            out.coords[i] += x;
        }
        Ok(out)
    }

    pub fn h(space: SpaceSignature) -> Self {
        Self::monomial(space, Monomial::Hyperplane { k: 1 }).expect("H exists")
    }

    pub fn one(space: SpaceSignature) -> Self {
        Self::monomial(space, Monomial::Hyperplane { k: 0 }).expect("1 exists")
    }

    /// The exceptional divisor `E_i` (1-based).
    pub fn line_divisor(space: SpaceSignature, i: usize) -> Result<Self> {
        Self::raw(space, RawMonomial { h: 0, exc: Some((Center::Line(i), 1)) })
    }

    /// The exceptional divisor `e_j` (1-based).
    pub fn point_divisor(space: SpaceSignature, j: usize) -> Result<Self> {
        Self::raw(space, RawMonomial { h: 0, exc: Some((Center::Point(j), 1)) })
    }

    pub fn space(&self) -> SpaceSignature {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// True for the capped zero class of degree above `n`.
    pub fn is_beyond_top(&self) -> bool {
        self.degree > self.space.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn basis(&self) -> Vec<Monomial> {
        if self.is_beyond_top() {
            return vec![];
        }
        canonical_basis(&self.space, self.degree).expect("degree checked")
    }

    /// Nonzero `(monomial, coefficient)` terms in basis order.
    pub fn terms(&self) -> Vec<(Monomial, Q)> {
        self.basis()
            .into_iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        if m.degree() != self.degree {
            return Q::zero();
        }
        basis_index(&self.space, m).map_or_else(Q::zero, |i| self.coords[i].clone())
    }

    fn check_compatible(&self, other: &GradedClass) -> Result<()> {
        self.space.check_same(&other.space)?;
        if self.degree != other.degree {
            return Err(Error::Domain(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass> {
        self.check_compatible(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(GradedClass { coords, ..self.clone() })
    }

    pub fn sub(&self, other: &GradedClass) -> Result<GradedClass> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, x: &Q) -> GradedClass {
        GradedClass {
            coords: self.coords.iter().map(|c| c * x).collect(),
            ..self.clone()
        }
    }

    pub fn scale_int(&self, x: i64) -> GradedClass {
        self.scale(&q(x))
    }

    /// Sum of a nonempty family of compatible classes.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a GradedClass>) -> Result<GradedClass> {
        let mut it = items.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Domain("empty sum has no degree".into()))?
            .clone();
        it.try_fold(first, |acc, c| acc.add(c))
    }

    /// The intersection product. Degrees above `n` give the capped zero
    /// class.
    pub fn multiply(&self, other: &GradedClass) -> Result<GradedClass> {
        self.space.check_same(&other.space)?;
        let degree = self.degree + other.degree;
        let mut out = GradedClass::zero(self.space, degree);
        if out.is_beyond_top() {
            return Ok(out);
        }
        let (ba, bb) = (self.basis(), other.basis());
        for (ma, ca) in ba.iter().zip(&self.coords) {
            if ca.is_zero() {
                continue;
            }
            for (mb, cb) in bb.iter().zip(&other.coords) {
                if cb.is_zero() {
                    continue;
                }
                let Some(raw) = ma.raw().mul(&mb.raw()) else {
                    continue;
                };
                let coeff = ca * cb;
                for (m, x) in raw.reduce(self.space.n) {
                    let i = basis_index(&self.space, &m).expect("reduced monomial");
                    out.coords[i] += &coeff * x;
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, m: usize) -> Result<GradedClass> {
        let mut acc = GradedClass::one(self.space);
        for _ in 0..m {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// The degree (integration) map on `N^n`: the coefficient of `H^n`.
    pub fn top_degree(&self) -> Result<Q> {
        if self.degree != self.space.n {
            return Err(Error::Domain(format!(
                "degree map needs a class of degree {}, got {}",
                self.space.n, self.degree
            )));
        }
        Ok(self.coords[0].clone())
    }

    /// The intersection pairing `N^k × N^{n-k} → Q`.
    pub fn pair(&self, other: &GradedClass) -> Result<Q> {
        self.space.check_same(&other.space)?;
        if self.degree + other.degree != self.space.n {
            return Err(Error::Domain(format!(
                "pairing needs complementary degrees, got {} + {} on {}",
                self.degree, other.degree, self.space
            )));
        }
        self.multiply(other)?.top_degree()
    }

    /// `D^n` for a divisor class `D`.
    pub fn self_intersection_number(&self) -> Result<Q> {
        if self.degree != 1 {
            return Err(Error::Domain("self-intersection number needs a divisor".into()));
        }
        self.power(self.space.n)?.top_degree()
    }

    /// Pushforward along the blowdown forgetting lines `r' + 1..=r` and points
    /// `s' + 1..=s`: coordinates on forgotten generators are dropped.
    pub fn pushforward(&self, target: SpaceSignature) -> Result<GradedClass> {
        if target.n != self.space.n || target.r > self.space.r || target.s > self.space.s {
            return Err(Error::Domain(format!("cannot push {} forward to {target}", self.space)));
        }
        let terms = self.terms().into_iter().filter(|(m, _)| keeps(m, &target));
        GradedClass::from_terms(target, self.degree, terms)
    }

    /// Pullback along the blowdown `source → self.space()`: every monomial maps
    /// to the same-named monomial.
    pub fn pullback(&self, source: SpaceSignature) -> Result<GradedClass> {
        if source.n != self.space.n || source.r < self.space.r || source.s < self.space.s {
            return Err(Error::Domain(format!("cannot pull {} back to {source}", self.space)));
        }
        GradedClass::from_terms(source, self.degree, self.terms())
    }

    /// Renames line `i` to `line_perm[i-1]` and point `j` to `point_perm[j-1]`.
    pub fn relabel(&self, line_perm: &[usize], point_perm: &[usize]) -> Result<GradedClass> {
        let valid = |p: &[usize], len: usize| {
            let mut seen = vec![false; len];
            p.len() == len
                && p.iter().all(|&i| (1..=len).contains(&i) && !std::mem::replace(&mut seen[i - 1], true))
        };
        if !valid(line_perm, self.space.r) || !valid(point_perm, self.space.s) {
            return Err(Error::Domain("relabeling must be a permutation of the indices".into()));
        }
        let terms = self.terms().into_iter().map(|(m, c)| {
            let m = match m {
                Monomial::LineMixed { line, k } => Monomial::LineMixed { line: line_perm[line - 1], k },
                Monomial::LinePure { line, k } => Monomial::LinePure { line: line_perm[line - 1], k },
                Monomial::PointPure { point, k } => {
                    Monomial::PointPure { point: point_perm[point - 1], k }
                }
                h => h,
            };
            (m, c)
        });
        GradedClass::from_terms(self.space, self.degree, terms)
    }
}

fn keeps(m: &Monomial, target: &SpaceSignature) -> bool {
    match *m {
        Monomial::Hyperplane { .. } => true,
        Monomial::LineMixed { line, .. } | Monomial::LinePure { line, .. } => line <= target.r,
        Monomial::PointPure { point, .. } => point <= target.s,
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}

/// The canonical class `K = -(n+1)H + (n-2)ΣE_i + (n-1)Σe_j`.
pub fn canonical_class(space: SpaceSignature) -> GradedClass {
    let n = space.n as i64;
    let mut terms = vec![(Monomial::Hyperplane { k: 1 }, q(-(n + 1)))];
    terms.extend((1..=space.r).map(|line| (Monomial::LinePure { line, k: 1 }, q(n - 2))));
    terms.extend((1..=space.s).map(|point| (Monomial::PointPure { point, k: 1 }, q(n - 1))));
    GradedClass::from_terms(space, 1, terms).expect("divisor basis")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, r: usize, s: usize) -> SpaceSignature {
        SpaceSignature::new(n, r, s).unwrap()
    }

    fn sum_e(space: SpaceSignature) -> GradedClass {
        (1..=space.r).fold(GradedClass::zero(space, 1), |acc, i| {
            acc.add(&GradedClass::line_divisor(space, i).unwrap()).unwrap()
        })
    }

    #[test]
    fn quadric_square_on_x55() {
        let x = sp(5, 5, 0);
        let d = GradedClass::h(x).scale_int(2).sub(&sum_e(x)).unwrap();
        let d2 = d.multiply(&d).unwrap();
        let mut expected = vec![(Monomial::Hyperplane { k: 2 }, q(4))];
        for i in 1..=5 {
            expected.push((Monomial::LineMixed { line: i, k: 2 }, q(-4)));
            expected.push((Monomial::LinePure { line: i, k: 2 }, q(1)));
        }
        assert_eq!(d2, GradedClass::from_terms(x, 2, expected).unwrap());
    }

    #[test]
    fn distinct_exceptionals_vanish() {
        let x = sp(4, 2, 1);
        let e1 = GradedClass::line_divisor(x, 1).unwrap();
        let e2 = GradedClass::line_divisor(x, 2).unwrap();
        let p1 = GradedClass::point_divisor(x, 1).unwrap();
        assert!(e1.multiply(&e2).unwrap().is_zero());
        assert!(e1.multiply(&p1).unwrap().is_zero());
        assert!(GradedClass::h(x).multiply(&p1).unwrap().is_zero());
    }

    #[test]
    fn cube_of_line_divisor_on_x4() {
        let x = sp(4, 1, 0);
        let e = GradedClass::line_divisor(x, 1).unwrap();
        let expected = GradedClass::from_terms(
            x,
            3,
            [
                (Monomial::Hyperplane { k: 3 }, q(1)),
                (Monomial::LineMixed { line: 1, k: 3 }, q(3)),
            ],
        )
        .unwrap();
        assert_eq!(e.power(3).unwrap(), expected);
    }

    #[test]
    fn top_degree_table() {
        let x = sp(4, 1, 1);
        assert_eq!(GradedClass::h(x).power(4).unwrap().top_degree().unwrap(), q(1));
        let e = GradedClass::line_divisor(x, 1).unwrap();
        assert_eq!(e.power(4).unwrap().top_degree().unwrap(), q(3));
        let p = GradedClass::point_divisor(x, 1).unwrap();
        assert_eq!(p.power(4).unwrap().top_degree().unwrap(), q(-1));
        assert!(e.top_degree().is_err());
    }

    #[test]
    fn degree_above_top_is_capped_zero() {
        let x = sp(3, 1, 0);
        let h2 = GradedClass::h(x).power(2).unwrap();
        let h4 = h2.multiply(&h2).unwrap();
        assert!(h4.is_beyond_top());
        assert!(h4.is_zero());
        assert_eq!(h4.degree(), 4);
    }

    #[test]
    fn mismatches_are_domain_errors() {
        let a = GradedClass::h(sp(4, 1, 0));
        let b = GradedClass::h(sp(4, 2, 0));
        assert!(matches!(a.multiply(&b), Err(Error::Domain(_))));
        assert!(matches!(a.add(&a.power(2).unwrap()), Err(Error::Domain(_))));
        assert!(matches!(a.pair(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn self_intersections() {
        for r in 0..=10 {
            let x = sp(4, r, 0);
            let d = GradedClass::h(x).scale_int(3).sub(&sum_e(x)).unwrap();
            assert_eq!(d.self_intersection_number().unwrap(), q(81 - 9 * r as i64));
        }
        let x = sp(4, 5, 0);
        let d = GradedClass::h(x).scale_int(5).sub(&sum_e(x).scale_int(2)).unwrap();
        assert_eq!(d.self_intersection_number().unwrap(), q(65));
    }

    #[test]
    fn push_and_pull() {
        let x44 = sp(4, 4, 0);
        let x41 = sp(4, 1, 0);
        let f = |i| GradedClass::monomial(x44, Monomial::LineMixed { line: i, k: 2 }).unwrap();
        let h2 = GradedClass::h(x44).power(2).unwrap();
        let c = h2.sub(&f(1).scale_int(2)).unwrap().sub(&f(2)).unwrap();
        let pushed = c.pushforward(x41).unwrap();
        let h2_1 = GradedClass::h(x41).power(2).unwrap();
        let f1 = GradedClass::monomial(x41, Monomial::LineMixed { line: 1, k: 2 }).unwrap();
        assert_eq!(pushed, h2_1.sub(&f1.scale_int(2)).unwrap());
        assert_eq!(pushed.pullback(x44).unwrap().pushforward(x41).unwrap(), pushed);
        let e4sq = GradedClass::monomial(x44, Monomial::LinePure { line: 4, k: 2 }).unwrap();
        assert!(e4sq.pushforward(sp(4, 3, 0)).unwrap().is_zero());
        assert!(pushed.pushforward(x44).is_err());
        assert!(c.pullback(x41).is_err());
    }

    #[test]
    fn canonical_classes() {
        let x = sp(4, 5, 0);
        let minus_k = canonical_class(x).scale_int(-1);
        let expected = GradedClass::h(x).scale_int(5).sub(&sum_e(x).scale_int(2)).unwrap();
        assert_eq!(minus_k, expected);
        let x = sp(3, 0, 2);
        let expected = GradedClass::h(x).scale_int(4).sub(
            &GradedClass::point_divisor(x, 1)
                .unwrap()
                .add(&GradedClass::point_divisor(x, 2).unwrap())
                .unwrap()
                .scale_int(2),
        );
        assert_eq!(canonical_class(x).scale_int(-1), expected.unwrap());
    }

    #[test]
    fn display() {
        let x = sp(4, 1, 0);
        let e = GradedClass::line_divisor(x, 1).unwrap();
        assert_eq!(e.power(3).unwrap().to_string(), "H^3 + 3*H*E1^2");
        assert_eq!(GradedClass::zero(x, 2).to_string(), "0");
    }
}
