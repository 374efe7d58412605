use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The Grassmannian of `a`-planes in `P^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grassmannian {
    pub a: usize,
    pub n: usize,
}

impl Grassmannian {
    pub fn new(a: usize, n: usize) -> Result<Self> {
        if a >= n {
            return Err(Error::Range(format!("G({a},{n}) needs a < n")));
        }
        Ok(Grassmannian { a, n })
    }

    pub fn rows(&self) -> usize {
        self.a + 1
    }

    pub fn cols(&self) -> usize {
        self.n - self.a
    }

    pub fn dim(&self) -> usize {
        self.rows() * self.cols()
    }

    /// The class of a point: the full box.
    pub fn point(&self) -> Partition {
        Partition(vec![self.cols(); self.rows()])
    }

    pub fn fits(&self, p: &Partition) -> bool {
        p.0.len() <= self.rows() && p.0.first().is_none_or(|&x| x <= self.cols())
    }
}

impl fmt::Display for Grassmannian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.a, self.n)
    }
}

/// A partition with its zero parts stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&x| x > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn special(p: usize) -> Self {
        Partition(if p == 0 { vec![] } else { vec![p] })
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A nonnegative integer combination of Schubert classes on one Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertExpression {
    grass: Grassmannian,
    terms: BTreeMap<Partition, BigUint>,
}

impl SchubertExpression {
    pub fn zero(grass: Grassmannian) -> Self {
        SchubertExpression { grass, terms: BTreeMap::new() }
    }

    pub fn class(grass: Grassmannian, p: Partition) -> Result<Self> {
        if !grass.fits(&p) {
            return Err(Error::Range(format!("σ{p} does not fit the box of {grass}")));
        }
        let mut e = Self::zero(grass);
        e.terms.insert(p, BigUint::one());
        Ok(e)
    }

    pub fn unit(grass: Grassmannian) -> Self {
        Self::class(grass, Partition::empty()).expect("empty partition fits")
    }

    pub fn grassmannian(&self) -> Grassmannian {
        self.grass
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigUint> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> BigUint {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grass != other.grass {
            return Err(Error::Domain(format!("{} vs {}", self.grass, other.grass)));
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            *out.terms.entry(p.clone()).or_default() += c;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        if k.is_zero() {
            return Self::zero(self.grass);
        }
        let terms = self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect();
        SchubertExpression { grass: self.grass, terms }
    }

    /// Product with the special class `σ_p` by the Pieri rule; terms leaving
    /// the box are dropped.
    pub fn pieri(&self, p: usize) -> Self {
        let mut out = Self::zero(self.grass);
        for (lambda, c) in &self.terms {
            for mu in horizontal_strips(self.grass, lambda, p) {
                *out.terms.entry(mu).or_default() += c;
            }
        }
        out
    }

    /// Repeated Pieri products, one per entry of `ps`.
    pub fn pieri_all(&self, ps: &[usize]) -> Self {
        ps.iter().fold(self.clone(), |e, &p| e.pieri(p))
    }

    /// The coefficient of the point class.
    pub fn point_coefficient(&self) -> BigUint {
        self.coefficient(&self.grass.point())
    }

    /// Codimension of the homogeneous expression, or `None` when it mixes
    /// codimensions or is zero.
    pub fn codim(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(Partition::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }
}

impl fmt::Display for SchubertExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| if c.is_one() { format!("σ{p}") } else { format!("{c}σ{p}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// All `μ ⊇ λ` in the box with `μ/λ` a horizontal strip of size `p`.
fn horizontal_strips(grass: Grassmannian, lambda: &Partition, p: usize) -> Vec<Partition> {
    let rows = grass.rows();
    let mut lam = lambda.0.clone();
    lam.resize(rows, 0);
    let mut out = Vec::new();
    let mut mu = vec![0; rows];
    fn go(i: usize, left: usize, lam: &[usize], cols: usize, mu: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == lam.len() {
            if left == 0 {
                out.push(Partition(mu.iter().copied().filter(|&x| x > 0).collect()));
            }
            return;
        }
        let cap = if i == 0 { cols } else { lam[i - 1] };
        for m in lam[i]..=cap.min(lam[i] + left) {
            mu[i] = m;
            go(i + 1, left - (m - lam[i]), lam, cols, mu, out);
        }
    }
    go(0, p, &lam, grass.cols(), &mut mu, &mut out);
    out
}

/// Plücker degree of the Schubert variety `σ_λ`: the point coefficient of
/// `σ_λ · σ_1^{dim - |λ|}`.
pub fn schubert_degree(lambda: &Partition, grass: Grassmannian) -> Result<BigUint> {
    let e = SchubertExpression::class(grass, lambda.clone())?;
    let steps = grass.dim() - lambda.size();
    Ok(e.pieri_all(&vec![1; steps]).point_coefficient())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: usize, n: usize) -> Grassmannian {
        Grassmannian::new(a, n).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pieri_base_case() {
        let e = SchubertExpression::class(g(1, 3), part(&[1])).unwrap().pieri(1);
        assert_eq!(e.to_string(), "σ{2} + σ{1,1}");
    }

    #[test]
    fn four_lines_meet_two_lines() {
        let e = SchubertExpression::unit(g(1, 3)).pieri_all(&[1, 1, 1, 1]);
        assert_eq!(e.point_coefficient(), BigUint::from(2u32));
        assert_eq!(e.to_string(), "2σ{2,2}");
    }

    #[test]
    fn planes_through_a_point_meeting_four_lines() {
        let e = SchubertExpression::class(g(2, 4), part(&[2])).unwrap().pieri_all(&[1; 4]);
        assert_eq!(e.point_coefficient(), BigUint::from(2u32));
    }

    #[test]
    fn degrees() {
        assert_eq!(schubert_degree(&Partition::empty(), g(1, 3)).unwrap(), BigUint::from(2u32));
        assert_eq!(schubert_degree(&Partition::empty(), g(2, 4)).unwrap(), BigUint::from(5u32));
        assert_eq!(schubert_degree(&Partition::empty(), g(3, 5)).unwrap(), BigUint::from(14u32));
        assert_eq!(schubert_degree(&part(&[2]), g(3, 5)).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn box_overflow_drops_terms() {
        let e = SchubertExpression::class(g(1, 3), part(&[2, 2])).unwrap().pieri(1);
        assert!(e.is_zero());
        assert!(SchubertExpression::class(g(1, 3), part(&[3])).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn display_orders_terms_descending() {
        let gr = g(2, 5);
        let e = SchubertExpression::class(gr, part(&[1, 1, 1]))
            .unwrap()
            .scale(&BigUint::from(2u32))
            .add(&SchubertExpression::class(gr, part(&[2, 1])).unwrap())
            .unwrap();
        assert_eq!(e.to_string(), "σ{2,1} + 2σ{1,1,1}");
    }
}
