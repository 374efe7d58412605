use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::SpaceSignature;

/// How a `d`-dimensional subvariety of `P^n` sits relative to the blowup
/// centers: lines it contains (`C`), lines it meets in a point (`T`), and
/// points it passes through (`P`). Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncidenceProfile {
    pub space: SpaceSignature,
    pub dim: usize,
    pub contains: BTreeSet<usize>,
    pub meets: BTreeSet<usize>,
    pub points: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub expected_dim: i64,
    pub span_ok: bool,
}

impl IncidenceProfile {
    pub fn new(
        space: SpaceSignature,
        dim: usize,
        contains: impl IntoIterator<Item = usize>,
        meets: impl IntoIterator<Item = usize>,
        points: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let p = IncidenceProfile {
            space,
            dim,
            contains: contains.into_iter().collect(),
            meets: meets.into_iter().collect(),
            points: points.into_iter().collect(),
        };
        if dim >= space.n {
            return Err(Error::Range(format!("dimension {dim} must be below n = {}", space.n)));
        }
        let bad_line = p.contains.iter().chain(&p.meets).find(|&&i| i == 0 || i > space.r);
        if let Some(i) = bad_line {
            return Err(Error::Range(format!("line {i} does not exist on {space}")));
        }
        if let Some(j) = p.points.iter().find(|&&j| j == 0 || j > space.s) {
            return Err(Error::Range(format!("point {j} does not exist on {space}")));
        }
        if let Some(i) = p.contains.intersection(&p.meets).next() {
            return Err(Error::Domain(format!("line {i} is both contained and met")));
        }
        Ok(p)
    }

    /// A general `d`-plane with no incidence.
    pub fn general(space: SpaceSignature, dim: usize) -> Result<Self> {
        Self::new(space, dim, [], [], [])
    }

    pub fn codim(&self) -> usize {
        self.space.n - self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.contains.is_empty() && self.meets.is_empty() && self.points.is_empty()
    }

    /// Dimension of the linear span of the contained lines and points.
    pub fn contained_span(&self) -> Option<usize> {
        if self.contains.is_empty() && self.points.is_empty() {
            return None;
        }
        Some(self.space.n.min(2 * self.contains.len() + self.points.len() - 1))
    }

    /// Whether the proper transform is a genuine `d`-dimensional cycle: a
    /// point may not lie on any center, and a line may not be a center.
    pub fn is_degenerate(&self) -> bool {
        (self.dim == 0 && !self.is_empty()) || (self.dim == 1 && !self.contains.is_empty())
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, name: &str, s: &BTreeSet<usize>) -> fmt::Result {
    if s.is_empty() {
        return Ok(());
    }
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    write!(f, " {name}={{{}}}", items.join(","))
}

impl fmt::Display for IncidenceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            0 => f.write_str("point")?,
            1 => f.write_str("line")?,
            2 => f.write_str("plane")?,
            d => write!(f, "{d}-plane")?,
        }
        fmt_set(f, "C", &self.contains)?;
        fmt_set(f, "T", &self.meets)?;
        fmt_set(f, "P", &self.points)
    }
}

/// Dimension count for `d`-planes with the given incidences: the
/// Grassmannian `G(d, n)` minus `2(n-d)` per contained line, `n-d-1` per met
/// line and `n-d` per contained point, together with the span condition.
pub fn feasible_profile(p: &IncidenceProfile) -> Feasibility {
    let (n, d) = (p.space.n as i64, p.dim as i64);
    let cost = 2 * (n - d) * p.contains.len() as i64
        + (n - d - 1) * p.meets.len() as i64
        + (n - d) * p.points.len() as i64;
    let expected_dim = (d + 1) * (n - d) - cost;
    let span_ok = p.contained_span().is_none_or(|s| s <= p.dim);
    Feasibility {
        feasible: expected_dim >= 0 && span_ok,
        expected_dim,
        span_ok,
    }
}

/// The same count for quadrics of dimension `d`: choose the spanning
/// `(d+1)`-plane, then a quadric in it. A contained line costs its
/// incidence with the plane plus three conditions on the quadric; a met line
/// or a point costs its incidence with the plane plus one.
pub fn feasible_quadric(p: &IncidenceProfile) -> Feasibility {
    let (n, d) = (p.space.n as i64, p.dim as i64);
    let planes = (d + 2) * (n - d - 1);
    let quadrics = (d + 2) * (d + 3) / 2 - 1;
    let cost = (2 * (n - d - 1) + 3) * p.contains.len() as i64
        + (n - d - 1) * p.meets.len() as i64
        + (n - d) * p.points.len() as i64;
    let expected_dim = planes + quadrics - cost;
    let span_ok = p.contained_span().is_none_or(|s| s <= p.dim + 1);
    Feasibility {
        feasible: expected_dim >= 0 && span_ok,
        expected_dim,
        span_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, r: usize, s: usize) -> SpaceSignature {
        SpaceSignature::new(n, r, s).unwrap()
    }

    #[test]
    fn plane_meeting_five_lines_in_p5() {
        let p = IncidenceProfile::new(sp(5, 5, 0), 2, [], 1..=5, []).unwrap();
        assert_eq!(feasible_profile(&p), Feasibility { feasible: false, expected_dim: -1, span_ok: true });
    }

    #[test]
    fn planes_meeting_four_lines_in_p4() {
        let p = IncidenceProfile::new(sp(4, 4, 0), 2, [], 1..=4, []).unwrap();
        let f = feasible_profile(&p);
        assert!(f.feasible);
        assert_eq!(f.expected_dim, 2);
    }

    #[test]
    fn threefolds_meeting_five_lines_in_p5() {
        let p = IncidenceProfile::new(sp(5, 5, 0), 3, [], 1..=5, []).unwrap();
        assert_eq!(feasible_profile(&p).expected_dim, 3);
    }

    #[test]
    fn span_condition() {
        // Two skew lines span a 3-space, so no plane contains both.
        let p = IncidenceProfile::new(sp(5, 2, 0), 2, [1, 2], [], []).unwrap();
        let f = feasible_profile(&p);
        assert!(!f.span_ok && !f.feasible);
        let p = IncidenceProfile::new(sp(5, 2, 0), 3, [1, 2], [], []).unwrap();
        assert!(feasible_profile(&p).feasible);
    }

    #[test]
    fn quadric_counts() {
        let q = IncidenceProfile::new(sp(4, 5, 0), 2, [1, 2], [3, 4, 5], []).unwrap();
        assert_eq!(feasible_quadric(&q), Feasibility { feasible: true, expected_dim: 0, span_ok: true });
        let q = IncidenceProfile::new(sp(5, 5, 0), 3, [2, 3], [1, 4, 5], []).unwrap();
        assert!(feasible_quadric(&q).feasible);
    }

    #[test]
    fn validation_and_display() {
        assert!(IncidenceProfile::new(sp(4, 2, 0), 2, [1], [1], []).is_err());
        assert!(IncidenceProfile::new(sp(4, 2, 0), 2, [3], [], []).is_err());
        assert!(IncidenceProfile::new(sp(4, 2, 0), 4, [], [], []).is_err());
        let p = IncidenceProfile::new(sp(4, 4, 1), 2, [1], [2, 3], [1]).unwrap();
        assert_eq!(p.to_string(), "plane C={1} T={2,3} P={1}");
        assert_eq!(IncidenceProfile::general(sp(5, 0, 0), 3).unwrap().to_string(), "3-plane");
    }
}
