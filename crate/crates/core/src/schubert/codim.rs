use std::fmt;

use crate::error::{Error, Result};

use super::expr::{Grassmannian, Partition};

/// An incidence condition on `d`-planes in `P^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    ContainsLine,
    MeetsLine,
    ContainsPoint,
}

/// Codimension of the condition in `G(d,n)`.
pub fn incidence_codim(cond: Condition, d: usize, n: usize) -> usize {
    let c = n.saturating_sub(d);
    match cond {
        Condition::ContainsLine => 2 * c,
        Condition::MeetsLine => c.saturating_sub(1),
        Condition::ContainsPoint => c,
    }
}

/// The Schubert class cut out by the condition.
pub fn incidence_class(cond: Condition, grass: Grassmannian) -> Result<Partition> {
    let c = grass.cols();
    let parts = match cond {
        Condition::ContainsLine if grass.a >= 1 => vec![c, c],
        Condition::ContainsLine => {
            return Err(Error::Domain(format!("points of {grass} cannot contain a line")))
        }
        Condition::MeetsLine => vec![c - 1],
        Condition::ContainsPoint => vec![c],
    };
    Partition::new(parts)
}

/// An expected codimension under the literal (`max`) and corrected
/// (`min`, capped at the dimension of the space of quadrics) readings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedCodim {
    pub literal: usize,
    pub corrected: usize,
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

fn quadric_space_dim(n: usize) -> usize {
    binom2(n + 2) - 1
}

fn check(k: usize, n: usize) -> Result<()> {
    if k >= n {
        return Err(Error::Range(format!("corank {k} outside [0, {}]", n - 1)));
    }
    Ok(())
}

/// Codimension of corank-`k` quadrics in `P^n` containing `big_n` general lines.
pub fn expected_codim(k: usize, big_n: usize, n: usize) -> Result<ExpectedCodim> {
    check(k, n)?;
    let raw = 3 * big_n + binom2(k + 1);
    Ok(ExpectedCodim {
        literal: raw.max(binom2(n + 2)),
        corrected: raw.min(quadric_space_dim(n)),
    })
}

/// As [`expected_codim`], with the vertex also meeting one more general line.
pub fn expected_codim_vertex(k: usize, big_n: usize, n: usize) -> Result<ExpectedCodim> {
    check(k, n)?;
    if k == 0 {
        return Err(Error::Domain("a corank-0 quadric has no vertex".into()));
    }
    let e = expected_codim(k, big_n, n)?;
    let extra = n - k - 1;
    Ok(ExpectedCodim {
        literal: (e.literal + extra).max(binom2(n + 2)),
        corrected: (e.corrected + extra).min(quadric_space_dim(n)),
    })
}

/// Side-by-side evaluation of the vertex formula as stated (vertex term
/// `n-k-1`) and as used in the worked dimension count (vertex term `n-k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityReport {
    pub k: usize,
    pub lines: usize,
    pub n: usize,
    pub quadric_space_dim: usize,
    pub codim: ExpectedCodim,
    pub vertex_stated: ExpectedCodim,
    pub vertex_worked: usize,
    pub dim_stated: i64,
    pub dim_worked: i64,
}

impl TransversalityReport {
    pub fn consistent(&self) -> bool {
        self.vertex_stated.corrected == self.vertex_worked
    }
}

impl fmt::Display for TransversalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} N={} n={}: codim literal {} corrected {}; vertex codim literal {} stated {} worked {}; dimension stated {} worked {}; {}",
            self.k,
            self.lines,
            self.n,
            self.codim.literal,
            self.codim.corrected,
            self.vertex_stated.literal,
            self.vertex_stated.corrected,
            self.vertex_worked,
            self.dim_stated,
            self.dim_worked,
            if self.consistent() { "consistent" } else { "MISMATCH" }
        )
    }
}

pub fn transversality_report(k: usize, big_n: usize, n: usize) -> Result<TransversalityReport> {
    let codim = expected_codim(k, big_n, n)?;
    let vertex_stated = expected_codim_vertex(k, big_n, n)?;
    let vertex_worked = 3 * big_n + binom2(k + 1) + (n - k);
    let q = quadric_space_dim(n);
    Ok(TransversalityReport {
        k,
        lines: big_n,
        n,
        quadric_space_dim: q,
        codim,
        vertex_stated,
        vertex_worked,
        dim_stated: q as i64 - vertex_stated.corrected as i64,
        dim_worked: q as i64 - vertex_worked as i64,
    })
}
