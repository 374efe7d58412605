use std::fmt;

use serde::Serialize;

use super::report::DiffReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "?",
        })
    }
}

/// Whether `Eff_k(X^n_r)` is linearly generated. `verified_by` names the
/// passing check behind an arithmetically verified entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Cell {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_by: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictMatrix {
    pub cells: Vec<Cell>,
}

/// `(n, k, last r answered yes, first r answered no, largest r)`.
const GRIDS: &[(usize, usize, usize, usize, usize)] = &[
    (4, 1, 7, 10, 10),
    (4, 2, 4, 5, 10),
    (4, 3, 4, 5, 10),
    (5, 1, 5, 6, 6),
    (5, 2, 5, 7, 6),
    (5, 3, 3, 4, 6),
    (5, 4, 3, 4, 6),
];

/// `(n, k, r, table, rows that must pass)`.
const BACKING: &[(usize, usize, usize, &str, &[&str])] = &[
    (4, 1, 10, "selfint-p4", &["r=10", "r=10 in Lin_1^*"]),
    (5, 1, 6, "selfint-p5", &["r=6", "r=6 in Lin_1^*"]),
    (4, 2, 5, "witness-quadric", &["class", "recomputed", "non-membership"]),
    (5, 3, 4, "witness-segre", &["class", "recomputed", "non-membership"]),
    (5, 4, 4, "witness-cubic-divisor", &["class", "recomputed", "non-membership"]),
];

fn backed(reports: &[DiffReport], table: &str, rows: &[&str]) -> bool {
    reports.iter().find(|r| r.table_id == table).is_some_and(|rep| {
        rows.iter().all(|label| rep.rows.iter().any(|c| c.label == *label && c.ok))
    })
}

impl VerdictMatrix {
    pub fn build(reports: &[DiffReport]) -> VerdictMatrix {
        let mut cells = Vec::new();
        for &(n, k, yes, no, last) in GRIDS {
            for r in 1..=last {
                let verdict = if r <= yes {
                    Verdict::Yes
                } else if r >= no {
                    Verdict::No
                } else {
                    Verdict::Unknown
                };
                let verified_by = BACKING
                    .iter()
                    .find(|b| (b.0, b.1, b.2) == (n, k, r) && backed(reports, b.3, b.4))
                    .map(|b| format!("{}: {}", b.3, b.4.join(", ")));
                cells.push(Cell { n, k, r, verdict, verified_by });
            }
        }
        VerdictMatrix { cells }
    }

    pub fn get(&self, n: usize, k: usize, r: usize) -> Option<&Cell> {
        self.cells.iter().find(|c| (c.n, c.k, c.r) == (n, k, r))
    }
}

impl fmt::Display for VerdictMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in [4, 5] {
            let cells: Vec<&Cell> = self.cells.iter().filter(|c| c.n == n).collect();
            let last = cells.iter().map(|c| c.r).max().unwrap_or(0);
            writeln!(f, "Dimension {n}")?;
            write!(f, "  k\\r")?;
            for r in 1..=last {
                write!(f, " {r:>4}")?;
            }
            writeln!(f)?;
            for k in 1..n {
                write!(f, "  {k:<3}")?;
                for r in 1..=last {
                    let text = cells
                        .iter()
                        .find(|c| c.k == k && c.r == r)
                        .map(|c| format!("{}{}", c.verdict, if c.verified_by.is_some() { "*" } else { "" }))
                        .unwrap_or_default();
                    write!(f, " {text:>4}")?;
                }
                writeln!(f)?;
            }
        }
        writeln!(f, "  * arithmetically verified in this run; other entries are asserted by the geometric arguments")?;
        for c in self.cells.iter().filter(|c| c.verified_by.is_some()) {
            writeln!(
                f,
                "  n={} k={} r={} {}: {}",
                c.n,
                c.k,
                c.r,
                c.verdict,
                c.verified_by.as_deref().unwrap_or_default()
            )?;
        }
        Ok(())
    }
}
