//! Regenerates every table from first principles and compares it with the
//! stored fixtures.

mod cones;
mod context;
pub mod export;
pub mod fixture;
mod identities;
pub mod known;
pub mod report;
pub mod verdict;

use std::fmt;

pub use context::{exceptional_shifts, flip, signed_ints, LinData, Session, Violation};
pub use export::{export, Format};
pub use fixture::{Fixture, FixtureSet, ProfileSpec, Row, TableKind, TABLE_IDS};
pub use report::{Diff, DiffReport, RowCheck, Status};
pub use verdict::{Verdict, VerdictMatrix};

use crate::error::Result;

/// A regenerated table and its comparison with the fixture.
#[derive(Clone, Debug)]
pub struct TableRun {
    pub report: DiffReport,
    pub table: Fixture,
}

pub fn run_table(session: &Session, id: &str) -> Result<TableRun> {
    let f = session.fixtures().get(id)?.clone();
    match f.kind {
        TableKind::Degrees => identities::degrees(&f),
        TableKind::Pairing => identities::pairing(&f),
        TableKind::Generators => cones::generators(session, &f),
        TableKind::Dual => cones::dual(session, &f),
        TableKind::Maxinc => cones::maxinc(session, &f),
        TableKind::Decomposition => identities::decomposition(session, &f),
        TableKind::Witness => cones::witness_table(session, &f),
        TableKind::Selfint => identities::selfint(session, &f),
        TableKind::Antican => identities::antican(session, &f),
        TableKind::Recipe => cones::recipe(session, &f),
        TableKind::Hypersurface => cones::hypersurface(session, &f),
        TableKind::Schubert => identities::schubert(&f),
        TableKind::ExpectedCodim => identities::expected_codim(&f),
    }
}

/// Every report in table order, with the verdict grids.
#[derive(Clone, Debug)]
pub struct Summary {
    pub reports: Vec<DiffReport>,
    pub verdicts: VerdictMatrix,
}

impl Summary {
    pub fn status(&self) -> Status {
        self.reports.iter().map(|r| r.status).max().unwrap_or(Status::Match)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            writeln!(f, "{r}")?;
        }
        writeln!(f, "{}", self.verdicts)?;
        for r in &self.reports {
            let known = r.diffs.iter().filter(|d| d.known).count();
            writeln!(f, "{:<24} {:<10} {} rows, {} diffs ({known} known)", r.table_id, r.status, r.rows.len(), r.diffs.len())?;
        }
        writeln!(f, "overall: {}", self.status())
    }
}

pub fn run_all(session: &Session) -> Summary {
    let ids: Vec<String> = session.fixtures().ids().map(str::to_string).collect();
    let reports: Vec<DiffReport> = ids
        .iter()
        .map(|id| match run_table(session, id) {
            Ok(run) => run.report,
            Err(e) => DiffReport::failed(id, &e),
        })
        .collect();
    let verdicts = VerdictMatrix::build(&reports);
    Summary { reports, verdicts }
}
