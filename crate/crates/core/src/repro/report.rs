use std::fmt;

use serde::Serialize;

use super::known::is_known;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    KnownDiff,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Match | Status::KnownDiff => 0,
            Status::Mismatch => 1,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::KnownDiff => "known-diff",
            Status::Mismatch => "mismatch",
        })
    }
}

/// One checked row: a fixture row, a computed row, or a scalar identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

/// A disagreement between computation and fixture. `certificate` is a
/// machine-checked reason, already verified when the diff is recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub key: String,
    pub detail: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub certificate: String,
    pub known: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DiffReport {
    pub table_id: String,
    pub status: Status,
    pub rows: Vec<RowCheck>,
    pub diffs: Vec<Diff>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Accumulates checks for one table and settles the status at the end.
#[derive(Debug)]
pub struct ReportBuilder {
    table_id: String,
    rows: Vec<RowCheck>,
    diffs: Vec<Diff>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(table_id: &str) -> Self {
        ReportBuilder {
            table_id: table_id.into(),
            rows: vec![],
            diffs: vec![],
            notes: vec![],
        }
    }

    pub fn row(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.rows.push(RowCheck { label: label.into(), ok, detail: detail.into() });
    }

    pub fn diff(&mut self, key: impl Into<String>, detail: impl Into<String>, certificate: impl Into<String>) {
        let key = key.into();
        let known = is_known(&self.table_id, &key);
        self.diffs.push(Diff {
            key,
            detail: detail.into(),
            certificate: certificate.into(),
            known,
        });
    }

    /// Records a check: a passing row, or a failing row plus a diff under `key`.
    pub fn check(&mut self, key: &str, ok: bool, detail: impl Into<String>, certificate: impl Into<String>) {
        let detail = detail.into();
        self.row(key, ok, detail.clone());
        if !ok {
            self.diff(key, detail, certificate);
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(mut self) -> DiffReport {
        for key in super::known::registered(&self.table_id) {
            if !self.diffs.iter().any(|d| d.key == key) {
                self.diffs.push(Diff {
                    key: format!("stale-register {key}"),
                    detail: "a registered known diff was not observed".into(),
                    certificate: String::new(),
                    known: false,
                });
            }
        }
        let status = if self.diffs.is_empty() {
            Status::Match
        } else if self.diffs.iter().all(|d| d.known) {
            Status::KnownDiff
        } else {
            Status::Mismatch
        };
        DiffReport {
            table_id: self.table_id,
            status,
            rows: self.rows,
            diffs: self.diffs,
            notes: self.notes,
        }
    }
}

impl DiffReport {
    /// A report for a table that could not be computed at all.
    pub fn failed(table_id: &str, error: &crate::Error) -> DiffReport {
        DiffReport {
            table_id: table_id.into(),
            status: Status::Mismatch,
            rows: vec![],
            diffs: vec![Diff {
                key: "error".into(),
                detail: error.to_string(),
                certificate: String::new(),
                known: false,
            }],
            notes: vec![],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.table_id, self.status)?;
        for r in &self.rows {
            let mark = if r.ok { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {}: {}", r.label, r.detail)?;
        }
        for d in &self.diffs {
            let tag = if d.known { "known" } else { "NEW" };
            writeln!(f, "  diff [{tag}] {}: {}", d.key, d.detail)?;
            if !d.certificate.is_empty() {
                writeln!(f, "    certificate: {}", d.certificate)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_diffs() {
        let mut b = ReportBuilder::new("schubert-anchors");
        b.check("a", true, "fine", "");
        assert_eq!(b.finish().status, Status::Match);
        let mut b = ReportBuilder::new("schubert-anchors");
        b.check("a", false, "broken", "");
        let r = b.finish();
        assert_eq!(r.status, Status::Mismatch);
        assert_eq!(r.status.exit_code(), 1);
        assert!(r.to_string().contains("diff [NEW] a"));
    }
}
