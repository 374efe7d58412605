use std::fmt::Write;
use std::str::FromStr;

use super::fixture::{Fixture, Row};
use crate::cone::OrbitSpec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Unknown { kind: "format", name: other.into() }),
        }
    }
}

/// Rows in display groups, each row replaced by its orbit when `expand` is set
/// and the table lives on a blowup.
fn grouped_rows(t: &Fixture, expand: bool) -> Result<Vec<Vec<Row>>> {
    let orbits = match (expand, t.space, t.degree) {
        (true, Some(_), Some(k)) => Some(OrbitSpec::for_space(&t.space()?, k)),
        _ => None,
    };
    t.group_ranges()
        .into_iter()
        .map(|range| {
            let mut out = Vec::new();
            for row in &t.rows[range] {
                match &orbits {
                    Some(o) => {
                        for v in o.orbit(&row.coords)? {
                            out.push(Row::new(row.label.clone(), v));
                        }
                    }
                    None => out.push(Row::new(row.label.clone(), row.coords.clone())),
                }
            }
            Ok(out)
        })
        .collect()
}

fn columns(t: &Fixture) -> Vec<String> {
    if !t.columns.is_empty() {
        return t.columns.clone();
    }
    let width = t.rows.iter().map(|r| r.coords.len()).max().unwrap_or(0);
    if width == 1 {
        vec!["value".into()]
    } else {
        (1..=width).map(|i| format!("c{i}")).collect()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Deterministic serialization of a computed table.
pub fn export(t: &Fixture, format: Format, expand_orbits: bool) -> Result<String> {
    match format {
        Format::Json => {
            if !expand_orbits {
                return Ok(t.to_json());
            }
            let groups = grouped_rows(t, true)?;
            let mut e = t.clone();
            e.groups = if groups.len() > 1 { groups.iter().map(Vec::len).collect() } else { vec![] };
            e.rows = groups.into_iter().flatten().collect();
            Ok(e.to_json())
        }
        Format::Csv => {
            let mut out = String::new();
            let header: Vec<String> = std::iter::once("label".to_string()).chain(columns(t)).map(|c| csv_field(&c)).collect();
            writeln!(out, "{}", header.join(",")).expect("string write");
            for row in grouped_rows(t, expand_orbits)?.into_iter().flatten() {
                let cells: Vec<String> =
                    std::iter::once(csv_field(&row.label)).chain(row.coords.iter().map(i64::to_string)).collect();
                writeln!(out, "{}", cells.join(",")).expect("string write");
            }
            Ok(out)
        }
        Format::Markdown => {
            let cols = columns(t);
            let mut out = format!("### {}\n\n{}\n", t.table_id, t.location);
            for (i, group) in grouped_rows(t, expand_orbits)?.into_iter().enumerate() {
                if i > 0 {
                    out.push_str("\n---\n");
                }
                out.push('\n');
                writeln!(out, "| | {} |", cols.join(" | ")).expect("string write");
                writeln!(out, "|---|{}", "---:|".repeat(cols.len())).expect("string write");
                for row in group {
                    let cells: Vec<String> = row.coords.iter().map(i64::to_string).collect();
                    writeln!(out, "| {} | {} |", row.label, cells.join(" | ")).expect("string write");
                }
            }
            Ok(out)
        }
    }
}
