use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::classes::IncidenceProfile;
use crate::error::{Error, Result};
use crate::ring::{SpaceJson, SpaceSignature};

/// The kinds of table the harness knows how to regenerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Degrees,
    Pairing,
    Generators,
    Dual,
    Maxinc,
    Decomposition,
    Witness,
    Selfint,
    Antican,
    Recipe,
    Hypersurface,
    Schubert,
    ExpectedCodim,
}

/// Incidence data attached to a row whose class can be rebuilt geometrically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contains: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub meets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub quadric: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub assume_feasible: bool,
}

impl ProfileSpec {
    pub fn to_profile(&self, space: SpaceSignature) -> Result<IncidenceProfile> {
        IncidenceProfile::new(
            space,
            self.dim,
            self.contains.iter().copied(),
            self.meets.iter().copied(),
            self.points.iter().copied(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub coords: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSpec>,
}

impl Row {
    pub fn new(label: impl Into<String>, coords: Vec<i64>) -> Self {
        Row { label: label.into(), coords, profile: None }
    }
}

/// A table as stored on disk. Rows of class tables are integer vectors in
/// the signed display basis of `N^degree`; `groups` splits the rows into
/// consecutive blocks for display. Unknown fields are ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Fixture {
    pub table_id: String,
    pub kind: TableKind,
    pub location: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<usize>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub params: Map<String, Value>,
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let f: Fixture = serde_json::from_str(text)?;
        f.validate()?;
        Ok(f)
    }

    /// Pretty JSON with one row per line.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("fixtures serialize");
        let rows = v.as_object_mut().and_then(|o| o.remove("rows")).unwrap_or_default();
        let mut out = String::from("{\n");
        let obj = v.as_object().expect("object");
        let keys = ["tableId", "kind", "location", "space", "degree", "columns", "rows", "groups", "params"];
        let mut parts = Vec::new();
        for k in keys {
            if k == "rows" {
                let lines: Vec<String> = rows
                    .as_array()
                    .map(|a| a.iter().map(|r| format!("    {}", compact(r))).collect())
                    .unwrap_or_default();
                parts.push(if lines.is_empty() {
                    "  \"rows\": []".to_string()
                } else {
                    format!("  \"rows\": [\n{}\n  ]", lines.join(",\n"))
                });
            } else if let Some(x) = obj.get(k) {
                parts.push(format!("  \"{k}\": {}", compact(x)));
            }
        }
        out.push_str(&parts.join(",\n"));
        out.push_str("\n}\n");
        out
    }

    pub fn space(&self) -> Result<SpaceSignature> {
        let s = self
            .space
            .ok_or_else(|| Error::Parse(format!("fixture {} has no space", self.table_id)))?;
        SpaceSignature::try_from(s)
    }

    pub fn degree(&self) -> Result<usize> {
        self.degree
            .ok_or_else(|| Error::Parse(format!("fixture {} has no degree", self.table_id)))
    }

    pub fn param_usize(&self, key: &str) -> Result<usize> {
        self.params
            .get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("fixture {} needs integer parameter {key}", self.table_id)))
    }

    pub fn param_str(&self, key: &str) -> Option<&str> {
        self.params.get(key).and_then(Value::as_str)
    }

    pub fn param_vec(&self, key: &str) -> Result<Vec<i64>> {
        serde_json::from_value(self.params.get(key).cloned().unwrap_or(Value::Null))
            .map_err(|_| Error::Parse(format!("fixture {} needs integer list {key}", self.table_id)))
    }

    pub fn param_rows(&self, key: &str) -> Result<Vec<Vec<i64>>> {
        serde_json::from_value(self.params.get(key).cloned().unwrap_or(Value::Null))
            .map_err(|_| Error::Parse(format!("fixture {} needs a list of rows {key}", self.table_id)))
    }

    /// Row index ranges of the display groups; a single group when none are given.
    pub fn group_ranges(&self) -> Vec<std::ops::Range<usize>> {
        if self.groups.is_empty() {
            return std::iter::once(0..self.rows.len()).collect();
        }
        let mut start = 0;
        self.groups
            .iter()
            .map(|&g| {
                let r = start..start + g;
                start += g;
                r
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::Parse(format!("fixture {}: {what}", self.table_id)));
        if !self.groups.is_empty() && self.groups.iter().sum::<usize>() != self.rows.len() {
            return bad("groups do not cover the rows".into());
        }
        if let (Some(_), Some(k)) = (self.space, self.degree) {
            let dim = crate::ring::canonical_basis(&self.space()?, k)?.len();
            if let Some(r) = self.rows.iter().find(|r| r.coords.len() != dim) {
                return bad(format!("row {} has {} coordinates, expected {dim}", r.label, r.coords.len()));
            }
        }
        Ok(())
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let items: Vec<String> =
                m.iter().map(|(k, x)| format!("{}: {}", Value::String(k.clone()), compact(x))).collect();
            format!("{{{}}}", items.join(", "))
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(compact).collect();
            format!("[{}]", items.join(", "))
        }
        other => other.to_string(),
    }
}

macro_rules! embedded {
    ($($id:literal),* $(,)?) => {
        /// Every table id, in report order.
        pub const TABLE_IDS: &[&str] = &[$($id),*];

        fn embedded_text(id: &str) -> Option<&'static str> {
            match id {
                $($id => Some(include_str!(concat!("../../fixtures/", $id, ".json"))),)*
                _ => None,
            }
        }
    };
}

embedded!(
    "int-matrix-3",
    "int-matrix-4",
    "int-matrix-5",
    "lin2-x44",
    "dual2-x44",
    "lin2-x55",
    "dual2-x55-maxinc",
    "appendix-x322",
    "appendix-x331",
    "appendix-x423",
    "decomp-lambda",
    "decomp-xi",
    "decomp-delta",
    "decomp-alpha8",
    "decomp-alpha9",
    "witness-quadric",
    "witness-segre",
    "witness-cubic-divisor",
    "selfint-p4",
    "selfint-p5",
    "selfint-antican-x45",
    "curves-p4",
    "curves-p5",
    "divisors-p4",
    "divisors-p5",
    "schubert-anchors",
    "expected-codim",
);

/// All fixtures, keyed by table id.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    tables: BTreeMap<String, Fixture>,
}

impl FixtureSet {
    /// The fixtures compiled into the crate.
    pub fn embedded() -> Result<FixtureSet> {
        let mut tables = BTreeMap::new();
        for id in TABLE_IDS {
            let f = Fixture::parse(embedded_text(id).expect("listed"))?;
            tables.insert(id.to_string(), f);
        }
        Ok(FixtureSet { tables })
    }

    /// The embedded fixtures, with any `<id>.json` found in `dir` taking precedence.
    pub fn with_overrides(dir: &Path) -> Result<FixtureSet> {
        let mut set = Self::embedded()?;
        for id in TABLE_IDS {
            let path = dir.join(format!("{id}.json"));
            if path.is_file() {
                let f = Fixture::parse(&fs::read_to_string(&path)?)?;
                if f.table_id != *id {
                    return Err(Error::Parse(format!("{} declares table id {}", path.display(), f.table_id)));
                }
                set.tables.insert(id.to_string(), f);
            }
        }
        Ok(set)
    }

    pub fn get(&self, id: &str) -> Result<&Fixture> {
        self.tables
            .get(id)
            .ok_or_else(|| Error::Unknown { kind: "table", name: id.into() })
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        TABLE_IDS.iter().copied().filter(|id| self.tables.contains_key(*id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_parse() {
        let set = FixtureSet::embedded().unwrap();
        assert_eq!(set.ids().count(), TABLE_IDS.len());
        let d = set.get("dual2-x44").unwrap();
        assert_eq!(d.kind, TableKind::Dual);
        assert_eq!(d.group_ranges(), vec![0..5, 5..6, 6..10]);
        assert!(matches!(set.get("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn json_round_trips_and_ignores_unknown_fields() {
        let set = FixtureSet::embedded().unwrap();
        for id in TABLE_IDS {
            let f = set.get(id).unwrap();
            assert_eq!(&Fixture::parse(&f.to_json()).unwrap(), f, "{id}");
        }
        let text = r#"{"tableId":"t","kind":"dual","location":"x","rows":[],"extra":1}"#;
        assert!(Fixture::parse(text).is_ok());
    }

    #[test]
    fn embedded_text_is_canonical() {
        let set = FixtureSet::embedded().unwrap();
        for id in TABLE_IDS {
            assert_eq!(set.get(id).unwrap().to_json(), embedded_text(id).unwrap(), "{id}");
        }
    }

    #[test]
    fn overrides_replace_embedded_tables() {
        let dir = tempfile::tempdir().unwrap();
        let mut f = FixtureSet::embedded().unwrap().get("lin2-x44").unwrap().clone();
        f.rows.truncate(2);
        fs::write(dir.path().join("lin2-x44.json"), f.to_json()).unwrap();
        let set = FixtureSet::with_overrides(dir.path()).unwrap();
        assert_eq!(set.get("lin2-x44").unwrap().rows.len(), 2);
        fs::write(dir.path().join("dual2-x44.json"), f.to_json()).unwrap();
        assert!(FixtureSet::with_overrides(dir.path()).is_err());
    }
}
