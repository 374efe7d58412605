use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::class::GradedClass;
use super::monomial::Monomial;
use super::space::SpaceSignature;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q};

/// Wire form of a space: `{"n":4,"r":4,"s":0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub n: usize,
    pub r: usize,
    #[serde(default)]
    pub s: usize,
}

impl From<SpaceSignature> for SpaceJson {
    fn from(x: SpaceSignature) -> Self {
        SpaceJson { n: x.n, r: x.r, s: x.s }
    }
}

impl TryFrom<SpaceJson> for SpaceSignature {
    type Error = Error;
    fn try_from(x: SpaceJson) -> Result<Self> {
        SpaceSignature::new(x.n, x.r, x.s)
    }
}

/// Wire form of a class. Coordinates are keyed by canonical monomial
/// spelling in basis order, values are `"p/q"` strings, zeros are omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub space: SpaceJson,
    pub degree: usize,
    pub coords: Map<String, Value>,
}

impl ClassJson {
    pub fn from_class(c: &GradedClass) -> ClassJson {
        let coords = c
            .terms()
            .into_iter()
            .map(|(m, x)| (m.key(), Value::String(fmt_q(&x))))
            .collect();
        ClassJson {
            space: c.space().into(),
            degree: c.degree(),
            coords,
        }
    }

    pub fn to_class(&self) -> Result<GradedClass> {
        let space = SpaceSignature::try_from(self.space)?;
        let mut terms = Vec::with_capacity(self.coords.len());
        for (key, v) in &self.coords {
            let x = match v {
                Value::String(s) => parse_q(s)?,
                Value::Number(n) if n.is_i64() => parse_q(&n.to_string())?,
                other => return Err(Error::Parse(format!("coefficient of {key} is not rational: {other}"))),
            };
            terms.push((Monomial::parse(key)?, x));
        }
        GradedClass::from_terms(space, self.degree, terms)
    }
}

impl GradedClass {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ClassJson::from_class(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<GradedClass> {
        serde_json::from_str::<ClassJson>(s)?.to_class()
    }
}
