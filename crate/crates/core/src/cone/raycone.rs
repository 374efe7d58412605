use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::dd::polar;
use super::simplex::farkas;
use crate::error::{Error, Result};
use crate::linalg::{mat_vec, solve, transpose, Matrix};
use crate::rational::{dot, fmt_q, ints, primitive, primitive_int, to_q, Q};

/// A rational polyhedral cone `cone(rays) + span(lineality)`.
///
/// `pairing`, when present, is the bilinear form `⟨w, g⟩ = wᵀ M g` against
/// which duals are taken; rows index the dual space. Without it the dot
/// product is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayCone {
    ambient_dim: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facets: Option<Facets>,
    pairing: Option<Matrix>,
}

/// Inequalities `f·v >= 0` and equations `e·v = 0` cutting out a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facets {
    pub inequalities: Vec<Vec<BigInt>>,
    pub equations: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `v = Σ coeff_i ray_i + Σ mu_j lineality_j` with every `coeff_i >= 0`.
    Combination {
        rays: BTreeMap<usize, Q>,
        lineality: BTreeMap<usize, Q>,
    },
    /// `separator·ray >= 0` for every ray, `separator·lineality = 0`, and
    /// `separator·v < 0`. `dual_element` is the same functional written as
    /// `w` with `wᵀ M = separator` when the pairing is invertible.
    Separator {
        separator: Vec<BigInt>,
        dual_element: Option<Vec<BigInt>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipResult {
    pub inside: bool,
    pub certificate: Certificate,
}

fn check_len(v: &[BigInt], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::Domain(format!("vector of length {} in a cone of dimension {dim}", v.len())));
    }
    Ok(())
}

fn canonical_rays(rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = rays
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| primitive_int(r))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl RayCone {
    pub fn new(ambient_dim: usize, rays: Vec<Vec<BigInt>>, pairing: Option<Matrix>) -> Result<Self> {
        for r in &rays {
            check_len(r, ambient_dim)?;
        }
        if let Some(m) = &pairing {
            if m.len() != ambient_dim || m.iter().any(|row| row.len() != ambient_dim) {
                return Err(Error::Domain(format!("pairing must be {ambient_dim}×{ambient_dim}")));
            }
        }
        Ok(RayCone {
            ambient_dim,
            rays: canonical_rays(&rays),
            lineality: vec![],
            facets: None,
            pairing,
        })
    }

    pub fn from_rationals(ambient_dim: usize, rays: &[Vec<Q>], pairing: Option<Matrix>) -> Result<Self> {
        Self::new(ambient_dim, rays.iter().map(|r| primitive(r)).collect(), pairing)
    }

    pub fn with_lineality(mut self, lineality: Vec<Vec<BigInt>>) -> Result<Self> {
        for l in &lineality {
            check_len(l, self.ambient_dim)?;
        }
        self.lineality = canonical_rays(&lineality);
        self.facets = None;
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn pairing(&self) -> Option<&Matrix> {
        self.pairing.as_ref()
    }

    pub fn facets(&self) -> Option<&Facets> {
        self.facets.as_ref()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// The functionals `M g` (or `g`) through which the pairing acts on a
    /// generator `g`.
    fn paired(&self, g: &[BigInt]) -> Vec<BigInt> {
        match &self.pairing {
            None => g.to_vec(),
            Some(m) => primitive(&mat_vec(m, &to_q(g))),
        }
    }

    /// `{w : ⟨w, g⟩ >= 0 for every g in the cone}`, carrying the transposed
    /// pairing so that dualising twice returns to the original space.
    pub fn dual(&self) -> RayCone {
        let mut constraints: Vec<Vec<BigInt>> = self.rays.iter().map(|g| self.paired(g)).collect();
        for l in &self.lineality {
            let a = self.paired(l);
            constraints.push(a.iter().map(|x| -x).collect());
            constraints.push(a);
        }
        let p = polar(self.ambient_dim, &constraints);
        RayCone {
            ambient_dim: self.ambient_dim,
            rays: p.rays,
            lineality: canonical_rays(&p.lineality),
            facets: None,
            pairing: self.pairing.as_ref().map(transpose),
        }
    }

    /// The facet description under the dot product.
    pub fn compute_facets(&self) -> Facets {
        let mut constraints = self.rays.clone();
        for l in &self.lineality {
            constraints.push(l.iter().map(|x| -x).collect());
            constraints.push(l.clone());
        }
        let p = polar(self.ambient_dim, &constraints);
        Facets {
            inequalities: p.rays,
            equations: p.lineality,
        }
    }

    /// Attaches the facet description after checking it against every ray.
    pub fn with_facets(mut self, facets: Facets) -> Result<Self> {
        for g in self.rays.iter() {
            if facets.inequalities.iter().any(|f| dot(f, g).is_negative())
                || facets.equations.iter().any(|e| !dot(e, g).is_zero())
            {
                return Err(Error::Domain("a ray violates the supplied facets".into()));
            }
        }
        self.facets = Some(facets);
        Ok(self)
    }

    pub fn with_computed_facets(self) -> Self {
        let f = self.compute_facets();
        self.with_facets(f).expect("computed facets hold on every ray")
    }

    /// Membership by the facet test, when facets are attached.
    pub fn facet_contains(&self, v: &[BigInt]) -> Option<bool> {
        let f = self.facets.as_ref()?;
        Some(
            f.inequalities.iter().all(|a| !dot(a, v).is_negative())
                && f.equations.iter().all(|e| dot(e, v).is_zero()),
        )
    }

    /// Exact Farkas alternative for `v`.
    pub fn membership(&self, v: &[BigInt]) -> Result<MembershipResult> {
        check_len(v, self.ambient_dim)?;
        let mut cols: Vec<Vec<Q>> = self.rays.iter().map(|r| to_q(r)).collect();
        for l in &self.lineality {
            let lq = to_q(l);
            cols.push(lq.iter().map(|x| -x).collect());
            cols.push(lq);
        }
        let nr = self.rays.len();
        match farkas(&cols, &to_q(v)) {
            Ok(x) => {
                let rays = (0..nr)
                    .filter(|&i| !x[i].is_zero())
                    .map(|i| (i, x[i].clone()))
                    .collect();
                let lineality = (0..self.lineality.len())
                    .map(|j| (j, &x[nr + 2 * j + 1] - &x[nr + 2 * j]))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                Ok(MembershipResult {
                    inside: true,
                    certificate: Certificate::Combination { rays, lineality },
                })
            }
            Err(phi) => {
                let dual_element = self.pairing.as_ref().and_then(|m| solve(&transpose(m), &phi).map(|w| primitive(&w)));
                Ok(MembershipResult {
                    inside: false,
                    certificate: Certificate::Separator {
                        separator: primitive(&phi),
                        dual_element,
                    },
                })
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.membership(v)?.inside)
    }

    /// Checks a membership certificate by substitution.
    pub fn verify(&self, v: &[BigInt], result: &MembershipResult) -> bool {
        match &result.certificate {
            Certificate::Combination { rays, lineality } => {
                if !result.inside || rays.values().any(|c| c.is_negative()) {
                    return false;
                }
                let mut sum = vec![Q::zero(); self.ambient_dim];
                let terms = rays
                    .iter()
                    .map(|(&i, c)| (self.rays.get(i), c))
                    .chain(lineality.iter().map(|(&j, c)| (self.lineality.get(j), c)));
                for (g, c) in terms {
                    let Some(g) = g else { return false };
                    for (s, x) in sum.iter_mut().zip(to_q(g)) {
                        *s += x * c;
                    }
                }
                sum == to_q(v)
            }
            Certificate::Separator { separator, dual_element } => {
                let ok = !result.inside
                    && self.rays.iter().all(|g| !dot(separator, g).is_negative())
                    && self.lineality.iter().all(|l| dot(separator, l).is_zero())
                    && dot(separator, v).is_negative();
                let dual_ok = match (dual_element, &self.pairing) {
                    (Some(w), Some(m)) => {
                        let wm: Vec<Q> = mat_vec(&transpose(m), &to_q(w));
                        primitive(&wm) == *separator
                    }
                    (None, _) => true,
                    (Some(_), None) => false,
                };
                ok && dual_ok
            }
        }
    }

    /// A minimal generating subset: rays that are nonnegative combinations
    /// of the others (plus lineality) are dropped one at a time.
    pub fn extreme_rays(&self) -> RayCone {
        let mut kept = self.rays.clone();
        let mut i = 0;
        while i < kept.len() {
            let others: Vec<Vec<BigInt>> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect();
            let rest = RayCone {
                rays: others.clone(),
                facets: None,
                ..self.clone()
            };
            if rest.contains(&kept[i]).expect("same dimension") {
                kept = others;
            } else {
                i += 1;
            }
        }
        RayCone {
            rays: kept,
            facets: None,
            ..self.clone()
        }
    }

    /// Whether every generator of each cone lies in the other.
    pub fn cone_equal(&self, other: &RayCone) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Ok(false);
        }
        let inside = |a: &RayCone, b: &RayCone| -> Result<bool> {
            for g in &a.rays {
                if !b.contains(g)? {
                    return Ok(false);
                }
            }
            for l in &a.lineality {
                let neg: Vec<BigInt> = l.iter().map(|x| -x).collect();
                if !b.contains(l)? || !b.contains(&neg)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Ok(inside(self, other)? && inside(other, self)?)
    }

    /// Pairing value `⟨w, g⟩` of a dual element with a generator.
    pub fn pair(&self, w: &[BigInt], g: &[BigInt]) -> Q {
        match &self.pairing {
            None => Q::from_integer(dot(w, g)),
            Some(m) => to_q(w).iter().zip(mat_vec(m, &to_q(g))).map(|(a, b)| a * b).sum(),
        }
    }
}

/// The on-disk cone format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConeFile {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<Vec<i64>>>,
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<i64>>,
}

fn to_i64s(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Range(format!("{x} does not fit the cone file format"))))
        .collect()
}

impl ConeFile {
    pub fn to_cone(&self) -> Result<RayCone> {
        let pairing = self
            .pairing
            .as_ref()
            .map(|m| m.iter().map(|row| row.iter().map(|&x| Q::from_integer(x.into())).collect()).collect());
        RayCone::new(self.ambient_dim, self.rays.iter().map(|r| ints(r)).collect(), pairing)?
            .with_lineality(self.lineality.iter().map(|r| ints(r)).collect())
    }

    pub fn from_cone(c: &RayCone) -> Result<ConeFile> {
        let pairing = match &c.pairing {
            None => None,
            Some(m) => Some(
                m.iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| {
                                if x.is_integer() {
                                    x.to_integer().to_i64().ok_or_else(|| Error::Range("pairing entry too large".into()))
                                } else {
                                    Err(Error::Range(format!("non-integral pairing entry {}", fmt_q(x))))
                                }
                            })
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(ConeFile {
            ambient_dim: c.ambient_dim,
            pairing,
            rays: c.rays.iter().map(|r| to_i64s(r)).collect::<Result<_>>()?,
            lineality: c.lineality.iter().map(|r| to_i64s(r)).collect::<Result<_>>()?,
        })
    }
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Combination { rays, lineality } => {
                let comb: serde_json::Map<String, Value> =
                    rays.iter().map(|(i, c)| (i.to_string(), Value::String(fmt_q(c)))).collect();
                let mut out = json!({ "combination": comb });
                if !lineality.is_empty() {
                    let lin: serde_json::Map<String, Value> =
                        lineality.iter().map(|(i, c)| (i.to_string(), Value::String(fmt_q(c)))).collect();
                    out["lineality"] = Value::Object(lin);
                }
                out
            }
            Certificate::Separator { separator, dual_element } => {
                let num = |v: &Vec<BigInt>| -> Vec<Value> {
                    v.iter()
                        .map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from))
                        .collect()
                };
                let mut out = json!({ "separator": num(separator) });
                if let Some(w) = dual_element {
                    out["dualElement"] = Value::Array(num(w));
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn cone(rays: &[&[i64]]) -> RayCone {
        let d = rays[0].len();
        RayCone::new(d, rays.iter().map(|r| ints(r)).collect(), None).unwrap()
    }

    #[test]
    fn octant_self_dual() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(c.dual().rays(), c.rays());
    }

    #[test]
    fn membership_certificates() {
        let c = cone(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
        for v in [ints(&[2, 3, 1]), ints(&[1, 0, 0]), ints(&[-1, 2, 1]), ints(&[0, 0, 1])] {
            let m = c.membership(&v).unwrap();
            assert!(c.verify(&v, &m), "{v:?}");
        }
        assert!(c.contains(&ints(&[2, 3, 1])).unwrap());
        assert!(!c.contains(&ints(&[0, 0, 1])).unwrap());
        assert!(c.membership(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn rays_are_members_with_unit_certificate() {
        let c = cone(&[&[1, 0, 2], &[0, 1, 1], &[1, 1, 0]]);
        for (i, r) in c.rays().iter().enumerate() {
            let m = c.membership(r).unwrap();
            let Certificate::Combination { rays, .. } = &m.certificate else { panic!() };
            assert_eq!(rays.get(&i), Some(&q(1)));
            assert_eq!(rays.len(), 1);
        }
    }

    #[test]
    fn extreme_rays_drop_interior() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let e = c.extreme_rays();
        assert_eq!(e.rays().len(), 3);
        assert!(e.cone_equal(&c).unwrap());
    }

    #[test]
    fn pairing_dual_and_separator_dual_element() {
        let m: Matrix = vec![vec![q(0), q(-1)], vec![q(-1), q(3)]];
        let c = RayCone::new(2, vec![ints(&[1, 0]), ints(&[0, 1])], Some(m)).unwrap();
        let d = c.dual();
        for w in d.rays() {
            for g in c.rays() {
                assert!(!c.pair(w, g).is_negative());
            }
        }
        assert!(d.dual().cone_equal(&c).unwrap());
        let v = ints(&[1, -1]);
        let res = c.membership(&v).unwrap();
        assert!(!res.inside && c.verify(&v, &res));
        let Certificate::Separator { dual_element: Some(w), .. } = &res.certificate else { panic!() };
        assert!(d.contains(w).unwrap());
    }

    #[test]
    fn facets_and_lineality() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0]]).with_computed_facets();
        assert_eq!(c.facet_contains(&ints(&[1, 1, 0])), Some(true));
        assert_eq!(c.facet_contains(&ints(&[1, 1, 1])), Some(false));
        let half = RayCone::new(2, vec![ints(&[1, 0])], None)
            .unwrap()
            .with_lineality(vec![ints(&[0, 1])])
            .unwrap();
        assert!(half.contains(&ints(&[3, -7])).unwrap());
        assert_eq!(half.dual().rays(), &[ints(&[1, 0])]);
        assert!(half.dual().is_pointed());
        let empty = RayCone::new(2, vec![], None).unwrap();
        assert_eq!(empty.dual().lineality().len(), 2);
    }

    #[test]
    fn cone_file_roundtrip() {
        let c = cone(&[&[1, 0], &[1, 2]]);
        let f = ConeFile::from_cone(&c).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"ambientDim":2,"rays":[[1,0],[1,2]]}"#);
        let back: ConeFile = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_cone().unwrap(), c);
    }
}
