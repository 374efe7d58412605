use std::cell::{OnceCell, RefCell};
use std::collections::BTreeMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::fixture::{Fixture, FixtureSet};
use crate::classes::{linear_cone_generators, Generator};
use crate::cone::{OrbitSpec, RayCone};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, ints, primitive, Q};
use crate::ring::{pairing_matrix, signed_basis_labels, signed_basis_signs, GradedClass, SignedClass, SpaceSignature};

/// Multiplies coordinates by the basis signs; the map is an involution
/// between canonical and signed coordinates.
pub fn flip(signs: &[i64], v: &[BigInt]) -> Vec<BigInt> {
    v.iter().zip(signs).map(|(x, &s)| x * s).collect()
}

pub fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Range(format!("{x} does not fit a table entry"))))
        .collect()
}

pub fn fmt_vec<T: ToString>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(T::to_string).collect();
    format!("({})", items.join(","))
}

/// Integer signed coordinates of a class with integral coefficients.
pub fn signed_ints(c: &GradedClass) -> Result<Vec<BigInt>> {
    let s = SignedClass::from_class(c)?;
    s.coords
        .iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Domain(format!("class {c} has non-integral coordinate {}", fmt_q(x))))
            }
        })
        .collect()
}

pub fn class_from_signed(space: SpaceSignature, degree: usize, coords: &[i64]) -> Result<GradedClass> {
    SignedClass::from_ints(space, degree, coords)?.to_class()
}

/// A negative pairing `⟨w, g⟩ < 0` witnessing `w` outside a dual cone.
#[derive(Clone, Debug)]
pub struct Violation {
    pub value: Q,
    pub generator: Vec<BigInt>,
    pub provenance: String,
}

impl Violation {
    pub fn describe(&self, name: &str) -> String {
        format!(
            "⟨{name}, g⟩ = {} for g = {} {}",
            fmt_q(&self.value),
            self.provenance,
            fmt_vec(&self.generator)
        )
    }
}

/// The derived linear cone `Lin_d(X)` with its dual, in both coordinate systems.
#[derive(Debug)]
pub struct LinData {
    pub space: SpaceSignature,
    pub cycle_dim: usize,
    pub generators: Vec<Generator>,
    /// Canonical coordinates in `N^{n-d}`, paired against `N^d`.
    pub cone: RayCone,
    pub lin_signs: Vec<i64>,
    pub dual_signs: Vec<i64>,
    dual_signed: OnceCell<Vec<Vec<BigInt>>>,
}

impl LinData {
    pub fn new(space: SpaceSignature, cycle_dim: usize) -> Result<LinData> {
        let generators = linear_cone_generators(space, cycle_dim)?;
        let m = pairing_matrix(&space, cycle_dim)?;
        let rays = generators.iter().map(|g| primitive(g.class.coords())).collect();
        let cone = RayCone::new(m.len(), rays, Some(m))?;
        Ok(LinData {
            space,
            cycle_dim,
            generators,
            cone,
            lin_signs: signed_basis_signs(&space, space.n - cycle_dim)?,
            dual_signs: signed_basis_signs(&space, cycle_dim)?,
            dual_signed: OnceCell::new(),
        })
    }

    pub fn dual_degree(&self) -> usize {
        self.cycle_dim
    }

    pub fn lin_degree(&self) -> usize {
        self.space.n - self.cycle_dim
    }

    /// Extreme rays of `Lin_d^*` in signed coordinates, sorted.
    pub fn dual_signed(&self) -> &[Vec<BigInt>] {
        self.dual_signed.get_or_init(|| {
            let mut v: Vec<Vec<BigInt>> =
                self.cone.dual().rays().iter().map(|r| flip(&self.dual_signs, r)).collect();
            v.sort();
            v
        })
    }

    pub fn dual_orbits(&self) -> OrbitSpec {
        OrbitSpec::for_space(&self.space, self.dual_degree())
    }

    pub fn lin_orbits(&self) -> OrbitSpec {
        OrbitSpec::for_space(&self.space, self.lin_degree())
    }

    /// The most negative pairing of a signed dual vector with a generator.
    pub fn violation(&self, w_signed: &[BigInt]) -> Option<Violation> {
        let w = flip(&self.dual_signs, w_signed);
        let mut worst: Option<Violation> = None;
        for g in &self.generators {
            let gc = primitive(g.class.coords());
            let value = self.cone.pair(&w, &gc);
            if value.is_negative() && worst.as_ref().is_none_or(|v| value < v.value) {
                worst = Some(Violation {
                    value,
                    generator: flip(&self.lin_signs, &gc),
                    provenance: g.provenance.clone(),
                });
            }
        }
        worst
    }

    /// Provenance of a generator whose orbit contains the signed vector.
    pub fn provenance_of(&self, v_signed: &[BigInt]) -> Option<&str> {
        let orbits = self.lin_orbits();
        let target = orbits.canonical(v_signed).ok()?;
        self.generators.iter().find_map(|g| {
            let s = flip(&self.lin_signs, &primitive(g.class.coords()));
            (orbits.canonical(&s).ok()? == target).then_some(g.provenance.as_str())
        })
    }

    /// A cone in the same ambient space and pairing as the derived one.
    pub fn sibling(&self, rays_canonical: Vec<Vec<BigInt>>) -> Result<RayCone> {
        RayCone::new(self.cone.ambient_dim(), rays_canonical, self.cone.pairing().cloned())
    }

    pub fn dual_labels(&self) -> Result<Vec<String>> {
        signed_basis_labels(&self.space, self.dual_degree())
    }

    pub fn lin_labels(&self) -> Result<Vec<String>> {
        signed_basis_labels(&self.space, self.lin_degree())
    }
}

/// Shifts by classes supported on exceptional divisors, in signed
/// coordinates of `N^2`: `F_j`, `F_k + G_k`, and optionally the point planes.
pub fn exceptional_shifts(space: &SpaceSignature, with_points: bool) -> Result<(Vec<Vec<BigInt>>, Vec<String>)> {
    let labels = signed_basis_labels(space, 2)?;
    let dim = labels.len();
    let r = space.r;
    let mut shifts = Vec::new();
    let mut names = Vec::new();
    let unit = |i: usize| {
        let mut v = vec![BigInt::from(0); dim];
        v[i] = 1.into();
        v
    };
    for j in 0..r {
        shifts.push(unit(1 + j));
        names.push(labels[1 + j].clone());
    }
    if 2 * r < dim && space.n >= 4 {
        for k in 0..r {
            let mut v = unit(1 + k);
            v[1 + r + k] = 1.into();
            shifts.push(v);
            names.push(format!("{}+{}", labels[1 + k], labels[1 + r + k]));
        }
    }
    if with_points {
        let start = dim - space.s;
        for j in 0..space.s {
            shifts.push(unit(start + j));
            names.push(labels[start + j].clone());
        }
    }
    Ok((shifts, names))
}

/// Linear cones keyed by `(n, r, s, cycle_dim)`.
type LinCache = BTreeMap<(usize, usize, usize, usize), Rc<LinData>>;

/// Shared state across tables: fixtures and memoized linear cones.
pub struct Session {
    fixtures: FixtureSet,
    lin: RefCell<LinCache>,
}

impl Session {
    pub fn new(fixtures: FixtureSet) -> Session {
        Session { fixtures, lin: RefCell::new(BTreeMap::new()) }
    }

    pub fn fixtures(&self) -> &FixtureSet {
        &self.fixtures
    }

    pub fn lin(&self, space: SpaceSignature, cycle_dim: usize) -> Result<Rc<LinData>> {
        let key = (space.n, space.r, space.s, cycle_dim);
        if let Some(d) = self.lin.borrow().get(&key) {
            return Ok(Rc::clone(d));
        }
        let d = Rc::new(LinData::new(space, cycle_dim)?);
        self.lin.borrow_mut().insert(key, Rc::clone(&d));
        Ok(d)
    }

    /// The cone spanned by the orbit expansion of a generator fixture, in
    /// the coordinates and pairing of `lin`.
    pub fn fixture_lin(&self, f: &Fixture, lin: &LinData) -> Result<RayCone> {
        let reps: Vec<Vec<BigInt>> = f.rows.iter().map(|r| ints(&r.coords)).collect();
        let rays = lin.lin_orbits().expand(&reps)?;
        lin.sibling(rays.iter().map(|r| flip(&lin.lin_signs, r)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ShiftOrder;

    #[test]
    fn flip_is_an_involution() {
        let signs = [1, -1, 1];
        let v = ints(&[3, 4, -5]);
        assert_eq!(flip(&signs, &flip(&signs, &v)), v);
    }

    #[test]
    fn x44_dual_has_35_rays() {
        let x = SpaceSignature::new(4, 4, 0).unwrap();
        let s = Session::new(FixtureSet::embedded().unwrap());
        let lin = s.lin(x, 2).unwrap();
        assert_eq!(lin.dual_signed().len(), 35);
        assert!(Rc::ptr_eq(&lin, &s.lin(x, 2).unwrap()));
        assert!(lin.violation(&ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0])).is_none());
        let v = lin.violation(&ints(&[0, 0, 0, 0, 0, 1, 0, 0, 0])).unwrap();
        assert!(v.value.is_negative());
    }

    #[test]
    fn shift_names() {
        let x = SpaceSignature::new(4, 2, 3).unwrap();
        let (shifts, names) = exceptional_shifts(&x, true).unwrap();
        assert_eq!(names.len(), 7);
        let order = ShiftOrder::new(&shifts).unwrap();
        assert_eq!(names[2], "F1+G1");
        let from = ints(&[1, -1, 0, 0, 0, 0, 0, 0]);
        let to = ints(&[1, 0, 0, 1, 0, 0, 0, 1]);
        assert!(order.reaches(&from, &to).is_some());
    }
}
