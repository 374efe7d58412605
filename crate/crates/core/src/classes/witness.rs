use crate::error::{Error, Result};
use crate::rational::q;
use crate::ring::{GradedClass, SignedClass, SpaceSignature};

use super::exceptional::{class_from_traces, trace};
use super::profile::IncidenceProfile;
use super::transform::proper_transform_quadric;

pub const WITNESS_NAMES: [&str; 3] = ["segre-cubic-x54", "quadric-surface-x45", "cubic-divisor-x54"];

/// A fixed class with a note on where it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessClass {
    pub name: &'static str,
    pub class: GradedClass,
    pub provenance: &'static str,
}

impl WitnessClass {
    /// Rebuilds the class from its geometric description.
    pub fn recompute(&self) -> Result<GradedClass> {
        match self.name {
            "segre-cubic-x54" => {
                let x = self.class.space();
                let tr = trace(&x, &[(1, 1, 2), (0, 2, 1)]);
                let traces: Vec<_> = (1..=4).map(|i| (i, tr.clone())).collect();
                class_from_traces(&x, 3, 3, &traces, &[])
            }
            "quadric-surface-x45" => {
                let p = IncidenceProfile::new(self.class.space(), 2, [1, 2], [3, 4, 5], [])?;
                proper_transform_quadric(&p, false)
            }
            "cubic-divisor-x54" => hypersurface_divisor(self.class.space(), 3, &[2, 2, 2, 1], &[]),
            other => Err(Error::Unknown { kind: "witness", name: other.into() }),
        }
    }
}

/// The class `d H - Σ m_i E_i - Σ μ_j e_j` of a degree-`d` hypersurface with
/// multiplicity `m_i` along `L_i` and `μ_j` at `p_j`.
pub fn hypersurface_divisor(
    space: SpaceSignature,
    degree: i64,
    line_mult: &[i64],
    point_mult: &[i64],
) -> Result<GradedClass> {
    if line_mult.len() > space.r || point_mult.len() > space.s {
        return Err(Error::Range(format!("more multiplicities than centers on {space}")));
    }
    let mut d = GradedClass::h(space).scale_int(degree);
    for (i, &m) in line_mult.iter().enumerate() {
        d = d.sub(&GradedClass::line_divisor(space, i + 1)?.scale_int(m))?;
    }
    for (j, &m) in point_mult.iter().enumerate() {
        d = d.sub(&GradedClass::point_divisor(space, j + 1)?.scale_int(m))?;
    }
    Ok(d)
}

fn signed(space: SpaceSignature, degree: usize, coords: &[i64]) -> GradedClass {
    SignedClass::new(space, degree, coords.iter().map(|&x| q(x)).collect())
        .and_then(|s| s.to_class())
        .expect("witness table is well formed")
}

pub fn witness(name: &str) -> Result<WitnessClass> {
    match name {
        "segre-cubic-x54" => Ok(WitnessClass {
            name: "segre-cubic-x54",
            class: signed(SpaceSignature::new(5, 4, 0)?, 2, &[3, -4, -4, -4, -4, -1, -1, -1, -1]),
            provenance: "proper transform of a Segre cubic threefold through 4 general lines",
        }),
        "quadric-surface-x45" => Ok(WitnessClass {
            name: "quadric-surface-x45",
            class: signed(SpaceSignature::new(4, 5, 0)?, 2, &[2, -3, -3, -1, -1, -1, -1, -1, 0, 0, 0]),
            provenance: "quadric surface containing L1, L2 and meeting L3, L4, L5",
        }),
        "cubic-divisor-x54" => Ok(WitnessClass {
            name: "cubic-divisor-x54",
            class: signed(SpaceSignature::new(5, 4, 0)?, 1, &[3, -2, -2, -2, -1]),
            provenance: "cubic hypersurface singular along L1, L2, L3 and containing L4",
        }),
        other => Err(Error::Unknown { kind: "witness", name: other.into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_classes_match_recomputation() {
        for name in WITNESS_NAMES {
            let w = witness(name).unwrap();
            assert_eq!(w.recompute().unwrap(), w.class, "{name}");
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(witness("nope"), Err(Error::Unknown { .. })));
    }
}
