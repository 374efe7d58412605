//! Exact polyhedral cones: duals under a bilinear pairing by double
//! description, Farkas membership certificates, extreme rays, permutation
//! orbits and shift reductions.

mod bits;
mod dd;
mod orbit;
mod raycone;
mod reduce;
mod simplex;

pub use dd::{normalize_constraints, polar, Polar};
pub use orbit::{BlockGroup, OrbitSpec};
pub use raycone::{Certificate, ConeFile, Facets, MembershipResult, RayCone};
pub use reduce::{decomposition_check, maximally_incident_reduce, shift_certificate, Decomposition, ShiftOrder};
pub use simplex::farkas;
