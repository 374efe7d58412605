//! Classes of geometrically meaningful cycles on `X^n_{r,s}`.

mod exceptional;
mod generators;
mod profile;
mod transform;
mod witness;

pub use exceptional::{
    class_from_traces, exceptional_line_cycle, exceptional_line_cycle_in_frame, exceptional_point_cycle, trace,
    LineShape, RulingPoly,
};
pub use generators::{feasible_profiles, linear_cone_generators, Generator};
pub use profile::{feasible_profile, feasible_quadric, Feasibility, IncidenceProfile};
pub use transform::{proper_transform_linear, proper_transform_quadric};
pub use witness::{hypersurface_divisor, witness, WitnessClass, WITNESS_NAMES};
