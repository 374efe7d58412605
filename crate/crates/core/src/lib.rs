//! Exact intersection theory, cycle classes and polyhedral cone duality on
//! blowups `X^n_{r,s}` of projective space along `r` general lines and `s`
//! general points.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: the numerical intersection ring `N^*(X^n_{r,s})` over exact
//!   rationals, the top-degree evaluation and the perfect pairing.
//! * [`classes`]: classes of proper transforms of linear spaces and quadrics,
//!   linear cycles inside exceptional divisors, and linear-cone generators.
//! * [`cone`]: exact double description, Farkas membership certificates,
//!   permutation orbits and the maximally-incident reduction.
//! * [`schubert`]: Pieri products and degrees on Grassmannians.
//! * [`repro`]: fixtures, table regeneration, diff reports and verdicts.

pub mod classes;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod rational;
pub mod repro;
pub mod ring;
pub mod schubert;

pub use error::{Error, Result};
pub use rational::Q;
