//! The numerical intersection ring `N^*(X^n_{r,s})`.
//!
//! `N^*` is generated by the hyperplane pullback `H`, the exceptional
//! divisors `E_i` over the blown-up lines and `e_j` over the blown-up points.
//! Every class is stored as exact rational coordinates over a fixed
//! canonical monomial basis of its degree (see [`canonical_basis`]).
//!
//! Products are reduced by eager monomial rewriting:
//!
//! * two distinct exceptional generators multiply to zero;
//! * `H·e_j = 0` and `H²·E_i = 0`;
//! * `E_i^{n-1} = (-1)^n H^{n-1} + (n-1) H E_i^{n-2}`;
//! * `e_j^n = (-1)^{n-1} H^n`;
//! * anything above degree `n` vanishes.
//!
//! The last two relations are not primitive data: they are forced by the
//! top-degree numbers under the perfect pairing, and [`relations::self_test`]
//! re-derives them by solving those linear systems.

mod class;
mod json;
mod monomial;
mod pairing;
pub mod relations;
mod signed;
mod space;

pub use class::{canonical_class, GradedClass};
pub use json::{ClassJson, SpaceJson};
pub use monomial::{canonical_basis, basis_index, Center, Monomial, RawMonomial};
pub use pairing::{pairing_matrix, signed_pairing_matrix};
pub use signed::{signed_basis_labels, signed_basis_signs, Convention, SignedClass};
pub use space::SpaceSignature;
