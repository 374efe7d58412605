//! Schubert calculus on Grassmannians `G(a,n)` of `a`-planes in `P^n`.
//!
//! Partitions live in the box with `a+1` rows and `n-a` columns. The special
//! class `σ_p` is the locus of `a`-planes meeting a fixed `(n-a-p)`-plane, so
//! `σ_{n-a}` is "contains a point" and `σ_{n-a, n-a}` is "contains a line".

mod codim;
mod expr;
mod parse;

pub use codim::{
    expected_codim, expected_codim_vertex, incidence_class, incidence_codim,
    transversality_report, Condition, ExpectedCodim, TransversalityReport,
};
pub use expr::{schubert_degree, Grassmannian, Partition, SchubertExpression};
pub use parse::{parse_expression, ParsedExpression};
