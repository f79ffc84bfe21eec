//! Quantitative generalizations of the Pythagorean theorem.
//!
//! Every closed form in this crate is paired with an independent route to
//! the same number:
//!
//! | Identity | Closed form | Independent route |
//! |----------|-------------|-------------------|
//! | plane right triangle | [`euclid::pythagoras_hypotenuse`] | [`euclid::law_of_cosines`] at a right angle |
//! | spherical / hyperbolic right triangle | [`curved::right_hypotenuse`] | [`oracle::embedded_hypotenuse`] |
//! | disk areas on curved surfaces | [`curved::unified_hypotenuse_area`] | [`curved::disk_area`] of a measured hypotenuse |
//! | proper triangles | [`curved::proper_hypotenuse`] | [`oracle::proper_triangle_by_angles`] |
//! | right-corner simplexes | [`simplex::RightSimplex::hypotenusal_volume_pythagoras`] | [`simplex::RightSimplex::hypotenusal_volume_gram`] |
//! | projected volumes | [`linalg::gram_volume`] | [`linalg::wedge_norm`], Cauchy–Binet minors |
//! | complex subspaces | [`linalg::complex_gram_2m_volume`] | sum of squared complex minors |
//!
//! The `pythagoras` binary drives randomized verification suites over all
//! of the above (see [`cli`]).

// `!(x > 0.0)` is used on purpose so NaN lands in the error branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curved;
pub mod error;
pub mod euclid;
pub mod linalg;
pub mod oracle;
pub mod projections;
pub mod simplex;

pub use error::{Error, Result};

/// Relative discrepancy `|lhs - rhs| / max(|lhs|, 1)` used by every report.
pub fn residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(1.0)
}
