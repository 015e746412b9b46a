//! Biased Fourier-Walsh analysis on the discrete cube `{0,1}^n`.
//!
//! The crate works with the product measure `mu_p` on the cube, the orthonormal
//! character basis `u_S` of `L^2(mu_p)`, and the blow-up `g = Red(f)` that
//! replaces every biased coordinate by `m` uniform coordinates thresholded on
//! the binary value of the block. Around that construction it provides exact
//! desk-scale checkers for the level-weight lower bound, the influence
//! transfer bounds, and the inequalities that follow from them (biased
//! hypercontractivity, boundary and correlation bounds for monotone sets).
//!
//! Conventions used everywhere:
//! * coordinate `i` (1-based) is bit `i - 1` of a point index, so coordinate 1
//!   is the least significant bit;
//! * a subset `S` of coordinates uses the same bit layout;
//! * `floor(log(1/p))` is taken in base 2, while `log(e/x)` in the
//!   application inequalities is the natural logarithm.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod math;

pub mod bias;
pub mod binomial;
pub mod error;
pub mod fourier;
pub mod function;
pub mod inequality;
pub mod influence;
pub mod mask;
pub mod oracle;
pub mod reduction;
pub mod report;

pub use bias::{dyadic_approx, DyadicBias, Measure};
pub use error::{Error, Result};
pub use fourier::{character, inverse_transform, q_norm, transform, Spectrum};
pub use function::{dual_function, named_family, CubeFunction, Family};
pub use influence::{boundary_sets, influence, influences, is_monotone, BoundarySummary, InfluenceVector};
pub use mask::{PointMask, SubsetMask};
pub use reduction::{reduce, BlockDecomposition, PredictedCoefficient, ReducedFunction, DEFAULT_DENSE_CAP};
pub use report::{InequalityReport, Relation, Verdict};
