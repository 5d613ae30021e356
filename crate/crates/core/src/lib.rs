//! Joint spectral radius structure of one-parameter families of 2x2 matrix
//! pairs whose extremal products are Sturmian.
//!
//! For a pair `A0`, `A1` and a scale `alpha > 0`, the joint spectral radius of
//! `{A0, alpha * A1}` is attained along balanced words, and the frequency of
//! the symbol 1 in those words is a monotone "devil's staircase" function of
//! `alpha`. This crate computes the plateaus of that function exactly, the
//! irrational points to certified precision, and brute-force bounds to check
//! both.

pub mod contfrac;
pub mod error;
pub mod family;
pub mod float;
pub mod irrational_preimage;
pub mod linalg;
pub mod oracle;
pub mod quad;
pub mod rational_preimage;
pub mod staircase;
pub mod words;

pub use num_rational::BigRational as Rational;

pub use contfrac::{CfExpansion, ConvergentSeq};
pub use error::{Error, ErrorKind, Result};
pub use family::{HypothesisReport, MatrixFamily};
pub use float::{Ball, BigFloat, FloatCtx, Real};
pub use linalg::{ExactMat2, FloatMat2, Mat2, QuadMat2};
pub use quad::QuadExt;
pub use rational_preimage::{Endpoint, PreimageInterval, SValue};
pub use words::{FiniteWord, StandardPair};

/// Shorthand for building a rational from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
