//! Exact symbolic intersection-theory engine for jet towers over
//! complete intersection varieties in projective space.
//!
//! The engine computes, with arbitrary-precision integer arithmetic:
//!
//! * Segre classes of twisted cotangent bundles of complete
//!   intersections, as polynomials in the hypersurface degrees;
//! * pushforwards of tautological monomials down the jet tower, reduced
//!   level by level to the base;
//! * Schur-determinant numerical-positivity reports with certified
//!   degree bounds;
//! * the holomorphic-Morse bigness criterion for the canonical nef twist
//!   stack, including a certified effective bound on the degrees;
//! * generic-intersection dimension counts and the hyperbolicity
//!   threshold.
//!
//! Everything is exact: positivity claims ship with a shifted-coefficient
//! certificate rather than a numeric tolerance.

pub mod bigness;
pub mod cli;
pub mod degeneracy;
pub mod error;
pub mod polyring;
pub mod schur;
pub mod towerchow;

pub use error::{Error, Result};
pub use polyring::{AsymOrder, Degree, MultiPoly, PositivityCertificate};
pub use towerchow::{ChowClass, Tower, TowerGeometry};
