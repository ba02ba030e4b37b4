//! Exact verification and construction toolkit for BiHom-Lie, BiHom-post-Lie
//! and related nonassociative algebras given by structure constants over
//! the rational-function field ℚ(p₁,…,pₘ).
//!
//! Axioms are decided by evaluating every basis tuple, which is sufficient
//! by multilinearity. With the default `parallel` feature the per-tuple
//! residuals are computed on the rayon pool; without it they run
//! sequentially. Either way the reports are identical.

pub mod catalog;
pub mod construct;
pub mod document;
mod exec;
pub mod linear;
pub mod model;
pub mod scalar;
pub mod verify;

pub use linear::{MatrixS, StructureTensor, Vector};
pub use model::{AlgebraBundle, Kind, MapName, OpName, RepresentationBundle, ViolationReport};
pub use scalar::{Rational, Scalar};
pub use verify::{CheckError, CheckOptions, Verifier};
