//! Constructive machinery for low-rank matrix completion gap instances.
//!
//! The crate covers the pipeline end to end at desk scale:
//!
//! - graph gadgets: line digraphs, disjoint unions, the central binomial
//!   function `b(n)` ([`graph`]);
//! - exact solvers for chromatic and circular chromatic numbers, used as
//!   oracles for every reduction ([`solve`]);
//! - dense linear algebra with a deterministic Jacobi eigensolver, numerical
//!   rank, coherence, and bounded-norm rank factorizations ([`linalg`]);
//! - eta-nets for Euclidean balls with nearest-point quantization ([`net`]);
//! - nearly orthonormal representations and fitting matrices ([`repr`]);
//! - the reduction chain from gap coloring to completion instances, with
//!   planted YES certificates and verifiers ([`reduce`]);
//! - the net-based coloring-extraction algorithms that certify the NO side
//!   ([`extract`]).

// negated comparisons like `!(theta >= 1.0)` are deliberate: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extract;
pub mod graph;
pub mod linalg;
pub mod net;
pub mod reduce;
pub mod repr;
pub mod solve;
pub mod util;

mod eigen;
mod matrix;

pub use error::{Error, Result};
pub use matrix::{FactorizationPair, Matrix, PartialMatrix};
