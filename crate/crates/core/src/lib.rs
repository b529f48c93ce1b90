//! Exact Chow rings of Grassmannians of linear subspaces and of the
//! nonlinear Grassmannians `M_{P^k}(P^r, d)` of degree-`d` maps `P^k -> P^r`.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: rationals, weighted-graded polynomials, truncated power
//!   series and the exact linear algebra every other module leans on.
//! - [`schubert`]: the Schubert basis of `Ch(k, r, 1)`, Pieri and Giambelli,
//!   Chern classes of the tautological subbundle and Poincaré duality.
//! - [`projbundle`]: push-forward along `P(S) -> G(P^k, P^n)`.
//! - [`nonlinear`]: the ring `Ch(k, r, d)` realised through the scaling
//!   isomorphism `s_j -> d^(k+j) sigma_j`, together with its scaled
//!   presentation.
//! - [`git`]: torus-weight bookkeeping for the stability of basepoint-free
//!   tuples of forms.
//!
//! All arithmetic is exact. Nothing in here touches floating point.

pub mod algebra;
pub mod error;
pub mod git;
pub mod nonlinear;
pub mod projbundle;
pub mod schubert;

pub use algebra::{GradedPolynomial, Rational, TruncatedSeries};
pub use error::{Error, Result};
pub use nonlinear::{NonlinearElement, NonlinearRing};
pub use projbundle::XiPolynomial;
pub use schubert::{GrassmannRing, Partition, SchubertElement};
