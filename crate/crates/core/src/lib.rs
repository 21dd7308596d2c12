//! Exact symbolic computation in the universal enveloping algebra `U(gl_n)`
//! and a family of `gl_2n`-module structures realized on it.
//!
//! The crate is organized around a handful of value types:
//!
//! * [`pbw::UEAElement`] — sparse linear combinations of PBW-ordered monomials
//!   in the generators `e[i,j]` of `gl_n`, with a straightening multiplication.
//! * [`matrix::NumericMatrix`] / [`matrix::UEAMatrix`] — exact matrices over
//!   the scalar field resp. over `U(gl_n)`, with the trace extension, the `F`
//!   matrix, Gelfand invariants and the homomorphisms `psi` and `phi`.
//! * [`action::Gl2nElement`] / [`action::ModuleSpec`] — the block picture of
//!   `gl_2n` and the module structure `M_Q` on `U(gl_n)` for a nonsingular
//!   parameter matrix `Q`, including automorphism twists and an alternative
//!   subset-sum evaluation on monomials.
//! * [`verify`] — mechanical checks of the identities the construction rests
//!   on, reporting counterexamples on failure.
//! * [`expr`] — a small expression language with a deterministic printer.
//!
//! All core math is generic over the scalar type through [`scalar::Scalar`].
//! The supported instantiation is exact arbitrary-precision rationals, exposed
//! through the [`Rat`]-based aliases below; every identity check is then a
//! zero-tolerance equality. Floating-point scalars compile but forfeit the
//! exactness guarantees.

pub mod action;
pub mod expr;
pub mod matrix;
pub mod pbw;
pub mod scalar;
pub mod verify;

use thiserror::Error;

/// Exact rational scalar used by the CLI and the verification suites.
pub type Rat = num_rational::BigRational;
/// Element of `U(gl_n)` over exact rationals.
pub type Element = pbw::UEAElement<Rat>;
/// Matrix with entries in `U(gl_n)` over exact rationals.
pub type ElementMatrix = matrix::UEAMatrix<Rat>;
/// Exact rational numeric matrix.
pub type RatMatrix = matrix::NumericMatrix<Rat>;
/// Element of `gl_2n` over exact rationals.
pub type Gl2n = action::Gl2nElement<Rat>;
/// Module parameters `(n, Q)` over exact rationals.
pub type Spec = action::ModuleSpec<Rat>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("Q singular: C-action undefined")]
    SingularQ,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("element has nonzero C or D block; parabolic action undefined")]
    NonParabolic,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("index ({row},{col}) out of range for n = {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("nonlinear expression where a gl_2n element was expected")]
    Nonlinear,
    #[error("cannot reduce the zero vector")]
    ZeroVector,
    #[error("reduction did not end in a nonzero constant: {0}")]
    ReductionDegenerate(String),
    #[error("Q nonsingular: nothing to check")]
    NonsingularQ,
    #[error("{0}")]
    Invalid(String),
}
