//! Exact-arithmetic kernel for the derivation algebra of the free Lie algebra
//! on two generators and for mould calculus with flexion operations.
//!
//! The crate is organized in layers:
//!
//! - [`rat`] and [`linalg`]: arbitrary-precision rationals and exact linear
//!   algebra (RREF, kernel, solve) used by everything else.
//! - [`ncalg`] and [`lyndon`]: noncommutative polynomials over a finite
//!   alphabet, the free Lie algebra on `{a,b}`, the push operator, the star
//!   projection into the `b_i` alphabet and C-monomial rewriting.
//! - [`derivations`]: the elliptic generators `eps_{2i}`, `phi0`, the
//!   highest-weight elements `h^d_{p,q}`, the depth-3 filtration membership
//!   test and the Poisson bracket.
//! - [`mpoly`]: sparse multivariate polynomials over exact rationals with
//!   linear-form denominators — the value type of mould components.
//! - [`mould`]: moulds and the flexion toolkit: `mu`, `lu`, `arit` (u- and
//!   v-form), `ari`, `swap`, `push`, alternality and singularity tests.
//! - [`bridge`]: the dictionary `ma`, `da`, `Da`, `psi` between Lie
//!   polynomials/derivations and moulds.
//! - [`relations`]: relation kernels among the `h^d_{p,q}` in depths 2 and 3,
//!   triple-bracket lifts, and the depth-3 spanning check for bialternal
//!   moulds.
//! - [`expr`] and [`verify`]: a small bracket-expression language and the
//!   named verification suites exposed by the CLI.


pub mod bridge;
pub mod derivations;
pub mod expr;
pub mod linalg;
pub mod lyndon;
pub mod mould;
pub mod mpoly;
pub mod ncalg;
pub mod rat;
pub mod relations;
pub mod verify;

mod error;

pub use error::Error;
pub use rat::Rat;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
