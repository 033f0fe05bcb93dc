//! Exact-arithmetic toolkit for the matrix-valued spherical functions of the
//! complex projective plane.
//!
//! The library constructs the normalized families `w -> Phi(w,t)` for types
//! `(n, l)` with `l <= 1`, expands products `Phi(i,t) Phi(j,t)` in the family
//! basis with constant matrix coefficients, derives the three-term recurrence
//! in `w`, machine-checks the sign-pattern conjectures (alternating signs at
//! `l = 0`, the hook alternating property at `l >= 1`), and builds the
//! associated matrix-valued orthogonal polynomials `Psi(j,t)`.
//!
//! Everything is computed over arbitrary-precision rationals; every identity
//! the crate reports is bit-exact, never approximate.

pub mod conjectures;
pub mod exactnum;
pub mod expand;
pub mod hyper;
pub mod mop;
pub mod papertables;
pub mod polyalg;
pub mod spherical;

pub use exactnum::Rat;
pub use polyalg::{Poly, PolyMatrix, RatMatrix};
