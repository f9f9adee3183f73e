//! Exact-arithmetic analysis of automorphism actions on finite-dimensional
//! tori and solenoids.
//!
//! All decisions are made on the dual side: an automorphism of the r-torus
//! T^r or of the solenoid B_r (the dual of discrete Q^r) is represented by
//! an invertible rational r x r matrix acting on the character space, and
//! ergodicity, distality, structure series and witnesses are computed from
//! that matrix with arbitrary-precision rational arithmetic. Verdicts come
//! with machine-checkable certificates: root-of-unity orders, unipotence
//! exponents, finite-orbit characters with their orbits, invariant subspace
//! chains with per-layer finite images, and explicit words in the input
//! generators.
//!
//! Module map:
//! - [`rat`], [`poly`], [`matrix`], [`subspace`]: exact rational linear
//!   algebra (canonical echelon subspaces, characteristic polynomials,
//!   restrictions, quotients, invariant cores).
//! - [`cyclo`]: cyclotomic polynomials, the universal exponent M(r) and
//!   Minkowski's order bound B(r), and the two eigenvalue tests.
//! - [`autdyn`]: ergodicity/distality of a single automorphism and its
//!   ergodic-distal splitting.
//! - [`groupdyn`]: finitely generated groups: orbits, finite-image
//!   recognition, the finite-orbit character subspace W, structure series,
//!   nilpotency verification.
//! - [`ergfind`]: constructive search for an ergodic element of an ergodic
//!   nilpotent group.
//! - [`examples`]: generators for the standard fixture families.
//! - [`simulate`]: floating-point torus-orbit statistics (heuristic
//!   cross-checks only, never verdict sources).

pub mod autdyn;
pub mod cyclo;
pub mod ergfind;
pub mod examples;
pub mod groupdyn;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod simulate;
pub mod subspace;

pub use autdyn::{AutoVerdict, SplitReport};
pub use groupdyn::{GenSet, GroupVerdict, Mode, SeriesReport, Word};
pub use matrix::{QVec, RatMatrix};
pub use poly::Polynomial;
pub use rat::Rat;
pub use subspace::Subspace;
