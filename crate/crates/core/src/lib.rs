//! Exact-arithmetic commutative algebra over the rationals, specialized to
//! graded ideals in Veronese subrings `R^(c)` of a polynomial ring `R`.
//!
//! The crate is organized bottom-up:
//!
//! * [`monomial`], [`order`], [`poly`], [`matrix`] — multivariate polynomial
//!   arithmetic, term orders, and dense rational linear algebra;
//! * [`groebner`], [`hilbert`], [`syzygy`] — Buchberger's algorithm, normal
//!   forms, elimination, Hilbert functions, and module syzygies;
//! * [`veronese`] — the presentation `S -> R` of the Veronese ring, ideal
//!   expansion/contraction, Borel checks, and generic linear forms;
//! * [`gin`] — randomized generic initial ideals with stability certificates;
//! * [`resolution`], [`homology`] — truncated minimal graded free resolutions,
//!   Betti tables, Tor dimensions, and partial Koszul-homology invariants;
//! * [`cwl`] — the componentwise-linearity decision procedures.
//!
//! Every value is immutable after construction and every operation is a pure
//! function; all arithmetic is exact.

pub mod cwl;
pub mod error;
pub mod gin;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod rng;
pub mod syzygy;
pub mod veronese;

pub use error::AlgebraError;
pub use monomial::{Monomial, VarKind, VarSet};
pub use order::TermOrder;
pub use poly::{Polynomial, Rational};

/// Version tag recorded in serialized artifacts (cache entries, records).
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
