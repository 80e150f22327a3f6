//! Twisted conjugacy classes and Reidemeister numbers.
//!
//! The crate is organised around a handful of independent computations:
//!
//! * [`group`]: finite groups given by exact multiplication tables, their
//!   endomorphisms, and the orbit partition of `x ↦ g x φ(g)⁻¹`.
//! * [`chartab`]: exact character tables over cyclotomic fields, the dual
//!   action `χ ↦ χ∘φ` and its fixed points.
//! * [`abelian`]: finitely generated abelian groups, Smith normal form and
//!   Reidemeister numbers as cokernel orders of `1 − φ`.
//! * [`extension`]: the family `ℤᵏ ⋊_θ ℤ` with endomorphisms `(v, n) ↦ (Bv, ±n)`.
//! * [`mobius`]: Möbius inversion of Reidemeister sequences and the
//!   divisibility check on periodic counts, including torus maps.
//!
//! JSON input formats live in [`descriptor`]; the exhaustive sweep over
//! small groups lives in [`corpus`].

pub mod abelian;
pub mod chartab;
pub mod corpus;
pub mod descriptor;
pub mod extension;
pub mod group;
pub mod intmat;
pub mod mobius;
mod number;
pub mod snf;

pub use number::ReidemeisterNumber;
