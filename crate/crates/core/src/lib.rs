//! Exact similarity certificates for prescribed diagonals.
//!
//! Given a non-scalar square matrix `A` and targets `γ₁, …, γₙ` summing to
//! `tr A`, the [`prescribe`] module constructs `g` and `B = g·A·g⁻¹` with
//! `diag B = (γ₁, …, γₙ)`:
//!
//! * over any field ([`prescribe::fillmore_field`]),
//! * over ℤ with rational `g` but integral `B` ([`prescribe::prescribe_ksim_integral`]),
//! * over ℤ with unimodular `g` when `n ≥ 3` and `A` is non-scalar modulo
//!   every prime ([`prescribe::prescribe_zsim`]).
//!
//! Two obstructions are checked mechanically: the 3×3 matrix over
//! ℤ[∛16] in [`counterexample`], and the 2×2 quadratic-form argument in
//! [`prescribe::decide_2x2`].

pub mod canonical;
pub mod counterexample;
pub mod error;
pub mod json;
pub mod matrix;
pub mod prescribe;
pub mod ring;
pub mod testkit;

pub use error::{Error, ErrorKind, Result};
