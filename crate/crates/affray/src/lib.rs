//! Exact-arithmetic toolkit for affine semigroups over countable rings.
//!
//! The crate provides seven exact carrier rings and the affine maps
//! x -> ux + v over them; finite windows with dense set representations and
//! a small set-expression language; window-verified largeness predicates
//! (syndeticity certificates, thickness witnesses, density sequences);
//! two explicit block constructions with exhaustive pattern verifiers;
//! monochromatic and sum-product pattern search including a minimal
//! forcing-window backtracker; and finite Cayley-semigroup models with
//! idempotent, minimal-ideal, and return-set computation.
//!
//! Everything is exact (big integers, exact rationals, polynomials over
//! prime fields); no floating point is used anywhere. Searches parallelize
//! over their data with the default `parallel` feature and fall back to
//! sequential scans without it; results are identical either way.

pub mod affine;
pub mod constructions;
pub mod error;
mod exec;
pub mod finite_models;
pub mod largeness;
pub mod patterns;
pub mod primes;
pub mod rings;
pub mod runner;
pub mod windows;

pub use error::{Error, Result};
