//! Exact arithmetic for the adelic approach to intersection theory and the
//! Riemann-Roch theorem on toric surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`series`]: exact base fields, one-variable Laurent series
//!   and iterated Laurent series `k((u))((t))` with certified precision windows,
//!   plus the two-dimensional residue.
//! * [`curve`]: adeles on the projective line, relative dimension, cohomology
//!   by explicit linear algebra and the degree homomorphism.
//! * [`surface`]: the model surfaces `P2` and `P1xP1`, their divisors, flags and
//!   local equations, and closed-form oracles.
//! * [`dim`]: lattices `A12(D)`, dimension-theory torsors and the canonical
//!   `mu` / `nu` elements.
//! * [`ext`]: the central extension of the idele group by `Z`, its canonical
//!   splittings, the commutator pairing and the invariant `f`.
//! * [`reciprocity`]: the residue pairing on adeles and both reciprocity laws.
//!
//! Everything here is `no_std` with `alloc`; IO lives in the companion CLI crate.
#![no_std]

extern crate alloc;

pub mod curve;
pub mod dim;
pub mod error;
pub mod ext;
pub mod linalg;
pub mod parse;
pub mod reciprocity;
pub mod report;
pub mod scalar;
pub mod series;
pub mod surface;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
pub use series::{IterLaurent, Laurent1, TwoForm, WindowPolicy};
