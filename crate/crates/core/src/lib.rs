//! Amplitude-encoding state preparation built on quantum phase estimation.
//!
//! The crate is split along the pipeline:
//!
//! - [`sim`] is a dense statevector simulator covering every gate the
//!   preparation circuits use. It doubles as the verification oracle.
//! - [`diag`] quantizes phases onto the dyadic grid `2π·p/2^m` and
//!   synthesizes diagonal unitaries as exact products of multi-controlled
//!   `Z^(±l)` gates.
//! - [`prep`] builds the deterministic (marginal-tree) and probabilistic
//!   (post-selected) preparation circuits, together with an ancilla-free
//!   reference path.
//! - [`analysis`] evaluates distances, success probabilities and the
//!   theoretical error bounds.
//!
//! Qubit 0 is always the most significant bit of a basis index.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod diag;
mod error;
pub mod prep;
pub mod sim;

pub use error::{Error, Result};

pub use num_complex::Complex64;
