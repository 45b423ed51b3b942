//! Quantum speed limit estimates along open-system trajectories.
//!
//! The crate integrates Lindblad master equations on a uniform grid, measures
//! the Bures length of the resulting path through the quantum Fisher
//! information, and compares it with the Bures angle between the endpoints.
//! From those two numbers it derives the family of speed-limit times
//! (`tau_min`, `tau_av`, and the Schatten-norm bounds `tau_op`, `tau_hs`,
//! `tau_tr`) and classifies each estimate as attainable (the path is a
//! geodesic) or not.
//!
//! Run `cargo run --example <name>` for a tour; see the `examples/`
//! directory of this crate.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod quadrature;
pub mod sample;
pub mod state;
pub mod stopping;

pub use error::{Error, Result};
