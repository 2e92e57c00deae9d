//! Counting simple closed curves and multicurves on hyperbolic surfaces.
//!
//! Multicurves are integer points of the Dehn–Thurston coordinate cone, and
//! counting them in the balls of a length function approximates the Thurston
//! measure of the unit ball. On the once-punctured torus lengths are exact,
//! computed from Markov trace triples, and the average count over moduli
//! space is checked against the unfolded volume by Monte Carlo.

// `!(x > 0.0)` deliberately rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counting;
pub mod error;
pub mod exec;
pub mod length;
pub mod moduli;
pub mod surface;
pub mod torus;

pub use error::{Error, Result};
pub use exec::Execution;
