//! Exact hyperbolic geometry of the once-punctured torus.
//!
//! Structures are carried as Markov trace triples; lengths of simple closed
//! geodesics come from the Fricke trace recursion on the Farey tree, with
//! Fenchel–Nielsen coordinates converted on input.

mod chart;
mod farey;
mod holonomy;
mod norm;
mod slope;

pub use chart::{
    fn_to_markov, markov_reduce, markov_to_fn, FnChart, MarkovChart, CUBIC_TOLERANCE,
    PARABOLIC_TOLERANCE,
};
pub use farey::{
    count_multicurves, count_multicurves_with, count_simple, count_simple_with, depth_cap,
    enumerate_simple, enumerate_simple_with, length_from_trace, multiples_within, slope_length,
    slope_trace, trace_from_length, unit_ball_area, unit_ball_area_with, SimpleCurveRecord,
};
pub use holonomy::{Holonomy, Mat2};
pub use norm::{TorusLength, DEFAULT_RESOLUTION};
pub use slope::{mcg_apply, orbit_bfs, Slope, Unimodular};
