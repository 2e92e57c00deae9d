use num_integer::Integer;

use super::chart::MarkovChart;
use super::farey::{length_from_trace, slope_trace, trace_from_length};
use super::slope::Slope;
use crate::length::LengthFunction;

/// Default resolution of [`TorusLength`]: slopes up to this length are
/// vertices of the inscribed unit-ball polygon.
pub const DEFAULT_RESOLUTION: f64 = 100.0;

const MAX_STEPS: usize = 1_000_000;

/// Hyperbolic length of weighted simple curves `n * (p, q)`, extended to
/// `R^2`.
///
/// Lattice points use the exact formula `gcd(p, q) * l(slope)`. Real vectors
/// use the gauge of the polygon whose vertices are `s / l(s)` for every slope
/// `s` visited by the Farey traversal at the given resolution. The polygon is
/// inscribed in the convex unit ball of the length norm, so the extension is
/// exactly homogeneous and subadditive, and it agrees with the exact length
/// on every ray through a slope of length at most the resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusLength {
    chart: MarkovChart,
    resolution: f64,
    threshold: f64,
}

impl TorusLength {
    pub fn new(chart: MarkovChart) -> Self {
        Self::with_resolution(chart, DEFAULT_RESOLUTION)
    }

    pub fn with_resolution(chart: MarkovChart, resolution: f64) -> Self {
        TorusLength {
            chart,
            resolution,
            threshold: trace_from_length(resolution),
        }
    }

    pub fn chart(&self) -> &MarkovChart {
        &self.chart
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }
}

impl LengthFunction for TorusLength {
    fn label(&self) -> String {
        "hyperbolic".into()
    }

    fn evaluate(&self, v: &[f64]) -> f64 {
        let (mut p, mut q) = (v[0], v[1]);
        if q < 0.0 || (q == 0.0 && p < 0.0) {
            p = -p;
            q = -q;
        }
        let (x, y, z) = self.chart.traces();
        if q == 0.0 {
            return p * length_from_trace(x);
        }
        if p == 0.0 {
            return q * length_from_trace(y);
        }
        if p == q {
            return p * length_from_trace(z);
        }
        let (mut ta, mut tb, mut behind, mut al, mut be) = if p < 0.0 {
            (x, y, z, -p, q)
        } else if p > q {
            (x, z, y, p - q, q)
        } else {
            (z, y, x, p, q - p)
        };
        for _ in 0..MAX_STEPS {
            let td = ta * tb - behind;
            if al == be {
                return al * length_from_trace(td);
            }
            if td > ta.max(tb) && td > self.threshold {
                break;
            }
            if al > be {
                behind = tb;
                tb = td;
                al -= be;
            } else {
                behind = ta;
                ta = td;
                be -= al;
            }
        }
        al * length_from_trace(ta) + be * length_from_trace(tb)
    }

    fn lattice_length(&self, x: &[i64]) -> f64 {
        let (p, q) = (x[0], x[1]);
        if p == 0 && q == 0 {
            return 0.0;
        }
        let g = p.gcd(&q);
        let s = Slope::canonical(p / g, q / g);
        g as f64 * length_from_trace(slope_trace(s, &self.chart))
    }
}
