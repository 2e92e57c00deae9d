use serde::{Deserialize, Serialize};

use super::farey::{length_from_trace, slope_trace};
use super::holonomy::Holonomy;
use super::slope::{Slope, Unimodular};
use crate::error::{Error, Result};

/// Traces within this distance of 2 are treated as parabolic.
pub const PARABOLIC_TOLERANCE: f64 = 1e-12;

/// Relative tolerance on the Markov cubic.
pub const CUBIC_TOLERANCE: f64 = 1e-9;

const MAX_REDUCTION_STEPS: usize = 1_000_000;

/// Traces of the holonomy of the slopes `(1,0)`, `(0,1)` and `(1,1)`.
///
/// A cusped torus has `x^2 + y^2 + z^2 = xyz`, which is the condition that the
/// commutator of the generators is parabolic with trace -2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkovChart {
    x: f64,
    y: f64,
    z: f64,
}

impl MarkovChart {
    /// The modular torus.
    pub const MODULAR: MarkovChart = MarkovChart {
        x: 3.0,
        y: 3.0,
        z: 3.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for t in [x, y, z] {
            if !t.is_finite() {
                return Err(Error::InvalidChart(format!("trace {t} is not finite")));
            }
            if t < 2.0 + PARABOLIC_TOLERANCE {
                return Err(Error::NonHyperbolicTrace(t));
            }
        }
        let chart = MarkovChart { x, y, z };
        let residual = chart.cubic_residual();
        if residual.abs() > CUBIC_TOLERANCE * (x * y * z) {
            return Err(Error::InvalidChart(format!(
                "({x}, {y}, {z}) is off the Markov cubic by {residual:e}"
            )));
        }
        Ok(chart)
    }

    pub fn traces(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }

    /// `x^2 + y^2 + z^2 - xyz`.
    pub fn cubic_residual(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z - self.x * self.y * self.z
    }

    /// Relabels the chart by a mapping class: the new generators are
    /// `g(1,0)` and `g(0,1)`.
    pub fn transport(&self, g: &Unimodular) -> Result<MarkovChart> {
        let det = g.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        let [a0, a1] = g.apply([1, 0]);
        let [b0, b1] = g.apply([0, 1]);
        let x = slope_trace(Slope::canonical(a0, a1), self);
        let y = slope_trace(Slope::canonical(b0, b1), self);
        let z = slope_trace(Slope::canonical(a0 + b0, a1 + b1), self);
        MarkovChart::new(x, y, z)
    }

    pub fn to_fn(&self) -> FnChart {
        markov_to_fn(self)
    }

    /// Length of the shortest closed geodesic.
    pub fn systole(&self) -> Result<f64> {
        let reduced = markov_reduce(self)?;
        Ok(length_from_trace(reduced.x))
    }
}

/// Fenchel–Nielsen length and twist along the curve `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FnChart {
    length: f64,
    twist: f64,
}

impl FnChart {
    pub fn new(length: f64, twist: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::NonPositiveLength(length));
        }
        if !twist.is_finite() {
            return Err(Error::InvalidChart(format!("twist {twist} is not finite")));
        }
        Ok(FnChart { length, twist })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn twist(&self) -> f64 {
        self.twist
    }
}

/// Markov triple of the Fenchel–Nielsen structure; see
/// [`Holonomy::fenchel_nielsen`] for the twist convention.
pub fn fn_to_markov(chart: FnChart) -> Result<MarkovChart> {
    let (x, y, z) = Holonomy::fenchel_nielsen(chart).traces();
    MarkovChart::new(x, y, z)
}

/// Inverse of [`fn_to_markov`]. With `y = 2 coth(l/2) cosh(tau/2)` and
/// `z = 2 coth(l/2) cosh((l + tau)/2)` one gets `sinh(tau/2) = (z - xy/2) / x`.
pub fn markov_to_fn(chart: &MarkovChart) -> FnChart {
    let (x, y, z) = chart.traces();
    FnChart {
        length: length_from_trace(x),
        twist: 2.0 * ((z - 0.5 * x * y) / x).asinh(),
    }
}

/// Sorted representative `x <= y <= z` with `z <= xy - z`, reached by
/// exchanging the largest trace for its Vieta partner while that decreases it.
pub fn markov_reduce(chart: &MarkovChart) -> Result<MarkovChart> {
    let mut t = [chart.x, chart.y, chart.z];
    t.sort_by(f64::total_cmp);
    let mut steps = 0;
    loop {
        let partner = t[0] * t[1] - t[2];
        if partner >= t[2] {
            break;
        }
        steps += 1;
        if steps > MAX_REDUCTION_STEPS || !partner.is_finite() {
            return Err(Error::NonConvergent(steps));
        }
        t[2] = partner;
        t.sort_by(f64::total_cmp);
    }
    Ok(MarkovChart {
        x: t[0],
        y: t[1],
        z: t[2],
    })
}
