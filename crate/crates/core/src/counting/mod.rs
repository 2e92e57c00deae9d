//! Riemann-sum measures `lambda_t`, orbit densities `mu_t`, and fits.
//!
//! `lambda_t = |{x != 0 in the lattice : L(x) <= t}| / t^d` uses the closed
//! ball; boundary points do not matter in the limit. Counts are over the
//! multicurve lattice itself, so on the Dehn–Thurston lattice the limit is
//! `2^{-k}` times that of a raw `Z^{2k}` count.

mod fit;
mod lattice;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::length::{ball_bounding_radius, l1_lattice, LengthFunction, QuasiConstants};
use crate::surface::{validate_multicurve, MulticurveCoords};
use crate::torus::{enumerate_simple_with, multiples_within, MarkovChart, Slope};

pub use fit::{fit_fixed_exponent, fit_power_law, linear_fit, FitResult, FitWindow, LinearFit};
pub use lattice::Lattice;

/// A fixed curve whose mapping class orbit is counted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orbit {
    /// On the torus lattice every slope has the same orbit: all primitive
    /// vectors of `Z^2`, with both signs.
    TorusPrimitive(Slope),
    /// Orbit under the Dehn twists about the pants curves, which shift each
    /// twist coordinate by multiples of its intersection number.
    PantsTwists(MulticurveCoords),
}

impl Orbit {
    fn contains(&self, x: &[i64]) -> bool {
        match self {
            Orbit::TorusPrimitive(_) => x[0].gcd(&x[1]) == 1,
            Orbit::PantsTwists(base) => base.same_twist_orbit(x),
        }
    }

    fn check(&self, lattice: &Lattice) -> Result<()> {
        match (self, lattice) {
            (Orbit::TorusPrimitive(_), Lattice::Torus) => Ok(()),
            (Orbit::PantsTwists(base), Lattice::DehnThurston(space)) => {
                validate_multicurve(space, base)
            }
            _ => Err(Error::UnsupportedOrbit),
        }
    }
}

/// A `lambda_t` series and its extrapolated limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub t_values: Vec<f64>,
    pub counts: Vec<u64>,
    pub lambda_t: Vec<f64>,
    pub extrapolated: Option<f64>,
    pub error_bar: Option<f64>,
}

impl MeasureEstimate {
    fn new(t_values: Vec<f64>, counts: Vec<u64>, dimension: usize) -> Self {
        let lambda_t = normalize(&t_values, &counts, dimension);
        MeasureEstimate {
            t_values,
            counts,
            lambda_t,
            extrapolated: None,
            error_bar: None,
        }
    }
}

/// Orbit counts against lattice counts on the same balls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitCensus {
    pub base: Orbit,
    pub t_values: Vec<f64>,
    pub orbit_counts: Vec<u64>,
    pub lattice_counts: Vec<u64>,
    pub mu_t: Vec<f64>,
    pub lambda_t: Vec<f64>,
}

impl OrbitCensus {
    fn new(
        base: Orbit,
        t_values: Vec<f64>,
        orbit_counts: Vec<u64>,
        lattice_counts: Vec<u64>,
        d: usize,
    ) -> Self {
        let mu_t = normalize(&t_values, &orbit_counts, d);
        let lambda_t = normalize(&t_values, &lattice_counts, d);
        OrbitCensus {
            base,
            t_values,
            orbit_counts,
            lattice_counts,
            mu_t,
            lambda_t,
        }
    }

    /// `mu_t / lambda_t`, zero where the ball is empty.
    pub fn ratios(&self) -> Vec<f64> {
        self.orbit_counts
            .iter()
            .zip(&self.lattice_counts)
            .map(|(&o, &l)| if l == 0 { 0.0 } else { o as f64 / l as f64 })
            .collect()
    }

    /// Limit of `mu_t` and its standard error, as in [`extrapolate`].
    pub fn extrapolate_mu(&self) -> Result<(f64, f64)> {
        extrapolate_series(&self.t_values, &self.mu_t)
    }
}

fn normalize(t_values: &[f64], counts: &[u64], d: usize) -> Vec<f64> {
    t_values
        .iter()
        .zip(counts)
        .map(|(t, &c)| c as f64 / t.powi(d as i32))
        .collect()
}

fn check_schedule(t_values: &[f64]) -> Result<()> {
    if t_values.is_empty() {
        return Err(Error::InvalidArgument("empty t schedule".into()));
    }
    if let Some(&t) = t_values.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(Error::NonPositiveLength(t));
    }
    if t_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "t schedule must be increasing".into(),
        ));
    }
    Ok(())
}

/// Fits `value = limit + a / t` and returns the limit with its standard error.
/// Needs at least three points spanning a factor of four in `t`.
pub fn extrapolate_series(t_values: &[f64], values: &[f64]) -> Result<(f64, f64)> {
    if t_values.len() != values.len() {
        return Err(Error::InvalidArgument("series lengths differ".into()));
    }
    check_schedule(t_values)?;
    let span = t_values[t_values.len() - 1] / t_values[0];
    if t_values.len() < 3 || span < 4.0 {
        return Err(Error::InsufficientSeries(format!(
            "{} t-values spanning a factor {span}, need 3 spanning 4",
            t_values.len()
        )));
    }
    let xs: Vec<f64> = t_values.iter().map(|t| 1.0 / t).collect();
    let fit = linear_fit(&xs, values)?;
    Ok((fit.intercept, fit.intercept_stderr))
}

/// Fills in the extrapolated limit of a measure series.
pub fn extrapolate(series: &MeasureEstimate) -> Result<MeasureEstimate> {
    let (limit, err) = extrapolate_series(&series.t_values, &series.lambda_t)?;
    Ok(MeasureEstimate {
        extrapolated: Some(limit),
        error_bar: Some(err),
        ..series.clone()
    })
}

/// `(lambda_1 c_hi^{-d}, lambda_1 c_lo^{-d})` where `lambda_1` is the
/// measure of the L1 unit ball: the unit ball of `L` lies between the L1
/// balls of radius `1 / c_hi` and `1 / c_lo`.
pub fn sandwich_lambda(lattice: &Lattice, quasi: &QuasiConstants) -> Result<(f64, f64)> {
    quasi.check()?;
    let d = lattice.dimension() as i32;
    let l1 = lattice.l1_unit_ball_measure();
    Ok((l1 * quasi.c_hi.powi(-d), l1 * quasi.c_lo.powi(-d)))
}

/// Lattice and orbit counts in one ball.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BallCount {
    pub lattice: u64,
    pub orbit: u64,
}

#[derive(Default)]
struct Tally {
    lattice: u64,
    orbit: u64,
    max_l1: i64,
}

const BOX_ATTEMPTS: usize = 6;

/// Counts lattice points in length balls by enumerating an L1 box around
/// each ball.
///
/// The box comes from the (empirical) quasi-comparison constants. As a
/// completeness check no counted point may come within 1% of the box
/// boundary; if one does the box is enlarged, and after a few enlargements
/// the count fails with [`Error::IncompleteBox`].
#[derive(Debug, Clone)]
pub struct LatticeCounter<L> {
    lattice: Lattice,
    length: L,
    quasi: QuasiConstants,
    exec: Execution,
}

impl<L: LengthFunction> LatticeCounter<L> {
    pub fn new(lattice: Lattice, length: L, quasi: QuasiConstants) -> Result<Self> {
        quasi.check()?;
        Ok(LatticeCounter {
            lattice,
            length,
            quasi,
            exec: Execution::default(),
        })
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dimension(&self) -> usize {
        self.lattice.dimension()
    }

    /// Nonzero lattice points with `L(x) <= t`, and how many lie in `orbit`.
    pub fn count_ball(&self, t: f64, orbit: Option<&Orbit>) -> Result<BallCount> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::NonPositiveLength(t));
        }
        if let Some(o) = orbit {
            o.check(&self.lattice)?;
        }
        let mut radius = (1.02 * ball_bounding_radius(&self.quasi, t)?).ceil() as i64 + 1;
        for _ in 0..BOX_ATTEMPTS {
            let tally: Tally = self.lattice.fold_l1_ball(
                radius,
                self.exec,
                |acc: &mut Tally, x| {
                    if self.length.lattice_length(x) <= t {
                        acc.lattice += 1;
                        acc.max_l1 = acc.max_l1.max(l1_lattice(x));
                        if orbit.is_some_and(|o| o.contains(x)) {
                            acc.orbit += 1;
                        }
                    }
                },
                |acc, s| {
                    acc.lattice += s.lattice;
                    acc.orbit += s.orbit;
                    acc.max_l1 = acc.max_l1.max(s.max_l1);
                },
            );
            if (tally.max_l1 as f64) < 0.99 * radius as f64 {
                return Ok(BallCount {
                    lattice: tally.lattice,
                    orbit: tally.orbit,
                });
            }
            radius = (1.5 * radius as f64).ceil() as i64;
        }
        Err(Error::IncompleteBox { radius })
    }

    pub fn lambda_t(&self, t: f64) -> Result<f64> {
        let n = self.count_ball(t, None)?.lattice;
        Ok(n as f64 / t.powi(self.dimension() as i32))
    }

    pub fn mu_t(&self, orbit: &Orbit, t: f64) -> Result<f64> {
        let n = self.count_ball(t, Some(orbit))?.orbit;
        Ok(n as f64 / t.powi(self.dimension() as i32))
    }

    /// The `lambda_t` series, without extrapolation.
    pub fn measure(&self, t_values: &[f64]) -> Result<MeasureEstimate> {
        check_schedule(t_values)?;
        let counts = t_values
            .iter()
            .map(|&t| self.count_ball(t, None).map(|c| c.lattice))
            .collect::<Result<Vec<_>>>()?;
        Ok(MeasureEstimate::new(
            t_values.to_vec(),
            counts,
            self.dimension(),
        ))
    }

    pub fn census(&self, orbit: &Orbit, t_values: &[f64]) -> Result<OrbitCensus> {
        check_schedule(t_values)?;
        let counts = t_values
            .iter()
            .map(|&t| self.count_ball(t, Some(orbit)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitCensus::new(
            orbit.clone(),
            t_values.to_vec(),
            counts.iter().map(|c| c.orbit).collect(),
            counts.iter().map(|c| c.lattice).collect(),
            self.dimension(),
        ))
    }
}

/// `(simple, multicurve)` counts of the torus at each length, from one
/// enumeration at the largest length.
pub fn torus_counts(
    chart: &MarkovChart,
    lengths: &[f64],
    exec: Execution,
) -> Result<Vec<(u64, u64)>> {
    check_schedule(lengths)?;
    let curves = enumerate_simple_with(chart, lengths[lengths.len() - 1], exec)?;
    Ok(lengths
        .iter()
        .map(|&l| {
            let simple = curves.partition_point(|r| r.length <= l) as u64;
            (simple, multiples_within(&curves[..simple as usize], l))
        })
        .collect())
}

/// `lambda_t` of the torus lattice under hyperbolic length. Each multicurve
/// `n s` appears as the two vectors `±n s`.
pub fn torus_measure(
    chart: &MarkovChart,
    t_values: &[f64],
    exec: Execution,
) -> Result<MeasureEstimate> {
    let counts = torus_counts(chart, t_values, exec)?;
    Ok(MeasureEstimate::new(
        t_values.to_vec(),
        counts.iter().map(|c| 2 * c.1).collect(),
        2,
    ))
}

/// Orbit census of a slope under hyperbolic length.
pub fn torus_census(
    chart: &MarkovChart,
    base: Slope,
    t_values: &[f64],
    exec: Execution,
) -> Result<OrbitCensus> {
    let counts = torus_counts(chart, t_values, exec)?;
    Ok(OrbitCensus::new(
        Orbit::TorusPrimitive(base),
        t_values.to_vec(),
        counts.iter().map(|c| 2 * c.0).collect(),
        counts.iter().map(|c| 2 * c.1).collect(),
        2,
    ))
}
