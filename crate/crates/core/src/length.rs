//! Length functions on the coordinate cone.
//!
//! A length function is positive away from the origin, 1-homogeneous and
//! subadditive. Sub-level sets `{L < r}` are then convex, and comparison with
//! the L1 norm of the coordinate vector bounds them inside finite boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive, 1-homogeneous, subadditive function on real coordinate vectors.
///
/// Implementations must be pure: counting code evaluates them concurrently.
pub trait LengthFunction: Sync {
    fn label(&self) -> String;

    fn evaluate(&self, x: &[f64]) -> f64;

    /// Length of an integer lattice point. Implementations with an exact
    /// lattice formula override this; the default converts to `f64`.
    fn lattice_length(&self, x: &[i64]) -> f64 {
        let v: Vec<f64> = x.iter().map(|&c| c as f64).collect();
        self.evaluate(&v)
    }
}

impl<L: LengthFunction + ?Sized> LengthFunction for &L {
    fn label(&self) -> String {
        (**self).label()
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
    fn lattice_length(&self, x: &[i64]) -> f64 {
        (**self).lattice_length(x)
    }
}

/// Sum of absolute values of the coordinates.
pub fn l1_length(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

pub fn l1_lattice(x: &[i64]) -> i64 {
    x.iter().map(|v| v.abs()).sum()
}

/// The L1 norm of the coordinate vector.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct L1Length;

impl LengthFunction for L1Length {
    fn label(&self) -> String {
        "l1".into()
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        l1_length(x)
    }
    fn lattice_length(&self, x: &[i64]) -> f64 {
        l1_lattice(x) as f64
    }
}

/// `factor * inner`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<L> {
    pub factor: f64,
    pub inner: L,
}

impl<L> Scaled<L> {
    pub fn new(factor: f64, inner: L) -> Self {
        Scaled { factor, inner }
    }
}

impl<L: LengthFunction> LengthFunction for Scaled<L> {
    fn label(&self) -> String {
        format!("{}*{}", self.factor, self.inner.label())
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.factor * self.inner.evaluate(x)
    }
    fn lattice_length(&self, x: &[i64]) -> f64 {
        self.factor * self.inner.lattice_length(x)
    }
}

/// Open sub-level set `{x : L(x) < radius}`.
pub struct BallSpec<'a> {
    pub length_fn: &'a dyn LengthFunction,
    pub radius: f64,
}

impl BallSpec<'_> {
    pub fn contains(&self, x: &[f64]) -> bool {
        self.length_fn.evaluate(x) < self.radius
    }
}

/// Empirical constants with `c_lo * |x|_1 <= L(x) <= c_hi * |x|_1` on a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiConstants {
    pub c_lo: f64,
    pub c_hi: f64,
    pub sample_size: usize,
}

impl QuasiConstants {
    /// The constants of the L1 norm itself.
    pub const IDENTITY: QuasiConstants = QuasiConstants {
        c_lo: 1.0,
        c_hi: 1.0,
        sample_size: 0,
    };

    pub fn scaled(self, factor: f64) -> Self {
        QuasiConstants {
            c_lo: self.c_lo * factor,
            c_hi: self.c_hi * factor,
            ..self
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        if !(self.c_lo > 0.0 && self.c_lo <= self.c_hi && self.c_hi.is_finite()) {
            return Err(Error::DegenerateConstants {
                c_lo: self.c_lo,
                c_hi: self.c_hi,
            });
        }
        Ok(())
    }
}

/// Min and max of `L(x) / |x|_1` over the samples.
pub fn estimate_quasi_constants<L, S>(length_fn: &L, samples: &[S]) -> Result<QuasiConstants>
where
    L: LengthFunction + ?Sized,
    S: AsRef<[f64]>,
{
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut c_lo = f64::INFINITY;
    let mut c_hi = 0.0f64;
    for x in samples {
        let x = x.as_ref();
        let norm = l1_length(x);
        if norm == 0.0 {
            return Err(Error::InvalidArgument(
                "quasi-constant sample at the origin".into(),
            ));
        }
        let ratio = length_fn.evaluate(x) / norm;
        c_lo = c_lo.min(ratio);
        c_hi = c_hi.max(ratio);
    }
    Ok(QuasiConstants {
        c_lo,
        c_hi,
        sample_size: samples.len(),
    })
}

/// L1 radius of a box containing `{L <= radius}`, as far as the sampled
/// constants are trustworthy.
pub fn ball_bounding_radius(q: &QuasiConstants, radius: f64) -> Result<f64> {
    q.check()?;
    Ok(radius / q.c_lo)
}
