//! Surface signatures and the Dehn–Thurston integer model of multicurves.
//!
//! A pants decomposition of a surface of signature `(g, c, p)` has
//! `k = 3g - 3 + c + p` curves. Each multicurve is recorded by one twist
//! (any integer) and one intersection number (even, nonnegative) per pants
//! curve, so multicurves sit as lattice points in the cone
//! `R^k x R_{>=0}^k`. The twist of a component with zero intersection number
//! is its weight and is taken nonnegative, which makes the encoding a
//! bijection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Topological type: genus, punctures (cusps) and perforations (boundary).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub cusps: u32,
    pub boundary: u32,
}

impl SurfaceSignature {
    pub const PUNCTURED_TORUS: SurfaceSignature = SurfaceSignature::new(1, 1, 0);

    pub const fn new(genus: u32, cusps: u32, boundary: u32) -> Self {
        SurfaceSignature {
            genus,
            cusps,
            boundary,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.cusps as i64 - self.boundary as i64
    }

    /// `6g - 6 + 2c + 2p` without any hyperbolicity check. Zero for a pair of
    /// pants, whose moduli space is a point.
    pub fn raw_dimension(&self) -> i64 {
        6 * self.genus as i64 - 6 + 2 * self.cusps as i64 + 2 * self.boundary as i64
    }

    /// Dimension of the measured lamination space (equivalently of moduli
    /// space).
    pub fn dimension(&self) -> Result<usize> {
        let d = self.raw_dimension();
        if d < 2 || self.euler_characteristic() >= 0 {
            return Err(Error::NonHyperbolic {
                genus: self.genus,
                cusps: self.cusps,
                boundary: self.boundary,
            });
        }
        Ok(d as usize)
    }

    pub fn is_punctured_torus(&self) -> bool {
        self.genus == 1 && self.cusps + self.boundary == 1
    }
}

/// Free-function form of [`SurfaceSignature::dimension`].
pub fn dimension(signature: SurfaceSignature) -> Result<usize> {
    signature.dimension()
}

/// The coordinate cone attached to a fixed pants decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordinateSpace {
    signature: SurfaceSignature,
    pants_curves: usize,
}

impl CoordinateSpace {
    pub fn new(signature: SurfaceSignature) -> Result<Self> {
        let d = signature.dimension()?;
        Ok(CoordinateSpace {
            signature,
            pants_curves: d / 2,
        })
    }

    pub fn signature(&self) -> SurfaceSignature {
        self.signature
    }

    /// Number `k` of pants curves.
    pub fn pants_curves(&self) -> usize {
        self.pants_curves
    }

    pub fn dimension(&self) -> usize {
        2 * self.pants_curves
    }
}

/// Integer Dehn–Thurston coordinates of a multicurve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MulticurveCoords {
    pub twists: Vec<i64>,
    pub intersections: Vec<i64>,
}

impl MulticurveCoords {
    /// Unchecked constructor; see [`validate_multicurve`].
    pub fn new(twists: Vec<i64>, intersections: Vec<i64>) -> Self {
        MulticurveCoords {
            twists,
            intersections,
        }
    }

    pub fn empty(k: usize) -> Self {
        MulticurveCoords {
            twists: vec![0; k],
            intersections: vec![0; k],
        }
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists
            .iter()
            .chain(&self.intersections)
            .all(|&v| v == 0)
    }

    /// Checks the coordinate invariants that do not depend on the space.
    pub fn check(&self) -> Result<()> {
        if self.twists.len() != self.intersections.len() {
            return Err(Error::LengthMismatch {
                expected: self.twists.len(),
                found: self.intersections.len(),
            });
        }
        for (i, (&t, &m)) in self.twists.iter().zip(&self.intersections).enumerate() {
            if m < 0 {
                return Err(Error::NegativeIntersection(i));
            }
            if m % 2 != 0 {
                return Err(Error::OddIntersection(i));
            }
            if m == 0 && t < 0 {
                return Err(Error::NegativeTwistAtZero(i));
            }
        }
        Ok(())
    }

    /// Coordinatewise `n * x`.
    pub fn scale(&self, n: u64) -> Self {
        let n = n as i64;
        MulticurveCoords {
            twists: self.twists.iter().map(|&t| n * t).collect(),
            intersections: self.intersections.iter().map(|&m| n * m).collect(),
        }
    }

    /// Coordinatewise sum of two valid multicurves.
    ///
    /// A zero intersection number in the sum forces both summands to have
    /// zero there with nonnegative twists, so the sum is already normalized.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() || other.twists.len() != other.intersections.len() {
            return Err(Error::SpaceMismatch);
        }
        self.check()?;
        other.check()?;
        Ok(MulticurveCoords {
            twists: self
                .twists
                .iter()
                .zip(&other.twists)
                .map(|(a, b)| a + b)
                .collect(),
            intersections: self
                .intersections
                .iter()
                .zip(&other.intersections)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Twists first, then intersection numbers.
    pub fn to_real(&self) -> Vec<f64> {
        self.twists
            .iter()
            .chain(&self.intersections)
            .map(|&v| v as f64)
            .collect()
    }

    pub fn to_lattice(&self) -> Vec<i64> {
        self.twists
            .iter()
            .chain(&self.intersections)
            .copied()
            .collect()
    }

    /// Image under the `n`-th power of the Dehn twist about pants curve `i`:
    /// `t_i -> t_i + n m_i`.
    pub fn pants_twist(&self, i: usize, n: i64) -> Self {
        let mut out = self.clone();
        out.twists[i] += n * self.intersections[i];
        out
    }

    /// Whether `other` lies in the orbit of `self` under the group generated
    /// by the pants-curve Dehn twists.
    pub fn same_twist_orbit(&self, other: &[i64]) -> bool {
        let k = self.len();
        if other.len() != 2 * k {
            return false;
        }
        (0..k).all(|i| {
            let (t, m) = (other[i], other[k + i]);
            let m0 = self.intersections[i];
            m == m0
                && if m0 == 0 {
                    t == self.twists[i]
                } else {
                    (t - self.twists[i]).rem_euclid(m0) == 0
                }
        })
    }
}

/// Checks that `x` is a valid multicurve in `space`.
pub fn validate_multicurve(space: &CoordinateSpace, x: &MulticurveCoords) -> Result<()> {
    let k = space.pants_curves();
    for len in [x.twists.len(), x.intersections.len()] {
        if len != k {
            return Err(Error::LengthMismatch {
                expected: k,
                found: len,
            });
        }
    }
    x.check()
}
