//! Integration over the moduli space of the once-punctured torus.
//!
//! In Fenchel–Nielsen coordinates the Weil–Petersson volume element is
//! `dl dtau`. Integrals over moduli space are computed by sampling a box in
//! `(l, tau)` uniformly and weighting each sample by the reciprocal of the
//! number of mapping class images of its structure inside the box. When every
//! orbit meets the box this gives the integral over one fundamental domain of
//! `PSL(2, Z)`.
//!
//! Unfolding along a simple curve `gamma` turns `int_M sum_{s in O(gamma)}
//! f(l_s)` into `int_0^inf f(l) l V(S', l) dl`: the fiber over `l` is the
//! twist circle of circumference `l`, and `S'` is the surface cut along
//! `gamma`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::surface::SurfaceSignature;
use crate::torus::{
    enumerate_simple_with, fn_to_markov, markov_reduce, slope_trace, unit_ball_area_with, FnChart,
    MarkovChart, SimpleCurveRecord, Slope,
};

/// Number of independent batches behind every Monte-Carlo standard error.
pub const BATCHES: usize = 16;

/// Largest systole of a cusped torus, `2 arccosh(3/2)`.
const MAX_SYSTOLE: f64 = 1.924847300238413;

/// Fenchel–Nielsen coordinates with the Weil–Petersson density, which is
/// identically 1 in these coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeElement {
    pub chart: Vec<FnChart>,
}

impl VolumeElement {
    pub fn density(&self) -> f64 {
        1.0
    }
}

/// Jacobian of the projection forgetting `(l(gamma), tau(gamma))` in a pants
/// decomposition containing `gamma`. The volume form is a product, so the
/// factor `dl dtau` is simply dropped.
pub fn projection_jacobian() -> f64 {
    1.0
}

/// `V(S', l) = sum_j c_j l^j`, the volume of the moduli space of the cut
/// surface with both new boundaries of length `l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumePolynomial {
    pub coefficients: Vec<f64>,
}

impl VolumePolynomial {
    pub fn evaluate(&self, l: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * l + c)
    }

    /// `int_0^L l V(l) dl`.
    pub fn fiber_integral(&self, max_length: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, c)| c * max_length.powi(j as i32 + 2) / (j as f64 + 2.0))
            .sum()
    }
}

/// Data for unfolding an orbit sum along a nonseparating curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnfoldingSpec {
    pub cut_curve: String,
    pub surface: SurfaceSignature,
    pub cut_surface: SurfaceSignature,
    /// The fiber of the cover over the cut curve's length `l` is a circle of
    /// circumference `l`.
    pub fiber: String,
    pub stabilizer_note: String,
    pub volume: Option<VolumePolynomial>,
}

impl UnfoldingSpec {
    /// Cutting along a nonseparating curve removes a handle and adds two
    /// boundary components of the same length.
    pub fn nonseparating(
        surface: SurfaceSignature,
        cut_curve: impl Into<String>,
        volume: Option<VolumePolynomial>,
    ) -> Result<Self> {
        surface.dimension()?;
        if surface.genus == 0 {
            return Err(Error::InvalidArgument(
                "a planar surface has no nonseparating curve".into(),
            ));
        }
        Ok(UnfoldingSpec {
            cut_curve: cut_curve.into(),
            surface,
            cut_surface: SurfaceSignature::new(
                surface.genus - 1,
                surface.cusps,
                surface.boundary + 2,
            ),
            fiber: "circle of circumference l(gamma)".into(),
            stabilizer_note: "cover of moduli space by the stabilizer of gamma".into(),
            volume,
        })
    }

    /// The punctured torus cut along `(1, 0)`: a pair of pants with one cusp,
    /// whose moduli space is a point of volume 1.
    pub fn punctured_torus() -> Self {
        Self::nonseparating(
            SurfaceSignature::PUNCTURED_TORUS,
            Slope::ALPHA.to_string(),
            Some(VolumePolynomial {
                coefficients: vec![1.0],
            }),
        )
        .expect("the punctured torus is hyperbolic")
    }

    /// Cutting preserves the Euler characteristic and adds two boundaries.
    pub fn is_consistent(&self) -> bool {
        self.cut_surface.boundary == self.surface.boundary + 2
            && self.cut_surface.euler_characteristic() == self.surface.euler_characteristic()
    }
}

/// `vol{(x, rho) in M^gamma : l(rho) < L} = int_0^L l V(S', l) dl`.
pub fn unfolded_volume(max_length: f64, spec: &UnfoldingSpec) -> Result<f64> {
    if !(max_length >= 0.0 && max_length.is_finite()) {
        return Err(Error::NonPositiveLength(max_length));
    }
    let poly = spec.volume.as_ref().ok_or(Error::UnsupportedSurface)?;
    Ok(poly.fiber_integral(max_length))
}

/// Sampling box in Fenchel–Nielsen coordinates, half-open in both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FnBox {
    pub length: (f64, f64),
    pub twist: (f64, f64),
}

impl FnBox {
    /// `[1e-3, 2) x [-1, 1)`. Tori with systole below `1e-3` are cut off; they
    /// occupy a region of volume below `1e-6`.
    pub const DEFAULT: FnBox = FnBox {
        length: (1e-3, 2.0),
        twist: (-1.0, 1.0),
    };
    pub const ALTERNATE: FnBox = FnBox {
        length: (1e-3, 2.5),
        twist: (0.0, 2.5),
    };

    /// Every structure has a representative in the box when the length range
    /// reaches the largest systole and the twist range is at least that wide.
    pub fn new(length: (f64, f64), twist: (f64, f64)) -> Result<Self> {
        let finite = [length.0, length.1, twist.0, twist.1]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(length.0 > 0.0) || length.0 >= length.1 || twist.0 >= twist.1 {
            return Err(Error::InvalidArgument(
                "empty or unbounded sampling box".into(),
            ));
        }
        if length.1 < MAX_SYSTOLE || twist.1 - twist.0 < MAX_SYSTOLE {
            return Err(Error::InvalidArgument(format!(
                "box must reach length and twist width {MAX_SYSTOLE} to cover moduli space"
            )));
        }
        Ok(FnBox { length, twist })
    }

    pub fn area(&self) -> f64 {
        (self.length.1 - self.length.0) * (self.twist.1 - self.twist.0)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> (f64, f64) {
        (
            rng.random_range(self.length.0..self.length.1),
            rng.random_range(self.twist.0..self.twist.1),
        )
    }

    /// Number of `n` with `tau + n l` in the twist range.
    fn twist_images(&self, l: f64, tau: f64) -> u64 {
        let lo = ((self.twist.0 - tau) / l).ceil();
        let hi = ((self.twist.1 - tau) / l).ceil();
        (hi - lo).max(0.0) as u64
    }
}

/// Monte-Carlo sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloConfig {
    pub samples: usize,
    pub seed: u64,
    pub fn_box: FnBox,
    pub exec: Execution,
}

impl MonteCarloConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        MonteCarloConfig {
            samples,
            seed,
            fn_box: FnBox::DEFAULT,
            exec: Execution::default(),
        }
    }
}

/// A Monte-Carlo mean with its batch-means standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    /// Effective sample size of the importance weights.
    pub ess: f64,
}

/// Per-batch sums of sample statistics.
struct Batches {
    sizes: Vec<usize>,
    sums: Vec<Vec<f64>>,
}

impl Batches {
    fn run<F>(
        samples: usize,
        seed: u64,
        stream: u64,
        exec: Execution,
        init: &[f64],
        f: F,
    ) -> Result<Batches>
    where
        F: Fn(&mut ChaCha8Rng, &mut [f64]) -> Result<()> + Sync + Send,
    {
        if samples < BATCHES {
            return Err(Error::InvalidArgument(format!(
                "need at least {BATCHES} samples, got {samples}"
            )));
        }
        let sizes: Vec<usize> = (0..BATCHES)
            .map(|b| samples / BATCHES + usize::from(b < samples % BATCHES))
            .collect();
        let sums = exec.try_map(BATCHES, |b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream.wrapping_add(b as u64));
            let mut acc = init.to_vec();
            for _ in 0..sizes[b] {
                f(&mut rng, &mut acc)?;
            }
            Ok(acc)
        })?;
        Ok(Batches { sizes, sums })
    }

    /// Mean of column `j` over the first `batches` batches, with the standard
    /// error of the batch means.
    fn mean(&self, j: usize, batches: usize) -> (f64, f64, usize) {
        let n: usize = self.sizes[..batches].iter().sum();
        let mean = self.sums[..batches].iter().map(|s| s[j]).sum::<f64>() / n as f64;
        let var = self.sums[..batches]
            .iter()
            .zip(&self.sizes)
            .map(|(s, &m)| (s[j] / m as f64 - mean).powi(2))
            .sum::<f64>()
            / (batches * (batches - 1)) as f64;
        (mean, var.sqrt(), n)
    }

    fn total(&self, j: usize) -> f64 {
        self.sums.iter().map(|s| s[j]).sum()
    }
}

/// A box sample mapped to the fundamental domain.
struct Sample {
    reduced: MarkovChart,
    weight: f64,
}

/// The sampled structure after Markov reduction, and the reciprocal of the
/// number of its mapping class images in the box.
fn draw(fn_box: &FnBox, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let (l, tau) = fn_box.sample(rng);
    // full twists are mapping classes; dropping them keeps reduction short
    let tau = tau - l * (tau / l).round();
    let marked = fn_to_markov(FnChart::new(l, tau)?)?;
    // sorting the traces may relabel by an orientation-reversing map, which
    // flips twists, so images in the box are counted on the marked chart
    let mult = multiplicity(&marked, fn_box)?;
    Ok(Sample {
        reduced: markov_reduce(&marked)?,
        weight: 1.0 / mult.max(1) as f64,
    })
}

/// Number of markings of `chart` whose Fenchel–Nielsen coordinates lie in the
/// box. A marking up to sign is a pair of slopes `(s, s')` with
/// `det(s, s') = 1`; for fixed `s` the choices `s' + n s` shift the twist by
/// `n l(s)`.
pub fn multiplicity(chart: &MarkovChart, fn_box: &FnBox) -> Result<u64> {
    let curves = enumerate_simple_with(chart, fn_box.length.1, Execution::Sequential)?;
    Ok(curves
        .iter()
        .filter(|r| r.length >= fn_box.length.0 && r.length < fn_box.length.1)
        .map(|r| fn_box.twist_images(r.length, slope_twist(r, chart)))
        .sum())
}

/// Fenchel–Nielsen twist about `s` for the marking `(s, s')`.
fn slope_twist(r: &SimpleCurveRecord, chart: &MarkovChart) -> f64 {
    let [p, q] = r.slope.vector();
    let [u, v] = r.slope.positive_partner();
    let y = slope_trace(Slope::canonical(u, v), chart);
    let z = slope_trace(Slope::canonical(p + u, q + v), chart);
    let x = r.trace;
    2.0 * ((z - 0.5 * x * y) / x).asinh()
}

fn finish(b: &Batches, column: usize, area: f64, samples: usize) -> Result<McEstimate> {
    let (w, w2) = (b.total(0), b.total(1));
    let ess = w * w / w2;
    if !(ess >= 0.1 * samples as f64) {
        return Err(Error::SamplerDegenerate { ess, samples });
    }
    let (mean, stderr, _) = b.mean(column, BATCHES);
    Ok(McEstimate {
        value: area * mean,
        stderr: area * stderr,
        samples,
        ess,
    })
}

/// Weil–Petersson volume of the moduli space of the punctured torus.
pub fn moduli_volume(config: &MonteCarloConfig) -> Result<McEstimate> {
    let b = Batches::run(
        config.samples,
        config.seed,
        0,
        config.exec,
        &[0.0; 2],
        |rng, acc| {
            let s = draw(&config.fn_box, rng)?;
            acc[0] += s.weight;
            acc[1] += s.weight * s.weight;
            Ok(())
        },
    )?;
    finish(&b, 0, config.fn_box.area(), config.samples)
}

/// Monte-Carlo estimate of `int_M n_X(L) dX` against the unfolded volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AverageCountEstimate {
    #[serde(rename = "L")]
    pub length: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub predicted: f64,
    pub kappa: f64,
    pub kappa_stderr: f64,
    pub ess: f64,
}

/// Integrates the simple-curve count `n_X(L)` over moduli space. Each length
/// uses its own random streams, so the estimate at `L` does not depend on
/// which other lengths are requested.
pub fn estimate_average_count(
    max_length: f64,
    config: &MonteCarloConfig,
) -> Result<AverageCountEstimate> {
    if !(max_length > 0.0) {
        return Err(Error::NonPositiveLength(max_length));
    }
    let fn_box = config.fn_box;
    let b = Batches::run(
        config.samples,
        config.seed,
        max_length.to_bits(),
        config.exec,
        &[0.0; 3],
        |rng, acc| {
            let s = draw(&fn_box, rng)?;
            let n = enumerate_simple_with(&s.reduced, max_length, Execution::Sequential)?.len();
            acc[0] += s.weight;
            acc[1] += s.weight * s.weight;
            acc[2] += s.weight * n as f64;
            Ok(())
        },
    )?;
    let est = finish(&b, 2, fn_box.area(), config.samples)?;
    let predicted = unfolded_volume(max_length, &UnfoldingSpec::punctured_torus())?;
    Ok(AverageCountEstimate {
        length: max_length,
        estimate: est.value,
        stderr: est.stderr,
        predicted,
        kappa: est.value / predicted,
        kappa_stderr: est.stderr / predicted,
        ess: est.ess,
    })
}

pub fn estimate_average_counts(
    lengths: &[f64],
    config: &MonteCarloConfig,
) -> Result<Vec<AverageCountEstimate>> {
    lengths
        .iter()
        .map(|&l| estimate_average_count(l, config))
        .collect()
}

/// Running means of the per-structure L1-lattice measure of the length unit
/// ball, integrated over moduli space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinitenessReport {
    pub resolution: f64,
    /// `(samples, estimate, stderr)` after 2, 4, 8 and all batches.
    pub checkpoints: Vec<(usize, f64, f64)>,
}

impl FinitenessReport {
    pub fn estimate(&self) -> (f64, f64) {
        let last = self.checkpoints[self.checkpoints.len() - 1];
        (last.1, last.2)
    }
}

/// The unit ball area of each sampled structure is computed from the
/// inscribed polygon through the slopes of length at most `resolution`.
pub fn finiteness_proxy(config: &MonteCarloConfig, resolution: f64) -> Result<FinitenessReport> {
    const STREAM: u64 = 0x5eed_0000_0000;
    let fn_box = config.fn_box;
    let b = Batches::run(
        config.samples,
        config.seed,
        STREAM,
        config.exec,
        &[0.0; 3],
        |rng, acc| {
            let s = draw(&fn_box, rng)?;
            let area = unit_ball_area_with(&s.reduced, resolution, Execution::Sequential)?;
            acc[0] += s.weight;
            acc[1] += s.weight * s.weight;
            acc[2] += s.weight * area;
            Ok(())
        },
    )?;
    finish(&b, 2, fn_box.area(), config.samples)?;
    let checkpoints = [2, 4, 8, BATCHES]
        .iter()
        .map(|&k| {
            let (m, se, n) = b.mean(2, k);
            (n, fn_box.area() * m, fn_box.area() * se)
        })
        .collect();
    Ok(FinitenessReport {
        resolution,
        checkpoints,
    })
}

/// Built-in maps `f: R^2 -> R` for checking the coarea formula
/// `int H^1(f^{-1}(y)) dy = int Jf dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoareaMap {
    /// `(x, y) -> x` on the unit square.
    Projection,
    /// `(x, y) -> |(x, y)|` on the unit disk.
    Radius,
    /// `(x, y) -> x^2` on `[-1, 1] x [0, 1]`, critical along `x = 0`.
    Fold,
    /// `(l, tau) -> l` on `{0 < l < L, 0 <= tau < l}`: the twist fibration.
    TwistStrip { max_length: f64 },
}

impl CoareaMap {
    /// Bounding box of the domain.
    fn bounds(&self) -> ((f64, f64), (f64, f64)) {
        match *self {
            CoareaMap::Projection => ((0.0, 1.0), (0.0, 1.0)),
            CoareaMap::Radius => ((-1.0, 1.0), (-1.0, 1.0)),
            CoareaMap::Fold => ((-1.0, 1.0), (0.0, 1.0)),
            CoareaMap::TwistStrip { max_length } => ((0.0, max_length), (0.0, max_length)),
        }
    }

    /// `Jf` at a point of the bounding box, zero outside the domain.
    fn jacobian(&self, x: f64, y: f64) -> f64 {
        match *self {
            CoareaMap::Projection => 1.0,
            CoareaMap::Radius => f64::from(u8::from(x * x + y * y < 1.0)),
            CoareaMap::Fold => (2.0 * x).abs(),
            CoareaMap::TwistStrip { .. } => f64::from(u8::from(y < x)),
        }
    }

    /// Range of `f`.
    fn image(&self) -> (f64, f64) {
        match *self {
            CoareaMap::Projection | CoareaMap::Radius | CoareaMap::Fold => (0.0, 1.0),
            CoareaMap::TwistStrip { max_length } => (0.0, max_length),
        }
    }

    /// Length of the fiber `f^{-1}(v)`.
    fn fiber_length(&self, v: f64) -> f64 {
        match *self {
            CoareaMap::Projection => 1.0,
            CoareaMap::Radius => 2.0 * std::f64::consts::PI * v,
            // two unit segments at x = ±sqrt(v)
            CoareaMap::Fold => 2.0,
            CoareaMap::TwistStrip { .. } => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

/// Both sides of the coarea formula with `h = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoareaCheckReport {
    pub map: CoareaMap,
    pub jacobian_values: SampleSummary,
    pub fiber_areas: SampleSummary,
    pub lhs: f64,
    pub lhs_stderr: f64,
    pub rhs: f64,
    pub rhs_stderr: f64,
}

impl CoareaCheckReport {
    /// Agreement within `sigmas` combined standard errors.
    pub fn agrees(&self, sigmas: f64) -> bool {
        (self.lhs - self.rhs).abs() <= sigmas * self.lhs_stderr.hypot(self.rhs_stderr)
    }
}

pub fn coarea_check(map: CoareaMap, samples: usize, seed: u64) -> Result<CoareaCheckReport> {
    const STREAM: u64 = 0xc0a4_0000_0000;
    let ((x0, x1), (y0, y1)) = map.bounds();
    let (v0, v1) = map.image();
    // columns: Jf, fiber length, and their running extrema
    let init = [
        0.0,
        0.0,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    ];
    let b = Batches::run(
        samples,
        seed,
        STREAM,
        Execution::Sequential,
        &init,
        |rng, acc| {
            let j = map.jacobian(rng.random_range(x0..x1), rng.random_range(y0..y1));
            let h = map.fiber_length(rng.random_range(v0..v1));
            acc[0] += j;
            acc[1] += h;
            acc[2] = acc[2].min(j);
            acc[3] = acc[3].max(j);
            acc[4] = acc[4].min(h);
            acc[5] = acc[5].max(h);
            Ok(())
        },
    )?;
    let box_area = (x1 - x0) * (y1 - y0);
    let (mj, sj, _) = b.mean(0, BATCHES);
    let (mh, sh, _) = b.mean(1, BATCHES);
    let fold = |col: usize, pick: fn(f64, f64) -> f64| {
        b.sums.iter().map(|s| s[col]).reduce(pick).unwrap_or(0.0)
    };
    Ok(CoareaCheckReport {
        map,
        jacobian_values: SampleSummary {
            mean: mj,
            min: fold(2, f64::min),
            max: fold(3, f64::max),
        },
        fiber_areas: SampleSummary {
            mean: mh,
            min: fold(4, f64::min),
            max: fold(5, f64::max),
        },
        lhs: (v1 - v0) * mh,
        lhs_stderr: (v1 - v0) * sh,
        rhs: box_area * mj,
        rhs_stderr: box_area * sj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unfolded_volume_examples() {
        let spec = UnfoldingSpec::punctured_torus();
        assert!(spec.is_consistent());
        assert_eq!(spec.cut_surface, SurfaceSignature::new(0, 1, 2));
        assert_eq!(unfolded_volume(2.0, &spec), Ok(2.0));
        assert_eq!(unfolded_volume(0.0, &spec), Ok(0.0));
        let bare = UnfoldingSpec {
            volume: None,
            ..spec
        };
        assert_eq!(unfolded_volume(1.0, &bare), Err(Error::UnsupportedSurface));
        assert_eq!(projection_jacobian(), 1.0);
    }

    #[test]
    fn genus_two_cut_is_consistent() {
        let spec = UnfoldingSpec::nonseparating(SurfaceSignature::new(2, 0, 0), "a", None).unwrap();
        assert_eq!(spec.cut_surface, SurfaceSignature::new(1, 0, 2));
        assert!(spec.is_consistent());
        assert!(UnfoldingSpec::nonseparating(SurfaceSignature::new(0, 4, 0), "a", None).is_err());
    }

    #[test]
    fn box_validation() {
        assert!(FnBox::new(FnBox::DEFAULT.length, FnBox::DEFAULT.twist).is_ok());
        assert!(FnBox::new((0.1, 1.5), (-1.0, 1.0)).is_err());
        assert!(FnBox::new((0.1, 2.0), (0.0, 1.0)).is_err());
        assert!(FnBox::new((0.0, 2.0), (-1.0, 1.0)).is_err());
    }

    #[test]
    fn twist_images_count_lattice_points() {
        let b = FnBox::DEFAULT;
        assert_eq!(b.twist_images(0.5, 0.0), 4); // -1, -0.5, 0, 0.5
        assert_eq!(b.twist_images(3.0, 0.2), 1);
        assert_eq!(b.twist_images(3.0, 1.5), 0);
        assert_eq!(b.twist_images(3.0, 2.5), 1); // 2.5 - 3
        assert_eq!(b.twist_images(0.4, 0.1), 5); // -0.7 .. 0.9
    }

    #[test]
    fn modular_torus_multiplicity() {
        // the three systoles have twist -l/2 mod l with l = 1.92, so both
        // -l/2 and l/2 lie in [-1, 1)
        let m = multiplicity(&MarkovChart::MODULAR, &FnBox::DEFAULT).unwrap();
        assert_eq!(m, 6);
    }

    #[test]
    fn coarea_builtins_agree() {
        for map in [
            CoareaMap::Projection,
            CoareaMap::Radius,
            CoareaMap::Fold,
            CoareaMap::TwistStrip { max_length: 2.0 },
        ] {
            let r = coarea_check(map, 40_000, 7).unwrap();
            assert!(r.agrees(3.0), "{r:?}");
        }
        let fold = coarea_check(CoareaMap::Fold, 40_000, 7).unwrap();
        assert!(fold.jacobian_values.min < 1e-3);
        assert_relative_eq!(fold.rhs, 2.0, max_relative = 0.02);
    }

    #[test]
    fn volume_is_reproducible() {
        let cfg = MonteCarloConfig::new(2_000, 11);
        let a = moduli_volume(&cfg).unwrap();
        let b = moduli_volume(&MonteCarloConfig {
            exec: Execution::Sequential,
            ..cfg
        })
        .unwrap();
        assert_eq!(a, b);
        assert!(a.stderr > 0.0);
    }
}
