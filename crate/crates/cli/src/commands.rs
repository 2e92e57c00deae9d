use serde::Serialize;

use curvecount::counting::{
    extrapolate, fit_power_law, sandwich_lambda, torus_census, torus_counts, torus_measure,
    FitResult, FitWindow, Lattice, LatticeCounter, MeasureEstimate, Orbit, OrbitCensus,
};
use curvecount::length::{estimate_quasi_constants, L1Length, QuasiConstants};
use curvecount::moduli::{estimate_average_counts, AverageCountEstimate, FnBox, MonteCarloConfig};
use curvecount::surface::{CoordinateSpace, SurfaceSignature};
use curvecount::torus::{MarkovChart, Slope, TorusLength};
use curvecount::{Error, Execution};

use crate::config::{BaseSpec, Format, LengthKind, RunConfig, Window};
use crate::{CliError, Command};

const SCHEMA: u32 = 1;
const DEFAULT_SAMPLES: usize = 100_000;
const DEFAULT_UNFOLD_GRID: [f64; 4] = [4.0, 6.0, 8.0, 12.0];
/// Slopes with `|p| + |q|` up to this radius sample the quasi-constants.
const QUASI_SAMPLE_RADIUS: i64 = 50;

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Result<String, CliError> {
    match command {
        Command::Count => count(cfg),
        Command::Measure => measure(cfg),
        Command::Orbit => orbit(cfg),
        Command::Unfold => unfold(cfg),
        Command::Fit { input, column } => fit(cfg, input, column.as_deref()),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_table(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Config(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn count(cfg: &RunConfig) -> Result<String, CliError> {
    let chart = cfg.markov_chart()?;
    let grid = cfg.grid()?;
    let counts = torus_counts(&chart, &grid, Execution::Parallel)?;
    csv_table(
        &["L", "N_simple", "N_multi"],
        grid.iter()
            .zip(&counts)
            .map(|(l, (s, m))| vec![l.to_string(), s.to_string(), m.to_string()]),
    )
}

fn l1_grid(radius: i64) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for p in -radius..=radius {
        let rest = radius - p.abs();
        for q in -rest..=rest {
            if (p, q) != (0, 0) {
                out.push([p as f64, q as f64]);
            }
        }
    }
    out
}

fn hyperbolic_constants(chart: &MarkovChart) -> Result<QuasiConstants, CliError> {
    Ok(estimate_quasi_constants(
        &TorusLength::new(*chart),
        &l1_grid(QUASI_SAMPLE_RADIUS),
    )?)
}

fn lattice_for(surface: SurfaceSignature) -> Result<Lattice, CliError> {
    if surface.is_punctured_torus() {
        Ok(Lattice::Torus)
    } else {
        Ok(Lattice::DehnThurston(CoordinateSpace::new(surface)?))
    }
}

/// Hyperbolic lengths exist only on torus charts.
fn hyperbolic_chart(cfg: &RunConfig) -> Result<MarkovChart, CliError> {
    if !cfg.surface.is_punctured_torus() {
        return Err(Error::UnsupportedSurface.into());
    }
    cfg.markov_chart()
}

fn length_label(kind: LengthKind) -> &'static str {
    match kind {
        LengthKind::L1 => "l1",
        LengthKind::Hyperbolic => "hyperbolic",
    }
}

#[derive(Serialize)]
struct MeasureReport {
    schema: u32,
    surface: SurfaceSignature,
    length: &'static str,
    dimension: usize,
    #[serde(flatten)]
    estimate: MeasureEstimate,
    quasi_constants: QuasiConstants,
    sandwich: (f64, f64),
}

/// Extrapolates when the schedule allows it; a short schedule just reports
/// the series.
fn try_extrapolate(est: MeasureEstimate) -> Result<MeasureEstimate, CliError> {
    match extrapolate(&est) {
        Ok(e) => Ok(e),
        Err(Error::InsufficientSeries(_)) => Ok(est),
        Err(e) => Err(e.into()),
    }
}

fn measure(cfg: &RunConfig) -> Result<String, CliError> {
    let kind = cfg.length.unwrap_or(LengthKind::L1);
    let t = cfg.grid()?;
    let lattice = lattice_for(cfg.surface)?;
    let (estimate, quasi) = match kind {
        LengthKind::Hyperbolic => {
            let chart = hyperbolic_chart(cfg)?;
            (
                torus_measure(&chart, &t, Execution::Parallel)?,
                hyperbolic_constants(&chart)?,
            )
        }
        LengthKind::L1 => {
            let counter = LatticeCounter::new(lattice.clone(), L1Length, QuasiConstants::IDENTITY)?;
            (counter.measure(&t)?, QuasiConstants::IDENTITY)
        }
    };
    let estimate = try_extrapolate(estimate)?;
    if cfg.format == Format::Csv {
        return csv_table(
            &["t", "lambda_t"],
            estimate
                .t_values
                .iter()
                .zip(&estimate.lambda_t)
                .map(|(t, l)| vec![t.to_string(), l.to_string()]),
        );
    }
    json(&MeasureReport {
        schema: SCHEMA,
        surface: cfg.surface,
        length: length_label(kind),
        dimension: lattice.dimension(),
        sandwich: sandwich_lambda(&lattice, &quasi)?,
        estimate,
        quasi_constants: quasi,
    })
}

#[derive(Serialize)]
struct OrbitReport {
    schema: u32,
    surface: SurfaceSignature,
    length: &'static str,
    dimension: usize,
    #[serde(flatten)]
    census: OrbitCensus,
    ratio: Vec<f64>,
    mu_extrapolated: Option<(f64, f64)>,
}

fn orbit(cfg: &RunConfig) -> Result<String, CliError> {
    let kind = cfg.length.unwrap_or(LengthKind::L1);
    let t = cfg.grid()?;
    let lattice = lattice_for(cfg.surface)?;
    let base = match (&lattice, &cfg.base) {
        (Lattice::Torus, None) => Orbit::TorusPrimitive(Slope::ALPHA),
        (Lattice::Torus, Some(BaseSpec::Slope(s))) => Orbit::TorusPrimitive(*s),
        (Lattice::DehnThurston(_), Some(BaseSpec::Coords(c))) => Orbit::PantsTwists(c.clone()),
        (Lattice::DehnThurston(_), None) => return Err(CliError::Config("base required".into())),
        _ => return Err(Error::UnsupportedOrbit.into()),
    };
    let census = match (kind, &base) {
        (LengthKind::Hyperbolic, Orbit::TorusPrimitive(s)) => {
            torus_census(&hyperbolic_chart(cfg)?, *s, &t, Execution::Parallel)?
        }
        (LengthKind::Hyperbolic, _) => return Err(Error::UnsupportedSurface.into()),
        (LengthKind::L1, _) => {
            LatticeCounter::new(lattice.clone(), L1Length, QuasiConstants::IDENTITY)?
                .census(&base, &t)?
        }
    };
    let ratio = census.ratios();
    if cfg.format == Format::Csv {
        return csv_table(
            &["t", "mu_t", "lambda_t", "ratio"],
            (0..t.len()).map(|i| {
                vec![
                    census.t_values[i].to_string(),
                    census.mu_t[i].to_string(),
                    census.lambda_t[i].to_string(),
                    ratio[i].to_string(),
                ]
            }),
        );
    }
    let mu_extrapolated = match census.extrapolate_mu() {
        Ok(v) => Some(v),
        Err(Error::InsufficientSeries(_)) => None,
        Err(e) => return Err(e.into()),
    };
    json(&OrbitReport {
        schema: SCHEMA,
        surface: cfg.surface,
        length: length_label(kind),
        dimension: lattice.dimension(),
        census,
        ratio,
        mu_extrapolated,
    })
}

#[derive(Debug, Serialize)]
struct KappaSummary {
    /// Inverse-variance weighted mean.
    mean: f64,
    stderr: f64,
    /// Largest `|kappa_i - kappa_j| / sqrt(se_i^2 + se_j^2)`.
    max_pairwise_z: f64,
}

fn kappa_summary(reports: &[AverageCountEstimate]) -> KappaSummary {
    let w: Vec<f64> = reports.iter().map(|r| r.kappa_stderr.powi(-2)).collect();
    let total: f64 = w.iter().sum();
    let mean = reports
        .iter()
        .zip(&w)
        .map(|(r, w)| r.kappa * w)
        .sum::<f64>()
        / total;
    let mut max_z = 0.0f64;
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            max_z = max_z.max((a.kappa - b.kappa).abs() / a.kappa_stderr.hypot(b.kappa_stderr));
        }
    }
    KappaSummary {
        mean,
        stderr: total.sqrt().recip(),
        max_pairwise_z: max_z,
    }
}

#[derive(Serialize)]
struct UnfoldReport {
    schema: u32,
    samples: usize,
    seed: u64,
    #[serde(rename = "box")]
    fn_box: FnBox,
    reports: Vec<AverageCountEstimate>,
    kappa: KappaSummary,
    degree_fit: Option<FitResult>,
}

fn unfold(cfg: &RunConfig) -> Result<String, CliError> {
    if !cfg.surface.is_punctured_torus() {
        return Err(Error::UnsupportedSurface.into());
    }
    let seed = cfg
        .seed
        .ok_or_else(|| CliError::Config("seed required".into()))?;
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let grid = match cfg.grid() {
        Ok(g) => g,
        Err(_) => DEFAULT_UNFOLD_GRID.to_vec(),
    };
    let mc = MonteCarloConfig {
        samples,
        seed,
        fn_box: cfg.fn_box,
        exec: Execution::Parallel,
    };
    let reports = estimate_average_counts(&grid, &mc)?;
    if cfg.format == Format::Csv {
        return csv_table(
            &["L", "estimate", "stderr", "predicted", "kappa"],
            reports.iter().map(|r| {
                vec![
                    r.length.to_string(),
                    r.estimate.to_string(),
                    r.stderr.to_string(),
                    r.predicted.to_string(),
                    r.kappa.to_string(),
                ]
            }),
        );
    }
    let points: Vec<(f64, f64)> = reports.iter().map(|r| (r.length, r.estimate)).collect();
    let degree_fit = match fit_power_law(&points, FitWindow::All) {
        Ok(f) => Some(f),
        Err(Error::InsufficientSeries(_)) => None,
        Err(e) => return Err(e.into()),
    };
    json(&UnfoldReport {
        schema: SCHEMA,
        samples,
        seed,
        fn_box: cfg.fn_box,
        kappa: kappa_summary(&reports),
        reports,
        degree_fit,
    })
}

#[derive(Serialize)]
struct FitReport {
    schema: u32,
    column: String,
    #[serde(flatten)]
    fit: FitResult,
}

fn fit(cfg: &RunConfig, input: &std::path::Path, column: Option<&str>) -> Result<String, CliError> {
    let bad = |e: csv::Error| CliError::Config(format!("cannot read {}: {e}", input.display()));
    let mut reader = csv::Reader::from_path(input).map_err(bad)?;
    let headers = reader.headers().map_err(bad)?.clone();
    let col = match column {
        Some(name) => headers.iter().position(|h| h == name).ok_or_else(|| {
            CliError::Config(format!("no column {name:?} in {}", input.display()))
        })?,
        None if headers.len() >= 2 => 1,
        None => {
            return Err(CliError::Config(
                "input needs an L column and a count column".into(),
            ))
        }
    };
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(bad)?;
        let num = |i: usize| -> Result<f64, CliError> {
            let field = record.get(i).unwrap_or("");
            field
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("not a number: {field:?}")))
        };
        points.push((num(0)?, num(col)?));
    }
    let window = match cfg.window {
        Window::Tail => FitWindow::Tail,
        Window::All => FitWindow::All,
    };
    json(&FitReport {
        schema: SCHEMA,
        column: headers[col].to_string(),
        fit: fit_power_law(&points, window)?,
    })
}
