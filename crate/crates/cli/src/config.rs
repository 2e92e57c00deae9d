//! Run configuration: command-line flags merged over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use curvecount::moduli::FnBox;
use curvecount::surface::{MulticurveCoords, SurfaceSignature};
use curvecount::torus::{fn_to_markov, FnChart, MarkovChart, Slope};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LengthKind {
    L1,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    Tail,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BoxKind {
    Default,
    Alternate,
}

/// `{"markov": [x, y, z]}` or `{"fn": {"l": l, "tau": tau}}`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ChartSpec {
    Markov([f64; 3]),
    Fn { l: f64, tau: f64 },
}

impl ChartSpec {
    pub fn to_markov(self) -> curvecount::Result<MarkovChart> {
        match self {
            ChartSpec::Markov([x, y, z]) => MarkovChart::new(x, y, z),
            ChartSpec::Fn { l, tau } => fn_to_markov(FnChart::new(l, tau)?),
        }
    }
}

/// A slope `"p,q"`, or multicurve coordinates as JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseSpec {
    Slope(Slope),
    Coords(MulticurveCoords),
}

fn parse_surface(s: &str) -> Result<SurfaceSignature, CliError> {
    if s.trim_start().starts_with('{') {
        return parse_json("surface", s);
    }
    let parts: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    match parts.as_deref() {
        Ok([g, c, b]) => Ok(SurfaceSignature::new(*g, *c, *b)),
        _ => Err(CliError::Config(format!("invalid surface {s:?}"))),
    }
}

fn parse_chart(s: &str) -> Result<ChartSpec, CliError> {
    if s.trim_start().starts_with('{') {
        return parse_json("chart", s);
    }
    let traces: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match traces.as_deref() {
        Ok([x, y, z]) => Ok(ChartSpec::Markov([*x, *y, *z])),
        _ => Err(CliError::Config(format!("invalid chart {s:?}"))),
    }
}

fn parse_base(s: &str) -> Result<BaseSpec, CliError> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s)
            .map(BaseSpec::Coords)
            .map_err(|e| CliError::Config(format!("invalid base coordinates: {e}")));
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [p, q] => {
            let (p, q) = (p.parse::<i64>(), q.parse::<i64>());
            match (p, q) {
                (Ok(p), Ok(q)) => Slope::new(p, q)
                    .map(BaseSpec::Slope)
                    .map_err(CliError::Core),
                _ => Err(CliError::Config(format!("invalid base slope {s:?}"))),
            }
        }
        _ => Err(CliError::Config(format!("invalid base slope {s:?}"))),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(what: &str, s: &str) -> Result<T, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Config(format!("invalid {what}: {e}")))
}

/// Flags shared by every command. All are optional here; each command checks
/// what it needs.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON config file; flags win on conflict.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Surface signature `genus,cusps,boundary` or '{"genus":1,"cusps":1,"boundary":0}'.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    /// Torus chart: Markov traces `3,3,3`, '{"markov":[3,3,3]}' or '{"fn":{"l":1.2,"tau":0.3}}'.
    #[arg(long, global = true)]
    pub chart: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub length: Option<LengthKind>,
    #[arg(long, global = true)]
    pub max_length: Option<f64>,
    /// Comma-separated dilations t, or lengths L for count, unfold and fit.
    #[arg(long, global = true, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Orbit base: a slope 'p,q' or '{"twists":[..],"intersections":[..]}'.
    #[arg(long, global = true)]
    pub base: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Power-law fit window.
    #[arg(long, global = true, value_enum)]
    pub window: Option<Window>,
    /// Fenchel–Nielsen sampling box for unfold.
    #[arg(long = "box", global = true, value_enum)]
    pub fn_box: Option<BoxKind>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    surface: Option<SurfaceSignature>,
    chart: Option<ChartSpec>,
    length: Option<LengthKind>,
    max_length: Option<f64>,
    t: Option<Vec<f64>>,
    samples: Option<usize>,
    seed: Option<u64>,
    threads: Option<usize>,
    out: Option<PathBuf>,
    base: Option<String>,
    format: Option<Format>,
    window: Option<Window>,
    #[serde(rename = "box")]
    fn_box: Option<BoxKind>,
}

/// Validated, merged configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub surface: SurfaceSignature,
    pub chart: Option<ChartSpec>,
    pub length: Option<LengthKind>,
    pub max_length: Option<f64>,
    pub t: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub base: Option<BaseSpec>,
    pub format: Format,
    pub window: Window,
    pub fn_box: FnBox,
}

impl RunConfig {
    pub fn resolve(flags: Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => read_config(path)?,
            None => FileConfig::default(),
        };
        let surface = match flags.surface {
            Some(s) => parse_surface(&s)?,
            None => file.surface.unwrap_or(SurfaceSignature::PUNCTURED_TORUS),
        };
        surface.dimension().map_err(CliError::Core)?;
        let chart = match flags.chart {
            Some(s) => Some(parse_chart(&s)?),
            None => file.chart,
        };
        let base = flags
            .base
            .or(file.base)
            .map(|b| parse_base(&b))
            .transpose()?;
        let fn_box = match flags.fn_box.or(file.fn_box).unwrap_or(BoxKind::Default) {
            BoxKind::Default => FnBox::DEFAULT,
            BoxKind::Alternate => FnBox::ALTERNATE,
        };
        let threads = flags.threads.or(file.threads);
        if threads == Some(0) {
            return Err(CliError::Config("threads must be positive".into()));
        }
        Ok(RunConfig {
            surface,
            chart,
            length: flags.length.or(file.length),
            max_length: flags.max_length.or(file.max_length),
            t: flags.t.or(file.t),
            samples: flags.samples.or(file.samples),
            seed: flags.seed.or(file.seed),
            threads,
            out: flags.out.or(file.out),
            base,
            format: flags.format.or(file.format).unwrap_or(Format::Json),
            window: flags.window.or(file.window).unwrap_or(Window::Tail),
            fn_box,
        })
    }

    pub fn markov_chart(&self) -> Result<MarkovChart, CliError> {
        if !self.surface.is_punctured_torus() {
            return Err(CliError::Config(
                "a chart needs the punctured torus surface".into(),
            ));
        }
        let spec = self
            .chart
            .ok_or_else(|| CliError::Config("chart required".into()))?;
        spec.to_markov().map_err(CliError::Core)
    }

    /// The `--t` list, or `--max-length` alone.
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        match (&self.t, self.max_length) {
            (Some(t), _) if !t.is_empty() => Ok(t.clone()),
            (_, Some(l)) => Ok(vec![l]),
            _ => Err(CliError::Config(
                "length grid required (--t or --max-length)".into(),
            )),
        }
    }
}

fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_json("config", &text)
}
