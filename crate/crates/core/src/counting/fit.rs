//! Least-squares fits for limits and growth rates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinary least squares `y = intercept + slope * x` with standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub intercept_stderr: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    let n = xs.len();
    if n < 3 || ys.len() != n {
        return Err(Error::InsufficientSeries(format!(
            "{n} points for a linear fit"
        )));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientSeries("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let s2 = ssr / (nf - 2.0);
    let sum_x2: f64 = xs.iter().map(|x| x * x).sum();
    Ok(LinearFit {
        slope,
        intercept,
        slope_stderr: (s2 / sxx).sqrt(),
        intercept_stderr: (s2 * sum_x2 / (nf * sxx)).sqrt(),
    })
}

/// Which part of an `(L, count)` series enters a power-law fit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitWindow {
    /// Upper half of the grid in log scale.
    #[default]
    Tail,
    All,
    Range(f64, f64),
}

/// `count ~ constant * L^exponent` on a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub constant: f64,
    /// Standard error of the exponent (of the constant, for fixed-exponent fits).
    pub stderr: f64,
    pub window: (f64, f64),
}

fn windowed(points: &[(f64, f64)], window: FitWindow) -> Result<Vec<(f64, f64)>> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.iter().any(|p| !(p.0 > 0.0)) {
        return Err(Error::InvalidArgument(
            "length grid must be positive".into(),
        ));
    }
    let (lo, hi) = match window {
        FitWindow::All => (f64::NEG_INFINITY, f64::INFINITY),
        FitWindow::Range(lo, hi) => (lo, hi),
        FitWindow::Tail => {
            let first = pts.first().map_or(1.0, |p| p.0);
            let last = pts.last().map_or(1.0, |p| p.0);
            ((0.5 * (first.ln() + last.ln())).exp(), f64::INFINITY)
        }
    };
    let sel: Vec<(f64, f64)> = pts.into_iter().filter(|p| p.0 >= lo && p.0 <= hi).collect();
    if sel.len() < 4 {
        return Err(Error::InsufficientSeries(format!(
            "{} points in the fit window, need at least 4",
            sel.len()
        )));
    }
    if let Some(p) = sel.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::NonPositiveCount(p.0));
    }
    Ok(sel)
}

/// Log-log regression of counts against lengths.
pub fn fit_power_law(points: &[(f64, f64)], window: FitWindow) -> Result<FitResult> {
    let sel = windowed(points, window)?;
    let xs: Vec<f64> = sel.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = sel.iter().map(|p| p.1.ln()).collect();
    let fit = linear_fit(&xs, &ys)?;
    Ok(FitResult {
        exponent: fit.slope,
        constant: fit.intercept.exp(),
        stderr: fit.slope_stderr,
        window: (sel[0].0, sel[sel.len() - 1].0),
    })
}

/// Constant of `count ~ c * L^exponent` with the exponent held fixed:
/// the geometric mean of `count / L^exponent`.
pub fn fit_fixed_exponent(
    points: &[(f64, f64)],
    exponent: f64,
    window: FitWindow,
) -> Result<FitResult> {
    let sel = windowed(points, window)?;
    let logs: Vec<f64> = sel.iter().map(|p| p.1.ln() - exponent * p.0.ln()).collect();
    let n = logs.len() as f64;
    let mean = logs.iter().sum::<f64>() / n;
    let var = logs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let constant = mean.exp();
    Ok(FitResult {
        exponent,
        constant,
        stderr: constant * (var / n).sqrt(),
        window: (sel[0].0, sel[sel.len() - 1].0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_power_law_is_recovered() {
        let pts: Vec<(f64, f64)> = (1..=10).map(|i| (i as f64, 3.0 * (i * i) as f64)).collect();
        for w in [FitWindow::All, FitWindow::Tail] {
            let fit = fit_power_law(&pts, w).unwrap();
            assert_relative_eq!(fit.exponent, 2.0, epsilon = 1e-12);
            assert_relative_eq!(fit.constant, 3.0, max_relative = 1e-12);
            assert!(fit.stderr < 1e-10);
        }
        let tail = fit_power_law(&pts, FitWindow::Tail).unwrap();
        assert_eq!(tail.window, (4.0, 10.0));
        let fixed = fit_fixed_exponent(&pts, 2.0, FitWindow::All).unwrap();
        assert_relative_eq!(fixed.constant, 3.0, max_relative = 1e-12);
    }

    #[test]
    fn fit_errors() {
        let few = [(1.0, 1.0), (2.0, 4.0), (3.0, 9.0)];
        assert!(matches!(
            fit_power_law(&few, FitWindow::All),
            Err(Error::InsufficientSeries(_))
        ));
        let zero = [(1.0, 1.0), (2.0, 4.0), (3.0, 0.0), (4.0, 16.0)];
        assert_eq!(
            fit_power_law(&zero, FitWindow::All),
            Err(Error::NonPositiveCount(3.0))
        );
    }

    #[test]
    fn linear_fit_standard_errors() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [1.0, 3.0, 2.0, 4.0];
        let f = linear_fit(&xs, &ys).unwrap();
        // hand computation: slope 0.8, intercept 0.5, s^2 = 0.9
        assert_relative_eq!(f.slope, 0.8, epsilon = 1e-12);
        assert_relative_eq!(f.intercept, 0.5, epsilon = 1e-12);
        assert_relative_eq!(f.slope_stderr, (0.9f64 / 5.0).sqrt(), epsilon = 1e-12);
        assert_relative_eq!(
            f.intercept_stderr,
            (0.9f64 * 30.0 / 20.0).sqrt(),
            epsilon = 1e-12
        );
    }
}
