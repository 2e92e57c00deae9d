//! Acceptance checks, run without the test harness so the PASS/FAIL line of
//! each criterion is always printed. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curvecount::counting::{
    extrapolate, fit_power_law, sandwich_lambda, torus_counts, torus_measure, FitWindow, Lattice,
    LatticeCounter, Orbit,
};
use curvecount::length::{
    ball_bounding_radius, estimate_quasi_constants, L1Length, LengthFunction, QuasiConstants,
};
use curvecount::moduli::{estimate_average_counts, MonteCarloConfig};
use curvecount::torus::{
    enumerate_simple, fn_to_markov, slope_length, slope_trace, FnChart, Holonomy, MarkovChart,
    Mat2, Slope, TorusLength,
};
use curvecount::Execution;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn random_charts(n: usize, seed: u64, length: (f64, f64), twist: (f64, f64)) -> Vec<MarkovChart> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let l = rng.random_range(length.0..length.1);
            let tau = rng.random_range(twist.0..twist.1);
            fn_to_markov(FnChart::new(l, tau).unwrap()).unwrap()
        })
        .collect()
}

fn slopes_up_to(q_max: i64, p_max: i64) -> Vec<Slope> {
    let mut out = vec![Slope::ALPHA];
    for q in 1..=q_max {
        for p in -p_max..=p_max {
            if gcd(p, q) == 1 {
                out.push(Slope::new(p, q).unwrap());
            }
        }
    }
    out
}

/// Trace of the lower Christoffel word of a slope in the holonomy matrices.
fn word_trace(s: Slope, h: &Holonomy) -> f64 {
    let (p, q) = (s.p(), s.q());
    let a = if p < 0 { h.a.inverse() } else { h.a };
    let n = p.abs() + q;
    let mut m = Mat2::IDENTITY;
    for i in 1..=n {
        let letter = if (i * q) / n == ((i - 1) * q) / n {
            &a
        } else {
            &h.b
        };
        m = m.mul(letter);
    }
    m.trace()
}

fn l1_grid(radius: i64) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for p in -radius..=radius {
        for q in -radius..=radius {
            if (p, q) != (0, 0) && p.abs() + q.abs() <= radius {
                out.push([p as f64, q as f64]);
            }
        }
    }
    out
}

fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn torus_l1() -> LatticeCounter<L1Length> {
    LatticeCounter::new(Lattice::Torus, L1Length, QuasiConstants::IDENTITY).unwrap()
}

fn l1_exactness() -> Check {
    let est = torus_l1().measure(&[10.0]).map_err(err)?;
    ensure(
        est.counts[0] == 220 && est.lambda_t[0] == 2.2,
        format!("count {} lambda {}", est.counts[0], est.lambda_t[0]),
    )?;
    let est = extrapolate(
        &torus_l1()
            .measure(&geometric(25.0, 800.0, 6))
            .map_err(err)?,
    )
    .map_err(err)?;
    let lim = est.extrapolated.unwrap();
    ensure((1.99..=2.01).contains(&lim), format!("extrapolated {lim}"))?;
    Ok(format!("lambda_10 = 2.2, limit {lim:.6}"))
}

fn oracle_equivalence() -> Check {
    let slopes = slopes_up_to(100, 100);
    let mut worst = 0.0f64;
    for chart in random_charts(20, 11, (0.2, 2.5), (-2.0, 2.0)) {
        let h = Holonomy::from_markov(&chart);
        for &s in &slopes {
            let (fast, word) = (slope_trace(s, &chart), word_trace(s, &h));
            worst = worst.max((fast - word).abs() / word.abs());
        }
    }
    ensure(worst <= 1e-9, format!("relative error {worst:e}"))?;
    Ok(format!(
        "{} slopes x 20 charts, max relative error {worst:.1e}",
        slopes.len()
    ))
}

fn growth_exponent() -> Check {
    let ls = geometric(20.0, 160.0, 13);
    let counts = torus_counts(&MarkovChart::MODULAR, &ls, Execution::Parallel).map_err(err)?;
    let simple: Vec<(f64, f64)> = ls
        .iter()
        .zip(&counts)
        .map(|(&l, c)| (l, c.0 as f64))
        .collect();
    let multi: Vec<(f64, f64)> = ls
        .iter()
        .zip(&counts)
        .map(|(&l, c)| (l, c.1 as f64))
        .collect();
    let fs = fit_power_law(&simple, FitWindow::All).map_err(err)?;
    let fm = fit_power_law(&multi, FitWindow::All).map_err(err)?;
    let range = 1.9..=2.1;
    ensure(
        range.contains(&fs.exponent) && range.contains(&fm.exponent),
        format!("{} / {}", fs.exponent, fm.exponent),
    )?;
    Ok(format!(
        "simple {:.4}, multicurve {:.4}",
        fs.exponent, fm.exponent
    ))
}

fn orbit_density() -> Check {
    let t = [250.0, 500.0, 1000.0, 2000.0];
    let census = torus_l1()
        .census(&Orbit::TorusPrimitive(Slope::ALPHA), &t)
        .map_err(err)?;
    for ((t, mu), lambda) in t.iter().zip(&census.mu_t).zip(&census.lambda_t) {
        ensure(mu <= lambda, format!("mu > lambda at t = {t}"))?;
    }
    let r = census.ratios()[3];
    let target = 6.0 / std::f64::consts::PI.powi(2);
    ensure((r - target).abs() <= 0.01 * target, format!("ratio {r}"))?;
    Ok(format!("ratio at t = 2000: {r:.6} (target {target:.6})"))
}

fn axioms(len: &dyn LengthFunction, rng: &mut ChaCha8Rng, n: usize) -> Result<(), String> {
    for _ in 0..n {
        let mut v = || [rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0)];
        let (x, y) = (v(), v());
        let s: f64 = rng.random_range(1e-3..10.0);
        let lx = len.evaluate(&x);
        let ls = len.evaluate(&[s * x[0], s * x[1]]);
        ensure(
            (ls - s * lx).abs() <= 1e-9 * s * lx,
            format!("{}: homogeneity at {x:?}", len.label()),
        )?;
        let sum = len.evaluate(&[x[0] + y[0], x[1] + y[1]]);
        let bound = lx + len.evaluate(&y);
        ensure(
            sum <= bound * (1.0 + 1e-9),
            format!("{}: subadditivity at {x:?}, {y:?}", len.label()),
        )?;
    }
    Ok(())
}

fn length_axioms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    axioms(&L1Length, &mut rng, 10_000)?;
    let charts = random_charts(10, 6, (0.3, 3.0), (-2.0, 2.0));
    for chart in charts.iter().chain([&MarkovChart::MODULAR]) {
        axioms(&TorusLength::new(*chart), &mut rng, 1_000)?;
    }
    Ok("10^4 checks each for L1 and torus length".into())
}

fn sandwich() -> Check {
    let chart = MarkovChart::MODULAR;
    let q = estimate_quasi_constants(&TorusLength::new(chart), &l1_grid(50)).map_err(err)?;
    let (lo, hi) = sandwich_lambda(&Lattice::Torus, &q).map_err(err)?;
    let est =
        torus_measure(&chart, &geometric(50.0, 800.0, 9), Execution::Parallel).map_err(err)?;
    let lim = extrapolate(&est).map_err(err)?.extrapolated.unwrap();
    ensure(lo <= lim && lim <= hi, format!("{lo} <= {lim} <= {hi}"))?;
    Ok(format!("{lo:.4} <= {lim:.4} <= {hi:.4}"))
}

fn unfolding() -> Check {
    let grid = [4.0, 6.0, 8.0, 12.0];
    let reports =
        estimate_average_counts(&grid, &MonteCarloConfig::new(100_000, 2024)).map_err(err)?;
    let mut max_z = 0.0f64;
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            max_z = max_z.max((a.kappa - b.kappa).abs() / a.kappa_stderr.hypot(b.kappa_stderr));
        }
    }
    ensure(max_z <= 3.0, format!("kappa spread {max_z:.2} combined SE"))?;
    let pts: Vec<(f64, f64)> = reports.iter().map(|r| (r.length, r.estimate)).collect();
    let fit = fit_power_law(&pts, FitWindow::All).map_err(err)?;
    ensure(
        (fit.exponent - 2.0).abs() <= 0.15,
        format!("degree {}", fit.exponent),
    )?;
    Ok(format!(
        "max kappa z {max_z:.2}, degree {:.4}",
        fit.exponent
    ))
}

fn pruning() -> Check {
    let mut checked = 0;
    for chart in random_charts(10, 12, (0.3, 3.0), (-2.0, 2.0)) {
        let q = estimate_quasi_constants(&TorusLength::new(chart), &l1_grid(50)).map_err(err)?;
        let radius = ball_bounding_radius(&q, 8.0).map_err(err)?.ceil() as i64 + 1;
        let all = slopes_up_to(radius, radius);
        for l in [1.0, 2.5, 4.0, 6.0, 8.0] {
            let fast: BTreeSet<Slope> = enumerate_simple(&chart, l)
                .map_err(err)?
                .iter()
                .map(|r| r.slope)
                .collect();
            let brute: BTreeSet<Slope> = all
                .iter()
                .copied()
                .filter(|&s| slope_length(s, &chart).unwrap() <= l)
                .collect();
            ensure(fast == brute, format!("{chart:?} at L = {l}"))?;
            checked += fast.len();
        }
    }
    Ok(format!("10 charts, {checked} curves matched"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_curvecount"))
        .args(args)
        .output()
        .map_err(err)?;
    ensure(
        out.status.success(),
        format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)),
    )?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(err)?;
    let csv = dir.path().join("counts.csv");
    std::fs::write(
        &csv,
        run_cli(&[
            "count",
            "--chart",
            "3,3,3",
            "--t",
            "10,14,20,28,40,56,80,113,160",
        ])?,
    )
    .map_err(err)?;
    let csv = csv.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["count", "--chart", "3,3,3", "--max-length", "40"],
        vec![
            "count",
            "--chart",
            r#"{"fn":{"l":0.8,"tau":0.3}}"#,
            "--t",
            "5,10,20",
        ],
        vec!["measure", "--t", "25,50,100,200,400,800"],
        vec![
            "measure",
            "--length",
            "hyperbolic",
            "--chart",
            "3,3,3",
            "--t",
            "50,100,200,400",
        ],
        vec!["measure", "--surface", "0,5,0", "--t", "10,20,40"],
        vec!["orbit", "--t", "100,200,400,800"],
        vec![
            "orbit",
            "--length",
            "hyperbolic",
            "--chart",
            "3,3,3",
            "--t",
            "50,100,200,400",
            "--format",
            "csv",
        ],
        vec!["unfold", "--seed", "9", "--samples", "20000"],
        vec![
            "unfold",
            "--seed",
            "9",
            "--samples",
            "20000",
            "--box",
            "alternate",
            "--format",
            "csv",
        ],
        vec!["fit", csv],
    ];
    for cmd in &commands {
        let reference = run_cli(&[cmd.as_slice(), &["--threads", "1"]].concat())?;
        for threads in [
            ["--threads", "4"].as_slice(),
            ["--threads", "1"].as_slice(),
            [].as_slice(),
        ] {
            let again = run_cli(&[cmd.as_slice(), threads].concat())?;
            ensure(
                again == reference,
                format!("{cmd:?} differs with {threads:?}"),
            )?;
        }
    }
    Ok(format!(
        "{} commands byte-identical across thread counts and reruns",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "L1 measure exactness",
            l1_exactness,
            Some(Duration::from_secs(1)),
        ),
        (
            "trace recursion vs matrix words",
            oracle_equivalence,
            Some(Duration::from_secs(10)),
        ),
        (
            "growth exponent",
            growth_exponent,
            Some(Duration::from_secs(60)),
        ),
        (
            "orbit density",
            orbit_density,
            Some(Duration::from_secs(30)),
        ),
        ("length function axioms", length_axioms, None),
        ("sandwich consistency", sandwich, None),
        (
            "unfolding identity",
            unfolding,
            Some(Duration::from_secs(300)),
        ),
        ("pruning soundness", pruning, None),
        ("determinism", determinism, None),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(b)) = (&result, budget) {
            if elapsed > b {
                result = Err(format!("took {elapsed:.2?}, budget {b:?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS {} {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {} {name} [{elapsed:.2?}]: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
