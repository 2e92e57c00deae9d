use curvecount::counting::{
    extrapolate, fit_fixed_exponent, fit_power_law, sandwich_lambda, torus_census, torus_counts,
    torus_measure, FitWindow, Lattice, LatticeCounter, Orbit,
};
use curvecount::length::{estimate_quasi_constants, L1Length, QuasiConstants, Scaled};
use curvecount::surface::{CoordinateSpace, MulticurveCoords, SurfaceSignature};
use curvecount::torus::{unit_ball_area, MarkovChart, Slope, TorusLength};
use curvecount::Execution;

const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

fn mobius(n: i64) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// Primitive vectors with |p| + |q| <= t, by Moebius inversion of the full
/// count 2 r (r + 1).
fn primitive_l1_count(t: i64) -> u64 {
    (1..=t)
        .map(|d| mobius(d) * 2 * (t / d) * (t / d + 1))
        .sum::<i64>() as u64
}

fn torus_l1() -> LatticeCounter<L1Length> {
    LatticeCounter::new(Lattice::Torus, L1Length, QuasiConstants::IDENTITY).unwrap()
}

fn l1_grid(radius: i64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for p in -radius..=radius {
        for q in -radius..=radius {
            if (p, q) != (0, 0) && p.abs() + q.abs() <= radius {
                out.push(vec![p as f64, q as f64]);
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

#[test]
fn primitive_counts_match_sieve() {
    let orbit = Orbit::TorusPrimitive(Slope::new(2, 5).unwrap());
    let t = [1.0, 10.0, 137.0, 500.0];
    let census = torus_l1().census(&orbit, &t).unwrap();
    for (i, &ti) in t.iter().enumerate() {
        assert_eq!(census.orbit_counts[i], primitive_l1_count(ti as i64));
        assert!(census.orbit_counts[i] <= census.lattice_counts[i]);
        assert!(census.mu_t[i] <= census.lambda_t[i]);
    }
}

#[test]
fn scaling_law_is_a_count_identity() {
    let modular = TorusLength::new(MarkovChart::MODULAR);
    let q = estimate_quasi_constants(&modular, &l1_grid(30)).unwrap();
    let base = LatticeCounter::new(Lattice::Torus, modular, q).unwrap();
    for s in [0.5, 2.0, 4.0] {
        let scaled =
            LatticeCounter::new(Lattice::Torus, Scaled::new(s, modular), q.scaled(s)).unwrap();
        for t in [6.0, 13.0, 30.0] {
            assert_eq!(
                scaled.count_ball(t, None).unwrap(),
                base.count_ball(t / s, None).unwrap(),
                "s = {s}, t = {t}"
            );
        }
    }
}

#[test]
fn box_and_tree_counts_agree() {
    let chart = MarkovChart::MODULAR;
    let len = TorusLength::new(chart);
    let q = estimate_quasi_constants(&len, &l1_grid(50)).unwrap();
    let boxed = LatticeCounter::new(Lattice::Torus, len, q).unwrap();
    let t = [5.0, 10.0, 20.0, 40.0];
    let tree = torus_census(&chart, Slope::ALPHA, &t, Execution::default()).unwrap();
    let census = boxed
        .census(&Orbit::TorusPrimitive(Slope::ALPHA), &t)
        .unwrap();
    assert_eq!(census.lattice_counts, tree.lattice_counts);
    assert_eq!(census.orbit_counts, tree.orbit_counts);
}

#[test]
fn dehn_thurston_measure_limits() {
    for (sig, t) in [
        (
            SurfaceSignature::new(0, 4, 0),
            vec![25.0, 50.0, 100.0, 200.0],
        ),
        // second-order terms are large in four dimensions, so start further out
        (
            SurfaceSignature::new(0, 5, 0),
            vec![30.0, 45.0, 60.0, 90.0, 120.0],
        ),
    ] {
        let lattice = Lattice::DehnThurston(CoordinateSpace::new(sig).unwrap());
        let exact = lattice.l1_unit_ball_measure();
        let counter = LatticeCounter::new(lattice, L1Length, QuasiConstants::IDENTITY).unwrap();
        let est = extrapolate(&counter.measure(&t).unwrap()).unwrap();
        let lim = est.extrapolated.unwrap();
        assert!(
            (lim - exact).abs() < 0.02 * exact,
            "{sig:?}: {lim} vs {exact}"
        );
    }
}

#[test]
fn pants_twist_orbits_sit_below_the_lattice() {
    let space = CoordinateSpace::new(SurfaceSignature::new(0, 5, 0)).unwrap();
    let counter = LatticeCounter::new(
        Lattice::DehnThurston(space),
        L1Length,
        QuasiConstants::IDENTITY,
    )
    .unwrap();
    let base = MulticurveCoords::new(vec![1, 0], vec![2, 4]);
    let census = counter
        .census(&Orbit::PantsTwists(base), &[4.0, 8.0, 12.0])
        .unwrap();
    assert_eq!(census.orbit_counts[0], 0);
    for i in 0..3 {
        assert!(census.orbit_counts[i] <= census.lattice_counts[i]);
    }
    // |1 + 2a| + |4b| + 6 <= 12: a in -3..=2, b in -1..=1 with |4b| <= 6 - |1 + 2a|
    let brute = (-3i64..=2)
        .flat_map(|a| (-1i64..=1).map(move |b| (a, b)))
        .filter(|&(a, b)| (1 + 2 * a).abs() + (4 * b).abs() + 6 <= 12)
        .count() as u64;
    assert_eq!(census.orbit_counts[2], brute);
}

#[test]
fn hyperbolic_measure_lies_in_sandwich() {
    let chart = MarkovChart::MODULAR;
    let q = estimate_quasi_constants(&TorusLength::new(chart), &l1_grid(50)).unwrap();
    let (lo, hi) = sandwich_lambda(&Lattice::Torus, &q).unwrap();
    let est = extrapolate(
        &torus_measure(&chart, &geometric(50.0, 800.0, 9), Execution::default()).unwrap(),
    )
    .unwrap();
    let lim = est.extrapolated.unwrap();
    assert!(lo <= lim && lim <= hi, "{lo} <= {lim} <= {hi}");
    // the limit is the area of the unit ball of the length norm
    let area = unit_ball_area(&chart, 100.0).unwrap();
    assert!((lim - area).abs() < 5e-3 * area, "{lim} vs {area}");
}

#[test]
fn growth_exponent_on_modular_torus() {
    let ls = geometric(20.0, 160.0, 13);
    let counts = torus_counts(&MarkovChart::MODULAR, &ls, Execution::default()).unwrap();
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
    let fs = fit_power_law(&simple, FitWindow::All).unwrap();
    let fm = fit_power_law(&multi, FitWindow::All).unwrap();
    assert!((1.9..=2.1).contains(&fs.exponent), "{fs:?}");
    assert!((1.9..=2.1).contains(&fm.exponent), "{fm:?}");
    assert!(fm.constant > fs.constant);
    let cs = fit_fixed_exponent(&simple, 2.0, FitWindow::Tail).unwrap();
    let cm = fit_fixed_exponent(&multi, 2.0, FitWindow::Tail).unwrap();
    assert!(
        (cm.constant / cs.constant - ZETA2).abs() < 0.02 * ZETA2,
        "{}",
        cm.constant / cs.constant
    );
}

#[test]
fn orbit_density_ratio() {
    let census = torus_census(
        &MarkovChart::MODULAR,
        Slope::ALPHA,
        &[100.0, 400.0],
        Execution::default(),
    )
    .unwrap();
    let r = census.ratios()[1];
    assert!((r - 1.0 / ZETA2).abs() < 0.01 / ZETA2, "{r}");
    let census = torus_l1()
        .census(&Orbit::TorusPrimitive(Slope::ALPHA), &[2000.0])
        .unwrap();
    assert!((census.ratios()[0] - 1.0 / ZETA2).abs() < 1e-3);
}

#[test]
fn limit_constant_is_stable() {
    // fitted constant of N(L) = c L^2 and the limit of the orbit density
    // mu_t = 2 N(t) / t^2 measure the same thing
    let chart = MarkovChart::MODULAR;
    let ls = geometric(40.0, 640.0, 9);
    let census = torus_census(&chart, Slope::ALPHA, &ls, Execution::default()).unwrap();
    let (mu, mu_err) = census.extrapolate_mu().unwrap();
    let pts: Vec<(f64, f64)> = ls
        .iter()
        .zip(&census.orbit_counts)
        .map(|(&l, &n)| (l, n as f64 / 2.0))
        .collect();
    let fit = fit_fixed_exponent(&pts, 2.0, FitWindow::Tail).unwrap();
    let diff = (2.0 * fit.constant - mu).abs();
    assert!(
        diff <= 3.0 * (2.0 * fit.stderr).hypot(mu_err),
        "{} vs {mu} ± {mu_err}",
        2.0 * fit.constant
    );
}

#[test]
fn parallel_and_sequential_counts_agree() {
    let space = CoordinateSpace::new(SurfaceSignature::new(2, 0, 0)).unwrap();
    let seq = LatticeCounter::new(
        Lattice::DehnThurston(space.clone()),
        L1Length,
        QuasiConstants::IDENTITY,
    )
    .unwrap()
    .with_execution(Execution::Sequential);
    let par = LatticeCounter::new(
        Lattice::DehnThurston(space),
        L1Length,
        QuasiConstants::IDENTITY,
    )
    .unwrap();
    assert_eq!(
        seq.measure(&[3.0, 6.0, 9.0]).unwrap(),
        par.measure(&[3.0, 6.0, 9.0]).unwrap()
    );
}
