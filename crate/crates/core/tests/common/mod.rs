#![allow(dead_code)]

use curvecount::torus::{fn_to_markov, FnChart, Holonomy, MarkovChart, Mat2, Slope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cusped tori from Fenchel–Nielsen coordinates drawn uniformly from a box.
pub fn random_charts(
    n: usize,
    seed: u64,
    length: (f64, f64),
    twist: (f64, f64),
) -> Vec<MarkovChart> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let l = rng.random_range(length.0..length.1);
            let tau = rng.random_range(twist.0..twist.1);
            fn_to_markov(FnChart::new(l, tau).unwrap()).unwrap()
        })
        .collect()
}

/// Trace of the Christoffel word of a slope, multiplied out from explicit
/// holonomy matrices. `(p, q)` with `p < 0` uses `A^{-1}`.
pub fn word_trace(s: Slope, h: &Holonomy) -> f64 {
    let (p, q) = (s.p(), s.q());
    let a = if p < 0 { h.a.inverse() } else { h.a };
    let (na, nb) = (p.abs(), q);
    let n = na + nb;
    let mut m = Mat2::IDENTITY;
    for i in 1..=n {
        // lower Christoffel word: a letter B wherever floor(i nb / n) steps
        let letter = if (i * nb) / n == ((i - 1) * nb) / n {
            &a
        } else {
            &h.b
        };
        m = m.mul(letter);
    }
    m.trace()
}
