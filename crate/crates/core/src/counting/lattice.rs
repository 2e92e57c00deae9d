//! Lattice models and sharded enumeration of L1 balls.

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::surface::CoordinateSpace;

/// Which integer points count as (weighted) curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lattice {
    /// All of `Z^2`: the vector `n (p, q)` is the multicurve `n` times the
    /// slope `(p, q)`, each multicurve appearing with both signs.
    Torus,
    /// `Z^k x (2Z_{>=0})^k` with nonnegative twist where the intersection
    /// number vanishes. Points are laid out as twists, then intersections.
    DehnThurston(CoordinateSpace),
}

impl Lattice {
    pub fn dimension(&self) -> usize {
        match self {
            Lattice::Torus => 2,
            Lattice::DehnThurston(space) => space.dimension(),
        }
    }

    /// `lim |{x != 0 : |x|_1 <= t}| / t^d`.
    ///
    /// For `Z^2` this is the area 2 of the unit L1 ball. For the Dehn–Thurston
    /// lattice the ball restricted to `m_i >= 0` has volume `2^k / (2k)!` and
    /// the lattice has covolume `2^k`.
    pub fn l1_unit_ball_measure(&self) -> f64 {
        match self {
            Lattice::Torus => 2.0,
            Lattice::DehnThurston(space) => {
                let n = space.dimension() as u32;
                1.0 / (1..=n).map(f64::from).product::<f64>()
            }
        }
    }

    /// Folds `visit` over every nonzero lattice point with `|x|_1 <= radius`.
    /// Shards are fixed by the first coordinate pair and merged in order.
    pub(crate) fn fold_l1_ball<A, F, M>(
        &self,
        radius: i64,
        exec: Execution,
        visit: F,
        merge: M,
    ) -> A
    where
        A: Default + Send,
        F: Fn(&mut A, &[i64]) + Sync + Send,
        M: Fn(&mut A, A),
    {
        let mut acc = A::default();
        if radius < 1 {
            return acc;
        }
        let shards = match self {
            Lattice::Torus => exec.map((2 * radius + 1) as usize, |i| {
                let p = i as i64 - radius;
                let rest = radius - p.abs();
                let mut a = A::default();
                for q in -rest..=rest {
                    if p != 0 || q != 0 {
                        visit(&mut a, &[p, q]);
                    }
                }
                a
            }),
            Lattice::DehnThurston(space) => {
                let k = space.pants_curves();
                let firsts = pair_choices(radius);
                exec.map(firsts.len(), |i| {
                    let (t0, m0) = firsts[i];
                    let mut a = A::default();
                    let mut point = vec![0i64; 2 * k];
                    point[0] = t0;
                    point[k] = m0;
                    let budget = radius - t0.abs() - m0;
                    dt_recurse(&mut point, k, 1, budget, &mut a, &visit);
                    a
                })
            }
        };
        for s in shards {
            merge(&mut acc, s);
        }
        acc
    }
}

/// Valid `(t, m)` pairs with `|t| + m <= budget`.
fn pair_choices(budget: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in (0..=budget).step_by(2) {
        let r = budget - m;
        let lo = if m == 0 { 0 } else { -r };
        for t in lo..=r {
            out.push((t, m));
        }
    }
    out
}

fn dt_recurse<A, F>(point: &mut [i64], k: usize, i: usize, budget: i64, acc: &mut A, visit: &F)
where
    F: Fn(&mut A, &[i64]),
{
    if i == k {
        if point.iter().any(|&c| c != 0) {
            visit(acc, point);
        }
        return;
    }
    for m in (0..=budget).step_by(2) {
        let r = budget - m;
        let lo = if m == 0 { 0 } else { -r };
        for t in lo..=r {
            point[i] = t;
            point[k + i] = m;
            dt_recurse(point, k, i + 1, r - t.abs(), acc, visit);
        }
    }
    point[i] = 0;
    point[k + i] = 0;
}
