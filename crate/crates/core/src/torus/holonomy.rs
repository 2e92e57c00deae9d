//! Explicit SL(2, R) holonomy of a cusped torus.

use super::chart::{FnChart, MarkovChart};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn diag(lambda: f64) -> Self {
        Mat2::new(lambda, 0.0, 0.0, 1.0 / lambda)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }
}

/// Images of the generators for the slopes `(1, 0)` and `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Holonomy {
    pub a: Mat2,
    pub b: Mat2,
}

impl Holonomy {
    /// Fenchel–Nielsen construction along the curve `(1, 0)`.
    ///
    /// `A` is diagonal with eigenvalue `e^{l/2}`. The untwisted `B0` has equal
    /// diagonal entries, pinned by `tr[A, B0] = -2`, which forces them to be
    /// `coth(l/2)`. Twisting multiplies by the translation `D(tau)` along the
    /// axis of `A`; since `D` commutes with `A` the commutator is unchanged, and
    /// `D(l) = A` makes `tau -> tau + l` the Dehn twist `(A, B) -> (A, BA)`.
    pub fn fenchel_nielsen(chart: FnChart) -> Holonomy {
        let half = 0.5 * chart.length();
        let a = Mat2::diag(half.exp());
        let s = 1.0 / half.tanh();
        let off = 1.0 / half.sinh();
        let b0 = Mat2::new(s, off, off, s);
        let twist = Mat2::diag((0.5 * chart.twist()).exp());
        Holonomy {
            a,
            b: b0.mul(&twist),
        }
    }

    /// A representation realizing a Markov triple: `A` diagonal with trace
    /// `x`, and `B` solved from `tr B = y`, `tr AB = z`, `det B = 1`.
    pub fn from_markov(chart: &MarkovChart) -> Holonomy {
        let (x, y, z) = chart.traces();
        let lambda = 0.5 * (x + (x * x - 4.0).sqrt());
        let a = Mat2::diag(lambda);
        let ba = (z - y / lambda) / (lambda - 1.0 / lambda);
        let bd = y - ba;
        let b = Mat2::new(ba, 1.0, ba * bd - 1.0, bd);
        Holonomy { a, b }
    }

    /// `(tr A, tr B, tr AB)`.
    pub fn traces(&self) -> (f64, f64, f64) {
        (self.a.trace(), self.b.trace(), self.a.mul(&self.b).trace())
    }

    pub fn commutator_trace(&self) -> f64 {
        self.a
            .mul(&self.b)
            .mul(&self.a.inverse())
            .mul(&self.b.inverse())
            .trace()
    }
}
