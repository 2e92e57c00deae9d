use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple closed curve on the once-punctured torus, recorded by its primitive
/// homology class up to sign. Canonical form has `q > 0`, or is `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const ALPHA: Slope = Slope { p: 1, q: 0 };
    pub const BETA: Slope = Slope { p: 0, q: 1 };
    pub const GAMMA: Slope = Slope { p: 1, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(Error::NotPrimitive { p, q });
        }
        Ok(Self::canonical(p, q))
    }

    /// Sign normalization of a vector already known to be primitive.
    pub(crate) fn canonical(p: i64, q: i64) -> Self {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn vector(&self) -> [i64; 2] {
        [self.p, self.q]
    }

    /// A vector `(r, u)` with `det[[p, r], [q, u]] = 1`.
    pub fn positive_partner(&self) -> [i64; 2] {
        // p*u - q*r = 1
        let e = self.p.extended_gcd(&self.q);
        let (x, y) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
        // p*x + q*y = 1  =>  u = x, r = -y
        [-y, x]
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Integer 2x2 matrix of determinant ±1, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unimodular {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    /// Quarter turn, `(p, q) -> (-q, p)`.
    pub const S: Unimodular = Unimodular {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    /// Dehn twist about `(1, 0)`, `(p, q) -> (p + q, q)`.
    pub const T: Unimodular = Unimodular {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const T_INV: Unimodular = Unimodular {
        a: 1,
        b: -1,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Unimodular { a, b, c, d })
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn compose(&self, rhs: &Unimodular) -> Unimodular {
        Unimodular {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

/// Canonical form of `g * s`.
pub fn mcg_apply(g: &Unimodular, s: Slope) -> Result<Slope> {
    let det = g.det();
    if det.abs() != 1 {
        return Err(Error::NotUnimodular(det));
    }
    let [p, q] = g.apply(s.vector());
    Ok(Slope::canonical(p, q))
}

/// Breadth-first orbit of `base` under words of length at most `max_word`
/// in `generators`.
pub fn orbit_bfs(
    base: Slope,
    generators: &[Unimodular],
    max_word: usize,
) -> Result<BTreeSet<Slope>> {
    let mut seen = BTreeSet::from([base]);
    let mut frontier = vec![base];
    for _ in 0..max_word {
        let mut next = Vec::new();
        for s in &frontier {
            for g in generators {
                let image = mcg_apply(g, *s)?;
                if seen.insert(image) {
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}
