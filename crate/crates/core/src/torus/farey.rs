//! Trace recursion on the Farey tree of slopes.
//!
//! The slopes `(1,0)`, `(0,1)`, `(1,1)` span the central Farey triangle. Every
//! other slope appears exactly once as the new vertex `a + b` across an edge
//! `(a, b)` whose third vertex is `a - b`, and its trace follows from the Fricke
//! identity `tr(a + b) = tr(a) tr(b) - tr(a - b)`.
//!
//! Traversal prunes an edge once its new vertex is both above the trace
//! threshold and larger than both edge endpoints. Below such a vertex every
//! trace is larger still: if `t_d > max(t_a, t_b)` then the next vertex across
//! `(a, d)` is `t_a t_d - t_b > t_d (t_a - 1) - t_d = t_d (t_a - 2) + t_d`,
//! and induction carries the bound down the subtree. Edges that are not
//! trace-increasing are always descended; there are finitely many of them.

use serde::{Deserialize, Serialize};

use super::chart::{MarkovChart, PARABOLIC_TOLERANCE};
use super::slope::Slope;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Levels of the tree expanded sequentially before handing subtrees to
/// workers. Fixed, so shard boundaries never depend on the thread count.
const SPLIT_LEVELS: usize = 6;

/// A simple closed geodesic found by enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleCurveRecord {
    pub slope: Slope,
    pub trace: f64,
    pub length: f64,
}

/// `2 arccosh(t / 2)`.
pub fn length_from_trace(trace: f64) -> f64 {
    2.0 * (0.5 * trace).acosh()
}

/// `2 cosh(L / 2)`.
pub fn trace_from_length(length: f64) -> f64 {
    2.0 * (0.5 * length).cosh()
}

/// Hard cap on descent depth for a length bound `L`.
pub fn depth_cap(max_length: f64) -> usize {
    (64.0 * (1.0 + max_length)).ceil() as usize
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Node {
    pub v: [i64; 2],
    pub t: f64,
}

/// Oriented so that the unvisited vertex is `a + b` and `a - b` is the
/// vertex behind the edge, whose trace is `behind`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Edge {
    pub a: Node,
    pub b: Node,
    pub behind: f64,
    pub depth: usize,
}

fn roots(chart: &MarkovChart) -> ([Node; 3], [Edge; 3]) {
    let (x, y, z) = chart.traces();
    let alpha = Node { v: [1, 0], t: x };
    let beta = Node { v: [0, 1], t: y };
    let gamma = Node { v: [1, 1], t: z };
    let neg_beta = Node { v: [0, -1], t: y };
    let edges = [
        Edge {
            a: alpha,
            b: neg_beta,
            behind: z,
            depth: 0,
        },
        Edge {
            a: alpha,
            b: gamma,
            behind: y,
            depth: 0,
        },
        Edge {
            a: gamma,
            b: beta,
            behind: x,
            depth: 0,
        },
    ];
    ([alpha, beta, gamma], edges)
}

enum Step {
    Leaf,
    Expand(Node, Edge, Edge),
}

fn step(e: &Edge, threshold: f64, cap: usize) -> Result<Step> {
    let t = e.a.t * e.b.t - e.behind;
    if t > e.a.t.max(e.b.t) && t > threshold {
        return Ok(Step::Leaf);
    }
    if e.depth >= cap {
        return Err(Error::DepthCapExceeded { cap });
    }
    if !(t >= 2.0 + PARABOLIC_TOLERANCE) {
        return Err(Error::NonHyperbolicTrace(t));
    }
    let v = match (
        e.a.v[0].checked_add(e.b.v[0]),
        e.a.v[1].checked_add(e.b.v[1]),
    ) {
        (Some(p), Some(q)) => [p, q],
        _ => return Err(Error::DepthCapExceeded { cap }),
    };
    let d = Node { v, t };
    let depth = e.depth + 1;
    Ok(Step::Expand(
        d,
        Edge {
            a: e.a,
            b: d,
            behind: e.b.t,
            depth,
        },
        Edge {
            a: d,
            b: e.b,
            behind: e.a.t,
            depth,
        },
    ))
}

pub(crate) trait Visitor: Default + Send {
    fn vertex(&mut self, _node: &Node) {}
    fn leaf(&mut self, _edge: &Edge) {}
    fn merge(&mut self, other: Self);
}

fn walk<V: Visitor>(start: Edge, threshold: f64, cap: usize, visitor: &mut V) -> Result<()> {
    let mut stack = vec![start];
    while let Some(e) = stack.pop() {
        match step(&e, threshold, cap)? {
            Step::Leaf => visitor.leaf(&e),
            Step::Expand(d, left, right) => {
                visitor.vertex(&d);
                stack.push(right);
                stack.push(left);
            }
        }
    }
    Ok(())
}

/// Visits every vertex that is not pruned at trace `threshold`, and every
/// pruned edge.
pub(crate) fn traverse<V: Visitor>(
    chart: &MarkovChart,
    threshold: f64,
    cap: usize,
    exec: Execution,
) -> Result<V> {
    let mut head = V::default();
    let (nodes, edges) = roots(chart);
    for n in &nodes {
        head.vertex(n);
    }
    let mut frontier = edges.to_vec();
    for _ in 0..SPLIT_LEVELS {
        let mut next = Vec::with_capacity(2 * frontier.len());
        for e in &frontier {
            match step(e, threshold, cap)? {
                Step::Leaf => head.leaf(e),
                Step::Expand(d, left, right) => {
                    head.vertex(&d);
                    next.push(left);
                    next.push(right);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    let shards = exec.try_map(frontier.len(), |i| {
        let mut v = V::default();
        walk(frontier[i], threshold, cap, &mut v).map(|_| v)
    })?;
    for shard in shards {
        head.merge(shard);
    }
    Ok(head)
}

/// Every visited vertex; the caller filters by length.
#[derive(Default)]
struct Collect {
    out: Vec<SimpleCurveRecord>,
}

impl Visitor for Collect {
    fn vertex(&mut self, node: &Node) {
        self.out.push(SimpleCurveRecord {
            slope: Slope::canonical(node.v[0], node.v[1]),
            trace: node.t,
            length: length_from_trace(node.t),
        });
    }
    fn merge(&mut self, other: Self) {
        self.out.extend(other.out);
    }
}

/// Trace of the holonomy of `s`, by descending the Farey tree from the
/// central triangle.
pub fn slope_trace(s: Slope, chart: &MarkovChart) -> f64 {
    let (x, y, z) = chart.traces();
    let [p, q] = s.vector();
    if s == Slope::ALPHA {
        return x;
    }
    if p == 0 {
        return y;
    }
    if p == q {
        return z;
    }
    // s = al * a + be * b with al, be > 0 on the chosen root edge
    let (mut ta, mut tb, mut behind, mut al, mut be) = if p < 0 {
        (x, y, z, -p, q)
    } else if p > q {
        (x, z, y, p - q, q)
    } else {
        (z, y, x, p, q - p)
    };
    loop {
        let td = ta * tb - behind;
        if al == be {
            return td;
        }
        if al > be {
            behind = tb;
            tb = td;
            al -= be;
        } else {
            behind = ta;
            ta = td;
            be -= al;
        }
    }
}

/// Hyperbolic length of the geodesic in the class `s`.
pub fn slope_length(s: Slope, chart: &MarkovChart) -> Result<f64> {
    let t = slope_trace(s, chart);
    if !(t >= 2.0 + PARABOLIC_TOLERANCE) {
        return Err(Error::NonHyperbolicTrace(t));
    }
    Ok(length_from_trace(t))
}

/// All simple closed geodesics of length at most `max_length`, each once,
/// sorted by `(length, p, q)`.
pub fn enumerate_simple(chart: &MarkovChart, max_length: f64) -> Result<Vec<SimpleCurveRecord>> {
    enumerate_simple_with(chart, max_length, Execution::default())
}

pub fn enumerate_simple_with(
    chart: &MarkovChart,
    max_length: f64,
    exec: Execution,
) -> Result<Vec<SimpleCurveRecord>> {
    if !(max_length > 0.0) {
        return Err(Error::NonPositiveLength(max_length));
    }
    let threshold = trace_from_length(max_length);
    if !threshold.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "length bound {max_length} overflows the trace range"
        )));
    }
    // pruning compares traces; nudge so rounding never drops a curve that
    // passes the length test
    let threshold = threshold * (1.0 + 1e-12);
    let mut collected = traverse::<Collect>(chart, threshold, depth_cap(max_length), exec)?.out;
    collected.retain(|r| r.length <= max_length);
    collected.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then(a.slope.p().cmp(&b.slope.p()))
            .then(a.slope.q().cmp(&b.slope.q()))
    });
    Ok(collected)
}

/// Number of simple closed geodesics of length at most `max_length`.
pub fn count_simple(chart: &MarkovChart, max_length: f64) -> Result<u64> {
    count_simple_with(chart, max_length, Execution::default())
}

pub fn count_simple_with(chart: &MarkovChart, max_length: f64, exec: Execution) -> Result<u64> {
    Ok(enumerate_simple_with(chart, max_length, exec)?.len() as u64)
}

/// Number of multicurves `n * s` (n >= 1, s simple) of length at most `max_length`.
pub fn count_multicurves(chart: &MarkovChart, max_length: f64) -> Result<u64> {
    count_multicurves_with(chart, max_length, Execution::default())
}

pub fn count_multicurves_with(
    chart: &MarkovChart,
    max_length: f64,
    exec: Execution,
) -> Result<u64> {
    let curves = enumerate_simple_with(chart, max_length, exec)?;
    Ok(multiples_within(&curves, max_length))
}

/// `sum_s floor(L / length(s))` over an enumeration.
pub fn multiples_within(curves: &[SimpleCurveRecord], max_length: f64) -> u64 {
    curves
        .iter()
        .filter(|r| r.length <= max_length)
        .map(|r| (max_length / r.length).floor() as u64)
        .sum()
}

#[derive(Default)]
struct Area {
    sum: f64,
}

impl Visitor for Area {
    fn leaf(&mut self, e: &Edge) {
        let det = (e.a.v[0] * e.b.v[1] - e.a.v[1] * e.b.v[0]).abs() as f64;
        self.sum += det / (length_from_trace(e.a.t) * length_from_trace(e.b.t));
    }
    fn merge(&mut self, other: Self) {
        self.sum += other.sum;
    }
}

/// Area of the polygon inscribed in the unit ball of the length norm on
/// `R^2`, with a vertex on every slope of length at most `resolution`.
///
/// Each pruned edge `(a, b)` is a pair of consecutive polygon vertices
/// `a / l(a)`, `b / l(b)`, contributing a triangle of area `1 / (2 l(a) l(b))`;
/// the edges cover a half turn, and the ball is symmetric.
pub fn unit_ball_area(chart: &MarkovChart, resolution: f64) -> Result<f64> {
    unit_ball_area_with(chart, resolution, Execution::default())
}

pub fn unit_ball_area_with(chart: &MarkovChart, resolution: f64, exec: Execution) -> Result<f64> {
    if !(resolution > 0.0) {
        return Err(Error::NonPositiveLength(resolution));
    }
    let threshold = trace_from_length(resolution);
    let area: Area = traverse(chart, threshold, depth_cap(resolution), exec)?;
    Ok(area.sum)
}
