//! Pascal graph geometry: vertices, path prefixes, extremal paths,
//! rank/unrank within a column, binomials and cylinder measures.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::OrderingTable;

/// A vertex `(x,y)` of the Pascal graph; its level is `x + y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub x: usize,
    pub y: usize,
}

impl Vertex {
    pub const ROOT: Vertex = Vertex { x: 0, y: 0 };

    pub const fn new(x: usize, y: usize) -> Self {
        Vertex { x, y }
    }

    pub const fn level(self) -> usize {
        self.x + self.y
    }

    pub const fn is_interior(self) -> bool {
        self.x >= 1 && self.y >= 1
    }

    /// All vertices on `level`, ordered by increasing `y`.
    pub fn on_level(level: usize) -> impl Iterator<Item = Vertex> {
        (0..=level).map(move |y| Vertex::new(level - y, y))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One edge of a path: `A` increments `x`, `B` increments `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    A,
    B,
}

impl Step {
    pub fn letter(self) -> u8 {
        match self {
            Step::A => b'a',
            Step::B => b'b',
        }
    }
}

/// Minimal or maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremity {
    Min,
    Max,
}

/// A finite path from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathPrefix {
    steps: Vec<Step>,
}

impl PathPrefix {
    pub fn new(steps: Vec<Step>) -> Self {
        PathPrefix { steps }
    }

    pub fn empty() -> Self {
        PathPrefix { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn level(&self) -> usize {
        self.steps.len()
    }

    pub fn terminal(&self) -> Vertex {
        self.vertex_at(self.steps.len())
    }

    /// Vertex reached after the first `k` edges.
    pub fn vertex_at(&self, k: usize) -> Vertex {
        let a = self.steps[..k].iter().filter(|&&s| s == Step::A).count();
        Vertex::new(a, k - a)
    }

    /// First `k` edges.
    pub fn truncate(&self, k: usize) -> PathPrefix {
        PathPrefix { steps: self.steps[..k].to_vec() }
    }

    pub fn push(&mut self, s: Step) {
        self.steps.push(s);
    }

    /// Every path from the root to `v`, in lexicographic step order.
    pub fn all_to(v: Vertex) -> Vec<PathPrefix> {
        fn go(x: usize, y: usize, cur: &mut Vec<Step>, out: &mut Vec<PathPrefix>) {
            if x == 0 && y == 0 {
                out.push(PathPrefix { steps: cur.iter().rev().copied().collect() });
                return;
            }
            if x > 0 {
                cur.push(Step::A);
                go(x - 1, y, cur, out);
                cur.pop();
            }
            if y > 0 {
                cur.push(Step::B);
                go(x, y - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(v.x, v.y, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for PathPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::A { "A" } else { "B" })?;
        }
        Ok(())
    }
}

impl FromStr for PathPrefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'A' | 'a' => Ok(Step::A),
                'B' | 'b' => Ok(Step::B),
                _ => Err(Error::ParseError { pos: i, msg: format!("unexpected {c:?}") }),
            })
            .collect::<Result<Vec<_>>>()
            .map(PathPrefix::new)
    }
}

impl Serialize for PathPrefix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Largest `n` for which the `u128` binomial table is exact.
pub const SMALL_BINOMIAL_MAX: usize = 127;

fn small_table() -> &'static Vec<Vec<u128>> {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(SMALL_BINOMIAL_MAX + 1);
        for n in 0..=SMALL_BINOMIAL_MAX {
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

/// `C(n,k)` when `n <= 127`, where it fits in `u128`.
pub fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if n > SMALL_BINOMIAL_MAX {
        return None;
    }
    Some(if k > n { 0 } else { small_table()[n][k] })
}

/// `C(n,k)` with arbitrary precision; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if let Some(v) = binomial_u128(n, k) {
        return BigUint::from(v);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of paths from the root to `v`.
pub fn column_height(v: Vertex) -> BigUint {
    binomial(v.level(), v.x)
}

pub(crate) fn height_u128(v: Vertex) -> u128 {
    binomial_u128(v.level(), v.x).expect("level too large for the fast path")
}

/// The source of the smaller incoming edge of an interior vertex.
pub fn smaller_parent(xi: &OrderingTable, v: Vertex) -> Vertex {
    debug_assert!(v.is_interior());
    if xi.xi(v.x, v.y) == 1 {
        Vertex::new(v.x - 1, v.y)
    } else {
        Vertex::new(v.x, v.y - 1)
    }
}

/// Source of the minimal (maximal) incoming edge of `v`; `None` at the root.
pub fn extremal_parent(xi: &OrderingTable, v: Vertex, which: Extremity) -> Option<Vertex> {
    match (v.x, v.y) {
        (0, 0) => None,
        (x, 0) => Some(Vertex::new(x - 1, 0)),
        (0, y) => Some(Vertex::new(0, y - 1)),
        _ => {
            let s = smaller_parent(xi, v);
            Some(match which {
                Extremity::Min => s,
                Extremity::Max => other_parent(v, s),
            })
        }
    }
}

/// The parent of interior `v` that is not `p`.
pub fn other_parent(v: Vertex, p: Vertex) -> Vertex {
    if p.x + 1 == v.x {
        Vertex::new(v.x, v.y - 1)
    } else {
        Vertex::new(v.x - 1, v.y)
    }
}

/// Step leading from `from` to its child `to`.
pub(crate) fn step_between(from: Vertex, to: Vertex) -> Step {
    if to.x == from.x + 1 {
        Step::A
    } else {
        Step::B
    }
}

/// True when the edge entering `v` by `step` is minimal at `v`.
pub fn edge_is_min(xi: &OrderingTable, v: Vertex, step: Step) -> bool {
    if !v.is_interior() {
        return true;
    }
    (xi.xi(v.x, v.y) == 1) == (step == Step::A)
}

/// True when the edge entering `v` by `step` is maximal at `v`.
pub fn edge_is_max(xi: &OrderingTable, v: Vertex, step: Step) -> bool {
    !v.is_interior() || !edge_is_min(xi, v, step)
}

pub(crate) fn extreme_steps(xi: &OrderingTable, v: Vertex, which: Extremity) -> Vec<Step> {
    let mut steps = Vec::with_capacity(v.level());
    let mut cur = v;
    while let Some(p) = extremal_parent(xi, cur, which) {
        steps.push(step_between(p, cur));
        cur = p;
    }
    steps.reverse();
    steps
}

/// The unique path to `v` whose edges are all minimal (maximal).
pub fn extreme_path(xi: &OrderingTable, v: Vertex, which: Extremity) -> Result<PathPrefix> {
    xi.check_level(v.level())?;
    Ok(PathPrefix::new(extreme_steps(xi, v, which)))
}

/// `rank` for levels up to [`SMALL_BINOMIAL_MAX`], without level checks.
pub(crate) fn rank_small(xi: &OrderingTable, steps: &[Step]) -> u128 {
    let (mut x, mut y) = (0usize, 0usize);
    let mut r = 0u128;
    for &s in steps {
        match s {
            Step::A => x += 1,
            Step::B => y += 1,
        }
        if x >= 1 && y >= 1 && !edge_is_min(xi, Vertex::new(x, y), s) {
            let sp = smaller_parent(xi, Vertex::new(x, y));
            r += height_u128(sp);
        }
    }
    r
}

/// Inverse of [`rank_small`].
pub(crate) fn unrank_small(xi: &OrderingTable, v: Vertex, mut r: u128) -> Vec<Step> {
    let mut steps = Vec::with_capacity(v.level());
    let mut cur = v;
    while cur.level() > 0 {
        let parent = if cur.is_interior() {
            let sp = smaller_parent(xi, cur);
            let h = height_u128(sp);
            if r < h {
                sp
            } else {
                r -= h;
                other_parent(cur, sp)
            }
        } else if cur.y == 0 {
            Vertex::new(cur.x - 1, 0)
        } else {
            Vertex::new(0, cur.y - 1)
        };
        steps.push(step_between(parent, cur));
        cur = parent;
    }
    steps.reverse();
    steps
}

/// Number of paths to the terminal vertex of `p` that are smaller than `p`.
pub fn rank(xi: &OrderingTable, p: &PathPrefix) -> Result<BigUint> {
    xi.check_level(p.level())?;
    if p.level() <= SMALL_BINOMIAL_MAX {
        return Ok(BigUint::from(rank_small(xi, p.steps())));
    }
    let mut r = BigUint::zero();
    for k in 1..=p.level() {
        let v = p.vertex_at(k);
        if v.is_interior() && !edge_is_min(xi, v, p.steps()[k - 1]) {
            r += column_height(smaller_parent(xi, v));
        }
    }
    Ok(r)
}

/// The path to `v` of rank `r`.
pub fn unrank(xi: &OrderingTable, v: Vertex, r: &BigUint) -> Result<PathPrefix> {
    xi.check_level(v.level())?;
    let height = column_height(v);
    if *r >= height {
        return Err(Error::RankOutOfRange { rank: r.to_string(), height: height.to_string() });
    }
    if v.level() <= SMALL_BINOMIAL_MAX {
        let small = r.to_u128().expect("rank below height fits");
        return Ok(PathPrefix::new(unrank_small(xi, v, small)));
    }
    let mut r = r.clone();
    let mut steps = Vec::with_capacity(v.level());
    let mut cur = v;
    while cur.level() > 0 {
        let parent = if cur.is_interior() {
            let sp = smaller_parent(xi, cur);
            let h = column_height(sp);
            if r < h {
                sp
            } else {
                r -= h;
                other_parent(cur, sp)
            }
        } else if cur.y == 0 {
            Vertex::new(cur.x - 1, 0)
        } else {
            Vertex::new(0, cur.y - 1)
        };
        steps.push(step_between(parent, cur));
        cur = parent;
    }
    steps.reverse();
    Ok(PathPrefix::new(steps))
}

/// Compares two paths to the same vertex in the ordering: the last edge
/// where they differ decides.
pub fn compare_paths(xi: &OrderingTable, p: &PathPrefix, q: &PathPrefix) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    assert_eq!(p.terminal(), q.terminal(), "paths must end at the same vertex");
    for k in (1..=p.level()).rev() {
        let (sp, sq) = (p.steps()[k - 1], q.steps()[k - 1]);
        if sp != sq {
            let v = p.vertex_at(k);
            return if edge_is_min(xi, v, sp) { Ordering::Less } else { Ordering::Greater };
        }
    }
    Ordering::Equal
}

/// Product of `alpha` over B-steps and `1 - alpha` over A-steps.
pub fn cylinder_measure(alpha: &BigRational, p: &PathPrefix) -> Result<BigRational> {
    if *alpha <= BigRational::zero() || *alpha >= BigRational::one() {
        return Err(Error::AlphaOutOfRange);
    }
    let beta = BigRational::one() - alpha;
    let b = p.steps().iter().filter(|&&s| s == Step::B).count();
    let a = p.level() - b;
    Ok(num_traits::pow(alpha.clone(), b) * num_traits::pow(beta, a))
}

/// Floating-point [`cylinder_measure`]; approximate.
pub fn cylinder_measure_f64(alpha: f64, p: &PathPrefix) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange);
    }
    let b = p.steps().iter().filter(|&&s| s == Step::B).count() as i32;
    let a = p.level() as i32 - b;
    Ok(alpha.powi(b) * (1.0 - alpha).powi(a))
}

/// Extra levels examined past `level` when an ordering has no known
/// constant tail.
pub const DEFAULT_HORIZON_MARGIN: usize = 32;

/// Number of distinct level-`level` prefixes of infinite paths whose edges
/// are all minimal (maximal).
///
/// When the ordering is constant beyond some level, every extremal path to
/// a vertex past that level extends forever, so the count is exact. For
/// other orderings the count is taken against a horizon
/// [`DEFAULT_HORIZON_MARGIN`] levels deeper and is an upper bound.
pub fn count_extremal_prefixes(xi: &OrderingTable, level: usize, which: Extremity) -> Result<BigUint> {
    let horizon = match xi.constant_tail() {
        Some((from, _)) => level.max(from),
        None => level + DEFAULT_HORIZON_MARGIN,
    };
    count_extremal_prefixes_to(xi, level, which, horizon)
}

/// [`count_extremal_prefixes`] against an explicit horizon: counts level-`level`
/// prefixes of extremal paths to vertices on level `horizon`.
pub fn count_extremal_prefixes_to(
    xi: &OrderingTable,
    level: usize,
    which: Extremity,
    horizon: usize,
) -> Result<BigUint> {
    if horizon < level {
        return Err(Error::InvalidArgument("horizon below level".into()));
    }
    xi.check_level(horizon)?;
    // anc[y] = the level-`level` ancestor (by its y) of vertex (m-y, y)
    let mut anc: Vec<usize> = (0..=level).collect();
    for m in level + 1..=horizon {
        let next: Vec<usize> = (0..=m)
            .map(|y| {
                let v = Vertex::new(m - y, y);
                let p = extremal_parent(xi, v, which).expect("not the root");
                anc[p.y]
            })
            .collect();
        anc = next;
    }
    anc.sort_unstable();
    anc.dedup();
    Ok(BigUint::from(anc.len()))
}
