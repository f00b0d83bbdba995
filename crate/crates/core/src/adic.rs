//! The Vershik map on path prefixes, orbit codings, return times at kinks,
//! and the binomial residues behind the weak-mixing argument.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::coding::CylSymbol;
use crate::error::{Error, Result};
use crate::ordering::{splitmix, OrderingTable};
use crate::pascal::{
    binomial, edge_is_max, edge_is_min, extreme_steps, height_u128, other_parent, rank_small,
    smaller_parent, step_between, unrank_small, Extremity, PathPrefix, Step, Vertex,
    SMALL_BINOMIAL_MAX,
};

/// Replaces the lowest non-maximal edge by its successor edge and refills
/// below it with the minimal path.
pub(crate) fn successor_in_place(xi: &OrderingTable, steps: &mut [Step]) -> Result<()> {
    let (mut x, mut y) = (0usize, 0usize);
    for k in 0..steps.len() {
        match steps[k] {
            Step::A => x += 1,
            Step::B => y += 1,
        }
        let v = Vertex::new(x, y);
        if v.is_interior() && edge_is_min(xi, v, steps[k]) {
            let sp = smaller_parent(xi, v);
            let next = other_parent(v, sp);
            let refill = extreme_steps(xi, next, Extremity::Min);
            steps[..k].copy_from_slice(&refill);
            steps[k] = step_between(next, v);
            return Ok(());
        }
    }
    Err(Error::MaximalPrefix)
}

pub(crate) fn predecessor_in_place(xi: &OrderingTable, steps: &mut [Step]) -> Result<()> {
    let (mut x, mut y) = (0usize, 0usize);
    for k in 0..steps.len() {
        match steps[k] {
            Step::A => x += 1,
            Step::B => y += 1,
        }
        let v = Vertex::new(x, y);
        if v.is_interior() && !edge_is_min(xi, v, steps[k]) {
            let prev = smaller_parent(xi, v);
            let refill = extreme_steps(xi, prev, Extremity::Max);
            steps[..k].copy_from_slice(&refill);
            steps[k] = step_between(prev, v);
            return Ok(());
        }
    }
    Err(Error::MinimalPrefix)
}

/// The next path to the same vertex.
pub fn successor(xi: &OrderingTable, p: &PathPrefix) -> Result<PathPrefix> {
    xi.check_level(p.level())?;
    let mut steps = p.steps().to_vec();
    successor_in_place(xi, &mut steps)?;
    Ok(PathPrefix::new(steps))
}

/// The previous path to the same vertex.
pub fn predecessor(xi: &OrderingTable, p: &PathPrefix) -> Result<PathPrefix> {
    xi.check_level(p.level())?;
    let mut steps = p.steps().to_vec();
    predecessor_in_place(xi, &mut steps)?;
    Ok(PathPrefix::new(steps))
}

/// Largest `k` accepted for k-symbols (their indices must fit in `u64`).
pub const MAX_SYMBOL_K: usize = 64;

/// The cylinder named by the first `k` edges of `steps`.
pub(crate) fn cylinder_of(xi: &OrderingTable, steps: &[Step], k: usize) -> CylSymbol {
    let head = &steps[..k];
    let m = head.iter().filter(|&&s| s == Step::B).count();
    let s = rank_small(xi, head) as u64 + 1;
    CylSymbol { k: k as u32, m: m as u32, s }
}

/// `T^t p` for a signed `t`, staying inside the column of `p`.
pub fn iterate(xi: &OrderingTable, p: &PathPrefix, t: i64) -> Result<PathPrefix> {
    xi.check_level(p.level())?;
    let level = p.level();
    if level > SMALL_BINOMIAL_MAX {
        return Err(Error::SizeCap(format!("iteration at level {level}")));
    }
    let v = p.terminal();
    let r = rank_small(xi, p.steps()) as i128 + t as i128;
    if r < 0 || r >= height_u128(v) as i128 {
        return Err(if t >= 0 { Error::MaximalPrefix } else { Error::MinimalPrefix });
    }
    Ok(PathPrefix::new(unrank_small(xi, v, r as u128)))
}

/// k-coding of the orbit of `p` over times `t0..=t1`.
pub fn orbit_coding(
    xi: &OrderingTable,
    p: &PathPrefix,
    k: usize,
    t0: i64,
    t1: i64,
) -> Result<Vec<CylSymbol>> {
    let level = p.level();
    if k > level {
        return Err(Error::LevelBelowK { level, k });
    }
    if k > MAX_SYMBOL_K || level > SMALL_BINOMIAL_MAX {
        return Err(Error::SizeCap(format!("k = {k} at level {level}")));
    }
    if t0 > t1 {
        return Err(Error::InvalidArgument("empty window".into()));
    }
    xi.check_level(level)?;
    let v = p.terminal();
    let r = rank_small(xi, p.steps()) as i128;
    if r + (t0 as i128) < 0 || r + (t1 as i128) >= height_u128(v) as i128 {
        return Err(Error::WindowEscapesColumn { level });
    }
    let mut steps = unrank_small(xi, v, (r + t0 as i128) as u128);
    let mut out = Vec::with_capacity((t1 - t0 + 1) as usize);
    for t in t0..=t1 {
        out.push(cylinder_of(xi, &steps, k));
        if t < t1 {
            successor_in_place(xi, &mut steps)?;
        }
    }
    Ok(out)
}

/// Appends `extra` edges, each minimal at its range when possible. Among
/// minimal out-edges the one heading toward the diagonal is preferred; if
/// neither out-edge is minimal the diagonal-ward edge is taken.
pub fn extend_minimal(xi: &OrderingTable, p: &PathPrefix, extra: usize) -> PathPrefix {
    let mut steps = p.steps().to_vec();
    let mut v = p.terminal();
    for _ in 0..extra {
        let a_min = edge_is_min(xi, Vertex::new(v.x + 1, v.y), Step::A);
        let b_min = edge_is_min(xi, Vertex::new(v.x, v.y + 1), Step::B);
        let toward = if v.x > v.y { Step::B } else { Step::A };
        let s = match (a_min, b_min) {
            (true, true) | (false, false) => toward,
            (true, false) => Step::A,
            (false, true) => Step::B,
        };
        steps.push(s);
        match s {
            Step::A => v.x += 1,
            Step::B => v.y += 1,
        }
    }
    PathPrefix::new(steps)
}

/// Status of an edge at its range vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeStatus {
    Max,
    Min,
}

/// Where the continuing edge goes: `LR` to `(i+1,j)`, `RL` to `(i,j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    LR,
    RL,
}

/// One of the eight kink configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KinkCase {
    /// Status of the edge leaving `(i,j)` along the path.
    pub a1: EdgeStatus,
    /// Status of the other edge leaving `(i,j)`.
    pub a2: EdgeStatus,
    pub a3: Direction,
}

impl KinkCase {
    pub fn all() -> [KinkCase; 8] {
        use Direction::*;
        use EdgeStatus::*;
        let mut out = [KinkCase { a1: Max, a2: Max, a3: LR }; 8];
        let mut i = 0;
        for a1 in [Max, Min] {
            for a2 in [Max, Min] {
                for a3 in [LR, RL] {
                    out[i] = KinkCase { a1, a2, a3 };
                    i += 1;
                }
            }
        }
        out
    }
}

impl fmt::Display for KinkCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |e: EdgeStatus| if e == EdgeStatus::Max { "max" } else { "min" };
        let d = if self.a3 == Direction::LR { "LR" } else { "RL" };
        write!(f, "({},{},{})", s(self.a1), s(self.a2), d)
    }
}

/// The kink vertex `(i,j)` of `p`: the vertex two edges before its end.
pub fn kink_vertex(p: &PathPrefix) -> Result<Vertex> {
    if p.level() < 4 {
        return Err(Error::KinkPreconditionFailed("path too short".into()));
    }
    let v = p.vertex_at(p.level() - 2);
    if !v.is_interior() {
        return Err(Error::KinkPreconditionFailed(format!("{v} is not interior")));
    }
    if p.terminal() != Vertex::new(v.x + 1, v.y + 1) {
        return Err(Error::KinkPreconditionFailed(format!(
            "path does not turn from {v} to ({},{})",
            v.x + 1,
            v.y + 1
        )));
    }
    Ok(v)
}

/// Classifies the kink formed by the last two edges of `p`. The final edge
/// must be minimal.
pub fn kink_classify(xi: &OrderingTable, p: &PathPrefix) -> Result<KinkCase> {
    let v = kink_vertex(p)?;
    xi.check_level(p.level())?;
    let n = p.level() - 2;
    let first = p.steps()[n];
    let last = p.steps()[n + 1];
    if !edge_is_min(xi, p.terminal(), last) {
        return Err(Error::KinkPreconditionFailed("edge into the kink top is not minimal".into()));
    }
    let status = |to: Vertex, s: Step| {
        if edge_is_max(xi, to, s) {
            EdgeStatus::Max
        } else {
            EdgeStatus::Min
        }
    };
    let right = Vertex::new(v.x + 1, v.y);
    let up = Vertex::new(v.x, v.y + 1);
    let (a1, a2, a3) = match first {
        Step::A => (status(right, Step::A), status(up, Step::B), Direction::LR),
        Step::B => (status(up, Step::B), status(right, Step::A), Direction::RL),
    };
    Ok(KinkCase { a1, a2, a3 })
}

/// Return time `r_n` for a kink at `(i,j)` with `n = i + j`.
pub fn kink_return_time(c: KinkCase, n: usize, j: usize) -> BigUint {
    use Direction::*;
    use EdgeStatus::*;
    match (c.a1, c.a2, c.a3) {
        (Max, Min, _) => binomial(n, j),
        (Min, Min, RL) | (Max, Max, LR) => binomial(n + 1, j + 1),
        (Min, Min, LR) | (Max, Max, RL) => binomial(n + 1, j),
        (Min, Max, _) => binomial(n + 1, j) + binomial(n, j + 1),
    }
}

/// Default level cap for deepening.
pub const DEFAULT_DEPTH_CAP: usize = 64;

/// `T^t p`, deepening `p` by minimal continuation (doubling its level) while
/// the iterate leaves the column, up to level `cap`.
pub fn iterate_deepening(xi: &OrderingTable, p: &PathPrefix, t: u64, cap: usize) -> Result<PathPrefix> {
    let mut q = p.clone();
    loop {
        match iterate(xi, &q, t as i64) {
            Ok(r) => return Ok(r),
            Err(Error::MaximalPrefix) => {
                let level = q.level();
                if level >= cap.min(SMALL_BINOMIAL_MAX) {
                    return Err(Error::WindowEscapesColumn { level });
                }
                let target = (level * 2).max(1).min(cap.min(SMALL_BINOMIAL_MAX));
                xi.check_level(target)?;
                q = extend_minimal(xi, &q, target - level);
            }
            Err(e) => return Err(e),
        }
    }
}

/// True iff `T^t p` shares its first `n` edges with `p`.
pub fn agrees_after(xi: &OrderingTable, p: &PathPrefix, n: usize, t: u64, cap: usize) -> Result<bool> {
    let q = iterate_deepening(xi, p, t, cap)?;
    Ok(q.steps()[..n] == p.steps()[..n])
}

/// Checks that the `r_n`-th successor of a kink path agrees with it on the
/// first `n` edges.
pub fn kink_verify(xi: &OrderingTable, p: &PathPrefix, depth_cap: usize) -> Result<bool> {
    let case = kink_classify(xi, p)?;
    let v = kink_vertex(p)?;
    let n = v.level();
    let r = kink_return_time(case, n, v.y);
    let r: u64 = r
        .try_into()
        .map_err(|_| Error::SizeCap("return time exceeds u64".into()))?;
    agrees_after(xi, p, n, r, depth_cap)
}

/// One sampled kink configuration and what iteration found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KinkTrial {
    /// Seed of the ordering the path lives in.
    pub ordering_seed: u64,
    pub path: PathPrefix,
    pub case: KinkCase,
    pub n: usize,
    pub j: usize,
    pub return_time: u64,
    /// First `n` edges agree after `r_n` steps.
    pub agrees: bool,
    /// First `n` edges differ after `r_n - 1` steps.
    pub differs_before: bool,
    /// First `n` edges differ after `r_n + 1` steps.
    pub differs_after: bool,
}

/// Per-case tallies over a batch of [`KinkTrial`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KinkTally {
    pub trials: usize,
    pub agreed: usize,
    pub differs_before: usize,
    pub differs_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KinkSummary {
    pub seed: u64,
    pub trials: usize,
    pub agreed: usize,
    /// Trials whose class never occurred under a fixed ordering.
    pub skipped: usize,
    /// Keyed by the case in `(a1,a2,a3)` notation.
    pub cases: std::collections::BTreeMap<String, KinkTally>,
}

impl KinkSummary {
    pub fn all_agree(&self) -> bool {
        self.agreed + self.skipped == self.trials
    }
}

const KINK_ATTEMPTS: u64 = 100_000;

/// Draws a path turning at an interior `(i,j)` with `2 <= i + j <= max_n`,
/// in a fresh seeded ordering unless `fixed` is given, until its kink has
/// class `case`. Returns the ordering's seed (or the attempt key) and the
/// path.
pub fn sample_kink(
    seed: u64,
    trial: u64,
    max_n: usize,
    case: KinkCase,
    fixed: Option<&OrderingTable>,
) -> Result<(u64, PathPrefix)> {
    use rand::{Rng, SeedableRng};
    if max_n < 2 {
        return Err(Error::InvalidArgument("kinks need n >= 2".into()));
    }
    for attempt in 0..KINK_ATTEMPTS {
        let key = splitmix(seed ^ splitmix(trial ^ splitmix(attempt)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(key);
        let n = rng.gen_range(2..=max_n);
        let j = rng.gen_range(1..n);
        let i = n - j;
        let mut steps: Vec<Step> = std::iter::repeat(Step::A).take(i).chain(std::iter::repeat(Step::B).take(j)).collect();
        rand::seq::SliceRandom::shuffle(steps.as_mut_slice(), &mut rng);
        let turn = if case.a3 == Direction::LR { [Step::A, Step::B] } else { [Step::B, Step::A] };
        steps.extend(turn);
        let p = PathPrefix::new(steps);
        let fresh;
        let xi = match fixed {
            Some(xi) => xi,
            None => {
                fresh = OrderingTable::seeded(key);
                &fresh
            }
        };
        if kink_classify(xi, &p).ok() == Some(case) {
            return Ok((key, p));
        }
    }
    Err(Error::NotFound)
}

/// Samples `trials` kinks, cycling through the eight classes, and checks
/// agreement at `r_n` and disagreement at `r_n - 1` and `r_n + 1`. With a
/// `fixed` ordering, classes it cannot produce are skipped.
pub fn kink_trials(
    seed: u64,
    trials: usize,
    max_n: usize,
    depth_cap: usize,
    fixed: Option<&OrderingTable>,
) -> Result<KinkSummary> {
    use rayon::prelude::*;
    let cases = KinkCase::all();
    let results: Vec<Option<KinkTrial>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let case = cases[t % 8];
            let (ordering_seed, path) = match sample_kink(seed, t as u64, max_n, case, fixed) {
                Ok(found) => found,
                Err(Error::NotFound) if fixed.is_some() => return Ok(None),
                Err(e) => return Err(e),
            };
            let owned;
            let xi = match fixed {
                Some(xi) => xi,
                None => {
                    owned = OrderingTable::seeded(ordering_seed);
                    &owned
                }
            };
            let v = kink_vertex(&path)?;
            let n = v.level();
            let r: u64 = kink_return_time(case, n, v.y)
                .try_into()
                .map_err(|_| Error::SizeCap("return time exceeds u64".into()))?;
            let agrees = agrees_after(xi, &path, n, r, depth_cap)?;
            let differs_before = !agrees_after(xi, &path, n, r - 1, depth_cap)?;
            let differs_after = !agrees_after(xi, &path, n, r + 1, depth_cap)?;
            Ok(Some(KinkTrial {
                ordering_seed,
                path,
                case,
                n,
                j: v.y,
                return_time: r,
                agrees,
                differs_before,
                differs_after,
            }))
        })
        .collect::<Result<_>>()?;
    let mut summary = KinkSummary { seed, trials, agreed: 0, skipped: 0, cases: Default::default() };
    for c in cases {
        summary.cases.insert(c.to_string(), KinkTally::default());
    }
    for r in &results {
        let Some(r) = r else {
            summary.skipped += 1;
            continue;
        };
        let tally = summary.cases.get_mut(&r.case.to_string()).expect("all cases listed");
        tally.trials += 1;
        tally.agreed += usize::from(r.agrees);
        tally.differs_before += usize::from(r.differs_before);
        tally.differs_after += usize::from(r.differs_after);
        summary.agreed += usize::from(r.agrees);
    }
    Ok(summary)
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// `C(n,k) mod q` by Lucas' theorem.
pub fn binom_mod(n: u64, k: u64, q: u64) -> Result<u64> {
    if q > u32::MAX as u64 || !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not a supported prime")));
    }
    if k > n {
        return Ok(0);
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % q, k % q);
        if ki > ni {
            return Ok(0);
        }
        let ki = ki.min(ni - ki);
        let (mut num, mut den) = (1u64, 1u64);
        for i in 0..ki {
            num = num * ((ni - i) % q) % q;
            den = den * ((i + 1) % q) % q;
        }
        acc = acc * num % q * pow_mod(den, q - 2, q) % q;
        n /= q;
        k /= q;
    }
    Ok(acc)
}

/// Largest `q^s` accepted by the row checks.
pub const ROW_BOUND: u64 = 20_000_000;

fn checked_power(q: u64, s: u32) -> Result<u64> {
    q.checked_pow(s)
        .filter(|&v| v <= ROW_BOUND)
        .ok_or_else(|| Error::BoundExceeded(format!("{q}^{s} exceeds {ROW_BOUND}")))
}

/// True iff `C(q^s-2, k) = (-1)^k (k+1) mod q` for every `k <= q^s-2` and
/// every entry of row `q^s-1` is nonzero mod `q`.
pub fn weakmixing_row_check(q: u64, s: u32) -> Result<bool> {
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    if s == 0 {
        return Err(Error::InvalidArgument("s must be positive".into()));
    }
    let qs = checked_power(q, s)?;
    if qs >= 2 {
        let n = qs - 2;
        for k in 0..=n {
            let expect = if k % 2 == 0 { (k + 1) % q } else { (q - (k + 1) % q) % q };
            if binom_mod(n, k, q)? != expect {
                return Ok(false);
            }
        }
    }
    let top = qs - 1;
    for k in 0..=top {
        if binom_mod(top, k, q)? == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An interior `j` on row `n = q^s - 2` with `q ∤ j+1`, `q | j+2`, and all
/// four return times nonzero mod `q`.
pub fn weakmixing_vertex_search(q: u64, s: u32) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let qs = checked_power(q, s)?;
    if qs < 4 {
        return Err(Error::InvalidArgument("q^s must be at least 4".into()));
    }
    let n = qs - 2;
    for j in 1..n {
        if (j + 1) % q == 0 || (j + 2) % q != 0 {
            continue;
        }
        let r1 = binom_mod(n, j, q)?;
        let r2 = binom_mod(n + 1, j + 1, q)?;
        let r3 = binom_mod(n + 1, j, q)?;
        let r4 = (r3 + binom_mod(n, j + 1, q)?) % q;
        if r1 != 0 && r2 != 0 && r3 != 0 && r4 != 0 {
            return Ok(j);
        }
    }
    Err(Error::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pascal::{extreme_path, rank};

    #[test]
    fn successor_two_element_column() {
        let xi = OrderingTable::constant(0);
        let p: PathPrefix = "AB".parse().unwrap();
        let q = successor(&xi, &p).unwrap();
        assert_eq!(q.to_string(), "BA");
        assert_eq!(predecessor(&xi, &q).unwrap(), p);
        assert_eq!(successor(&xi, &q), Err(Error::MaximalPrefix));
        assert_eq!(predecessor(&xi, &p), Err(Error::MinimalPrefix));
    }

    #[test]
    fn successor_walks_column() {
        let xi = OrderingTable::seeded(5);
        let v = Vertex::new(4, 3);
        let mut p = extreme_path(&xi, v, Extremity::Min).unwrap();
        let mut count = 1u32;
        while let Ok(q) = successor(&xi, &p) {
            assert_eq!(rank(&xi, &q).unwrap(), rank(&xi, &p).unwrap() + 1u32);
            p = q;
            count += 1;
        }
        assert_eq!(count, 35);
        assert_eq!(p, extreme_path(&xi, v, Extremity::Max).unwrap());
    }

    #[test]
    fn kink_batch() {
        let s = kink_trials(4, 80, 10, DEFAULT_DEPTH_CAP, None).unwrap();
        assert!(s.all_agree());
        assert!(s.cases.values().all(|t| t.trials == 10));
        let fixed = kink_trials(4, 16, 8, DEFAULT_DEPTH_CAP, Some(&OrderingTable::constant(0))).unwrap();
        assert!(fixed.all_agree());
    }

    #[test]
    fn return_time_table() {
        use Direction::*;
        use EdgeStatus::*;
        let c = |a1, a2, a3| KinkCase { a1, a2, a3 };
        assert_eq!(kink_return_time(c(Max, Min, LR), 6, 2), binomial(6, 2));
        assert_eq!(kink_return_time(c(Max, Min, RL), 6, 2), binomial(6, 2));
        assert_eq!(kink_return_time(c(Min, Min, RL), 6, 2), binomial(7, 3));
        assert_eq!(kink_return_time(c(Max, Max, LR), 6, 2), binomial(7, 3));
        assert_eq!(kink_return_time(c(Min, Min, LR), 6, 2), binomial(7, 2));
        assert_eq!(kink_return_time(c(Max, Max, RL), 6, 2), binomial(7, 2));
        assert_eq!(kink_return_time(c(Min, Max, RL), 6, 2), binomial(7, 2) + binomial(6, 3));
        assert_eq!(kink_return_time(c(Min, Max, LR), 6, 2), binomial(7, 2) + binomial(6, 3));
        assert_eq!(KinkCase::all().len(), 8);
    }

    #[test]
    fn binom_mod_examples() {
        assert_eq!(binom_mod(5, 2, 3).unwrap(), 1);
        assert_eq!(binom_mod(7, 1, 7).unwrap(), 0);
        assert!(binom_mod(5, 2, 4).is_err());
        for q in [2u64, 3, 5, 7, 11] {
            for n in 0..=200u64 {
                for k in 0..=n {
                    let big = binomial(n as usize, k as usize) % BigUint::from(q);
                    assert_eq!(BigUint::from(binom_mod(n, k, q).unwrap()), big);
                }
            }
        }
    }

    #[test]
    fn row_checks() {
        assert!(weakmixing_row_check(3, 2).unwrap());
        assert!(weakmixing_row_check(2, 1).unwrap());
        assert!(weakmixing_row_check(5, 3).unwrap());
        assert!(matches!(weakmixing_row_check(10007, 3), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn vertex_search() {
        let j = weakmixing_vertex_search(3, 2).unwrap();
        assert_eq!((j + 1) % 3 != 0, true);
        assert_eq!((j + 2) % 3, 0);
        assert!(weakmixing_vertex_search(2, 1).is_err());
    }
}
