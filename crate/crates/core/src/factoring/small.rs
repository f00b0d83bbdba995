//! Probes of the pair of orderings whose subshifts share only the orbits
//! of `a^∞ b a^∞`, `b^∞ a b^∞` and the two fixed points.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use crate::coding::{basic_block, contains_window, language_words};
use crate::error::{Error, Result};
use crate::ordering::OrderingTable;
use crate::pascal::binomial_u128;
use crate::word::{power_notation, Word};

/// The two orderings: they agree on levels 2 and 3, differ at level 4,
/// and are constant 0 (first) and 1 (second) from level 5 on.
pub fn small_subshift_orderings() -> (OrderingTable, OrderingTable) {
    let xi = OrderingTable::with_default(
        &[(1, 1, 0), (2, 1, 1), (1, 2, 1), (2, 2, 1), (3, 1, 0), (1, 3, 0)],
        None,
        0,
    )
    .expect("valid bits");
    let xi_prime = OrderingTable::with_default(
        &[(1, 1, 0), (2, 1, 1), (1, 2, 1), (2, 2, 0), (3, 1, 1), (1, 3, 1)],
        None,
        1,
    )
    .expect("valid bits");
    (xi, xi_prime)
}

/// Which isolated run is looked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RunPattern {
    /// `b a^l b`
    #[serde(rename = "bab")]
    Bab,
    /// `a b^l a`
    #[serde(rename = "aba")]
    Aba,
}

impl RunPattern {
    pub fn letter(self) -> u8 {
        match self {
            RunPattern::Bab => b'a',
            RunPattern::Aba => b'b',
        }
    }
}

/// Runs on either side of an occurrence kept as its context.
pub const CONTEXT_RADIUS: usize = 5;

/// Letters around one occurrence: `left`, the run itself, `right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Context {
    pub left: Word,
    pub run: Word,
    pub right: Word,
}

impl Context {
    /// `left[run]right` spelled out letter by letter.
    pub fn marked(&self) -> String {
        format!("{}[{}]{}", self.left, self.run, self.right)
    }
}

impl Serialize for Context {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&format_args!(
            "{}[{}]{}",
            power_notation(self.left.as_bytes()),
            power_notation(self.run.as_bytes()),
            power_notation(self.right.as_bytes())
        ))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContextReport {
    pub l: usize,
    pub pattern: RunPattern,
    #[serde(serialize_with = "as_pairs")]
    pub contexts: BTreeMap<Context, usize>,
    /// Occurrences whose context reaches the first or last run of their
    /// block, which may continue outside it.
    #[serde(serialize_with = "as_pairs")]
    pub clipped: BTreeMap<Context, usize>,
}

fn as_pairs<S: Serializer>(m: &BTreeMap<Context, usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter())
}

fn runs(w: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        out.push((i, j));
        i = j;
    }
    out
}

/// Every isolated run of exactly `l` copies of the pattern letter in the
/// blocks up to `max_level`, with up to [`CONTEXT_RADIUS`] runs on each
/// side.
pub fn run_context_report(xi: &OrderingTable, l: usize, max_level: usize, pattern: RunPattern) -> Result<ContextReport> {
    if l <= 6 {
        return Err(Error::InvalidArgument(format!("run length {l} must exceed 6")));
    }
    xi.check_level(max_level)?;
    let mut report = ContextReport { l, pattern, contexts: BTreeMap::new(), clipped: BTreeMap::new() };
    let letter = pattern.letter();
    for level in 2..=max_level {
        for y in 1..level {
            let block = basic_block(xi, level - y, y)?;
            let w = block.as_bytes();
            let rs = runs(w);
            for (i, &(s, e)) in rs.iter().enumerate() {
                if w[s] != letter || e - s != l || i == 0 || i + 1 == rs.len() {
                    continue;
                }
                let lo = i.saturating_sub(CONTEXT_RADIUS);
                let hi = (i + CONTEXT_RADIUS).min(rs.len() - 1);
                let ctx = Context {
                    left: Word::from_bytes_unchecked(w[rs[lo].0..s].to_vec()),
                    run: Word::from_bytes_unchecked(w[s..e].to_vec()),
                    right: Word::from_bytes_unchecked(w[e..rs[hi].1].to_vec()),
                };
                let clipped = lo == 0 || hi == rs.len() - 1;
                let map = if clipped { &mut report.clipped } else { &mut report.contexts };
                *map.entry(ctx).or_default() += 1;
            }
        }
    }
    Ok(report)
}

/// `n`-windows seen under both orderings up to `max_level`.
pub fn intersection_probe(xi: &OrderingTable, xi2: &OrderingTable, n: usize, max_level: usize) -> Result<BTreeSet<Word>> {
    let a = language_words(xi, n, max_level)?;
    let b = language_words(xi2, n, max_level)?;
    Ok(a.intersection(&b).cloned().collect())
}

/// Result for one candidate period word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicEvidence {
    pub period_word: Word,
    /// A shortest window of the periodic sequence missing from the
    /// language, if one no longer than `search_limit` exists.
    pub absent_window: Option<Word>,
    /// `3M`, with `M` the largest block length on level `4(p+1)`.
    pub bound: u128,
    /// Longest window tried: the smaller of `bound` and the longest block
    /// up to the level searched.
    pub search_limit: usize,
}

impl PeriodicEvidence {
    pub fn found(&self) -> bool {
        self.absent_window.is_some()
    }
}

fn least_rotation(w: &[u8]) -> Vec<u8> {
    (0..w.len()).map(|i| [&w[i..], &w[..i]].concat()).min().unwrap_or_default()
}

fn periodic_window(w: &[u8], start: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| w[(start + i) % w.len()]).collect()
}

/// For each period-`p` word using both letters (one per rotation class),
/// the shortest window of its periodic sequence absent from every block up
/// to `max_level`.
pub fn periodic_exclusion(xi: &OrderingTable, p: usize, max_level: usize) -> Result<Vec<PeriodicEvidence>> {
    if p < 2 {
        return Err(Error::InvalidArgument("period words of length 1 are the fixed points".into()));
    }
    if p > 16 {
        return Err(Error::SizeCap(format!("period {p}")));
    }
    let classes: BTreeSet<Vec<u8>> = (1..(1u32 << p) - 1)
        .map(|mask| (0..p).map(|i| if mask >> i & 1 == 1 { b'b' } else { b'a' }).collect::<Vec<u8>>())
        .map(|w| least_rotation(&w))
        .collect();
    let r = p + 1;
    let bound = binomial_u128(4 * r, 2 * r).map_or(u128::MAX, |m| m.saturating_mul(3));
    let longest = (1..=max_level).map(|l| binomial_u128(l, l / 2).unwrap_or(u128::MAX)).max().unwrap_or(0);
    let limit = bound.min(longest).min(usize::MAX as u128) as usize;
    let mut out = Vec::new();
    for w in classes {
        let absent_at = |n: usize| -> Result<Option<Vec<u8>>> {
            for s in 0..p {
                let u = periodic_window(&w, s, n);
                if !contains_window(xi, &u, max_level)? {
                    return Ok(Some(u));
                }
            }
            Ok(None)
        };
        let mut hi = p.min(limit.max(1));
        let mut found = absent_at(hi)?;
        let mut lo = 0;
        while found.is_none() && hi < limit {
            lo = hi;
            hi = (hi * 2).min(limit);
            found = absent_at(hi)?;
        }
        if found.is_some() {
            // smallest absent length lies in (lo, hi]
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                match absent_at(mid)? {
                    Some(u) => {
                        hi = mid;
                        found = Some(u);
                    }
                    None => lo = mid,
                }
            }
        }
        out.push(PeriodicEvidence {
            period_word: Word::from_bytes_unchecked(w),
            absent_window: found.map(Word::from_bytes_unchecked),
            bound,
            search_limit: limit,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_blocks() {
        let (xi, xi2) = small_subshift_orderings();
        assert_eq!(basic_block(&xi, 3, 3).unwrap(), Word::from("a(ab)^9b"));
        assert_eq!(basic_block(&xi2, 3, 3).unwrap(), Word::from("b(ba)^9a"));
    }

    #[test]
    fn rotations() {
        assert_eq!(least_rotation(b"baab"), b"aabb".to_vec());
        assert_eq!(periodic_window(b"ab", 1, 5), b"babab".to_vec());
    }

    #[test]
    fn intersection_is_symmetric() {
        let (xi, xi2) = small_subshift_orderings();
        assert_eq!(intersection_probe(&xi, &xi2, 1, 4).unwrap().len(), 2);
        assert_eq!(
            intersection_probe(&xi, &xi2, 9, 12).unwrap(),
            intersection_probe(&xi2, &xi, 9, 12).unwrap()
        );
    }

    #[test]
    fn fixed_points_rejected() {
        assert!(periodic_exclusion(&OrderingTable::seeded(1), 1, 10).is_err());
    }
}
