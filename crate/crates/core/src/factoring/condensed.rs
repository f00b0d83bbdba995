//! Condensed forms (longest alternating prefix and suffix) and the search
//! showing no block holds both `(ab)^j` and `(ba)^j`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::coding::block_parents;
use crate::error::{Error, Result};
use crate::pascal::Vertex;
use crate::word::Word;

/// A word reduced to its longest alternating prefix and suffix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum CondensedForm {
    /// The whole word alternates.
    Full(Word),
    /// `prefix * suffix`: something non-alternating sits between them.
    Split(Word, Word),
}

fn alternating_prefix_len(w: &[u8]) -> usize {
    if w.is_empty() {
        return 0;
    }
    1 + w.windows(2).take_while(|p| p[0] != p[1]).count()
}

fn alternating_suffix_len(w: &[u8]) -> usize {
    if w.is_empty() {
        return 0;
    }
    1 + w.windows(2).rev().take_while(|p| p[0] != p[1]).count()
}

pub fn condensed_form(w: &Word) -> CondensedForm {
    let s = w.as_bytes();
    let p = alternating_prefix_len(s);
    if p == s.len() {
        return CondensedForm::Full(w.clone());
    }
    let q = alternating_suffix_len(s);
    CondensedForm::Split(
        Word::from_bytes_unchecked(s[..p].to_vec()),
        Word::from_bytes_unchecked(s[s.len() - q..].to_vec()),
    )
}

fn joins(u: &Word, v: &Word) -> bool {
    match (u.as_bytes().last(), v.as_bytes().first()) {
        (Some(x), Some(y)) => x != y,
        _ => true,
    }
}

fn cat(u: &Word, v: &Word) -> Word {
    let mut b = u.as_bytes().to_vec();
    b.extend_from_slice(v.as_bytes());
    Word::from_bytes_unchecked(b)
}

/// Condensed form of `uv` from the condensed forms of `u` and `v`.
pub fn condense_concat(c1: &CondensedForm, c2: &CondensedForm) -> CondensedForm {
    use CondensedForm::{Full, Split};
    match (c1, c2) {
        (Full(u), Full(v)) if joins(u, v) => Full(cat(u, v)),
        (Full(u), Full(v)) => Split(u.clone(), v.clone()),
        (Full(u), Split(p, s)) => Split(if joins(u, p) { cat(u, p) } else { u.clone() }, s.clone()),
        (Split(p, s), Full(v)) => Split(p.clone(), if joins(s, v) { cat(s, v) } else { v.clone() }),
        (Split(p, _), Split(_, s)) => Split(p.clone(), s.clone()),
    }
}

/// Saturation cap on stored alternating lengths.
pub const ALT_CAP: u8 = 19;

/// An alternating word known by its end letters and its length, capped at
/// [`ALT_CAP`]. Letters are 0 for `a`, 1 for `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Alt {
    pub first: u8,
    pub last: u8,
    pub len: u8,
}

impl Alt {
    fn letter(c: u8) -> Self {
        Alt { first: c, last: c, len: 1 }
    }

    fn join(self, other: Alt) -> Alt {
        Alt { first: self.first, last: other.last, len: (self.len + other.len).min(ALT_CAP) }
    }

    /// Longest `(ab)^i` and `(ba)^i` inside, as letter counts.
    fn scores(self) -> (u8, u8) {
        let even = |l: u8| 2 * (l / 2);
        let (from_first, from_second) = (even(self.len), even(self.len - 1));
        let cap = ALT_CAP - 1;
        if self.first == 0 {
            (from_first.min(cap), from_second.min(cap))
        } else {
            (from_second.min(cap), from_first.min(cap))
        }
    }
}

/// What the alternation search remembers of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AltState {
    #[serde(rename = "qL")]
    pub ql: Alt,
    #[serde(rename = "qR")]
    pub qr: Alt,
    /// The whole block alternates (then `ql == qr`).
    pub full: bool,
    #[serde(rename = "maxAB")]
    pub max_ab: u8,
    #[serde(rename = "maxBA")]
    pub max_ba: u8,
}

impl AltState {
    pub fn letter(c: u8) -> Self {
        AltState { ql: Alt::letter(c), qr: Alt::letter(c), full: true, max_ab: 0, max_ba: 0 }
    }

    /// Exact state of a word (lengths saturated).
    pub fn of_word(w: &Word) -> Option<Self> {
        let mut it = w.as_bytes().iter().map(|&c| AltState::letter(c - b'a'));
        let first = it.next()?;
        Some(it.fold(first, |acc, s| acc.concat(&s)))
    }

    pub fn concat(&self, other: &AltState) -> AltState {
        let key = concat_key(self.key(), other.key());
        AltState {
            ql: key.0,
            qr: key.1,
            full: key.2,
            max_ab: self.max_ab.max(other.max_ab).max(key.3),
            max_ba: self.max_ba.max(other.max_ba).max(key.4),
        }
    }

    fn key(&self) -> (Alt, Alt, bool) {
        (self.ql, self.qr, self.full)
    }

    pub fn has_both(&self, j: usize) -> bool {
        self.max_ab as usize >= 2 * j && self.max_ba as usize >= 2 * j
    }
}

/// The concatenated (qL, qR, full) and the scores of the junction run.
fn concat_key(a: (Alt, Alt, bool), b: (Alt, Alt, bool)) -> (Alt, Alt, bool, u8, u8) {
    let (l1, r1, f1) = a;
    let (l2, r2, f2) = b;
    if r1.last == l2.first {
        return (l1, r2, false, 0, 0);
    }
    let run = r1.join(l2);
    let (ab, ba) = run.scores();
    let ql = if f1 { run } else { l1 };
    let qr = if f2 { run } else { r2 };
    (ql, qr, f1 && f2, ab, ba)
}

/// States sharing (qL, qR, full), keeping only score pairs not beaten in
/// both coordinates by another. Combination is monotone in the scores, so
/// a beaten pair can never be the first to reach the threshold.
#[derive(Debug, Clone, Default)]
pub struct StateSet {
    groups: HashMap<(Alt, Alt, bool), Vec<(u8, u8)>>,
}

impl StateSet {
    pub fn insert(&mut self, s: AltState) {
        let list = self.groups.entry(s.key()).or_default();
        let p = (s.max_ab, s.max_ba);
        if list.iter().any(|&(a, b)| a >= p.0 && b >= p.1) {
            return;
        }
        list.retain(|&(a, b)| !(a <= p.0 && b <= p.1));
        list.push(p);
    }

    pub fn len(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = AltState> + '_ {
        self.groups.iter().flat_map(|(&(ql, qr, full), v)| {
            v.iter().map(move |&(max_ab, max_ba)| AltState { ql, qr, full, max_ab, max_ba })
        })
    }

    /// Whether some kept state is at least as strong as `s`.
    pub fn covers(&self, s: &AltState) -> bool {
        self.groups.get(&s.key()).is_some_and(|v| v.iter().any(|&(a, b)| a >= s.max_ab && b >= s.max_ba))
    }

    fn concat_into(&self, other: &StateSet, out: &mut StateSet) {
        for (&k1, v1) in &self.groups {
            for (&k2, v2) in &other.groups {
                let (ql, qr, full, jab, jba) = concat_key(k1, k2);
                for &(a1, b1) in v1 {
                    for &(a2, b2) in v2 {
                        out.insert(AltState {
                            ql,
                            qr,
                            full,
                            max_ab: a1.max(a2).max(jab),
                            max_ba: b1.max(b2).max(jba),
                        });
                    }
                }
            }
        }
    }

    fn any_both(&self, j: usize) -> Option<AltState> {
        self.iter().find(|s| s.has_both(j))
    }
}

/// Outcome of one phase of [`alternation_exclusion`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum PhaseOutcome {
    #[serde(rename = "EXCLUDED")]
    Excluded { level: usize },
    /// A concrete ordering (bits to `level`) whose block at `vertex` holds
    /// both patterns.
    #[serde(rename = "WITNESS")]
    Witness { level: usize, vertex: Vertex, bits: Vec<(usize, usize, u8)> },
    /// The over-approximation reached a state with both patterns.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive { level: usize, vertex: Vertex, state: AltState },
}

impl PhaseOutcome {
    pub fn is_excluded(&self) -> bool {
        matches!(self, PhaseOutcome::Excluded { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlternationVerdict {
    pub j: usize,
    pub exact: PhaseOutcome,
    pub approximate: PhaseOutcome,
    /// Levels whose bits were enumerated exactly before the per-vertex
    /// unions of the approximate phase.
    pub split_level: usize,
}

impl AlternationVerdict {
    pub fn excluded(&self) -> bool {
        self.exact.is_excluded() && self.approximate.is_excluded()
    }
}

/// Default highest level of the exact phase.
pub const DEFAULT_EXACT_LEVEL: usize = 7;
/// Split levels tried, in order, by the approximate phase.
pub const DEFAULT_SPLIT_LEVELS: [usize; 2] = [5, 6];

fn check_j(j: usize) -> Result<()> {
    if j == 0 || 2 * j + 1 > ALT_CAP as usize {
        return Err(Error::CapExceeded(format!("j = {j} needs 2j+1 <= {ALT_CAP}")));
    }
    Ok(())
}

fn next_level(prev: &[AltState], level: usize, mask: u64) -> Vec<AltState> {
    // bit for (level-y, y), y = 1..level-1, is bit y-1 of mask
    (0..=level)
        .map(|y| {
            let x = level - y;
            if y == 0 {
                return AltState::letter(0);
            }
            if x == 0 {
                return AltState::letter(1);
            }
            let ((_, fy), (_, sy)) = order(x, y, (mask >> (y - 1) & 1) as u8);
            prev[fy].concat(&prev[sy])
        })
        .collect()
}

/// Parents of `(x,y)` in block order for bit `bit`.
fn order(x: usize, y: usize, bit: u8) -> ((usize, usize), (usize, usize)) {
    if bit == 0 {
        ((x, y - 1), (x - 1, y))
    } else {
        ((x - 1, y), (x, y - 1))
    }
}

fn level_bits(level: usize, mask: u64) -> impl Iterator<Item = (usize, usize, u8)> {
    (1..level).map(move |y| (level - y, y, (mask >> (y - 1) & 1) as u8))
}

/// Exact search over every ordering of levels `2..=max_level`, with
/// `xi(1,1) = 0` (swapping letters maps the other half onto this one).
fn exact_phase(max_level: usize, j: usize) -> PhaseOutcome {
    fn dfs(
        level: usize,
        max_level: usize,
        j: usize,
        prev: &[AltState],
        bits: &mut Vec<(usize, usize, u8)>,
    ) -> Option<PhaseOutcome> {
        if level > max_level {
            return None;
        }
        let masks = if level == 2 { 1 } else { 1u64 << (level - 1) };
        for mask in 0..masks {
            let states = next_level(prev, level, mask);
            let mark = bits.len();
            bits.extend(level_bits(level, mask));
            if let Some(y) = states.iter().position(|s| s.has_both(j)) {
                return Some(PhaseOutcome::Witness {
                    level,
                    vertex: Vertex::new(level - y, y),
                    bits: bits.clone(),
                });
            }
            if let Some(w) = dfs(level + 1, max_level, j, &states, bits) {
                return Some(w);
            }
            bits.truncate(mark);
        }
        None
    }
    let start = [AltState::letter(0), AltState::letter(1)];
    dfs(2, max_level, j, &start, &mut Vec::new()).unwrap_or(PhaseOutcome::Excluded { level: max_level })
}

/// States at `level` of every ordering of levels `2..=level` with
/// `xi(1,1) = 0`, together with the ordering bits.
fn exact_frontiers(level: usize) -> Vec<(Vec<(usize, usize, u8)>, Vec<AltState>)> {
    let mut frontier = vec![(Vec::new(), vec![AltState::letter(0), AltState::letter(1)])];
    for l in 2..=level {
        let masks = if l == 2 { 1 } else { 1u64 << (l - 1) };
        frontier = frontier
            .into_iter()
            .flat_map(|(bits, states)| {
                (0..masks)
                    .map(|mask| {
                        let mut b = bits.clone();
                        b.extend(level_bits(l, mask));
                        (b, next_level(&states, l, mask))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    frontier
}

/// Per-vertex unions of reachable states from `start_level + 1` up to
/// `max_level`. Returns the first vertex with a state holding both
/// patterns.
fn union_phase(start: Vec<StateSet>, start_level: usize, max_level: usize, j: usize) -> Option<(usize, Vertex, AltState)> {
    let mut sets = start;
    for level in start_level + 1..=max_level {
        let next: Vec<StateSet> = (0..=level)
            .map(|y| {
                let x = level - y;
                let mut out = StateSet::default();
                if y == 0 || x == 0 {
                    out.insert(AltState::letter(u8::from(y > 0)));
                    return out;
                }
                for bit in 0..2 {
                    let ((_, fy), (_, sy)) = order(x, y, bit);
                    sets[fy].concat_into(&sets[sy], &mut out);
                }
                out
            })
            .collect();
        for (y, s) in next.iter().enumerate() {
            if let Some(bad) = s.any_both(j) {
                return Some((level, Vertex::new(level - y, y), bad));
            }
        }
        sets = next;
    }
    None
}

fn singleton_sets(states: &[AltState]) -> Vec<StateSet> {
    states
        .iter()
        .map(|&s| {
            let mut set = StateSet::default();
            set.insert(s);
            set
        })
        .collect()
}

/// Approximate phase: orderings of levels `2..=split` are enumerated
/// exactly; above that each vertex keeps the union over both bits.
fn approximate_phase(max_level: usize, split: usize, j: usize) -> PhaseOutcome {
    let split = split.min(max_level);
    let frontiers = exact_frontiers(split);
    for (_, states) in &frontiers {
        if let Some(y) = states.iter().position(|s| s.has_both(j)) {
            return PhaseOutcome::Inconclusive { level: split, vertex: Vertex::new(split - y, y), state: states[y] };
        }
    }
    let bad = frontiers
        .par_iter()
        .filter_map(|(_, states)| union_phase(singleton_sets(states), split, max_level, j))
        .min_by_key(|&(level, v, _)| (level, v.y));
    match bad {
        None => PhaseOutcome::Excluded { level: max_level },
        Some((level, vertex, state)) => PhaseOutcome::Inconclusive { level, vertex, state },
    }
}

/// Per-vertex unions straight from level 1, with no exact prefix. Returns
/// the first level where a state holding both patterns appears.
pub fn pure_union_first_failure(max_level: usize, j: usize) -> Result<Option<(usize, Vertex)>> {
    check_j(j)?;
    let start = singleton_sets(&[AltState::letter(0), AltState::letter(1)]);
    Ok(union_phase(start, 1, max_level, j).map(|(l, v, _)| (l, v)))
}

/// Whether some ordering has a block through `max_level` containing both
/// `(ab)^j` and `(ba)^j`: exact to level 7, over-approximated above.
pub fn alternation_exclusion(max_level: usize, j: usize) -> Result<AlternationVerdict> {
    check_j(j)?;
    let exact = exact_phase(max_level.min(DEFAULT_EXACT_LEVEL), j);
    let mut split_level = DEFAULT_SPLIT_LEVELS[0];
    let mut approximate = PhaseOutcome::Excluded { level: max_level };
    for split in DEFAULT_SPLIT_LEVELS {
        split_level = split;
        approximate = approximate_phase(max_level, split, j);
        if approximate.is_excluded() {
            break;
        }
    }
    Ok(AlternationVerdict { j, exact, approximate, split_level })
}

/// Reachable state sets per vertex at `level` (no exact prefix), for
/// checking that concrete orderings stay inside the over-approximation.
pub fn reachable_sets(level: usize) -> Vec<StateSet> {
    let mut sets = singleton_sets(&[AltState::letter(0), AltState::letter(1)]);
    for l in 2..=level {
        sets = (0..=l)
            .map(|y| {
                let x = l - y;
                let mut out = StateSet::default();
                if y == 0 || x == 0 {
                    out.insert(AltState::letter(u8::from(y > 0)));
                    return out;
                }
                for bit in 0..2 {
                    let ((_, fy), (_, sy)) = order(x, y, bit);
                    sets[fy].concat_into(&sets[sy], &mut out);
                }
                out
            })
            .collect();
    }
    sets
}

/// Exact states on `level` for an ordering given by its bit function.
pub fn exact_states(xi: &crate::ordering::OrderingTable, level: usize) -> Vec<AltState> {
    let mut states = vec![AltState::letter(0), AltState::letter(1)];
    for l in 2..=level {
        states = (0..=l)
            .map(|y| {
                let x = l - y;
                if y == 0 {
                    return AltState::letter(0);
                }
                if x == 0 {
                    return AltState::letter(1);
                }
                let ((_, fy), (_, sy)) = block_parents(xi, x, y);
                states[fy].concat(&states[sy])
            })
            .collect();
    }
    states
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::basic_block;
    use crate::ordering::OrderingTable;

    #[test]
    fn condensed_examples() {
        assert_eq!(
            condensed_form(&Word::from("ababaab")),
            CondensedForm::Split(Word::from("ababa"), Word::from("ab"))
        );
        assert_eq!(condensed_form(&Word::from("abab")), CondensedForm::Full(Word::from("abab")));
        assert_eq!(condensed_form(&Word::from("a")), CondensedForm::Full(Word::from("a")));
        let ab = CondensedForm::Full(Word::from("ab"));
        assert_eq!(condense_concat(&ab, &ab), CondensedForm::Full(Word::from("abab")));
    }

    #[test]
    fn state_matches_word_scan() {
        let xi = OrderingTable::seeded(3);
        for level in 1..=9 {
            let states = exact_states(&xi, level);
            for (y, s) in states.iter().enumerate() {
                let w = basic_block(&xi, level - y, y).unwrap();
                assert_eq!(Some(*s), AltState::of_word(&w));
            }
        }
    }

    #[test]
    fn scores_of_runs() {
        let st = AltState::of_word(&Word::from("a(ab)^9b")).unwrap();
        assert_eq!((st.max_ab, st.max_ba), (18, 16));
        let st = AltState::of_word(&Word::from("aababb")).unwrap();
        assert_eq!((st.max_ab, st.max_ba), (4, 2));
        assert!(!st.has_both(2));
    }

    #[test]
    fn dominated_pairs_are_dropped() {
        let mut set = StateSet::default();
        let base = AltState::letter(0);
        set.insert(AltState { max_ab: 2, max_ba: 2, ..base });
        set.insert(AltState { max_ab: 2, max_ba: 0, ..base });
        set.insert(AltState { max_ab: 4, max_ba: 0, ..base });
        assert_eq!(set.len(), 2);
        assert!(set.covers(&AltState { max_ab: 1, max_ba: 1, ..base }));
    }
}
