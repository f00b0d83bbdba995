//! Windows of basic blocks, found without building the blocks.
//!
//! A window of `B(x,y)` lies in one parent block or crosses the junction
//! between them. Keeping the first and last `n-1` letters of every block
//! on a level is enough to see every crossing window on the next level.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::block_parents;
use crate::error::Result;
use crate::ordering::OrderingTable;
use crate::word::Word;

struct Ends {
    pre: Vec<u8>,
    suf: Vec<u8>,
}

fn join_prefix(first: &[u8], second: &[u8], keep: usize) -> Vec<u8> {
    let mut v = first.to_vec();
    v.extend_from_slice(second);
    v.truncate(keep);
    v
}

fn join_suffix(first: &[u8], second: &[u8], keep: usize) -> Vec<u8> {
    let mut v = first.to_vec();
    v.extend_from_slice(second);
    let cut = v.len().saturating_sub(keep);
    v.split_off(cut)
}

/// Calls `visit(level, chunk)` with every stretch of text that can hold a
/// new `w`-window at that level: the letters on level 1, junctions above.
/// Stops early when `visit` returns `true`.
fn scan<F>(xi: &OrderingTable, w: usize, max_level: usize, mut visit: F) -> Result<()>
where
    F: FnMut(usize, &[u8]) -> bool,
{
    if max_level == 0 {
        return Ok(());
    }
    xi.check_level(max_level)?;
    let keep = w.saturating_sub(1);
    let letter = |c: u8| Ends { pre: vec![c; keep.min(1)], suf: vec![c; keep.min(1)] };
    if visit(1, b"a") || visit(1, b"b") {
        return Ok(());
    }
    // ends[y] describes the block at (level - y, y)
    let mut ends = vec![letter(b'a'), letter(b'b')];
    for level in 2..=max_level {
        let fresh: Vec<(Ends, Vec<u8>)> = (0..=level)
            .into_par_iter()
            .map(|y| {
                let x = level - y;
                if y == 0 {
                    return (letter(b'a'), Vec::new());
                }
                if x == 0 {
                    return (letter(b'b'), Vec::new());
                }
                let (f, s) = block_parents(xi, x, y);
                let (f, s) = (&ends[f.1], &ends[s.1]);
                let mut junction = f.suf.clone();
                junction.extend_from_slice(&s.pre);
                let e = Ends { pre: join_prefix(&f.pre, &s.pre, keep), suf: join_suffix(&f.suf, &s.suf, keep) };
                (e, junction)
            })
            .collect();
        let mut next = Vec::with_capacity(level + 1);
        for (e, junction) in fresh {
            if junction.len() >= w && visit(level, &junction) {
                return Ok(());
            }
            next.push(e);
        }
        ends = next;
    }
    Ok(())
}

fn collect_levels(xi: &OrderingTable, n: usize, max_level: usize) -> Result<(HashSet<Vec<u8>>, Vec<usize>)> {
    let mut set = HashSet::new();
    let mut counts = vec![0; max_level + 1];
    if n == 0 {
        return Ok((set, counts));
    }
    let mut current = 0;
    scan(xi, n, max_level, |level, chunk| {
        while current < level {
            counts[current] = set.len();
            current += 1;
        }
        for win in chunk.windows(n) {
            if !set.contains(win) {
                set.insert(win.to_vec());
            }
        }
        false
    })?;
    for c in counts.iter_mut().skip(current) {
        *c = set.len();
    }
    Ok((set, counts))
}

/// The `n`-windows of every basic block at level at most `max_level`.
pub fn language_words(xi: &OrderingTable, n: usize, max_level: usize) -> Result<BTreeSet<Word>> {
    let (set, _) = collect_levels(xi, n, max_level)?;
    Ok(set.into_iter().map(Word::from_bytes_unchecked).collect())
}

/// Number of `n`-windows up to each level `0..=max_level`.
pub fn language_counts(xi: &OrderingTable, n: usize, max_level: usize) -> Result<Vec<usize>> {
    Ok(collect_levels(xi, n, max_level)?.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Complexity {
    pub count: usize,
    /// The count did not change over the last two levels.
    pub stabilized: bool,
}

pub fn complexity(xi: &OrderingTable, n: usize, max_level: usize) -> Result<Complexity> {
    let counts = language_counts(xi, n, max_level)?;
    let count = counts[max_level];
    let stabilized = max_level >= 2 && counts[max_level - 1] == count && counts[max_level - 2] == count;
    Ok(Complexity { count, stabilized })
}

/// First level `L <= max_level` with a nonzero count that held for the
/// two levels before it, with that count.
pub fn stabilized_complexity(xi: &OrderingTable, n: usize, max_level: usize) -> Result<Option<(usize, usize)>> {
    let counts = language_counts(xi, n, max_level)?;
    Ok((2..=max_level)
        .find(|&l| counts[l] > 0 && counts[l] == counts[l - 1] && counts[l] == counts[l - 2])
        .map(|l| (l, counts[l])))
}

/// Whether `u` occurs in some basic block at level at most `max_level`.
pub fn contains_window(xi: &OrderingTable, u: &[u8], max_level: usize) -> Result<bool> {
    if u.is_empty() {
        return Ok(true);
    }
    let mut found = false;
    scan(xi, u.len(), max_level, |_, chunk| {
        found = crate::word::contains(chunk, u);
        found
    })?;
    Ok(found)
}

/// Distinct `n`-windows over the orderings that fix every interior bit to
/// 0 except those at `(u,2)`, `2 <= u <= K`, which range over all values.
/// `K` is the largest value with `2^(K-1) <= budget` and `K+2 <= level_cap`.
pub fn big_language_count(n: usize, level_cap: usize, budget: usize) -> Result<usize> {
    let mut k = 1;
    while k + 1 + 2 <= level_cap && (1usize << k) <= budget {
        k += 1;
    }
    let free = k - 1;
    let sets: Vec<HashSet<Vec<u8>>> = (0..1u64 << free)
        .into_par_iter()
        .map(|mask| {
            let bits: Vec<(usize, usize, u8)> =
                (0..free).map(|i| (i + 2, 2, ((mask >> i) & 1) as u8)).collect();
            let xi = OrderingTable::with_default(&bits, None, 0)?;
            Ok(collect_levels(&xi, n, level_cap)?.0)
        })
        .collect::<Result<_>>()?;
    let mut all = HashSet::new();
    for s in sets {
        all.extend(s);
    }
    Ok(all.len())
}
