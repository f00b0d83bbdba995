//! Factorizations of k-blocks into blocks of a lower level.

use std::collections::HashMap;

use serde::Serialize;

use crate::coding::{basic_block_k, block_parents, CylSymbol};
use crate::error::{Error, Result};
use crate::ordering::OrderingTable;
use crate::pascal::{binomial_u128, Vertex};

/// Highest level [`unique_factorization_check`] will search.
pub const DEFAULT_FACTOR_LEVEL_CAP: usize = 14;

fn unroll(xi: &OrderingTable, x: usize, y: usize, m: usize, out: &mut Vec<Vertex>) {
    if x + y == m {
        out.push(Vertex::new(x, y));
    } else if y == 0 {
        out.push(Vertex::new(m, 0));
    } else if x == 0 {
        out.push(Vertex::new(0, m));
    } else {
        let (f, s) = block_parents(xi, x, y);
        unroll(xi, f.0, f.1, m, out);
        unroll(xi, s.0, s.1, m, out);
    }
}

/// The level-`m` vertices whose k-blocks, in order, make up the k-block
/// of `source`. A boundary vertex below level `m` stands for its ancestor
/// on level `m`, which carries the same block.
pub fn factor_block(xi: &OrderingTable, k: usize, source: Vertex, m: usize) -> Result<Vec<Vertex>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let level = source.level();
    if level < k {
        return Err(Error::LevelBelowK { level, k });
    }
    if m < k {
        return Err(Error::LevelBelowK { level: m, k });
    }
    if m > level {
        return Err(Error::InvalidArgument(format!("factor level {m} is above the source level {level}")));
    }
    xi.check_level(level)?;
    let mut out = Vec::new();
    unroll(xi, source.x, source.y, m, &mut out);
    Ok(out)
}

/// Which words may tile a block, and how often.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TilingRule {
    /// Any level-m block, any number of times.
    Plain,
    /// Blocks of level-m ancestors of the source only.
    Ancestors,
    /// Each level-m block exactly as often as the canonical factorization
    /// uses it, that is once per path from its vertex to the source.
    Census,
}

/// One (vertex, level) where the tiling was not unique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ambiguity {
    pub vertex: Vertex,
    pub m: usize,
    /// Number of tilings found, saturated at 2.
    pub tilings: u8,
}

fn multiplicity(source: Vertex, u: usize, v: usize) -> u32 {
    if u > source.x || v > source.y {
        return 0;
    }
    binomial_u128(source.x - u + source.y - v, source.x - u).map_or(u32::MAX, |c| c.min(u32::MAX as u128) as u32)
}

/// Number of ways to tile `w` with `tiles`, saturated at 2. With `counts`
/// each tile must be used exactly that many times.
fn count_tilings(w: &[CylSymbol], tiles: &[Vec<CylSymbol>], counts: Option<Vec<u32>>) -> u8 {
    fn plain(w: &[CylSymbol], tiles: &[Vec<CylSymbol>]) -> u8 {
        let mut ways = vec![0u8; w.len() + 1];
        ways[0] = 1;
        for i in 0..w.len() {
            if ways[i] == 0 {
                continue;
            }
            for t in tiles {
                if w[i..].starts_with(t) {
                    ways[i + t.len()] = (ways[i + t.len()] + ways[i]).min(2);
                }
            }
        }
        ways[w.len()]
    }
    fn counted(
        w: &[CylSymbol],
        pos: usize,
        tiles: &[Vec<CylSymbol>],
        left: &mut Vec<u32>,
        memo: &mut HashMap<(usize, Vec<u32>), u8>,
    ) -> u8 {
        if pos == w.len() {
            return u8::from(left.iter().all(|&c| c == 0));
        }
        if let Some(&r) = memo.get(&(pos, left.clone())) {
            return r;
        }
        let mut total = 0u8;
        for (i, t) in tiles.iter().enumerate() {
            if left[i] > 0 && w[pos..].starts_with(t) {
                left[i] -= 1;
                total = (total + counted(w, pos + t.len(), tiles, left, memo)).min(2);
                left[i] += 1;
                if total == 2 {
                    break;
                }
            }
        }
        memo.insert((pos, left.clone()), total);
        total
    }
    match counts {
        None => plain(w, tiles),
        Some(mut left) => counted(w, 0, tiles, &mut left, &mut HashMap::new()),
    }
}

/// Every (vertex, m) on level `n` whose k-block has more than one tiling
/// by level-m blocks under `rule`, for `k <= m < n`.
pub fn factorization_ambiguities(xi: &OrderingTable, k: usize, n: usize, rule: TilingRule) -> Result<Vec<Ambiguity>> {
    if n < k {
        return Err(Error::LevelBelowK { level: n, k });
    }
    if n > DEFAULT_FACTOR_LEVEL_CAP {
        return Err(Error::SizeCap(format!("tiling search at level {n} (cap {DEFAULT_FACTOR_LEVEL_CAP})")));
    }
    let mut found = Vec::new();
    for source in Vertex::on_level(n) {
        let w = basic_block_k(xi, k, source.x, source.y)?;
        for m in k..n {
            let level_m: Vec<Vertex> = Vertex::on_level(m)
                .filter(|v| rule == TilingRule::Plain || (v.x <= source.x && v.y <= source.y))
                .collect();
            let tiles: Vec<Vec<CylSymbol>> =
                level_m.iter().map(|v| basic_block_k(xi, k, v.x, v.y)).collect::<Result<_>>()?;
            let counts = (rule == TilingRule::Census)
                .then(|| level_m.iter().map(|v| multiplicity(source, v.x, v.y)).collect());
            let tilings = count_tilings(&w, &tiles, counts);
            if tilings != 1 {
                found.push(Ambiguity { vertex: source, m, tilings });
            }
        }
    }
    Ok(found)
}

/// Rule used by [`unique_factorization_check`].
pub const DEFAULT_TILING_RULE: TilingRule = TilingRule::Census;

/// True when every k-block on level `n` has only its canonical tiling by
/// level-m blocks, for each `k <= m < n`.
pub fn unique_factorization_check(xi: &OrderingTable, k: usize, n: usize) -> Result<bool> {
    Ok(factorization_ambiguities(xi, k, n, DEFAULT_TILING_RULE)?.is_empty())
}
