//! Basic blocks of the 1-coding and k-codings, letter censuses, language
//! sampling and the faithfulness probe.

mod faithful;
mod language;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

pub use faithful::{faithfulness_probe, FaithfulnessReport, Unseparated};
pub use language::{
    big_language_count, complexity, contains_window, language_counts, language_words,
    stabilized_complexity, Complexity,
};

use crate::adic::MAX_SYMBOL_K;
use crate::error::{Error, Result};
use crate::ordering::OrderingTable;
use crate::pascal::{binomial_u128, unrank_small, Step, Vertex};
use crate::word::Word;

/// Default cap on block length (and on cache size), in bytes.
pub const DEFAULT_BLOCK_CAP: usize = 2 << 30;

/// The `s`-th path (in ordering order, from 1) from the root to `(k-m, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CylSymbol {
    pub k: u32,
    pub m: u32,
    pub s: u64,
}

impl CylSymbol {
    pub fn vertex(self) -> Vertex {
        Vertex::new((self.k - self.m) as usize, self.m as usize)
    }

    /// Steps of the named path.
    pub fn path(self, xi: &OrderingTable) -> Vec<Step> {
        unrank_small(xi, self.vertex(), (self.s - 1) as u128)
    }

    /// Letter of the first edge: `a` for an A-step.
    pub fn first_letter(self, xi: &OrderingTable) -> u8 {
        self.path(xi)[0].letter()
    }
}

impl fmt::Display for CylSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{},{}]^{}", self.k, self.m, self.s)
    }
}

impl Serialize for CylSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.k, self.m, self.s).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CylSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (k, m, s) = <(u32, u32, u64)>::deserialize(d)?;
        if m > k || s == 0 {
            return Err(serde::de::Error::custom("invalid k-symbol"));
        }
        Ok(CylSymbol { k, m, s })
    }
}

/// Parents of interior `(x,y)` in block order: `(first, second)`.
pub(crate) fn block_parents(xi: &OrderingTable, x: usize, y: usize) -> ((usize, usize), (usize, usize)) {
    if xi.xi(x, y) == 0 {
        ((x, y - 1), (x - 1, y))
    } else {
        ((x - 1, y), (x, y - 1))
    }
}

fn emit(xi: &OrderingTable, x: usize, y: usize, out: &mut Vec<u8>) {
    if y == 0 {
        out.push(b'a');
    } else if x == 0 {
        out.push(b'b');
    } else {
        let (f, s) = block_parents(xi, x, y);
        emit(xi, f.0, f.1, out);
        emit(xi, s.0, s.1, out);
    }
}

fn block_len(x: usize, y: usize) -> Result<usize> {
    binomial_u128(x + y, x)
        .filter(|&l| l <= DEFAULT_BLOCK_CAP as u128)
        .map(|l| l as usize)
        .ok_or_else(|| Error::SizeCap(format!("block ({x},{y}) is longer than {DEFAULT_BLOCK_CAP} bytes")))
}

/// The basic block `B(x,y)`: `a` on the row `y = 0`, `b` on `x = 0`, and
/// the two parent blocks concatenated in edge order elsewhere.
pub fn basic_block(xi: &OrderingTable, x: usize, y: usize) -> Result<Word> {
    if x == 0 && y == 0 {
        return Err(Error::InvalidArgument("the root has no block".into()));
    }
    xi.check_level(x + y)?;
    let mut out = Vec::with_capacity(block_len(x, y)?);
    emit(xi, x, y, &mut out);
    Ok(Word::from_bytes_unchecked(out))
}

fn emit_k(xi: &OrderingTable, k: usize, x: usize, y: usize, out: &mut Vec<CylSymbol>) {
    if x + y == k {
        let h = binomial_u128(k, y).expect("k bounded") as u64;
        out.extend((1..=h).map(|s| CylSymbol { k: k as u32, m: y as u32, s }));
    } else if y == 0 {
        emit_k(xi, k, k, 0, out);
    } else if x == 0 {
        emit_k(xi, k, 0, k, out);
    } else {
        let (f, s) = block_parents(xi, x, y);
        emit_k(xi, k, f.0, f.1, out);
        emit_k(xi, k, s.0, s.1, out);
    }
}

/// The basic block of the k-coding at `(x,y)`, a word over k-symbols.
pub fn basic_block_k(xi: &OrderingTable, k: usize, x: usize, y: usize) -> Result<Vec<CylSymbol>> {
    if x + y < k {
        return Err(Error::LevelBelowK { level: x + y, k });
    }
    if k == 0 || k > MAX_SYMBOL_K {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={MAX_SYMBOL_K}")));
    }
    xi.check_level(x + y)?;
    let len = block_len(x, y)?;
    if len.saturating_mul(std::mem::size_of::<CylSymbol>()) > DEFAULT_BLOCK_CAP {
        return Err(Error::SizeCap(format!("k-block ({x},{y})")));
    }
    let mut out = Vec::with_capacity(len);
    emit_k(xi, k, x, y, &mut out);
    Ok(out)
}

/// Letters of a k-symbol word read through the first edge of each symbol.
pub fn project_first_letters(xi: &OrderingTable, w: &[CylSymbol]) -> Word {
    Word::from_bytes_unchecked(w.iter().map(|c| c.first_letter(xi)).collect())
}

/// Letter counts of a word and the vertex whose block has these counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub a: usize,
    pub b: usize,
    pub vertex: Option<Vertex>,
}

/// Counts letters and infers `(x,y)` with `#a = C(x+y-1,x-1)` and
/// `#b = C(x+y-1,y-1)`. A single letter maps to the level-1 vertex; a
/// one-letter word of length above 1 matches no vertex.
pub fn symbol_census(w: &Word) -> Census {
    let a = w.count(b'a');
    let b = w.len() - a;
    Census { a, b, vertex: infer_vertex(a, b) }
}

fn infer_vertex(a: usize, b: usize) -> Option<Vertex> {
    match (a, b) {
        (1, 0) => return Some(Vertex::new(1, 0)),
        (0, 1) => return Some(Vertex::new(0, 1)),
        (0, _) | (_, 0) => return None,
        _ => {}
    }
    let total = (a + b) as u128;
    for n in 2..=(a + b) {
        // c = C(n, x) for x = 1, 2, ... while it stays <= total
        let mut c: u128 = 1;
        for x in 1..=n / 2 {
            c = c * (n - x + 1) as u128 / x as u128;
            if c > total {
                break;
            }
            if c == total {
                // vertex (x, n-x): #a = C(n-1, x-1) = c*x/n
                if c * x as u128 / n as u128 == a as u128 {
                    return Some(Vertex::new(x, n - x));
                }
                if c * (n - x) as u128 / n as u128 == a as u128 {
                    return Some(Vertex::new(n - x, x));
                }
            }
        }
    }
    None
}

/// Memo of blocks shared between threads. Entries are built outside the
/// lock, so concurrent readers never wait on a build.
pub struct BlockCache {
    xi: OrderingTable,
    map: RwLock<HashMap<Vertex, Arc<Word>>>,
    used: AtomicUsize,
    cap: usize,
}

impl BlockCache {
    pub fn new(xi: OrderingTable) -> Self {
        Self::with_cap(xi, DEFAULT_BLOCK_CAP)
    }

    pub fn with_cap(xi: OrderingTable, cap: usize) -> Self {
        BlockCache { xi, map: RwLock::new(HashMap::new()), used: AtomicUsize::new(0), cap }
    }

    pub fn ordering(&self) -> &OrderingTable {
        &self.xi
    }

    /// Bytes held by cached blocks.
    pub fn bytes_used(&self) -> usize {
        self.used.load(AtomicOrdering::Relaxed)
    }

    pub fn get(&self, x: usize, y: usize) -> Result<Arc<Word>> {
        let v = Vertex::new(x, y);
        if let Some(w) = self.map.read().expect("cache lock").get(&v) {
            return Ok(Arc::clone(w));
        }
        let len = block_len(x, y)?;
        if self.used.load(AtomicOrdering::Relaxed) + len > self.cap {
            return Err(Error::SizeCap(format!("block cache would exceed {} bytes", self.cap)));
        }
        let w = Arc::new(basic_block(&self.xi, x, y)?);
        let mut map = self.map.write().expect("cache lock");
        let entry = map.entry(v).or_insert_with(|| {
            self.used.fetch_add(len, AtomicOrdering::Relaxed);
            Arc::clone(&w)
        });
        Ok(Arc::clone(entry))
    }
}

/// Default cap on the free bits of [`enumerate_blocks`].
pub const DEFAULT_BIT_BUDGET: usize = 20;

/// The restricted ordering with free bits `(u,v)`, `2 <= u <= x`,
/// `2 <= v <= y`, read from `mask` in row-major order (u outer). Every
/// other interior bit is 0, so blocks on the rows `x = 1` and `y = 1` are
/// `a b^v` and `a^u b`.
pub fn restricted_ordering(x: usize, y: usize, mask: u64) -> OrderingTable {
    let mut bits = Vec::new();
    let mut i = 0;
    for u in 2..=x {
        for v in 2..=y {
            bits.push((u, v, (mask >> i & 1) as u8));
            i += 1;
        }
    }
    OrderingTable::with_default(&bits, None, 0).expect("valid bits")
}

/// Number of free bits of restricted orderings below `(x,y)`.
pub fn restricted_bit_count(x: usize, y: usize) -> usize {
    x.saturating_sub(1) * y.saturating_sub(1)
}

/// Every block `B(x,y)` over the restricted orderings.
pub fn enumerate_blocks(x: usize, y: usize) -> Result<std::collections::BTreeSet<Word>> {
    enumerate_blocks_with_budget(x, y, DEFAULT_BIT_BUDGET)
}

pub fn enumerate_blocks_with_budget(x: usize, y: usize, budget: usize) -> Result<std::collections::BTreeSet<Word>> {
    if x == 0 || y == 0 {
        return Err(Error::InvalidArgument(format!("need x, y >= 1, got ({x},{y})")));
    }
    let free = restricted_bit_count(x, y);
    if free > budget.min(63) {
        return Err(Error::SizeCap(format!("{free} free bits exceed the budget of {budget}")));
    }
    (0..1u64 << free).map(|mask| basic_block(&restricted_ordering(x, y, mask), x, y)).collect()
}
