//! Edge orderings of the Pascal graph.
//!
//! An ordering assigns one bit to every interior vertex `(x,y)` with
//! `x,y >= 1`. Bit 1 means the edge arriving from `(x-1,y)` is the smaller
//! of the two incoming edges; bit 0 means the edge from `(x,y-1)` is smaller.
//! Boundary vertices have a single incoming edge and carry no bit.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pascal::Vertex;

/// Result of querying an ordering at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexBit {
    /// Boundary vertex: its only incoming edge is both minimal and maximal.
    BothExtremal,
    Zero,
    One,
}

/// Serializable description of an ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrderingSpec {
    Constant {
        bit: u8,
    },
    /// `bias` is the probability that a vertex receives bit 0.
    Seeded {
        seed: u64,
        #[serde(default = "half")]
        bias: f64,
    },
    /// Listed bits; `maxLevel` bounds the table, `default` fills unlisted
    /// interior vertices. Without `maxLevel` the table is unbounded and a
    /// default is required.
    Explicit {
        bits: Vec<(usize, usize, u8)>,
        #[serde(rename = "maxLevel", default, skip_serializing_if = "Option::is_none")]
        max_level: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        default: Option<u8>,
    },
    Tree {
        depth: u32,
    },
}

fn half() -> f64 {
    0.5
}

#[derive(Debug, Clone)]
enum Resolved {
    Constant(u8),
    Seeded { seed: u64, bias: f64 },
    Map {
        bits: HashMap<(usize, usize), u8>,
        max_level: Option<usize>,
        default: Option<u8>,
    },
}

/// An immutable, fully resolved ordering. Seeded tables are evaluated by a
/// pure hash of `(seed, x, y)`, so lookups need no shared mutable state.
#[derive(Debug, Clone)]
pub struct OrderingTable {
    spec: OrderingSpec,
    resolved: Resolved,
    /// Largest level carrying a bit that differs from the tail constant.
    tail_from: Option<usize>,
}

const MAX_TREE_DEPTH: u32 = 24;

impl OrderingTable {
    /// Builds a table from its description (`make_ordering`).
    pub fn new(spec: OrderingSpec) -> Result<Self> {
        let (resolved, tail_from) = match &spec {
            OrderingSpec::Constant { bit } => {
                check_bit(*bit)?;
                (Resolved::Constant(*bit), Some(0))
            }
            OrderingSpec::Seeded { seed, bias } => {
                if !(0.0..=1.0).contains(bias) {
                    return Err(Error::InvalidOrdering(format!("bias {bias} outside [0,1]")));
                }
                (Resolved::Seeded { seed: *seed, bias: *bias }, None)
            }
            OrderingSpec::Explicit { bits, max_level, default } => {
                let map = resolve_explicit(bits, *max_level, *default)?;
                let top = map.keys().map(|&(x, y)| x + y).max().unwrap_or(0);
                let tail = match (max_level, default) {
                    (None, Some(_)) => Some(top),
                    _ => None,
                };
                (
                    Resolved::Map { bits: map, max_level: *max_level, default: *default },
                    tail,
                )
            }
            OrderingSpec::Tree { depth } => {
                let (map, top) = tree_bits(*depth)?;
                (
                    Resolved::Map { bits: map, max_level: None, default: Some(0) },
                    Some(top),
                )
            }
        };
        Ok(OrderingTable { spec, resolved, tail_from })
    }

    pub fn constant(bit: u8) -> Self {
        Self::new(OrderingSpec::Constant { bit }).expect("bit must be 0 or 1")
    }

    pub fn seeded(seed: u64) -> Self {
        Self::seeded_with_bias(seed, 0.5)
    }

    pub fn seeded_with_bias(seed: u64, bias: f64) -> Self {
        Self::new(OrderingSpec::Seeded { seed, bias }).expect("bias must lie in [0,1]")
    }

    /// Explicit table with the given bits and default 0 elsewhere.
    pub fn with_default(bits: &[(usize, usize, u8)], max_level: Option<usize>, default: u8) -> Result<Self> {
        Self::new(OrderingSpec::Explicit {
            bits: bits.to_vec(),
            max_level,
            default: Some(default),
        })
    }

    /// Ordering in which an embedded binary tree consists of minimal edges.
    pub fn tree(depth: u32) -> Result<Self> {
        Self::new(OrderingSpec::Tree { depth })
    }

    pub fn spec(&self) -> &OrderingSpec {
        &self.spec
    }

    /// Highest level this table answers for, if bounded.
    pub fn max_level(&self) -> Option<usize> {
        match &self.resolved {
            Resolved::Map { max_level, .. } => *max_level,
            _ => None,
        }
    }

    /// Level from which every bit equals a single constant, when known.
    pub fn constant_tail(&self) -> Option<(usize, u8)> {
        let from = self.tail_from?;
        match &self.resolved {
            Resolved::Constant(b) => Some((0, *b)),
            Resolved::Map { default: Some(d), .. } => Some((from + 1, *d)),
            _ => None,
        }
    }

    /// Fails with `MissingBit` if some interior vertex at or below `level`
    /// is not covered.
    pub fn check_level(&self, level: usize) -> Result<()> {
        match self.max_level() {
            Some(max) if level > max && level >= 2 => Err(Error::MissingBit { x: 1, y: level - 1 }),
            _ => Ok(()),
        }
    }

    /// Queries the ordering at `v`.
    pub fn bit(&self, v: Vertex) -> Result<VertexBit> {
        if v.x == 0 || v.y == 0 {
            return Ok(VertexBit::BothExtremal);
        }
        let b = match &self.resolved {
            Resolved::Constant(b) => *b,
            Resolved::Seeded { seed, bias } => seeded_bit(*seed, *bias, v.x, v.y),
            Resolved::Map { bits, max_level, default } => {
                if max_level.is_some_and(|m| v.level() > m) {
                    return Err(Error::MissingBit { x: v.x, y: v.y });
                }
                match bits.get(&(v.x, v.y)).copied().or(*default) {
                    Some(b) => b,
                    None => return Err(Error::MissingBit { x: v.x, y: v.y }),
                }
            }
        };
        Ok(if b == 1 { VertexBit::One } else { VertexBit::Zero })
    }

    /// Bit at an interior vertex whose level has been checked.
    ///
    /// # Panics
    /// If the vertex lies outside an explicit table's bound.
    pub fn xi(&self, x: usize, y: usize) -> u8 {
        debug_assert!(x >= 1 && y >= 1);
        match &self.resolved {
            Resolved::Constant(b) => *b,
            Resolved::Seeded { seed, bias } => seeded_bit(*seed, *bias, x, y),
            Resolved::Map { bits, max_level, default } => {
                assert!(
                    max_level.map_or(true, |m| x + y <= m),
                    "ordering queried at ({x},{y}) beyond its bound"
                );
                bits.get(&(x, y))
                    .copied()
                    .or(*default)
                    .unwrap_or_else(|| panic!("ordering has no bit at ({x},{y})"))
            }
        }
    }

    /// All interior bits up to `level`, in level order then by `x` descending.
    pub fn bits_to_level(&self, level: usize) -> Result<Vec<(usize, usize, u8)>> {
        self.check_level(level)?;
        let mut out = Vec::new();
        for n in 2..=level {
            for y in 1..n {
                out.push((n - y, y, self.xi(n - y, y)));
            }
        }
        Ok(out)
    }
}

fn check_bit(b: u8) -> Result<()> {
    if b > 1 {
        return Err(Error::InvalidOrdering(format!("bit {b} is not 0 or 1")));
    }
    Ok(())
}

fn resolve_explicit(
    bits: &[(usize, usize, u8)],
    max_level: Option<usize>,
    default: Option<u8>,
) -> Result<HashMap<(usize, usize), u8>> {
    if let Some(d) = default {
        check_bit(d)?;
    }
    if max_level.is_none() && default.is_none() {
        return Err(Error::InvalidOrdering(
            "an explicit table without maxLevel needs a default bit".into(),
        ));
    }
    let mut map = HashMap::new();
    for &(x, y, b) in bits {
        check_bit(b)?;
        if x == 0 || y == 0 {
            return Err(Error::InvalidOrdering(format!("({x},{y}) is a boundary vertex")));
        }
        if max_level.is_some_and(|m| x + y > m) {
            return Err(Error::InvalidOrdering(format!("({x},{y}) lies above maxLevel")));
        }
        if let Some(old) = map.insert((x, y), b) {
            if old != b {
                return Err(Error::InvalidOrdering(format!("conflicting bits at ({x},{y})")));
            }
        }
    }
    if let (Some(m), None) = (max_level, default) {
        for n in 2..=m {
            for y in 1..n {
                if !map.contains_key(&(n - y, y)) {
                    return Err(Error::MissingBit { x: n - y, y });
                }
            }
        }
    }
    Ok(map)
}

pub(crate) fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based hash of `(seed, x, y)` mapped to a bit.
fn seeded_bit(seed: u64, bias: f64, x: usize, y: usize) -> u8 {
    let h = splitmix(seed ^ splitmix((x as u64).wrapping_mul(0x1_0000_0001) ^ splitmix(y as u64)));
    let u = (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    if u < bias {
        0
    } else {
        1
    }
}

/// Level at which the `d`-th doubling of `tree_embedding_ordering(depth)`
/// is complete; `2^d` tree vertices sit on that level.
pub fn tree_stage_level(depth: u32, d: u32) -> usize {
    assert!(d <= depth);
    (1usize << depth) - (1usize << (depth - d))
}

/// Bits of the tree-embedding ordering. Stage `s` splits every tree vertex
/// into an A-branch and a B-branch of `2^(depth-s)` steps each; the tree
/// vertices on a level stay `2^(depth-s)` apart so branches never meet.
fn tree_bits(depth: u32) -> Result<(HashMap<(usize, usize), u8>, usize)> {
    if depth == 0 || depth > MAX_TREE_DEPTH {
        return Err(Error::InvalidOrdering(format!(
            "tree depth must lie in 1..={MAX_TREE_DEPTH}"
        )));
    }
    let mut bits = HashMap::new();
    let mut nodes = vec![(0usize, 0usize)];
    for s in 1..=depth {
        let t = 1usize << (depth - s);
        let mut next = Vec::with_capacity(nodes.len() * 2);
        for &(x, y) in &nodes {
            for i in 1..=t {
                if y >= 1 {
                    bits.insert((x + i, y), 1);
                }
                if x >= 1 {
                    bits.insert((x, y + i), 0);
                }
            }
            next.push((x + t, y));
            next.push((x, y + t));
        }
        nodes = next;
    }
    Ok((bits, (1usize << depth) - 1))
}
