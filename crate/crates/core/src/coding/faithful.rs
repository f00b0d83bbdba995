use std::collections::HashMap;

use serde::Serialize;

use super::CylSymbol;
use crate::adic::{extend_minimal, orbit_coding};
use crate::error::{Error, Result};
use crate::ordering::OrderingTable;
use crate::pascal::{height_u128, rank_small, PathPrefix, Vertex};

/// Largest level whose full path set the probe will enumerate.
const MAX_PROBE_LEVEL: usize = 16;
/// Largest level the continued paths may reach.
const MAX_CONTINUED_LEVEL: usize = 40;

#[derive(Debug, Clone, Serialize)]
pub struct PairOutcome {
    pub p: PathPrefix,
    pub q: PathPrefix,
    /// Common times `t0..=t1` at which both orbits stay in their columns.
    pub window: (i64, i64),
    /// Time of smallest absolute value where the codings differ.
    pub separation: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaithfulnessReport {
    pub k: usize,
    pub level: usize,
    pub delta: usize,
    pub pairs: Vec<PairOutcome>,
}

/// A pair that no coordinate of the window told apart.
pub type Unseparated = PairOutcome;

impl FaithfulnessReport {
    pub fn separated(&self) -> usize {
        self.pairs.iter().filter(|p| p.separation.is_some()).count()
    }

    pub fn unseparated(&self) -> Vec<&Unseparated> {
        self.pairs.iter().filter(|p| p.separation.is_none()).collect()
    }

    pub fn all_separated(&self) -> bool {
        self.pairs.iter().all(|p| p.separation.is_some())
    }
}

fn all_paths(level: usize) -> Vec<PathPrefix> {
    (0..1u32 << level)
        .map(|mask| {
            PathPrefix::new(
                (0..level)
                    .map(|i| if mask >> i & 1 == 1 { crate::pascal::Step::B } else { crate::pascal::Step::A })
                    .collect(),
            )
        })
        .collect()
}

/// Continues every pair of distinct paths to `level` by minimal edges for
/// `delta` more levels and looks for a time where their k-codings differ.
pub fn faithfulness_probe(xi: &OrderingTable, level: usize, k: usize, delta: usize) -> Result<FaithfulnessReport> {
    if k == 0 || k > level {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= level, got k = {k}, level = {level}")));
    }
    if level > MAX_PROBE_LEVEL || level + delta > MAX_CONTINUED_LEVEL {
        return Err(Error::SizeCap(format!("probe at level {level} + {delta}")));
    }
    xi.check_level(level + delta)?;
    let paths = all_paths(level);
    let extended: Vec<PathPrefix> = paths.iter().map(|p| extend_minimal(xi, p, delta)).collect();

    let mut columns: HashMap<Vertex, Vec<CylSymbol>> = HashMap::new();
    let mut placed = Vec::with_capacity(extended.len());
    for e in &extended {
        let v = e.terminal();
        let h = height_u128(v) as i64;
        let r = rank_small(xi, e.steps()) as i64;
        if !columns.contains_key(&v) {
            let bottom = PathPrefix::new(crate::pascal::unrank_small(xi, v, 0));
            columns.insert(v, orbit_coding(xi, &bottom, k, 0, h - 1)?);
        }
        placed.push((v, r, h));
    }

    let mut pairs = Vec::new();
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            let (vp, rp, hp) = placed[i];
            let (vq, rq, hq) = placed[j];
            let (cp, cq) = (&columns[&vp], &columns[&vq]);
            let t0 = -rp.min(rq);
            let t1 = (hp - 1 - rp).min(hq - 1 - rq);
            let differs = |t: i64| cp[(rp + t) as usize] != cq[(rq + t) as usize];
            let mut separation = None;
            for d in 0..=t1.max(-t0) {
                if d <= t1 && differs(d) {
                    separation = Some(d);
                    break;
                }
                if d > 0 && -d >= t0 && differs(-d) {
                    separation = Some(-d);
                    break;
                }
            }
            pairs.push(PairOutcome {
                p: paths[i].clone(),
                q: paths[j].clone(),
                window: (t0, t1),
                separation,
            });
        }
    }
    Ok(FaithfulnessReport { k, level, delta, pairs })
}
