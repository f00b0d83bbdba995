//! Finite ordered Bratteli diagrams stored as vertex codings, with
//! telescoping, uniformly ordered levels and odometer certificates.

mod random;

use serde::{Deserialize, Serialize};

pub use random::{
    exact_uniform_probability, monte_carlo_uniform, random_ordering, shape_process, LevelStats, MonteCarloReport,
    Shape, ShapeProcess, ShapeProcessReport,
};

use crate::error::{Error, Result};
use crate::ordering::OrderingTable;
use crate::pascal::Vertex;

/// A finite ordered diagram. `coding[n-1][w]` lists the sources (ids on
/// level `n-1`) of the edges entering vertex `w` of level `n`, smallest
/// edge first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct OrderedDiagram {
    levels: Vec<usize>,
    coding: Vec<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
struct RawDiagram {
    levels: Vec<usize>,
    coding: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<RawDiagram> for OrderedDiagram {
    type Error = Error;

    fn try_from(r: RawDiagram) -> Result<Self> {
        OrderedDiagram::new(r.levels, r.coding)
    }
}

impl OrderedDiagram {
    pub fn new(levels: Vec<usize>, coding: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if levels.first() != Some(&1) {
            return bad("level 0 must have exactly one vertex".into());
        }
        if coding.len() + 1 != levels.len() {
            return bad(format!("{} levels need {} coding levels", levels.len(), levels.len() - 1));
        }
        for (i, level) in coding.iter().enumerate() {
            let n = i + 1;
            if level.len() != levels[n] || levels[n] == 0 {
                return bad(format!("level {n} lists {} codings for {} vertices", level.len(), levels[n]));
            }
            let mut seen = vec![false; levels[n - 1]];
            for (w, c) in level.iter().enumerate() {
                if c.is_empty() {
                    return bad(format!("vertex {w} of level {n} has no incoming edge"));
                }
                for &s in c {
                    if s >= levels[n - 1] {
                        return bad(format!("vertex {w} of level {n} names source {s}"));
                    }
                    seen[s] = true;
                }
            }
            if let Some(s) = seen.iter().position(|&x| !x) {
                return bad(format!("vertex {s} of level {} has no outgoing edge", n - 1));
            }
        }
        Ok(OrderedDiagram { levels, coding })
    }

    /// Vertex counts `V_0 = 1, V_1, ..., V_N`.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Index `N` of the last level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn codings(&self, n: usize) -> &[Vec<usize>] {
        &self.coding[n - 1]
    }
}

/// The coding `c(w)` of vertex `w` on level `n`.
pub fn vertex_coding(d: &OrderedDiagram, n: usize, w: usize) -> Result<&[usize]> {
    if n == 0 || n > d.depth() || w >= d.levels[n] {
        return Err(Error::InvalidArgument(format!("no vertex {w} on level {n}")));
    }
    Ok(&d.coding[n - 1][w])
}

/// Shortest `v` with `w = v^k`.
pub fn primitive_root(w: &[usize]) -> &[usize] {
    let n = w.len();
    (1..=n)
        .find(|&p| n % p == 0 && w.chunks(p).all(|c| c == &w[..p]))
        .map_or(w, |p| &w[..p])
}

/// The word `v` such that every coding on level `n` is a power of `v`.
pub fn is_uniformly_ordered(d: &OrderedDiagram, n: usize) -> Result<Option<Vec<usize>>> {
    if n == 0 || n > d.depth() {
        return Err(Error::InvalidArgument(format!("level {n} outside 1..={}", d.depth())));
    }
    let mut roots = d.coding[n - 1].iter().map(|c| primitive_root(c));
    let first = roots.next().expect("levels are nonempty");
    Ok(roots.all(|r| r == first).then(|| first.to_vec()))
}

/// Codings of level `to` over level `from` by repeated substitution.
fn compose(d: &OrderedDiagram, from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut cur = d.coding[to - 1].clone();
    for n in (from + 1..to).rev() {
        let lower = &d.coding[n - 1];
        cur = cur.into_iter().map(|c| c.into_iter().flat_map(|v| lower[v].iter().copied()).collect()).collect();
    }
    cur
}

/// Keeps the levels in `cuts` (increasing, from 0 to `N`); each kept level
/// is coded over the previous kept one.
pub fn telescope(d: &OrderedDiagram, cuts: &[usize]) -> Result<OrderedDiagram> {
    let ok = cuts.first() == Some(&0)
        && cuts.last() == Some(&d.depth())
        && cuts.windows(2).all(|p| p[0] < p[1]);
    if !ok {
        return Err(Error::InvalidArgument(format!("cuts {cuts:?} must rise from 0 to {}", d.depth())));
    }
    let levels = cuts.iter().map(|&c| d.levels[c]).collect();
    let coding = cuts.windows(2).map(|p| compose(d, p[0], p[1])).collect();
    OrderedDiagram::new(levels, coding)
}

/// One telescoped window `from..to` that is uniformly ordered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformWindow {
    pub from: usize,
    pub to: usize,
    pub base: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Cut levels chosen by the search, from 0 to `N`.
    pub cuts: Vec<usize>,
    pub uniform: Vec<UniformWindow>,
}

impl Certificate {
    /// Whether any window became uniformly ordered.
    pub fn found(&self) -> bool {
        !self.uniform.is_empty()
    }
}

/// Greedy search for telescopings with uniformly ordered levels. Windows
/// start at level 1 (level 1 over the single root is uniform for any
/// diagram) and grow by up to `depth` levels; the first uniform window
/// wins, otherwise a single level is cut off and the search moves on.
pub fn odometer_certificate(d: &OrderedDiagram, depth: usize) -> Certificate {
    let n = d.depth();
    let mut cuts = vec![0];
    let mut uniform = Vec::new();
    let mut a = 1.min(n);
    if a > 0 {
        cuts.push(a);
    }
    while a < n {
        let hit = (a + 1..=(a + depth.max(1)).min(n)).find_map(|b| {
            let codings = compose(d, a, b);
            let first = primitive_root(&codings[0]).to_vec();
            codings.iter().all(|c| primitive_root(c) == first.as_slice()).then_some((b, first))
        });
        match hit {
            Some((b, base)) => {
                uniform.push(UniformWindow { from: a, to: b, base });
                a = b;
            }
            None => a += 1,
        }
        cuts.push(a);
    }
    Certificate { cuts, uniform }
}

/// The Pascal graph to `level` with vertex id `y` for `(x,y)`.
pub fn pascal_as_diagram(xi: &OrderingTable, level: usize) -> Result<OrderedDiagram> {
    xi.check_level(level)?;
    let levels = (0..=level).map(|n| n + 1).collect();
    let coding = (1..=level)
        .map(|n| {
            (0..=n)
                .map(|y| {
                    let x = n - y;
                    if y == 0 {
                        vec![0]
                    } else if x == 0 {
                        vec![y - 1]
                    } else if xi.xi(x, y) == 0 {
                        vec![y - 1, y]
                    } else {
                        vec![y, y - 1]
                    }
                })
                .collect()
        })
        .collect();
    OrderedDiagram::new(levels, coding)
}

/// Vertices (as ids per level) of the path into `(n, w)` that takes the
/// first (`min`) or last edge at every level.
pub fn extreme_vertex_path(d: &OrderedDiagram, n: usize, w: usize, min: bool) -> Vec<usize> {
    let mut ids = vec![w];
    let mut cur = w;
    for m in (1..=n).rev() {
        let c = &d.coding[m - 1][cur];
        cur = if min { c[0] } else { c[c.len() - 1] };
        ids.push(cur);
    }
    ids.reverse();
    ids
}

/// Pascal vertex of id `y` on level `n`.
pub fn pascal_vertex(n: usize, y: usize) -> Vertex {
    Vertex::new(n - y, y)
}

/// Three sources and two targets coded `v2 v1 v3` and `(v2 v1 v3)^2`, over
/// a root level.
pub fn sample_uniform_level() -> OrderedDiagram {
    OrderedDiagram::new(vec![1, 3, 2], vec![vec![vec![0]; 3], vec![vec![1, 0, 2], vec![1, 0, 2, 1, 0, 2]]])
        .expect("valid")
}

/// Two top vertices `a`, `b`; a middle level coded `a`, `ab`, `b`; and the
/// uniform level of [`sample_uniform_level`] below it.
pub fn sample_stacked_uniform() -> OrderedDiagram {
    OrderedDiagram::new(
        vec![1, 2, 3, 2],
        vec![
            vec![vec![0]; 2],
            vec![vec![0], vec![0, 1], vec![1]],
            vec![vec![1, 0, 2], vec![1, 0, 2, 1, 0, 2]],
        ],
    )
    .expect("valid")
}

/// Middle codings `v1v2`, `v2v3`, `v2v3` and bottom codings `w1w2`,
/// `w1w3`: neither level is uniform, the two together are.
pub fn sample_swapped_pair() -> OrderedDiagram {
    OrderedDiagram::new(
        vec![1, 3, 3, 2],
        vec![vec![vec![0]; 3], vec![vec![0, 1], vec![1, 2], vec![1, 2]], vec![vec![0, 1], vec![0, 2]]],
    )
    .expect("valid")
}

/// `levels` copies of the substitution `p -> pq`, `q -> q'p`, `q' -> q'p`
/// below a root: the expansions of `p` and `q` never agree, so no window
/// is uniform.
pub fn doubled_thue_morse(levels: usize) -> OrderedDiagram {
    let mut counts = vec![1, 3];
    let mut coding = vec![vec![vec![0]; 3]];
    for _ in 0..levels {
        counts.push(3);
        coding.push(vec![vec![0, 1], vec![2, 0], vec![2, 0]]);
    }
    OrderedDiagram::new(counts, coding).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pascal::{extreme_path, Extremity};

    #[test]
    fn validation() {
        assert!(OrderedDiagram::new(vec![2], vec![]).is_err());
        assert!(OrderedDiagram::new(vec![1, 2], vec![vec![vec![0], vec![]]]).is_err());
        assert!(OrderedDiagram::new(vec![1, 2, 1], vec![vec![vec![0], vec![0]], vec![vec![0, 0]]]).is_err());
        let json = r#"{"levels":[1,3,2],"coding":[[[0],[0],[0]],[[1,0,2],[1,0,2,1,0,2]]]}"#;
        let d: OrderedDiagram = serde_json::from_str(json).unwrap();
        assert_eq!(d, sample_uniform_level());
        assert_eq!(serde_json::to_string(&d).unwrap(), json);
        assert!(serde_json::from_str::<OrderedDiagram>(r#"{"levels":[1,2],"coding":[[[0],[1]]]}"#).is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(primitive_root(&[1, 0, 1, 0]), &[1, 0]);
        assert_eq!(primitive_root(&[1, 0, 1]), &[1, 0, 1]);
        assert_eq!(primitive_root(&[4]), &[4]);
    }

    #[test]
    fn telescoping_identity_and_composition() {
        let d = sample_stacked_uniform();
        assert_eq!(telescope(&d, &[0, 1, 2, 3]).unwrap(), d);
        let once = telescope(&d, &[0, 1, 3]).unwrap();
        let twice = telescope(&telescope(&d, &[0, 1, 2, 3]).unwrap(), &[0, 1, 3]).unwrap();
        assert_eq!(once, twice);
        assert!(telescope(&d, &[0, 2, 1, 3]).is_err());
    }

    #[test]
    fn pascal_bridge_matches_extreme_paths() {
        let xi = OrderingTable::seeded(6);
        let d = pascal_as_diagram(&xi, 9).unwrap();
        for n in 1..=9 {
            for y in 0..=n {
                for (min, which) in [(true, Extremity::Min), (false, Extremity::Max)] {
                    let ids = extreme_vertex_path(&d, n, y, min);
                    let p = extreme_path(&xi, pascal_vertex(n, y), which).unwrap();
                    let expect: Vec<usize> = (0..=n).map(|k| p.vertex_at(k).y).collect();
                    assert_eq!(ids, expect);
                }
            }
        }
    }

    #[test]
    fn worked_diagrams() {
        let d = sample_uniform_level();
        assert_eq!(is_uniformly_ordered(&d, 2).unwrap(), Some(vec![1, 0, 2]));

        let t = telescope(&sample_stacked_uniform(), &[0, 1, 3]).unwrap();
        assert_eq!(t.codings(2), &[vec![0, 1, 0, 1], vec![0, 1, 0, 1, 0, 1, 0, 1]]);
        assert_eq!(is_uniformly_ordered(&t, 2).unwrap(), Some(vec![0, 1]));

        let s = sample_swapped_pair();
        assert_eq!(is_uniformly_ordered(&s, 2).unwrap(), None);
        assert_eq!(is_uniformly_ordered(&s, 3).unwrap(), None);
        let t = telescope(&s, &[0, 1, 3]).unwrap();
        assert_eq!(is_uniformly_ordered(&t, 2).unwrap(), Some(vec![0, 1, 1, 2]));
        let c = odometer_certificate(&s, 2);
        assert_eq!(c.uniform, vec![UniformWindow { from: 1, to: 3, base: vec![0, 1, 1, 2] }]);
    }

    #[test]
    fn thue_morse_has_no_certificate() {
        let c = odometer_certificate(&doubled_thue_morse(8), 8);
        assert!(!c.found());
        assert_eq!(c.cuts, (0..=9).collect::<Vec<_>>());
    }
}
