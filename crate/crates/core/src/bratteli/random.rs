//! Random orderings on fixed level shapes: how often a level comes out
//! uniformly ordered, exactly and by simulation.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{primitive_root, OrderedDiagram};
use crate::error::{Error, Result};
use crate::ordering::splitmix;

/// Edge multiplicities between two consecutive levels,
/// `multiplicity[source][target]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawShape")]
pub struct Shape {
    sources: usize,
    targets: usize,
    multiplicity: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawShape {
    sources: usize,
    targets: usize,
    multiplicity: Vec<Vec<u32>>,
}

impl TryFrom<RawShape> for Shape {
    type Error = Error;

    fn try_from(r: RawShape) -> Result<Self> {
        Shape::new(r.sources, r.targets, r.multiplicity)
    }
}

impl Shape {
    pub fn new(sources: usize, targets: usize, multiplicity: Vec<Vec<u32>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if sources == 0 || targets == 0 {
            return bad("a shape needs sources and targets".into());
        }
        if multiplicity.len() != sources || multiplicity.iter().any(|r| r.len() != targets) {
            return bad(format!("multiplicity must be {sources} x {targets}"));
        }
        if let Some(s) = multiplicity.iter().position(|r| r.iter().all(|&m| m == 0)) {
            return bad(format!("source {s} has no outgoing edge"));
        }
        if let Some(t) = (0..targets).find(|&t| multiplicity.iter().all(|r| r[t] == 0)) {
            return bad(format!("target {t} has no incoming edge"));
        }
        Ok(Shape { sources, targets, multiplicity })
    }

    /// `r` edges between every source and every target.
    pub fn complete(sources: usize, targets: usize, r: u32) -> Result<Self> {
        Shape::new(sources, targets, vec![vec![r; targets]; sources])
    }

    pub fn sources(&self) -> usize {
        self.sources
    }

    pub fn targets(&self) -> usize {
        self.targets
    }

    pub fn multiplicity(&self, s: usize, t: usize) -> u32 {
        self.multiplicity[s][t]
    }

    /// Sources entering `t`, each repeated by its multiplicity.
    fn incoming(&self, t: usize) -> Vec<usize> {
        (0..self.sources).flat_map(|s| std::iter::repeat(s).take(self.multiplicity[s][t] as usize)).collect()
    }
}

/// Codings of the targets under independent uniform orders on the edges
/// entering each target.
pub fn random_ordering<R: Rng + ?Sized>(shape: &Shape, rng: &mut R) -> Vec<Vec<usize>> {
    (0..shape.targets)
        .map(|t| {
            let mut c = shape.incoming(t);
            c.shuffle(rng);
            c
        })
        .collect()
}

fn key(seed: u64, trial: u64, level: u64, vertex: u64) -> u64 {
    splitmix(seed ^ splitmix(trial ^ splitmix(level ^ splitmix(vertex))))
}

/// [`random_ordering`] with one generator per target, keyed by
/// `(seed, trial, level, target)`, so results do not depend on scheduling.
fn keyed_ordering(shape: &Shape, seed: u64, trial: u64, level: u64) -> Vec<Vec<usize>> {
    (0..shape.targets)
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(key(seed, trial, level, t as u64));
            let mut c = shape.incoming(t);
            c.shuffle(&mut rng);
            c
        })
        .collect()
}

fn is_uniform(codings: &[Vec<usize>]) -> bool {
    let first = primitive_root(&codings[0]);
    codings.iter().all(|c| primitive_root(c) == first)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn multinomial(counts: &[u64]) -> BigUint {
    let total: u64 = counts.iter().sum();
    counts.iter().fold(factorial(total), |acc, &c| acc / factorial(c))
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of primitive words with letter counts `c`, where `g` is the gcd
/// of `c`.
fn primitive_words(c: &[u64], g: u64) -> BigUint {
    let mut plus = BigUint::zero();
    let mut minus = BigUint::zero();
    for d in (1..=g).filter(|d| g % d == 0) {
        let reduced: Vec<u64> = c.iter().map(|&x| x / d).collect();
        match mobius(d) {
            1 => plus += multinomial(&reduced),
            -1 => minus += multinomial(&reduced),
            _ => {}
        }
    }
    plus - minus
}

/// Probability that a level of this shape is uniformly ordered. Primitive
/// roots are unique, so the events "every coding is a power of `v`" are
/// disjoint over primitive `v`; each has probability
/// `prod_t 1 / multinomial(M_t)`, where `M_t` is the multiset entering `t`.
/// With `r` sources of multiplicity one this is `r! / (r!)^V`.
pub fn exact_uniform_probability(shape: &Shape) -> BigRational {
    let counts: Vec<Vec<u64>> = (0..shape.targets)
        .map(|t| (0..shape.sources).map(|s| u64::from(shape.multiplicity[s][t])).collect())
        .collect();
    let g0 = counts[0].iter().fold(0u64, |g, &x| g.gcd(&x));
    let base: Vec<u64> = counts[0].iter().map(|&x| x / g0).collect();
    let lead = base.iter().position(|&x| x > 0).expect("targets have edges");
    let mut g = 0u64;
    for m in &counts {
        let k = m[lead] / base[lead];
        if m.iter().zip(&base).any(|(&a, &b)| a != k * b) {
            return BigRational::zero();
        }
        g = g.gcd(&k);
    }
    let mut roots = BigUint::zero();
    for j in (1..=g).filter(|j| g % j == 0) {
        let c: Vec<u64> = base.iter().map(|&b| b * j).collect();
        roots += primitive_words(&c, j);
    }
    let denom = counts.iter().fold(BigUint::one(), |acc, m| acc * multinomial(m));
    BigRational::new(roots.into(), denom.into())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelStats {
    pub level: usize,
    pub uniform: u64,
    pub frequency: f64,
    /// Exact probability as `num/den`.
    pub exact: String,
    pub exact_f64: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub trials: u64,
    pub seed: u64,
    pub levels: Vec<LevelStats>,
    /// Partial sums of the exact probabilities over levels; a finite limit
    /// means almost surely finitely many uniform levels.
    pub borel_cantelli: Vec<f64>,
}

fn check_chain(shapes: &[Shape]) -> Result<()> {
    for (i, p) in shapes.windows(2).enumerate() {
        if p[0].targets != p[1].sources {
            return Err(Error::ShapeMismatch(format!(
                "shape {i} has {} targets but shape {} has {} sources",
                p[0].targets,
                i + 1,
                p[1].sources
            )));
        }
    }
    Ok(())
}

/// Draws `trials` independent orderings of every shape and counts
/// uniformly ordered levels.
pub fn monte_carlo_uniform(shapes: &[Shape], trials: u64, seed: u64) -> Result<MonteCarloReport> {
    check_chain(shapes)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is needed".into()));
    }
    let hits = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; shapes.len()],
            |mut acc, trial| {
                for (level, shape) in shapes.iter().enumerate() {
                    if is_uniform(&keyed_ordering(shape, seed, trial, level as u64)) {
                        acc[level] += 1;
                    }
                }
                acc
            },
        )
        .reduce(|| vec![0u64; shapes.len()], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    let mut levels = Vec::new();
    let mut borel_cantelli = Vec::new();
    let mut sum = 0.0;
    for (i, shape) in shapes.iter().enumerate() {
        let exact = exact_uniform_probability(shape);
        let exact_f64 = exact.to_f64().unwrap_or(0.0);
        sum += exact_f64;
        borel_cantelli.push(sum);
        levels.push(LevelStats {
            level: i + 1,
            uniform: hits[i],
            frequency: hits[i] as f64 / trials as f64,
            exact: exact.to_string(),
            exact_f64,
        });
    }
    Ok(MonteCarloReport { trials, seed, levels, borel_cantelli })
}

/// A Markov chain of level shapes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeProcess {
    pub shapes: Vec<Shape>,
    pub initial: Vec<f64>,
    pub transition: Vec<Vec<f64>>,
}

impl ShapeProcess {
    fn validate(&self) -> Result<()> {
        let n = self.shapes.len();
        let distribution = |p: &[f64]| {
            p.len() == n && p.iter().all(|&x| x >= 0.0) && (p.iter().sum::<f64>() - 1.0).abs() < 1e-9
        };
        if n == 0 || !distribution(&self.initial) || self.transition.len() != n {
            return Err(Error::InvalidArgument("initial law must be a distribution over the shapes".into()));
        }
        for (i, row) in self.transition.iter().enumerate() {
            if !distribution(row) {
                return Err(Error::InvalidArgument(format!("transition row {i} is not a distribution")));
            }
            for (j, &p) in row.iter().enumerate() {
                if p > 0.0 && self.shapes[i].targets != self.shapes[j].sources {
                    return Err(Error::ShapeMismatch(format!(
                        "shape {i} has {} targets but may be followed by shape {j} with {} sources",
                        self.shapes[i].targets, self.shapes[j].sources
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeProcessReport {
    /// Shape index drawn for each level.
    pub shapes: Vec<usize>,
    /// The sampled diagram; level 1 hangs off the root and level `i + 2`
    /// uses shape `shapes[i]`.
    pub diagram: OrderedDiagram,
    pub uniform: Vec<bool>,
    pub frequency: f64,
}

fn draw(p: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &x) in p.iter().enumerate() {
        acc += x;
        if u < acc {
            return i;
        }
    }
    p.iter().rposition(|&x| x > 0.0).unwrap_or(0)
}

/// Samples `levels` shapes from the chain, orders each level at random and
/// records which levels are uniformly ordered.
pub fn shape_process(process: &ShapeProcess, levels: usize, seed: u64) -> Result<ShapeProcessReport> {
    process.validate()?;
    if levels == 0 {
        return Err(Error::InvalidArgument("at least one level is needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(key(seed, u64::MAX, 0, 0));
    let mut picks = vec![draw(&process.initial, &mut rng)];
    while picks.len() < levels {
        let last = *picks.last().expect("nonempty");
        picks.push(draw(&process.transition[last], &mut rng));
    }
    let first = &process.shapes[picks[0]];
    let mut counts = vec![1, first.sources];
    let mut coding = vec![vec![vec![0]; first.sources]];
    let mut uniform = Vec::new();
    for (i, &s) in picks.iter().enumerate() {
        let shape = &process.shapes[s];
        let c = keyed_ordering(shape, seed, 0, i as u64 + 2);
        uniform.push(is_uniform(&c));
        counts.push(shape.targets);
        coding.push(c);
    }
    let diagram = OrderedDiagram::new(counts, coding)?;
    let frequency = uniform.iter().filter(|&&u| u).count() as f64 / levels as f64;
    Ok(ShapeProcessReport { shapes: picks, diagram, uniform, frequency })
}
