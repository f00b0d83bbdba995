//! One function per subcommand, each returning a [`Report`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};

use adiclab::adic::{kink_trials, KinkSummary, DEFAULT_DEPTH_CAP};
use adiclab::bratteli::{is_uniformly_ordered, monte_carlo_uniform, odometer_certificate, OrderedDiagram, Shape};
use adiclab::coding::{basic_block, basic_block_k, language_counts, symbol_census, CylSymbol};
use adiclab::factoring::{
    alternation_exclusion, decode_ordering, decompose_cd, intersection_probe, restricted_mask,
    small_subshift_orderings, PhaseOutcome,
};
use adiclab::pascal::binomial_u128;
use adiclab::{Error, OrderingSpec, OrderingTable, Vertex, Word};

use crate::report::{Report, Table};

/// Exit code for a failed command.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_resource_cap() => 3,
        Some(Error::NotFound | Error::KinkPreconditionFailed(_) | Error::WindowEscapesColumn { .. }) => 1,
        _ => 2,
    }
}

fn usage(msg: String) -> anyhow::Error {
    Error::InvalidArgument(msg).into()
}

/// Parses `--ordering`: inline JSON, a shorthand, or a path to JSON.
pub fn parse_ordering(s: &str) -> Result<OrderingTable> {
    let spec: OrderingSpec = if s.trim_start().starts_with('{') {
        serde_json::from_str(s).map_err(|e| usage(format!("ordering JSON: {e}")))?
    } else if let Some(rest) = s.strip_prefix("seeded:") {
        OrderingSpec::Seeded { seed: rest.parse().map_err(|_| usage(format!("bad seed in {s:?}")))?, bias: 0.5 }
    } else if let Some(rest) = s.strip_prefix("tree:") {
        OrderingSpec::Tree { depth: rest.parse().map_err(|_| usage(format!("bad depth in {s:?}")))? }
    } else {
        match s {
            "constant0" => OrderingSpec::Constant { bit: 0 },
            "constant1" => OrderingSpec::Constant { bit: 1 },
            "small" => return Ok(small_subshift_orderings().0),
            "small-prime" => return Ok(small_subshift_orderings().1),
            path => {
                let text = fs::read_to_string(path).map_err(|e| usage(format!("ordering {path:?}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| usage(format!("ordering file {path}: {e}")))?
            }
        }
    };
    Ok(OrderingTable::new(spec)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{what} {}: {e}", path.display())))?;
    // validation failures inside the library surface here as serde errors
    serde_json::from_str(&text).map_err(|e| usage(format!("{what} {}: {e}", path.display())))
}

fn check_budget(bytes: u128, budget: Option<usize>) -> Result<()> {
    match budget {
        Some(cap) if bytes > cap as u128 => {
            Err(Error::SizeCap(format!("block needs {bytes} bytes, budget is {cap}")).into())
        }
        _ => Ok(()),
    }
}

fn cache_path(xi: &OrderingTable, x: usize, y: usize) -> Option<PathBuf> {
    let dir = std::env::var_os("ADICLAB_CACHE_DIR")?;
    let spec = serde_json::to_string(xi.spec()).ok()?;
    let digest = Sha256::digest(format!("{spec}|{x}|{y}").as_bytes());
    Some(Path::new(&dir).join(format!("{digest:x}.block")))
}

/// The block of `(x,y)`, read from or written to the cache directory when
/// one is configured.
fn cached_block(xi: &OrderingTable, x: usize, y: usize) -> Result<Word> {
    let path = cache_path(xi, x, y);
    if let Some(p) = &path {
        if let Ok(bytes) = fs::read(p) {
            if let Ok(w) = Word::from_bytes(bytes) {
                if binomial_u128(x + y, x) == Some(w.len() as u128) {
                    return Ok(w);
                }
            }
        }
    }
    let w = basic_block(xi, x, y)?;
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            let _ = fs::create_dir_all(dir);
        }
        let _ = fs::write(p, w.as_bytes());
    }
    Ok(w)
}

#[derive(Serialize)]
struct Expected {
    length: u128,
    a: u128,
    b: u128,
}

#[derive(Serialize)]
struct BlockOut {
    vertex: Vertex,
    block: Word,
    power: String,
    length: usize,
    census: adiclab::coding::Census,
    expected: Expected,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbols: Option<Vec<String>>,
    ok: bool,
}

pub fn block(ordering: &str, x: usize, y: usize, k: Option<usize>, budget: Option<usize>) -> Result<Report> {
    let xi = parse_ordering(ordering)?;
    if x + y == 0 {
        return Err(usage("the root has no block".into()));
    }
    let length = binomial_u128(x + y, x).ok_or_else(|| Error::SizeCap(format!("C({},{x})", x + y)))?;
    let per_letter = if k.is_some() { 1 + std::mem::size_of::<CylSymbol>() as u128 } else { 1 };
    check_budget(length.saturating_mul(per_letter), budget)?;
    let w = cached_block(&xi, x, y)?;
    let symbols = match k {
        Some(k) => Some(basic_block_k(&xi, k, x, y)?.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
        None => None,
    };
    let below = |n: usize, j: usize| if n == 0 || j == usize::MAX { 0 } else { binomial_u128(n, j).unwrap_or(0) };
    let expected = Expected {
        length,
        a: below(x + y - 1, x.wrapping_sub(1)),
        b: below(x + y - 1, y.wrapping_sub(1)),
    };
    let census = symbol_census(&w);
    let ok = w.len() as u128 == expected.length && census.a as u128 == expected.a && census.b as u128 == expected.b;
    let mut text = format!("B{} = {}\n", Vertex::new(x, y), w.to_power_notation());
    let _ = writeln!(
        text,
        "length {} (C = {}), a: {} (expected {}), b: {} (expected {}), census vertex {}",
        w.len(),
        expected.length,
        census.a,
        expected.a,
        census.b,
        expected.b,
        census.vertex.map_or("none".to_string(), |v| v.to_string())
    );
    if let Some(s) = &symbols {
        let _ = writeln!(text, "{}", s.join(" "));
    }
    let out = BlockOut {
        vertex: Vertex::new(x, y),
        power: w.to_power_notation(),
        length: w.len(),
        block: w,
        census,
        expected,
        symbols,
        ok,
    };
    Ok(Report::new(&out, text, ok))
}

#[derive(Serialize)]
struct DecodeOut {
    vertex: Vertex,
    tokens: Vec<String>,
    bits: Vec<(usize, usize, u8)>,
    mask: u64,
}

pub fn decode(word: &str) -> Result<Report> {
    let w = Word::parse_power(word)?;
    let d = decode_ordering(&w)?;
    let tokens: Vec<String> = if w.as_bytes() == b"ab" {
        vec!["ab".into()]
    } else {
        decompose_cd(&w)?.iter().map(|t| t.to_string()).collect()
    };
    let mask = if d.vertex.x >= 2 && d.vertex.y >= 2 { restricted_mask(&d) } else { 0 };
    let mut text = format!("vertex {}\ntokens {}\n", d.vertex, tokens.join(" "));
    for (u, v, b) in &d.bits {
        let _ = writeln!(text, "xi({u},{v}) = {b}");
    }
    let out = DecodeOut { vertex: d.vertex, tokens, bits: d.bits, mask };
    Ok(Report::new(&out, text, true))
}

#[derive(Serialize)]
struct ComplexityRow {
    n: usize,
    count: usize,
    stabilized: bool,
    /// First level from which the count held for three levels.
    stable_from: Option<usize>,
}

#[derive(Serialize)]
struct ComplexityOut {
    level: usize,
    rows: Vec<ComplexityRow>,
}

pub fn complexity(ordering: &str, n_min: usize, n_max: usize, level: usize) -> Result<Report> {
    let xi = parse_ordering(ordering)?;
    if n_min == 0 || n_min > n_max {
        return Err(usage(format!("bad length range {n_min}..={n_max}")));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let counts = language_counts(&xi, n, level)?;
        let count = counts[level];
        let stabilized = level >= 2 && counts[level - 1] == count && counts[level - 2] == count;
        let stable_from = (2..=level).find(|&l| counts[l] > 0 && counts[l] == counts[l - 1] && counts[l] == counts[l - 2]);
        rows.push(ComplexityRow { n, count, stabilized, stable_from });
    }
    let mut text = format!("complexity up to level {level}\n");
    for r in &rows {
        let _ = writeln!(text, "n={:<4} p={:<10} {}", r.n, r.count, if r.stabilized { "stable" } else { "growing" });
    }
    let table = Table {
        header: vec!["n", "count", "stabilized", "stable_from"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.count.to_string(),
                    r.stabilized.to_string(),
                    r.stable_from.map_or(String::new(), |l| l.to_string()),
                ]
            })
            .collect(),
    };
    Ok(Report::new(&ComplexityOut { level, rows }, text, true).with_table(table))
}

#[derive(Serialize)]
struct OdometerOut {
    status: &'static str,
    levels: Vec<usize>,
    /// Levels of the input that are uniformly ordered as they stand.
    uniform_levels: Vec<usize>,
    certificate: adiclab::bratteli::Certificate,
}

pub fn odometer(path: &Path, depth: usize) -> Result<Report> {
    let d: OrderedDiagram = read_json(path, "diagram")?;
    let uniform_levels: Vec<usize> =
        (1..=d.depth()).filter(|&n| matches!(is_uniformly_ordered(&d, n), Ok(Some(_)))).collect();
    let certificate = odometer_certificate(&d, depth);
    let status = if certificate.found() { "CERTIFICATE" } else { "NO-CERTIFICATE-FOUND" };
    let mut text = format!("{status}\ncuts {:?}\n", certificate.cuts);
    for w in &certificate.uniform {
        let base: Vec<String> = w.base.iter().map(|v| format!("v{v}")).collect();
        let _ = writeln!(text, "levels {}..{} uniform with base {}", w.from, w.to, base.join(" "));
    }
    let out = OdometerOut { status, levels: d.levels().to_vec(), uniform_levels, certificate };
    Ok(Report::new(&out, text, true))
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum ShapeFile {
    One(Shape),
    Many(Vec<Shape>),
}

pub fn montecarlo(path: &Path, trials: u64, seed: u64) -> Result<Report> {
    let shapes = match read_json::<ShapeFile>(path, "shapes")? {
        ShapeFile::One(s) => vec![s],
        ShapeFile::Many(v) => v,
    };
    if shapes.is_empty() {
        return Err(usage("no shapes given".into()));
    }
    let report = monte_carlo_uniform(&shapes, trials, seed)?;
    let sigma = |p: f64| (p * (1.0 - p) / trials as f64).sqrt();
    let within: Vec<bool> = report
        .levels
        .iter()
        .map(|l| (l.frequency - l.exact_f64).abs() <= 3.0 * sigma(l.exact_f64) + f64::EPSILON)
        .collect();
    let ok = within.iter().all(|&w| w);
    let mut text = format!("{} trials, seed {}\n", trials, seed);
    for (l, bc) in report.levels.iter().zip(&report.borel_cantelli) {
        let _ = writeln!(
            text,
            "level {}: frequency {:.5}, exact {} = {:.5}, partial sum {:.5}",
            l.level, l.frequency, l.exact, l.exact_f64, bc
        );
    }
    let table = Table {
        header: vec!["level", "uniform", "trials", "frequency", "exact", "exact_f64", "within_3sigma", "partial_sum"],
        rows: report
            .levels
            .iter()
            .zip(&report.borel_cantelli)
            .zip(&within)
            .map(|((l, bc), w)| {
                vec![
                    l.level.to_string(),
                    l.uniform.to_string(),
                    trials.to_string(),
                    l.frequency.to_string(),
                    l.exact.clone(),
                    l.exact_f64.to_string(),
                    w.to_string(),
                    bc.to_string(),
                ]
            })
            .collect(),
    };
    let mut json = serde_json::to_value(&report)?;
    json["within_3sigma"] = serde_json::to_value(&within)?;
    let mut r = Report::new(&json, text, ok).with_table(table);
    r.json = json;
    Ok(r)
}

pub fn kink(ordering: Option<&str>, trials: usize, seed: u64, level: usize) -> Result<Report> {
    let fixed = ordering.map(parse_ordering).transpose()?;
    if level < 2 {
        return Err(usage("kinks need --level of at least 2".into()));
    }
    let s: KinkSummary = kink_trials(seed, trials, level, DEFAULT_DEPTH_CAP, fixed.as_ref())?;
    let mut text = format!("{} of {} kinks agree at r_n ({} skipped)\n", s.agreed, s.trials, s.skipped);
    for (case, t) in &s.cases {
        let _ = writeln!(
            text,
            "{case:<16} {:>5} trials {:>5} agree, differ at r_n-1: {}, at r_n+1: {}",
            t.trials, t.agreed, t.differs_before, t.differs_after
        );
    }
    let table = Table {
        header: vec!["case", "trials", "agreed", "differs_before", "differs_after"],
        rows: s
            .cases
            .iter()
            .map(|(c, t)| {
                vec![
                    c.clone(),
                    t.trials.to_string(),
                    t.agreed.to_string(),
                    t.differs_before.to_string(),
                    t.differs_after.to_string(),
                ]
            })
            .collect(),
    };
    let ok = s.all_agree();
    Ok(Report::new(&s, text, ok).with_table(table))
}

fn describe(p: &PhaseOutcome) -> String {
    match p {
        PhaseOutcome::Excluded { level } => format!("EXCLUDED to level {level}"),
        PhaseOutcome::Witness { level, vertex, .. } => format!("WITNESS at {vertex} (bits to level {level})"),
        PhaseOutcome::Inconclusive { level, vertex, .. } => format!("INCONCLUSIVE at {vertex} on level {level}"),
    }
}

pub fn alternation(level: usize, j: usize) -> Result<Report> {
    let v = alternation_exclusion(level, j)?;
    let verdict = if v.excluded() { "EXCLUDED" } else { "NOT-EXCLUDED" };
    let text = format!(
        "{verdict} for j = {j}\nexact phase: {}\napproximate phase (split at level {}): {}\n",
        describe(&v.exact),
        v.split_level,
        describe(&v.approximate)
    );
    let mut json = serde_json::to_value(&v)?;
    json["verdict"] = verdict.into();
    let ok = v.excluded();
    let mut r = Report::new(&json, text, ok);
    r.json = json;
    Ok(r)
}

#[derive(Serialize)]
struct SmallShiftOut {
    n: usize,
    level: usize,
    common: Vec<String>,
    /// Common windows with at least two of each letter.
    unexpected: Vec<String>,
}

pub fn smallshift(n: usize, level: usize) -> Result<Report> {
    let (xi, xi2) = small_subshift_orderings();
    let words = intersection_probe(&xi, &xi2, n, level)?;
    let expected = |w: &Word| w.count(b'a').min(w.count(b'b')) <= 1;
    let common: Vec<String> = words.iter().map(|w| w.to_power_notation()).collect();
    let unexpected: Vec<String> = words.iter().filter(|w| !expected(w)).map(|w| w.to_power_notation()).collect();
    let ok = unexpected.is_empty();
    let mut text = format!("{} common windows of length {n} up to level {level}\n", common.len());
    for w in &common {
        let _ = writeln!(text, "{w}");
    }
    if !ok {
        let _ = writeln!(text, "unexpected: {}", unexpected.join(" "));
    }
    Ok(Report::new(&SmallShiftOut { n, level, common, unexpected }, text, ok))
}
