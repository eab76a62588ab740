//! Retrieval, stability and timing harnesses built on the distances.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{CostParams, GeometricGraph, Point};
use crate::ggd::{ggd_exact, matching_cost, InexactMatching};
use crate::gmd::gmd;
use crate::io::letter::{Distortion, Letter, LetterRecord};
use crate::planarize::{planarize, DEFAULT_EPS};

/// Top-k retrieval accuracy of one distortion level.
#[derive(Clone, Debug, PartialEq)]
pub struct RetrievalReport {
    pub distortion: Distortion,
    pub total: usize,
    /// Number of tests whose true letter is among the first `k` prototypes.
    pub hits: BTreeMap<usize, usize>,
    /// Rows are true letters, columns the nearest prototype, both alphabetical.
    pub confusion: [[usize; 15]; 15],
    pub params: CostParams<f64>,
    pub runtime_secs: f64,
}

impl RetrievalReport {
    pub fn accuracy(&self, k: usize) -> Option<f64> {
        self.hits.get(&k).map(|&h| if self.total == 0 { 0.0 } else { h as f64 / self.total as f64 })
    }

    pub fn accuracies(&self) -> BTreeMap<usize, f64> {
        self.hits.keys().map(|&k| (k, self.accuracy(k).unwrap())).collect()
    }

    pub fn is_monotone(&self) -> bool {
        let v: Vec<f64> = self.accuracies().into_values().collect();
        v.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Distance from `test` to every prototype, nearest first. Ties go to the
/// alphabetically earlier letter.
pub fn rank_prototypes(
    test: &GeometricGraph<f64>,
    prototypes: &[(Letter, GeometricGraph<f64>)],
    params: &CostParams<f64>,
) -> Result<Vec<(Letter, f64)>> {
    let mut ranked = prototypes
        .iter()
        .map(|(letter, proto)| Ok((*letter, gmd(test, proto, params)?.value)))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(ranked)
}

fn check_prototypes(prototypes: &[(Letter, GeometricGraph<f64>)]) -> Result<()> {
    for letter in Letter::ALL {
        let count = prototypes.iter().filter(|(l, _)| *l == letter).count();
        if count == 0 {
            return Err(Error::MissingPrototype(letter.as_char()));
        }
        if count > 1 {
            return Err(Error::Parse(format!("letter {letter} has {count} prototypes")));
        }
    }
    Ok(())
}

/// Ranks the prototypes for every test graph by GMD and counts how often the
/// true letter lands in the first `k`. Runs on the current rayon pool; the
/// result does not depend on scheduling.
pub fn classify_topk(
    distortion: Distortion,
    tests: &[LetterRecord],
    prototypes: &[(Letter, GeometricGraph<f64>)],
    params: &CostParams<f64>,
    ks: &[usize],
) -> Result<RetrievalReport> {
    check_prototypes(prototypes)?;
    if let Some(&k) = ks.iter().find(|&&k| k == 0) {
        return Err(Error::Parse(format!("k must be at least 1, got {k}")));
    }
    let start = Instant::now();
    let rankings: Vec<Vec<(Letter, f64)>> = tests
        .par_iter()
        .map(|t| rank_prototypes(&t.graph, prototypes, params))
        .collect::<Result<_>>()?;

    let mut hits: BTreeMap<usize, usize> = ks.iter().map(|&k| (k, 0)).collect();
    let mut confusion = [[0usize; 15]; 15];
    for (test, ranking) in tests.iter().zip(&rankings) {
        let rank = ranking.iter().position(|(l, _)| *l == test.label).expect("every letter has a prototype");
        for (&k, count) in hits.iter_mut() {
            if rank < k {
                *count += 1;
            }
        }
        confusion[test.label.index()][ranking[0].0.index()] += 1;
    }
    Ok(RetrievalReport {
        distortion,
        total: tests.len(),
        hits,
        confusion,
        params: *params,
        runtime_secs: start.elapsed().as_secs_f64(),
    })
}

/// Planarizes every test drawing in place. Drawings with collinear
/// overlapping strokes are kept as drawn; their source ids are returned.
pub fn planarize_records(records: &mut [LetterRecord]) -> Result<Vec<String>> {
    let mut kept = Vec::new();
    for r in records.iter_mut() {
        match planarize(&r.graph, DEFAULT_EPS) {
            Ok(g) => r.graph = g,
            Err(Error::CollinearOverlap { .. }) => kept.push(r.source_id.clone()),
            Err(e) => return Err(e),
        }
    }
    Ok(kept)
}

/// `distortion,k,accuracy` rows for every report.
pub fn accuracy_csv(reports: &[RetrievalReport]) -> String {
    let mut out = String::from("distortion,k,accuracy\n");
    for r in reports {
        for (k, acc) in r.accuracies() {
            writeln!(out, "{},{},{:.9}", r.distortion, k, acc).unwrap();
        }
    }
    out
}

/// 15 x 15 confusion matrix with a header row of predicted letters.
pub fn confusion_csv(report: &RetrievalReport) -> String {
    let mut out = String::from("true");
    for l in Letter::ALL {
        write!(out, ",{l}").unwrap();
    }
    out.push('\n');
    for (l, row) in Letter::ALL.iter().zip(&report.confusion) {
        write!(out, "{l}").unwrap();
        for c in row {
            write!(out, ",{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Which upper bound a stability trial is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `GMD(G, G + t) <= C_V |V| |t|`.
    GmdTranslation,
    /// `GGD(G, H) <= C_V |V| delta`, for length-preserving moves.
    GgdLiteral,
    /// `GGD(G, H) <= C_V |V| delta + 2 C_E |E| delta`, for any move of at most delta.
    GgdCorrected,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::GmdTranslation => "gmd-translation",
            BoundKind::GgdLiteral => "ggd-literal",
            BoundKind::GgdCorrected => "ggd-corrected",
        }
    }
}

/// Outcome of one stability trial.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityTrial {
    pub kind: BoundKind,
    pub delta: f64,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
    /// For perturbation trials, the literal `C_V |V| delta` bound is also
    /// recorded; it is not expected to hold.
    pub literal_bound: Option<f64>,
}

const BOUND_TOL: f64 = 1e-9;

impl StabilityTrial {
    fn new(kind: BoundKind, delta: f64, value: f64, bound: f64) -> Self {
        StabilityTrial { kind, delta, value, bound, holds: value <= bound + BOUND_TOL, literal_bound: None }
    }

    pub fn literal_holds(&self) -> Option<bool> {
        self.literal_bound.map(|b| self.value <= b + BOUND_TOL)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub kind: BoundKind,
    pub trials: usize,
    pub violations: usize,
    /// Largest `value / bound` seen (trials with a zero bound are skipped).
    pub max_ratio: f64,
    /// Perturbation trials only: how often the literal bound failed.
    pub literal_violations: Option<usize>,
}

impl StabilityReport {
    pub fn from_trials(kind: BoundKind, trials: &[StabilityTrial]) -> Self {
        let violations = trials.iter().filter(|t| !t.holds).count();
        let max_ratio = trials
            .iter()
            .filter(|t| t.bound > 0.0)
            .map(|t| t.value / t.bound)
            .fold(0.0, f64::max);
        let literal_violations = trials
            .iter()
            .any(|t| t.literal_bound.is_some())
            .then(|| trials.iter().filter(|t| t.literal_holds() == Some(false)).count());
        StabilityReport { kind, trials: trials.len(), violations, max_ratio, literal_violations }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.9},{}",
            self.kind.name(),
            self.trials,
            self.violations,
            self.max_ratio,
            self.literal_violations.map_or(String::new(), |v| v.to_string())
        )
    }

    pub const CSV_HEADER: &'static str = "bound,trials,violations,max_ratio,literal_violations";
}

/// Checks `GMD(g, g + t) <= C_V |V| |t|` (the identity bijection keeps every
/// edge length).
pub fn stability_trial_gmd(g: &GeometricGraph<f64>, t: &Point<f64>, params: &CostParams<f64>) -> Result<StabilityTrial> {
    let h = g.translate(t)?;
    let value = gmd(g, &h, params)?.value;
    let delta = t.norm();
    let bound = params.c_v() * g.vertex_count() as f64 * delta;
    Ok(StabilityTrial::new(BoundKind::GmdTranslation, delta, value, bound))
}

/// Checks the literal GGD bound for a translation by `t`, which preserves
/// every edge length.
pub fn stability_trial_ggd_translation(
    g: &GeometricGraph<f64>,
    t: &Point<f64>,
    params: &CostParams<f64>,
) -> Result<StabilityTrial> {
    let h = g.translate(t)?;
    let (value, _) = ggd_exact(g, &h, params)?;
    let delta = t.norm();
    let bound = params.c_v() * g.vertex_count() as f64 * delta;
    Ok(StabilityTrial::new(BoundKind::GgdLiteral, delta, value, bound))
}

/// Perturbs `g` by at most `delta` per vertex and checks the corrected GGD
/// bound; the literal bound is recorded alongside.
pub fn stability_trial_ggd(
    g: &GeometricGraph<f64>,
    delta: f64,
    seed: u64,
    params: &CostParams<f64>,
) -> Result<StabilityTrial> {
    let h = g.perturb(delta, seed)?;
    let (value, _) = ggd_exact(g, &h, params)?;
    let n = g.vertex_count() as f64;
    let literal = params.c_v() * n * delta;
    let corrected = literal + 2.0 * params.c_e() * g.edge_count() as f64 * delta;
    debug_assert!(value <= matching_cost(g, &h, &InexactMatching::identity(g.vertex_count()), params)? + BOUND_TOL);
    let mut trial = StabilityTrial::new(BoundKind::GgdCorrected, delta, value, corrected);
    trial.literal_bound = Some(literal);
    Ok(trial)
}

/// Random graph with `n` vertices uniform in `[0, side]^2`; each vertex pair
/// is an edge with probability `density`. Edges may cross.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, side: f64, density: f64) -> GeometricGraph<f64> {
    let vertices = (0..n)
        .map(|_| Point::new(vec![rng.gen_range(0.0..=side), rng.gen_range(0.0..=side)]).unwrap())
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    GeometricGraph::new(2, vertices, edges).unwrap()
}

/// Random graph with `n` vertices and about `avg_degree * n / 2` edges,
/// suited to large `n`.
pub fn random_sparse_graph<R: Rng>(rng: &mut R, n: usize, side: f64, avg_degree: f64) -> GeometricGraph<f64> {
    let vertices = (0..n)
        .map(|_| Point::new(vec![rng.gen_range(0.0..=side), rng.gen_range(0.0..=side)]).unwrap())
        .collect();
    let target = if n < 2 { 0 } else { ((avg_degree * n as f64 / 2.0) as usize).min(n * (n - 1) / 2) };
    let mut edges = std::collections::BTreeSet::new();
    while edges.len() < target {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    GeometricGraph::new(2, vertices, edges.into_iter().collect()).unwrap()
}

fn random_translation<R: Rng>(rng: &mut R, max: f64) -> Point<f64> {
    Point::new(vec![rng.gen_range(-max..=max), rng.gen_range(-max..=max)]).unwrap()
}

/// `trials` GMD translation trials on random graphs with at most `max_n` vertices.
pub fn run_gmd_stability(trials: usize, max_n: usize, seed: u64, params: &CostParams<f64>) -> Result<(StabilityReport, Vec<StabilityTrial>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let n = rng.gen_range(1..=max_n);
        let g = random_graph(&mut rng, n, 10.0, 0.4);
        let t = random_translation(&mut rng, 5.0);
        out.push(stability_trial_gmd(&g, &t, params)?);
    }
    Ok((StabilityReport::from_trials(BoundKind::GmdTranslation, &out), out))
}

/// `trials` GGD trials: random translations when `isometric`, otherwise
/// independent vertex perturbations.
pub fn run_ggd_stability(
    trials: usize,
    max_n: usize,
    isometric: bool,
    seed: u64,
    params: &CostParams<f64>,
) -> Result<(StabilityReport, Vec<StabilityTrial>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let n = rng.gen_range(1..=max_n);
        let g = random_graph(&mut rng, n, 10.0, 0.4);
        if isometric {
            let t = random_translation(&mut rng, 1.0);
            out.push(stability_trial_ggd_translation(&g, &t, params)?);
        } else {
            let delta = rng.gen_range(0.0..=1.0);
            let trial_seed = rng.gen();
            out.push(stability_trial_ggd(&g, delta, trial_seed, params)?);
        }
    }
    let kind = if isometric { BoundKind::GgdLiteral } else { BoundKind::GgdCorrected };
    Ok((StabilityReport::from_trials(kind, &out), out))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangleReport {
    pub triples: usize,
    pub violations: usize,
    /// Largest `d(a, c) - d(a, b) - d(b, c)` observed.
    pub max_excess: f64,
}

/// Evaluates `GMD(a, c) <= GMD(a, b) + GMD(b, c)` on random triples whose
/// sizes vary independently up to `max_n`.
pub fn triangle_experiment(triples: usize, max_n: usize, seed: u64, params: &CostParams<f64>) -> Result<TriangleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut max_excess = f64::NEG_INFINITY;
    for _ in 0..triples {
        let mut next = || {
            let n = rng.gen_range(1..=max_n);
            random_graph(&mut rng, n, 10.0, 0.4)
        };
        let (a, b, c) = (next(), next(), next());
        let excess = gmd(&a, &c, params)?.value - gmd(&a, &b, params)?.value - gmd(&b, &c, params)?.value;
        if excess > 1e-9 {
            violations += 1;
        }
        max_excess = max_excess.max(excess);
    }
    Ok(TriangleReport { triples, violations, max_excess })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub median_secs: f64,
}

/// Median wall time of `gmd` on `trials` random pairs of `n`-vertex graphs
/// for every `n` in `sizes`. Timings run one at a time.
pub fn scaling_benchmark(sizes: &[usize], trials: usize, seed: u64, params: &CostParams<f64>) -> Result<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &n in sizes {
        let mut times = Vec::with_capacity(trials.max(1));
        for _ in 0..trials.max(1) {
            let g = random_sparse_graph(&mut rng, n, 10.0, 3.0);
            let h = random_sparse_graph(&mut rng, n, 10.0, 3.0);
            let start = Instant::now();
            let r = gmd(&g, &h, params)?;
            times.push(start.elapsed().as_secs_f64());
            std::hint::black_box(r);
        }
        times.sort_by(f64::total_cmp);
        let mid = times.len() / 2;
        let median = if times.len() % 2 == 1 { times[mid] } else { 0.5 * (times[mid - 1] + times[mid]) };
        rows.push(BenchRow { n, median_secs: median });
    }
    Ok(rows)
}

pub fn bench_csv<W: Write>(rows: &[BenchRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "n,median_secs")?;
    for r in rows {
        writeln!(out, "{},{:.9}", r.n, r.median_secs)?;
    }
    Ok(())
}
