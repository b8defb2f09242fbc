//! The colouring pipeline for {2,3}-uniform linear hypergraphs in which
//! every vertex pair is covered: reserve half of the 2-edges, colour the
//! rest with `ceil(n/2)` nibble-generated matchings extended by absorption
//! over the high-degree vertex set, decompose the uncoloured remainder
//! into small absorbable matchings, and finish the unused reservoir with
//! Vizing's theorem on a fresh palette. Targets `n + 1` colours in total.
//!
//! Also home to the reordering and partition machinery for instances whose
//! edges are all large ([`reorder`], [`partition_large`]).

mod absorb;
mod bipartite;
mod leftover;
mod reorder;
mod reservoir;

pub use absorb::{absorb, AbsorbBranch, AbsorbError, AbsorbOutcome, DefectPool, ReservoirPool};
pub use bipartite::{dense_perfect_matching, hopcroft_karp};
pub use leftover::{leftover_decompose, DegreeBoundViolated, LeftoverDecomposition};
pub use reorder::{
    partition_large, reorder, Partition, PartitionOutcome, ReorderError, ReorderOutcome,
};
pub use reservoir::{reservoir, ReservoirDiagnostics, ReservoirSplit};

use crate::colouring::vizing;
use crate::hypergraph::{EdgeId, Graph, Hypergraph, PartialEdgeColouring, VertexId};
use crate::nibble::{pseudorandom_matchings, NibbleParams, TrackedFamilies};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// One runtime-checked inequality: `measured` against `bound`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    /// Direction: true means `measured <= bound` was required.
    pub upper: bool,
    pub ok: bool,
}

impl CheckRecord {
    pub fn le(name: &str, measured: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            bound,
            upper: true,
            ok: measured <= bound + 1e-9,
        }
    }

    pub fn ge(name: &str, measured: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            bound,
            upper: false,
            ok: measured >= bound - 1e-9,
        }
    }

    pub fn flag(name: &str, ok: bool) -> Self {
        Self {
            name: name.to_string(),
            measured: if ok { 1.0 } else { 0.0 },
            bound: 1.0,
            upper: false,
            ok,
        }
    }
}

/// Hierarchy constants and retry budgets for the pipeline.
///
/// The four constants must satisfy `0 < xi < kappa < gamma < eps < 1`:
/// `xi` is the typicality slack of the reservoir, `1/kappa` the number of
/// near-regular batches, `gamma` the sparsification rate / leftover degree
/// budget, and `eps` the high-degree threshold (`U` collects the vertices
/// of 2-edge degree at least `(1 - eps) n`).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EflParams {
    pub xi: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub eps: f64,
    pub seed: u64,
    pub reservoir_retries: u32,
    /// Sampled (S, T) pairs for the upper-regularity spot check.
    pub r2_samples: u32,
    /// Bipartition resamples inside the dense perfect-matching step.
    pub pm_attempts: u32,
    /// Uniform slice resamples before falling back to balanced assignment.
    pub slice_retries: u32,
    /// Knobs of the inner nibble runs (seed and completion are overridden).
    pub nibble: NibbleParams,
}

impl Default for EflParams {
    fn default() -> Self {
        Self {
            xi: 0.05,
            kappa: 0.2,
            gamma: 0.25,
            eps: 0.4,
            seed: 0,
            reservoir_retries: 100,
            r2_samples: 1000,
            pm_attempts: 100,
            slice_retries: 10,
            nibble: NibbleParams::default(),
        }
    }
}

impl EflParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), EflError> {
        let ordered = 0.0 < self.xi
            && self.xi < self.kappa
            && self.kappa < self.gamma
            && self.gamma < self.eps
            && self.eps < 1.0;
        if !ordered {
            return Err(EflError::InvalidParams(format!(
                "need 0 < xi < kappa < gamma < eps < 1, got xi={} kappa={} gamma={} eps={}",
                self.xi, self.kappa, self.gamma, self.eps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum EflError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("edge {edge} has size {size}; the pipeline needs sizes in {{2,3}}")]
    EdgeSizeOutOfRange { edge: EdgeId, size: usize },
    #[error("hypergraph is not linear: {0}")]
    NotLinear(String),
    #[error("{missing} vertex pairs are not covered by any edge")]
    NotPairCover { missing: u64 },
    #[error("typicality slack xi*n = {xi_n} is below 1")]
    SlackTooSmall { xi_n: f64 },
    #[error(
        "no reservoir passed typicality after {resamples} samples \
         (best residual {worst_residual:.2}, slack {slack:.2})"
    )]
    ReservoirFailed {
        resamples: u32,
        worst_residual: f64,
        slack: f64,
    },
    #[error("absorption failed in batch {batch} on colour {colour}: {source}")]
    Absorption {
        batch: usize,
        colour: usize,
        #[source]
        source: AbsorbError,
    },
    #[error("leftover decomposition: {0}")]
    Leftover(#[from] DegreeBoundViolated),
    #[error(transparent)]
    Nibble(#[from] crate::nibble::NibbleError),
}

/// Per-class coverage over the high-degree set `U`: perfect means every
/// class covers `U`; nearly perfect allows each class one defect and
/// each vertex of `U` at most one miss overall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CoverageFlag {
    Perfect,
    NearlyPerfect,
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageCertificate {
    /// Missed U-vertices per colour class.
    pub per_class_missed: Vec<Vec<VertexId>>,
    /// Distinct defect vertices, in class order.
    pub defect_vertices: Vec<VertexId>,
    pub flag: CoverageFlag,
}

impl CoverageCertificate {
    /// Recomputes coverage of `u` from the raw matchings. Empty classes
    /// use no colour and are exempt from the coverage requirement.
    pub fn compute(h: &Hypergraph, u: &[VertexId], classes: &[Vec<EdgeId>]) -> Self {
        let n = h.n() as usize;
        let mut covered = vec![false; n];
        let mut per_class_missed = Vec::with_capacity(classes.len());
        let mut miss_count = vec![0u32; n];
        for class in classes {
            if class.is_empty() {
                per_class_missed.push(Vec::new());
                continue;
            }
            for c in covered.iter_mut() {
                *c = false;
            }
            for &e in class {
                for &v in h.edge(e) {
                    covered[v as usize] = true;
                }
            }
            let missed: Vec<VertexId> = u
                .iter()
                .copied()
                .filter(|&v| !covered[v as usize])
                .collect();
            for &v in &missed {
                miss_count[v as usize] += 1;
            }
            per_class_missed.push(missed);
        }
        let per_class_ok = per_class_missed.iter().all(|m| m.len() <= 1);
        let per_vertex_ok = u.iter().all(|&v| miss_count[v as usize] <= 1);
        let flag = if per_class_missed.iter().all(Vec::is_empty) {
            CoverageFlag::Perfect
        } else if per_class_ok && per_vertex_ok {
            CoverageFlag::NearlyPerfect
        } else {
            CoverageFlag::Failed
        };
        let defect_vertices = per_class_missed.iter().flatten().copied().collect();
        Self {
            per_class_missed,
            defect_vertices,
            flag,
        }
    }
}

/// Full run report: every checked inequality, stage timings and counts.
#[derive(Debug, Clone, Serialize, Default)]
pub struct PipelineReport {
    pub n: u32,
    pub m: usize,
    pub u_size: usize,
    pub reservoir_size: usize,
    pub reservoir_resamples: u32,
    pub batch_count: usize,
    pub slice_method: String,
    pub nibble_classes: usize,
    pub leftover_classes: usize,
    pub palette_budget: usize,
    pub leftover_graph_edges: usize,
    pub leftover_graph_max_degree: usize,
    pub coverage: String,
    pub virtual_edges: usize,
    pub checks: Vec<CheckRecord>,
    pub timings_ms: Vec<(String, u128)>,
}

/// Output of [`main_colouring`]: the coloured classes over `h \ R`
/// (extended into R by absorption) and the uncoloured leftover graph.
#[derive(Debug, Clone)]
pub struct MainColouring {
    /// Colour classes; index = colour.
    pub classes: Vec<Vec<EdgeId>>,
    pub nibble_classes: usize,
    pub leftover_classes: usize,
    /// `ceil(n/2) + ceil(gamma^(1/3) n)`.
    pub palette_budget: usize,
    /// Edges of `h` in no class; always 2-edges.
    pub leftover_graph: Vec<EdgeId>,
    pub certificate: CoverageCertificate,
    pub report: PipelineReport,
}

fn subseed(seed: u64, tag: u64) -> u64 {
    // splitmix64 step over seed ^ tag.
    let mut z = (seed ^ tag.wrapping_mul(0x9E3779B97F4A7C15)).wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn validate_small_uniform(h: &Hypergraph) -> Result<(), EflError> {
    for (e, edge) in h.edges().iter().enumerate() {
        if edge.len() > 3 {
            return Err(EflError::EdgeSizeOutOfRange {
                edge: e as EdgeId,
                size: edge.len(),
            });
        }
    }
    crate::verify::verify_linear(h).map_err(|w| EflError::NotLinear(w.to_string()))
}

fn covered_pair_count(h: &Hypergraph) -> u64 {
    h.edges()
        .iter()
        .map(|e| (e.len() * (e.len() - 1) / 2) as u64)
        .sum()
}

/// Colours `h \ R` completely with `ceil(n/2)` nibble classes plus a small
/// number of leftover classes, every class absorbed to (nearly) cover `U`.
///
/// `h` must be a {2,3}-uniform linear hypergraph covering every vertex
/// pair (use [`efl_small_colouring`] for automatic pair completion).
pub fn main_colouring(h: &Hypergraph, params: &EflParams) -> Result<MainColouring, EflError> {
    params.validate()?;
    validate_small_uniform(h)?;
    let n = h.n() as usize;
    let total_pairs = (n as u64) * (n as u64 - 1) / 2;
    let covered = covered_pair_count(h);
    if covered != total_pairs {
        return Err(EflError::NotPairCover {
            missing: total_pairs - covered,
        });
    }

    let mut timings: Vec<(String, u128)> = Vec::new();
    let mut checks: Vec<CheckRecord> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(subseed(params.seed, 1));

    // Degree identity n - 1 = 2 d_H(v) - d_G(v), exact on pair covers.
    let degree_g: Vec<u32> = {
        let mut d = vec![0u32; n];
        for edge in h.edges() {
            if edge.len() == 2 {
                d[edge[0] as usize] += 1;
                d[edge[1] as usize] += 1;
            }
        }
        d
    };
    let identity_ok = (0..n)
        .all(|v| 2 * h.degree(v as VertexId) as i64 - degree_g[v] as i64 == n as i64 - 1);
    checks.push(CheckRecord::flag("pipeline.degree_identity", identity_ok));

    // Stage 1: reservoir.
    let t0 = std::time::Instant::now();
    let split = reservoir::reservoir(h, params, &mut rng)?;
    timings.push(("reservoir".into(), t0.elapsed().as_millis()));
    checks.extend(split.diagnostics.checks.iter().cloned());
    let u = split.high_degree.clone();
    let in_u: Vec<bool> = {
        let mut b = vec![false; n];
        for &v in &u {
            b[v as usize] = true;
        }
        b
    };
    let in_r: Vec<bool> = {
        let mut b = vec![false; h.m()];
        for &e in &split.reservoir {
            b[e as usize] = true;
        }
        b
    };
    let rest: Vec<EdgeId> = (0..h.m() as EdgeId)
        .filter(|&e| !in_r[e as usize])
        .collect();

    // Stage 2: partition h \ R into near-regular batches.
    let t0 = std::time::Instant::now();
    let batch_count = (1.0 / params.kappa).ceil() as usize;
    let (batches, slice_method, slice_check) =
        partition_batches(h, &rest, batch_count, params, &mut rng);
    checks.push(slice_check);
    timings.push(("batching".into(), t0.elapsed().as_millis()));

    // Colour budget.
    let k1 = n.div_ceil(2);
    let leftover_budget = (params.gamma.cbrt() * n as f64).ceil() as usize;
    let palette_budget = k1 + leftover_budget;
    let mut batch_sizes = vec![k1 / batch_count; batch_count];
    for slot in batch_sizes.iter_mut().take(k1 % batch_count) {
        *slot += 1;
    }

    // Sparsify only in the dense-absorption regime, where the deliberate
    // extra misses keep the residual high-degree sets usable.
    let sparsify = if (u.len() as f64) >= 0.75 * n as f64 {
        params.gamma
    } else {
        0.0
    };

    let mut pool = ReservoirPool::new(h, &split.reservoir);
    let mut defects = DefectPool::full(n, &u);
    let mut classes: Vec<Vec<EdgeId>> = Vec::with_capacity(palette_budget);
    let mut coloured_edge = vec![false; h.m()];
    let mut ab3_all_ok = true;

    // Stage 3: per batch, nibble out the matchings and absorb each.
    let t0 = std::time::Instant::now();
    let mut coloured_here = vec![0u32; n];
    let mut cum_batch_degree = vec![0u32; n];
    let mut m2_worst: f64 = 0.0;
    for (i, batch) in batches.iter().enumerate() {
        let d = batch_sizes[i];
        if d == 0 || batch.is_empty() {
            classes.resize(classes.len() + d, Vec::new());
            continue;
        }
        // Sub-hypergraph on the batch edges; ascending ids stay canonical.
        let mut local_ids = batch.clone();
        local_ids.sort_unstable();
        let sub = Hypergraph::from_canonical(
            h.n(),
            local_ids.iter().map(|&e| h.edge(e).to_vec()).collect(),
        );
        for &e in &local_ids {
            for &v in h.edge(e) {
                cum_batch_degree[v as usize] += 1;
            }
        }
        // Tracked families: reservoir neighbourhoods split by U, plus U and
        // the current defect-eligible set.
        let families = tracked_families(h, &pool, &u, &in_u, &defects);
        let mut nibble = params.nibble;
        nibble.seed = subseed(params.seed, 100 + i as u64);
        nibble.completion = true;
        let report = pseudorandom_matchings(&sub, d as u32, sparsify, &families, &nibble)?;
        // AB3 spot check: every tracked set within gamma |S| ± kappa n of
        // its expected residue.
        for defect in &report.vertex_defects {
            let target = sparsify * defect.set_size as f64;
            let slackn = params.kappa * n as f64;
            if (defect.max as f64) > target + slackn || (defect.min as f64) < target - slackn {
                ab3_all_ok = false;
            }
        }
        for (c, matching) in report.matchings.iter().enumerate() {
            let global: Vec<EdgeId> = matching
                .edge_ids()
                .iter()
                .map(|&local| local_ids[local as usize])
                .collect();
            if global.is_empty() {
                // An empty class uses no colour; absorbing it would burn
                // reservoir edges for nothing.
                classes.push(Vec::new());
                continue;
            }
            let outcome = absorb(
                h,
                &global,
                &mut pool,
                &mut defects,
                &u,
                &in_u,
                params.pm_attempts,
                &mut rng,
            )
            .map_err(|source| EflError::Absorption {
                batch: i,
                colour: classes.len() + c,
                source,
            })?;
            for &e in &outcome.matching {
                debug_assert!(!coloured_edge[e as usize], "classes must be edge-disjoint");
                coloured_edge[e as usize] = true;
            }
            // Only the non-reservoir part counts toward the batch-degree
            // bookkeeping.
            for &e in &global {
                for &v in h.edge(e) {
                    coloured_here[v as usize] += 1;
                }
            }
            classes.push(outcome.matching);
        }
        // M2-style bookkeeping: both the reservoir usage and the uncoloured
        // batch degree stay below (gamma + 3 kappa) * (colours so far).
        let coloured_so_far: usize = batch_sizes[..=i].iter().sum();
        let bound = (params.gamma + 3.0 * params.kappa) * coloured_so_far as f64;
        let worst_r = pool.max_used() as f64;
        let worst_h = (0..n)
            .map(|v| cum_batch_degree[v] - coloured_here[v].min(cum_batch_degree[v]))
            .max()
            .unwrap_or(0) as f64;
        m2_worst = m2_worst
            .max(worst_r / bound.max(1.0))
            .max(worst_h / bound.max(1.0));
    }
    timings.push(("batch_colouring".into(), t0.elapsed().as_millis()));
    checks.push(CheckRecord::le("pipeline.M2_degree_ratio", m2_worst, 1.0));
    checks.push(CheckRecord::flag(
        "pipeline.AB3_pseudorandomness",
        ab3_all_ok,
    ));

    // Stage 4: decompose and absorb the uncoloured remainder of h \ R.
    let t0 = std::time::Instant::now();
    let remainder: Vec<EdgeId> = rest
        .iter()
        .copied()
        .filter(|&e| !coloured_edge[e as usize])
        .collect();
    let decomposition = leftover_decompose(h, &remainder, params.gamma)?;
    checks.push(CheckRecord::le(
        "pipeline.leftover_class_count",
        decomposition.matchings.len() as f64,
        decomposition.count_bound as f64,
    ));
    let leftover_classes = decomposition.matchings.len();
    for (j, small) in decomposition.matchings.iter().enumerate() {
        if small.is_empty() {
            classes.push(Vec::new());
            continue;
        }
        let outcome = absorb(
            h,
            small,
            &mut pool,
            &mut defects,
            &u,
            &in_u,
            params.pm_attempts,
            &mut rng,
        )
        .map_err(|source| EflError::Absorption {
            batch: batch_count,
            colour: k1 + j,
            source,
        })?;
        for &e in &outcome.matching {
            debug_assert!(!coloured_edge[e as usize], "classes must be edge-disjoint");
            coloured_edge[e as usize] = true;
        }
        classes.push(outcome.matching);
    }
    timings.push(("leftover_colouring".into(), t0.elapsed().as_millis()));

    // Leftover graph: everything uncoloured (a subset of R, hence 2-edges).
    let leftover_graph: Vec<EdgeId> = (0..h.m() as EdgeId)
        .filter(|&e| !coloured_edge[e as usize])
        .collect();
    debug_assert!(leftover_graph.iter().all(|&e| h.edge(e).len() == 2));
    let mut leftover_degree = vec![0u32; n];
    for &e in &leftover_graph {
        for &v in h.edge(e) {
            leftover_degree[v as usize] += 1;
        }
    }
    let leftover_max_degree = leftover_degree.iter().copied().max().unwrap_or(0) as usize;
    let degree_target = n as f64 - k1 as f64 - leftover_budget as f64;
    checks.push(CheckRecord::le(
        "pipeline.leftover_graph_max_degree",
        leftover_max_degree as f64,
        degree_target.max(0.0),
    ));

    let certificate = CoverageCertificate::compute(h, &u, &classes);
    checks.push(CheckRecord::flag(
        "pipeline.coverage_nearly_perfect",
        certificate.flag != CoverageFlag::Failed,
    ));

    let report = PipelineReport {
        n: h.n(),
        m: h.m(),
        u_size: u.len(),
        reservoir_size: split.reservoir.len(),
        reservoir_resamples: split.diagnostics.resamples,
        batch_count,
        slice_method,
        nibble_classes: k1,
        leftover_classes,
        palette_budget,
        leftover_graph_edges: leftover_graph.len(),
        leftover_graph_max_degree: leftover_max_degree,
        coverage: format!("{:?}", certificate.flag),
        virtual_edges: 0,
        checks,
        timings_ms: timings,
    };
    Ok(MainColouring {
        classes,
        nibble_classes: k1,
        leftover_classes,
        palette_budget,
        leftover_graph,
        certificate,
        report,
    })
}

/// Splits `edges` into `count` batches with per-vertex degrees close to
/// `degree / count`. Uniform assignment is tried first; if its typicality
/// check keeps failing, a deterministic balanced assignment takes over.
fn partition_batches(
    h: &Hypergraph,
    edges: &[EdgeId],
    count: usize,
    params: &EflParams,
    rng: &mut ChaCha8Rng,
) -> (Vec<Vec<EdgeId>>, String, CheckRecord) {
    let n = h.n() as usize;
    let mut degree = vec![0u32; n];
    for &e in edges {
        for &v in h.edge(e) {
            degree[v as usize] += 1;
        }
    }
    let tolerance = |expected: f64| 7.0 * params.xi * expected.max(1.0);

    let check = |batches: &Vec<Vec<EdgeId>>| -> f64 {
        // Worst deviation of a batch degree from its expectation, in units
        // of the allowed tolerance.
        let mut worst = 0f64;
        let mut batch_degree = vec![0u32; n];
        for batch in batches {
            for d in batch_degree.iter_mut() {
                *d = 0;
            }
            for &e in batch {
                for &v in h.edge(e) {
                    batch_degree[v as usize] += 1;
                }
            }
            for v in 0..n {
                let expected = degree[v] as f64 / count as f64;
                let dev = (batch_degree[v] as f64 - expected).abs();
                worst = worst.max(dev / tolerance(expected));
            }
        }
        worst
    };

    for _ in 0..params.slice_retries {
        let mut batches = vec![Vec::new(); count];
        for &e in edges {
            batches[rng.gen_range(0..count)].push(e);
        }
        let worst = check(&batches);
        if worst <= 1.0 {
            return (
                batches,
                "uniform".into(),
                CheckRecord::le("pipeline.batch_typicality_ratio", worst, 1.0),
            );
        }
    }

    // Balanced fallback: place each edge in the batch minimizing the
    // current degree load on its vertices, in seeded random order.
    let mut batches: Vec<Vec<EdgeId>> = vec![Vec::new(); count];
    let mut load = vec![0u32; count * n];
    let mut order: Vec<EdgeId> = edges.to_vec();
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    for &e in &order {
        let best = (0..count)
            .min_by_key(|&b| {
                h.edge(e)
                    .iter()
                    .map(|&v| load[b * n + v as usize])
                    .max()
                    .unwrap_or(0)
            })
            .unwrap();
        for &v in h.edge(e) {
            load[best * n + v as usize] += 1;
        }
        batches[best].push(e);
    }
    let worst = check(&batches);
    (
        batches,
        "balanced".into(),
        CheckRecord::le("pipeline.batch_typicality_ratio", worst, 1.0),
    )
}

/// Reservoir neighbourhoods of each high-degree vertex, split by U
/// membership, plus U and the defect-eligible set.
fn tracked_families(
    h: &Hypergraph,
    pool: &ReservoirPool,
    u: &[VertexId],
    in_u: &[bool],
    defects: &DefectPool,
) -> TrackedFamilies {
    let mut vertex_sets: Vec<Vec<VertexId>> = Vec::with_capacity(2 * u.len() + 2);
    for &x in u {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for (w, _) in pool.edges_at(x) {
            if in_u[w as usize] {
                inside.push(w);
            } else {
                outside.push(w);
            }
        }
        vertex_sets.push(inside);
        vertex_sets.push(outside);
    }
    vertex_sets.push(u.to_vec());
    vertex_sets.push((0..h.n()).filter(|&v| defects.contains(v)).collect());
    TrackedFamilies {
        vertex_sets,
        edge_sets: Vec::new(),
    }
}

/// Result of the end-to-end colouring.
#[derive(Debug, Clone)]
pub struct EflRun {
    /// Proper colouring of every real edge of the input.
    pub colouring: PartialEdgeColouring,
    pub total_colours: usize,
    pub n_plus_one_ok: bool,
    pub certificate: CoverageCertificate,
    pub report: PipelineReport,
}

/// Colours all of `h` (a {2,3}-uniform linear hypergraph): missing vertex
/// pairs are first padded with virtual 2-edges, the padded instance goes
/// through [`main_colouring`], and the uncoloured leftover graph is
/// finished by Vizing's theorem on a fresh palette. Virtual edges are
/// uncoloured on output.
pub fn efl_small_colouring(h: &Hypergraph, params: &EflParams) -> Result<EflRun, EflError> {
    params.validate()?;
    validate_small_uniform(h)?;
    let n = h.n() as usize;

    // Pad to a pair cover with virtual 2-edges.
    let mut covered = vec![false; n * n];
    for edge in h.edges() {
        for i in 0..edge.len() {
            for j in i + 1..edge.len() {
                covered[edge[i] as usize * n + edge[j] as usize] = true;
            }
        }
    }
    let mut edges = h.edges().to_vec();
    let mut virtual_edges = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            if !covered[a * n + b] {
                edges.push(vec![a as u32, b as u32]);
                virtual_edges += 1;
            }
        }
    }
    let padded = Hypergraph::new(h.n(), edges).expect("padded instance is valid");
    // Canonical sorting reshuffles ids; map padded ids back to real ids.
    let real_id: Vec<Option<EdgeId>> = {
        let mut by_edge: std::collections::HashMap<&[u32], EdgeId> =
            std::collections::HashMap::with_capacity(h.m());
        for (id, edge) in h.edges().iter().enumerate() {
            by_edge.insert(edge.as_slice(), id as EdgeId);
        }
        padded
            .edges()
            .iter()
            .map(|e| by_edge.get(e.as_slice()).copied())
            .collect()
    };

    let mut main = main_colouring(&padded, params)?;
    main.report.virtual_edges = virtual_edges;

    // Vizing on the leftover graph with a fresh palette.
    let t0 = std::time::Instant::now();
    let offset = main.classes.len() as u32;
    let mut colouring = PartialEdgeColouring::empty(h.m(), offset.max(1));
    for (colour, class) in main.classes.iter().enumerate() {
        for &e in class {
            if let Some(real) = real_id[e as usize] {
                colouring.assign(real, colour as u32);
            }
        }
    }
    if !main.leftover_graph.is_empty() {
        let pairs: Vec<(u32, u32)> = main
            .leftover_graph
            .iter()
            .map(|&e| {
                let edge = padded.edge(e);
                (edge[0], edge[1])
            })
            .collect();
        let graph = Graph::from_edges(padded.n(), pairs).expect("leftover is a simple graph");
        // Graph::from_edges canonicalizes; the sorted leftover ids follow
        // the same order because the host edge list is itself canonical.
        let mut sorted_leftover = main.leftover_graph.clone();
        sorted_leftover.sort_unstable();
        let vizing_colouring = vizing(&graph);
        for (local, padded_id) in sorted_leftover.iter().enumerate() {
            if let Some(real) = real_id[*padded_id as usize] {
                let c = vizing_colouring
                    .get(local as EdgeId)
                    .expect("vizing colours every edge");
                colouring.assign(real, offset + c);
            }
        }
    }
    main.report
        .timings_ms
        .push(("vizing_leftover".into(), t0.elapsed().as_millis()));

    let total_colours = colouring.colours_used();
    let n_plus_one_ok = total_colours <= n + 1;
    main.report.checks.push(CheckRecord::le(
        "pipeline.total_colours",
        total_colours as f64,
        (n + 1) as f64,
    ));
    Ok(EflRun {
        colouring,
        total_colours,
        n_plus_one_ok,
        certificate: main.certificate,
        report: main.report,
    })
}
