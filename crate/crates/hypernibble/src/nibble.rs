//! Semi-random matching engines.
//!
//! The round structure: select each live edge independently with probability
//! `selection_rate / D_i`, keep the selected edges that clash with no other
//! selected edge, add them to the matching, then delete the newly covered
//! vertices and every edge touching them. `D_i` is either the measured
//! maximum degree of the residual hypergraph or follows the exponential
//! decay `D_{i+1} = exp(-rate * (k-1)) * D_i`.
//!
//! The engine runs over a host abstraction so the same code drives both an
//! explicit [`Hypergraph`] and the implicit t-wise incidence hypergraph
//! (whose edges are (layer, edge) pairs and are never materialized).

use crate::generators::steiner_auxiliary_with_blocks;
use crate::hypergraph::{EdgeId, Graph, Hypergraph, Matching, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Virtual edge budget for the implicit incidence hypergraph.
pub const INCIDENCE_EDGE_LIMIT: usize = 200_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NibbleError {
    #[error("incidence hypergraph would have {edges} edges, limit {limit}")]
    Overflow { edges: usize, limit: usize },
    #[error("edge {edge} has size {size}; this operation needs sizes in {{2,3}}")]
    EdgeSizeOutOfRange { edge: EdgeId, size: usize },
    #[error("graph contains triangle ({0}, {1}, {2})")]
    NotTriangleFree(VertexId, VertexId, VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegreeMode {
    /// Track the true maximum degree of the residual hypergraph.
    Measured,
    /// Exponential decay from the initial maximum degree.
    Formula,
}

/// Tunable knobs of the nibble process. Deterministic per seed.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NibbleParams {
    /// Per-round selection intensity; each live edge is selected with
    /// probability `selection_rate / D_i`, clamped to [0, 1].
    pub selection_rate: f64,
    pub rounds: u32,
    pub degree_mode: DegreeMode,
    pub seed: u64,
    /// Run a random greedy pass to a maximal matching after the rounds.
    pub completion: bool,
}

impl Default for NibbleParams {
    fn default() -> Self {
        Self {
            selection_rate: 0.1,
            rounds: 40,
            degree_mode: DegreeMode::Measured,
            seed: 0,
            completion: false,
        }
    }
}

impl NibbleParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Picks `rounds = ceil(4 / rate)`, so `exp(-rate * rounds) < 0.05`
    /// with margin.
    pub fn with_selection_rate(mut self, rate: f64) -> Self {
        assert!(rate > 0.0);
        self.selection_rate = rate;
        self.rounds = (4.0 / rate).ceil() as u32;
        self
    }
}

/// Tracked subset families over the host's vertices and edges.
#[derive(Debug, Clone, Default)]
pub struct TrackedFamilies {
    pub vertex_sets: Vec<Vec<VertexId>>,
    pub edge_sets: Vec<Vec<EdgeId>>,
}

/// Defect statistics of one tracked vertex set across all matchings.
#[derive(Debug, Clone, Serialize)]
pub struct VertexSetDefect {
    pub set_size: usize,
    /// min, mean, max over matchings of |S \ V(N_i)|.
    pub min: usize,
    pub mean: f64,
    pub max: usize,
}

/// Leftover statistics of one tracked edge set.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeSetDefect {
    pub set_size: usize,
    /// |F \ (N_1 ∪ ... ∪ N_D)|.
    pub leftover: usize,
}

/// Output of the matching engines. All statistics are recomputable from
/// `matchings` and the host.
#[derive(Debug, Clone)]
pub struct MatchingReport {
    pub matchings: Vec<Matching>,
    /// Sum over matchings of the number of host vertices they leave
    /// uncovered (for a single matching: its uncovered vertex count).
    pub uncovered: usize,
    /// Host vertices uncovered after each round of the first matching
    /// (monotone non-increasing by construction).
    pub uncovered_by_round: Vec<usize>,
    pub rounds_executed: u32,
    pub seed: u64,
    pub vertex_defects: Vec<VertexSetDefect>,
    pub edge_defects: Vec<EdgeSetDefect>,
}

impl MatchingReport {
    pub fn matching_sizes(&self) -> Vec<usize> {
        self.matchings.iter().map(Matching::len).collect()
    }

    /// The JSON summary emitted by the CLI: sizes, uncovered count,
    /// per-family defects, rounds and seed.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sizes": self.matching_sizes(),
            "uncovered": self.uncovered,
            "uncovered_by_round": self.uncovered_by_round,
            "rounds": self.rounds_executed,
            "seed": self.seed,
            "vertex_defects": self.vertex_defects,
            "edge_defects": self.edge_defects,
        })
    }
}

/// Host abstraction for the nibble engine.
trait NibbleHost {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn max_edge_size(&self) -> usize;
    fn push_vertices(&self, edge: usize, out: &mut Vec<usize>);
    fn initial_degree(&self, vertex: usize) -> u32;
}

impl NibbleHost for &Hypergraph {
    fn vertex_count(&self) -> usize {
        self.n() as usize
    }

    fn edge_count(&self) -> usize {
        self.m()
    }

    fn max_edge_size(&self) -> usize {
        Hypergraph::max_edge_size(self)
    }

    fn push_vertices(&self, edge: usize, out: &mut Vec<usize>) {
        out.extend(self.edge(edge as EdgeId).iter().map(|&v| v as usize));
    }

    fn initial_degree(&self, vertex: usize) -> u32 {
        self.degree(vertex as VertexId) as u32
    }
}

/// Implicit t-wise incidence hypergraph over `base`.
///
/// Virtual edge `i * m + e` is `{e} ∪ ({i} × e)`; virtual vertices are the
/// edge-vertices `0..m` followed by `t` layers of `n` vertex copies.
struct IncidenceView<'a> {
    base: &'a Hypergraph,
    t: usize,
}

impl IncidenceView<'_> {
    fn layer_of(&self, virtual_edge: usize) -> usize {
        virtual_edge / self.base.m()
    }

    fn base_edge_of(&self, virtual_edge: usize) -> usize {
        virtual_edge % self.base.m()
    }
}

impl NibbleHost for IncidenceView<'_> {
    fn vertex_count(&self) -> usize {
        self.base.m() + self.t * self.base.n() as usize
    }

    fn edge_count(&self) -> usize {
        self.base.m() * self.t
    }

    fn max_edge_size(&self) -> usize {
        self.base.max_edge_size() + 1
    }

    fn push_vertices(&self, edge: usize, out: &mut Vec<usize>) {
        let m = self.base.m();
        let n = self.base.n() as usize;
        let e = edge % m;
        let layer = edge / m;
        out.push(e);
        for &v in self.base.edge(e as EdgeId) {
            out.push(m + layer * n + v as usize);
        }
    }

    fn initial_degree(&self, vertex: usize) -> u32 {
        let m = self.base.m();
        if vertex < m {
            self.t as u32
        } else {
            self.base.degree(((vertex - m) % self.base.n() as usize) as VertexId) as u32
        }
    }
}

struct EngineOutcome {
    matching: Vec<usize>,
    covered: Vec<bool>,
    rounds_executed: u32,
    /// Count of uncovered vertices among `0..watch` after each round.
    uncovered_by_round: Vec<usize>,
}

/// Runs the nibble process on `host`. `watch` limits the per-round uncovered
/// count to the first `watch` vertices (the real vertices for the incidence
/// view, all vertices otherwise).
fn run_engine<H: NibbleHost>(
    host: &H,
    params: &NibbleParams,
    rng: &mut ChaCha8Rng,
    watch: usize,
) -> EngineOutcome {
    let n = host.vertex_count();
    let m = host.edge_count();
    let k = host.max_edge_size().max(2);
    let mut deg: Vec<u32> = (0..n).map(|v| host.initial_degree(v)).collect();
    let mut covered = vec![false; n];
    let mut alive: Vec<usize> = (0..m).collect();
    let mut matching: Vec<usize> = Vec::new();
    let mut uncovered_by_round = Vec::with_capacity(params.rounds as usize);
    let mut formula_degree = deg.iter().copied().max().unwrap_or(0) as f64;
    let mut scratch: Vec<usize> = Vec::with_capacity(k);

    // Collision stamps: owner of each vertex within the current round.
    let mut stamp = vec![u32::MAX; n];
    let mut owner = vec![usize::MAX; n];

    let mut rounds_executed = 0;
    for round in 0..params.rounds {
        if alive.is_empty() {
            break;
        }
        rounds_executed = round + 1;
        let current_degree = match params.degree_mode {
            DegreeMode::Measured => {
                let max = covered
                    .iter()
                    .zip(deg.iter())
                    .filter(|(c, _)| !**c)
                    .map(|(_, &d)| d)
                    .max()
                    .unwrap_or(0);
                max as f64
            }
            DegreeMode::Formula => formula_degree,
        };
        let p = if current_degree < 1.0 {
            1.0
        } else {
            (params.selection_rate / current_degree).min(1.0)
        };

        // Select live edges independently with probability p, by geometric
        // gap sampling to keep the rng cost proportional to the selection.
        let selected = sample_indices(rng, alive.len(), p);

        // Keep the selected edges that share no vertex with another
        // selected edge.
        let mut clash = vec![false; selected.len()];
        for (si, &ai) in selected.iter().enumerate() {
            scratch.clear();
            host.push_vertices(alive[ai], &mut scratch);
            for &v in &scratch {
                if stamp[v] == round {
                    clash[si] = true;
                    let prev = owner[v];
                    if prev != usize::MAX {
                        clash[prev] = true;
                    }
                } else {
                    stamp[v] = round;
                    owner[v] = si;
                }
            }
        }
        for (si, &ai) in selected.iter().enumerate() {
            if !clash[si] {
                let e = alive[ai];
                matching.push(e);
                scratch.clear();
                host.push_vertices(e, &mut scratch);
                for &v in &scratch {
                    covered[v] = true;
                }
            }
        }

        // Residual: drop every edge with a covered vertex.
        alive.retain(|&e| {
            scratch.clear();
            host.push_vertices(e, &mut scratch);
            if scratch.iter().any(|&v| covered[v]) {
                for &v in &scratch {
                    deg[v] -= 1;
                }
                false
            } else {
                true
            }
        });

        formula_degree *= (-params.selection_rate * (k as f64 - 1.0)).exp();
        uncovered_by_round.push(covered[..watch].iter().filter(|&&c| !c).count());
    }

    if params.completion {
        complete_greedily(host, rng, &mut alive, &mut covered, &mut matching, &mut scratch);
    }

    matching.sort_unstable();
    EngineOutcome {
        matching,
        covered,
        rounds_executed,
        uncovered_by_round,
    }
}

/// Adds edges from `alive` in random order while they stay conflict-free.
fn complete_greedily<H: NibbleHost>(
    host: &H,
    rng: &mut ChaCha8Rng,
    alive: &mut Vec<usize>,
    covered: &mut [bool],
    matching: &mut Vec<usize>,
    scratch: &mut Vec<usize>,
) {
    // Fisher-Yates over the remaining edges.
    for i in (1..alive.len()).rev() {
        let j = rng.gen_range(0..=i);
        alive.swap(i, j);
    }
    for &e in alive.iter() {
        scratch.clear();
        host.push_vertices(e, scratch);
        if scratch.iter().all(|&v| !covered[v]) {
            matching.push(e);
            for &v in scratch.iter() {
                covered[v] = true;
            }
        }
    }
    alive.clear();
}

/// Indices of a Bernoulli(p) subsample of `0..len` via geometric gaps.
fn sample_indices(rng: &mut ChaCha8Rng, len: usize, p: f64) -> Vec<usize> {
    let mut out = Vec::new();
    if len == 0 || p <= 0.0 {
        return out;
    }
    if p >= 1.0 {
        out.extend(0..len);
        return out;
    }
    let log_q = (1.0 - p).ln();
    let mut pos = 0usize;
    loop {
        let u: f64 = rng.gen();
        let gap = ((1.0 - u).ln() / log_q).floor();
        if !gap.is_finite() || gap >= (len - pos) as f64 {
            return out;
        }
        pos += gap as usize;
        out.push(pos);
        pos += 1;
        if pos >= len {
            return out;
        }
    }
}

/// The iterated nibble on a plain hypergraph. Returns one matching; the
/// per-round uncovered counts are monotone because rounds only add edges.
pub fn rodl_nibble(h: &Hypergraph, params: &NibbleParams) -> MatchingReport {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let outcome = run_engine(&h, params, &mut rng, h.n() as usize);
    let matching = Matching::new(
        outcome.matching.iter().map(|&e| e as EdgeId).collect(),
        h.n(),
    );
    let uncovered = outcome.covered.iter().filter(|&&c| !c).count();
    MatchingReport {
        matchings: vec![matching],
        uncovered,
        uncovered_by_round: outcome.uncovered_by_round,
        rounds_executed: outcome.rounds_executed,
        seed: params.seed,
        vertex_defects: Vec::new(),
        edge_defects: Vec::new(),
    }
}

/// Maximal matching by uniform random draws from the residual hypergraph.
pub fn random_greedy_matching(h: &Hypergraph, seed: u64) -> MatchingReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covered = vec![false; h.n() as usize];
    let mut alive: Vec<usize> = (0..h.m()).collect();
    let mut matching: Vec<usize> = Vec::new();
    let mut scratch = Vec::new();
    complete_greedily(&h, &mut rng, &mut alive, &mut covered, &mut matching, &mut scratch);
    matching.sort_unstable();
    let matching = Matching::new(matching.iter().map(|&e| e as EdgeId).collect(), h.n());
    let uncovered = covered.iter().filter(|&&c| !c).count();
    MatchingReport {
        matchings: vec![matching],
        uncovered,
        uncovered_by_round: Vec::new(),
        rounds_executed: 0,
        seed,
        vertex_defects: Vec::new(),
        edge_defects: Vec::new(),
    }
}

/// `D` pairwise edge-disjoint matchings of `base` via the nibble on its
/// implicit `D`-wise incidence hypergraph, with the layer-rotation pass
/// when completion is on. Shared by the pseudorandom-matching contract
/// (which pads 2-edges first) and the incidence colouring (which runs on
/// the host as is).
fn incidence_layers(
    base: &Hypergraph,
    d: u32,
    params: &NibbleParams,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Vec<EdgeId>>, EngineOutcome), NibbleError> {
    let virtual_edges = base.m().checked_mul(d as usize).unwrap_or(usize::MAX);
    if virtual_edges > INCIDENCE_EDGE_LIMIT {
        return Err(NibbleError::Overflow {
            edges: virtual_edges,
            limit: INCIDENCE_EDGE_LIMIT,
        });
    }
    let view = IncidenceView {
        base,
        t: d as usize,
    };
    let outcome = run_engine(&view, params, rng, base.m());
    let mut layers: Vec<Vec<EdgeId>> = vec![Vec::new(); d as usize];
    for &virtual_edge in &outcome.matching {
        layers[view.layer_of(virtual_edge)].push(view.base_edge_of(virtual_edge) as EdgeId);
    }
    if params.completion {
        augment_layers(base, &mut layers, rng);
    }
    Ok((layers, outcome))
}

/// As [`incidence_layers`], on the plain host (any edge sizes).
pub(crate) fn incidence_matchings(
    h: &Hypergraph,
    d: u32,
    params: &NibbleParams,
) -> Result<Vec<Vec<EdgeId>>, NibbleError> {
    assert!(d >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    incidence_layers(h, d, params, &mut rng).map(|(layers, _)| layers)
}

/// `D` pairwise edge-disjoint matchings via a nibble on the implicit
/// `D`-wise incidence hypergraph of `h` (2-edges padded to triples with
/// fresh dummy vertices), then sparsified by dropping each matched edge
/// independently with probability `sparsify`.
///
/// Layer `i` of the incidence matching becomes matching `N_i`; the report
/// carries defect statistics against the tracked families.
pub fn pseudorandom_matchings(
    h: &Hypergraph,
    d: u32,
    sparsify: f64,
    families: &TrackedFamilies,
    params: &NibbleParams,
) -> Result<MatchingReport, NibbleError> {
    assert!(d >= 1);
    assert!((0.0..=1.0).contains(&sparsify));
    for (e, edge) in h.edges().iter().enumerate() {
        if edge.len() > 3 {
            return Err(NibbleError::EdgeSizeOutOfRange {
                edge: e as EdgeId,
                size: edge.len(),
            });
        }
    }
    // Pad 2-edges with unique dummy vertices so the base is 3-uniform.
    let padded = pad_to_three_uniform(h);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (mut layers, outcome) = incidence_layers(&padded, d, params, &mut rng)?;
    // Sparsify: drop each matched edge independently.
    if sparsify > 0.0 {
        for layer in &mut layers {
            layer.retain(|_| rng.gen::<f64>() >= sparsify);
        }
    }
    let matchings: Vec<Matching> = layers
        .into_iter()
        .map(|ids| Matching::new(ids, h.n()))
        .collect();

    let report = build_report(h, matchings, families, &outcome, params.seed);
    Ok(report)
}

/// Rotation pass over the extracted layers: an uncoloured edge blocked in
/// some layer by exactly one matched edge gets placed there if the blocker
/// can move to another layer. Two passes; each move strictly grows the
/// union, so the layers stay pairwise edge-disjoint matchings.
fn augment_layers(padded: &Hypergraph, layers: &mut [Vec<EdgeId>], rng: &mut ChaCha8Rng) {
    let d = layers.len();
    let n = padded.n() as usize;
    let m = padded.m();
    const FREE: u32 = u32::MAX;
    let mut owner = vec![FREE; d * n];
    let mut layer_of = vec![FREE; m];
    for (c, layer) in layers.iter().enumerate() {
        for &e in layer {
            layer_of[e as usize] = c as u32;
            for &v in padded.edge(e) {
                owner[c * n + v as usize] = e;
            }
        }
    }
    let mut uncoloured: Vec<EdgeId> = (0..m as u32)
        .filter(|&e| layer_of[e as usize] == FREE)
        .collect();
    for i in (1..uncoloured.len()).rev() {
        let j = rng.gen_range(0..=i);
        uncoloured.swap(i, j);
    }

    for _pass in 0..2 {
        for &e in &uncoloured {
            if layer_of[e as usize] != FREE {
                continue;
            }
            let start = rng.gen_range(0..d);
            'layers: for step in 0..d {
                let c = (start + step) % d;
                // Distinct matched edges of layer c meeting e.
                let mut blocker = FREE;
                let mut blockers = 0;
                for &v in padded.edge(e) {
                    let f = owner[c * n + v as usize];
                    if f != FREE && f != blocker {
                        blocker = f;
                        blockers += 1;
                    }
                }
                match blockers {
                    0 => {
                        place(padded, &mut owner, &mut layer_of, n, e, c);
                        break 'layers;
                    }
                    1 => {
                        // Try to move the blocker to a layer where it is
                        // entirely free.
                        let f = blocker;
                        let offset = rng.gen_range(0..d);
                        for step2 in 0..d {
                            let c2 = (offset + step2) % d;
                            if c2 == c {
                                continue;
                            }
                            let free = padded
                                .edge(f)
                                .iter()
                                .all(|&v| owner[c2 * n + v as usize] == FREE);
                            if free {
                                unplace(padded, &mut owner, &mut layer_of, n, f, c);
                                place(padded, &mut owner, &mut layer_of, n, f, c2);
                                place(padded, &mut owner, &mut layer_of, n, e, c);
                                break 'layers;
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
    }

    for layer in layers.iter_mut() {
        layer.clear();
    }
    for (e, &c) in layer_of.iter().enumerate() {
        if c != FREE {
            layers[c as usize].push(e as u32);
        }
    }

    fn place(
        padded: &Hypergraph,
        owner: &mut [u32],
        layer_of: &mut [u32],
        n: usize,
        e: EdgeId,
        c: usize,
    ) {
        layer_of[e as usize] = c as u32;
        for &v in padded.edge(e) {
            owner[c * n + v as usize] = e;
        }
    }

    fn unplace(
        padded: &Hypergraph,
        owner: &mut [u32],
        layer_of: &mut [u32],
        n: usize,
        e: EdgeId,
        c: usize,
    ) {
        layer_of[e as usize] = u32::MAX;
        for &v in padded.edge(e) {
            owner[c * n + v as usize] = u32::MAX;
        }
    }
}

fn pad_to_three_uniform(h: &Hypergraph) -> Hypergraph {
    let two_edges = h.edges().iter().filter(|e| e.len() == 2).count();
    let mut next_dummy = h.n();
    let mut edges = Vec::with_capacity(h.m());
    for edge in h.edges() {
        if edge.len() == 2 {
            let mut e = edge.clone();
            e.push(next_dummy);
            next_dummy += 1;
            edges.push(e);
        } else {
            edges.push(edge.clone());
        }
    }
    debug_assert_eq!(next_dummy, h.n() + two_edges as u32);
    // Edge ids must line up with the host's, so the list is deliberately
    // not re-sorted; the padded hypergraph stays private to this module.
    Hypergraph::from_canonical(next_dummy, edges)
}

fn build_report(
    h: &Hypergraph,
    matchings: Vec<Matching>,
    families: &TrackedFamilies,
    outcome: &EngineOutcome,
    seed: u64,
) -> MatchingReport {
    let n = h.n() as usize;
    let d = matchings.len();
    // Coverage bitmaps per matching, packed in words.
    let words = n.div_ceil(64);
    let mut cover = vec![0u64; d * words];
    for (i, m) in matchings.iter().enumerate() {
        for &e in m.edge_ids() {
            for &v in h.edge(e) {
                cover[i * words + (v as usize) / 64] |= 1 << (v % 64);
            }
        }
    }
    let mut uncovered = 0usize;
    for i in 0..d {
        let covered: u32 = cover[i * words..(i + 1) * words]
            .iter()
            .map(|w| w.count_ones())
            .sum();
        uncovered += n - covered as usize;
    }

    let mut vertex_defects = Vec::with_capacity(families.vertex_sets.len());
    for set in &families.vertex_sets {
        let mut set_bits = vec![0u64; words];
        for &v in set {
            set_bits[(v as usize) / 64] |= 1 << (v % 64);
        }
        let mut min = usize::MAX;
        let mut max = 0usize;
        let mut total = 0usize;
        for i in 0..d {
            let missed: u32 = set_bits
                .iter()
                .zip(&cover[i * words..(i + 1) * words])
                .map(|(s, c)| (s & !c).count_ones())
                .sum();
            let missed = missed as usize;
            min = min.min(missed);
            max = max.max(missed);
            total += missed;
        }
        vertex_defects.push(VertexSetDefect {
            set_size: set.len(),
            min: if d == 0 { 0 } else { min },
            mean: if d == 0 { 0.0 } else { total as f64 / d as f64 },
            max,
        });
    }

    let mut in_union = vec![false; h.m()];
    for m in &matchings {
        for &e in m.edge_ids() {
            in_union[e as usize] = true;
        }
    }
    let edge_defects = families
        .edge_sets
        .iter()
        .map(|set| EdgeSetDefect {
            set_size: set.len(),
            leftover: set.iter().filter(|&&e| !in_union[e as usize]).count(),
        })
        .collect();

    MatchingReport {
        matchings,
        uncovered,
        uncovered_by_round: outcome.uncovered_by_round.clone(),
        rounds_executed: outcome.rounds_executed,
        seed,
        vertex_defects,
        edge_defects,
    }
}

/// A partial Steiner system with parameters (t, k, n) found by the nibble
/// plus a greedy completion pass on the auxiliary hypergraph.
#[derive(Debug, Clone)]
pub struct PartialSteiner {
    /// The chosen k-subsets of `0..n`.
    pub blocks: Vec<Vec<u32>>,
    /// |blocks| * C(k,t) / C(n,t).
    pub fill_fraction: f64,
    pub report: MatchingReport,
}

pub fn partial_steiner(
    t: u32,
    k: u32,
    n: u32,
    params: &NibbleParams,
) -> Result<PartialSteiner, crate::generators::GenError> {
    let (aux, blocks) = steiner_auxiliary_with_blocks(t, k, n)?;
    let mut forced = *params;
    forced.completion = true;
    let report = rodl_nibble(&aux, &forced);
    let chosen: Vec<Vec<u32>> = report.matchings[0]
        .edge_ids()
        .iter()
        .map(|&e| blocks[e as usize].clone())
        .collect();
    let fill = chosen.len() as f64 * crate::generators::binomial(k as u64, t as u64).unwrap() as f64
        / crate::generators::binomial(n as u64, t as u64).unwrap() as f64;
    Ok(PartialSteiner {
        blocks: chosen,
        fill_fraction: fill,
        report,
    })
}

/// Random greedy maximal independent set in a triangle-free graph.
#[derive(Debug, Clone)]
pub struct IndependentSetReport {
    pub vertices: Vec<VertexId>,
    /// `(n / d) * ln d` for the instance's average degree `d`.
    pub benchmark: f64,
    pub seed: u64,
}

pub fn greedy_independent_set_trianglefree(
    g: &Graph,
    seed: u64,
) -> Result<IndependentSetReport, NibbleError> {
    // Triangle check: for every edge, intersect the endpoint neighbourhoods.
    for e in g.hypergraph().edges() {
        let (a, b) = (e[0], e[1]);
        let mut i = 0;
        let mut j = 0;
        let na = g.neighbours_of(a);
        let nb = g.neighbours_of(b);
        while i < na.len() && j < nb.len() {
            match na[i].0.cmp(&nb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    return Err(NibbleError::NotTriangleFree(a, b, na[i].0));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n() as usize;
    let mut dead = vec![false; n];
    let mut pool: Vec<u32> = (0..g.n()).collect();
    let mut chosen = Vec::new();
    while !pool.is_empty() {
        let i = rng.gen_range(0..pool.len());
        let v = pool.swap_remove(i);
        if dead[v as usize] {
            continue;
        }
        chosen.push(v);
        dead[v as usize] = true;
        for &(w, _) in g.neighbours_of(v) {
            dead[w as usize] = true;
        }
    }
    chosen.sort_unstable();
    let avg_degree = if n == 0 {
        0.0
    } else {
        2.0 * g.m() as f64 / n as f64
    };
    let benchmark = if avg_degree > 1.0 {
        n as f64 / avg_degree * avg_degree.ln()
    } else {
        0.0
    };
    Ok(IndependentSetReport {
        vertices: chosen,
        benchmark,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{petersen, projective_plane, steiner_triple_system};
    use crate::oracle;
    use crate::verify::verify_matching;

    #[test]
    fn single_edge_host() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let r = rodl_nibble(&h, &NibbleParams::default().with_seed(1));
        assert!(r.matchings[0].len() <= 1);
        assert!(verify_matching(&h, r.matchings[0].edge_ids()).is_ok());
    }

    #[test]
    fn fano_matching_is_single_edge() {
        let fano = projective_plane(2).unwrap();
        for seed in 0..5 {
            let r = rodl_nibble(&fano, &NibbleParams::default().with_seed(seed));
            assert!(r.matchings[0].len() <= 1);
        }
    }

    #[test]
    fn petersen_respects_matching_number() {
        let p = petersen();
        let nu = oracle::matching_number(p.hypergraph(), 24).unwrap();
        assert_eq!(nu, 5);
        for seed in 0..10 {
            let mut params = NibbleParams::default().with_seed(seed);
            params.completion = true;
            let r = rodl_nibble(p.hypergraph(), &params);
            assert!(r.matchings[0].len() <= 5);
            assert!(verify_matching(p.hypergraph(), r.matchings[0].edge_ids()).is_ok());
        }
    }

    #[test]
    fn determinism_and_prefix_monotonicity() {
        let sts = steiner_triple_system(21).unwrap();
        let params = NibbleParams::default().with_seed(9);
        let a = rodl_nibble(&sts, &params);
        let b = rodl_nibble(&sts, &params);
        assert_eq!(a.matchings[0], b.matchings[0]);
        // Per-round uncovered counts never increase.
        assert!(a
            .uncovered_by_round
            .windows(2)
            .all(|w| w[1] <= w[0]));
        // A shorter run is a prefix of a longer one.
        let mut short = params;
        short.rounds = 5;
        let s = rodl_nibble(&sts, &short);
        assert!(s.matchings[0]
            .edge_ids()
            .iter()
            .all(|e| a.matchings[0].contains(*e)));
    }

    #[test]
    fn greedy_matching_is_maximal() {
        let sts = steiner_triple_system(9).unwrap();
        for seed in 0..8 {
            let r = random_greedy_matching(&sts, seed);
            let m = &r.matchings[0];
            assert!(verify_matching(&sts, m.edge_ids()).is_ok());
            assert!(m.len() <= 3);
            // Maximality: every edge meets the matching.
            let covered = m.covered(&sts);
            for edge in sts.edges() {
                assert!(edge.iter().any(|&v| covered[v as usize]));
            }
        }
        // A hypergraph that is itself a matching comes back whole.
        let h = Hypergraph::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(random_greedy_matching(&h, 3).matchings[0].len(), 3);
        // K_3 yields exactly one edge.
        let k3 = crate::generators::complete_graph_hg(3);
        assert_eq!(random_greedy_matching(&k3, 5).matchings[0].len(), 1);
    }

    #[test]
    fn pseudorandom_layers_are_edge_disjoint_matchings() {
        let sts = steiner_triple_system(13).unwrap();
        let params = NibbleParams::default().with_seed(4);
        let r = pseudorandom_matchings(&sts, 6, 0.1, &TrackedFamilies::default(), &params)
            .unwrap();
        assert_eq!(r.matchings.len(), 6);
        let mut seen = vec![false; sts.m()];
        for m in &r.matchings {
            assert!(verify_matching(&sts, m.edge_ids()).is_ok());
            for &e in m.edge_ids() {
                assert!(!seen[e as usize], "edge {e} in two layers");
                seen[e as usize] = true;
            }
        }
    }

    #[test]
    fn pseudorandom_with_d1_gamma0_is_a_nibble_matching() {
        let sts = steiner_triple_system(9).unwrap();
        let params = NibbleParams::default().with_seed(2);
        let r = pseudorandom_matchings(&sts, 1, 0.0, &TrackedFamilies::default(), &params)
            .unwrap();
        assert_eq!(r.matchings.len(), 1);
        assert!(verify_matching(&sts, r.matchings[0].edge_ids()).is_ok());
    }

    #[test]
    fn mixed_sizes_are_padded() {
        let h = Hypergraph::new(5, vec![vec![0, 1], vec![1, 2, 3], vec![3, 4]]).unwrap();
        let params = NibbleParams {
            completion: true,
            ..NibbleParams::default().with_seed(11)
        };
        let r = pseudorandom_matchings(&h, 3, 0.0, &TrackedFamilies::default(), &params)
            .unwrap();
        for m in &r.matchings {
            assert!(verify_matching(&h, m.edge_ids()).is_ok());
        }
        let h4 = Hypergraph::new(5, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(pseudorandom_matchings(&h4, 1, 0.0, &TrackedFamilies::default(), &params)
            .is_err());
    }

    #[test]
    fn tracked_defects_are_recomputable() {
        let sts = steiner_triple_system(9).unwrap();
        let families = TrackedFamilies {
            vertex_sets: vec![(0..9).collect()],
            edge_sets: vec![(0..sts.m() as u32).collect()],
        };
        let params = NibbleParams::default().with_seed(8);
        let r = pseudorandom_matchings(&sts, 4, 0.0, &families, &params).unwrap();
        let d = r.vertex_defects[0].clone();
        let direct: Vec<usize> = r
            .matchings
            .iter()
            .map(|m| m.uncovered_count(&sts))
            .collect();
        assert_eq!(d.max, *direct.iter().max().unwrap());
        assert_eq!(d.min, *direct.iter().min().unwrap());
        let union: usize = r.matchings.iter().map(Matching::len).sum();
        assert_eq!(r.edge_defects[0].leftover, sts.m() - union);
    }

    #[test]
    fn partial_steiner_small() {
        let ps = partial_steiner(2, 3, 7, &NibbleParams::default().with_seed(0)).unwrap();
        assert!(ps.fill_fraction <= 1.0);
        // No pair covered twice: the blocks form a linear hypergraph.
        let h = Hypergraph::new(7, ps.blocks.clone()).unwrap();
        assert!(crate::verify::verify_linear(&h).is_ok());
    }

    #[test]
    fn independent_set_examples() {
        // Edgeless: everything is chosen.
        let g = Graph::from_edges(4, vec![]).unwrap();
        let r = greedy_independent_set_trianglefree(&g, 0).unwrap();
        assert_eq!(r.vertices.len(), 4);
        // C5: every maximal independent set has size 2.
        let c5 = Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        for seed in 0..10 {
            let r = greedy_independent_set_trianglefree(&c5, seed).unwrap();
            assert_eq!(r.vertices.len(), 2);
        }
        // Petersen: alpha = 4, but maximal independent sets of size 3 exist
        // (for example {0, 3, 7}), so the greedy result lands in {3, 4}.
        let p = petersen();
        let mut best = 0;
        for seed in 0..10 {
            let r = greedy_independent_set_trianglefree(&p, seed).unwrap();
            assert!((3..=4).contains(&r.vertices.len()));
            best = best.max(r.vertices.len());
        }
        assert_eq!(best, 4);
        // Triangles are rejected with a witness.
        let tri = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            greedy_independent_set_trianglefree(&tri, 0),
            Err(NibbleError::NotTriangleFree(..))
        ));
    }

    #[test]
    fn sample_indices_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &p in &[0.0, 1e-6, 0.01, 0.5, 0.999, 1.0] {
            let s = sample_indices(&mut rng, 1000, p);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&i| i < 1000));
        }
        assert!(sample_indices(&mut rng, 0, 0.5).is_empty());
    }
}
