//! Instance families: projective planes over prime fields, degenerate
//! planes, complete graphs, Steiner triple systems (Bose and Skolem
//! constructions), Latin-square hypergraphs, the auxiliary hypergraph whose
//! matchings are partial Steiner systems, and two seeded random families.

use crate::hypergraph::{Graph, Hypergraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{0} is not prime (prime powers are not supported)")]
    NotPrime(u32),
    #[error("no Steiner triple system on {0} vertices: order must be 1 or 3 mod 6")]
    InfeasibleOrder(u32),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("instance would exceed the size limit: {0}")]
    Overflow(String),
    #[error("invalid Latin square: {0}")]
    InvalidLatinSquare(String),
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Projective plane of prime order `q`: `q*q + q + 1` points and as many
/// lines, `(q+1)`-uniform, linear, intersecting, `(q+1)`-regular.
pub fn projective_plane(q: u32) -> Result<Hypergraph, GenError> {
    if !is_prime(q) {
        return Err(GenError::NotPrime(q));
    }
    let q = q as u64;
    let n = (q * q + q + 1) as u32;
    // Points in normalized homogeneous coordinates over GF(q):
    // (1, b, c), (0, 1, c), (0, 0, 1).
    let mut points: Vec<(u64, u64, u64)> = Vec::with_capacity(n as usize);
    for b in 0..q {
        for c in 0..q {
            points.push((1, b, c));
        }
    }
    for c in 0..q {
        points.push((0, 1, c));
    }
    points.push((0, 0, 1));
    // Lines use the same normalized coordinates; incidence is orthogonality.
    let mut edges = Vec::with_capacity(n as usize);
    for &(a, b, c) in &points {
        let mut line: Vec<VertexId> = Vec::with_capacity(q as usize + 1);
        for (i, &(x, y, z)) in points.iter().enumerate() {
            if (a * x + b * y + c * z) % q == 0 {
                line.push(i as VertexId);
            }
        }
        debug_assert_eq!(line.len(), q as usize + 1);
        edges.push(line);
    }
    Ok(Hypergraph::new(n, edges).expect("plane construction is valid"))
}

/// One edge of size `n - 1` plus `n - 1` pendant 2-edges through vertex
/// `n - 1`; linear, intersecting, chromatic index `n`.
pub fn degenerate_plane(n: u32) -> Hypergraph {
    assert!(n >= 3, "degenerate plane needs n >= 3");
    let mut edges: Vec<Vec<VertexId>> = vec![(0..n - 1).collect()];
    for v in 0..n - 1 {
        edges.push(vec![v, n - 1]);
    }
    Hypergraph::new(n, edges).expect("degenerate plane is valid")
}

/// The complete graph on `n` vertices as a 2-uniform hypergraph.
pub fn complete_graph_hg(n: u32) -> Hypergraph {
    assert!(n >= 2, "complete graph needs n >= 2");
    let mut edges = Vec::with_capacity((n as usize * (n as usize - 1)) / 2);
    for a in 0..n {
        for b in a + 1..n {
            edges.push(vec![a, b]);
        }
    }
    Hypergraph::new(n, edges).expect("complete graph is valid")
}

/// The Petersen graph: the standard class-two, 3-regular test instance.
pub fn petersen() -> Graph {
    let mut pairs = Vec::with_capacity(15);
    for i in 0..5u32 {
        pairs.push((i, (i + 1) % 5)); // outer cycle
        pairs.push((i, i + 5)); // spokes
        pairs.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
    }
    Graph::from_edges(10, pairs).expect("petersen is valid")
}

/// Steiner triple system on `n` vertices: 3-uniform, every pair in exactly
/// one edge. Bose construction for `n = 3 (mod 6)`, Skolem for
/// `n = 1 (mod 6)`.
pub fn steiner_triple_system(n: u32) -> Result<Hypergraph, GenError> {
    match n % 6 {
        3 => Ok(bose(n)),
        1 if n >= 7 => Ok(skolem(n)),
        _ => Err(GenError::InfeasibleOrder(n)),
    }
}

/// Bose: vertices are `Z_m x {0,1,2}` with `m = n/3` odd, using the
/// idempotent commutative quasigroup `a o b = (a + b) * (m + 1) / 2 mod m`.
fn bose(n: u32) -> Hypergraph {
    let m = (n / 3) as u64;
    debug_assert!(m % 2 == 1);
    let half = (m + 1) / 2; // inverse of 2 mod m
    let vid = |i: u64, k: u64| (k * m + i) as VertexId;
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push(vec![vid(i, 0), vid(i, 1), vid(i, 2)]);
    }
    for i in 0..m {
        for j in i + 1..m {
            let q = (i + j) * half % m;
            for k in 0..3 {
                edges.push(vec![vid(i, k), vid(j, k), vid(q, (k + 1) % 3)]);
            }
        }
    }
    Hypergraph::new(n, edges).expect("bose construction is valid")
}

/// Skolem: vertices are `Z_{2s} x {0,1,2}` plus one extra point, using a
/// half-idempotent commutative quasigroup on `Z_{2s}`.
fn skolem(n: u32) -> Hypergraph {
    let s = ((n - 1) / 6) as u64;
    let m = 2 * s;
    // Relabel the addition table of Z_2s so that x o x = x for x < s:
    // pi(2i) = i, pi(2i+1) = s + i.
    let pi: Vec<u64> = {
        let mut pi = vec![0u64; m as usize];
        for i in 0..s {
            pi[(2 * i) as usize] = i;
            pi[(2 * i + 1) as usize] = s + i;
        }
        pi
    };
    let op = |a: u64, b: u64| pi[((a + b) % m) as usize];
    let vid = |i: u64, k: u64| (k * m + i) as VertexId;
    let infinity = (3 * m) as VertexId;
    let mut edges = Vec::new();
    for i in 0..s {
        edges.push(vec![vid(i, 0), vid(i, 1), vid(i, 2)]);
    }
    for i in 0..s {
        edges.push(vec![infinity, vid(s + i, 0), vid(i, 1)]);
        edges.push(vec![infinity, vid(s + i, 1), vid(i, 2)]);
        edges.push(vec![infinity, vid(s + i, 2), vid(i, 0)]);
    }
    for i in 0..m {
        for j in i + 1..m {
            let q = op(i, j);
            for k in 0..3 {
                edges.push(vec![vid(i, k), vid(j, k), vid(q, (k + 1) % 3)]);
            }
        }
    }
    Hypergraph::new(n, edges).expect("skolem construction is valid")
}

/// A Latin square of order `n`: an `n x n` array in which every row and
/// every column is a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinSquare {
    n: u32,
    cells: Vec<u32>,
}

impl LatinSquare {
    /// The cyclic square `L[r][c] = (r + c) mod n`.
    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1);
        let cells = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r + c) % n))
            .collect();
        Self { n, cells }
    }

    pub fn from_cells(n: u32, cells: Vec<u32>) -> Result<Self, GenError> {
        if cells.len() != (n * n) as usize {
            return Err(GenError::InvalidLatinSquare(format!(
                "expected {} cells, got {}",
                n * n,
                cells.len()
            )));
        }
        let sq = Self { n, cells };
        for r in 0..n {
            let mut seen = vec![false; n as usize];
            for c in 0..n {
                let s = sq.get(r, c);
                if s >= n || seen[s as usize] {
                    return Err(GenError::InvalidLatinSquare(format!("row {r} is not a permutation")));
                }
                seen[s as usize] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n as usize];
            for r in 0..n {
                let s = sq.get(r, c);
                if seen[s as usize] {
                    return Err(GenError::InvalidLatinSquare(format!("column {c} is not a permutation")));
                }
                seen[s as usize] = true;
            }
        }
        Ok(sq)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn get(&self, r: u32, c: u32) -> u32 {
        self.cells[(r * self.n + c) as usize]
    }
}

/// 3-partite 3-uniform hypergraph of a Latin square on `3n` vertices
/// (rows `0..n`, columns `n..2n`, symbols `2n..3n`); one edge per cell.
/// Matchings correspond to partial transversals.
pub fn latin_square_hypergraph(l: &LatinSquare) -> Hypergraph {
    let n = l.order();
    let mut edges = Vec::with_capacity((n * n) as usize);
    for r in 0..n {
        for c in 0..n {
            edges.push(vec![r, n + c, 2 * n + l.get(r, c)]);
        }
    }
    Hypergraph::new(3 * n, edges).expect("latin hypergraph is valid")
}

pub(crate) fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Enumerates k-subsets of `0..n` in lexicographic order.
pub(crate) fn k_subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k as i64 - 1;
        while i >= 0 && cur[i as usize] == n - k + i as u32 {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        cur[i] += 1;
        for j in i + 1..k as usize {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The auxiliary hypergraph whose vertices are the t-subsets of `0..n` and
/// whose edges are the t-subsets of each k-subset. A matching is a partial
/// Steiner system with parameters (t, k, n).
pub fn steiner_auxiliary(t: u32, k: u32, n: u32) -> Result<Hypergraph, GenError> {
    steiner_auxiliary_with_blocks(t, k, n).map(|(h, _)| h)
}

/// As [`steiner_auxiliary`], also returning the k-subset behind each edge id.
pub fn steiner_auxiliary_with_blocks(
    t: u32,
    k: u32,
    n: u32,
) -> Result<(Hypergraph, Vec<Vec<u32>>), GenError> {
    if !(1 <= t && t < k && k <= n) {
        return Err(GenError::BadParameter(format!(
            "need 1 <= t < k <= n, got t={t} k={k} n={n}"
        )));
    }
    const LIMIT: u64 = 2_000_000;
    let vertices = binomial(n as u64, t as u64)
        .filter(|&v| v <= LIMIT)
        .ok_or_else(|| GenError::Overflow(format!("C({n},{t})")))?;
    let edge_count = binomial(n as u64, k as u64)
        .filter(|&v| v <= LIMIT)
        .ok_or_else(|| GenError::Overflow(format!("C({n},{k})")))?;
    let t_sets = k_subsets(n, t);
    debug_assert_eq!(t_sets.len() as u64, vertices);
    let mut rank = std::collections::HashMap::with_capacity(t_sets.len());
    for (i, s) in t_sets.iter().enumerate() {
        rank.insert(s.clone(), i as u32);
    }
    let blocks = k_subsets(n, k);
    debug_assert_eq!(blocks.len() as u64, edge_count);
    let mut edges = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let mut edge: Vec<u32> = k_subsets(k, t)
            .iter()
            .map(|idxs| {
                let t_set: Vec<u32> = idxs.iter().map(|&i| block[i as usize]).collect();
                rank[&t_set]
            })
            .collect();
        edge.sort_unstable();
        edges.push(edge);
    }
    // Edges enumerated in lex order of blocks are already canonically sorted
    // by their smallest t-set ranks, but normalize anyway.
    let h = Hypergraph::new(vertices as u32, edges.clone())?;
    // Hypergraph::new sorts the edge list; recover the block order to match.
    let mut paired: Vec<(Vec<u32>, Vec<u32>)> = edges
        .into_iter()
        .map(|mut e| {
            e.sort_unstable();
            e
        })
        .zip(blocks)
        .collect();
    paired.sort_unstable();
    let blocks = paired.into_iter().map(|(_, b)| b).collect();
    Ok((h, blocks))
}

impl From<crate::hypergraph::BuildError> for GenError {
    fn from(e: crate::hypergraph::BuildError) -> Self {
        GenError::BadParameter(e.to_string())
    }
}

/// Outcome of a seeded random generator: the instance plus how much of the
/// request was achieved within the retry budget.
#[derive(Debug, Clone)]
pub struct GenOutcome {
    pub hypergraph: Hypergraph,
    pub requested: usize,
    pub achieved: usize,
    pub rejected_draws: u64,
    /// For pair covers: fraction of vertex pairs packed into triples.
    pub triple_pair_fraction: f64,
}

/// k-uniform linear hypergraph built by rejection sampling: draw uniform
/// k-sets, accept while all pairs stay at codegree <= 1. Deterministic per
/// seed; may return fewer than `target_m` edges.
pub fn random_linear(n: u32, k: u32, target_m: usize, seed: u64) -> GenOutcome {
    assert!(k >= 2, "edges must have size >= 2");
    assert!(k <= n, "edge size cannot exceed n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pair_used = PairSet::new(n);
    let mut edges: Vec<Vec<u32>> = Vec::with_capacity(target_m);
    let mut rejected: u64 = 0;
    let budget = 200 * target_m as u64 + 10_000;
    while edges.len() < target_m && rejected < budget {
        let set = sample_k_set(&mut rng, n, k);
        let ok = set
            .iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !pair_used.contains(a, b)));
        if ok {
            for i in 0..set.len() {
                for j in i + 1..set.len() {
                    pair_used.insert(set[i], set[j]);
                }
            }
            edges.push(set);
        } else {
            rejected += 1;
        }
    }
    let achieved = edges.len();
    GenOutcome {
        hypergraph: Hypergraph::new(n, edges).expect("sampled edges are valid"),
        requested: target_m,
        achieved,
        rejected_draws: rejected,
        triple_pair_fraction: 0.0,
    }
}

/// {2,3}-uniform linear hypergraph covering every vertex pair exactly once:
/// start from all 2-edges, then repeatedly merge a random triple of vertices
/// whose three pairs are all still 2-edges into a 3-edge, until the fraction
/// of pairs inside triples reaches `triple_fraction` or the draw budget
/// (50 n^2 failures) is exhausted.
pub fn random_pair_cover(n: u32, triple_fraction: f64, seed: u64) -> GenOutcome {
    assert!((0.0..=1.0).contains(&triple_fraction));
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total_pairs = (n as u64) * (n as u64 - 1) / 2;
    let mut in_triple = PairSet::new(n);
    let mut triples: Vec<Vec<u32>> = Vec::new();
    let mut pairs_in_triples: u64 = 0;
    let mut rejected: u64 = 0;
    let budget = 50 * (n as u64) * (n as u64);
    let target = (triple_fraction * total_pairs as f64).floor() as u64;
    while pairs_in_triples < target && rejected < budget {
        let set = sample_k_set(&mut rng, n, 3);
        let (a, b, c) = (set[0], set[1], set[2]);
        if in_triple.contains(a, b) || in_triple.contains(a, c) || in_triple.contains(b, c) {
            rejected += 1;
            continue;
        }
        in_triple.insert(a, b);
        in_triple.insert(a, c);
        in_triple.insert(b, c);
        triples.push(set);
        pairs_in_triples += 3;
    }
    let mut edges = triples;
    for a in 0..n {
        for b in a + 1..n {
            if !in_triple.contains(a, b) {
                edges.push(vec![a, b]);
            }
        }
    }
    let achieved = edges.len();
    GenOutcome {
        hypergraph: Hypergraph::new(n, edges).expect("pair cover is valid"),
        requested: target as usize,
        achieved,
        rejected_draws: rejected,
        triple_pair_fraction: pairs_in_triples as f64 / total_pairs as f64,
    }
}

fn sample_k_set(rng: &mut ChaCha8Rng, n: u32, k: u32) -> Vec<u32> {
    // Floyd's algorithm for a uniform k-subset.
    let mut set: Vec<u32> = Vec::with_capacity(k as usize);
    for j in n - k..n {
        let t = rng.gen_range(0..=j);
        if set.contains(&t) {
            set.push(j);
        } else {
            set.push(t);
        }
    }
    set.sort_unstable();
    set
}

/// Upper-triangular pair membership.
struct PairSet {
    n: usize,
    bits: Vec<u64>,
}

impl PairSet {
    fn new(n: u32) -> Self {
        let n = n as usize;
        Self {
            n,
            bits: vec![0; (n * n + 63) / 64],
        }
    }

    fn idx(&self, a: u32, b: u32) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a as usize * self.n + b as usize
    }

    fn contains(&self, a: u32, b: u32) -> bool {
        let i = self.idx(a, b);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, a: u32, b: u32) {
        let i = self.idx(a, b);
        self.bits[i / 64] |= 1 << (i % 64);
    }
}

/// Family tag plus parameters; the CLI's `gen` subcommand and the
/// experiment runner both dispatch through this.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GenSpec {
    ProjectivePlane { q: u32 },
    DegeneratePlane { n: u32 },
    CompleteGraph { n: u32 },
    SteinerTriple { n: u32 },
    LatinCyclic { n: u32 },
    SteinerAuxiliary { t: u32, k: u32, n: u32 },
    RandomLinear { n: u32, k: u32, target_m: usize, seed: u64 },
    RandomPairCover { n: u32, triple_fraction: f64, seed: u64 },
}

impl GenSpec {
    pub fn family_tag(&self) -> &'static str {
        match self {
            GenSpec::ProjectivePlane { .. } => "pg",
            GenSpec::DegeneratePlane { .. } => "degenerate",
            GenSpec::CompleteGraph { .. } => "complete",
            GenSpec::SteinerTriple { .. } => "sts",
            GenSpec::LatinCyclic { .. } => "latin",
            GenSpec::SteinerAuxiliary { .. } => "steiner-aux",
            GenSpec::RandomLinear { .. } => "random-linear",
            GenSpec::RandomPairCover { .. } => "paircover",
        }
    }

    pub fn generate(&self) -> Result<Hypergraph, GenError> {
        match *self {
            GenSpec::ProjectivePlane { q } => projective_plane(q),
            GenSpec::DegeneratePlane { n } => {
                if n < 3 {
                    return Err(GenError::BadParameter("degenerate plane needs n >= 3".into()));
                }
                Ok(degenerate_plane(n))
            }
            GenSpec::CompleteGraph { n } => {
                if n < 2 {
                    return Err(GenError::BadParameter("complete graph needs n >= 2".into()));
                }
                Ok(complete_graph_hg(n))
            }
            GenSpec::SteinerTriple { n } => steiner_triple_system(n),
            GenSpec::LatinCyclic { n } => {
                if n < 1 {
                    return Err(GenError::BadParameter("latin square needs n >= 1".into()));
                }
                Ok(latin_square_hypergraph(&LatinSquare::cyclic(n)))
            }
            GenSpec::SteinerAuxiliary { t, k, n } => steiner_auxiliary(t, k, n),
            GenSpec::RandomLinear { n, k, target_m, seed } => {
                if k < 2 || k > n {
                    return Err(GenError::BadParameter("need 2 <= k <= n".into()));
                }
                Ok(random_linear(n, k, target_m, seed).hypergraph)
            }
            GenSpec::RandomPairCover { n, triple_fraction, seed } => {
                if !(0.0..=1.0).contains(&triple_fraction) {
                    return Err(GenError::BadParameter("triple fraction must be in [0,1]".into()));
                }
                if n < 3 {
                    return Err(GenError::BadParameter("pair cover needs n >= 3".into()));
                }
                Ok(random_pair_cover(n, triple_fraction, seed).hypergraph)
            }
        }
    }
}
