//! Absorption: extend a matching with reserved 2-edges until it covers the
//! high-degree set, up to at most one defect vertex.

use super::bipartite::dense_perfect_matching;
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbsorbError {
    #[error("greedy absorption found no free reservoir edge at vertex {vertex}")]
    GreedyExhausted { vertex: VertexId },
    #[error("no perfect matching on the residual high-degree set after {attempts} attempts")]
    NoPerfectMatching { attempts: u32 },
    #[error("no outward reservoir edge available for the parity vertex")]
    NoOutwardEdge,
    #[error("no eligible defect vertex remains")]
    NoDefectCandidate,
}

/// Reserved 2-edges still available for absorption, with usage counters.
#[derive(Debug, Clone)]
pub struct ReservoirPool {
    alive: Vec<bool>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    used_per_vertex: Vec<u32>,
    alive_count: usize,
}

impl ReservoirPool {
    pub fn new(h: &Hypergraph, reservoir: &[EdgeId]) -> Self {
        let mut alive = vec![false; h.m()];
        let mut adj = vec![Vec::new(); h.n() as usize];
        for &e in reservoir {
            alive[e as usize] = true;
            let edge = h.edge(e);
            adj[edge[0] as usize].push((edge[1], e));
            adj[edge[1] as usize].push((edge[0], e));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Self {
            alive,
            adj,
            used_per_vertex: vec![0; h.n() as usize],
            alive_count: reservoir.len(),
        }
    }

    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.alive[e as usize]
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    /// Alive reservoir edges at `v`, ascending by the other endpoint.
    pub fn edges_at(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.adj[v as usize]
            .iter()
            .copied()
            .filter(|&(_, e)| self.alive[e as usize])
    }

    /// Alive reservoir neighbours of `u` inside `U`, as a bitmap walk.
    pub fn neighbours_in(&self, v: VertexId, member: &[bool]) -> usize {
        self.edges_at(v)
            .filter(|&(w, _)| member[w as usize])
            .count()
    }

    pub fn consume(&mut self, h: &Hypergraph, e: EdgeId) {
        debug_assert!(self.alive[e as usize]);
        self.alive[e as usize] = false;
        self.alive_count -= 1;
        for &v in h.edge(e) {
            self.used_per_vertex[v as usize] += 1;
        }
    }

    /// Maximum number of reservoir edges consumed at any single vertex.
    pub fn max_used(&self) -> u32 {
        self.used_per_vertex.iter().copied().max().unwrap_or(0)
    }
}

/// Vertices of U still eligible to become a coverage defect.
#[derive(Debug, Clone)]
pub struct DefectPool {
    eligible: Vec<bool>,
    count: usize,
}

impl DefectPool {
    pub fn full(n: usize, u: &[VertexId]) -> Self {
        let mut eligible = vec![false; n];
        for &v in u {
            eligible[v as usize] = true;
        }
        Self {
            eligible,
            count: u.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.eligible[v as usize]
    }

    pub fn remove(&mut self, v: VertexId) {
        if self.eligible[v as usize] {
            self.eligible[v as usize] = false;
            self.count -= 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsorbBranch {
    /// Nothing to absorb.
    Trivial,
    /// One outward reservoir edge per missing vertex (|U| < 3n/4).
    Greedy,
    /// Perfect matching inside the residual high-degree set (|U| >= 3n/4,
    /// where outward partners are scarce).
    Dense,
}

#[derive(Debug, Clone)]
pub struct AbsorbOutcome {
    /// The extended matching (input edges plus reservoir edges), sorted.
    pub matching: Vec<EdgeId>,
    /// The reservoir edges that were added.
    pub added: Vec<EdgeId>,
    /// The uncovered high-degree vertex, if coverage is off by one.
    pub defect: Option<VertexId>,
    pub branch: AbsorbBranch,
}

/// Extends the matching `base` with reservoir edges so that it covers every
/// vertex of `u` except possibly one defect (which is then retired from the
/// defect pool). Consumes the used edges from the pool.
///
/// Below `|u| = 3n/4` missing vertices are matched outward (one reservoir
/// edge into the low-degree part each, internal fallback for stranded
/// vertices); above it, outward partners are scarce and the cover is a
/// perfect matching inside the missing set, with at most one defect.
#[allow(clippy::too_many_arguments)]
pub fn absorb(
    h: &Hypergraph,
    base: &[EdgeId],
    pool: &mut ReservoirPool,
    defects: &mut DefectPool,
    u: &[VertexId],
    in_u: &[bool],
    pm_attempts: u32,
    rng: &mut ChaCha8Rng,
) -> Result<AbsorbOutcome, AbsorbError> {
    let n = h.n() as usize;
    let mut in_base = vec![false; n];
    for &e in base {
        for &v in h.edge(e) {
            in_base[v as usize] = true;
        }
    }
    let missing: Vec<VertexId> = u
        .iter()
        .copied()
        .filter(|&v| !in_base[v as usize])
        .collect();
    if missing.is_empty() {
        return Ok(AbsorbOutcome {
            matching: base.to_vec(),
            added: Vec::new(),
            defect: None,
            branch: AbsorbBranch::Trivial,
        });
    }

    let mut added: Vec<EdgeId> = Vec::new();
    let mut defect = None;
    let branch;
    if (u.len() as f64) < 0.75 * n as f64 {
        branch = AbsorbBranch::Greedy;
        // One reservoir edge per missing vertex, the other end outside
        // U ∪ V(base) and outside the edges added so far. Vertices without
        // an outward partner fall back to a matching inside the missing
        // set.
        let mut blocked = in_base.clone();
        let mut order = missing.clone();
        order.sort_by_key(|&v| {
            pool.edges_at(v)
                .filter(|&(w, _)| !in_u[w as usize] && !blocked[w as usize])
                .count()
        });
        let mut stranded: Vec<VertexId> = Vec::new();
        for &v in &order {
            let pick = pool
                .edges_at(v)
                .find(|&(w, _)| !in_u[w as usize] && !blocked[w as usize]);
            match pick {
                Some((w, e)) => {
                    blocked[v as usize] = true;
                    blocked[w as usize] = true;
                    added.push(e);
                }
                None => stranded.push(v),
            }
        }
        if !stranded.is_empty() {
            // Internal fallback: match the stranded vertices among
            // themselves; an odd one out becomes a defect.
            if stranded.len() % 2 == 1 {
                let v = stranded
                    .iter()
                    .copied()
                    .find(|&v| defects.contains(v))
                    .ok_or(AbsorbError::GreedyExhausted {
                        vertex: stranded[0],
                    })?;
                defect = Some(v);
                stranded.retain(|&x| x != v);
            }
            let inner = internal_matching(pool, &stranded, pm_attempts, rng)?;
            added.extend(inner);
        }
    } else {
        branch = AbsorbBranch::Dense;
        // Possibly set one vertex aside to make the residual set even.
        let mut residual = missing.clone();
        let mut outward: Option<(VertexId, EdgeId)> = None;
        if residual.len() % 2 == 1 {
            let three_quarters = u.len() as f64 >= 0.75 * n as f64;
            if !three_quarters {
                // Cover the parity vertex with an outward reservoir edge.
                let found = residual.iter().copied().find_map(|v| {
                    pool.edges_at(v)
                        .find(|&(w, _)| !in_u[w as usize] && !in_base[w as usize])
                        .map(|(_, e)| (v, e))
                });
                match found {
                    Some((v, e)) => {
                        outward = Some((v, e));
                        residual.retain(|&x| x != v);
                    }
                    None => {
                        // Fall back to a defect from the eligible set.
                        let v = residual
                            .iter()
                            .copied()
                            .find(|&v| defects.contains(v))
                            .ok_or(AbsorbError::NoOutwardEdge)?;
                        defect = Some(v);
                        residual.retain(|&x| x != v);
                    }
                }
            } else {
                let v = residual
                    .iter()
                    .copied()
                    .find(|&v| defects.contains(v))
                    .ok_or(AbsorbError::NoDefectCandidate)?;
                defect = Some(v);
                residual.retain(|&x| x != v);
            }
        }
        // Perfect matching inside the residual set using alive reservoir
        // edges with both ends in it.
        let inner = internal_matching(pool, &residual, pm_attempts, rng)?;
        added.extend(inner);
        if let Some((_, e)) = outward {
            added.push(e);
        }
    }

    for &e in &added {
        pool.consume(h, e);
    }
    if let Some(v) = defect {
        defects.remove(v);
    }
    let mut matching: Vec<EdgeId> = base.to_vec();
    matching.extend(added.iter().copied());
    matching.sort_unstable();
    Ok(AbsorbOutcome {
        matching,
        added,
        defect,
        branch,
    })
}

/// Perfect matching on `members` using alive reservoir edges with both
/// ends inside it.
fn internal_matching(
    pool: &ReservoirPool,
    members: &[VertexId],
    attempts: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<EdgeId>, AbsorbError> {
    if members.is_empty() {
        return Ok(Vec::new());
    }
    let max = *members.iter().max().unwrap() as usize;
    let mut index = vec![u32::MAX; max + 1];
    for (i, &v) in members.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let mut inner: Vec<(u32, u32)> = Vec::new();
    let mut inner_ids: Vec<EdgeId> = Vec::new();
    for &v in members {
        for (w, e) in pool.edges_at(v) {
            if w > v && (w as usize) <= max && index[w as usize] != u32::MAX {
                inner.push((index[v as usize], index[w as usize]));
                inner_ids.push(e);
            }
        }
    }
    let chosen = dense_perfect_matching(members.len(), &inner, attempts, rng).ok_or(
        AbsorbError::NoPerfectMatching { attempts },
    )?;
    Ok(chosen.into_iter().map(|i| inner_ids[i]).collect())
}
