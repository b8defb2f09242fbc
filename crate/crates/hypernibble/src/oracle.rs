//! Exact brute-force oracles: chromatic index, matching number, largest
//! intersecting subfamily, and vertex-colouring / independence oracles for
//! graphs. Backtracking with symmetry pruning; intended for desk-scale
//! instances, guarded by explicit size limits.

use crate::hypergraph::{EdgeId, Graph, Hypergraph};
use thiserror::Error;

pub const DEFAULT_CHROMATIC_LIMIT: usize = 16;
pub const DEFAULT_MATCHING_LIMIT: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("instance has {size} edges, brute-force limit is {limit}")]
pub struct TooLarge {
    pub size: usize,
    pub limit: usize,
}

/// Exact chromatic index by iterative deepening over the palette size.
pub fn chromatic_index(h: &Hypergraph, limit: usize) -> Result<u32, TooLarge> {
    if h.m() > limit {
        return Err(TooLarge {
            size: h.m(),
            limit,
        });
    }
    if h.m() == 0 {
        return Ok(0);
    }
    // Conflict graph between edges, as bitmasks.
    let adj = edge_conflicts(h);
    Ok(chromatic_number_masks(&adj))
}

/// Exact chromatic number of a graph (vertex colouring).
pub fn graph_chromatic_number(g: &Graph, limit: usize) -> Result<u32, TooLarge> {
    let n = g.n() as usize;
    if n > limit {
        return Err(TooLarge { size: n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut adj = vec![0u64; n];
    for e in g.hypergraph().edges() {
        adj[e[0] as usize] |= 1 << e[1];
        adj[e[1] as usize] |= 1 << e[0];
    }
    Ok(chromatic_number_masks(&adj))
}

/// Minimum colours for the conflict structure given as adjacency bitmasks.
fn chromatic_number_masks(adj: &[u64]) -> u32 {
    assert!(adj.len() <= 64, "bitmask oracle limited to 64 items");
    // Order by decreasing degree; helps the backtracking fail fast.
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    for k in 1..=adj.len() as u32 {
        let mut colours = vec![u32::MAX; adj.len()];
        if colour_rec(adj, &order, 0, k, 0, &mut colours) {
            return k;
        }
    }
    unreachable!("n colours always suffice");
}

fn colour_rec(
    adj: &[u64],
    order: &[usize],
    idx: usize,
    k: u32,
    max_used: u32,
    colours: &mut [u32],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    // Symmetry pruning: a fresh colour may only be max_used + 1.
    let cap = k.min(max_used + 2);
    for c in 0..cap {
        let mut ok = true;
        for (u, &cu) in colours.iter().enumerate() {
            if cu == c && adj[v] >> u & 1 == 1 {
                ok = false;
                break;
            }
        }
        if ok {
            colours[v] = c;
            if colour_rec(adj, order, idx + 1, k, max_used.max(c + 1), colours) {
                return true;
            }
            colours[v] = u32::MAX;
        }
    }
    false
}

fn edge_conflicts(h: &Hypergraph) -> Vec<u64> {
    let m = h.m();
    let mut adj = vec![0u64; m];
    for v in 0..h.n() {
        let at = h.edges_at(v);
        for i in 0..at.len() {
            for j in i + 1..at.len() {
                adj[at[i] as usize] |= 1 << at[j];
                adj[at[j] as usize] |= 1 << at[i];
            }
        }
    }
    adj
}

/// Exact matching number by branch and bound on the lowest coverable vertex.
pub fn matching_number(h: &Hypergraph, limit: usize) -> Result<u32, TooLarge> {
    if h.m() > limit {
        return Err(TooLarge {
            size: h.m(),
            limit,
        });
    }
    let min_size = h.min_edge_size().max(2);
    let mut state = MatchingSearch {
        h,
        blocked: vec![false; h.n() as usize],
        best: 0,
        min_size,
    };
    let free = h.n() as usize;
    state.recurse(0, 0, free);
    Ok(state.best)
}

struct MatchingSearch<'a> {
    h: &'a Hypergraph,
    /// Vertex is covered by the current matching or declared skipped.
    blocked: Vec<bool>,
    best: u32,
    min_size: usize,
}

impl MatchingSearch<'_> {
    fn recurse(&mut self, from: u32, current: u32, free: usize) {
        self.best = self.best.max(current);
        // free counts vertices that may still appear in future edges.
        if current + (free / self.min_size) as u32 <= self.best {
            return;
        }
        // Branch on the lowest unblocked vertex with a usable edge.
        let mut pivot = None;
        for v in from..self.h.n() {
            if self.blocked[v as usize] {
                continue;
            }
            if self
                .h
                .edges_at(v)
                .iter()
                .any(|&e| self.usable(e))
            {
                pivot = Some(v);
                break;
            }
        }
        let Some(v) = pivot else {
            return;
        };
        // Take one of v's usable edges.
        let candidates: Vec<EdgeId> = self
            .h
            .edges_at(v)
            .iter()
            .copied()
            .filter(|&e| self.usable(e))
            .collect();
        for e in candidates {
            let members = self.h.edge(e);
            for &u in members {
                self.blocked[u as usize] = true;
            }
            self.recurse(v + 1, current + 1, free - members.len());
            for &u in members {
                self.blocked[u as usize] = false;
            }
        }
        // Or leave v uncovered: no future edge may use it.
        self.blocked[v as usize] = true;
        self.recurse(v + 1, current, free - 1);
        self.blocked[v as usize] = false;
    }

    fn usable(&self, e: EdgeId) -> bool {
        self.h.edge(e).iter().all(|&u| !self.blocked[u as usize])
    }
}

/// Size of the largest pairwise-intersecting subfamily of edges
/// (a maximum clique in the line graph).
pub fn max_intersecting(h: &Hypergraph, limit: usize) -> Result<u32, TooLarge> {
    if h.m() > limit {
        return Err(TooLarge {
            size: h.m(),
            limit,
        });
    }
    if h.m() == 0 {
        return Ok(0);
    }
    let adj = edge_conflicts(h);
    let mut best = 0u32;
    let all = if h.m() == 64 {
        u64::MAX
    } else {
        (1u64 << h.m()) - 1
    };
    clique_rec(&adj, all, 0, &mut best);
    Ok(best)
}

fn clique_rec(adj: &[u64], candidates: u64, size: u32, best: &mut u32) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() <= *best {
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    // Include v.
    clique_rec(adj, candidates & adj[v], size + 1, best);
    // Exclude v.
    clique_rec(adj, candidates & !(1 << v), size, best);
}

/// Exact independence number of a graph (used for cross-checking the
/// random-greedy independent set).
pub fn independence_number(g: &Graph, limit: usize) -> Result<u32, TooLarge> {
    let n = g.n() as usize;
    if n > limit {
        return Err(TooLarge { size: n, limit });
    }
    let mut adj = vec![0u64; n];
    for e in g.hypergraph().edges() {
        adj[e[0] as usize] |= 1 << e[1];
        adj[e[1] as usize] |= 1 << e[0];
    }
    // Complement clique.
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comp: Vec<u64> = (0..n).map(|v| all & !adj[v] & !(1 << v)).collect();
    let mut best = 0;
    clique_rec(&comp, all, 0, &mut best);
    Ok(best)
}
