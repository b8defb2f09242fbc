//! Core hypergraph data model shared by every algorithm in the crate.
//!
//! A [`Hypergraph`] is a vertex count `n` plus a list of edges, each a
//! strictly increasing sequence of vertex ids in `0..n`. The edge list is
//! canonicalized (lexicographically sorted, duplicates rejected) at
//! construction time so that edge ids are stable across serialization.

use serde::Serialize;
use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: VertexId, n: u32 },
    #[error("edge {index} repeats vertex {vertex}")]
    DuplicateVertexInEdge { index: usize, vertex: VertexId },
    #[error("edge {index} has size {size} < 2")]
    EdgeTooSmall { index: usize, size: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<VertexId>),
    #[error("not 2-uniform: edge {index} has size {size}")]
    NotTwoUniform { index: usize, size: usize },
}

/// An immutable hypergraph with dense integer vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: u32,
    edges: Vec<Vec<VertexId>>,
    /// For each vertex, the ids of the edges containing it (ascending).
    incidence: Vec<Vec<EdgeId>>,
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalizing the edge list.
    ///
    /// Vertices inside each edge are sorted; the edge list itself is sorted
    /// lexicographically. Edges of size one or zero, repeated vertices and
    /// duplicate edges are errors.
    pub fn new(n: u32, mut edges: Vec<Vec<VertexId>>) -> Result<Self, BuildError> {
        for (index, edge) in edges.iter_mut().enumerate() {
            if edge.len() < 2 {
                return Err(BuildError::EdgeTooSmall {
                    index,
                    size: edge.len(),
                });
            }
            edge.sort_unstable();
            for w in edge.windows(2) {
                if w[0] == w[1] {
                    return Err(BuildError::DuplicateVertexInEdge {
                        index,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&last) = edge.last() {
                if last >= n {
                    return Err(BuildError::VertexOutOfRange { vertex: last, n });
                }
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(BuildError::DuplicateEdge(w[0].clone()));
            }
        }
        Ok(Self::from_canonical(n, edges))
    }

    /// Builds from an already sorted, validated edge list.
    pub(crate) fn from_canonical(n: u32, edges: Vec<Vec<VertexId>>) -> Self {
        let mut incidence = vec![Vec::new(); n as usize];
        for (id, edge) in edges.iter().enumerate() {
            for &v in edge {
                incidence[v as usize].push(id as EdgeId);
            }
        }
        Self {
            n,
            edges,
            incidence,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> &[VertexId] {
        &self.edges[id as usize]
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    /// Edge ids containing `v`, ascending.
    pub fn edges_at(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Distinct edge ids intersecting edge `e` (excluding `e` itself).
    pub fn neighbours(&self, e: EdgeId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.edge(e)
            .iter()
            .flat_map(|&v| self.edges_at(v).iter().copied())
            .filter(|&f| f != e)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Structural summary used by verification and the CLI.
    pub fn stats(&self) -> Stats {
        let degrees: Vec<u32> = (0..self.n).map(|v| self.degree(v) as u32).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let mut max_codegree = 0u32;
        let mut pair_counts: std::collections::HashMap<(u32, u32), u32> =
            std::collections::HashMap::new();
        for edge in &self.edges {
            for i in 0..edge.len() {
                for j in i + 1..edge.len() {
                    let c = pair_counts.entry((edge[i], edge[j])).or_insert(0);
                    *c += 1;
                    max_codegree = max_codegree.max(*c);
                }
            }
        }
        let is_linear = max_codegree <= 1;
        let is_intersecting = self.is_intersecting(is_linear);
        Stats {
            n: self.n,
            m: self.m(),
            degrees,
            max_degree,
            max_codegree,
            min_edge_size: self.min_edge_size(),
            max_edge_size: self.max_edge_size(),
            is_linear,
            is_intersecting,
        }
    }

    fn is_intersecting(&self, is_linear: bool) -> bool {
        if self.edges.is_empty() {
            return true;
        }
        // An intersecting linear hypergraph has at most n edges
        // (de Bruijn-Erdos), which keeps the quadratic scan small.
        if is_linear && self.m() > self.n as usize {
            return false;
        }
        let mut stamp = vec![false; self.n as usize];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                stamp[v as usize] = true;
            }
            for f in self.edges.iter().skip(i + 1) {
                if !f.iter().any(|&v| stamp[v as usize]) {
                    for &v in e {
                        stamp[v as usize] = false;
                    }
                    return false;
                }
            }
            for &v in e {
                stamp[v as usize] = false;
            }
        }
        true
    }
}

/// Structural facts about a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub n: u32,
    pub m: usize,
    pub degrees: Vec<u32>,
    pub max_degree: u32,
    pub max_codegree: u32,
    pub min_edge_size: usize,
    pub max_edge_size: usize,
    pub is_linear: bool,
    pub is_intersecting: bool,
}

/// A 2-uniform hypergraph with an adjacency index for O(degree) walks.
#[derive(Debug, Clone)]
pub struct Graph {
    hg: Hypergraph,
    /// adj[v] = (neighbour, edge id), ascending by neighbour.
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    pub fn from_hypergraph(hg: Hypergraph) -> Result<Self, BuildError> {
        for (index, e) in hg.edges().iter().enumerate() {
            if e.len() != 2 {
                return Err(BuildError::NotTwoUniform {
                    index,
                    size: e.len(),
                });
            }
        }
        let mut adj = vec![Vec::new(); hg.n() as usize];
        for (id, e) in hg.edges().iter().enumerate() {
            adj[e[0] as usize].push((e[1], id as EdgeId));
            adj[e[1] as usize].push((e[0], id as EdgeId));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Self { hg, adj })
    }

    pub fn from_edges(n: u32, pairs: Vec<(VertexId, VertexId)>) -> Result<Self, BuildError> {
        let edges = pairs.into_iter().map(|(a, b)| vec![a, b]).collect();
        Self::from_hypergraph(Hypergraph::new(n, edges)?)
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hg
    }

    pub fn n(&self) -> u32 {
        self.hg.n()
    }

    pub fn m(&self) -> usize {
        self.hg.m()
    }

    pub fn neighbours_of(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let edge = self.hg.edge(e);
        (edge[0], edge[1])
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a as usize]
            .binary_search_by_key(&b, |&(w, _)| w)
            .is_ok()
    }
}

/// A set of pairwise disjoint edges of a host hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edge_ids: Vec<EdgeId>,
    host_n: u32,
}

impl Matching {
    /// Wraps a set of edge ids; sorts and dedups, does not check disjointness
    /// (use [`crate::verify::verify_matching`] for that).
    pub fn new(mut edge_ids: Vec<EdgeId>, host_n: u32) -> Self {
        edge_ids.sort_unstable();
        edge_ids.dedup();
        Self { edge_ids, host_n }
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn host_n(&self) -> u32 {
        self.host_n
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edge_ids.binary_search(&e).is_ok()
    }

    /// Membership bitmap of covered vertices.
    pub fn covered(&self, host: &Hypergraph) -> Vec<bool> {
        let mut covered = vec![false; self.host_n as usize];
        for &e in &self.edge_ids {
            for &v in host.edge(e) {
                covered[v as usize] = true;
            }
        }
        covered
    }

    pub fn uncovered_count(&self, host: &Hypergraph) -> usize {
        self.covered(host).iter().filter(|&&c| !c).count()
    }
}

/// A proper edge colouring defined on a subset of the host's edges.
///
/// Colours are `0..palette_size`; properness (no two intersecting edges with
/// the same colour) is the core invariant and is checked by
/// [`crate::verify::verify_colouring`], not assumed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEdgeColouring {
    assignment: Vec<Option<u32>>,
    palette_size: u32,
}

impl PartialEdgeColouring {
    pub fn empty(m: usize, palette_size: u32) -> Self {
        Self {
            assignment: vec![None; m],
            palette_size,
        }
    }

    pub fn m(&self) -> usize {
        self.assignment.len()
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    pub fn set_palette_size(&mut self, palette_size: u32) {
        self.palette_size = palette_size;
    }

    pub fn get(&self, e: EdgeId) -> Option<u32> {
        self.assignment[e as usize]
    }

    pub fn assign(&mut self, e: EdgeId, colour: u32) {
        self.assignment[e as usize] = Some(colour);
        if colour >= self.palette_size {
            self.palette_size = colour + 1;
        }
    }

    pub fn unassign(&mut self, e: EdgeId) {
        self.assignment[e as usize] = None;
    }

    pub fn assigned_count(&self) -> usize {
        self.assignment.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(|c| c.is_some())
    }

    /// Number of distinct colours actually used.
    pub fn colours_used(&self) -> usize {
        let mut seen = vec![false; self.palette_size as usize];
        for c in self.assignment.iter().flatten() {
            seen[*c as usize] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }

    /// Edge ids assigned `colour`, ascending.
    pub fn class(&self, colour: u32) -> Vec<EdgeId> {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(e, c)| (*c == Some(colour)).then_some(e as EdgeId))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, u32)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(e, c)| c.map(|c| (e as EdgeId, c)))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("order is not a permutation of 0..{m}")]
pub struct NotAPermutation {
    pub m: usize,
}

/// A permutation of the edges of a host hypergraph together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrdering {
    order: Vec<EdgeId>,
    position: Vec<u32>,
}

impl EdgeOrdering {
    pub fn new(order: Vec<EdgeId>) -> Result<Self, NotAPermutation> {
        let m = order.len();
        let mut position = vec![u32::MAX; m];
        for (pos, &e) in order.iter().enumerate() {
            if (e as usize) >= m || position[e as usize] != u32::MAX {
                return Err(NotAPermutation { m });
            }
            position[e as usize] = pos as u32;
        }
        Ok(Self { order, position })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            order: (0..m as u32).collect(),
            position: (0..m as u32).collect(),
        }
    }

    /// Edges sorted by decreasing size, ties by ascending id.
    pub fn size_monotone_decreasing(h: &Hypergraph) -> Self {
        let mut order: Vec<EdgeId> = (0..h.m() as u32).collect();
        order.sort_by_key(|&e| (std::cmp::Reverse(h.edge(e).len()), e));
        Self::new(order).expect("sorted permutation is valid")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[EdgeId] {
        &self.order
    }

    /// Position of edge `e` in the ordering.
    pub fn position(&self, e: EdgeId) -> u32 {
        self.position[e as usize]
    }

    pub fn at(&self, pos: usize) -> EdgeId {
        self.order[pos]
    }
}
