//! Structural transforms: line graph, dual, t-wise incidence hypergraph,
//! shadow graph, normalized volume and forward-degree profiles.

use crate::hypergraph::{EdgeId, EdgeOrdering, Graph, Hypergraph, VertexId};
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("vertex {0} has degree < 2, dual edge would have size < 2")]
    DegenerateVertex(VertexId),
    #[error("vertices {0} and {1} have identical incidence sets")]
    DuplicateDualEdge(VertexId, VertexId),
    #[error("incidence hypergraph would have {vertices} vertices and {edges} edges, limit {limit}")]
    Overflow {
        vertices: usize,
        edges: usize,
        limit: usize,
    },
}

/// Graph on the edges of `h`; two edges are adjacent iff they intersect.
pub fn line_graph(h: &Hypergraph) -> Graph {
    let m = h.m() as u32;
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for v in 0..h.n() {
        let at = h.edges_at(v);
        for i in 0..at.len() {
            for j in i + 1..at.len() {
                pairs.push((at[i], at[j]));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Graph::from_edges(m, pairs).expect("line graph edges are valid")
}

/// Exchanges vertices and edges via the incidence relation.
///
/// Dual vertex `e` ranges over edges of `h`; dual edge `v` is the set of
/// edges of `h` containing the vertex `v`.
pub fn dual(h: &Hypergraph) -> Result<Hypergraph, TransformError> {
    let mut dual_edges: Vec<(Vec<EdgeId>, VertexId)> = Vec::with_capacity(h.n() as usize);
    for v in 0..h.n() {
        let inc = h.edges_at(v).to_vec();
        if inc.len() < 2 {
            return Err(TransformError::DegenerateVertex(v));
        }
        dual_edges.push((inc, v));
    }
    let mut sorted = dual_edges.clone();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(TransformError::DuplicateDualEdge(w[0].1, w[1].1));
        }
    }
    let edges = sorted.into_iter().map(|(e, _)| e).collect();
    Ok(Hypergraph::from_canonical(h.m() as u32, edges))
}

/// The t-wise incidence hypergraph.
///
/// Vertices: one per edge of `h` (ids `0..m`), then `t` layers of vertex
/// copies (copy `(i, v)` has id `m + i*n + v`). For each edge `e` and layer
/// `i` there is one edge `{e} ∪ ({i} × e)`.
pub fn incidence_hypergraph(
    h: &Hypergraph,
    t: u32,
    size_limit: usize,
) -> Result<Hypergraph, TransformError> {
    assert!(t >= 1, "t must be positive");
    let m = h.m();
    let n = h.n() as usize;
    let vertices = m + (t as usize) * n;
    let edge_count = m * t as usize;
    if vertices > size_limit || edge_count > size_limit {
        return Err(TransformError::Overflow {
            vertices,
            edges: edge_count,
            limit: size_limit,
        });
    }
    let mut edges = Vec::with_capacity(edge_count);
    for (e, edge) in h.edges().iter().enumerate() {
        for i in 0..t as usize {
            let mut inc_edge = Vec::with_capacity(edge.len() + 1);
            inc_edge.push(e as u32);
            for &v in edge {
                inc_edge.push((m + i * n + v as usize) as u32);
            }
            edges.push(inc_edge);
        }
    }
    edges.sort_unstable();
    Ok(Hypergraph::from_canonical(vertices as u32, edges))
}

/// Graph on `V(h)` whose edges are all vertex pairs covered by some edge.
pub fn shadow_graph(h: &Hypergraph) -> Graph {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for edge in h.edges() {
        for i in 0..edge.len() {
            for j in i + 1..edge.len() {
                pairs.push((edge[i], edge[j]));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Graph::from_edges(h.n(), pairs).expect("shadow edges are valid")
}

/// Fraction of vertex pairs packed by the edge set `w`:
/// sum of C(|e|,2) over `w`, divided by C(n,2). Exact rational.
pub fn normalized_volume(h: &Hypergraph, w: &[EdgeId]) -> Ratio<u64> {
    let n = h.n() as u64;
    if n < 2 {
        return Ratio::new(0, 1);
    }
    let mut packed: u64 = 0;
    for &e in w {
        let k = h.edge(e).len() as u64;
        packed += k * (k - 1) / 2;
    }
    Ratio::new(packed, n * (n - 1) / 2)
}

/// For each edge, the number of intersecting edges strictly earlier in `ord`.
///
/// Greedy colouring along `ord` needs at most `max + 1` colours.
pub fn forward_degree_profile(h: &Hypergraph, ord: &EdgeOrdering) -> Vec<u32> {
    assert_eq!(ord.len(), h.m(), "ordering does not match host");
    let mut profile = vec![0u32; h.m()];
    let mut stamp = vec![u32::MAX; h.m()];
    for (e_us, slot) in profile.iter_mut().enumerate() {
        let e = e_us as EdgeId;
        let pos = ord.position(e);
        let mut count = 0u32;
        for &v in h.edge(e) {
            for &f in h.edges_at(v) {
                if f != e && ord.position(f) < pos && stamp[f as usize] != e {
                    stamp[f as usize] = e;
                    count += 1;
                }
            }
        }
        *slot = count;
    }
    profile
}
