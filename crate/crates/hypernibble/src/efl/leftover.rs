//! Decomposition of a low-degree leftover hypergraph into many small
//! matchings: greedy proper colouring (at most `3 * ceil(gamma n) + 1`
//! classes for sizes <= 3), then each class is split into chunks whose
//! vertex span stays below `sqrt(gamma) * n`.

use crate::hypergraph::{EdgeId, Hypergraph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("vertex {vertex} has degree {degree} in the leftover, bound {bound}")]
pub struct DegreeBoundViolated {
    pub vertex: u32,
    pub degree: usize,
    pub bound: usize,
}

#[derive(Debug, Clone)]
pub struct LeftoverDecomposition {
    /// Matchings whose union is exactly the input edge set.
    pub matchings: Vec<Vec<EdgeId>>,
    /// Greedy colour classes before chunking.
    pub class_count: usize,
    /// Vertex-span cap applied to each chunk.
    pub span_cap: usize,
    /// The target count `ceil(gamma^(1/3) n)` and whether it was met.
    pub count_bound: usize,
    pub count_bound_ok: bool,
}

pub fn leftover_decompose(
    h: &Hypergraph,
    edges: &[EdgeId],
    gamma: f64,
) -> Result<LeftoverDecomposition, DegreeBoundViolated> {
    let n = h.n() as usize;
    let degree_bound = (gamma * n as f64).ceil() as usize;
    let mut degree = vec![0usize; n];
    for &e in edges {
        for &v in h.edge(e) {
            degree[v as usize] += 1;
        }
    }
    if let Some((vertex, &d)) = degree
        .iter()
        .enumerate()
        .find(|&(_, &d)| d > degree_bound)
        .map(|(v, d)| (v as u32, d))
    {
        return Err(DegreeBoundViolated {
            vertex,
            degree: d,
            bound: degree_bound,
        });
    }

    // Greedy proper colouring of the leftover edges.
    let mut colour_of: Vec<u32> = vec![u32::MAX; h.m()];
    let mut in_leftover = vec![false; h.m()];
    for &e in edges {
        in_leftover[e as usize] = true;
    }
    let mut classes: Vec<Vec<EdgeId>> = Vec::new();
    let mut used: Vec<u32> = Vec::new();
    for &e in edges {
        used.clear();
        for &v in h.edge(e) {
            for &f in h.edges_at(v) {
                if in_leftover[f as usize] && colour_of[f as usize] != u32::MAX {
                    used.push(colour_of[f as usize]);
                }
            }
        }
        used.sort_unstable();
        used.dedup();
        let mut c = used.len() as u32;
        for (i, &uc) in used.iter().enumerate() {
            if uc != i as u32 {
                c = i as u32;
                break;
            }
        }
        colour_of[e as usize] = c;
        if c as usize == classes.len() {
            classes.push(Vec::new());
        }
        classes[c as usize].push(e);
    }
    let class_count = classes.len();

    // Chunk each class so that every chunk spans at most sqrt(gamma) n
    // vertices.
    let span_cap = ((gamma.sqrt() * n as f64).floor() as usize).max(3);
    let mut matchings: Vec<Vec<EdgeId>> = Vec::new();
    for class in classes {
        let mut chunk: Vec<EdgeId> = Vec::new();
        let mut span = 0usize;
        for e in class {
            let size = h.edge(e).len();
            if span + size > span_cap && !chunk.is_empty() {
                matchings.push(std::mem::take(&mut chunk));
                span = 0;
            }
            span += size;
            chunk.push(e);
        }
        if !chunk.is_empty() {
            matchings.push(chunk);
        }
    }

    // The union must reproduce the input exactly.
    let mut union: Vec<EdgeId> = matchings.iter().flatten().copied().collect();
    union.sort_unstable();
    let mut input: Vec<EdgeId> = edges.to_vec();
    input.sort_unstable();
    assert_eq!(union, input, "decomposition must partition the leftover");

    let count_bound = (gamma.cbrt() * n as f64).ceil() as usize;
    let count_bound_ok = matchings.len() <= count_bound;
    Ok(LeftoverDecomposition {
        matchings,
        class_count,
        span_cap,
        count_bound,
        count_bound_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_pair_cover;
    use crate::verify::verify_matching;

    #[test]
    fn empty_leftover() {
        let h = Hypergraph::new(5, vec![vec![0, 1]]).unwrap();
        let d = leftover_decompose(&h, &[], 0.1).unwrap();
        assert!(d.matchings.is_empty());
    }

    #[test]
    fn single_small_matching_is_one_chunk() {
        let h = Hypergraph::new(100, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let d = leftover_decompose(&h, &[0, 1], 0.1).unwrap();
        assert_eq!(d.matchings.len(), 1);
        assert!(d.count_bound_ok);
    }

    #[test]
    fn decomposition_covers_and_chunks() {
        let h = random_pair_cover(120, 0.4, 5).hypergraph;
        // Take a sparse sub-family as the leftover.
        let edges: Vec<u32> = (0..h.m() as u32).filter(|e| e % 7 == 0).collect();
        let d = leftover_decompose(&h, &edges, 0.2).unwrap();
        let span_cap = d.span_cap;
        for m in &d.matchings {
            assert!(verify_matching(&h, m).is_ok());
            let span: usize = m.iter().map(|&e| h.edge(e).len()).sum();
            assert!(span <= span_cap);
        }
        let total: usize = d.matchings.iter().map(Vec::len).sum();
        assert_eq!(total, edges.len());
    }

    #[test]
    fn degree_bound_enforced() {
        let h = crate::generators::degenerate_plane(50);
        let all: Vec<u32> = (0..h.m() as u32).collect();
        // The hub vertex has degree 49, far above ceil(0.05 * 50) = 3.
        assert!(leftover_decompose(&h, &all, 0.05).is_err());
    }
}
