//! Pass/fail predicates with a first counterexample on failure.
//!
//! Every algorithm output in the crate is expected to be re-checkable by
//! these functions; the CLI refuses to write artifacts that fail them.

use crate::hypergraph::{EdgeId, Hypergraph, PartialEdgeColouring, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("edge id {0} out of range for host with {1} edges")]
    HostMismatch(EdgeId, usize),
    #[error("edges {0} and {1} overlap at vertex {2}")]
    OverlappingEdges(EdgeId, EdgeId, VertexId),
    #[error("edges {0} and {1} share vertex {2} and colour {3}")]
    ColourConflict(EdgeId, EdgeId, VertexId, u32),
    #[error("edge {0} has colour {1} >= palette size {2}")]
    ColourOutOfPalette(EdgeId, u32, u32),
    #[error("vertex {0} not covered")]
    Uncovered(VertexId),
    #[error("pair ({0}, {1}) lies in edges {2} and {3}")]
    CodegreeViolation(VertexId, VertexId, EdgeId, EdgeId),
}

/// The edges referenced by `edge_ids` are pairwise disjoint.
pub fn verify_matching(h: &Hypergraph, edge_ids: &[EdgeId]) -> Result<(), VerifyError> {
    let mut owner: Vec<Option<EdgeId>> = vec![None; h.n() as usize];
    for &e in edge_ids {
        if e as usize >= h.m() {
            return Err(VerifyError::HostMismatch(e, h.m()));
        }
        for &v in h.edge(e) {
            match owner[v as usize] {
                Some(f) if f != e => return Err(VerifyError::OverlappingEdges(f, e, v)),
                _ => owner[v as usize] = Some(e),
            }
        }
    }
    Ok(())
}

/// No two intersecting edges share a colour; all colours fit the palette.
pub fn verify_colouring(h: &Hypergraph, c: &PartialEdgeColouring) -> Result<(), VerifyError> {
    if c.m() != h.m() {
        return Err(VerifyError::HostMismatch(c.m() as EdgeId, h.m()));
    }
    for (e, colour) in c.iter() {
        if colour >= c.palette_size() {
            return Err(VerifyError::ColourOutOfPalette(e, colour, c.palette_size()));
        }
    }
    // Per vertex: no colour may repeat among incident assigned edges.
    let mut seen: Vec<(u32, EdgeId)> = Vec::new();
    for v in 0..h.n() {
        seen.clear();
        for &e in h.edges_at(v) {
            if let Some(colour) = c.get(e) {
                seen.push((colour, e));
            }
        }
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(VerifyError::ColourConflict(w[0].1, w[1].1, v, w[0].0));
            }
        }
    }
    Ok(())
}

/// Every vertex of `target` is covered by the matching.
pub fn verify_coverage(
    h: &Hypergraph,
    edge_ids: &[EdgeId],
    target: &[VertexId],
) -> Result<(), VerifyError> {
    let mut covered = vec![false; h.n() as usize];
    for &e in edge_ids {
        if e as usize >= h.m() {
            return Err(VerifyError::HostMismatch(e, h.m()));
        }
        for &v in h.edge(e) {
            covered[v as usize] = true;
        }
    }
    for &v in target {
        if !covered[v as usize] {
            return Err(VerifyError::Uncovered(v));
        }
    }
    Ok(())
}

/// Every pair of vertices lies in at most one edge.
pub fn verify_linear(h: &Hypergraph) -> Result<(), VerifyError> {
    let mut pairs: std::collections::HashMap<(u32, u32), EdgeId> =
        std::collections::HashMap::new();
    for (id, edge) in h.edges().iter().enumerate() {
        for i in 0..edge.len() {
            for j in i + 1..edge.len() {
                if let Some(&prev) = pairs.get(&(edge[i], edge[j])) {
                    return Err(VerifyError::CodegreeViolation(
                        edge[i],
                        edge[j],
                        prev,
                        id as EdgeId,
                    ));
                }
                pairs.insert((edge[i], edge[j]), id as EdgeId);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_edges_pass() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(verify_matching(&h, &[0, 1]).is_ok());
    }

    #[test]
    fn colour_conflict_witnessed() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let mut c = PartialEdgeColouring::empty(2, 1);
        c.assign(0, 0);
        c.assign(1, 0);
        assert_eq!(
            verify_colouring(&h, &c),
            Err(VerifyError::ColourConflict(0, 1, 1, 0))
        );
    }

    #[test]
    fn same_colour_on_disjoint_edges_passes() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let mut c = PartialEdgeColouring::empty(2, 1);
        c.assign(0, 0);
        c.assign(1, 0);
        assert!(verify_colouring(&h, &c).is_ok());
    }

    #[test]
    fn empty_coverage_passes() {
        let h = Hypergraph::new(4, vec![vec![0, 1]]).unwrap();
        assert!(verify_coverage(&h, &[], &[]).is_ok());
        assert_eq!(
            verify_coverage(&h, &[], &[2]),
            Err(VerifyError::Uncovered(2))
        );
    }

    #[test]
    fn host_mismatch() {
        let h = Hypergraph::new(4, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            verify_matching(&h, &[5]),
            Err(VerifyError::HostMismatch(5, 1))
        );
    }

    #[test]
    fn linearity_witness() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(
            verify_linear(&h),
            Err(VerifyError::CodegreeViolation(0, 1, 0, 1))
        );
    }
}
