//! Canonical labelling by iterative degree refinement with backtracking,
//! plus orbit pruning from discovered automorphisms. Adequate for
//! desk-scale instances (up to roughly a thousand edges).

use crate::hypergraph::Hypergraph;

/// Relabelled edge list that is invariant under vertex renaming.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: u32,
    pub edges: Vec<Vec<u32>>,
}

pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut deg_a: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let mut sizes_a: Vec<usize> = a.edges().iter().map(Vec::len).collect();
    let mut sizes_b: Vec<usize> = b.edges().iter().map(Vec::len).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

pub fn canonical_form(h: &Hypergraph) -> CanonicalForm {
    let mut search = Search {
        h,
        best: None,
        best_labelling: Vec::new(),
        orbits: UnionFind::new(h.n() as usize),
        nodes: 0,
    };
    let colouring = Colouring::initial(h);
    search.explore(colouring);
    CanonicalForm {
        n: h.n(),
        edges: search.best.expect("search visits at least one leaf"),
    }
}

#[derive(Clone)]
struct Colouring {
    vertex: Vec<u32>,
    edge: Vec<u32>,
    vertex_classes: u32,
    edge_classes: u32,
}

impl Colouring {
    fn initial(h: &Hypergraph) -> Self {
        let mut c = Self {
            vertex: vec![0; h.n() as usize],
            edge: vec![0; h.m()],
            vertex_classes: 1.min(h.n()),
            edge_classes: 1.min(h.m() as u32),
        };
        c.refine(h);
        c
    }

    /// Alternate edge and vertex re-ranking until the class counts are stable.
    fn refine(&mut self, h: &Hypergraph) {
        loop {
            let before = (self.vertex_classes, self.edge_classes);
            // Edges keyed by (own colour, sorted member colours).
            let mut sigs: Vec<(Vec<u32>, usize)> = h
                .edges()
                .iter()
                .enumerate()
                .map(|(e, edge)| {
                    let mut s = Vec::with_capacity(edge.len() + 1);
                    s.push(self.edge[e]);
                    let mut members: Vec<u32> =
                        edge.iter().map(|&v| self.vertex[v as usize]).collect();
                    members.sort_unstable();
                    s.extend(members);
                    (s, e)
                })
                .collect();
            self.edge_classes = rank(&mut sigs, &mut self.edge);
            // Vertices keyed by (own colour, sorted incident edge colours).
            let mut sigs: Vec<(Vec<u32>, usize)> = (0..h.n() as usize)
                .map(|v| {
                    let mut s = vec![self.vertex[v]];
                    let mut inc: Vec<u32> = h
                        .edges_at(v as u32)
                        .iter()
                        .map(|&e| self.edge[e as usize])
                        .collect();
                    inc.sort_unstable();
                    s.extend(inc);
                    (s, v)
                })
                .collect();
            self.vertex_classes = rank(&mut sigs, &mut self.vertex);
            if (self.vertex_classes, self.edge_classes) == before {
                return;
            }
        }
    }

    /// First smallest non-singleton vertex cell, as its member list.
    fn target_cell(&self) -> Option<Vec<u32>> {
        let mut cells: Vec<Vec<u32>> = vec![Vec::new(); self.vertex_classes as usize];
        for (v, &c) in self.vertex.iter().enumerate() {
            cells[c as usize].push(v as u32);
        }
        cells
            .iter()
            .filter(|c| c.len() > 1)
            .min_by_key(|c| (c.len(), c[0]))
            .cloned()
    }
}

fn rank(sigs: &mut Vec<(Vec<u32>, usize)>, out: &mut [u32]) -> u32 {
    sigs.sort_unstable();
    let mut next = 0u32;
    let mut prev: Option<&Vec<u32>> = None;
    // Two passes to satisfy the borrow checker: record ranks first.
    let mut ranks = vec![0u32; sigs.len()];
    for (sig, id) in sigs.iter() {
        if let Some(p) = prev {
            if p != sig {
                next += 1;
            }
        }
        ranks[*id] = next;
        prev = Some(sig);
    }
    out.copy_from_slice(&ranks);
    next + 1
}

struct Search<'a> {
    h: &'a Hypergraph,
    best: Option<Vec<Vec<u32>>>,
    best_labelling: Vec<u32>,
    orbits: UnionFind,
    nodes: u64,
}

impl Search<'_> {
    fn explore(&mut self, colouring: Colouring) {
        self.nodes += 1;
        assert!(
            self.nodes < 5_000_000,
            "canonical labelling search budget exceeded"
        );
        match colouring.target_cell() {
            None => self.leaf(&colouring),
            Some(cell) => {
                let mut tried: Vec<u32> = Vec::new();
                for &v in &cell {
                    if tried
                        .iter()
                        .any(|&w| self.orbits.find(w as usize) == self.orbits.find(v as usize))
                    {
                        continue;
                    }
                    tried.push(v);
                    let mut child = colouring.clone();
                    child.vertex[v as usize] = child.vertex_classes;
                    child.vertex_classes += 1;
                    child.refine(self.h);
                    self.explore(child);
                }
            }
        }
    }

    fn leaf(&mut self, colouring: &Colouring) {
        // Discrete partition: vertex colours are a permutation of 0..n.
        let labelling = colouring.vertex.clone();
        let mut edges: Vec<Vec<u32>> = self
            .h
            .edges()
            .iter()
            .map(|edge| {
                let mut e: Vec<u32> = edge.iter().map(|&v| labelling[v as usize]).collect();
                e.sort_unstable();
                e
            })
            .collect();
        edges.sort_unstable();
        match &self.best {
            None => {
                self.best = Some(edges);
                self.best_labelling = labelling;
            }
            Some(best) => {
                if edges < *best {
                    self.best = Some(edges);
                    self.best_labelling = labelling;
                } else if edges == *best {
                    // Two labellings with the same image compose to an
                    // automorphism; record it to prune sibling branches.
                    let mut inverse = vec![0u32; labelling.len()];
                    for (v, &pos) in labelling.iter().enumerate() {
                        inverse[pos as usize] = v as u32;
                    }
                    for (v, &pos) in self.best_labelling.iter().enumerate() {
                        self.orbits.union(v, inverse[pos as usize] as usize);
                    }
                }
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{degenerate_plane, projective_plane};

    #[test]
    fn invariant_under_relabelling() {
        let h = Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![0, 4]])
            .unwrap();
        // Relabel via v -> (v * 2 + 1) % 5.
        let relabel = |v: u32| (v * 2 + 1) % 5;
        let edges = h
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| relabel(v)).collect())
            .collect();
        let g = Hypergraph::new(5, edges).unwrap();
        assert_eq!(canonical_form(&h), canonical_form(&g));
        assert!(are_isomorphic(&h, &g));
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let path = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let star = Hypergraph::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        assert!(!are_isomorphic(&path, &star));
    }

    #[test]
    fn fano_is_self_dual() {
        let fano = projective_plane(2).unwrap();
        let d = crate::transform::dual(&fano).unwrap();
        assert!(are_isomorphic(&fano, &d));
    }

    #[test]
    fn degenerate_plane_canonical_is_fast() {
        // Large automorphism group; orbit pruning keeps the search small.
        let dp = degenerate_plane(40);
        let form = canonical_form(&dp);
        assert_eq!(form.edges.len(), 40);
    }
}
