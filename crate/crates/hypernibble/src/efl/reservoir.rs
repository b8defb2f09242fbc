//! Reservoir sampling: set aside a random half of the 2-edges, verified
//! for per-vertex typicality, near-regular remainder, and sampled upper
//! regularity.

use super::{CheckRecord, EflError, EflParams};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A verified reservoir split.
#[derive(Debug, Clone)]
pub struct ReservoirSplit {
    /// Ids of the 2-edges placed in the reservoir.
    pub reservoir: Vec<EdgeId>,
    /// Vertices with 2-edge degree at least `(1 - eps) n`.
    pub high_degree: Vec<VertexId>,
    pub diagnostics: ReservoirDiagnostics,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReservoirDiagnostics {
    pub resamples: u32,
    pub typicality_slack: f64,
    pub worst_typicality_residual: f64,
    pub worst_balance_residual: f64,
    pub r2_samples: u32,
    pub worst_r2_ratio: f64,
    pub checks: Vec<CheckRecord>,
}

/// Builds the reservoir. `h` must be a {2,3}-uniform linear pair cover
/// (validated by the caller).
pub fn reservoir(
    h: &Hypergraph,
    params: &EflParams,
    rng: &mut ChaCha8Rng,
) -> Result<ReservoirSplit, EflError> {
    let n = h.n() as usize;
    let xi_n = params.xi * n as f64;
    if xi_n < 1.0 {
        return Err(EflError::SlackTooSmall { xi_n });
    }

    let graph_edges: Vec<EdgeId> = (0..h.m() as EdgeId)
        .filter(|&e| h.edge(e).len() == 2)
        .collect();
    let degree_g: Vec<u32> = {
        let mut d = vec![0u32; n];
        for &e in &graph_edges {
            for &v in h.edge(e) {
                d[v as usize] += 1;
            }
        }
        d
    };
    let high_threshold = (1.0 - params.eps) * n as f64;
    let high: Vec<VertexId> = (0..h.n())
        .filter(|&v| degree_g[v as usize] as f64 >= high_threshold)
        .collect();
    let in_u: Vec<bool> = {
        let mut b = vec![false; n];
        for &v in &high {
            b[v as usize] = true;
        }
        b
    };

    // Neighbour splits by U membership, fixed across candidates.
    let mut deg_g_in_u = vec![0u32; n];
    for &e in &graph_edges {
        let edge = h.edge(e);
        let (a, b) = (edge[0] as usize, edge[1] as usize);
        if in_u[b] {
            deg_g_in_u[a] += 1;
        }
        if in_u[a] {
            deg_g_in_u[b] += 1;
        }
    }

    let mut best_worst = f64::INFINITY;
    let mut last_diag: Option<ReservoirDiagnostics> = None;
    for attempt in 0..params.reservoir_retries {
        let mut in_r = vec![false; h.m()];
        let mut r_edges: Vec<EdgeId> = Vec::with_capacity(graph_edges.len() / 2);
        for &e in &graph_edges {
            if rng.gen::<bool>() {
                in_r[e as usize] = true;
                r_edges.push(e);
            }
        }
        let mut deg_r = vec![0u32; n];
        let mut deg_r_in_u = vec![0u32; n];
        for &e in &r_edges {
            let edge = h.edge(e);
            let (a, b) = (edge[0] as usize, edge[1] as usize);
            deg_r[a] += 1;
            deg_r[b] += 1;
            if in_u[b] {
                deg_r_in_u[a] += 1;
            }
            if in_u[a] {
                deg_r_in_u[b] += 1;
            }
        }

        // R1 typicality: |N_R(v) ∩ U| = |N_G(v) ∩ U| / 2 ± xi n, and the
        // same for the complements.
        let mut worst_typ = 0f64;
        for v in 0..n {
            let in_u_res =
                (deg_r_in_u[v] as f64 - deg_g_in_u[v] as f64 / 2.0).abs();
            let out_r = deg_r[v] - deg_r_in_u[v];
            let out_g = degree_g[v] - deg_g_in_u[v];
            let out_res = (out_r as f64 - out_g as f64 / 2.0).abs();
            worst_typ = worst_typ.max(in_u_res).max(out_res);
        }

        // Near-regular remainder: d_{H \ R}(v) = (n-1)/2 ± 2 xi n.
        let mut worst_balance = 0f64;
        for v in 0..n {
            let d_rest = h.degree(v as VertexId) as f64 - deg_r[v] as f64;
            worst_balance = worst_balance.max((d_rest - (n as f64 - 1.0) / 2.0).abs());
        }

        // Per-vertex half-split balance, a cheap necessary condition for
        // upper regularity.
        let mut degree_balance_ok = true;
        for v in 0..n {
            if deg_r[v] as f64 > 0.5 * degree_g[v] as f64 + xi_n {
                degree_balance_ok = false;
                break;
            }
        }

        let candidate_ok =
            worst_typ <= xi_n && worst_balance <= 2.0 * xi_n && degree_balance_ok;
        if worst_typ < best_worst {
            best_worst = worst_typ;
        }
        if !candidate_ok {
            continue;
        }

        // R2 upper regularity on sampled disjoint pairs (S, T) with
        // |S|, |T| >= xi n: |E_G(S,T) ∩ R| <= (1/2 + xi) |S| |T|.
        let words = n.div_ceil(64);
        let mut adj_r = vec![0u64; n * words];
        for &e in &r_edges {
            let edge = h.edge(e);
            let (a, b) = (edge[0] as usize, edge[1] as usize);
            adj_r[a * words + b / 64] |= 1 << (b % 64);
            adj_r[b * words + a / 64] |= 1 << (a % 64);
        }
        let min_side = xi_n.ceil() as usize;
        let mut ids: Vec<u32> = (0..h.n()).collect();
        let mut worst_ratio = 0f64;
        let mut r2_ok = true;
        for _ in 0..params.r2_samples {
            let s_size = rng.gen_range(min_side..=(n / 2).max(min_side));
            let t_size = rng.gen_range(min_side..=(n / 2).max(min_side));
            if s_size + t_size > n {
                continue;
            }
            for i in (1..ids.len()).rev() {
                let j = rng.gen_range(0..=i);
                ids.swap(i, j);
            }
            let (s, t) = ids.split_at(s_size);
            let t = &t[..t_size];
            let mut t_bits = vec![0u64; words];
            for &v in t {
                t_bits[v as usize / 64] |= 1 << (v % 64);
            }
            let crossing: u32 = s
                .iter()
                .map(|&v| {
                    adj_r[v as usize * words..(v as usize + 1) * words]
                        .iter()
                        .zip(&t_bits)
                        .map(|(a, b)| (a & b).count_ones())
                        .sum::<u32>()
                })
                .sum();
            let bound = (0.5 + params.xi) * s_size as f64 * t_size as f64;
            let ratio = crossing as f64 / bound;
            worst_ratio = worst_ratio.max(ratio);
            if crossing as f64 > bound {
                r2_ok = false;
            }
        }

        let checks = vec![
            CheckRecord::le("reservoir.typicality", worst_typ, xi_n),
            CheckRecord::le("reservoir.remainder_balance", worst_balance, 2.0 * xi_n),
            CheckRecord::le("reservoir.upper_regularity_ratio", worst_ratio, 1.0),
        ];
        let diagnostics = ReservoirDiagnostics {
            resamples: attempt,
            typicality_slack: xi_n,
            worst_typicality_residual: worst_typ,
            worst_balance_residual: worst_balance,
            r2_samples: params.r2_samples,
            worst_r2_ratio: worst_ratio,
            checks,
        };
        if !r2_ok {
            last_diag = Some(diagnostics);
            continue;
        }
        return Ok(ReservoirSplit {
            reservoir: r_edges,
            high_degree: high,
            diagnostics,
        });
    }
    let _ = last_diag;
    Err(EflError::ReservoirFailed {
        resamples: params.reservoir_retries,
        worst_residual: best_worst,
        slack: xi_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_pair_cover;
    use rand::SeedableRng;

    #[test]
    fn reservoir_on_pair_cover() {
        let h = random_pair_cover(300, 0.5, 1).hypergraph;
        let params = EflParams {
            xi: 0.1,
            kappa: 0.15,
            gamma: 0.2,
            eps: 0.3,
            ..EflParams::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let split = reservoir(&h, &params, &mut rng).unwrap();
        // Every reservoir edge is a 2-edge.
        assert!(split.reservoir.iter().all(|&e| h.edge(e).len() == 2));
        // With a 0.5 triple fraction no vertex is anywhere near degree
        // (1 - eps) n in the 2-edge graph.
        assert!(split.high_degree.is_empty());
        assert!(split.diagnostics.checks.iter().all(|c| c.ok));
    }

    #[test]
    fn reservoir_on_complete_graph_has_full_u() {
        // K_n: every vertex has 2-edge degree n - 1.
        let h = crate::generators::complete_graph_hg(200);
        let params = EflParams {
            xi: 0.16,
            kappa: 0.2,
            gamma: 0.25,
            eps: 0.35,
            ..EflParams::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let split = reservoir(&h, &params, &mut rng).unwrap();
        assert_eq!(split.high_degree.len(), 200);
    }

    #[test]
    fn slack_too_small_is_an_error() {
        let h = crate::generators::complete_graph_hg(10);
        let params = EflParams {
            xi: 0.01,
            ..EflParams::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            reservoir(&h, &params, &mut rng),
            Err(EflError::SlackTooSmall { .. })
        ));
    }
}
