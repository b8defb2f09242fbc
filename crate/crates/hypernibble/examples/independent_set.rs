//! Random greedy independent sets in triangle-free graphs, against the
//! (n / d) ln d yardstick and the exact independence number where the
//! brute force is feasible.
//!
//! ```bash
//! cargo run --release --example independent_set
//! ```

use hypernibble::generators::petersen;
use hypernibble::nibble::greedy_independent_set_trianglefree;
use hypernibble::oracle;
use hypernibble::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random bipartite graph: triangle-free by construction.
fn random_bipartite(half: u32, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for a in 0..half {
        for b in half..2 * half {
            if rng.gen::<f64>() < p {
                pairs.push((a, b));
            }
        }
    }
    Graph::from_edges(2 * half, pairs).unwrap()
}

fn main() {
    let p = petersen();
    let alpha = oracle::independence_number(&p, 16).unwrap();
    let mut best = 0;
    for seed in 0..20 {
        let r = greedy_independent_set_trianglefree(&p, seed).unwrap();
        best = best.max(r.vertices.len());
    }
    println!("petersen: alpha = {alpha}, best greedy over 20 seeds = {best}");

    let g = random_bipartite(300, 0.02, 3);
    let mut sizes = Vec::new();
    let mut benchmark = 0.0;
    for seed in 0..10 {
        let r = greedy_independent_set_trianglefree(&g, seed).unwrap();
        benchmark = r.benchmark;
        sizes.push(r.vertices.len());
    }
    println!(
        "bipartite n=600 avg_deg={:.1}: greedy sizes {:?}, (n/d) ln d = {:.0}",
        2.0 * g.m() as f64 / g.n() as f64,
        sizes,
        benchmark
    );
}
