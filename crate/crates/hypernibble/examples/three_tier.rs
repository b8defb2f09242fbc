//! Three-tier reserved-palette list colouring: large edges from the
//! unreserved part of their lists, medium edges from the reserved colours,
//! small edges from what their large neighbours left over.
//!
//! ```bash
//! cargo run --release --example three_tier
//! ```

use hypernibble::colouring::{three_tier_colouring, ListAssignment, TierParams};
use hypernibble::verify::verify_colouring;
use hypernibble::Hypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A hand-rolled instance with all three size tiers: a few large edges,
/// several medium ones, and a sprinkling of small edges between them.
fn tiered_instance() -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let n = 400u32;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    edges.push((0..80).collect());
    edges.push((80..150).collect());
    for i in 0..8 {
        edges.push((150 + i * 20..150 + (i + 1) * 20).collect());
    }
    // Small edges pairing vertices from different blocks.
    let mut used = std::collections::HashSet::new();
    while edges.len() < 120 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if used.insert(key) {
            edges.push(vec![key.0, key.1]);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

fn main() {
    let h = tiered_instance();
    let lists = ListAssignment::uniform(h.m(), h.n());
    let tp = TierParams::default();
    let (colouring, report) = three_tier_colouring(&h, &lists, &tp, 3).unwrap();
    verify_colouring(&h, &colouring).unwrap();
    assert!(colouring.is_total());
    println!(
        "tiers: {} large, {} medium, {} small edges",
        report.large_edges, report.medium_edges, report.small_edges
    );
    println!(
        "reserved {} of {} colours in {} attempt(s)",
        report.reserved_colours,
        h.n(),
        report.reservation_attempts
    );
    println!(
        "coloured with {} colours; {} edges needed the fallback palette",
        report.colours_used, report.fallback_uses
    );
}
