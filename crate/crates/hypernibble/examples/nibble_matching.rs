//! The semi-random nibble against the random greedy baseline on a large
//! Steiner triple system.
//!
//! ```bash
//! cargo run --release --example nibble_matching
//! ```

use hypernibble::generators::steiner_triple_system;
use hypernibble::nibble::{random_greedy_matching, rodl_nibble, NibbleParams};
use hypernibble::verify::verify_matching;

fn main() {
    let sts = steiner_triple_system(999).unwrap();
    println!(
        "sts(999): {} vertices, {} triples, {}-regular",
        sts.n(),
        sts.m(),
        sts.max_degree()
    );

    for seed in 0..3 {
        let params = NibbleParams::default().with_seed(seed);
        let report = rodl_nibble(&sts, &params);
        let m = &report.matchings[0];
        verify_matching(&sts, m.edge_ids()).unwrap();
        println!(
            "nibble seed {seed}: |M| = {} uncovered = {} ({:.1}%) in {} rounds",
            m.len(),
            report.uncovered,
            100.0 * report.uncovered as f64 / sts.n() as f64,
            report.rounds_executed
        );
        // The per-round trace never increases: rounds only add edges.
        assert!(report.uncovered_by_round.windows(2).all(|w| w[1] <= w[0]));
    }

    for seed in 0..3 {
        let report = random_greedy_matching(&sts, seed);
        let m = &report.matchings[0];
        verify_matching(&sts, m.edge_ids()).unwrap();
        println!(
            "greedy seed {seed}: |M| = {} uncovered = {} ({:.1}%)",
            m.len(),
            report.uncovered,
            100.0 * report.uncovered as f64 / sts.n() as f64
        );
    }
}
