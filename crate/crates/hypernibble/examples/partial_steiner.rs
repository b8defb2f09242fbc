//! Partial Steiner systems from the nibble on the auxiliary hypergraph
//! whose matchings are exactly the partial systems.
//!
//! ```bash
//! cargo run --release --example partial_steiner
//! ```

use hypernibble::nibble::{partial_steiner, NibbleParams};

fn main() {
    for (t, k, n) in [(2, 3, 7), (2, 3, 9), (2, 3, 15), (2, 3, 31), (3, 4, 8)] {
        let mut best = 0.0f64;
        let mut best_seed = 0;
        for seed in 0..20 {
            let ps = partial_steiner(t, k, n, &NibbleParams::default().with_seed(seed)).unwrap();
            if ps.fill_fraction > best {
                best = ps.fill_fraction;
                best_seed = seed;
            }
        }
        let ps = partial_steiner(t, k, n, &NibbleParams::default().with_seed(best_seed)).unwrap();
        println!(
            "({t},{k},{n}): best fill over 20 seeds = {:.3} with {} blocks",
            ps.fill_fraction,
            ps.blocks.len()
        );
        if (ps.fill_fraction - 1.0).abs() < 1e-9 {
            println!("  perfect packing, e.g. first blocks: {:?}", &ps.blocks[..3.min(ps.blocks.len())]);
        }
    }
}
