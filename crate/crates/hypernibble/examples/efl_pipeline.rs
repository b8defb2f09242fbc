//! The full reservoir / nibble / absorption / Vizing pipeline on a
//! {2,3}-uniform linear pair cover, with its run report.
//!
//! ```bash
//! cargo run --release --example efl_pipeline
//! ```

use hypernibble::efl::{efl_small_colouring, EflParams};
use hypernibble::generators::random_pair_cover;
use hypernibble::verify::verify_colouring;

fn main() {
    let n = 800;
    let h = random_pair_cover(n, 0.5, 11).hypergraph;
    println!("instance: n={} m={} (every vertex pair covered once)", h.n(), h.m());

    let t = std::time::Instant::now();
    let run = efl_small_colouring(&h, &EflParams::default().with_seed(1)).unwrap();
    verify_colouring(&h, &run.colouring).unwrap();
    assert!(run.colouring.is_total());

    println!(
        "coloured every edge with {} colours (target n + 1 = {}): {}",
        run.total_colours,
        n + 1,
        if run.n_plus_one_ok { "within budget" } else { "OVER budget" }
    );
    let r = &run.report;
    println!(
        "reservoir {} edges ({} resamples), U = {} vertices, coverage {}",
        r.reservoir_size, r.reservoir_resamples, r.u_size, r.coverage
    );
    println!(
        "{} nibble classes + {} leftover classes; leftover graph: {} edges, max degree {}",
        r.nibble_classes, r.leftover_classes, r.leftover_graph_edges, r.leftover_graph_max_degree
    );
    println!("checked inequalities:");
    for check in &r.checks {
        println!(
            "  [{}] {:<40} measured {:>12.3} {} {:>12.3}",
            if check.ok { "ok" } else { "!!" },
            check.name,
            check.measured,
            if check.upper { "<=" } else { ">=" },
            check.bound
        );
    }
    println!("stage timings: {:?}", r.timings_ms);
    println!("total {:?}", t.elapsed());
}
