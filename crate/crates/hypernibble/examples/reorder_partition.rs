//! Forward-degree reordering and the window partition on large-edge
//! instances: sparse instances certify a cheap colour bound, projective
//! planes surface as the high-volume window.
//!
//! ```bash
//! cargo run --release --example reorder_partition
//! ```

use hypernibble::efl::{partition_large, reorder, PartitionOutcome, ReorderOutcome};
use hypernibble::generators::{projective_plane, random_linear};

fn main() {
    // A sparse 12-uniform instance: every forward degree is small, so one
    // reordering certifies a cheap greedy bound.
    let h = random_linear(200, 12, 250, 5).hypergraph;
    match reorder(&h, 0.2, 20.0).unwrap() {
        ReorderOutcome::AllGood { max_fwddeg, .. } => println!(
            "random-linear(200,12): all forward degrees <= {} (bound {})",
            max_fwddeg,
            0.8 * 200.0
        ),
        ReorderOutcome::Window { .. } => unreachable!("sparse instances reorder cleanly"),
    }
    match partition_large(&h, 1e-4).unwrap() {
        PartitionOutcome::ColourableCheaply { colour_bound, .. } => {
            println!("  partition: colourable cheaply with <= {colour_bound} colours")
        }
        PartitionOutcome::Partitioned(_) => unreachable!(),
    }

    // A projective plane is pairwise intersecting: nothing can be moved and
    // the whole plane comes back as the window.
    let pg = projective_plane(3).unwrap();
    match reorder(&pg, 0.2, 20.0).unwrap() {
        ReorderOutcome::Window { window, checks, .. } => {
            println!("pg(3): window of {} edges", window.len());
            for c in &checks {
                println!(
                    "  [{}] {:<28} measured {:>10.4} {} {:>10.4}",
                    if c.ok { "ok" } else { "!!" },
                    c.name,
                    c.measured,
                    if c.upper { "<=" } else { ">=" },
                    c.bound
                );
            }
        }
        ReorderOutcome::AllGood { .. } => unreachable!("intersecting family cannot be all good"),
    }

    // Large plane, small sigma: the three-way partition with its checks.
    let pg = projective_plane(71).unwrap();
    let t = std::time::Instant::now();
    match partition_large(&pg, 1e-4).unwrap() {
        PartitionOutcome::Partitioned(p) => {
            println!(
                "pg(71): head {} / window {} / tail {} edges [{:?}]",
                p.h2.len(),
                p.window.len(),
                p.h1.len(),
                t.elapsed()
            );
            for c in &p.checks {
                println!(
                    "  [{}] {:<28} measured {:>10.4} {} {:>10.4}",
                    if c.ok { "ok" } else { "!!" },
                    c.name,
                    c.measured,
                    if c.upper { "<=" } else { ">=" },
                    c.bound
                );
            }
        }
        PartitionOutcome::ColourableCheaply { .. } => unreachable!(),
    }
}
