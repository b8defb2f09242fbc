//! Ordered greedy and Vizing colourings cross-checked against the exact
//! brute-force oracles on small instances.
//!
//! ```bash
//! cargo run --release --example edge_colouring
//! ```

use hypernibble::colouring::{greedy_by_ordering, vizing};
use hypernibble::generators::{complete_graph_hg, degenerate_plane, petersen, projective_plane};
use hypernibble::oracle;
use hypernibble::transform::forward_degree_profile;
use hypernibble::verify::verify_colouring;
use hypernibble::EdgeOrdering;

fn main() {
    // Greedy along any ordering stays within max forward degree + 1.
    for (name, h) in [
        ("fano", projective_plane(2).unwrap()),
        ("degenerate(10)", degenerate_plane(10)),
        ("K_5", complete_graph_hg(5)),
    ] {
        let ord = EdgeOrdering::size_monotone_decreasing(&h);
        let fwd = forward_degree_profile(&h, &ord);
        let c = greedy_by_ordering(&h, &ord, None).unwrap();
        verify_colouring(&h, &c).unwrap();
        let exact = oracle::chromatic_index(&h, 16).unwrap();
        println!(
            "{name:<16} greedy {} <= fwddeg+1 = {}, exact chromatic index {}",
            c.colours_used(),
            fwd.iter().max().unwrap() + 1,
            exact
        );
    }

    // Vizing on the Petersen graph: class two, so 4 = max degree + 1.
    let p = petersen();
    let c = vizing(&p);
    verify_colouring(p.hypergraph(), &c).unwrap();
    println!(
        "petersen         vizing {} colours (max degree {}), exact {}",
        c.colours_used(),
        p.max_degree(),
        oracle::chromatic_index(p.hypergraph(), 16).unwrap()
    );

    // Even cycles close at 2 after the colour-reduction pass.
    let cycle = hypernibble::Graph::from_edges(
        8,
        (0..8).map(|i| (i, (i + 1) % 8)).collect(),
    )
    .unwrap();
    let c = vizing(&cycle);
    verify_colouring(cycle.hypergraph(), &c).unwrap();
    println!("C_8              vizing {} colours", c.colours_used());
}
