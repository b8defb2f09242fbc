//! Generates one instance per family and prints its structural facts.
//!
//! ```bash
//! cargo run --release --example families
//! ```

use hypernibble::generators::{
    complete_graph_hg, degenerate_plane, latin_square_hypergraph, projective_plane,
    random_linear, random_pair_cover, steiner_auxiliary, steiner_triple_system, LatinSquare,
};
use hypernibble::Hypergraph;

fn show(name: &str, h: &Hypergraph) {
    let s = h.stats();
    println!(
        "{name:<22} n={:<5} m={:<6} sizes {}..{} max_deg={:<4} codeg={} linear={} intersecting={}",
        s.n,
        s.m,
        s.min_edge_size,
        s.max_edge_size,
        s.max_degree,
        s.max_codegree,
        s.is_linear,
        s.is_intersecting
    );
}

fn main() {
    show("fano = pg(2)", &projective_plane(2).unwrap());
    show("pg(3)", &projective_plane(3).unwrap());
    show("pg(5)", &projective_plane(5).unwrap());
    show("degenerate(10)", &degenerate_plane(10));
    show("complete K_9", &complete_graph_hg(9));
    show("sts(9)", &steiner_triple_system(9).unwrap());
    show("sts(13)", &steiner_triple_system(13).unwrap());
    show("sts(99)", &steiner_triple_system(99).unwrap());
    show("latin cyclic 5", &latin_square_hypergraph(&LatinSquare::cyclic(5)));
    show("steiner-aux(2,3,7)", &steiner_auxiliary(2, 3, 7).unwrap());

    let rl = random_linear(60, 3, 500, 1);
    println!(
        "random-linear(60,3):   requested {} achieved {} after {} rejected draws",
        rl.requested, rl.achieved, rl.rejected_draws
    );
    show("  instance", &rl.hypergraph);

    let pc = random_pair_cover(60, 0.5, 1);
    println!(
        "paircover(60, 0.5):    triple pair fraction {:.3}",
        pc.triple_pair_fraction
    );
    show("  instance", &pc.hypergraph);
}
