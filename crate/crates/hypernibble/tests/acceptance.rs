//! Acceptance suite: one test per criterion, each printing a PASS line
//! (a failure panics with the offending details).
//!
//! ```bash
//! cargo test --test acceptance -- --nocapture
//! ```

use hypernibble::colouring::{
    greedy_by_ordering, incidence_nibble_colouring, three_tier_colouring, vizing, ListAssignment,
    TierParams,
};
use hypernibble::efl::{
    efl_small_colouring, partition_large, reorder, EflParams, PartitionOutcome, ReorderOutcome,
};
use hypernibble::generators::{
    complete_graph_hg, degenerate_plane, latin_square_hypergraph, petersen, projective_plane,
    random_linear, random_pair_cover, steiner_auxiliary, steiner_triple_system, LatinSquare,
};
use hypernibble::nibble::{
    greedy_independent_set_trianglefree, partial_steiner, random_greedy_matching, rodl_nibble,
    NibbleParams,
};
use hypernibble::transform::{forward_degree_profile, incidence_hypergraph, line_graph};
use hypernibble::verify::{verify_colouring, verify_linear, verify_matching};
use hypernibble::{oracle, EdgeOrdering, Graph, Hypergraph};

/// The named corpus: every instance family the criteria quantify over.
fn corpus() -> Vec<(String, Hypergraph)> {
    let mut out: Vec<(String, Hypergraph)> = Vec::new();
    out.push(("fano".into(), projective_plane(2).unwrap()));
    out.push(("pg3".into(), projective_plane(3).unwrap()));
    out.push(("pg5".into(), projective_plane(5).unwrap()));
    for n in [10, 100] {
        out.push((format!("degenerate{n}"), degenerate_plane(n)));
    }
    for n in [5, 9, 15] {
        out.push((format!("k{n}"), complete_graph_hg(n)));
    }
    for n in [7u32, 9, 13, 15, 99, 999] {
        out.push((format!("sts{n}"), steiner_triple_system(n).unwrap()));
    }
    for n in [3u32, 5, 7] {
        out.push((
            format!("latin{n}"),
            latin_square_hypergraph(&LatinSquare::cyclic(n)),
        ));
    }
    for seed in 0..50u64 {
        let h = random_linear(60, 3, 400, seed).hypergraph;
        out.push((format!("rl{seed}"), h));
    }
    for seed in 0..50u64 {
        let fractions = [0.0, 0.25, 0.5, 0.75, 1.0];
        let h = random_pair_cover(60, fractions[seed as usize % 5], seed).hypergraph;
        out.push((format!("pc{seed}"), h));
    }
    out
}

#[test]
fn a1_validity_suite() {
    let start = std::time::Instant::now();
    let corpus = corpus();
    for (name, h) in &corpus {
        // Matching engines.
        let nib = rodl_nibble(h, &NibbleParams::default().with_seed(1));
        verify_matching(h, nib.matchings[0].edge_ids())
            .unwrap_or_else(|w| panic!("{name}: nibble: {w}"));
        let greedy = random_greedy_matching(h, 1);
        verify_matching(h, greedy.matchings[0].edge_ids())
            .unwrap_or_else(|w| panic!("{name}: greedy matching: {w}"));

        // Greedy colouring along two orderings.
        for ord in [
            EdgeOrdering::identity(h.m()),
            EdgeOrdering::size_monotone_decreasing(h),
        ] {
            let c = greedy_by_ordering(h, &ord, None)
                .unwrap_or_else(|e| panic!("{name}: greedy colour: {e}"));
            verify_colouring(h, &c).unwrap_or_else(|w| panic!("{name}: greedy colour: {w}"));
        }

        // Incidence colouring with the full palette D = max degree.
        let d = h.max_degree().max(1) as u32;
        let (c, _) = incidence_nibble_colouring(h, d, &NibbleParams::default().with_seed(1))
            .unwrap_or_else(|e| panic!("{name}: incidence colour: {e}"));
        verify_colouring(h, &c).unwrap_or_else(|w| panic!("{name}: incidence colour: {w}"));
        assert!(c.is_total(), "{name}: incidence colouring must be total");

        // Vizing on the 2-uniform corpus members.
        if h.max_edge_size() == 2 && h.m() > 0 {
            let g = Graph::from_hypergraph(h.clone()).unwrap();
            let c = vizing(&g);
            verify_colouring(h, &c).unwrap_or_else(|w| panic!("{name}: vizing: {w}"));
            assert!(c.is_total());
        }

        // Three-tier list colouring on the small linear members.
        if h.n() <= 100 && h.stats().is_linear {
            let lists = ListAssignment::uniform(h.m(), h.n().max(4));
            if let Ok((c, _)) = three_tier_colouring(h, &lists, &TierParams::default(), 1) {
                verify_colouring(h, &c).unwrap_or_else(|w| panic!("{name}: three-tier: {w}"));
            }
        }

        // Reordering postconditions are self-verified; exercise it on the
        // random linear members.
        if name.starts_with("rl") {
            reorder(h, 0.2, 20.0).unwrap_or_else(|e| panic!("{name}: reorder: {e}"));
        }
    }

    // The full pipeline on pair covers across the triple-fraction range.
    for (i, frac) in [0.45, 0.55, 0.65, 0.75, 0.85].iter().enumerate() {
        for seed in 0..2u64 {
            let h = random_pair_cover(500, *frac, 100 + seed).hypergraph;
            let run = efl_small_colouring(&h, &EflParams::default().with_seed(seed))
                .unwrap_or_else(|e| panic!("efl frac {frac} seed {seed}: {e}"));
            verify_colouring(&h, &run.colouring)
                .unwrap_or_else(|w| panic!("efl frac {frac} seed {seed}: {w}"));
            assert!(run.colouring.is_total(), "efl run {i}.{seed} left edges uncoloured");
        }
    }

    // Partial Steiner packings and the triangle-free independent set.
    for n in [7u32, 9] {
        let ps = partial_steiner(2, 3, n, &NibbleParams::default().with_seed(1)).unwrap();
        let blocks = Hypergraph::new(n, ps.blocks.clone()).unwrap();
        verify_linear(&blocks).unwrap_or_else(|w| panic!("partial steiner {n}: {w}"));
    }
    let p = petersen();
    let is = greedy_independent_set_trianglefree(&p, 1).unwrap();
    for (i, &a) in is.vertices.iter().enumerate() {
        for &b in &is.vertices[i + 1..] {
            assert!(!p.has_edge(a, b), "independent set contains an edge");
        }
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "validity suite took {elapsed:?}, budget is 5 minutes"
    );
    println!("ACCEPTANCE a1 validity-suite: PASS ({elapsed:?})");
}

#[test]
fn a2_oracle_equivalence() {
    // Chromatic index equals the chromatic number of the line graph,
    // computed by two independent brute forces.
    let mut checked = 0;
    let mut small: Vec<(String, Hypergraph)> = corpus()
        .into_iter()
        .filter(|(_, h)| h.m() <= 8 && h.m() > 0)
        .collect();
    // Extra small instances beyond the named corpus.
    for seed in 0..30u64 {
        let k = 2 + (seed % 2) as u32;
        let h = random_linear(8, k, 7, seed).hypergraph;
        if h.m() > 0 {
            small.push((format!("small{seed}"), h));
        }
    }
    small.push((
        "path".into(),
        Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap(),
    ));
    for (name, h) in &small {
        let direct = oracle::chromatic_index(h, 8).unwrap();
        let via_line_graph = oracle::graph_chromatic_number(&line_graph(h), 8).unwrap();
        assert_eq!(direct, via_line_graph, "{name}: oracle mismatch");
        checked += 1;
    }
    assert!(checked >= 10, "need a meaningful oracle corpus");

    // Matchings of the t-wise incidence hypergraph correspond exactly to
    // t-tuples of pairwise edge-disjoint matchings: exhaustive over all
    // hypergraphs with <= 4 edges on <= 6 vertices and t <= 3.
    let universe: Vec<Vec<u32>> = {
        let mut out = Vec::new();
        for mask in 1u32..64 {
            if mask.count_ones() >= 2 {
                out.push((0..6).filter(|&v| mask >> v & 1 == 1).collect());
            }
        }
        out
    };
    assert_eq!(universe.len(), 57);
    let mut instances: u64 = 0;
    let mut stack = vec![0usize; 0];
    // Enumerate edge subsets of size 0..=4 by index combinations.
    enumerate_subsets(&universe, 4, &mut stack, &mut |edges: &[usize]| {
        let h = Hypergraph::new(6, edges.iter().map(|&i| universe[i].clone()).collect())
            .expect("distinct sorted edges");
        for t in 1..=3u32 {
            check_incidence_bijection(&h, t);
        }
        instances += 1;
    });
    assert_eq!(instances, 1 + 57 + 1596 + 29260 + 395010);
    println!("ACCEPTANCE a2 oracle-equivalence: PASS ({checked} oracle pairs, {instances} incidence instances)");
}

fn enumerate_subsets(
    universe: &[Vec<u32>],
    max_size: usize,
    stack: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    fn rec(
        universe_len: usize,
        from: usize,
        max_size: usize,
        stack: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        visit(stack);
        if stack.len() == max_size {
            return;
        }
        for i in from..universe_len {
            stack.push(i);
            rec(universe_len, i + 1, max_size, stack, visit);
            stack.pop();
        }
    }
    rec(universe.len(), 0, max_size, stack, visit);
}

/// Route A: all matchings of the explicit incidence hypergraph.
/// Route B: all t-tuples of pairwise edge-disjoint matchings of `h`.
/// The extraction map must be a bijection between the two.
fn check_incidence_bijection(h: &Hypergraph, t: u32) {
    let inc = incidence_hypergraph(h, t, 1 << 16).unwrap();
    let mut inc_matchings: Vec<Vec<u32>> = Vec::new();
    enumerate_matchings(&inc, &mut inc_matchings);

    // Extract every incidence matching into layers and re-encode.
    let m = h.m();
    let mut seen_tuples: std::collections::HashSet<Vec<Vec<u32>>> =
        std::collections::HashSet::new();
    for matching in &inc_matchings {
        let mut layers: Vec<Vec<u32>> = vec![Vec::new(); t as usize];
        for &inc_edge in matching {
            // The first vertex of an incidence edge is the edge-vertex id;
            // the second is a copy `m + layer * n + v`.
            let edge = inc.edge(inc_edge);
            let base_edge = edge[0] as usize;
            let copy = edge[1] as usize - m;
            let layer_idx = copy / h.n() as usize;
            layers[layer_idx].push(base_edge as u32);
        }
        for layer in &mut layers {
            layer.sort_unstable();
        }
        // Each layer is a matching of h, and the layers are pairwise
        // edge-disjoint.
        let mut used = vec![false; m];
        for layer in &layers {
            verify_matching(h, layer).expect("layer must be a matching");
            for &e in layer {
                assert!(!used[e as usize], "layers must be edge-disjoint");
                used[e as usize] = true;
            }
        }
        assert!(
            seen_tuples.insert(layers),
            "extraction must be injective"
        );
    }

    // Route B: count the tuples directly.
    let mut base_matchings: Vec<Vec<u32>> = Vec::new();
    enumerate_matchings(h, &mut base_matchings);
    let tuples = count_disjoint_tuples(&base_matchings, t as usize, m);
    assert_eq!(
        inc_matchings.len() as u64,
        tuples,
        "matchings of the incidence hypergraph vs tuples, t = {t}"
    );
}

fn enumerate_matchings(h: &Hypergraph, out: &mut Vec<Vec<u32>>) {
    fn rec(
        h: &Hypergraph,
        from: u32,
        covered: &mut Vec<bool>,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        out.push(current.clone());
        for e in from..h.m() as u32 {
            if h.edge(e).iter().any(|&v| covered[v as usize]) {
                continue;
            }
            for &v in h.edge(e) {
                covered[v as usize] = true;
            }
            current.push(e);
            rec(h, e + 1, covered, current, out);
            current.pop();
            for &v in h.edge(e) {
                covered[v as usize] = false;
            }
        }
    }
    let mut covered = vec![false; h.n() as usize];
    let mut current = Vec::new();
    rec(h, 0, &mut covered, &mut current, out);
}

fn count_disjoint_tuples(matchings: &[Vec<u32>], t: usize, m: usize) -> u64 {
    fn rec(matchings: &[Vec<u32>], remaining: usize, used: &mut Vec<bool>) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        'outer: for matching in matchings {
            for &e in matching {
                if used[e as usize] {
                    continue 'outer;
                }
            }
            for &e in matching {
                used[e as usize] = true;
            }
            total += rec(matchings, remaining - 1, used);
            for &e in matching {
                used[e as usize] = false;
            }
        }
        total
    }
    let mut used = vec![false; m];
    rec(matchings, t, &mut used)
}

#[test]
fn a3_exact_bounds() {
    // Greedy stays within max fwddeg + 1 on the whole corpus.
    for (name, h) in corpus() {
        let ord = EdgeOrdering::size_monotone_decreasing(&h);
        let fwd = forward_degree_profile(&h, &ord);
        let bound = fwd.iter().max().copied().unwrap_or(0) as usize + 1;
        let c = greedy_by_ordering(&h, &ord, None).unwrap();
        assert!(
            c.colours_used() <= bound,
            "{name}: greedy used {} > {bound}",
            c.colours_used()
        );
    }

    // Vizing within max degree + 1 on 500 random graphs.
    use rand::{Rng, SeedableRng};
    for seed in 0..500u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(4..=64);
        let p = rng.gen_range(0.05..0.5);
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen::<f64>() < p {
                    pairs.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, pairs).unwrap();
        let c = vizing(&g);
        verify_colouring(g.hypergraph(), &c).unwrap_or_else(|w| panic!("seed {seed}: {w}"));
        assert!(c.is_total());
        assert!(
            c.colours_used() <= g.max_degree() + 1,
            "seed {seed}: vizing used {} > {}",
            c.colours_used(),
            g.max_degree() + 1
        );
        // Sanity floor: a proper colouring never beats the max degree.
        assert!(c.colours_used() >= g.max_degree() || g.m() == 0);
    }

    // Petersen is class two: exactly 4 colours, oracle-confirmed.
    let p = petersen();
    assert_eq!(vizing(&p).colours_used(), 4);
    assert_eq!(oracle::chromatic_index(p.hypergraph(), 16).unwrap(), 4);

    // Intersecting instances need exactly one colour per edge.
    for (name, h) in [
        ("fano", projective_plane(2).unwrap()),
        ("degenerate10", degenerate_plane(10)),
        ("degenerate100", degenerate_plane(100)),
    ] {
        let ord = EdgeOrdering::identity(h.m());
        let c = greedy_by_ordering(&h, &ord, None).unwrap();
        assert_eq!(c.colours_used(), h.m(), "{name}");
        assert_eq!(h.m(), h.n() as usize, "{name} has n edges");
    }
    println!("ACCEPTANCE a3 exact-bounds: PASS");
}

#[test]
fn a4_de_bruijn_erdos() {
    // The largest pairwise-intersecting subfamily of a linear hypergraph
    // on n vertices has at most n edges; exhaustive on every generated
    // instance with n <= 10.
    let mut checked = 0;
    for n in 5..=10u32 {
        for seed in 0..8u64 {
            for k in [2u32, 3] {
                if k > n {
                    continue;
                }
                let h = random_linear(n, k, 15, seed).hypergraph;
                if h.m() == 0 {
                    continue;
                }
                let best = oracle::max_intersecting(&h, 16).unwrap();
                assert!(
                    best <= n,
                    "n={n} k={k} seed={seed}: intersecting family of {best} edges"
                );
                checked += 1;
            }
        }
    }
    // The projective plane attains the bound.
    assert_eq!(
        oracle::max_intersecting(&projective_plane(2).unwrap(), 16).unwrap(),
        7
    );
    println!("ACCEPTANCE a4 de-bruijn-erdos: PASS ({checked} instances)");
}

#[test]
fn a5_efl_pipeline() {
    let mut within_budget = 0;
    let mut runs = 0;
    for n in [500u32, 1000, 2000] {
        for seed in 0..5u64 {
            let h = random_pair_cover(n, 0.5, seed).hypergraph;
            let start = std::time::Instant::now();
            let run = efl_small_colouring(&h, &EflParams::default().with_seed(seed))
                .unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            let elapsed = start.elapsed();
            verify_colouring(&h, &run.colouring)
                .unwrap_or_else(|w| panic!("n={n} seed={seed}: {w}"));
            assert!(run.colouring.is_total(), "n={n} seed={seed}: partial output");
            runs += 1;
            if run.n_plus_one_ok {
                within_budget += 1;
            }
            println!(
                "  efl n={n} seed={seed}: {} colours vs {} [{elapsed:?}]",
                run.total_colours,
                n + 1
            );
            assert!(
                elapsed.as_secs() <= 60,
                "n={n} seed={seed} took {elapsed:?}, budget 60 s"
            );
        }
    }
    assert!(
        within_budget * 10 >= runs * 9,
        "only {within_budget}/{runs} runs within n + 1"
    );
    println!("ACCEPTANCE a5 efl-pipeline: PASS ({within_budget}/{runs} within n+1)");
}

#[test]
fn a6_nibble_regression() {
    let sts = steiner_triple_system(999).unwrap();
    for seed in 0..5u64 {
        let report = rodl_nibble(&sts, &NibbleParams::default().with_seed(seed));
        verify_matching(&sts, report.matchings[0].edge_ids()).unwrap();
        let fraction = report.uncovered as f64 / sts.n() as f64;
        assert!(
            fraction <= 0.15,
            "seed {seed}: uncovered fraction {fraction:.4} above the frozen 15% baseline"
        );
        // Monotone in the round count: rounds only ever add edges.
        assert!(
            report
                .uncovered_by_round
                .windows(2)
                .all(|w| w[1] <= w[0]),
            "seed {seed}: uncovered counts increased between rounds"
        );
        // The prefix property behind it, spot-checked directly.
        let mut short = NibbleParams::default().with_seed(seed);
        short.rounds = 10;
        let prefix = rodl_nibble(&sts, &short);
        assert!(prefix.matchings[0]
            .edge_ids()
            .iter()
            .all(|e| report.matchings[0].contains(*e)));
        assert_eq!(
            prefix.uncovered,
            report.uncovered_by_round[9],
            "per-round trace must match a shorter run"
        );
    }
    println!("ACCEPTANCE a6 nibble-regression: PASS");
}

#[test]
fn a7_incidence_regression() {
    let sts = steiner_triple_system(999).unwrap();
    let d = 499u32;
    let (colouring, report) =
        incidence_nibble_colouring(&sts, d, &NibbleParams::default().with_seed(0)).unwrap();
    verify_colouring(&sts, &colouring).unwrap();
    assert!(colouring.is_total());
    let used = colouring.colours_used();
    assert!(used >= d as usize, "chromatic index is at least the degree");
    assert!(
        (used as f64) <= 1.3 * d as f64,
        "{used} colours above the frozen 1.3 D baseline"
    );
    assert_eq!(report.colours_used, used);
    println!("ACCEPTANCE a7 incidence-regression: PASS ({used} colours for D = {d})");
}

#[test]
fn a8_partial_steiner() {
    for n in [7u32, 9, 13, 15] {
        let mut best = 0.0f64;
        for seed in 0..64u64 {
            let ps = partial_steiner(2, 3, n, &NibbleParams::default().with_seed(seed)).unwrap();
            // No pair covered twice.
            let blocks = Hypergraph::new(n, ps.blocks.clone()).unwrap();
            verify_linear(&blocks).unwrap_or_else(|w| panic!("n={n} seed={seed}: {w}"));
            assert!(ps.fill_fraction <= 1.0 + 1e-12);
            best = best.max(ps.fill_fraction);
            if best >= 1.0 {
                break;
            }
        }
        if n == 7 || n == 9 {
            assert!(
                (best - 1.0).abs() < 1e-9,
                "n={n}: full system not reached, best fill {best:.3}"
            );
        }
    }
    // The brute force confirms the full systems exist: the auxiliary
    // hypergraphs have perfect matchings.
    assert_eq!(
        oracle::matching_number(&steiner_auxiliary(2, 3, 7).unwrap(), 64).unwrap(),
        7
    );
    assert_eq!(
        oracle::matching_number(&steiner_auxiliary(2, 3, 9).unwrap(), 96).unwrap(),
        12
    );
    println!("ACCEPTANCE a8 partial-steiner: PASS");
}

#[test]
fn a9_reorder_partition_postconditions() {
    // Both operations verify their stated postconditions internally and
    // fail loudly otherwise; drive them across 100 random large-edge
    // instances.
    use rand::{Rng, SeedableRng};
    let mut windows = 0;
    for seed in 0..100u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(150..260);
        let k = rng.gen_range(12..=14);
        let target = rng.gen_range(20..((n as usize * (n as usize - 1)) / (k as usize * (k as usize - 1))));
        let h = random_linear(n, k, target, seed).hypergraph;
        assert!(h.min_edge_size() >= 12);
        match reorder(&h, 0.2, 20.0).unwrap_or_else(|e| panic!("seed {seed}: reorder: {e}")) {
            ReorderOutcome::AllGood { max_fwddeg, .. } => {
                assert!((max_fwddeg as f64) <= 0.8 * n as f64);
            }
            ReorderOutcome::Window { checks, .. } => {
                assert!(checks.iter().all(|c| c.ok));
                windows += 1;
            }
        }
        match partition_large(&h, 1e-4)
            .unwrap_or_else(|e| panic!("seed {seed}: partition: {e}"))
        {
            PartitionOutcome::ColourableCheaply { colour_bound, .. } => {
                assert!((colour_bound as f64) <= (1.0 - 1e-4) * n as f64);
            }
            PartitionOutcome::Partitioned(p) => {
                assert!(p.checks.iter().all(|c| c.ok));
            }
        }
    }
    // The window branch of the partition, exercised where it is reachable:
    // a projective plane large enough that m - 1 exceeds (1 - 2 sigma) n.
    match partition_large(&projective_plane(71).unwrap(), 1e-4).unwrap() {
        PartitionOutcome::Partitioned(p) => {
            assert_eq!(p.window.len(), 5113);
            assert!(p.checks.iter().all(|c| c.ok));
        }
        _ => panic!("pg(71) must be partitioned"),
    }
    println!("ACCEPTANCE a9 reorder-partition: PASS ({windows} window variants among reorders)");
}

#[test]
fn a10_conjecture_baselines() {
    // Report-only columns: emitted with the documented conjectured values,
    // never used as a gate. Driven through the CLI binary.
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("results.csv");
    for (family, n, algo) in [
        ("sts", 13u32, "greedy-colour"),
        ("sts", 15, "greedy-colour"),
        ("sts", 15, "greedy-match"),
    ] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_hypernibble"))
            .args([
                "run",
                "--family",
                family,
                "--n",
                &n.to_string(),
                "--algo",
                algo,
                "--csv",
                csv.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }
    for order in [3u32, 5, 7] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_hypernibble"))
            .args([
                "run",
                "--family",
                "latin",
                "--order",
                &order.to_string(),
                "--algo",
                "greedy-match",
                "--csv",
                csv.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }

    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("brouwer_conjectured_min_matching"));
    assert!(header.contains("mnr_conjectured_colours"));
    assert!(header.contains("rbs_conjectured_transversal"));
    let header_cols: Vec<&str> = header.split(',').collect();
    let col = |name: &str| header_cols.iter().position(|&c| c == name).unwrap();
    let mut sts_rows = 0;
    let mut latin_rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let family = cells[col("family")];
        let n: u32 = cells[col("n")].parse().unwrap();
        assert_eq!(cells[col("status")], "ok", "baselines must never gate");
        match family {
            "sts" => {
                assert_eq!(
                    cells[col("brouwer_conjectured_min_matching")],
                    ((n - 4) / 3).to_string()
                );
                assert_eq!(
                    cells[col("mnr_conjectured_colours")],
                    ((n - 1) / 2 + 3).to_string()
                );
                sts_rows += 1;
            }
            "latin" => {
                let order = n / 3;
                assert_eq!(
                    cells[col("rbs_conjectured_transversal")],
                    (order - 1).to_string()
                );
                // Exact matching number via the oracle for orders <= 7.
                let nu: u32 = cells[col("oracle_matching_number")].parse().unwrap();
                let expected = if order % 2 == 1 { order } else { order - 1 };
                assert_eq!(nu, expected, "cyclic square transversal number");
                latin_rows += 1;
            }
            other => panic!("unexpected family {other}"),
        }
    }
    assert_eq!(sts_rows, 3);
    assert_eq!(latin_rows, 3);
    println!("ACCEPTANCE a10 conjecture-baselines: PASS");
}
