//! Edge-colouring algorithms: ordered greedy (with optional colour lists),
//! Vizing's fan recolouring for graphs, the incidence-nibble colouring, and
//! the three-tier reserved-palette list colouring.

use crate::hypergraph::{
    EdgeId, EdgeOrdering, Graph, Hypergraph, PartialEdgeColouring, VertexId,
};
use crate::nibble::{NibbleError, NibbleParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColouringError {
    #[error("edge {edge} has no available colour{}", tier.map(|t| format!(" (tier {t:?})")).unwrap_or_default())]
    ListExhausted {
        edge: EdgeId,
        tier: Option<Tier>,
    },
    #[error("no reserved colour set satisfied the per-edge bounds after {attempts} attempts")]
    ReservationFailed { attempts: u32 },
    #[error(transparent)]
    Nibble(#[from] NibbleError),
}

/// Per-edge colour lists.
#[derive(Debug, Clone)]
pub struct ListAssignment {
    /// `lists[e]` is the sorted set of colours allowed on edge `e`.
    lists: Vec<Vec<u32>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<u32>>) -> Self {
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Self { lists }
    }

    /// The same list `0..size` on every edge.
    pub fn uniform(m: usize, size: u32) -> Self {
        Self {
            lists: vec![(0..size).collect(); m],
        }
    }

    pub fn list(&self, e: EdgeId) -> &[u32] {
        &self.lists[e as usize]
    }

    pub fn m(&self) -> usize {
        self.lists.len()
    }

    pub fn max_colour(&self) -> u32 {
        self.lists
            .iter()
            .filter_map(|l| l.last().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Colours edges along `ord`, giving each edge the least colour (or least
/// list colour) not already on an intersecting edge.
///
/// Without lists this uses at most `max fwddeg + 1` colours.
pub fn greedy_by_ordering(
    h: &Hypergraph,
    ord: &EdgeOrdering,
    lists: Option<&ListAssignment>,
) -> Result<PartialEdgeColouring, ColouringError> {
    assert_eq!(ord.len(), h.m());
    let palette = match lists {
        Some(l) => l.max_colour() + 1,
        None => 0,
    };
    let mut colouring = PartialEdgeColouring::empty(h.m(), palette);
    let mut used: Vec<u32> = Vec::new();
    for &e in ord.order() {
        used.clear();
        for &v in h.edge(e) {
            for &f in h.edges_at(v) {
                if let Some(c) = colouring.get(f) {
                    used.push(c);
                }
            }
        }
        used.sort_unstable();
        used.dedup();
        let chosen = match lists {
            None => first_gap(&used),
            Some(l) => l
                .list(e)
                .iter()
                .copied()
                .find(|c| used.binary_search(c).is_err())
                .ok_or(ColouringError::ListExhausted { edge: e, tier: None })?,
        };
        colouring.assign(e, chosen);
    }
    Ok(colouring)
}

/// Least non-negative integer absent from the sorted, deduplicated `used`.
fn first_gap(used: &[u32]) -> u32 {
    for (i, &c) in used.iter().enumerate() {
        if c != i as u32 {
            return i as u32;
        }
    }
    used.len() as u32
}

/// Proper edge colouring of a simple graph with at most `max_degree + 1`
/// colours, by fan rotation and alternating-path flips, followed by a
/// bounded pass that tries to recolour the top colour class away entirely.
pub fn vizing(g: &Graph) -> PartialEdgeColouring {
    let delta = g.max_degree() as u32;
    let palette = (delta + 1).max(1);
    let mut state = FanState::new(g, palette);
    let mut colouring = PartialEdgeColouring::empty(g.m(), palette);
    for e in 0..g.m() as u32 {
        let ok = state.colour_edge(e, palette, &mut colouring);
        debug_assert!(ok, "delta + 1 colours always suffice");
    }
    // Colour reduction: repeatedly try to eliminate the highest colour by
    // recolouring its class within the smaller palette; stop at the first
    // edge that cannot move.
    'reduce: while colouring.colours_used() > 1 {
        let top = (0..palette)
            .rev()
            .find(|&c| !colouring.class(c).is_empty())
            .unwrap();
        if top == 0 {
            break;
        }
        for e in colouring.class(top) {
            state.uncolour_edge(e, &mut colouring);
            if !state.colour_edge(e, top, &mut colouring) {
                // Put it back and give up on further reduction.
                state.force_colour(e, top, &mut colouring);
                break 'reduce;
            }
        }
    }
    let used = colouring
        .iter()
        .map(|(_, c)| c + 1)
        .max()
        .unwrap_or(0)
        .max(1);
    colouring.set_palette_size(used);
    colouring
}

const EMPTY: u32 = u32::MAX;

/// Misra-Gries working state: per-vertex colour -> edge tables.
struct FanState<'a> {
    g: &'a Graph,
    palette: u32,
    /// at[v * palette + c] = edge coloured c at v, or EMPTY.
    at: Vec<u32>,
    in_fan: Vec<bool>,
}

impl<'a> FanState<'a> {
    fn new(g: &'a Graph, palette: u32) -> Self {
        Self {
            g,
            palette,
            at: vec![EMPTY; g.n() as usize * palette as usize],
            in_fan: vec![false; g.n() as usize],
        }
    }

    fn slot(&self, v: VertexId, c: u32) -> usize {
        v as usize * self.palette as usize + c as usize
    }

    /// Least colour in `0..cap` free at v.
    fn free(&self, v: VertexId, cap: u32) -> Option<u32> {
        (0..cap).find(|&c| self.at[self.slot(v, c)] == EMPTY)
    }

    fn set(&mut self, e: EdgeId, c: u32, colouring: &mut PartialEdgeColouring) {
        let (a, b) = self.g.endpoints(e);
        let (sa, sb) = (self.slot(a, c), self.slot(b, c));
        self.at[sa] = e;
        self.at[sb] = e;
        colouring.assign(e, c);
    }

    fn clear(&mut self, e: EdgeId, c: u32) {
        let (a, b) = self.g.endpoints(e);
        let (sa, sb) = (self.slot(a, c), self.slot(b, c));
        self.at[sa] = EMPTY;
        self.at[sb] = EMPTY;
    }

    fn uncolour_edge(&mut self, e: EdgeId, colouring: &mut PartialEdgeColouring) {
        if let Some(c) = colouring.get(e) {
            self.clear(e, c);
            colouring.unassign(e);
        }
    }

    fn force_colour(&mut self, e: EdgeId, c: u32, colouring: &mut PartialEdgeColouring) {
        self.set(e, c, colouring);
    }

    /// Colours the uncoloured edge `e` using at most `cap` colours; returns
    /// false when some vertex involved has no free colour below `cap`.
    fn colour_edge(&mut self, e: EdgeId, cap: u32, colouring: &mut PartialEdgeColouring) -> bool {
        let (u, v) = self.g.endpoints(e);
        // Maximal fan of u starting at v: the colour of each next edge is
        // free at the previous fan vertex.
        let mut fan: Vec<(VertexId, EdgeId)> = vec![(v, e)];
        self.in_fan[v as usize] = true;
        loop {
            let last = fan.last().unwrap().0;
            let Some(want) = self.free(last, cap) else {
                break;
            };
            let next = self.at[self.slot(u, want)];
            if next == EMPTY {
                break;
            }
            let (a, b) = self.g.endpoints(next);
            let w = if a == u { b } else { a };
            if self.in_fan[w as usize] {
                break;
            }
            self.in_fan[w as usize] = true;
            fan.push((w, next));
        }
        for &(w, _) in &fan {
            self.in_fan[w as usize] = false;
        }

        let (Some(c), Some(d)) = (
            self.free(u, cap),
            self.free(fan.last().unwrap().0, cap),
        ) else {
            return false;
        };

        if c != d {
            // Invert the maximal d/c alternating path starting at u.
            let mut x = u;
            let mut want = d;
            let mut path = Vec::new();
            loop {
                let edge = self.at[self.slot(x, want)];
                if edge == EMPTY {
                    break;
                }
                path.push(edge);
                let (a, b) = self.g.endpoints(edge);
                x = if a == x { b } else { a };
                want = if want == d { c } else { d };
            }
            // Two phases: consecutive path edges share vertices, so clear
            // every old slot before writing any new one.
            for (i, &edge) in path.iter().enumerate() {
                let old = if i % 2 == 0 { d } else { c };
                self.clear(edge, old);
            }
            for (i, &edge) in path.iter().enumerate() {
                let new = if i % 2 == 0 { c } else { d };
                self.set(edge, new, colouring);
            }
        }

        // d is now free at u; rotate the first fan prefix whose tip has d
        // free.
        let Some(j) = fan
            .iter()
            .position(|&(w, _)| self.at[self.slot(w, d)] == EMPTY)
        else {
            return false;
        };
        for i in 0..j {
            let (_, next_edge) = fan[i + 1];
            let colour = colouring.get(next_edge).expect("fan edges are coloured");
            self.clear(next_edge, colour);
            self.set(fan[i].1, colour, colouring);
        }
        self.set(fan[j].1, d, colouring);
        true
    }
}

/// Summary of an incidence-nibble colouring run.
#[derive(Debug, Clone, Serialize)]
pub struct IncidenceColouringReport {
    pub matching_colours: u32,
    pub leftover_colours: u32,
    pub leftover_edges: usize,
    pub colours_used: usize,
}

/// Colours `h` by extracting `d` edge-disjoint matchings from the implicit
/// d-wise incidence hypergraph (class `i` gets colour `i`), then colouring
/// the leftover edges greedily with fresh colours. Works for any edge
/// sizes.
///
/// A greedy completion pass always runs on the incidence matching: at desk
/// scale the bare rounds leave too much uncoloured.
pub fn incidence_nibble_colouring(
    h: &Hypergraph,
    d: u32,
    params: &NibbleParams,
) -> Result<(PartialEdgeColouring, IncidenceColouringReport), ColouringError> {
    let mut forced = *params;
    forced.completion = true;
    let layers = crate::nibble::incidence_matchings(h, d, &forced)?;
    let mut colouring = PartialEdgeColouring::empty(h.m(), d);
    for (i, layer) in layers.iter().enumerate() {
        for &e in layer {
            colouring.assign(e, i as u32);
        }
    }
    let leftover: Vec<EdgeId> = (0..h.m() as u32)
        .filter(|&e| colouring.get(e).is_none())
        .collect();
    let leftover_edges = leftover.len();
    // Greedy on the leftover with colours d, d+1, ...
    let mut used: Vec<u32> = Vec::new();
    let mut max_colour = d.saturating_sub(1);
    for &e in &leftover {
        used.clear();
        for &v in h.edge(e) {
            for &f in h.edges_at(v) {
                if let Some(c) = colouring.get(f) {
                    if c >= d {
                        used.push(c - d);
                    }
                }
            }
        }
        used.sort_unstable();
        used.dedup();
        let c = d + first_gap(&used);
        max_colour = max_colour.max(c);
        colouring.assign(e, c);
    }
    let report = IncidenceColouringReport {
        matching_colours: d,
        leftover_colours: if leftover_edges == 0 {
            0
        } else {
            max_colour - d + 1
        },
        leftover_edges,
        colours_used: colouring.colours_used(),
    };
    Ok((colouring, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tier {
    Large,
    Medium,
    Small,
}

/// Size thresholds and reservation knobs for the three-tier colouring.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TierParams {
    /// Edges of size <= small_threshold form the small tier (r1).
    pub small_threshold: usize,
    /// Edges of size > large_threshold form the large tier (r0).
    pub large_threshold: usize,
    /// Probability that a colour is reserved for the medium tier.
    pub reserve_rate: f64,
    /// Slack parameter, reported only.
    pub slack: f64,
    /// Attempts at sampling a reserved set before giving up.
    pub reservation_attempts: u32,
    /// Let small/medium edges fall back to the full list when their tier
    /// palette is exhausted (failures are reported either way).
    pub fallback: bool,
}

impl Default for TierParams {
    fn default() -> Self {
        Self {
            small_threshold: 8,
            large_threshold: 64,
            reserve_rate: 0.1,
            slack: 0.2,
            reservation_attempts: 100,
            fallback: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TierReport {
    pub large_edges: usize,
    pub medium_edges: usize,
    pub small_edges: usize,
    pub reserved_colours: usize,
    pub reservation_attempts: u32,
    /// Edges coloured outside their tier palette by the fallback pass.
    pub fallback_uses: usize,
    pub colours_used: usize,
}

/// Three-tier reserved-palette list colouring.
///
/// Reserves a random colour set R (each colour kept with probability
/// `reserve_rate`, resampled until every list satisfies
/// `|R ∩ C(e)| = (1 ± 1/2) * rate * |C(e)|`), colours large edges greedily
/// from `C(e) \ R` in size-decreasing order, medium edges from `C(e) ∩ R`,
/// and small edges from `C(e) \ R` minus the colours of their already
/// coloured neighbours.
pub fn three_tier_colouring(
    h: &Hypergraph,
    lists: &ListAssignment,
    tp: &TierParams,
    seed: u64,
) -> Result<(PartialEdgeColouring, TierReport), ColouringError> {
    assert_eq!(lists.m(), h.m());
    assert!(2 <= tp.small_threshold && tp.small_threshold < tp.large_threshold);
    assert!(tp.reserve_rate > 0.0 && tp.reserve_rate < 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colour_bound = lists.max_colour() + 1;

    // Sample the reserved set until the per-list bounds hold.
    let mut reserved = vec![false; colour_bound as usize];
    let mut attempts = 0;
    'sampling: loop {
        attempts += 1;
        if attempts > tp.reservation_attempts {
            return Err(ColouringError::ReservationFailed {
                attempts: attempts - 1,
            });
        }
        for r in reserved.iter_mut() {
            *r = rng.gen::<f64>() < tp.reserve_rate;
        }
        for e in 0..h.m() as u32 {
            let list = lists.list(e);
            if list.is_empty() {
                continue;
            }
            let hit = list.iter().filter(|&&c| reserved[c as usize]).count() as f64;
            let target = tp.reserve_rate * list.len() as f64;
            if hit < 0.5 * target || hit > 1.5 * target {
                continue 'sampling;
            }
        }
        break;
    }
    let reserved_colours = reserved.iter().filter(|&&r| r).count();

    let tier_of = |e: EdgeId| -> Tier {
        let size = h.edge(e).len();
        if size > tp.large_threshold {
            Tier::Large
        } else if size > tp.small_threshold {
            Tier::Medium
        } else {
            Tier::Small
        }
    };

    // Large first (size-decreasing), then medium, then small.
    let ord = EdgeOrdering::size_monotone_decreasing(h);
    let mut schedule: Vec<EdgeId> = Vec::with_capacity(h.m());
    for tier in [Tier::Large, Tier::Medium, Tier::Small] {
        schedule.extend(ord.order().iter().copied().filter(|&e| tier_of(e) == tier));
    }

    let mut colouring = PartialEdgeColouring::empty(h.m(), colour_bound);
    let mut fallback_uses = 0usize;
    let mut used: Vec<u32> = Vec::new();
    for &e in &schedule {
        let tier = tier_of(e);
        used.clear();
        for &v in h.edge(e) {
            for &f in h.edges_at(v) {
                if let Some(c) = colouring.get(f) {
                    used.push(c);
                }
            }
        }
        used.sort_unstable();
        used.dedup();
        let available = |c: &u32| used.binary_search(c).is_err();
        let from_tier = lists
            .list(e)
            .iter()
            .filter(|&&c| match tier {
                Tier::Medium => reserved[c as usize],
                Tier::Large | Tier::Small => !reserved[c as usize],
            })
            .copied()
            .find(|c| available(c));
        let chosen = match from_tier {
            Some(c) => c,
            None if tp.fallback => {
                fallback_uses += 1;
                lists
                    .list(e)
                    .iter()
                    .copied()
                    .find(|c| available(c))
                    .ok_or(ColouringError::ListExhausted {
                        edge: e,
                        tier: Some(tier),
                    })?
            }
            None => {
                return Err(ColouringError::ListExhausted {
                    edge: e,
                    tier: Some(tier),
                })
            }
        };
        colouring.assign(e, chosen);
    }

    let report = TierReport {
        large_edges: schedule.iter().filter(|&&e| tier_of(e) == Tier::Large).count(),
        medium_edges: schedule.iter().filter(|&&e| tier_of(e) == Tier::Medium).count(),
        small_edges: schedule.iter().filter(|&&e| tier_of(e) == Tier::Small).count(),
        reserved_colours,
        reservation_attempts: attempts,
        fallback_uses,
        colours_used: colouring.colours_used(),
    };
    Ok((colouring, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        complete_graph_hg, degenerate_plane, petersen, projective_plane, steiner_triple_system,
    };
    use crate::oracle;
    use crate::transform::forward_degree_profile;
    use crate::verify::verify_colouring;

    #[test]
    fn greedy_on_matching_uses_one_colour() {
        let h = Hypergraph::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let c = greedy_by_ordering(&h, &EdgeOrdering::identity(3), None).unwrap();
        assert_eq!(c.colours_used(), 1);
    }

    #[test]
    fn greedy_on_fano_uses_seven() {
        let fano = projective_plane(2).unwrap();
        let ord = EdgeOrdering::identity(7);
        let c = greedy_by_ordering(&fano, &ord, None).unwrap();
        assert!(verify_colouring(&fano, &c).is_ok());
        assert_eq!(c.colours_used(), 7);
    }

    #[test]
    fn greedy_respects_fwddeg_bound() {
        let k4 = complete_graph_hg(4);
        let ord = EdgeOrdering::identity(k4.m());
        let c = greedy_by_ordering(&k4, &ord, None).unwrap();
        let fwd = forward_degree_profile(&k4, &ord);
        let bound = *fwd.iter().max().unwrap() + 1;
        assert!(c.colours_used() <= bound as usize);
        assert_eq!(oracle::chromatic_index(&k4, 16).unwrap(), 3);
    }

    #[test]
    fn greedy_with_tight_lists_fails_with_witness() {
        let fano = projective_plane(2).unwrap();
        let lists = ListAssignment::uniform(7, 6);
        let err = greedy_by_ordering(&fano, &EdgeOrdering::identity(7), Some(&lists));
        assert!(matches!(
            err,
            Err(ColouringError::ListExhausted { tier: None, .. })
        ));
    }

    #[test]
    fn vizing_even_cycle_two_colours() {
        let g = Graph::from_edges(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
            .unwrap();
        let c = vizing(&g);
        assert!(verify_colouring(g.hypergraph(), &c).is_ok());
        assert_eq!(c.colours_used(), 2);
    }

    #[test]
    fn vizing_triangle_three_colours() {
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = vizing(&g);
        assert!(verify_colouring(g.hypergraph(), &c).is_ok());
        assert_eq!(c.colours_used(), 3);
    }

    #[test]
    fn vizing_petersen_four_colours() {
        let g = petersen();
        let c = vizing(&g);
        assert!(verify_colouring(g.hypergraph(), &c).is_ok());
        assert!(c.is_total());
        assert_eq!(c.colours_used(), 4);
        assert_eq!(oracle::chromatic_index(g.hypergraph(), 16).unwrap(), 4);
    }

    #[test]
    fn vizing_random_graphs_within_delta_plus_one() {
        for seed in 0..60u64 {
            let g = random_graph(24, 0.2, seed);
            let c = vizing(&g);
            assert!(verify_colouring(g.hypergraph(), &c).is_ok(), "seed {seed}");
            assert!(c.is_total());
            assert!(c.colours_used() <= g.max_degree() + 1, "seed {seed}");
        }
    }

    pub(crate) fn random_graph(n: u32, p: f64, seed: u64) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen::<f64>() < p {
                    pairs.push((a, b));
                }
            }
        }
        Graph::from_edges(n, pairs).unwrap()
    }

    #[test]
    fn incidence_colouring_on_sts() {
        let sts = steiner_triple_system(9).unwrap();
        let (c, report) = incidence_nibble_colouring(&sts, 4, &NibbleParams::default().with_seed(1))
            .unwrap();
        assert!(verify_colouring(&sts, &c).is_ok());
        assert!(c.is_total());
        assert!(c.colours_used() >= 4); // chromatic index >= max degree
        assert_eq!(oracle::chromatic_index(&sts, 16).unwrap(), 4);
        assert_eq!(report.colours_used, c.colours_used());
    }

    #[test]
    fn incidence_colouring_on_single_matching() {
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let (c, _) = incidence_nibble_colouring(&h, 1, &NibbleParams::default()).unwrap();
        assert!(c.is_total());
        assert_eq!(c.colours_used(), 1);
    }

    #[test]
    fn three_tier_fano_succeeds_with_seven() {
        let fano = projective_plane(2).unwrap();
        let lists = ListAssignment::uniform(7, 7);
        let (c, report) =
            three_tier_colouring(&fano, &lists, &TierParams::default(), 5).unwrap();
        assert!(verify_colouring(&fano, &c).is_ok());
        assert!(c.is_total());
        assert_eq!(c.colours_used(), 7);
        assert!(report.fallback_uses > 0, "the reserved colour must be reclaimed");
    }

    #[test]
    fn three_tier_mixed_sizes() {
        // A large edge, medium edges and small edges around it.
        let mut edges = vec![(0..70u32).collect::<Vec<_>>()];
        for i in 0..6 {
            edges.push((70 + i * 12..70 + (i + 1) * 12).collect());
        }
        edges.push(vec![0, 70]);
        edges.push(vec![1, 82]);
        let h = Hypergraph::new(160, edges).unwrap();
        let lists = ListAssignment::uniform(h.m(), 200);
        let (c, report) =
            three_tier_colouring(&h, &lists, &TierParams::default(), 3).unwrap();
        assert!(verify_colouring(&h, &c).is_ok());
        assert!(c.is_total());
        assert_eq!(report.large_edges, 1);
        assert_eq!(report.medium_edges, 6);
        assert_eq!(report.small_edges, 2);
    }

    #[test]
    fn three_tier_degenerate_plane_exact_palette() {
        let dp = degenerate_plane(40);
        let lists = ListAssignment::uniform(dp.m(), 40);
        let (c, _) = three_tier_colouring(&dp, &lists, &TierParams::default(), 7).unwrap();
        assert!(verify_colouring(&dp, &c).is_ok());
        assert!(c.is_total());
        assert_eq!(c.colours_used(), 40);
    }
}
