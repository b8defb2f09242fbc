//! Matchings and edge colourings for linear hypergraphs.
//!
//! The crate bundles:
//! - a compact hypergraph data model with verification predicates
//!   ([`hypergraph`], [`verify`]),
//! - structural transforms: dual, line graph, incidence hypergraph, shadow
//!   ([`transform`]), and canonical labelling ([`canonical`]),
//! - generators for classical families: projective planes, degenerate
//!   planes, Steiner triple systems, Latin-square hypergraphs and seeded
//!   random linear instances ([`generators`]),
//! - semi-random "nibble" matching engines, pseudorandom matching
//!   extraction, partial Steiner packing and a random greedy independent
//!   set ([`nibble`]),
//! - edge-colouring algorithms: ordered greedy, Vizing for graphs, the
//!   incidence-nibble colouring and the three-tier reserved-palette list
//!   colouring ([`colouring`]), with exact brute-force oracles ([`oracle`]),
//! - the reservoir/absorption colouring pipeline for {2,3}-uniform linear
//!   hypergraphs and the reorder/partition machinery for large-edge
//!   instances ([`efl`]),
//! - text formats and the experiment CLI ([`io`], [`cli`]).
//!
//! Start with the runnable examples in `examples/`; each demonstrates one
//! capability end to end.

pub mod canonical;
pub mod cli;
pub mod colouring;
pub mod efl;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod nibble;
pub mod oracle;
pub mod transform;
pub mod verify;

pub use hypergraph::{
    EdgeId, EdgeOrdering, Graph, Hypergraph, Matching, PartialEdgeColouring, Stats, VertexId,
};
