//! Analysis tools: typed matching graphs, i-connections, degree peeling,
//! closeness to templates and good/bad vertex classification.

mod connections;
mod fit;
mod mgraph;
mod peel;

pub use connections::{default_connection_threshold, i_connections, IConnection};
pub use fit::{classify_good_vertices, closeness, ClosenessReport, GoodnessReport};
pub use mgraph::{edge_pair_type, matching_graph, orientation, EdgeType, MatchingGraph, Orientation};
pub use peel::{peel_subgraph, Peeled, SimpleGraph};
