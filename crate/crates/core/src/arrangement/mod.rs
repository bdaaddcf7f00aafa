//! Pairwise intersections of census lines, the conflict graph they define,
//! its ranks and independent sets.

mod graph;
mod independent;
mod intersect;
mod rank;

pub use graph::{conflict_graph, lines_intersect, ConflictGraph};
pub use independent::{independent_set, IndependentSetMode};
pub use intersect::{cross_facet_intersect, same_facet_intersect, LineImage, Piece};
pub use rank::{adjacency_rank, rank_gf2, rank_mod, rank_rational, rref_mod, Ranks};
