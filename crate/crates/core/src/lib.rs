//! Kazhdan–Lusztig polynomials and μ-coefficients for the symmetric group,
//! with the Bruhat-interval, Robinson–Schensted and left-cell machinery used to
//! search for pairs with `μ > 1`.
//!
//! Polynomial arithmetic is generic over an exact [`Coefficient`] type; the
//! aliases below fix the common choices.

pub mod bruhat;
pub mod kl;
pub mod perm;
pub mod qpoly;
pub mod rsk;
pub mod scalar;
pub mod search;
pub mod wgraph;

pub use bruhat::{
    coatoms, delta, difference_grid, enumerate_interval, forced_positions, is_flush, leq, rank,
    reduce_pair, render_picture, weak_left_covers, BruhatError, DifferenceGrid, IntervalIter,
    ReducedPair,
};
pub use kl::{
    canonicalize, theta_sets, CacheError, CacheStats, Canonical, CanonicalPair, KlCache, KlEngine,
    KlError, PairKey, Side, Strategy, ThetaSets, ThetaSpec,
};
pub use perm::{flatten, DescentSet, PermError, Permutation, MAX_DEGREE};
pub use qpoly::{PolyParseError, QPoly};
pub use rsk::{
    count_standard_tableaux, factorial, insertion_tableau, inverse_rsk, is_tableau_word,
    knuth_applicable, knuth_apply, knuth_apply_right, knuth_interchange, left_cell, partitions,
    recording_tableau, rsk, standard_tableaux, RskError, Shape, Tableau, WordKind,
};
pub use scalar::Coefficient;
pub use search::{
    choose_recording, generate_pairs, generate_shape_pairs, run_filter, run_search, run_search_with,
    CandidatePair, Filter,
    FilterSet, SearchConfig, SearchError, SearchReport, Survivor,
};
pub use wgraph::{
    action_matrices, action_matrix, check_relations, kl_graph, ls_graph, CellGraph,
    GeneratorMatrix, Relation, RelationFailure, RelationReport,
};

pub use num_bigint::BigInt;

pub type Poly = QPoly<i64>;
pub type WidePoly = QPoly<i128>;
pub type BigPoly = QPoly<BigInt>;

pub type Engine = KlEngine<i64>;
pub type WideEngine = KlEngine<i128>;
pub type BigEngine = KlEngine<BigInt>;
