//! Exhaustive generation, canonical forms and independent verification of
//! circulant and block-circulant Ramsey colorings, plus the triangle
//! counting arithmetic used for upper-bound feasibility arguments.

pub mod bitset;
pub mod block;
pub mod circulant;
pub mod error;
pub mod extend;
pub mod feasibility;
pub mod graph;
pub mod io;
pub mod pattern;
pub mod search;
pub mod verify;

pub use block::{lyndon_rotation, BlockCirculantColoring, Slot};
pub use circulant::CirculantColoring;
pub use error::{Error, Result};
pub use extend::{extend_by_one, extensions, local_search};
pub use feasibility::{
    deficiency_sum_ledger, feasibility_verdict, goodman_triangle_count,
    triangle_sum_via_neighborhoods, vertex_deficiency, DeficiencyLedger, EdgeMaxTable,
    FeasibilityReport, FeasibilityTables, Rational, Verdict,
};
pub use graph::{Color, ColoredCompleteGraph, DegreeHistogram, UNCOLORED};
pub use io::{decode_graph6, encode_graph6, parse_pattern, parse_pattern_list, Record};
pub use pattern::{contains_pattern, contains_pattern_through_edge, is_ramsey_graph, PatternSpec};
pub use search::{enumerate_block_circulant, enumerate_circulant, SearchJob, SearchStats};
pub use verify::{
    are_isomorphic, dedupe_nonisomorphic, enumerate_all_small, verify_ramsey, Verification, Witness,
};
