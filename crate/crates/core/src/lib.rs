//! Exact counting, enumeration and signing of the 1-factorisations of the
//! generalised Petersen graphs GP(3k,k).
//!
//! The outer cycle of GP(3k,k) is cut into `k` colour triples; a proper
//! 3-edge-colouring corresponds to a walk of length `k` in one of two small
//! triple graphs (a triangle `T` and a hexagon `H`). Counting walks with a
//! transfer matrix over a sign-tracking semiring gives the number of
//! 1-factorisations and the signed sum used by the Alon–Tarsi criterion.
//! Every shortcut is cross-checked against brute-force search in [`oracle`].

pub mod error;
pub mod factorisation;
pub mod graph;
pub mod list_colouring;
pub mod oracle;
pub mod sign;
pub mod triple;

pub use error::{Error, Result};
pub use factorisation::{
    alon_tarsi_sum, count_1f, enumerate_1f, enumerate_1f_par, extend_outer, sign_of,
    sign_product_along_triples, signed_count_1f, triples_of, vertex_sign, EdgeColouring,
    OneFactorisation, Scope, SignedCountReport, TripleSequence,
};
pub use graph::{Edge, EdgeRole, ExportFormat, GpGraph, RotationSystem};
pub use list_colouring::{
    default_palette, random_lists, solve_list_colouring, verify_choosability_sample,
    ChoosabilityReport, ListAssignment, ListOutcome, ListSolver,
};
pub use oracle::{brute_force_colourings, BruteForce};
pub use sign::Sign;
pub use triple::{
    classify_step, closed_form_signed_t, closed_form_t, jacobsthal, lift_walk, Colour,
    ColourTriple, Direction, SignedCount, TriangleDistance, TripleGraph, TripleKind,
};
