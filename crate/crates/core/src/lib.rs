//! Exact computation of Carathéodory, Helly and cone numbers for
//! H-convexity, K-strong convexity membership for polytopes, and seeded
//! experiments probing the bounds that relate the two.
//!
//! All arithmetic is exact over the rationals; no predicate uses floating
//! point. Shared types are re-exported at the crate root.

pub mod corpus;
pub mod error;
pub mod experiment;
pub mod hconvex;
pub mod linalg;
pub mod lp;
pub mod numbers;
pub mod rational;
pub mod strong;
pub mod witness;

pub use error::{Error, Result};
pub use hconvex::{
    covering_holds, excluding_holds, h_hull_contains, minimal_h_witness, support,
    ExclusionAssignment, NormalSet, PointSet,
};
pub use lp::{solve, LinearProgram, LpOutcome, LpStatus, Relation};
pub use numbers::{
    caratheodory_number, cone_number, helly_number, is_conical_position, is_simplex_with_origin,
    positive_hull_contains, relaxed_cone_number, InvariantReport,
};
pub use rational::{RVector, Rational};
pub use strong::{
    fits_in_translate, guard_assignment, h_subset_strong_check, minimal_strong_witness,
    strong_hull_contains, Polytope,
};
pub use witness::{
    cone_witness_points, helly_witness_points, validate_witness, WitnessKind, WitnessReport,
};
