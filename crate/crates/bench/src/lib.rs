//! Workloads shared by the criterion benchmarks.

use hcara::corpus;
use hcara::{NormalSet, PointSet, Polytope, RVector, Rational};

/// Normal sets whose invariants are benchmarked.
pub fn normal_sets() -> Vec<(&'static str, NormalSet)> {
    vec![
        ("cube3", corpus::cube_normals(3)),
        ("cube4", corpus::cube_normals(4)),
        ("pyramid6", corpus::pyramid_normals(6)),
        ("simplex3+facet", corpus::simplex_plus_facet_normals(3)),
    ]
}

/// The unit cube in R³ with four points near its corners and a query in
/// their hull.
pub fn strong_membership_case() -> (Polytope, PointSet, RVector) {
    let q = |a, b, c| {
        RVector::new(vec![
            Rational::new(a, 4),
            Rational::new(b, 4),
            Rational::new(c, 4),
        ])
    };
    let x =
        PointSet::new(3, vec![q(0, 0, 0), q(3, 1, 0), q(1, 3, 1), q(1, 1, 3)]).expect("distinct");
    (corpus::cube(3), x, q(1, 1, 1))
}
