//! Named normal sets and polytopes used by tests, benchmarks and the
//! experiment harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hconvex::NormalSet;
use crate::rational::{RVector, Rational};
use crate::strong::Polytope;

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

/// `±e_1, …, ±e_n`, in the order `e_1, -e_1, e_2, -e_2, …`.
pub fn cube_normals(n: usize) -> NormalSet {
    cube(n).normal_set()
}

/// `[0, 1]^n`.
pub fn cube(n: usize) -> Polytope {
    let mut normals = Vec::with_capacity(2 * n);
    let mut offsets = Vec::with_capacity(2 * n);
    for i in 0..n {
        normals.push(RVector::unit(n, i, 1));
        offsets.push(int(1));
        normals.push(RVector::unit(n, i, -1));
        offsets.push(int(0));
    }
    Polytope::new(n, normals, offsets).expect("cube is a valid polytope")
}

/// `-e_1, …, -e_n, (1, …, 1)`.
pub fn simplex_normals(n: usize) -> NormalSet {
    simplex(n).normal_set()
}

/// `{x >= 0, sum x <= 1}`.
pub fn simplex(n: usize) -> Polytope {
    let mut normals: Vec<RVector> = (0..n).map(|i| RVector::unit(n, i, -1)).collect();
    let mut offsets = vec![int(0); n];
    normals.push(RVector::new(vec![int(1); n]));
    offsets.push(int(1));
    Polytope::new(n, normals, offsets).expect("simplex is a valid polytope")
}

/// The simplex normals plus the facet opposite to `(1, …, 1)`.
pub fn simplex_plus_facet_normals(n: usize) -> NormalSet {
    simplex_plus_facet(n).normal_set()
}

/// `{x >= 0, 1 <= sum x <= 2}`.
pub fn simplex_plus_facet(n: usize) -> Polytope {
    let mut normals: Vec<RVector> = (0..n).map(|i| RVector::unit(n, i, -1)).collect();
    let mut offsets = vec![int(0); n];
    normals.push(RVector::new(vec![int(1); n]));
    offsets.push(int(2));
    normals.push(RVector::new(vec![int(-1); n]));
    offsets.push(int(-1));
    Polytope::new(n, normals, offsets).expect("truncated simplex is a valid polytope")
}

/// Rational point on the unit circle at parameter `t`:
/// `((1 - t²)/(1 + t²), 2t/(1 + t²))`.
fn circle_point(t: &Rational) -> [Rational; 2] {
    let t2 = t * t;
    let den = &t2 + int(1);
    [(int(1) - &t2) / &den, (t * int(2)) / den]
}

/// Outer normals of a convex `m`-gon containing the origin.
fn base_directions(m: usize) -> Vec<[Rational; 2]> {
    let table: &[[i64; 2]] = match m {
        4 => &[[1, 0], [-1, 0], [0, 1], [0, -1]],
        5 => &[[1, 0], [0, 1], [-1, 1], [-1, -1], [1, -1]],
        6 => &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        _ => &[],
    };
    if !table.is_empty() {
        return table.iter().map(|[a, b]| [int(*a), int(*b)]).collect();
    }
    // Points on the unit circle are in convex position; the angle
    // parameters are spread so that consecutive gaps stay below pi.
    (0..m)
        .map(|k| {
            if 2 * k == m {
                return [int(-1), int(0)];
            }
            let theta = std::f64::consts::PI * 2.0 * k as f64 / m as f64;
            let t = (theta / 2.0).tan();
            let t = Rational::new((t * 1024.0).round() as i64, 1024);
            circle_point(&t)
        })
        .collect()
}

/// Normals of a pyramid over a convex `m`-gon: `m` slanted facets then the
/// base `(0, 0, -1)`.
pub fn pyramid_normals(m: usize) -> NormalSet {
    pyramid(m).normal_set()
}

/// Pyramid with apex `(0, 0, 1)` over the polygon `{<u_k, y> <= 1}` at `z = 0`.
pub fn pyramid(m: usize) -> Polytope {
    assert!(m >= 3, "pyramid base needs at least three sides");
    let mut normals: Vec<RVector> = base_directions(m)
        .into_iter()
        .map(|[a, b]| RVector::new(vec![a, b, int(1)]))
        .collect();
    let mut offsets = vec![int(1); m];
    normals.push(RVector::from_ints(&[0, 0, -1]));
    offsets.push(int(0));
    Polytope::new(3, normals, offsets).expect("pyramid is a valid polytope")
}

/// Every named polytope in dimensions 2 and 3.
pub fn named_polytopes() -> Vec<(String, Polytope)> {
    let mut out = Vec::new();
    for n in 2..=3 {
        out.push((format!("cube{n}"), cube(n)));
        out.push((format!("simplex{n}"), simplex(n)));
        out.push((format!("simplex{n}+facet"), simplex_plus_facet(n)));
    }
    for m in 4..=6 {
        out.push((format!("pyramid{m}"), pyramid(m)));
    }
    out
}

/// A seeded random normal set with integer coordinates in `[-bound, bound]`.
pub fn random_normal_set(rng: &mut impl Rng, dim: usize, size: usize, bound: i64) -> NormalSet {
    let mut normals = Vec::with_capacity(size);
    while normals.len() < size {
        let v = RVector::from_ints(
            &(0..dim)
                .map(|_| rng.random_range(-bound..=bound))
                .collect::<Vec<_>>(),
        );
        if !v.is_zero()
            && !normals
                .iter()
                .any(|u: &RVector| v.is_positive_multiple_of(u))
        {
            normals.push(v);
        }
    }
    NormalSet::new(dim, normals).expect("nonzero distinct normals")
}

/// Named normal sets plus seeded random ones, all with at most eight
/// normals in dimension at most three.
pub fn oracle_corpus(seed: u64, random_count: usize) -> Vec<(String, NormalSet)> {
    let mut out: Vec<(String, NormalSet)> = Vec::new();
    for n in 2..=3 {
        out.push((format!("cube{n}"), cube_normals(n)));
        out.push((format!("simplex{n}"), simplex_normals(n)));
        out.push((format!("simplex{n}+facet"), simplex_plus_facet_normals(n)));
    }
    for m in 4..=6 {
        out.push((format!("pyramid{m}"), pyramid_normals(m)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_count {
        let dim = 2 + i % 2;
        let size = rng.random_range(2..=8);
        out.push((
            format!("random{i}"),
            random_normal_set(&mut rng, dim, size, 3),
        ));
    }
    out
}
