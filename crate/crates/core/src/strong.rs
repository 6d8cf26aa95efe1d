//! Strong convexity with respect to a polytope `K`.
//!
//! The K-strongly convex hull of `X` is the intersection of all translates
//! `K + t` that contain `X`; it is undefined when no translate contains `X`.
//! With `K = {y : <a_i, y> <= b_i}`, the admissible translations form the
//! polyhedron `T = {t : <a_i, t> >= support(X, a_i) - b_i}`, bounded because
//! `K` is. A point `p` is in the hull iff for every facet `i`,
//! `<a_i, p> - b_i <= min_{t in T} <a_i, t>`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{input, precondition, Error, Result};
use crate::hconvex::{h_hull_contains, support, NormalSet, PointSet};
use crate::lp::{solve, LinearProgram, LpStatus, Relation};
use crate::numbers::positive_hull_contains;
use crate::rational::{check_dims, RVector, Rational};

/// A bounded, full-dimensional polytope `{x : <a_i, x> <= b_i}` given by an
/// irredundant facet description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct Polytope {
    dim: usize,
    normals: Vec<RVector>,
    offsets: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawPolytope {
    dim: usize,
    normals: Vec<RVector>,
    offsets: Vec<Rational>,
}

impl TryFrom<RawPolytope> for Polytope {
    type Error = Error;
    fn try_from(raw: RawPolytope) -> Result<Self> {
        Polytope::new(raw.dim, raw.normals, raw.offsets)
    }
}

fn check_shape(dim: usize, normals: &[RVector], offsets: &[Rational]) -> Result<()> {
    if dim == 0 {
        return Err(input("polytope dimension must be at least 1"));
    }
    if normals.len() != offsets.len() {
        return Err(input(format!(
            "{} normals but {} offsets",
            normals.len(),
            offsets.len()
        )));
    }
    check_dims(dim, normals, "polytope normals")?;
    if let Some(i) = normals.iter().position(RVector::is_zero) {
        return Err(input(format!("polytope normal {i} is zero")));
    }
    Ok(())
}

/// `pos(normals) = R^dim`.
fn positively_spanning(dim: usize, normals: &[RVector]) -> Result<bool> {
    for j in 0..dim {
        for sign in [1, -1] {
            if !positive_hull_contains(normals, &RVector::unit(dim, j, sign))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `s <= 1` with `<a_i, x> + s <= b_i` for all rows; positive iff
/// the interior is nonempty.
fn interior_slack(
    dim: usize,
    normals: &[RVector],
    offsets: &[Rational],
) -> Result<Option<Rational>> {
    let mut lp = LinearProgram::new(dim + 1);
    for (a, b) in normals.iter().zip(offsets) {
        let mut c = a.coords().to_vec();
        c.push(Rational::one());
        lp.push(RVector::new(c), Relation::Le, b.clone());
    }
    lp.push(
        RVector::unit(dim + 1, dim, 1),
        Relation::Le,
        Rational::one(),
    );
    lp.maximize(RVector::unit(dim + 1, dim, 1));
    let out = solve(&lp)?;
    Ok(match out.status {
        LpStatus::Optimal => out.value,
        _ => None,
    })
}

/// Row `i` is redundant when the other rows already imply it.
fn is_redundant(dim: usize, normals: &[RVector], offsets: &[Rational], i: usize) -> Result<bool> {
    let mut lp = LinearProgram::new(dim);
    for (j, (a, b)) in normals.iter().zip(offsets).enumerate() {
        if j != i {
            lp.push(a.clone(), Relation::Le, b.clone());
        }
    }
    lp.maximize(normals[i].clone());
    let out = solve(&lp)?;
    Ok(match out.status {
        LpStatus::Optimal => out.value.expect("optimal value") <= offsets[i],
        LpStatus::Unbounded => false,
        _ => true,
    })
}

impl Polytope {
    /// Validates boundedness, nonempty interior and irredundancy.
    pub fn new(dim: usize, normals: Vec<RVector>, offsets: Vec<Rational>) -> Result<Self> {
        check_shape(dim, &normals, &offsets)?;
        if !positively_spanning(dim, &normals)? {
            return Err(input(
                "polytope is unbounded: normals do not positively span space",
            ));
        }
        match interior_slack(dim, &normals, &offsets)? {
            Some(s) if s.is_positive() => {}
            _ => return Err(input("polytope has empty interior")),
        }
        for i in 0..normals.len() {
            if is_redundant(dim, &normals, &offsets, i)? {
                return Err(input(format!("inequality {i} is redundant (not a facet)")));
            }
        }
        Ok(Polytope {
            dim,
            normals,
            offsets,
        })
    }

    /// Like [`Polytope::new`] but drops redundant inequalities, scanning in
    /// index order, instead of rejecting them.
    pub fn from_inequalities(
        dim: usize,
        normals: Vec<RVector>,
        offsets: Vec<Rational>,
    ) -> Result<Self> {
        check_shape(dim, &normals, &offsets)?;
        let (mut normals, mut offsets) = (normals, offsets);
        let mut i = 0;
        while i < normals.len() {
            if is_redundant(dim, &normals, &offsets, i)? {
                normals.remove(i);
                offsets.remove(i);
            } else {
                i += 1;
            }
        }
        Polytope::new(dim, normals, offsets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[RVector] {
        &self.normals
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn num_facets(&self) -> usize {
        self.normals.len()
    }

    /// The facet normal set `H(K)`, in facet order.
    pub fn normal_set(&self) -> NormalSet {
        let h = NormalSet::new(self.dim, self.normals.clone()).expect("validated normals");
        debug_assert_eq!(h.len(), self.normals.len());
        h
    }

    pub fn contains(&self, x: &RVector) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(a, b)| &a.dot(x) <= b)
    }
}

fn check_polytope_points(k: &Polytope, x: &PointSet) -> Result<()> {
    if k.dim() != x.dim() {
        return Err(input(format!(
            "polytope has dimension {}, point set has dimension {}",
            k.dim(),
            x.dim()
        )));
    }
    if x.is_empty() {
        return Err(input("empty point set"));
    }
    Ok(())
}

/// Constraints `X ⊆ K + t` on the translation `t`.
fn translation_program(k: &Polytope, x: &PointSet) -> Result<LinearProgram> {
    let mut lp = LinearProgram::new(k.dim());
    for (a, b) in k.normals().iter().zip(k.offsets()) {
        lp.push(a.clone(), Relation::Ge, support(x, a)? - b);
    }
    Ok(lp)
}

/// A translation `t` with `X ⊆ K + t`, or `None` if no translate fits.
pub fn fits_in_translate(k: &Polytope, x: &PointSet) -> Result<Option<RVector>> {
    check_polytope_points(k, x)?;
    let out = solve(&translation_program(k, x)?)?;
    Ok(match out.status {
        LpStatus::Infeasible => None,
        _ => out.witness,
    })
}

/// Largest violation `<a_i, p - t> - b_i` over admissible translations, for
/// each facet. `p` is in the strong hull iff every entry is `<= 0`.
pub fn facet_violations(k: &Polytope, x: &PointSet, p: &RVector) -> Result<Vec<Rational>> {
    check_polytope_points(k, x)?;
    check_dims(k.dim(), [p], "query point")?;
    let base = translation_program(k, x)?;
    let mut out = Vec::with_capacity(k.num_facets());
    for (a, b) in k.normals().iter().zip(k.offsets()) {
        let mut lp = base.clone();
        lp.maximize(a.neg());
        let res = solve(&lp)?;
        match res.status {
            LpStatus::Infeasible => {
                return Err(precondition("point set fits in no translate of K"));
            }
            LpStatus::Optimal => {
                let min_at = -res.value.expect("optimal value");
                out.push(a.dot(p) - b - min_at);
            }
            _ => {
                return Err(crate::error::internal(
                    "translation region unbounded for a bounded polytope",
                ));
            }
        }
    }
    Ok(out)
}

pub fn strong_hull_contains(k: &Polytope, x: &PointSet, p: &RVector) -> Result<bool> {
    Ok(facet_violations(k, x, p)?.iter().all(|v| !v.is_positive()))
}

/// Indices of a smallest subset whose strong hull contains `p`, by
/// (size, lexicographic index order).
pub fn minimal_strong_witness_indices(
    k: &Polytope,
    x: &PointSet,
    p: &RVector,
) -> Result<Vec<usize>> {
    if !strong_hull_contains(k, x, p)? {
        return Err(precondition(
            "query point is not in the strongly convex hull",
        ));
    }
    for size in 1..x.len() {
        for combo in (0..x.len()).combinations(size) {
            if strong_hull_contains(k, &x.subset(&combo), p)? {
                return Ok(combo);
            }
        }
    }
    Ok((0..x.len()).collect())
}

pub fn minimal_strong_witness(k: &Polytope, x: &PointSet, p: &RVector) -> Result<PointSet> {
    Ok(x.subset(&minimal_strong_witness_indices(k, x, p)?))
}

/// True when `p` is in the strong hull of `X` but not of any `X \ {x}`.
/// By monotonicity of the hull this is equivalent to `X` being a minimal
/// witness, at a cost of `|X| + 1` membership tests.
pub fn is_minimal_strong_witness(k: &Polytope, x: &PointSet, p: &RVector) -> Result<bool> {
    if !strong_hull_contains(k, x, p)? {
        return Ok(false);
    }
    for j in 0..x.len() {
        let rest = x.without(j);
        if !rest.is_empty() && strong_hull_contains(k, &rest, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each point `x`, the first facet normal `a` with `<a, x> >= <a, p>`
/// and `<a, x> > <a, y>` for every other point `y`. Entry `j` is the normal
/// index guarding point `j`.
pub fn guard_assignment(k: &Polytope, x: &PointSet, p: &RVector) -> Result<Option<Vec<usize>>> {
    if k.dim() != x.dim() {
        return Err(input("polytope and point set dimensions differ"));
    }
    check_dims(k.dim(), [p], "query point")?;
    let pts = x.points();
    let mut map = Vec::with_capacity(pts.len());
    for (j, xj) in pts.iter().enumerate() {
        let guard = k.normals().iter().position(|a| {
            let ax = a.dot(xj);
            ax >= a.dot(p) && pts.iter().enumerate().all(|(i, y)| i == j || ax > a.dot(y))
        });
        match guard {
            Some(i) => map.push(i),
            None => return Ok(None),
        }
    }
    Ok(Some(map))
}

/// `p ∈ conv_H X  ⇒  p ∈ conv_K X` with `H` the facet normals of `K`.
pub fn h_subset_strong_check(k: &Polytope, x: &PointSet, p: &RVector) -> Result<bool> {
    let h = k.normal_set();
    if !h_hull_contains(&h, x, p)? {
        return Ok(true);
    }
    strong_hull_contains(k, x, p)
}
