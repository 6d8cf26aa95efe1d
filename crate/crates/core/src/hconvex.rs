//! H-convex hulls of finite point sets.
//!
//! For a finite normal set `H`, the H-convex hull of `X` is
//! `{p : <a, p> <= max_{x in X} <a, x>  for all a in H}`.
//! Normals are arbitrary nonzero rational vectors; every predicate here is
//! invariant under positive scaling of a normal, so no normalization to the
//! unit sphere is needed.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{input, precondition, Error, Result};
use crate::rational::{check_dims, RVector, Rational};

/// A finite set of outer normals with no zero vector and no two normals
/// that are positive multiples of each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawNormalSet")]
pub struct NormalSet {
    dim: usize,
    normals: Vec<RVector>,
}

#[derive(Deserialize)]
struct RawNormalSet {
    dim: usize,
    normals: Vec<RVector>,
}

impl TryFrom<RawNormalSet> for NormalSet {
    type Error = Error;
    fn try_from(raw: RawNormalSet) -> Result<Self> {
        NormalSet::new(raw.dim, raw.normals)
    }
}

impl NormalSet {
    /// Validates and collapses positive multiples, keeping the first
    /// occurrence of each direction.
    pub fn new(dim: usize, normals: Vec<RVector>) -> Result<Self> {
        if dim == 0 {
            return Err(input("normal set dimension must be at least 1"));
        }
        check_dims(dim, &normals, "normal set")?;
        let mut kept: Vec<RVector> = Vec::with_capacity(normals.len());
        for (i, a) in normals.into_iter().enumerate() {
            if a.is_zero() {
                return Err(input(format!("normal {i} is the zero vector")));
            }
            if !kept.iter().any(|b| a.is_positive_multiple_of(b)) {
                kept.push(a);
            }
        }
        Ok(NormalSet { dim, normals: kept })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[RVector] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn get(&self, i: usize) -> &RVector {
        &self.normals[i]
    }

    pub fn subset(&self, indices: &[usize]) -> Vec<RVector> {
        indices.iter().map(|&i| self.normals[i].clone()).collect()
    }

    /// Index of the normal that is a positive multiple of `a`, if any.
    pub fn position_of(&self, a: &RVector) -> Option<usize> {
        self.normals
            .iter()
            .position(|b| a.is_positive_multiple_of(b))
    }
}

/// A finite set of pairwise distinct points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    dim: usize,
    points: Vec<RVector>,
}

#[derive(Deserialize)]
struct RawPointSet {
    dim: usize,
    points: Vec<RVector>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;
    fn try_from(raw: RawPointSet) -> Result<Self> {
        PointSet::new(raw.dim, raw.points)
    }
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<RVector>) -> Result<Self> {
        if dim == 0 {
            return Err(input("point set dimension must be at least 1"));
        }
        check_dims(dim, &points, "point set")?;
        for (i, j) in (0..points.len()).tuple_combinations() {
            if points[i] == points[j] {
                return Err(input(format!("points {i} and {j} coincide")));
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[RVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn without(&self, index: usize) -> PointSet {
        let mut points = self.points.clone();
        points.remove(index);
        PointSet {
            dim: self.dim,
            points,
        }
    }

    /// `c * X`. Distinctness survives because `c != 0`.
    pub fn scaled(&self, c: &Rational) -> PointSet {
        assert!(!c.is_zero(), "scaling a point set by zero");
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn translated(&self, v: &RVector) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|x| x.add(v)).collect(),
        }
    }
}

/// For each point `j`, the index of a normal that sees `x_j` with
/// `<a, x_j> >= 0` and every other point strictly negatively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExclusionAssignment {
    pub assignment: Vec<usize>,
}

impl ExclusionAssignment {
    pub fn is_valid(&self, h: &NormalSet, x: &PointSet) -> bool {
        self.assignment.len() == x.len()
            && self
                .assignment
                .iter()
                .enumerate()
                .all(|(j, &i)| i < h.len() && exclusive_for(h.get(i), x.points(), j))
    }
}

fn exclusive_for(a: &RVector, points: &[RVector], j: usize) -> bool {
    !a.dot(&points[j]).is_negative()
        && points
            .iter()
            .enumerate()
            .all(|(k, y)| k == j || a.dot(y).is_negative())
}

fn check_joint(h: &NormalSet, x: &PointSet) -> Result<()> {
    if h.dim() != x.dim() {
        return Err(input(format!(
            "normal set has dimension {}, point set has dimension {}",
            h.dim(),
            x.dim()
        )));
    }
    Ok(())
}

/// `max_{x in X} <a, x>`.
pub fn support(x: &PointSet, a: &RVector) -> Result<Rational> {
    check_dims(x.dim(), [a], "support direction")?;
    x.points()
        .iter()
        .map(|p| a.dot(p))
        .max()
        .ok_or_else(|| input("support of an empty point set"))
}

pub fn h_hull_contains(h: &NormalSet, x: &PointSet, p: &RVector) -> Result<bool> {
    check_joint(h, x)?;
    check_dims(h.dim(), [p], "query point")?;
    if x.is_empty() {
        return Err(input("hull of an empty point set"));
    }
    for a in h.normals() {
        if a.dot(p) > support(x, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every normal is seen non-negatively by some point; equivalently `0` lies
/// in the H-convex hull. An empty point set covers nothing unless `H` is
/// empty.
pub fn covering_holds(h: &NormalSet, x: &PointSet) -> Result<bool> {
    check_joint(h, x)?;
    Ok(h.normals()
        .iter()
        .all(|a| x.points().iter().any(|p| !a.dot(p).is_negative())))
}

/// Finds, for every point, a normal it sees exclusively. Normals are tried
/// in index order so the result is the lexicographically first assignment.
pub fn excluding_holds(h: &NormalSet, x: &PointSet) -> Result<Option<ExclusionAssignment>> {
    check_joint(h, x)?;
    let mut assignment = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        match (0..h.len()).find(|&i| exclusive_for(h.get(i), x.points(), j)) {
            Some(i) => assignment.push(i),
            None => return Ok(None),
        }
    }
    Ok(Some(ExclusionAssignment { assignment }))
}

/// Indices of a smallest subset whose H-convex hull contains `p`, searching
/// by increasing size and lexicographic index order.
pub fn minimal_h_witness_indices(h: &NormalSet, x: &PointSet, p: &RVector) -> Result<Vec<usize>> {
    if !h_hull_contains(h, x, p)? {
        return Err(precondition("query point is not in the H-convex hull"));
    }
    for size in 1..=x.len() {
        for combo in (0..x.len()).combinations(size) {
            if h_hull_contains(h, &x.subset(&combo), p)? {
                return Ok(combo);
            }
        }
    }
    unreachable!("the full set contains p")
}

pub fn minimal_h_witness(h: &NormalSet, x: &PointSet, p: &RVector) -> Result<PointSet> {
    let idx = minimal_h_witness_indices(h, x, p)?;
    Ok(x.subset(&idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn pts(dim: usize, ps: &[&[i64]]) -> PointSet {
        PointSet::new(dim, ps.iter().map(|c| v(c)).collect()).unwrap()
    }

    fn square() -> NormalSet {
        NormalSet::new(2, vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])]).unwrap()
    }

    #[test]
    fn support_examples() {
        let x = pts(2, &[&[0, 0], &[2, 3]]);
        assert_eq!(support(&x, &v(&[1, 0])).unwrap(), Rational::from_int(2));
        assert_eq!(support(&x, &v(&[-1, 0])).unwrap(), Rational::zero());
        assert_eq!(
            support(&pts(2, &[&[1, 1]]), &v(&[2, -1])).unwrap(),
            Rational::one()
        );
        assert!(support(&pts(2, &[]), &v(&[1, 0])).is_err());
    }

    #[test]
    fn hull_examples() {
        let x = pts(2, &[&[0, 0], &[2, 3]]);
        assert!(h_hull_contains(&square(), &x, &v(&[1, 1])).unwrap());
        assert!(!h_hull_contains(&square(), &x, &v(&[3, 1])).unwrap());
        let halfspace = NormalSet::new(3, vec![v(&[1, 0, 0])]).unwrap();
        let origin = pts(3, &[&[0, 0, 0]]);
        assert!(h_hull_contains(&halfspace, &origin, &v(&[-5, 7, 2])).unwrap());
    }

    #[test]
    fn covering_examples() {
        assert!(covering_holds(&square(), &pts(2, &[&[0, -1], &[-1, 0]])).unwrap());
        assert!(!covering_holds(&square(), &pts(2, &[&[-1, 0]])).unwrap());
        let h = NormalSet::new(2, vec![v(&[1, 0])]).unwrap();
        assert!(covering_holds(&h, &pts(2, &[&[0, 5]])).unwrap());
    }

    #[test]
    fn excluding_examples() {
        let h = square();
        let f = excluding_holds(&h, &pts(2, &[&[0, -1], &[-1, 0]]))
            .unwrap()
            .unwrap();
        assert_eq!(f.assignment, vec![0, 2]);
        let pm = NormalSet::new(2, vec![v(&[1, 0]), v(&[-1, 0])]).unwrap();
        assert_eq!(
            excluding_holds(&pm, &pts(2, &[&[1, 0], &[2, 0]])).unwrap(),
            None
        );
        let one = NormalSet::new(2, vec![v(&[1, 0])]).unwrap();
        let f = excluding_holds(&one, &pts(2, &[&[0, 1]])).unwrap().unwrap();
        assert_eq!(f.assignment, vec![0]);
    }

    #[test]
    fn minimal_witness_examples() {
        let x = pts(2, &[&[0, -1], &[-1, 0], &[5, 5]]);
        let w = minimal_h_witness(&square(), &x, &v(&[0, 0])).unwrap();
        assert_eq!(w, pts(2, &[&[0, -1], &[-1, 0]]));

        let h = NormalSet::new(2, vec![v(&[1, 0])]).unwrap();
        let x = pts(2, &[&[0, 0], &[1, 1]]);
        let w = minimal_h_witness(&h, &x, &v(&[-9, 4])).unwrap();
        assert_eq!(w, pts(2, &[&[0, 0]]));

        let x = pts(2, &[&[3, 4]]);
        assert_eq!(minimal_h_witness(&square(), &x, &v(&[3, 4])).unwrap(), x);

        let err = minimal_h_witness(&square(), &x, &v(&[0, 0])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn normal_set_collapses_positive_multiples() {
        let h = NormalSet::new(2, vec![v(&[2, 0]), v(&[1, 0]), v(&[-3, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(h.normals(), &[v(&[2, 0]), v(&[-3, 0]), v(&[0, 1])]);
        assert!(NormalSet::new(2, vec![v(&[0, 0])]).is_err());
        assert!(NormalSet::new(2, vec![v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn point_sets_reject_duplicates() {
        assert!(PointSet::new(2, vec![v(&[1, 1]), v(&[1, 1])]).is_err());
    }

    #[test]
    fn json_schema() {
        let h: NormalSet =
            serde_json::from_str(r#"{"dim": 2, "normals": [["1","0"],["-1/2",0],["2","0"]]}"#)
                .unwrap();
        assert_eq!(h.len(), 2);
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(text, r#"{"dim":2,"normals":[["1","0"],["-1/2","0"]]}"#);
        assert!(
            serde_json::from_str::<NormalSet>(r#"{"dim": 2, "normals": [["0","0"]]}"#).is_err()
        );
        let x: PointSet = serde_json::from_str(r#"{"dim": 1, "points": [["1/3"]]}"#).unwrap();
        assert_eq!(x.points()[0][0], Rational::new(1, 3));
    }
}
