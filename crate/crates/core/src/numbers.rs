//! Helly number, cone number and Carathéodory number of a finite normal set.
//!
//! The Carathéodory number for H-convexity equals `max(helly, cone)` where
//!
//! * `helly` is the largest minimal positive circuit in `H` (vectors that are
//!   the vertices of a simplex with the origin in its relative interior), and
//! * `cone` is the largest subset in conical position whose positive hull
//!   contains no other vector of `H`.
//!
//! "Conical position" uses set-level strict separation: there is a direction
//! `n` with `<n, s> > 0` for every member. Strict inequalities are scaled to
//! `>= 1`, which is exact for these homogeneous systems.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{input, internal, Result};
use crate::hconvex::NormalSet;
use crate::linalg::rank;
use crate::lp::{find_feasible, LinearProgram, Relation};
use crate::rational::{RVector, Rational};

fn check_same_dim(vectors: &[RVector]) -> Result<usize> {
    let dim = vectors.first().map_or(0, RVector::dim);
    if vectors.iter().any(|v| v.dim() != dim) {
        return Err(input("vectors of different dimensions"));
    }
    Ok(dim)
}

/// Builds `sum_i lambda_i s_i = target` over variables `lambda`.
fn combination_rows(lp: &mut LinearProgram, s: &[RVector], target: &RVector) {
    for c in 0..target.dim() {
        let coeffs = RVector::new(s.iter().map(|v| v[c].clone()).collect());
        lp.push(coeffs, Relation::Eq, target[c].clone());
    }
}

fn lower_bounds(lp: &mut LinearProgram, k: usize, bound: i64) {
    for i in 0..k {
        lp.push(
            RVector::unit(k, i, 1),
            Relation::Ge,
            Rational::from_int(bound),
        );
    }
}

/// `a ∈ pos(S)`; `pos(∅) = {0}`.
pub fn positive_hull_contains(s: &[RVector], a: &RVector) -> Result<bool> {
    if s.is_empty() {
        return Ok(a.is_zero());
    }
    let dim = check_same_dim(s)?;
    if a.dim() != dim {
        return Err(input("query vector dimension differs from the generators"));
    }
    let mut lp = LinearProgram::new(s.len());
    combination_rows(&mut lp, s, a);
    lower_bounds(&mut lp, s.len(), 0);
    Ok(find_feasible(&lp)?.is_some())
}

/// Coefficients `lambda_i >= 1` with `sum lambda_i s_i = 0`, if any exist.
pub fn positive_dependence(s: &[RVector]) -> Result<Option<Vec<Rational>>> {
    if s.is_empty() {
        return Ok(None);
    }
    let dim = check_same_dim(s)?;
    let mut lp = LinearProgram::new(s.len());
    combination_rows(&mut lp, s, &RVector::zeros(dim));
    lower_bounds(&mut lp, s.len(), 1);
    Ok(find_feasible(&lp)?.map(RVector::into_coords))
}

/// `0 ∈ conv(S)`.
fn origin_in_convex_hull(s: &[RVector]) -> Result<bool> {
    if s.is_empty() {
        return Ok(false);
    }
    let dim = check_same_dim(s)?;
    let k = s.len();
    let mut lp = LinearProgram::new(k);
    combination_rows(&mut lp, s, &RVector::zeros(dim));
    lower_bounds(&mut lp, k, 0);
    lp.push(
        RVector::new(vec![Rational::one(); k]),
        Relation::Eq,
        Rational::one(),
    );
    Ok(find_feasible(&lp)?.is_some())
}

/// A direction `n` with `<n, s> >= 1` for every `s`, if one exists.
pub fn separating_direction(s: &[RVector]) -> Result<Option<RVector>> {
    let dim = check_same_dim(s)?;
    if dim == 0 {
        return Ok(None);
    }
    let mut lp = LinearProgram::new(dim);
    for v in s {
        lp.push(v.clone(), Relation::Ge, Rational::one());
    }
    find_feasible(&lp)
}

/// True iff `S` is a minimal positive circuit: it has a strictly positive
/// linear dependence and no proper subset has the origin in its convex hull.
pub fn is_simplex_with_origin(s: &[RVector]) -> Result<bool> {
    if s.is_empty() {
        return Err(input("empty vector list"));
    }
    check_same_dim(s)?;
    if positive_dependence(s)?.is_none() {
        return Ok(false);
    }
    for j in 0..s.len() {
        let mut rest = s.to_vec();
        rest.remove(j);
        if origin_in_convex_hull(&rest)? {
            return Ok(false);
        }
    }
    let diffs: Vec<RVector> = s[1..].iter().map(|v| v.sub(&s[0])).collect();
    if rank(&diffs) != s.len() - 1 {
        return Err(internal(
            "minimal positive circuit whose points are affinely dependent",
        ));
    }
    Ok(true)
}

/// Strictly separable from the origin and no member in the positive hull of
/// the others.
pub fn is_conical_position(s: &[RVector]) -> Result<bool> {
    if s.is_empty() {
        return Err(input("empty vector list"));
    }
    check_same_dim(s)?;
    if let Some(i) = s.iter().position(RVector::is_zero) {
        return Err(input(format!("vector {i} is zero")));
    }
    if separating_direction(s)?.is_none() {
        return Ok(false);
    }
    for j in 0..s.len() {
        let mut rest = s.to_vec();
        let sj = rest.remove(j);
        if positive_hull_contains(&rest, &sj)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No vector of `H` outside `chosen` lies in `pos(chosen)`.
pub fn positive_hull_is_empty(h: &NormalSet, chosen: &[usize]) -> Result<bool> {
    let gens = h.subset(chosen);
    for i in 0..h.len() {
        if chosen.contains(&i) {
            continue;
        }
        if positive_hull_contains(&gens, h.get(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A set admitting no positive dependence, i.e. inside an open halfspace.
pub fn is_one_sided(h: &NormalSet) -> Result<bool> {
    Ok(h.is_empty() || separating_direction(h.normals())?.is_some())
}

/// Largest minimal positive circuit in `H`, lexicographically first among
/// those of maximal size. Returns 0 for one-sided sets.
pub fn helly_number(h: &NormalSet) -> Result<(usize, Vec<usize>)> {
    let cap = (h.dim() + 1).min(h.len());
    let mut circuits: Vec<Vec<usize>> = Vec::new();
    let mut best: (usize, Vec<usize>) = (0, Vec::new());
    for size in 2..=cap {
        let mut found_at_size = Vec::new();
        for combo in (0..h.len()).combinations(size) {
            // a superset of a circuit is never minimal
            if circuits.iter().any(|c| c.iter().all(|i| combo.contains(i))) {
                continue;
            }
            if is_simplex_with_origin(&h.subset(&combo))? {
                if best.0 < size {
                    best = (size, combo.clone());
                }
                found_at_size.push(combo);
            }
        }
        circuits.extend(found_at_size);
    }
    Ok(best)
}

struct ConeSearch<'a> {
    h: &'a NormalSet,
    cone: (usize, Vec<usize>),
    relaxed: (usize, Vec<usize>),
}

impl ConeSearch<'_> {
    /// Depth-first over conical-position sets in lexicographic order. Conical
    /// position is hereditary, so a failing extension prunes its subtree.
    fn extend(&mut self, current: &mut Vec<usize>) -> Result<()> {
        let start = current.last().map_or(0, |&i| i + 1);
        for i in start..self.h.len() {
            let remaining = self.h.len() - i;
            // relaxed >= cone, so neither can improve past this point
            if current.len() + remaining <= self.cone.0 {
                return Ok(());
            }
            current.push(i);
            if is_conical_position(&self.h.subset(current))? {
                let size = current.len();
                if size > self.relaxed.0 {
                    self.relaxed = (size, current.clone());
                }
                if size > self.cone.0 && positive_hull_is_empty(self.h, current)? {
                    self.cone = (size, current.clone());
                }
                self.extend(current)?;
            }
            current.pop();
        }
        Ok(())
    }
}

fn cone_search(h: &NormalSet) -> Result<ConeSearch<'_>> {
    let mut search = ConeSearch {
        h,
        cone: (0, Vec::new()),
        relaxed: (0, Vec::new()),
    };
    search.extend(&mut Vec::new())?;
    Ok(search)
}

/// Largest conical-position subset whose positive hull holds no other normal.
pub fn cone_number(h: &NormalSet) -> Result<(usize, Vec<usize>)> {
    Ok(cone_search(h)?.cone)
}

/// Largest conical-position subset, ignoring the emptiness condition.
pub fn relaxed_cone_number(h: &NormalSet) -> Result<usize> {
    Ok(cone_search(h)?.relaxed.0)
}

/// Relaxed cone number together with a witness subset.
pub fn relaxed_cone_witness(h: &NormalSet) -> Result<(usize, Vec<usize>)> {
    Ok(cone_search(h)?.relaxed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub helly: usize,
    pub cone: usize,
    pub caratheodory: usize,
    pub relaxed_cone: usize,
    pub helly_witness: Vec<usize>,
    pub cone_witness: Vec<usize>,
    pub one_sided: bool,
}

pub fn caratheodory_number(h: &NormalSet) -> Result<InvariantReport> {
    if h.is_empty() {
        return Err(input("empty normal set"));
    }
    let (helly, helly_witness) = helly_number(h)?;
    let search = cone_search(h)?;
    let (cone, cone_witness) = search.cone;
    let report = InvariantReport {
        helly,
        cone,
        caratheodory: helly.max(cone),
        relaxed_cone: search.relaxed.0,
        helly_witness,
        cone_witness,
        one_sided: is_one_sided(h)?,
    };
    if report.relaxed_cone < report.cone {
        return Err(internal("relaxed cone number below cone number"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn ns(dim: usize, vs: &[&[i64]]) -> NormalSet {
        NormalSet::new(dim, vs.iter().map(|c| v(c)).collect()).unwrap()
    }

    #[test]
    fn positive_hull_examples() {
        assert!(positive_hull_contains(&[v(&[1, 0]), v(&[0, 1])], &v(&[2, 3])).unwrap());
        let s = [v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])];
        assert!(!positive_hull_contains(&s, &v(&[1, 0, 1])).unwrap());
        assert!(positive_hull_contains(&[], &v(&[0, 0])).unwrap());
        assert!(!positive_hull_contains(&[], &v(&[1, 0])).unwrap());
    }

    #[test]
    fn simplex_examples() {
        assert!(is_simplex_with_origin(&[v(&[1, 0]), v(&[-1, 0])]).unwrap());
        assert!(is_simplex_with_origin(&[v(&[-1, 0]), v(&[0, -1]), v(&[1, 1])]).unwrap());
        let pyramid = corpus::pyramid_normals(4);
        assert!(!is_simplex_with_origin(pyramid.normals()).unwrap());
        assert!(!is_simplex_with_origin(&[v(&[1, 0])]).unwrap());
    }

    #[test]
    fn conical_examples() {
        let e = |i| RVector::unit(3, i, 1);
        assert!(is_conical_position(&[e(0), e(1), e(2)]).unwrap());
        assert!(!is_conical_position(&[v(&[-1, 0]), v(&[0, -1]), v(&[1, 1])]).unwrap());
        assert!(is_conical_position(&[e(0)]).unwrap());
        assert!(is_conical_position(&[v(&[0, 0])]).is_err());
    }

    #[test]
    fn helly_examples() {
        let (k, w) = helly_number(&corpus::cube_normals(3)).unwrap();
        assert_eq!((k, w), (2, vec![0, 1]));
        assert_eq!(
            helly_number(&ns(2, &[&[-1, 0], &[0, -1], &[1, 1]]))
                .unwrap()
                .0,
            3
        );
        assert_eq!(
            helly_number(&ns(2, &[&[1, 0], &[0, 1]])).unwrap(),
            (0, vec![])
        );
    }

    #[test]
    fn cone_examples() {
        let cube = corpus::cube_normals(3);
        let (k, w) = cone_number(&cube).unwrap();
        assert_eq!(k, 3);
        let chosen = cube.subset(&w);
        assert_eq!(chosen, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let pyramid = corpus::pyramid_normals(4);
        assert_eq!(cone_number(&pyramid).unwrap(), (4, vec![0, 1, 2, 3]));
        assert_eq!(cone_number(&ns(2, &[&[1, 0]])).unwrap().0, 1);
    }

    #[test]
    fn relaxed_cone_examples() {
        assert_eq!(relaxed_cone_number(&corpus::cube_normals(3)).unwrap(), 3);
        let h = ns(2, &[&[1, 0], &[1, 1], &[2, 1]]);
        assert_eq!(relaxed_cone_number(&h).unwrap(), 2);
        assert_eq!(cone_number(&h).unwrap(), (2, vec![0, 2]));
        assert_eq!(relaxed_cone_number(&ns(3, &[&[1, 0, 0]])).unwrap(), 1);
    }

    #[test]
    fn caratheodory_examples() {
        for n in 2..=4 {
            let r = caratheodory_number(&corpus::cube_normals(n)).unwrap();
            assert_eq!(r.caratheodory, n);
        }
        let r = caratheodory_number(&ns(2, &[&[-1, 0], &[0, -1], &[1, 1]])).unwrap();
        assert_eq!((r.helly, r.cone, r.caratheodory), (3, 2, 3));
        let r = caratheodory_number(&corpus::pyramid_normals(4)).unwrap();
        assert_eq!(r.caratheodory, 4);
        let r = caratheodory_number(&ns(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert!(r.one_sided);
        assert_eq!((r.helly, r.cone), (0, 2));
    }

    #[test]
    fn report_json_fields() {
        let r = caratheodory_number(&corpus::cube_normals(2)).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"helly":2,"cone":2,"caratheodory":2,"relaxed_cone":2,"helly_witness":[0,1],"cone_witness":[0,2],"one_sided":false}"#
        );
    }
}
