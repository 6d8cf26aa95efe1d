//! Extremal point sets certifying lower bounds on the Carathéodory number.
//!
//! A point set `X` certifies `cara(H) >= |X|` when the origin lies in its
//! H-convex hull (every normal is seen non-negatively by some point) but
//! not in the hull of any `X \ {x}`.
//!
//! * From a Helly circuit `B = {a_1..a_k}`: rescale so `sum a_i = 0`, then
//!   pick `x_i` in `span(B)` with `<a_j, x_i> = -1` for `j != i`.
//! * From a cone basis `B`: pick `x_i` with `<a_i, x_i> = 0` and
//!   `<a_j, x_i> <= -1` for `j != i`.

use serde::{Deserialize, Serialize};

use crate::error::{input, internal, precondition, Error, Result};
use crate::hconvex::{covering_holds, excluding_holds, ExclusionAssignment, NormalSet, PointSet};
use crate::linalg::solve_linear;
use crate::lp::{find_feasible, LinearProgram, Relation};
use crate::numbers::{
    caratheodory_number, is_conical_position, is_simplex_with_origin, positive_dependence,
    positive_hull_is_empty,
};
use crate::rational::{RVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    Helly,
    Cone,
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: WitnessKind,
    pub normals_used: Vec<usize>,
    pub points: PointSet,
    pub covering_ok: bool,
    pub drop_one_ok: bool,
    pub assignment: Option<ExclusionAssignment>,
}

impl WitnessReport {
    /// Covering and drop-one minimality both hold, so `cara(H) >= |points|`.
    pub fn is_valid(&self) -> bool {
        self.covering_ok && self.drop_one_ok
    }
}

fn check_indices(h: &NormalSet, b: &[usize]) -> Result<()> {
    if let Some(&i) = b.iter().find(|&&i| i >= h.len()) {
        return Err(input(format!(
            "normal index {i} out of range (|H| = {})",
            h.len()
        )));
    }
    let mut sorted = b.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != b.len() {
        return Err(input("repeated normal index"));
    }
    Ok(())
}

fn report(
    h: &NormalSet,
    x: PointSet,
    kind: WitnessKind,
    used: Vec<usize>,
) -> Result<WitnessReport> {
    let covering_ok = covering_holds(h, &x)?;
    let mut drop_one_ok = true;
    for j in 0..x.len() {
        if covering_holds(h, &x.without(j))? {
            drop_one_ok = false;
            break;
        }
    }
    let assignment = excluding_holds(h, &x)?;
    Ok(WitnessReport {
        kind,
        normals_used: used,
        points: x,
        covering_ok,
        drop_one_ok,
        assignment,
    })
}

/// Evaluates covering, drop-one minimality and the exclusion assignment.
pub fn validate_witness(h: &NormalSet, x: &PointSet, kind: WitnessKind) -> Result<WitnessReport> {
    if h.dim() != x.dim() {
        return Err(input("normal set and point set dimensions differ"));
    }
    report(h, x.clone(), kind, Vec::new())
}

/// Witness points built from a minimal positive circuit `B` of `H`.
pub fn helly_witness_points(h: &NormalSet, b: &[usize]) -> Result<WitnessReport> {
    check_indices(h, b)?;
    let k = b.len();
    if k < 2 {
        return Err(input("a Helly basis needs at least two normals"));
    }
    let basis = h.subset(b);
    if !is_simplex_with_origin(&basis)? {
        return Err(input("basis is not a minimal positive circuit"));
    }
    let lambda = positive_dependence(&basis)?
        .ok_or_else(|| internal("circuit without a positive dependence"))?;
    let scaled: Vec<RVector> = basis.iter().zip(&lambda).map(|(a, l)| a.scale(l)).collect();

    let minus_one = -Rational::one();
    let mut points = Vec::with_capacity(k);
    for i in 0..k {
        let rows: Vec<RVector> = (0..k)
            .filter(|&j| j != i)
            .map(|j| scaled[j].clone())
            .collect();
        let rhs = vec![minus_one.clone(); k - 1];
        let xi = solve_linear(&rows, &rhs)?
            .ok_or_else(|| internal("circuit minus one vector should be independent"))?;
        points.push(xi);
    }

    let expected_self = Rational::from_int(k as i64 - 1);
    for (i, xi) in points.iter().enumerate() {
        for (j, aj) in scaled.iter().enumerate() {
            let want = if i == j { &expected_self } else { &minus_one };
            if &aj.dot(xi) != want {
                return Err(internal(format!(
                    "Helly witness identity fails at ({i}, {j})"
                )));
            }
        }
    }
    let total = points
        .iter()
        .fold(RVector::zeros(h.dim()), |acc, x| acc.add(x));
    if !total.is_zero() {
        return Err(internal("Helly witness points do not sum to zero"));
    }

    let x = PointSet::new(h.dim(), points)?;
    let rep = report(h, x, WitnessKind::Helly, b.to_vec())?;
    if !rep.is_valid() {
        return Err(internal("Helly witness failed covering or drop-one check"));
    }
    Ok(rep)
}

/// Witness points built from a conical-position basis `B` whose positive
/// hull holds no other normal. Covering over all of `H` holds when `B` has
/// maximal size; otherwise this reports [`Error::NotMaximalBasis`].
pub fn cone_witness_points(h: &NormalSet, b: &[usize]) -> Result<WitnessReport> {
    check_indices(h, b)?;
    if b.is_empty() {
        return Err(input("a cone basis needs at least one normal"));
    }
    let basis = h.subset(b);
    if !is_conical_position(&basis)? {
        return Err(precondition("basis is not in conical position"));
    }
    if !positive_hull_is_empty(h, b)? {
        return Err(precondition(
            "positive hull of the basis contains another normal",
        ));
    }

    let dim = h.dim();
    let mut points = Vec::with_capacity(b.len());
    for (i, &bi) in b.iter().enumerate() {
        let mut lp = LinearProgram::new(dim);
        for (j, a) in basis.iter().enumerate() {
            if i == j {
                lp.push(a.clone(), Relation::Eq, Rational::zero());
            } else {
                lp.push(a.clone(), Relation::Le, -Rational::one());
            }
        }
        let xi = find_feasible(&lp)?
            .ok_or_else(|| precondition(format!("no point isolates basis normal {bi}")))?;
        points.push(xi);
    }

    let x = PointSet::new(dim, points)?;
    let rep = report(h, x, WitnessKind::Cone, b.to_vec())?;
    if !rep.covering_ok {
        return Err(Error::NotMaximalBasis(format!(
            "halfspaces of the {} constructed points leave a normal uncovered",
            b.len()
        )));
    }
    if !rep.drop_one_ok {
        return Err(internal("cone witness failed the drop-one check"));
    }
    Ok(rep)
}

/// A witness attaining `cara(H)`: the Helly construction when the Helly
/// number is strictly larger, the cone construction otherwise.
pub fn caratheodory_witness(h: &NormalSet) -> Result<WitnessReport> {
    let r = caratheodory_number(h)?;
    if r.helly > r.cone {
        helly_witness_points(h, &r.helly_witness)
    } else {
        cone_witness_points(h, &r.cone_witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::hconvex::minimal_h_witness;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn ns(dim: usize, vs: &[&[i64]]) -> NormalSet {
        NormalSet::new(dim, vs.iter().map(|c| v(c)).collect()).unwrap()
    }

    fn pts(dim: usize, ps: &[&[i64]]) -> PointSet {
        PointSet::new(dim, ps.iter().map(|c| v(c)).collect()).unwrap()
    }

    fn square() -> NormalSet {
        ns(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
    }

    #[test]
    fn helly_opposite_pair() {
        let h = ns(2, &[&[1, 0], &[-1, 0]]);
        let r = helly_witness_points(&h, &[0, 1]).unwrap();
        assert_eq!(r.points, pts(2, &[&[1, 0], &[-1, 0]]));
        assert!(r.is_valid());
    }

    #[test]
    fn helly_triangle() {
        let h = ns(2, &[&[-1, 0], &[0, -1], &[1, 1]]);
        let r = helly_witness_points(&h, &[0, 1, 2]).unwrap();
        assert_eq!(r.points, pts(2, &[&[-2, 1], &[1, -2], &[1, 1]]));
        assert!(r.is_valid());
        assert_eq!(r.kind, WitnessKind::Helly);
    }

    #[test]
    fn helly_symmetric_simplex() {
        // (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1): regular simplex directions
        let h = ns(3, &[&[1, 1, 1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]);
        let r = helly_witness_points(&h, &[0, 1, 2, 3]).unwrap();
        let sum = r
            .points
            .points()
            .iter()
            .fold(RVector::zeros(3), |a, x| a.add(x));
        assert!(sum.is_zero());
        assert!(r.is_valid());
    }

    #[test]
    fn helly_rejects_non_circuits() {
        let h = square();
        assert!(matches!(
            helly_witness_points(&h, &[0, 2]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            helly_witness_points(&h, &[0]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            helly_witness_points(&h, &[0, 9]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn cone_square() {
        let r = cone_witness_points(&square(), &[0, 2]).unwrap();
        assert_eq!(r.points.len(), 2);
        let (a0, a2) = (v(&[1, 0]), v(&[0, 1]));
        let (x0, x1) = (&r.points.points()[0], &r.points.points()[1]);
        assert!(a0.dot(x0).is_zero() && a2.dot(x1).is_zero());
        assert!(a2.dot(x0).is_negative() && a0.dot(x1).is_negative());
        assert!(r.is_valid());
    }

    #[test]
    fn cone_pyramid() {
        let h = corpus::pyramid_normals(4);
        let r = cone_witness_points(&h, &[0, 1, 2, 3]).unwrap();
        assert_eq!(r.points.len(), 4);
        assert!(r.covering_ok && r.drop_one_ok);
    }

    #[test]
    fn cone_single_normal() {
        let h = ns(2, &[&[1, 0]]);
        let r = cone_witness_points(&h, &[0]).unwrap();
        assert!(v(&[1, 0]).dot(&r.points.points()[0]).is_zero());
        assert!(r.is_valid());
    }

    #[test]
    fn cone_errors() {
        let h = ns(2, &[&[1, 0], &[1, 1], &[2, 1]]);
        assert!(matches!(
            cone_witness_points(&h, &[0, 1]),
            Err(Error::Precondition(_))
        ));
        let tri = ns(2, &[&[-1, 0], &[0, -1], &[1, 1]]);
        assert!(matches!(
            cone_witness_points(&tri, &[0, 1, 2]),
            Err(Error::Precondition(_))
        ));
        // a single normal isolates itself with the origin, which covers H
        let r = cone_witness_points(&square(), &[0]).unwrap();
        assert!(r.is_valid() && r.points.len() == 1);
        // {-e1, -e2} is not a maximal basis of the truncated 3-simplex
        let h = corpus::simplex_plus_facet_normals(3);
        assert!(matches!(
            cone_witness_points(&h, &[0, 1]),
            Err(Error::NotMaximalBasis(_))
        ));
    }

    #[test]
    fn validate_examples() {
        let r = validate_witness(
            &square(),
            &pts(2, &[&[0, -1], &[-1, 0]]),
            WitnessKind::Unspecified,
        )
        .unwrap();
        assert!(r.covering_ok && r.drop_one_ok);
        let r = validate_witness(
            &square(),
            &pts(2, &[&[0, -1], &[-1, 0], &[1, 1]]),
            WitnessKind::Unspecified,
        )
        .unwrap();
        assert!(r.covering_ok && !r.drop_one_ok);
        let r = validate_witness(
            &ns(2, &[&[1, 0]]),
            &pts(2, &[&[-1, 0]]),
            WitnessKind::Unspecified,
        )
        .unwrap();
        assert!(!r.covering_ok);
    }

    #[test]
    fn valid_reports_are_their_own_minimal_witness() {
        for (_, k) in corpus::named_polytopes() {
            let h = k.normal_set();
            let r = caratheodory_witness(&h).unwrap();
            let origin = RVector::zeros(h.dim());
            assert_eq!(minimal_h_witness(&h, &r.points, &origin).unwrap(), r.points);
        }
    }

    #[test]
    fn report_json_shape() {
        let r = cone_witness_points(&square(), &[0, 2]).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["kind"], "CONE");
        assert_eq!(json["normals_used"], serde_json::json!([0, 2]));
        assert_eq!(json["points"]["dim"], 2);
        let back: WitnessReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
