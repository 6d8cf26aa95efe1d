//! Exact linear feasibility and optimization.
//!
//! A dense two-phase simplex over [`Rational`] with Bland's least-index rule,
//! so it always terminates and always returns the same basis for the same
//! program. Variables are free; sign constraints are ordinary rows.
//!
//! Strict inequalities are not representable. Callers scale them away
//! (`λ > 0` becomes `λ ≥ 1` for homogeneous systems) or maximize a slack and
//! inspect the sign of the optimum.

use serde::{Deserialize, Serialize};

use crate::error::{input, internal, Result};
use crate::rational::{RVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: RVector,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub rows: Vec<Constraint>,
    /// Maximized when present; otherwise the program is a feasibility query.
    pub objective: Option<RVector>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
            objective: None,
        }
    }

    pub fn push(&mut self, coeffs: RVector, relation: Relation, rhs: Rational) -> &mut Self {
        self.rows.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn maximize(&mut self, objective: RVector) -> &mut Self {
        self.objective = Some(objective);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.num_vars == 0 {
            return Err(input("linear program needs at least one variable"));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.dim() != self.num_vars {
                return Err(input(format!(
                    "row {i} has {} coefficients, expected {}",
                    row.coeffs.dim(),
                    self.num_vars
                )));
            }
        }
        if let Some(obj) = &self.objective {
            if obj.dim() != self.num_vars {
                return Err(input(format!(
                    "objective has {} coefficients, expected {}",
                    obj.dim(),
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    /// True when `x` satisfies every row exactly.
    pub fn satisfied_by(&self, x: &RVector) -> bool {
        x.dim() == self.num_vars
            && self
                .rows
                .iter()
                .all(|r| r.relation.holds(&r.coeffs.dot(x), &r.rhs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LpStatus {
    Infeasible,
    Optimal,
    Unbounded,
    Feasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub witness: Option<RVector>,
    pub value: Option<Rational>,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        self.status != LpStatus::Infeasible
    }
}

/// Dense simplex tableau. Column layout: `x+` and `x-` for every user
/// variable, then slack/surplus columns, then artificials.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    num_cols: usize,
    first_artificial: usize,
}

enum Pivoting {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(
        &mut self,
        row: usize,
        col: usize,
        reduced: &mut [Rational],
        obj_value: &mut Rational,
    ) {
        let p = self.rows[row][col].clone();
        if p != Rational::one() {
            let inv = p.recip();
            for v in self.rows[row].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.rhs[row] *= &inv;
        }
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&factor * pv);
                }
            }
            self.rhs[i] -= &(&factor * &pivot_rhs);
        }
        let factor = reduced[col].clone();
        if !factor.is_zero() {
            for (v, pv) in reduced.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&factor * pv);
                }
            }
            // objective value tracks c_B * rhs
            *obj_value += &(&factor * &pivot_rhs);
        }
        self.basis[row] = col;
    }

    /// Maximizes with Bland's rule. `reduced` holds `c_j - c_B B^-1 A_j`.
    fn run(
        &mut self,
        reduced: &mut [Rational],
        obj_value: &mut Rational,
        allowed: usize,
    ) -> Pivoting {
        loop {
            let entering = (0..allowed).find(|&j| reduced[j].is_positive());
            let Some(col) = entering else {
                return Pivoting::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Pivoting::Unbounded,
                Some((row, _)) => self.pivot(row, col, reduced, obj_value),
            }
        }
    }

    fn reduced_costs(&self, costs: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut reduced = costs.to_vec();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *r -= &(cb * a);
                }
            }
            value += &(cb * &self.rhs[i]);
        }
        (reduced, value)
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut vals = vec![Rational::zero(); self.num_cols];
        for (i, &b) in self.basis.iter().enumerate() {
            vals[b] = self.rhs[i].clone();
        }
        vals
    }
}

/// Decides feasibility (and optimality when an objective is present) exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars;
    let m = lp.rows.len();

    let mut num_slack = 0;
    let mut num_art = 0;
    let mut normalized = Vec::with_capacity(m);
    for row in &lp.rows {
        let (coeffs, rel, rhs) = if row.rhs.is_negative() {
            (row.coeffs.neg(), row.relation.flipped(), -&row.rhs)
        } else {
            (row.coeffs.clone(), row.relation, row.rhs.clone())
        };
        match rel {
            Relation::Le => num_slack += 1,
            Relation::Ge => {
                num_slack += 1;
                num_art += 1;
            }
            Relation::Eq => num_art += 1,
        }
        normalized.push((coeffs, rel, rhs));
    }

    let first_slack = 2 * n;
    let first_artificial = first_slack + num_slack;
    let num_cols = first_artificial + num_art;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        num_cols,
        first_artificial,
    };
    let (mut s, mut a) = (first_slack, first_artificial);
    for (coeffs, rel, rhs) in normalized {
        let mut r = vec![Rational::zero(); num_cols];
        for (j, c) in coeffs.coords().iter().enumerate() {
            r[j] = c.clone();
            r[n + j] = -c;
        }
        let basic = match rel {
            Relation::Le => {
                r[s] = Rational::one();
                s += 1;
                s - 1
            }
            Relation::Ge => {
                r[s] = -Rational::one();
                r[a] = Rational::one();
                s += 1;
                a += 1;
                a - 1
            }
            Relation::Eq => {
                r[a] = Rational::one();
                a += 1;
                a - 1
            }
        };
        tab.rows.push(r);
        tab.rhs.push(rhs);
        tab.basis.push(basic);
    }

    // Phase 1: maximize -(sum of artificials).
    if num_art > 0 {
        let mut costs = vec![Rational::zero(); num_cols];
        for c in costs.iter_mut().skip(first_artificial) {
            *c = -Rational::one();
        }
        let (mut reduced, mut value) = tab.reduced_costs(&costs);
        if let Pivoting::Unbounded = tab.run(&mut reduced, &mut value, num_cols) {
            return Err(internal("phase one reported unbounded"));
        }
        if value.is_negative() {
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                witness: None,
                value: None,
            });
        }
        drive_out_artificials(&mut tab);
    }

    let outcome = match &lp.objective {
        None => {
            let witness = extract(&tab, n);
            LpOutcome {
                status: LpStatus::Feasible,
                witness: Some(witness),
                value: None,
            }
        }
        Some(obj) => {
            let mut costs = vec![Rational::zero(); num_cols];
            for (j, c) in obj.coords().iter().enumerate() {
                costs[j] = c.clone();
                costs[n + j] = -c;
            }
            let (mut reduced, mut value) = tab.reduced_costs(&costs);
            match tab.run(&mut reduced, &mut value, tab.first_artificial) {
                Pivoting::Unbounded => LpOutcome {
                    status: LpStatus::Unbounded,
                    witness: None,
                    value: None,
                },
                Pivoting::Optimal => {
                    let witness = extract(&tab, n);
                    let objective_value = obj.dot(&witness);
                    if objective_value != value {
                        return Err(internal("objective value drifted from tableau value"));
                    }
                    LpOutcome {
                        status: LpStatus::Optimal,
                        witness: Some(witness),
                        value: Some(objective_value),
                    }
                }
            }
        }
    };

    if let Some(w) = &outcome.witness {
        if !lp.satisfied_by(w) {
            return Err(internal("simplex witness fails substitution check"));
        }
    }
    Ok(outcome)
}

/// Pivots zero-level artificials out of the basis; rows that cannot be
/// pivoted are linearly redundant and are dropped.
fn drive_out_artificials(tab: &mut Tableau) {
    let mut dummy_reduced = vec![Rational::zero(); tab.num_cols];
    let mut dummy_value = Rational::zero();
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] < tab.first_artificial {
            i += 1;
            continue;
        }
        let col = (0..tab.first_artificial).find(|&j| !tab.rows[i][j].is_zero());
        match col {
            Some(j) => {
                tab.pivot(i, j, &mut dummy_reduced, &mut dummy_value);
                i += 1;
            }
            None => {
                tab.rows.remove(i);
                tab.rhs.remove(i);
                tab.basis.remove(i);
            }
        }
    }
}

fn extract(tab: &Tableau, n: usize) -> RVector {
    let vals = tab.column_values();
    RVector::new((0..n).map(|j| &vals[j] - &vals[n + j]).collect())
}

/// Feasibility only: returns a witness if one exists.
pub fn find_feasible(lp: &LinearProgram) -> Result<Option<RVector>> {
    let out = solve(lp)?;
    Ok(match out.status {
        LpStatus::Infeasible => None,
        _ => out.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut lp = LinearProgram::new(1);
        lp.push(v(&[1]), Relation::Ge, r(1))
            .push(v(&[-1]), Relation::Ge, r(0));
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn simplex_feasibility_has_checked_witness() {
        let mut lp = LinearProgram::new(2);
        lp.push(v(&[1, 1]), Relation::Eq, r(1))
            .push(v(&[1, 0]), Relation::Ge, r(0))
            .push(v(&[0, 1]), Relation::Ge, r(0));
        let out = solve(&lp).unwrap();
        assert_eq!(out.status, LpStatus::Feasible);
        assert!(lp.satisfied_by(out.witness.as_ref().unwrap()));
    }

    #[test]
    fn opposite_pair_positive_dependence() {
        let mut lp = LinearProgram::new(2);
        lp.push(v(&[1, -1]), Relation::Eq, r(0))
            .push(v(&[0, 0]), Relation::Eq, r(0))
            .push(v(&[1, 0]), Relation::Ge, r(1))
            .push(v(&[0, 1]), Relation::Ge, r(1));
        let out = solve(&lp).unwrap();
        assert_eq!(out.status, LpStatus::Feasible);
        let w = out.witness.unwrap();
        assert_eq!(w[0], w[1]);
        assert!(w[0] >= r(1));
    }

    #[test]
    fn optimum_and_unbounded() {
        // max x + y, x <= 2, y <= 3, x + y <= 4
        let mut lp = LinearProgram::new(2);
        lp.push(v(&[1, 0]), Relation::Le, r(2))
            .push(v(&[0, 1]), Relation::Le, r(3))
            .push(v(&[1, 1]), Relation::Le, r(4))
            .maximize(v(&[1, 1]));
        let out = solve(&lp).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value, Some(r(4)));

        let mut lp = LinearProgram::new(2);
        lp.push(v(&[1, 0]), Relation::Le, r(2)).maximize(v(&[0, 1]));
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn negative_rhs_and_free_variables() {
        // min x subject to x >= -5 (as max -x)
        let mut lp = LinearProgram::new(1);
        lp.push(v(&[1]), Relation::Ge, r(-5)).maximize(v(&[-1]));
        let out = solve(&lp).unwrap();
        assert_eq!(out.witness.unwrap()[0], r(-5));
        assert_eq!(out.value, Some(r(5)));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.push(v(&[1, 1]), Relation::Eq, r(2))
            .push(v(&[2, 2]), Relation::Eq, r(4))
            .push(v(&[1, -1]), Relation::Eq, r(0))
            .maximize(v(&[1, 0]));
        let out = solve(&lp).unwrap();
        assert_eq!(out.witness.unwrap(), v(&[1, 1]));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Chvatal's cycling instance under the largest-coefficient rule.
        let q = |s: &str| s.parse::<Rational>().unwrap();
        let mut lp = LinearProgram::new(4);
        let row = |c: [&str; 4]| RVector::new(c.iter().map(|s| q(s)).collect());
        lp.push(row(["1/2", "-11/2", "-5/2", "9"]), Relation::Le, r(0))
            .push(row(["1/2", "-3/2", "-1/2", "1"]), Relation::Le, r(0))
            .push(row(["1", "0", "0", "0"]), Relation::Le, r(1));
        for j in 0..4 {
            lp.push(RVector::unit(4, j, 1), Relation::Ge, r(0));
        }
        lp.maximize(row(["10", "-57", "-9", "-24"]));
        let out = solve(&lp).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value, Some(r(1)));
    }

    #[test]
    fn rejects_malformed_rows() {
        let mut lp = LinearProgram::new(2);
        lp.push(v(&[1]), Relation::Le, r(0));
        assert!(matches!(solve(&lp), Err(crate::Error::Input(_))));
    }

    #[test]
    fn deterministic() {
        let mut lp = LinearProgram::new(3);
        lp.push(v(&[1, 1, 1]), Relation::Eq, r(3))
            .push(v(&[1, -1, 0]), Relation::Le, r(1));
        assert_eq!(solve(&lp).unwrap(), solve(&lp).unwrap());
    }
}
