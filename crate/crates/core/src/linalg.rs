//! Rank and linear solves over the rationals.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{input, Result};
use crate::rational::{denominator_lcm, RVector, Rational};

/// Exact rank, computed by fraction-free (Bareiss) elimination on the
/// integer matrix obtained by clearing each row's denominators.
pub fn rank(vectors: &[RVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.dim();
    let mut m: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.dim(), cols, "rank: mixed dimensions");
            let l = denominator_lcm(v.coords());
            v.coords()
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        })
        .collect();

    let rows = m.len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form of the augmented system `[A | b]`.
/// Returns the pivot columns and whether the system is consistent.
fn rref(a: &[RVector], b: &[Rational]) -> (Vec<Vec<Rational>>, Vec<usize>, bool) {
    let cols = a.first().map_or(0, RVector::dim);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.coords().to_vec();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v -= &(&f * pv);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let consistent = m[r..].iter().all(|row| row[cols].is_zero());
    (m, pivots, consistent)
}

/// Solves `A x = b` exactly. Underdetermined systems return the
/// minimum-norm solution, the unique solution lying in the row space of `A`.
pub fn solve_linear(a: &[RVector], b: &[Rational]) -> Result<Option<RVector>> {
    if a.len() != b.len() {
        return Err(input(format!(
            "solve_linear: {} rows but {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    let Some(first) = a.first() else {
        return Err(input("solve_linear: empty system has no dimension"));
    };
    let dim = first.dim();
    if a.iter().any(|r| r.dim() != dim) {
        return Err(input("solve_linear: rows of different dimensions"));
    }

    let (_, pivots, consistent) = rref(a, b);
    if !consistent {
        return Ok(None);
    }

    // Independent rows of A in their original form span the row space.
    // Find them greedily, then solve (R R^T) y = b_R and return x = R^T y.
    let mut basis: Vec<usize> = Vec::with_capacity(pivots.len());
    let mut picked: Vec<RVector> = Vec::new();
    for (i, row) in a.iter().enumerate() {
        picked.push(row.clone());
        if rank(&picked) > basis.len() {
            basis.push(i);
        } else {
            picked.pop();
        }
    }
    let k = basis.len();
    if k == 0 {
        return Ok(Some(RVector::zeros(dim)));
    }
    let gram: Vec<RVector> = basis
        .iter()
        .map(|&i| RVector::new(basis.iter().map(|&j| a[i].dot(&a[j])).collect()))
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|&i| b[i].clone()).collect();
    let (m, gp, ok) = rref(&gram, &rhs);
    if !ok || gp.len() != k {
        return Err(crate::error::internal(
            "Gram matrix of independent rows is singular",
        ));
    }
    let y: Vec<Rational> = (0..k).map(|i| m[i][k].clone()).collect();
    let mut x = RVector::zeros(dim);
    for (yi, &row) in y.iter().zip(&basis) {
        x = x.add(&a[row].scale(yi));
    }
    debug_assert!(a.iter().zip(b).all(|(r, bi)| &r.dot(&x) == bi));
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[v(&[1, 0]), v(&[0, 1])]), 2);
        assert_eq!(rank(&[v(&[1, 1]), v(&[2, 2])]), 1);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[v(&[0, 0, 0])]), 0);
        let half = RVector::new(vec![Rational::new(1, 2), Rational::new(1, 3), q(0)]);
        assert_eq!(rank(&[half.clone(), half.scale(&q(6)), v(&[0, 0, 1])]), 2);
    }

    #[test]
    fn solve_examples() {
        let x = solve_linear(&[v(&[0, -1]), v(&[1, 1])], &[q(-1), q(-1)]).unwrap();
        assert_eq!(x, Some(v(&[-2, 1])));
        let x = solve_linear(&[v(&[1, 0])], &[q(0)]).unwrap();
        assert_eq!(x, Some(v(&[0, 0])));
        let x = solve_linear(&[v(&[1, 0]), v(&[1, 0])], &[q(0), q(1)]).unwrap();
        assert_eq!(x, None);
    }

    #[test]
    fn minimum_norm_lies_in_row_space() {
        // x + y = 2 has minimum-norm solution (1, 1).
        let x = solve_linear(&[v(&[1, 1, 0])], &[q(2)]).unwrap().unwrap();
        assert_eq!(x, v(&[1, 1, 0]));
        // dependent duplicate rows are fine when consistent
        let x = solve_linear(&[v(&[1, 1, 0]), v(&[2, 2, 0])], &[q(2), q(4)]).unwrap();
        assert_eq!(x, Some(v(&[1, 1, 0])));
    }

    #[test]
    fn dimension_errors() {
        assert!(solve_linear(&[v(&[1, 0])], &[]).is_err());
        assert!(solve_linear(&[v(&[1, 0]), v(&[1])], &[q(0), q(0)]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_vec(dim: usize) -> impl Strategy<Value = RVector> {
            proptest::collection::vec(-4i64..=4, dim).prop_map(|c| RVector::from_ints(&c))
        }

        proptest! {
            #[test]
            fn rank_ignores_combinations(
                vs in proptest::collection::vec(small_vec(3), 1..5),
                coeffs in proptest::collection::vec(-3i64..=3, 5),
            ) {
                let mut combo = RVector::zeros(3);
                for (v, c) in vs.iter().zip(&coeffs) {
                    combo = combo.add(&v.scale(&q(*c)));
                }
                let mut extended = vs.clone();
                extended.push(combo);
                prop_assert_eq!(rank(&vs), rank(&extended));
            }

            #[test]
            fn solutions_satisfy_system(
                rows in proptest::collection::vec(small_vec(3), 1..4),
                x0 in small_vec(3),
            ) {
                let b: Vec<Rational> = rows.iter().map(|r| r.dot(&x0)).collect();
                let x = solve_linear(&rows, &b).unwrap().unwrap();
                for (r, bi) in rows.iter().zip(&b) {
                    prop_assert_eq!(&r.dot(&x), bi);
                }
                // minimum norm: no longer than the planted solution
                prop_assert!(x.dot(&x) <= x0.dot(&x0));
            }
        }
    }
}
