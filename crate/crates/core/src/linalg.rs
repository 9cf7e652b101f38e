//! Exact dense linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Solves `a · x = rhs` by Gaussian elimination with full pivoting.
///
/// Returns `None` when `a` is singular. `a` must be square with
/// `rhs.len()` rows.
pub fn solve(a: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && rhs.len() == n);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    // col_of[c] = unknown stored in working column c
    let mut col_of: Vec<usize> = (0..n).collect();

    for step in 0..n {
        let (pr, pc) = (step..n)
            .flat_map(|r| (step..n).map(move |c| (r, c)))
            .find(|&(r, c)| !m[r][c].is_zero())?;
        m.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
            col_of.swap(step, pc);
        }
        let pivot = m[step][step].clone();
        for v in m[step][step..].iter_mut() {
            *v = &*v / &pivot;
        }
        let pivot_row = m[step].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == step || row[step].is_zero() {
                continue;
            }
            let factor = row[step].clone();
            for (v, p) in row[step..].iter_mut().zip(&pivot_row[step..]) {
                *v = &*v - &factor * p;
            }
        }
    }

    let mut x = vec![Rational::zero(); n];
    for (c, &unknown) in col_of.iter().enumerate() {
        x[unknown] = m[c][n].clone();
    }
    Some(x)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    // cofactor expansion, exponential but obviously correct
    fn det_cofactor(a: &[Vec<BigInt>]) -> BigInt {
        if a.is_empty() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for c in 0..a.len() {
            let minor: Vec<Vec<BigInt>> = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &a[0][c] * det_cofactor(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn solves_worked_system() {
        let rows = [[-4, 0, 0, 2], [0, -2, 1, 0], [0, 1, -2, 1], [2, 0, 1, -2]];
        let a: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        let rhs = [q(-2), q(0), q(0), q(0)];
        let x = solve(&a, &rhs).unwrap();
        assert_eq!(x, vec![q(2), q(1), q(2), q(3)]);
    }

    #[test]
    fn needs_pivoting_when_leading_entry_is_zero() {
        let a = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q(5), q(3)]);
    }

    #[test]
    fn detects_singular_systems() {
        let a = vec![
            vec![q(-2), q(1), q(1)],
            vec![q(1), q(-2), q(1)],
            vec![q(1), q(1), q(-2)],
        ];
        assert!(solve(&a, &[q(0), q(0), q(0)]).is_none());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let cases = [
            int_matrix(&[&[-2, 1], &[1, -2]]),
            int_matrix(&[&[-3]]),
            int_matrix(&[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]),
            int_matrix(&[
                &[-4, 0, 0, 2],
                &[0, -2, 1, 0],
                &[0, 1, -2, 1],
                &[2, 0, 1, -2],
            ]),
            int_matrix(&[&[-2, 1, 1], &[1, -2, 1], &[1, 1, -2]]),
        ];
        for m in &cases {
            assert_eq!(determinant(m), det_cofactor(m), "{m:?}");
        }
        assert_eq!(determinant(&[]), BigInt::one());
    }
}
