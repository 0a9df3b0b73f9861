//! Small exact Gaussian-elimination routines over the rationals.
//!
//! Matrices here are tiny (rank of a root system, or the degree of a
//! cyclotomic field), so no pivot-size cleverness is needed — only
//! exactness.

use num::{One, Zero};

use crate::{Int, Rational};

/// Inverse of a square matrix, or `None` if singular.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert: matrix must be square");
            let mut ext = row.clone();
            for j in 0..n {
                ext.push(if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                });
            }
            ext
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let s = &a[col][c] * &f;
                    a[r][c] -= s;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Exact solution of a square invertible integer system `A x = b`, or
/// `None` if A is singular. Fraction-free (Bareiss) forward elimination —
/// every interior division is exact, entries stay integers, and no per-op
/// rational normalization happens — then a short rational back-substitution.
pub(crate) fn solve_int(a: &[Vec<Int>], b: &[Int]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(n, b.len(), "solve_int: dimension mismatch");
    let mut m: Vec<Vec<Int>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "solve_int: matrix must be square");
            let mut ext = row.clone();
            ext.push(rhs.clone());
            ext
        })
        .collect();

    let mut prev = Int::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

/// Any exact solution of `A x = b`, or `None` if the system is
/// inconsistent. Free variables are set to zero.
pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "solve: dimension mismatch");
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "solve: ragged matrix");
            let mut ext = row.clone();
            ext.push(rhs.clone());
            ext
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let s = &m[rank][c] * &f;
                    m[r][c] -= s;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // Inconsistent iff a zero row has nonzero right-hand side.
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for col in 0..cols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = m[r][cols].clone();
        }
    }
    Some(x)
}

/// Determinant of a square matrix.
#[cfg(test)]
pub(crate) fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            d = -d;
        }
        d *= a[col][col].clone();
        let p = a[col][col].clone();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                for c in col..n {
                    let s = &a[col][c] * &f;
                    a[r][c] -= s;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn inverts_cartan_of_b2() {
        let c = m(&[&[2, -1], &[-2, 2]]);
        let inv = invert(&c).unwrap();
        // C * C^{-1} = I
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Rational::zero();
                for k in 0..2 {
                    s += &c[i][k] * &inv[k][j];
                }
                assert_eq!(s, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        assert!(invert(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let b = vec![rat_int(3), rat_int(1)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);

        let a = m(&[&[1, 1], &[2, 2]]);
        let b = vec![rat_int(1), rat_int(3)];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn overdetermined_solve() {
        // x = 2 seen through three redundant equations.
        let a = m(&[&[1], &[2], &[3]]);
        let b = vec![rat_int(2), rat_int(4), rat_int(6)];
        assert_eq!(solve(&a, &b).unwrap(), vec![rat_int(2)]);
    }

    fn mi(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect()
    }

    #[test]
    fn integer_solve_agrees_with_rational_solve() {
        let a = mi(&[&[2, 1, -1], &[-3, -1, 2], &[-2, 1, 2]]);
        let b = vec![Int::from(8), Int::from(-11), Int::from(-3)];
        let x = solve_int(&a, &b).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(3), rat_int(-1)]);

        // Fractional solution of an integer system.
        let a = mi(&[&[2, 0], &[0, 4]]);
        let b = vec![Int::from(1), Int::from(3)];
        let x = solve_int(&a, &b).unwrap();
        assert_eq!(x, vec![crate::rat(1, 2), crate::rat(3, 4)]);

        // Singular matrix is refused.
        let a = mi(&[&[1, 2], &[2, 4]]);
        let b = vec![Int::from(1), Int::from(2)];
        assert!(solve_int(&a, &b).is_none());
    }
}
