//! Dense linear algebra: Gaussian elimination over a coefficient field, and
//! square solves over the even part of a Grassmann algebra.

use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::scalar::Coefficient;

/// Reduced row echelon form and pivot columns.
pub fn rref<T: Coefficient>(rows: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (m, pivots)
}

pub fn rank<T: Coefficient>(rows: &[Vec<T>]) -> usize {
    rref(rows).1.len()
}

/// A basis of `{x : M x = 0}`.
pub fn kernel<T: Coefficient>(rows: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let (m, pivots) = rref(rows);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![T::zero(); cols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `M x = b`, or `None` if the system is inconsistent.
pub fn solve<T: Coefficient>(rows: &[Vec<T>], rhs: &[T], cols: usize) -> Option<Vec<T>> {
    let aug: Vec<Vec<T>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect())
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    Some(x)
}

pub fn mat_mul<T: Coefficient>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Coefficient>(a: &[Vec<T>], v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

/// Solve `A x = b` for a matrix with even entries and at least as many rows
/// as columns. Even elements are central, so ordinary elimination works as
/// long as every pivot has an invertible body; this holds whenever the body
/// of `A` has full column rank, and then the solution is unique. The
/// right-hand side may have any parity. Fails with [`Error::Singular`] when
/// a pivot is missing or the system is inconsistent.
pub fn solve_even<T: Coefficient>(
    matrix: &[Vec<SuperNumber<T>>],
    rhs: &[SuperNumber<T>],
) -> Result<Vec<SuperNumber<T>>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    debug_assert!(matrix.iter().all(|r| r.iter().all(|x| x.is_even())));
    let mut m: Vec<Vec<SuperNumber<T>>> = matrix.to_vec();
    let mut b: Vec<SuperNumber<T>> = rhs.to_vec();
    for c in 0..cols {
        let p = (c..rows)
            .find(|&i| m[i][c].is_invertible())
            .ok_or(Error::Singular)?;
        m.swap(c, p);
        b.swap(c, p);
        let inv = m[c][c].invert()?;
        for i in (c + 1)..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                m[i][j] = &m[i][j] - &(&f * &m[c][j]);
            }
            b[i] = &b[i] - &(&f * &b[c]);
        }
    }
    if b[cols..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Singular);
    }
    let mut x: Vec<SuperNumber<T>> = vec![SuperNumber::zero(b.first().map_or(0, |v| v.n())); cols];
    for i in (0..cols).rev() {
        let mut acc = b[i].clone();
        for j in (i + 1)..cols {
            acc = &acc - &(&m[i][j] * &x[j]);
        }
        x[i] = &m[i][i].invert()? * &acc;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Scalar};

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![q(1, 1), q(2, 1), q(3, 1)], vec![q(2, 1), q(4, 1), q(6, 1)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|x| x == &q(0, 1)));
        }
    }

    #[test]
    fn inconsistent_system() {
        let m = vec![vec![q(1, 1)], vec![q(1, 1)]];
        assert_eq!(solve(&m, &[q(1, 1), q(2, 1)], 1), None);
        assert_eq!(solve(&m, &[q(2, 1), q(2, 1)], 1), Some(vec![q(2, 1)]));
    }

    #[test]
    fn even_solve_with_nilpotent_entries() {
        let n = 2;
        let g = |i| SuperNumber::<Scalar>::generator(n, i).unwrap();
        let one = SuperNumber::one(n);
        let nil = &g(1) * &g(2);
        let m = vec![vec![one.clone(), nil.clone()], vec![nil.clone(), SuperNumber::from_int(n, 2)]];
        let rhs = vec![g(1), g(2)];
        let x = solve_even(&m, &rhs).unwrap();
        for i in 0..2 {
            assert_eq!(&(&m[i][0] * &x[0]) + &(&m[i][1] * &x[1]), rhs[i]);
        }
    }
}
