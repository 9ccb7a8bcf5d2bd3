//! Exact Gaussian elimination over any field-like numeric type.
//!
//! Matrices are dense row-major `Vec<Vec<T>>`. Used with `Ratio<i64>` for the
//! root-system bookkeeping and with `BigRational` for module construction.

use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<T: Field>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<T: Field>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Given column vectors, pick a maximal linearly independent subset (earliest
/// first) and express every column in that basis.
///
/// Returns `(basis_indices, coords)` where `coords[c]` holds the coordinates
/// of column `c` with respect to the chosen basis columns.
pub fn column_basis<T: Field>(columns: &[Vec<T>]) -> (Vec<usize>, Vec<Vec<T>>) {
    if columns.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let len = columns[0].len();
    let mut m: Vec<Vec<T>> = (0..len).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let pivots = rref(&mut m);
    let coords = (0..columns.len()).map(|c| (0..pivots.len()).map(|r| m[r][c].clone()).collect()).collect();
    (pivots, coords)
}

/// Dense product `a · b`.
pub fn matmul<T: Field>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = T::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc + row[k].clone() * b[k][j].clone();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Solve `a x = b` for a consistent system with full column rank.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&cols) || piv.len() < cols {
        return None;
    }
    Some((0..cols).map(|i| aug[i][cols].clone()).collect())
}
