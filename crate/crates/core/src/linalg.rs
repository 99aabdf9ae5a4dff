//! Exact Gaussian elimination over any field-like number type.

use num_traits::{Num, Zero};
use std::ops::Neg;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T>(rows: &mut Vec<Vec<T>>, ncols: usize) -> Vec<usize>
where
    T: Num + Clone + Neg<Output = T>,
{
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = T::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..ncols {
                let delta = factor.clone() * rows[r][j].clone();
                rows[i][j] = rows[i][j].clone() - delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : rows · v = 0}`, one vector per free column.
///
/// Each basis vector has a 1 in its free column and zeros in the other free
/// columns, so the basis is canonical for a given column order.
pub fn nullspace<T>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>>
where
    T: Num + Clone + Neg<Output = T>,
{
    nullspace_with_free(rows, ncols).1
}

/// Like [`nullspace`], also returning the free column of each vector.
pub fn nullspace_with_free<T>(rows: &[Vec<T>], ncols: usize) -> (Vec<usize>, Vec<Vec<T>>)
where
    T: Num + Clone + Neg<Output = T>,
{
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let vecs = free
        .iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect();
    (free, vecs)
}

pub fn rank<T>(rows: &[Vec<T>], ncols: usize) -> usize
where
    T: Num + Clone + Neg<Output = T>,
{
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}
