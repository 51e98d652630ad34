//! Gauss–Jordan elimination over ℚ and the quantities derived from it:
//! rank, null-space bases and {1}-inverses.
//!
//! Pivot order is fixed: columns are scanned left to right, and within a
//! column the first nonzero entry at or below the current pivot row is
//! taken. Every output is therefore a deterministic function of the input.

use num_traits::{One, Zero};

use super::mat::Mat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    /// Reduced row echelon form of the input.
    pub rref: Mat,
    /// Strictly increasing pivot column indices.
    pub pivot_cols: Vec<usize>,
    /// Invertible `rows × rows` matrix `E` with `E · input = rref`.
    pub row_transform: Mat,
    pub rank: usize,
}

pub fn rref(m: &Mat) -> RrefResult {
    let (rows, cols) = m.shape();
    let mut r = m.clone();
    let mut e = Mat::identity(rows);
    let mut pivot_cols = Vec::new();
    let mut prow = 0;

    for col in 0..cols {
        if prow == rows {
            break;
        }
        let Some(found) = (prow..rows).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(prow, found);
        e.swap_rows(prow, found);

        let inv = Scalar::one() / r.get(prow, col);
        if !inv.is_one() {
            scale_row(&mut r, prow, &inv);
            scale_row(&mut e, prow, &inv);
        }
        for i in 0..rows {
            if i == prow {
                continue;
            }
            let factor = r.get(i, col).clone();
            if factor.is_zero() {
                continue;
            }
            sub_row_multiple(&mut r, i, prow, &factor);
            sub_row_multiple(&mut e, i, prow, &factor);
        }
        pivot_cols.push(col);
        prow += 1;
    }

    RrefResult {
        rank: pivot_cols.len(),
        rref: r,
        pivot_cols,
        row_transform: e,
    }
}

fn scale_row(m: &mut Mat, row: usize, s: &Scalar) {
    let cols = m.cols();
    for v in &mut m.data_mut()[row * cols..(row + 1) * cols] {
        *v *= s;
    }
}

/// `row[target] -= factor * row[source]`
fn sub_row_multiple(m: &mut Mat, target: usize, source: usize, factor: &Scalar) {
    let cols = m.cols();
    let data = m.data_mut();
    for j in 0..cols {
        let s = &data[source * cols + j];
        if s.is_zero() {
            continue;
        }
        let delta = factor * s;
        data[target * cols + j] -= delta;
    }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).rank
}

/// Columns form a basis of `{x : m·x = 0}`: one column per free variable,
/// in increasing column order, with that free variable set to one.
pub fn kernel_basis(m: &Mat) -> Mat {
    let red = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !red.pivot_cols.contains(c)).collect();
    let mut basis = Mat::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, Scalar::one());
        for (i, &p) in red.pivot_cols.iter().enumerate() {
            let v = red.rref.get(i, f);
            if !v.is_zero() {
                basis.set(p, k, -v);
            }
        }
    }
    basis
}

/// The canonical {1}-inverse of `f`.
///
/// With `E·f = R` in reduced echelon form and `S` the `cols × rows`
/// selector sending pivot row `i` to pivot column `pivot_cols[i]`, the
/// result is `Y = S·E`. It satisfies `f·Y·f = f` and also `Y·f·Y = Y`.
pub fn g1_inverse(f: &Mat) -> Mat {
    let red = rref(f);
    let mut y = Mat::zeros(f.cols(), f.rows());
    for (i, &p) in red.pivot_cols.iter().enumerate() {
        for j in 0..f.rows() {
            y.set(p, j, red.row_transform.get(i, j).clone());
        }
    }
    y
}

pub fn is_g1_inverse(f: &Mat, y: &Mat) -> Result<bool> {
    if y.shape() != (f.cols(), f.rows()) {
        return Err(Error::dim(
            "is_g1_inverse",
            format!(
                "candidate is {:?}, expected {:?}",
                y.shape(),
                (f.cols(), f.rows())
            ),
        ));
    }
    Ok(&f.matmul(y)?.matmul(f)? == f)
}

/// Returns `y` if it is a {1}-inverse of `f`, otherwise the canonical one
/// when `y` is `None`.
pub(crate) fn resolve_g1(f: &Mat, y: Option<&Mat>, what: &'static str) -> Result<Mat> {
    match y {
        None => Ok(g1_inverse(f)),
        Some(y) => {
            if is_g1_inverse(f, y)? {
                Ok(y.clone())
            } else {
                Err(Error::NotG1Inverse { what })
            }
        }
    }
}
