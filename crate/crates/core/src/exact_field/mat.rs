use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};

use super::scalar::{format_scalar, from_int, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ. Either dimension may be zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(
                "from_vec",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds a matrix from integer rows. Panics on ragged input; meant for
    /// literals and tests.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged integer rows");
            data.extend(r.iter().map(|&v| from_int(v)));
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn matmul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::dim(
                "matmul",
                format!("{:?} x {:?}", self.shape(), rhs.shape()),
            ));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self.data[i * self.cols + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[l * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        rhs: &Mat,
        op: &'static str,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Mat> {
        if self.shape() != rhs.shape() {
            return Err(Error::dim(
                op,
                format!("{:?} vs {:?}", self.shape(), rhs.shape()),
            ));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// `I - self` for a square matrix.
    pub fn complement(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::dim("complement", format!("{:?} is not square", self.shape())));
        }
        Mat::identity(self.rows).sub(self)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn hstack(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows {
            return Err(Error::dim(
                "hstack",
                format!("{:?} beside {:?}", self.shape(), rhs.shape()),
            ));
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(Mat {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn vstack(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.cols {
            return Err(Error::dim(
                "vstack",
                format!("{:?} above {:?}", self.shape(), rhs.shape()),
            ));
        }
        let mut data = Vec::with_capacity(self.data.len() + rhs.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&rhs.data);
        Ok(Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn slice_cols(&self, range: Range<usize>) -> Result<Mat> {
        if range.start > range.end || range.end > self.cols {
            return Err(Error::dim(
                "slice_cols",
                format!("columns {range:?} of {:?}", self.shape()),
            ));
        }
        Ok(Mat::from_fn(self.rows, range.len(), |i, j| {
            self.get(i, range.start + j).clone()
        }))
    }

    pub fn slice_rows(&self, range: Range<usize>) -> Result<Mat> {
        if range.start > range.end || range.end > self.rows {
            return Err(Error::dim(
                "slice_rows",
                format!("rows {range:?} of {:?}", self.shape()),
            ));
        }
        Ok(Mat {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Scalar] {
        &mut self.data
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}", self.rows, self.cols)?;
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&format_scalar(v))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_is_zero() {
        let a = Mat::zeros(2, 0);
        let b = Mat::zeros(0, 3);
        let c = a.matmul(&b).unwrap();
        assert_eq!(c, Mat::zeros(2, 3));
        assert_eq!(c.entries().len(), 6);
    }

    #[test]
    fn stacking_with_empty() {
        let a = Mat::from_i64_rows(&[[1], [2]]);
        assert_eq!(a.hstack(&Mat::zeros(2, 0)).unwrap(), a);
        assert_eq!(Mat::zeros(2, 0).hstack(&a).unwrap(), a);
        assert_eq!(a.vstack(&Mat::zeros(0, 1)).unwrap(), a);
        assert!(a.hstack(&Mat::zeros(3, 0)).is_err());
        assert!(a.vstack(&Mat::zeros(0, 2)).is_err());
    }

    #[test]
    fn slices() {
        let m = Mat::from_i64_rows(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(m.slice_cols(1..3).unwrap(), Mat::from_i64_rows(&[[2, 3], [5, 6]]));
        assert_eq!(m.slice_cols(2..2).unwrap().shape(), (2, 0));
        assert_eq!(m.slice_rows(1..1).unwrap().shape(), (0, 3));
        assert_eq!(m.slice_rows(1..2).unwrap(), Mat::from_i64_rows(&[[4, 5, 6]]));
        assert!(m.slice_cols(2..4).is_err());
    }

    #[test]
    fn transpose_involution_and_shape() {
        let m = Mat::from_i64_rows(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(m.transpose().shape(), (3, 2));
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(Mat::zeros(0, 4).transpose().shape(), (4, 0));
    }

    #[test]
    fn dimension_errors() {
        let a = Mat::identity(2);
        let b = Mat::zeros(3, 3);
        assert!(a.matmul(&b).is_err());
        assert!(a.add(&b).is_err());
        assert!(a.sub(&b).is_err());
        assert!(Mat::zeros(2, 3).complement().is_err());
        assert!(Mat::from_vec(2, 2, vec![from_int(1)]).is_err());
    }

    #[test]
    fn complement_of_projector() {
        let p = Mat::from_i64_rows(&[[1, 0], [0, 0]]);
        assert_eq!(p.complement().unwrap(), Mat::from_i64_rows(&[[0, 0], [0, 1]]));
    }
}
