//! Double-precision counterpart of the exact feasibility check and
//! realization, for data that is only approximately structured.
//!
//! Rank decisions use complete-pivoting Gauss–Jordan elimination: a pivot
//! counts iff its magnitude exceeds `rank_rel` times the largest pivot seen
//! so far. Condition checks compare a max-norm residual against
//! `residual_rel · (1 + scale)`. Results carry residuals rather than exact
//! guarantees.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact_field::Mat;

#[derive(Clone, Debug, PartialEq)]
pub struct FloatMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FloatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(
                "FloatMat",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(FloatMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FloatMat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FloatMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::dim("FloatMat", "ragged rows"));
            }
            data.extend_from_slice(r);
        }
        FloatMat::new(rows.len(), cols, data)
    }

    /// Nearest-double image of an exact matrix.
    pub fn from_exact(m: &Mat) -> Self {
        FloatMat {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .entries()
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
        }
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

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }

    /// Largest absolute entry; 0 for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn matmul(&self, rhs: &FloatMat) -> Result<FloatMat> {
        if self.cols != rhs.rows {
            return Err(Error::dim(
                "matmul",
                format!("{:?} x {:?}", self.shape(), rhs.shape()),
            ));
        }
        let mut out = FloatMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[l * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &FloatMat, op: &'static str, f: impl Fn(f64, f64) -> f64) -> Result<FloatMat> {
        if self.shape() != rhs.shape() {
            return Err(Error::dim(
                op,
                format!("{:?} vs {:?}", self.shape(), rhs.shape()),
            ));
        }
        Ok(FloatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn add(&self, rhs: &FloatMat) -> Result<FloatMat> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &FloatMat) -> Result<FloatMat> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn complement(&self) -> Result<FloatMat> {
        if self.rows != self.cols {
            return Err(Error::dim("complement", format!("{:?} is not square", self.shape())));
        }
        FloatMat::identity(self.rows).sub(self)
    }

    pub fn hstack(&self, rhs: &FloatMat) -> Result<FloatMat> {
        if self.rows != rhs.rows {
            return Err(Error::dim("hstack", format!("{:?} beside {:?}", self.shape(), rhs.shape())));
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&rhs.data[i * rhs.cols..(i + 1) * rhs.cols]);
        }
        Ok(FloatMat { rows: self.rows, cols, data })
    }

    pub fn vstack(&self, rhs: &FloatMat) -> Result<FloatMat> {
        if self.cols != rhs.cols {
            return Err(Error::dim("vstack", format!("{:?} above {:?}", self.shape(), rhs.shape())));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(FloatMat { rows: self.rows + rhs.rows, cols: self.cols, data })
    }

    fn slice_cols(&self, start: usize, end: usize) -> FloatMat {
        let mut data = Vec::with_capacity(self.rows * (end - start));
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols + start..i * self.cols + end]);
        }
        FloatMat { rows: self.rows, cols: end - start, data }
    }

    fn slice_rows(&self, start: usize, end: usize) -> FloatMat {
        FloatMat {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Relative pivot threshold for rank decisions.
    pub rank_rel: f64,
    /// Relative residual threshold for condition checks.
    pub residual_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_rel: 1e-10,
            residual_rel: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, residual_rel: f64) -> Result<Self> {
        if !(rank_rel >= 0.0 && residual_rel >= 0.0) || !rank_rel.is_finite() || !residual_rel.is_finite() {
            return Err(Error::Invalid(format!(
                "tolerances must be finite and nonnegative (got {rank_rel}, {residual_rel})"
            )));
        }
        Ok(Tolerance { rank_rel, residual_rel })
    }
}

struct Elimination {
    rank: usize,
    g1: FloatMat,
}

fn eliminate(m: &FloatMat, tol: &Tolerance) -> Elimination {
    let (rows, cols) = m.shape();
    let mut r = m.clone();
    let mut e = FloatMat::identity(rows);
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut largest = 0.0_f64;
    let mut rank = 0;

    for step in 0..rows.min(cols) {
        let mut best = (step, step, 0.0_f64);
        for i in step..rows {
            for j in step..cols {
                let v = r.get(i, j).abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        let (pi, pj, mag) = best;
        largest = largest.max(mag);
        if mag == 0.0 || mag <= tol.rank_rel * largest {
            break;
        }
        r.swap_rows(step, pi);
        e.swap_rows(step, pi);
        r.swap_cols(step, pj);
        perm.swap(step, pj);

        let inv = 1.0 / r.get(step, step);
        for j in 0..cols {
            *r.at(step, j) *= inv;
        }
        for j in 0..rows {
            *e.at(step, j) *= inv;
        }
        for i in 0..rows {
            if i == step {
                continue;
            }
            let factor = r.get(i, step);
            if factor == 0.0 {
                continue;
            }
            for j in 0..cols {
                let delta = factor * r.get(step, j);
                *r.at(i, j) -= delta;
            }
            for j in 0..rows {
                let delta = factor * e.get(step, j);
                *e.at(i, j) -= delta;
            }
        }
        rank += 1;
    }

    let mut g1 = FloatMat::zeros(cols, rows);
    for (i, &col) in perm.iter().enumerate().take(rank) {
        for j in 0..rows {
            *g1.at(col, j) = e.get(i, j);
        }
    }
    Elimination { rank, g1 }
}

pub fn approx_rank(m: &FloatMat, tol: &Tolerance) -> usize {
    eliminate(m, tol).rank
}

/// {1}-inverse up to the tolerance: exact on the retained pivots, with the
/// part of `m` judged negligible treated as zero.
pub fn approx_g1_inverse(m: &FloatMat, tol: &Tolerance) -> FloatMat {
    eliminate(m, tol).g1
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxProblem {
    v: FloatMat,
    w: FloatMat,
    p: usize,
    q: usize,
    k: usize,
    m: usize,
}

impl ApproxProblem {
    pub fn new(v: FloatMat, w: FloatMat, p: usize, q: usize, k: usize, m: usize) -> Result<Self> {
        if p == 0 || q == 0 || k == 0 || m == 0 {
            return Err(Error::Invalid(format!(
                "p, q, k, m must be positive (got p={p}, q={q}, k={k}, m={m})"
            )));
        }
        if v.cols() != p * k || w.rows() != q * m || v.rows() != w.cols() {
            return Err(Error::dim(
                "ApproxProblem",
                format!(
                    "V is {:?}, W is {:?} with p={p}, q={q}, k={k}, m={m}",
                    v.shape(),
                    w.shape()
                ),
            ));
        }
        Ok(ApproxProblem { v, w, p, q, k, m })
    }

    pub fn from_exact(prob: &crate::realization::RealizationProblem) -> Self {
        ApproxProblem {
            v: FloatMat::from_exact(prob.v()),
            w: FloatMat::from_exact(prob.w()),
            p: prob.p(),
            q: prob.q(),
            k: prob.k(),
            m: prob.m(),
        }
    }

    pub fn v(&self) -> &FloatMat {
        &self.v
    }

    pub fn w(&self) -> &FloatMat {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.v.rows()
    }

    fn truncations(&self) -> [FloatMat; 4] {
        let (p, q, k, m) = (self.p, self.q, self.k, self.m);
        [
            self.v.slice_cols(0, p * (k - 1)),
            self.v.slice_cols(p, p * k),
            self.w.slice_rows(0, q * (m - 1)),
            self.w.slice_rows(q, q * m),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxFeasibilityReport {
    pub cond_kernel: bool,
    pub cond_image: bool,
    pub cond_interlock: bool,
    pub feasible: bool,
    /// `‖V^U·V_L⁽¹⁾·V_L − V^U‖_max`
    pub kernel_residual: f64,
    /// `‖W_L·W_L⁽¹⁾·W^U − W^U‖_max`
    pub image_residual: f64,
    /// `‖W_L·V^U − W^U·V_L‖_max`
    pub interlock_residual: f64,
    pub kernel_threshold: f64,
    pub image_threshold: f64,
    pub interlock_threshold: f64,
}

impl ApproxFeasibilityReport {
    pub fn failed_conditions(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.cond_kernel {
            out.push("Ker V_L ⊆ Ker V^U");
        }
        if !self.cond_image {
            out.push("Im W_L ⊇ Im W^U");
        }
        if !self.cond_interlock {
            out.push("W_L V^U = W^U V_L");
        }
        out
    }
}

pub fn approx_check_feasibility(prob: &ApproxProblem, tol: &Tolerance) -> ApproxFeasibilityReport {
    let [vl, vu, wl, wu] = prob.truncations();
    let shapes = "truncation shapes are consistent";
    let vl1 = approx_g1_inverse(&vl, tol);
    let wl1 = approx_g1_inverse(&wl, tol);

    let kernel = vu.matmul(&vl1).and_then(|x| x.matmul(&vl)).and_then(|x| x.sub(&vu)).expect(shapes);
    let image = wl.matmul(&wl1).and_then(|x| x.matmul(&wu)).and_then(|x| x.sub(&wu)).expect(shapes);
    let lhs = wl.matmul(&vu).expect(shapes);
    let interlock = lhs.sub(&wu.matmul(&vl).expect(shapes)).expect(shapes);

    let kernel_threshold = tol.residual_rel * (1.0 + vu.max_abs());
    let image_threshold = tol.residual_rel * (1.0 + wu.max_abs());
    let interlock_threshold = tol.residual_rel * (1.0 + lhs.max_abs());
    let (kernel_residual, image_residual, interlock_residual) =
        (kernel.max_abs(), image.max_abs(), interlock.max_abs());
    let cond_kernel = kernel_residual <= kernel_threshold;
    let cond_image = image_residual <= image_threshold;
    let cond_interlock = interlock_residual <= interlock_threshold;

    ApproxFeasibilityReport {
        cond_kernel,
        cond_image,
        cond_interlock,
        feasible: cond_kernel && cond_image && cond_interlock,
        kernel_residual,
        image_residual,
        interlock_residual,
        kernel_threshold,
        image_threshold,
        interlock_threshold,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxRealization {
    pub a: FloatMat,
    pub b: FloatMat,
    pub c: FloatMat,
    /// Particular solution (`A` at `Z = 0`).
    pub x0: FloatMat,
    pub left_ann: FloatMat,
    pub right_ann: FloatMat,
    /// `‖R_k(A, B) − V‖_max / (1 + ‖V‖_max)`
    pub reachability_residual: f64,
    /// `‖O_m(A, C) − W‖_max / (1 + ‖W‖_max)`
    pub observability_residual: f64,
}

/// Bound on the relative reconstruction residuals for well-conditioned data.
pub const RECONSTRUCTION_BOUND: f64 = 1e-6;

impl ApproxRealization {
    pub fn within_bound(&self) -> bool {
        self.reachability_residual <= RECONSTRUCTION_BOUND
            && self.observability_residual <= RECONSTRUCTION_BOUND
    }
}

pub fn approx_reachability_matrix(a: &FloatMat, b: &FloatMat, k: usize) -> Result<FloatMat> {
    if a.rows() != a.cols() || a.rows() != b.rows() || k == 0 {
        return Err(Error::dim(
            "approx_reachability_matrix",
            format!("A is {:?}, B is {:?}, k = {k}", a.shape(), b.shape()),
        ));
    }
    let mut out = b.clone();
    let mut block = b.clone();
    for _ in 1..k {
        block = a.matmul(&block)?;
        out = out.hstack(&block)?;
    }
    Ok(out)
}

pub fn approx_observability_matrix(a: &FloatMat, c: &FloatMat, m: usize) -> Result<FloatMat> {
    if a.rows() != a.cols() || a.cols() != c.cols() || m == 0 {
        return Err(Error::dim(
            "approx_observability_matrix",
            format!("A is {:?}, C is {:?}, m = {m}", a.shape(), c.shape()),
        ));
    }
    let mut out = c.clone();
    let mut block = c.clone();
    for _ in 1..m {
        block = block.matmul(a)?;
        out = out.vstack(&block)?;
    }
    Ok(out)
}

pub fn approx_realize(prob: &ApproxProblem, z: &FloatMat, tol: &Tolerance) -> Result<ApproxRealization> {
    let n = prob.n();
    if z.shape() != (n, n) {
        return Err(Error::dim("approx_realize", format!("Z is {:?}, expected {:?}", z.shape(), (n, n))));
    }
    let report = approx_check_feasibility(prob, tol);
    if !report.feasible {
        return Err(Error::ApproxInfeasible(Box::new(report)));
    }
    let [vl, vu, wl, wu] = prob.truncations();
    let vl1 = approx_g1_inverse(&vl, tol);
    let wl1 = approx_g1_inverse(&wl, tol);
    let left_ann = wl1.matmul(&wl)?.complement()?;
    let right_ann = vl.matmul(&vl1)?.complement()?;
    let x0 = wl1.matmul(&wu)?.add(&left_ann.matmul(&vu)?.matmul(&vl1)?)?;
    let a = x0.add(&left_ann.matmul(z)?.matmul(&right_ann)?)?;
    let b = prob.v.slice_cols(0, prob.p);
    let c = prob.w.slice_rows(0, prob.q);

    let reach = approx_reachability_matrix(&a, &b, prob.k)?.sub(&prob.v)?;
    let obs = approx_observability_matrix(&a, &c, prob.m)?.sub(&prob.w)?;
    Ok(ApproxRealization {
        reachability_residual: reach.max_abs() / (1.0 + prob.v.max_abs()),
        observability_residual: obs.max_abs() / (1.0 + prob.w.max_abs()),
        a,
        b,
        c,
        x0,
        left_ann,
        right_ann,
    })
}
