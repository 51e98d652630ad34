//! Reachability/observability matrix pairs and the state-space triples that
//! produce them.
//!
//! `V = [V_0 … V_{k−1}]` (blocks `n×p`) and `W = [W_0; …; W_{m−1}]` (blocks
//! `q×n`) come from a common `(A, B, C)` iff
//!
//! * kernel: `Ker V_L ⊆ Ker V^U`,
//! * image: `Im W_L ⊇ Im W^U`,
//! * interlock: `W_L·V^U = W^U·V_L`,
//!
//! where `V_L`/`V^U` drop the last/first block of `V` and likewise for `W`.
//! Every such triple has `B = V_0`, `C = W_0`, and `A` a common solution of
//! `X·V_L = V^U`, `W_L·X = W^U`.

use crate::error::{Error, Result};
use crate::exact_field::{g1_inverse, kernel_basis, rank, resolve_g1, Mat};
use crate::pair_solver::{solution_family, PairProblem, SolutionFamily};

/// `[B, AB, …, A^{k−1}B]`
pub fn reachability_matrix(a: &Mat, b: &Mat, k: usize) -> Result<Mat> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::dim(
            "reachability_matrix",
            format!("A is {:?}, B is {:?}", a.shape(), b.shape()),
        ));
    }
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let mut out = b.clone();
    let mut block = b.clone();
    for _ in 1..k {
        block = a.matmul(&block)?;
        out = out.hstack(&block)?;
    }
    Ok(out)
}

/// `[C; CA; …; CA^{m−1}]`
pub fn observability_matrix(a: &Mat, c: &Mat, m: usize) -> Result<Mat> {
    if !a.is_square() || a.cols() != c.cols() {
        return Err(Error::dim(
            "observability_matrix",
            format!("A is {:?}, C is {:?}", a.shape(), c.shape()),
        ));
    }
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    let mut out = c.clone();
    let mut block = c.clone();
    for _ in 1..m {
        block = block.matmul(a)?;
        out = out.vstack(&block)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationProblem {
    v: Mat,
    w: Mat,
    p: usize,
    q: usize,
    k: usize,
    m: usize,
}

impl RealizationProblem {
    pub fn new(v: Mat, w: Mat, p: usize, q: usize, k: usize, m: usize) -> Result<Self> {
        if p == 0 || q == 0 || k == 0 || m == 0 {
            return Err(Error::Invalid(format!(
                "p, q, k, m must be positive (got p={p}, q={q}, k={k}, m={m})"
            )));
        }
        if v.cols() != p * k {
            return Err(Error::dim(
                "RealizationProblem",
                format!("V has {} columns, expected p·k = {}", v.cols(), p * k),
            ));
        }
        if w.rows() != q * m {
            return Err(Error::dim(
                "RealizationProblem",
                format!("W has {} rows, expected q·m = {}", w.rows(), q * m),
            ));
        }
        if v.rows() != w.cols() {
            return Err(Error::dim(
                "RealizationProblem",
                format!("V has {} rows but W has {} columns", v.rows(), w.cols()),
            ));
        }
        Ok(RealizationProblem { v, w, p, q, k, m })
    }

    /// Problem with only the reachability side constrained (`m = 1`, `W = 0`).
    pub fn reachability_only(v: Mat, p: usize, k: usize) -> Result<Self> {
        let n = v.rows();
        RealizationProblem::new(v, Mat::zeros(1, n), p, 1, k, 1)
    }

    /// Problem with only the observability side constrained (`k = 1`, `V = 0`).
    pub fn observability_only(w: Mat, q: usize, m: usize) -> Result<Self> {
        let n = w.cols();
        RealizationProblem::new(Mat::zeros(n, 1), w, 1, q, 1, m)
    }

    pub fn v(&self) -> &Mat {
        &self.v
    }

    pub fn w(&self) -> &Mat {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.v.rows()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Block `V_i`, `n×p`.
    pub fn v_block(&self, i: usize) -> Result<Mat> {
        if i >= self.k {
            return Err(Error::Invalid(format!("V block {i} of {}", self.k)));
        }
        self.v.slice_cols(i * self.p..(i + 1) * self.p)
    }

    /// Block `W_i`, `q×n`.
    pub fn w_block(&self, i: usize) -> Result<Mat> {
        if i >= self.m {
            return Err(Error::Invalid(format!("W block {i} of {}", self.m)));
        }
        self.w.slice_rows(i * self.q..(i + 1) * self.q)
    }

    pub fn truncations(&self) -> Truncations {
        let (p, k, q, m) = (self.p, self.k, self.q, self.m);
        let slice = "slice bounds derive from validated dimensions";
        Truncations {
            v_lower: self.v.slice_cols(0..p * (k - 1)).expect(slice),
            v_upper: self.v.slice_cols(p..p * k).expect(slice),
            w_lower: self.w.slice_rows(0..q * (m - 1)).expect(slice),
            w_upper: self.w.slice_rows(q..q * m).expect(slice),
        }
    }
}

/// `V_L`, `V^U`, `W_L`, `W^U`. Empty when `k = 1` or `m = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncations {
    pub v_lower: Mat,
    pub v_upper: Mat,
    pub w_lower: Mat,
    pub w_upper: Mat,
}

impl Truncations {
    /// `X·V_L = V^U` and `W_L·X = W^U` as a [`PairProblem`].
    pub fn shift_pair(&self) -> PairProblem {
        PairProblem::new(
            self.w_lower.clone(),
            self.w_upper.clone(),
            self.v_lower.clone(),
            self.v_upper.clone(),
        )
        .expect("truncation shapes always form a valid pair")
    }
}

/// Residual witnesses for the conditions that failed; `None` where the
/// condition holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    /// `V^U·V_L⁽¹⁾·V_L − V^U`
    pub kernel: Option<Mat>,
    /// `W_L·W_L⁽¹⁾·W^U − W^U`
    pub image: Option<Mat>,
    /// `W_L·V^U − W^U·V_L`
    pub interlock: Option<Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub cond_kernel: bool,
    pub cond_image: bool,
    pub cond_interlock: bool,
    pub feasible: bool,
    pub witnesses: Witnesses,
}

impl FeasibilityReport {
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

fn nonzero(m: Mat) -> Option<Mat> {
    (!m.is_zero()).then_some(m)
}

/// Kernel condition through a {1}-inverse: `V^U·V_L⁽¹⁾·V_L = V^U`.
pub fn kernel_condition_by_ginverse(t: &Truncations) -> bool {
    kernel_residual(t, &g1_inverse(&t.v_lower)).is_zero()
}

/// Kernel condition through a null-space basis: `V^U·ker(V_L) = 0`.
pub fn kernel_condition_by_basis(t: &Truncations) -> bool {
    t.v_upper
        .matmul(&kernel_basis(&t.v_lower))
        .expect("V^U and V_L share their column count")
        .is_zero()
}

/// Image condition through a {1}-inverse: `W_L·W_L⁽¹⁾·W^U = W^U`.
pub fn image_condition_by_ginverse(t: &Truncations) -> bool {
    image_residual(t, &g1_inverse(&t.w_lower)).is_zero()
}

/// Image condition through ranks: `rank [W_L | W^U] = rank W_L`.
pub fn image_condition_by_rank(t: &Truncations) -> bool {
    let joined = t
        .w_lower
        .hstack(&t.w_upper)
        .expect("W_L and W^U share their row count");
    rank(&joined) == rank(&t.w_lower)
}

fn kernel_residual(t: &Truncations, vl1: &Mat) -> Mat {
    let prod = t.v_upper.matmul(vl1).and_then(|x| x.matmul(&t.v_lower));
    prod.and_then(|x| x.sub(&t.v_upper))
        .expect("truncation shapes are consistent")
}

fn image_residual(t: &Truncations, wl1: &Mat) -> Mat {
    let prod = t.w_lower.matmul(wl1).and_then(|x| x.matmul(&t.w_upper));
    prod.and_then(|x| x.sub(&t.w_upper))
        .expect("truncation shapes are consistent")
}

fn interlock_residual(t: &Truncations) -> Mat {
    let lhs = t.w_lower.matmul(&t.v_upper);
    let rhs = t.w_upper.matmul(&t.v_lower);
    lhs.and_then(|l| l.sub(&rhs?))
        .expect("truncation shapes are consistent")
}

/// Evaluates all three conditions, without stopping at the first failure.
/// The kernel and image conditions are each decided two ways, which must
/// agree.
pub fn check_feasibility(prob: &RealizationProblem) -> FeasibilityReport {
    let t = prob.truncations();
    let kernel = kernel_residual(&t, &g1_inverse(&t.v_lower));
    let image = image_residual(&t, &g1_inverse(&t.w_lower));
    let interlock = interlock_residual(&t);

    let cond_kernel = kernel.is_zero();
    let cond_image = image.is_zero();
    let cond_interlock = interlock.is_zero();
    assert_eq!(
        cond_kernel,
        kernel_condition_by_basis(&t),
        "kernel condition tests disagree"
    );
    assert_eq!(
        cond_image,
        image_condition_by_rank(&t),
        "image condition tests disagree"
    );

    FeasibilityReport {
        cond_kernel,
        cond_image,
        cond_interlock,
        feasible: cond_kernel && cond_image && cond_interlock,
        witnesses: Witnesses {
            kernel: nonzero(kernel),
            image: nonzero(image),
            interlock: nonzero(interlock),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub a: Mat,
    pub b: Mat,
    pub c: Mat,
}

impl Triple {
    pub fn new(a: Mat, b: Mat, c: Mat) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || b.rows() != n || c.cols() != n {
            return Err(Error::dim(
                "Triple",
                format!(
                    "A is {:?}, B is {:?}, C is {:?}",
                    a.shape(),
                    b.shape(),
                    c.shape()
                ),
            ));
        }
        Ok(Triple { a, b, c })
    }

    /// `(R_k(A, B), O_m(A, C))` packaged as a problem.
    pub fn problem(&self, k: usize, m: usize) -> Result<RealizationProblem> {
        RealizationProblem::new(
            reachability_matrix(&self.a, &self.b, k)?,
            observability_matrix(&self.a, &self.c, m)?,
            self.b.cols(),
            self.c.rows(),
            k,
            m,
        )
    }

    /// True iff this triple reproduces both `V` and `W` of `prob` exactly.
    pub fn reproduces(&self, prob: &RealizationProblem) -> Result<bool> {
        Ok(reachability_matrix(&self.a, &self.b, prob.k)? == prob.v
            && observability_matrix(&self.a, &self.c, prob.m)? == prob.w)
    }
}

fn check_z(n: usize, z: &Mat) -> Result<()> {
    if z.shape() != (n, n) {
        return Err(Error::dim(
            "realize",
            format!("Z is {:?}, expected {:?}", z.shape(), (n, n)),
        ));
    }
    Ok(())
}

fn require_feasible(prob: &RealizationProblem) -> Result<()> {
    let report = check_feasibility(prob);
    if report.feasible {
        Ok(())
    } else {
        Err(Error::Infeasible(Box::new(report)))
    }
}

/// The affine set of all `A` with `R_k(A, V_0) = V` and `O_m(A, W_0) = W`:
/// `x0 + (I − W_L⁽¹⁾W_L)·Z·(I − V_L·V_L⁽¹⁾)`.
pub fn realize_family(prob: &RealizationProblem) -> Result<SolutionFamily> {
    realize_family_with(prob, None, None)
}

/// As [`realize_family`] with caller-supplied {1}-inverses of `V_L` and
/// `W_L` (validated).
pub fn realize_family_with(
    prob: &RealizationProblem,
    vl1: Option<&Mat>,
    wl1: Option<&Mat>,
) -> Result<SolutionFamily> {
    require_feasible(prob)?;
    let pair = prob.truncations().shift_pair();
    solution_family(&pair, wl1, vl1)
}

/// `A = W_L⁽¹⁾W^U + (I − W_L⁽¹⁾W_L)·V^U·V_L⁽¹⁾ + (I − W_L⁽¹⁾W_L)·Z·(I − V_L·V_L⁽¹⁾)`,
/// `B = V_0`, `C = W_0`.
pub fn realize(prob: &RealizationProblem, z: &Mat) -> Result<Triple> {
    realize_with(prob, z, None, None)
}

pub fn realize_with(
    prob: &RealizationProblem,
    z: &Mat,
    vl1: Option<&Mat>,
    wl1: Option<&Mat>,
) -> Result<Triple> {
    check_z(prob.n(), z)?;
    let fam = realize_family_with(prob, vl1, wl1)?;
    Ok(Triple {
        a: fam.instantiate(z)?,
        b: prob.v_block(0)?,
        c: prob.w_block(0)?,
    })
}

/// `(A, B)` with `R_k(A, B) = V`: `A = V^U·V_L⁽¹⁾ + Z·(I − V_L·V_L⁽¹⁾)`,
/// `B = V_0`. Requires only the kernel condition.
pub fn realize_reachability_only(v: &Mat, p: usize, k: usize, z: &Mat) -> Result<(Mat, Mat)> {
    let prob = RealizationProblem::reachability_only(v.clone(), p, k)?;
    check_z(prob.n(), z)?;
    require_feasible(&prob)?;
    let t = prob.truncations();
    let vl1 = g1_inverse(&t.v_lower);
    let right_ann = t.v_lower.matmul(&vl1)?.complement()?;
    let a = t
        .v_upper
        .matmul(&vl1)?
        .add(&z.matmul(&right_ann)?)?;
    Ok((a, prob.v_block(0)?))
}

/// `(A, C)` with `O_m(A, C) = W`: `A = W_L⁽¹⁾W^U + (I − W_L⁽¹⁾W_L)·Z`,
/// `C = W_0`. Requires only the image condition.
pub fn realize_observability_only(w: &Mat, q: usize, m: usize, z: &Mat) -> Result<(Mat, Mat)> {
    let prob = RealizationProblem::observability_only(w.clone(), q, m)?;
    check_z(prob.n(), z)?;
    require_feasible(&prob)?;
    let t = prob.truncations();
    let wl1 = g1_inverse(&t.w_lower);
    let left_ann = wl1.matmul(&t.w_lower)?.complement()?;
    let a = wl1
        .matmul(&t.w_upper)?
        .add(&left_ann.matmul(z)?)?;
    Ok((a, prob.w_block(0)?))
}

/// {1}-inverses of `V_L` and `W_L`: supplied ones are validated, missing
/// ones are the canonical choice.
pub fn validate_g_inverses(
    prob: &RealizationProblem,
    vl1: Option<&Mat>,
    wl1: Option<&Mat>,
) -> Result<(Mat, Mat)> {
    let t = prob.truncations();
    Ok((
        resolve_g1(&t.v_lower, vl1, "V_L")?,
        resolve_g1(&t.w_lower, wl1, "W_L")?,
    ))
}
