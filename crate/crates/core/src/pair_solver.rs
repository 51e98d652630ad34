//! Common solutions of the matrix equation pair `F·X = C`, `X·H = D`.
//!
//! With `F` of shape `s×t`, `C` of shape `s×p`, `H` of shape `p×q` and `D`
//! of shape `t×q`, the unknown `X` is `t×p`. A common solution exists iff
//! each equation is solvable on its own and `C·H = F·D`. All common
//! solutions are then `X0 + (I − F⁽¹⁾F)·Z·(I − H·H⁽¹⁾)` for arbitrary `Z`
//! of shape `t×p`.

use crate::error::{Error, Result};
use crate::exact_field::{g1_inverse, resolve_g1, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairProblem {
    f: Mat,
    c: Mat,
    h: Mat,
    d: Mat,
}

impl PairProblem {
    pub fn new(f: Mat, c: Mat, h: Mat, d: Mat) -> Result<Self> {
        let (s, t) = f.shape();
        let (p, q) = h.shape();
        if c.shape() != (s, p) {
            return Err(Error::dim(
                "PairProblem",
                format!("C is {:?}, expected {:?} from F and H", c.shape(), (s, p)),
            ));
        }
        if d.shape() != (t, q) {
            return Err(Error::dim(
                "PairProblem",
                format!("D is {:?}, expected {:?} from F and H", d.shape(), (t, q)),
            ));
        }
        Ok(PairProblem { f, c, h, d })
    }

    pub fn f(&self) -> &Mat {
        &self.f
    }

    pub fn c(&self) -> &Mat {
        &self.c
    }

    pub fn h(&self) -> &Mat {
        &self.h
    }

    pub fn d(&self) -> &Mat {
        &self.d
    }

    /// Shape of the unknown `X`.
    pub fn unknown_shape(&self) -> (usize, usize) {
        (self.f.cols(), self.h.rows())
    }
}

/// Residuals of the three solvability conditions; a condition holds iff
/// its residual is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    /// `F·F⁽¹⁾·C − C`
    pub left_residual: Mat,
    /// `D·H⁽¹⁾·H − D`
    pub right_residual: Mat,
    /// `C·H − F·D`
    pub compat_residual: Mat,
}

impl InfeasibilityCertificate {
    pub fn left_consistent(&self) -> bool {
        self.left_residual.is_zero()
    }

    pub fn right_consistent(&self) -> bool {
        self.right_residual.is_zero()
    }

    pub fn compatible(&self) -> bool {
        self.compat_residual.is_zero()
    }

    pub fn feasible(&self) -> bool {
        self.left_consistent() && self.right_consistent() && self.compatible()
    }

    pub fn failed_conditions(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.left_consistent() {
            out.push("FX = C is inconsistent");
        }
        if !self.right_consistent() {
            out.push("XH = D is inconsistent");
        }
        if !self.compatible() {
            out.push("CH = FD is violated");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    pub x0: Mat,
    /// `I − F⁽¹⁾·F`, of shape `t×t`.
    pub left_ann: Mat,
    /// `I − H·H⁽¹⁾`, of shape `p×p`.
    pub right_ann: Mat,
}

impl SolutionFamily {
    pub fn instantiate(&self, z: &Mat) -> Result<Mat> {
        if z.shape() != self.x0.shape() {
            return Err(Error::dim(
                "instantiate",
                format!("Z is {:?}, expected {:?}", z.shape(), self.x0.shape()),
            ));
        }
        self.x0
            .add(&self.left_ann.matmul(z)?.matmul(&self.right_ann)?)
    }

    /// Membership test: `x` lies in the family iff the choice `Z = x − x0`
    /// reproduces it.
    pub fn contains(&self, x: &Mat) -> Result<bool> {
        if x.shape() != self.x0.shape() {
            return Err(Error::dim(
                "contains",
                format!("X is {:?}, expected {:?}", x.shape(), self.x0.shape()),
            ));
        }
        let z = x.sub(&self.x0)?;
        Ok(&self.instantiate(&z)? == x)
    }

    /// True iff the family is a single matrix.
    pub fn is_unique(&self) -> bool {
        self.left_ann.is_zero() || self.right_ann.is_zero()
    }
}

pub fn left_consistent(f: &Mat, c: &Mat) -> Result<bool> {
    Ok(left_residual(f, c, &g1_inverse(f))?.is_zero())
}

pub fn right_consistent(h: &Mat, d: &Mat) -> Result<bool> {
    Ok(right_residual(h, d, &g1_inverse(h))?.is_zero())
}

fn left_residual(f: &Mat, c: &Mat, f1: &Mat) -> Result<Mat> {
    if f.rows() != c.rows() {
        return Err(Error::dim(
            "left_consistent",
            format!("F is {:?}, C is {:?}", f.shape(), c.shape()),
        ));
    }
    f.matmul(f1)?.matmul(c)?.sub(c)
}

fn right_residual(h: &Mat, d: &Mat, h1: &Mat) -> Result<Mat> {
    if h.cols() != d.cols() {
        return Err(Error::dim(
            "right_consistent",
            format!("H is {:?}, D is {:?}", h.shape(), d.shape()),
        ));
    }
    d.matmul(h1)?.matmul(h)?.sub(d)
}

fn compat_residual(prob: &PairProblem) -> Mat {
    let ch = prob.c.matmul(&prob.h).expect("shapes checked at construction");
    let fd = prob.f.matmul(&prob.d).expect("shapes checked at construction");
    ch.sub(&fd).expect("both sides are s×q")
}

pub fn compatible(prob: &PairProblem) -> bool {
    compat_residual(prob).is_zero()
}

pub fn certificate(prob: &PairProblem) -> InfeasibilityCertificate {
    certificate_with(prob, &g1_inverse(&prob.f), &g1_inverse(&prob.h))
}

fn certificate_with(prob: &PairProblem, f1: &Mat, h1: &Mat) -> InfeasibilityCertificate {
    InfeasibilityCertificate {
        left_residual: left_residual(&prob.f, &prob.c, f1).expect("shapes checked"),
        right_residual: right_residual(&prob.h, &prob.d, h1).expect("shapes checked"),
        compat_residual: compat_residual(prob),
    }
}

pub fn has_common_solution(prob: &PairProblem) -> bool {
    certificate(prob).feasible()
}

fn checked_inverses(
    prob: &PairProblem,
    f1: Option<&Mat>,
    h1: Option<&Mat>,
) -> Result<(Mat, Mat)> {
    let f1 = resolve_g1(&prob.f, f1, "F")?;
    let h1 = resolve_g1(&prob.h, h1, "H")?;
    let cert = certificate_with(prob, &f1, &h1);
    if !cert.feasible() {
        return Err(Error::NoCommonSolution(Box::new(cert)));
    }
    Ok((f1, h1))
}

/// `X0 = F⁽¹⁾C + (I − F⁽¹⁾F)·D·H⁽¹⁾`. Canonical {1}-inverses are used for
/// any argument left as `None`.
pub fn particular_solution(
    prob: &PairProblem,
    f1: Option<&Mat>,
    h1: Option<&Mat>,
) -> Result<Mat> {
    let (f1, h1) = checked_inverses(prob, f1, h1)?;
    x0_primary(prob, &f1, &h1)
}

fn x0_primary(prob: &PairProblem, f1: &Mat, h1: &Mat) -> Result<Mat> {
    let left_ann = f1.matmul(&prob.f)?.complement()?;
    f1.matmul(&prob.c)?
        .add(&left_ann.matmul(&prob.d)?.matmul(h1)?)
}

/// `X0 = D·H⁽¹⁾ + F⁽¹⁾·C·(I − H·H⁽¹⁾)`; equal to [`particular_solution`]
/// for the same pair of {1}-inverses.
pub fn particular_solution_alt(
    prob: &PairProblem,
    f1: Option<&Mat>,
    h1: Option<&Mat>,
) -> Result<Mat> {
    let (f1, h1) = checked_inverses(prob, f1, h1)?;
    let right_ann = prob.h.matmul(&h1)?.complement()?;
    prob.d
        .matmul(&h1)?
        .add(&f1.matmul(&prob.c)?.matmul(&right_ann)?)
}

pub fn solution_family(
    prob: &PairProblem,
    f1: Option<&Mat>,
    h1: Option<&Mat>,
) -> Result<SolutionFamily> {
    let (f1, h1) = checked_inverses(prob, f1, h1)?;
    Ok(SolutionFamily {
        x0: x0_primary(prob, &f1, &h1)?,
        left_ann: f1.matmul(&prob.f)?.complement()?,
        right_ann: prob.h.matmul(&h1)?.complement()?,
    })
}
