//! Serializable reports printed by the command-line tool.

use serde::Serialize;

use crate::approx::{ApproxFeasibilityReport, ApproxRealization};
use crate::io::{MatrixDocument, SystemDocument};
use crate::pair_solver::{InfeasibilityCertificate, SolutionFamily};
use crate::realization::FeasibilityReport;

#[derive(Clone, Debug, Serialize)]
pub struct WitnessDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interlock: Option<MatrixDocument>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualDoc {
    pub kernel: f64,
    pub image: f64,
    pub interlock: f64,
    pub kernel_threshold: f64,
    pub image_threshold: f64,
    pub interlock_threshold: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityDoc {
    pub cond_kernel: bool,
    pub cond_image: bool,
    pub cond_interlock: bool,
    pub feasible: bool,
    pub failed_conditions: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualDoc>,
}

impl From<&FeasibilityReport> for FeasibilityDoc {
    fn from(r: &FeasibilityReport) -> Self {
        let doc = |m: &Option<crate::exact_field::Mat>| m.as_ref().map(MatrixDocument::from_exact);
        FeasibilityDoc {
            cond_kernel: r.cond_kernel,
            cond_image: r.cond_image,
            cond_interlock: r.cond_interlock,
            feasible: r.feasible,
            failed_conditions: r.failed_conditions(),
            witnesses: Some(WitnessDoc {
                kernel: doc(&r.witnesses.kernel),
                image: doc(&r.witnesses.image),
                interlock: doc(&r.witnesses.interlock),
            }),
            residuals: None,
        }
    }
}

impl From<&ApproxFeasibilityReport> for FeasibilityDoc {
    fn from(r: &ApproxFeasibilityReport) -> Self {
        FeasibilityDoc {
            cond_kernel: r.cond_kernel,
            cond_image: r.cond_image,
            cond_interlock: r.cond_interlock,
            feasible: r.feasible,
            failed_conditions: r.failed_conditions(),
            witnesses: None,
            residuals: Some(ResidualDoc {
                kernel: r.kernel_residual,
                image: r.image_residual,
                interlock: r.interlock_residual,
                kernel_threshold: r.kernel_threshold,
                image_threshold: r.image_threshold,
                interlock_threshold: r.interlock_threshold,
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyDoc {
    pub x0: MatrixDocument,
    pub left_ann: MatrixDocument,
    pub right_ann: MatrixDocument,
}

impl From<&SolutionFamily> for FamilyDoc {
    fn from(f: &SolutionFamily) -> Self {
        FamilyDoc {
            x0: MatrixDocument::from_exact(&f.x0),
            left_ann: MatrixDocument::from_exact(&f.left_ann),
            right_ann: MatrixDocument::from_exact(&f.right_ann),
        }
    }
}

impl From<&ApproxRealization> for FamilyDoc {
    fn from(r: &ApproxRealization) -> Self {
        FamilyDoc {
            x0: MatrixDocument::from_float(&r.x0),
            left_ann: MatrixDocument::from_float(&r.left_ann),
            right_ann: MatrixDocument::from_float(&r.right_ann),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationDoc {
    pub reachability_matches: bool,
    pub observability_matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reachability_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observability_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizeReport {
    pub input_sha256: String,
    pub mode: &'static str,
    pub feasibility: FeasibilityDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<SystemDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_used: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairConditionsDoc {
    pub left_consistent: bool,
    pub right_consistent: bool,
    pub compatible: bool,
    pub has_common_solution: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairResidualDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compat: Option<MatrixDocument>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerificationDoc {
    pub left_equation_holds: bool,
    pub right_equation_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub input_sha256: String,
    pub conditions: PairConditionsDoc,
    pub failed_conditions: Vec<&'static str>,
    pub residuals: PairResidualDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_used: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<PairVerificationDoc>,
}

impl PairReport {
    pub(crate) fn conditions_from(cert: &InfeasibilityCertificate) -> (PairConditionsDoc, PairResidualDoc) {
        let keep = |ok: bool, m| (!ok).then(|| MatrixDocument::from_exact(m));
        (
            PairConditionsDoc {
                left_consistent: cert.left_consistent(),
                right_consistent: cert.right_consistent(),
                compatible: cert.compatible(),
                has_common_solution: cert.feasible(),
            },
            PairResidualDoc {
                left: keep(cert.left_consistent(), &cert.left_residual),
                right: keep(cert.right_consistent(), &cert.right_residual),
                compat: keep(cert.compatible(), &cert.compat_residual),
            },
        )
    }
}
