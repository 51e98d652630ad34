//! Reachability/observability matrix pairs over ℚ.
//!
//! Given `V` (`n × pk`) and `W` (`qm × n`), decide whether some state-space
//! triple `(A, B, C)` has `V = [B, AB, …, A^{k−1}B]` and
//! `W = [C; CA; …; CA^{m−1}]`, and if so describe every such triple. The
//! machinery underneath is exact: rational scalars, {1}-inverses and the
//! common-solution theory for `F·X = C`, `X·H = D`.
//!
//! ```
//! use reachobs::{check_feasibility, realize, Mat, Triple};
//!
//! let a = Mat::from_i64_rows(&[[0, 1], [0, 0]]);
//! let b = Mat::from_i64_rows(&[[1], [0]]);
//! let c = Mat::from_i64_rows(&[[1, 0]]);
//! let prob = Triple::new(a.clone(), b, c).unwrap().problem(2, 2).unwrap();
//! assert!(check_feasibility(&prob).feasible);
//! let t = realize(&prob, &Mat::zeros(2, 2)).unwrap();
//! assert_eq!(t.a, a);
//! ```

pub mod approx;
pub mod cli;
pub mod error;
pub mod exact_field;
pub mod io;
pub mod pair_solver;
pub mod realization;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
pub use exact_field::{g1_inverse, is_g1_inverse, kernel_basis, rank, rref, Mat, RrefResult, Scalar};
pub use pair_solver::{PairProblem, SolutionFamily};
pub use realization::{
    check_feasibility, observability_matrix, reachability_matrix, realize, realize_family,
    realize_observability_only, realize_reachability_only, FeasibilityReport, RealizationProblem,
    Triple, Truncations,
};
