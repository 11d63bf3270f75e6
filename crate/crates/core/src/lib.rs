//! Exact decision procedure for nonnegative integer solutions of `Ax = b`.
//!
//! For nonnegative data, `Ax = b` has a solution `x in N^n` exactly when
//!
//! ```text
//! z^b - 1 = sum_j Q_j(z) (z^{A_j} - 1)
//! ```
//!
//! for polynomials `Q_j` with nonnegative coefficients and degree at most
//! `b* = sum_k b_k - min_j colsum_j(A)`. Matching coefficients turns this
//! into a linear program with `{0, ±1}` entries, solved here in exact
//! rational arithmetic. Feasible runs yield a checkable certificate and an
//! integer witness; infeasible runs yield classical Farkas multipliers for
//! the LP. General integer data is reduced to the nonnegative case by a
//! lifting with one extra row and column.

pub mod arith;
pub mod certificate;
pub mod cli;
pub mod counting;
pub mod error;
pub mod instance;
pub mod lift;
pub mod lp_build;
pub mod monomial;
pub mod pipeline;
pub mod poly;
pub mod simplex;

pub use arith::{s, Rational};
pub use certificate::{
    eval_check, extract_witness, from_lp_solution, from_witness, verify, Certificate, EvalOutcome,
    EvaluationPoint, InvalidReason, Verification,
};
pub use counting::{box_bounds, count_series, enumerate, reachable, CountResult};
pub use error::{Error, Result};
pub use instance::{Instance, Mode};
pub use lift::{build_lifted, check_general, compute_alpha, recession_cone_trivial, rho_star, LiftedInstance};
pub use lp_build::{assemble, degree_bound, dims, pruned_dims, Assembly, LpDims, LpProblem};
pub use monomial::MultiIndex;
pub use pipeline::{check, Decision, ShortCircuit, Verdict};
pub use poly::{poly_mul_binomial, NonnegPoly, Poly};
pub use simplex::{maximize, solve_feasibility, EqualitySystem, LpOutcome};
