//! Reduction of general integer data to the nonnegative case.
//!
//! With `alpha_k = max(0, -min_j A_jk)` and an integer `beta >= rho*(alpha)`,
//! `Ax = b` has a solution in `N^n` iff
//!
//! ```text
//! [ A + e alpha' | e ] [x]   [ b + beta e ]
//! [    alpha'    | 1 ] [u] = [    beta    ]
//! ```
//!
//! has a solution in `N^{n+1}`, where `rho*(alpha)` is the maximum of
//! `alpha'x` over the real polytope `{x >= 0 : Ax = b}`. The lifted matrix
//! is nonnegative, so the certificate LP applies to it directly; its extra
//! row plays the role of the additional dual variable.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::instance::{integer_json, Instance, Mode};
use crate::lp_build::{degree_bound, Assembly};
use crate::pipeline::{self, Decision, ShortCircuit, Verdict};
use crate::simplex::{maximize, EqualitySystem, LpOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedInstance {
    /// `B x' = (b_hat, beta)` with `B` of size `(m+1) x (n+1)`.
    pub lifted: Instance,
    pub alpha: Vec<BigInt>,
    pub beta: BigInt,
    pub rho_star: Rational,
    pub original: Instance,
}

impl LiftedInstance {
    pub fn b_matrix(&self) -> &[Vec<BigInt>] {
        self.lifted.rows()
    }

    pub fn rhs(&self) -> &[BigInt] {
        self.lifted.rhs()
    }

    /// Maps a lifted solution `(x, u)` back to `x`.
    pub fn project_witness(&self, lifted_x: &[u64]) -> Vec<u64> {
        lifted_x[..self.original.n()].to_vec()
    }

    /// `(m+1) beta + sum_j b_j - min(m+1, min_k ((m+1) alpha_k + colsum_k(A)))`.
    pub fn degree_bound_closed_form(&self) -> BigInt {
        let m1 = BigInt::from(self.original.m() + 1);
        let inner = (0..self.original.n())
            .map(|k| &m1 * &self.alpha[k] + self.original.column_sum(k))
            .min()
            .expect("n >= 1");
        &m1 * &self.beta + self.original.rhs_sum() - m1.clone().min(inner)
    }

    pub fn to_json(&self) -> Value {
        let ints = |v: &[BigInt]| v.iter().map(integer_json).collect::<Vec<_>>();
        json!({
            "B": self.b_matrix().iter().map(|row| ints(row)).collect::<Vec<_>>(),
            "rhs": ints(self.rhs()),
            "alpha": ints(&self.alpha),
            "beta": integer_json(&self.beta),
            "rho_star": self.rho_star.to_fraction_string(),
            "original": self.original.to_json(),
            "lifted_instance": self.lifted.to_json(),
        })
    }
}

fn system(inst: &Instance) -> EqualitySystem {
    system_with_rhs(inst, inst.rhs().iter().map(Rational::from).collect())
}

fn system_with_rhs(inst: &Instance, rhs: Vec<Rational>) -> EqualitySystem {
    let mut sys = EqualitySystem::new(rhs);
    for j in 0..inst.n() {
        sys.add_column(
            (0..inst.m())
                .map(|k| (k, Rational::from(inst.entry(k, j))))
                .collect(),
        );
    }
    sys
}

/// True iff `{x >= 0 : Ax = 0} = {0}`, decided by maximizing `sum x_j` over
/// that cone cut at `x_j <= 1`.
pub fn recession_cone_trivial(inst: &Instance) -> bool {
    let n = inst.n();
    let sys = system_with_rhs(inst, vec![Rational::zero(); inst.m()]);
    let ones = vec![Rational::one(); n];
    let caps = vec![Some(Rational::one()); n];
    match maximize(&ones, &sys, &caps) {
        LpOutcome::Feasible { objective, .. } => objective.is_zero(),
        _ => unreachable!("x = 0 is feasible and the region is bounded"),
    }
}

/// Smallest shift making every column nonnegative: `alpha_k = max(0, -min_j A_jk)`.
pub fn compute_alpha(inst: &Instance) -> Vec<BigInt> {
    (0..inst.n())
        .map(|k| {
            let min = inst.column(k).into_iter().min().expect("m >= 1");
            if min.is_negative() {
                -min
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// `max { alpha'x : Ax = b, x >= 0 }` over the reals.
pub fn rho_star(inst: &Instance, alpha: &[BigInt]) -> Result<Rational> {
    let sys = system(inst);
    let obj: Vec<Rational> = alpha.iter().map(Rational::from).collect();
    match maximize(&obj, &sys, &[]) {
        LpOutcome::Feasible { objective, .. } => Ok(objective),
        LpOutcome::Infeasible { multipliers } => Err(Error::EmptyRelaxation { multipliers }),
        LpOutcome::Unbounded { .. } => Err(Error::NoncompactInstance),
    }
}

/// Builds the lifted nonnegative instance. Requires a trivial recession cone.
pub fn build_lifted(inst: &Instance) -> Result<LiftedInstance> {
    if !inst.zero_columns().is_empty() || !recession_cone_trivial(inst) {
        return Err(Error::NoncompactInstance);
    }
    let alpha = compute_alpha(inst);
    let rho = rho_star(inst, &alpha)?;
    let neg_b = inst
        .rhs()
        .iter()
        .map(|v| if v.is_negative() { -v } else { BigInt::zero() })
        .max()
        .expect("m >= 1");
    let beta = rho.ceil().max(neg_b).max(BigInt::zero());

    let (m, n) = (inst.m(), inst.n());
    let mut rows: Vec<Vec<BigInt>> = (0..m)
        .map(|k| {
            let mut row: Vec<BigInt> = (0..n).map(|j| inst.entry(k, j) + &alpha[j]).collect();
            row.push(BigInt::one());
            row
        })
        .collect();
    let mut last = alpha.clone();
    last.push(BigInt::one());
    rows.push(last);
    let mut rhs: Vec<BigInt> = inst.rhs().iter().map(|v| v + &beta).collect();
    rhs.push(beta.clone());
    let lifted = Instance::new(rows, rhs, Mode::NonnegOnly)?;
    Ok(LiftedInstance { lifted, alpha, beta, rho_star: rho, original: inst.clone() })
}

/// Decides a general instance through the lifted nonnegative one.
///
/// The reported certificate is the lifted one, in `m + 1` variables; the
/// witness is mapped back to the original `x` and re-checked.
pub fn check_general(inst: &Instance, assembly: Assembly) -> Result<Decision> {
    if !inst.zero_columns().is_empty() || !recession_cone_trivial(inst) {
        return Err(Error::NoncompactInstance);
    }
    let lifted = match build_lifted(inst) {
        Ok(l) => l,
        Err(Error::EmptyRelaxation { multipliers }) => {
            let mut d = Decision::short(Verdict::Infeasible, ShortCircuit::EmptyRelaxation, assembly);
            d.multipliers = Some(multipliers);
            return Ok(d);
        }
        Err(e) => return Err(e),
    };
    debug_assert_eq!(degree_bound(&lifted.lifted)?, lifted.degree_bound_closed_form());
    let mut d = pipeline::check(&lifted.lifted, assembly)?;
    if let Some(xu) = d.witness.take() {
        let x = lifted.project_witness(&xu);
        assert!(inst.is_solution(&x), "lifted witness does not solve the original system");
        d.witness = Some(x);
    }
    d.lift = Some(lifted);
    Ok(d)
}
