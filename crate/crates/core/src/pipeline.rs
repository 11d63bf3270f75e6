//! End-to-end decision for nonnegative instances: short-circuits, LP
//! assembly, exact solve, certificate and witness.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::Rational;
use crate::certificate::{self, Certificate};
use crate::error::Result;
use crate::instance::{Instance, Mode};
use crate::lift::LiftedInstance;
use crate::lp_build::{self, Assembly, LpDims};
use crate::poly::NonnegPoly;
use crate::simplex::{solve_feasibility, LpOutcome};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Feasible,
    Infeasible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
        }
    }
}

/// Why no LP was solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShortCircuit {
    /// `b = 0`; `x = 0` solves it.
    ZeroRhs,
    /// Every column of `A` is zero and `b != 0`.
    AllColumnsZero,
    /// `b* < 0`: every nonzero `x` overshoots `sum_k b_k`.
    NegativeDegreeBound,
    /// `{x >= 0 : Ax = b}` is empty over the reals.
    EmptyRelaxation,
}

impl ShortCircuit {
    pub fn as_str(self) -> &'static str {
        match self {
            ShortCircuit::ZeroRhs => "zero_rhs",
            ShortCircuit::AllColumnsZero => "all_columns_zero",
            ShortCircuit::NegativeDegreeBound => "negative_degree_bound",
            ShortCircuit::EmptyRelaxation => "empty_relaxation",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub short_circuit: Option<ShortCircuit>,
    pub assembly: Assembly,
    /// Full-assembly dimensions of the instance the LP was built for.
    pub lp_dims: Option<LpDims>,
    /// `(variables, rows)` of the system actually solved.
    pub solved_size: Option<(usize, usize)>,
    pub certificate: Option<Certificate>,
    /// Solution of the caller's instance.
    pub witness: Option<Vec<u64>>,
    /// Infeasibility evidence: classical Farkas multipliers of the solved LP
    /// (or of the real relaxation for [`ShortCircuit::EmptyRelaxation`]).
    pub multipliers: Option<Vec<Rational>>,
    /// Zero columns removed before assembly.
    pub dropped_columns: Vec<usize>,
    /// Degree bound of the instance the LP was built for.
    pub degree_bound: Option<BigInt>,
    /// Present when the decision went through the lifted instance.
    pub lift: Option<LiftedInstance>,
}

impl Decision {
    pub(crate) fn short(verdict: Verdict, why: ShortCircuit, assembly: Assembly) -> Self {
        Decision {
            verdict,
            short_circuit: Some(why),
            assembly,
            lp_dims: None,
            solved_size: None,
            certificate: None,
            witness: None,
            multipliers: None,
            dropped_columns: Vec::new(),
            degree_bound: None,
            lift: None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }
}

/// Decides `Ax = b, x in N^n` for a nonnegative instance.
///
/// Zero columns never affect `Ax` and are dropped before assembly; the
/// returned certificate and witness are padded back to all `n` columns.
pub fn check(inst: &Instance, assembly: Assembly) -> Result<Decision> {
    if inst.mode() != Mode::NonnegOnly {
        return Err(Error::NegativeEntries);
    }
    let n = inst.n();
    if inst.rhs_is_zero() {
        let mut d = Decision::short(Verdict::Feasible, ShortCircuit::ZeroRhs, assembly);
        d.certificate = Some(Certificate::empty(inst));
        d.witness = Some(vec![0; n]);
        return Ok(d);
    }
    let dropped = inst.zero_columns();
    let kept: Vec<usize> = (0..n).filter(|j| !dropped.contains(j)).collect();
    if kept.is_empty() {
        let mut d = Decision::short(Verdict::Infeasible, ShortCircuit::AllColumnsZero, assembly);
        d.dropped_columns = dropped;
        return Ok(d);
    }
    let reduced = if dropped.is_empty() { inst.clone() } else { inst.select_columns(&kept)? };
    let bstar = lp_build::degree_bound(&reduced)?;
    if bstar.is_negative() {
        let mut d = Decision::short(Verdict::Infeasible, ShortCircuit::NegativeDegreeBound, assembly);
        d.dropped_columns = dropped;
        d.degree_bound = Some(bstar);
        return Ok(d);
    }

    let lp = lp_build::assemble(&reduced, assembly)?;
    let sys = lp.to_system();
    let outcome = solve_feasibility(&sys);
    let mut d = Decision {
        verdict: Verdict::Infeasible,
        short_circuit: None,
        assembly,
        lp_dims: lp_build::dims(&reduced)?,
        solved_size: Some((lp.num_vars(), lp.num_rows())),
        certificate: None,
        witness: None,
        multipliers: None,
        dropped_columns: dropped,
        degree_bound: Some(bstar),
        lift: None,
    };
    match outcome {
        LpOutcome::Feasible { point, .. } => {
            let cert = certificate::from_lp_solution(&lp, &point);
            let verdict = certificate::verify(&reduced, &cert);
            assert!(verdict.is_valid(), "LP vertex failed verification: {verdict:?}");
            let x = certificate::extract_witness(&reduced, &cert)?;
            d.verdict = Verdict::Feasible;
            d.certificate = Some(pad_certificate(inst, cert, &kept));
            d.witness = Some(pad(&x, &kept, n));
        }
        LpOutcome::Infeasible { multipliers } => {
            assert!(sys.certifies_infeasible(&multipliers), "infeasibility multipliers failed");
            d.multipliers = Some(multipliers);
        }
        LpOutcome::Unbounded { .. } => unreachable!("feasibility solve has no objective"),
    }
    Ok(d)
}

fn pad(x: &[u64], kept: &[usize], n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for (v, &j) in x.iter().zip(kept) {
        out[j] = *v;
    }
    out
}

fn pad_certificate(inst: &Instance, cert: Certificate, kept: &[usize]) -> Certificate {
    if kept.len() == inst.n() {
        return cert;
    }
    let mut q = vec![NonnegPoly::new(); inst.n()];
    for (p, &j) in cert.q.into_iter().zip(kept) {
        q[j] = p;
    }
    Certificate { q, degree_bound_used: cert.degree_bound_used, instance_hash: inst.fingerprint() }
}
