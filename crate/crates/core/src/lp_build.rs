//! Assembly of the certificate linear program.
//!
//! Unknowns are the coefficients `Q[j][alpha]` of the weight polynomials in
//! `z^b - 1 = sum_j Q_j(z) (z^{A_j} - 1)`; each row matches the coefficient
//! of one monomial `gamma` on both sides:
//!
//! ```text
//! sum_j Q[j][gamma - A_j] - sum_j Q[j][gamma] = [gamma = b] - [gamma = 0]
//! ```
//!
//! Read as a flow problem, `Q[j][alpha]` is flow on the edge
//! `alpha -> alpha + A_j`, with a unit source at `0` and a unit sink at `b`.
//!
//! **Full** assembly indexes variables by every `alpha` with
//! `|alpha| <= b*` and rows by every `gamma` with `|gamma| <= b* + max_k
//! colsum_k`, reproducing the stated LP dimensions exactly.
//!
//! **Pruned** assembly keeps only variables with `alpha + A_j <= b` and rows
//! with `gamma <= b` (componentwise). It is sound because a pruned solution
//! padded with zeros solves the full system (pruned variables never touch a
//! row outside the box). It is complete because the telescoping certificate
//! built from any witness `x` is supported on the monotone lattice path
//! `0 -> A_1 -> ... -> b`, which stays inside `[0, b]`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{s, s_big, s_usize, Rational};
use crate::error::{Error, Result};
use crate::instance::{Instance, Mode};
use crate::monomial::{monomials_in_box, monomials_up_to, MultiIndex};
use crate::simplex::EqualitySystem;

/// Upper limit on variables plus rows of an assembled problem.
pub const MAX_LP_SIZE: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Assembly {
    #[default]
    Pruned,
    Full,
}

impl Assembly {
    pub fn as_str(self) -> &'static str {
        match self {
            Assembly::Pruned => "pruned",
            Assembly::Full => "full",
        }
    }
}

/// Variable and row counts of the full assembly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpDims {
    pub num_vars: BigUint,
    pub num_rows: BigUint,
    pub degree_bound_used: BigInt,
}

/// `sum_k b_k - min_j colsum_j`, evaluated literally (zero columns included).
pub fn degree_bound_formula(inst: &Instance) -> BigInt {
    let min_col = (0..inst.n())
        .map(|j| inst.column_sum(j))
        .min()
        .expect("n >= 1");
    inst.rhs_sum() - min_col
}

/// Degree bound `b*` on the weight polynomials. May be negative, in which
/// case no nonzero `x` can solve `Ax = b`.
pub fn degree_bound(inst: &Instance) -> Result<BigInt> {
    if inst.mode() != Mode::NonnegOnly {
        return Err(Error::NegativeEntries);
    }
    if let Some(column) = inst.zero_columns().first() {
        return Err(Error::NoncompactColumn { column: *column });
    }
    Ok(degree_bound_formula(inst))
}

fn max_column_sum(inst: &Instance) -> BigInt {
    (0..inst.n()).map(|j| inst.column_sum(j)).max().expect("n >= 1")
}

/// Full-assembly dimensions, or `None` when no LP is built (`b = 0` or
/// `b* < 0`).
pub fn dims(inst: &Instance) -> Result<Option<LpDims>> {
    let bstar = degree_bound(inst)?;
    if inst.rhs_is_zero() || bstar.is_negative() {
        return Ok(None);
    }
    let row_degree = &bstar + max_column_sum(inst);
    let m = inst.m() as u64;
    Ok(Some(LpDims {
        num_vars: s_big(bstar.magnitude(), m) * BigUint::from(inst.n()),
        num_rows: s_big(row_degree.magnitude(), m),
        degree_bound_used: bstar,
    }))
}

/// Pruned-assembly dimensions without building anything: one row per point
/// of the box `[0, b]` and, for column `j`, one variable per point of
/// `[0, b - A_j]`. `None` in the same cases as [`dims`].
pub fn pruned_dims(inst: &Instance) -> Result<Option<LpDims>> {
    let bstar = degree_bound(inst)?;
    if inst.rhs_is_zero() || bstar.is_negative() {
        return Ok(None);
    }
    let box_size = |top: &mut dyn Iterator<Item = BigInt>| -> BigUint {
        top.map(|t| if t.is_negative() { BigUint::zero() } else { (t + 1u32).magnitude().clone() })
            .product()
    };
    let num_rows = box_size(&mut inst.rhs().iter().cloned());
    let num_vars = (0..inst.n())
        .map(|j| box_size(&mut inst.rhs().iter().zip(inst.column(j)).map(|(b, a)| b - a)))
        .sum();
    Ok(Some(LpDims { num_vars, num_rows, degree_bound_used: bstar }))
}

/// The assembled system. Column `k` is variable `var_labels[k] = (j, alpha)`
/// (0-based `j`); row `i` is monomial `row_labels[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub assembly: Assembly,
    pub degree_bound: BigInt,
    pub columns: Vec<Vec<(usize, i8)>>,
    pub rhs: Vec<i8>,
    pub var_labels: Vec<(usize, MultiIndex)>,
    pub row_labels: Vec<MultiIndex>,
    pub m: usize,
    pub n: usize,
    pub instance_hash: String,
}

impl LpProblem {
    pub fn num_vars(&self) -> usize {
        self.columns.len()
    }

    pub fn num_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn to_system(&self) -> EqualitySystem {
        let mut sys = EqualitySystem::new(self.rhs.iter().map(|&v| Rational::from_integer(v as i64)).collect());
        for col in &self.columns {
            sys.add_column(
                col.iter()
                    .map(|&(r, v)| (r, Rational::from_integer(v as i64)))
                    .collect(),
            );
        }
        sys
    }

    /// Row-wise view: for each row, `(column, coefficient)` pairs.
    pub fn rows(&self) -> Vec<Vec<(usize, i8)>> {
        let mut rows = vec![Vec::new(); self.num_rows()];
        for (k, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                rows[r].push((k, v));
            }
        }
        rows
    }
}

/// Text dump, one row per line: row label, signed terms, right-hand side.
impl fmt::Display for LpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# {} LP: {} vars, {} rows, b* = {}",
            self.assembly.as_str(),
            self.num_vars(),
            self.num_rows(),
            self.degree_bound
        )?;
        for (i, row) in self.rows().iter().enumerate() {
            write!(f, "[{i}] {:?}:", self.row_labels[i])?;
            if row.is_empty() {
                write!(f, " 0")?;
            }
            for &(k, v) in row {
                let (j, alpha) = &self.var_labels[k];
                write!(f, " {}Q{}{:?}", if v > 0 { '+' } else { '-' }, j + 1, alpha)?;
            }
            writeln!(f, " = {}", self.rhs[i])?;
        }
        Ok(())
    }
}

fn to_u32_degree(v: &BigInt) -> Result<u32> {
    v.to_u32()
        .ok_or_else(|| Error::TooLarge(format!("degree {v} exceeds 32 bits")))
}

/// Builds the LP for a nonnegative instance with `b != 0` and `b* >= 0`.
pub fn assemble(inst: &Instance, assembly: Assembly) -> Result<LpProblem> {
    let bstar = degree_bound(inst)?;
    if inst.rhs_is_zero() {
        return Err(Error::InvalidInstance("b = 0 needs no LP: x = 0 is a solution".into()));
    }
    if bstar.is_negative() {
        return Err(Error::InvalidInstance(format!("degree bound b* = {bstar} is negative")));
    }
    let m = inst.m();
    let n = inst.n();
    let b = inst.rhs_exponents()?;
    let cols: Vec<MultiIndex> = (0..n).map(|j| inst.column_exponents(j)).collect::<Result<_>>()?;

    let (row_labels, var_alphas): (Vec<MultiIndex>, Vec<Vec<MultiIndex>>) = match assembly {
        Assembly::Full => {
            let u = to_u32_degree(&bstar)?;
            let d = to_u32_degree(&(&bstar + max_column_sum(inst)))?;
            let vars = s_usize(u as u64, m as u64).and_then(|v| v.checked_mul(n));
            let rows = s_usize(d as u64, m as u64);
            match (vars, rows) {
                (Some(v), Some(r)) if v.saturating_add(r) <= MAX_LP_SIZE => {}
                _ => {
                    return Err(Error::TooLarge(format!(
                        "full assembly needs {} x {} variables and {} rows",
                        n,
                        s(u as u64, m as u64),
                        s(d as u64, m as u64)
                    )))
                }
            }
            let alphas = monomials_up_to(m, u);
            (monomials_up_to(m, d), vec![alphas; n])
        }
        Assembly::Pruned => {
            let volume = b
                .exponents()
                .iter()
                .try_fold(1usize, |acc, &e| acc.checked_mul(e as usize + 1))
                .filter(|v| v.saturating_mul(n + 1) <= MAX_LP_SIZE);
            if volume.is_none() {
                return Err(Error::TooLarge(format!("box [0, {b:?}] is too large")));
            }
            let rows = monomials_in_box(&b);
            let alphas = cols
                .iter()
                .map(|a| b.checked_sub(a).map(|top| monomials_in_box(&top)).unwrap_or_default())
                .collect();
            (rows, alphas)
        }
    };

    let row_index: HashMap<&MultiIndex, usize> =
        row_labels.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut columns = Vec::new();
    let mut var_labels = Vec::new();
    for (j, alphas) in var_alphas.into_iter().enumerate() {
        for alpha in alphas {
            let head = alpha.add(&cols[j]);
            let mut col = Vec::with_capacity(2);
            if let Some(&r) = row_index.get(&alpha) {
                col.push((r, -1i8));
            }
            if let Some(&r) = row_index.get(&head) {
                col.push((r, 1i8));
            }
            col.sort_by_key(|e| e.0);
            columns.push(col);
            var_labels.push((j, alpha));
        }
    }
    let mut rhs = vec![0i8; row_labels.len()];
    rhs[row_index[&MultiIndex::zero(m)]] = -1;
    rhs[row_index[&b]] = 1;

    Ok(LpProblem {
        assembly,
        degree_bound: bstar,
        columns,
        rhs,
        var_labels,
        row_labels,
        m,
        n,
        instance_hash: inst.fingerprint(),
    })
}
