//! Ground truth for `Ax = b`: exhaustive enumeration, reachability, and the
//! lattice-point count `f(b)` read off the generating function
//! `prod_j 1 / (1 - z^{A_j})` as a formal power series truncated to `[0, b]`.

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::instance::{Instance, Mode};
use crate::simplex::{solve_feasibility, EqualitySystem, LpOutcome};

/// Upper limit on the number of cells of a DP table or enumeration box.
pub const MAX_BOX: u128 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: BigUint,
    /// Up to `cap` solutions in scan order.
    pub witnesses: Vec<Vec<u64>>,
}

/// Per-variable upper bounds valid for every `x >= 0` with `Ax = b`.
///
/// For nonnegative data the bound is `min_k floor(b_k / A_kj)` over rows with
/// `A_kj > 0`. Otherwise a `lambda` with `A' lambda >= 1` is found by LP and
/// `x_j <= floor(lambda'b / (A'lambda)_j)`.
pub fn box_bounds(inst: &Instance) -> Result<Vec<u64>> {
    let n = inst.n();
    if inst.mode() == Mode::NonnegOnly {
        return (0..n)
            .map(|j| {
                (0..inst.m())
                    .filter(|&k| inst.entry(k, j).is_positive())
                    .map(|k| inst.rhs()[k].clone() / inst.entry(k, j))
                    .min()
                    .ok_or(Error::NoncompactColumn { column: j })
                    .and_then(|v| {
                        v.to_u64()
                            .ok_or_else(|| Error::TooLarge(format!("bound {v} on x_{j}")))
                    })
            })
            .collect();
    }
    let lambda = positive_dual(inst)?;
    let lb: Rational = lambda
        .iter()
        .zip(inst.rhs())
        .map(|(l, b)| l * &Rational::from(b))
        .sum();
    if lb.is_negative() {
        // no x >= 0 has lambda'Ax < 0 since A'lambda >= 1
        return Ok(vec![0; n]);
    }
    (0..n)
        .map(|j| {
            let alj: Rational = (0..inst.m())
                .map(|k| &lambda[k] * &Rational::from(inst.entry(k, j)))
                .sum();
            let v = (&lb / &alj).floor();
            v.to_u64()
                .ok_or_else(|| Error::TooLarge(format!("bound {v} on x_{j}")))
        })
        .collect()
}

/// A `lambda` with `A' lambda >= 1`, or `NoncompactInstance` if none exists.
pub fn positive_dual(inst: &Instance) -> Result<Vec<Rational>> {
    let m = inst.m();
    let n = inst.n();
    // unknowns: lambda+ (m), lambda- (m), surplus (n);  A'(l+ - l-) - s = 1
    let mut sys = EqualitySystem::new(vec![Rational::one(); n]);
    for k in 0..m {
        let col: Vec<(usize, Rational)> = (0..n).map(|j| (j, Rational::from(inst.entry(k, j)))).collect();
        sys.add_column(col.clone());
        sys.add_column(col.into_iter().map(|(j, v)| (j, -v)).collect());
    }
    for j in 0..n {
        sys.add_column(vec![(j, Rational::from_integer(-1))]);
    }
    match solve_feasibility(&sys) {
        LpOutcome::Feasible { point, .. } => {
            Ok((0..m).map(|k| &point[2 * k] - &point[2 * k + 1]).collect())
        }
        _ => Err(Error::NoncompactInstance),
    }
}

fn box_volume(bounds: &[u64]) -> Option<u128> {
    bounds
        .iter()
        .try_fold(1u128, |acc, &u| acc.checked_mul(u as u128 + 1))
}

/// Scans the box from [`box_bounds`] and counts every solution, keeping up
/// to `cap` of them.
pub fn enumerate(inst: &Instance, cap: usize) -> Result<CountResult> {
    let bounds = box_bounds(inst)?;
    match box_volume(&bounds) {
        Some(v) if v <= MAX_BOX => {}
        _ => return Err(Error::TooLarge(format!("enumeration box {bounds:?}"))),
    }
    let (a, b) = inst.to_i64()?;
    let (m, n) = (inst.m(), inst.n());
    let mut x = vec![0u64; n];
    // running Ax, updated incrementally by the odometer
    let mut ax = vec![0i128; m];
    let target: Vec<i128> = b.iter().map(|&v| v as i128).collect();
    let mut count = BigUint::zero();
    let mut witnesses = Vec::new();
    loop {
        if ax == target {
            count += 1u32;
            if witnesses.len() < cap {
                witnesses.push(x.clone());
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                return Ok(CountResult { count, witnesses });
            }
            if x[j] < bounds[j] {
                x[j] += 1;
                for k in 0..m {
                    ax[k] += a[k][j] as i128;
                }
                break;
            }
            for k in 0..m {
                ax[k] -= a[k][j] as i128 * x[j] as i128;
            }
            x[j] = 0;
            j += 1;
        }
    }
}

/// Mixed-radix layout of the box `[0, b]`.
struct BoxIndex {
    strides: Vec<usize>,
    upper: Vec<usize>,
    len: usize,
}

impl BoxIndex {
    fn new(b: &[u32]) -> Result<Self> {
        let mut strides = Vec::with_capacity(b.len());
        let mut len: usize = 1;
        for &e in b {
            strides.push(len);
            len = len
                .checked_mul(e as usize + 1)
                .filter(|&l| l as u128 <= MAX_BOX)
                .ok_or_else(|| Error::TooLarge(format!("box [0, {b:?}]")))?;
        }
        Ok(BoxIndex { strides, upper: b.iter().map(|&e| e as usize).collect(), len })
    }

    /// Linear offset of a step `a`, or `None` if it does not fit the box.
    fn offset(&self, a: &[u32]) -> Option<usize> {
        a.iter()
            .zip(&self.upper)
            .zip(&self.strides)
            .try_fold(0usize, |acc, ((&ak, &uk), &sk)| {
                ((ak as usize) <= uk).then_some(acc + ak as usize * sk)
            })
    }

    /// Whether `cell - a` stays inside the box.
    fn can_subtract(&self, cell: usize, a: &[u32]) -> bool {
        a.iter().enumerate().all(|(k, &ak)| (cell / self.strides[k]) % (self.upper[k] + 1) >= ak as usize)
    }
}

fn nonneg_columns(inst: &Instance) -> Result<(Vec<Vec<u32>>, Vec<u32>)> {
    if inst.mode() != Mode::NonnegOnly {
        return Err(Error::NegativeEntries);
    }
    let cols = (0..inst.n())
        .map(|j| inst.column_exponents(j).map(|c| c.exponents().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let b = inst.rhs_exponents()?.exponents().to_vec();
    Ok((cols, b))
}

/// Exact `f(b)` by multiplying the geometric series of each column into a
/// table over `[0, b]`: `g_j(gamma) = g_{j-1}(gamma) + g_j(gamma - A_j)`.
pub fn count_series(inst: &Instance) -> Result<BigUint> {
    let (cols, b) = nonneg_columns(inst)?;
    if cols.iter().any(|c| c.iter().all(|&e| e == 0)) {
        return Err(Error::NoncompactInstance);
    }
    let idx = BoxIndex::new(&b)?;
    let mut g = vec![BigUint::zero(); idx.len];
    g[0] = BigUint::one();
    for col in &cols {
        let Some(step) = idx.offset(col) else { continue };
        // ascending cells: g[cell - step] is already updated for this column
        for cell in step..idx.len {
            if idx.can_subtract(cell, col) && !g[cell - step].is_zero() {
                let add = g[cell - step].clone();
                g[cell] += add;
            }
        }
    }
    Ok(g.pop().expect("box is nonempty"))
}

/// Whether `b` is reachable from `0` by steps `A_j` inside `[0, b]`.
pub fn reachable(inst: &Instance) -> Result<bool> {
    let (cols, b) = nonneg_columns(inst)?;
    let idx = BoxIndex::new(&b)?;
    let mut seen = vec![false; idx.len];
    seen[0] = true;
    let steps: Vec<(usize, &Vec<u32>)> = cols
        .iter()
        .filter(|c| c.iter().any(|&e| e > 0))
        .filter_map(|c| idx.offset(c).map(|s| (s, c)))
        .collect();
    for cell in 1..idx.len {
        seen[cell] = steps
            .iter()
            .any(|(s, c)| *s <= cell && idx.can_subtract(cell, c) && seen[cell - s]);
    }
    Ok(seen[idx.len - 1])
}
