//! Exact two-phase simplex over rationals with Bland's rule.
//!
//! Problems are equality systems `M y = c, y >= 0` given column-wise. The
//! tableau keeps its rows sparse; every arithmetic step is exact, so the
//! returned points and multipliers can be checked by substitution.

use num_traits::{One, Zero};

use crate::arith::Rational;

/// Sparse equality system `M y = c` over nonnegative variables.
#[derive(Clone, Debug, Default)]
pub struct EqualitySystem {
    num_rows: usize,
    columns: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
}

impl EqualitySystem {
    pub fn new(rhs: Vec<Rational>) -> Self {
        EqualitySystem { num_rows: rhs.len(), columns: Vec::new(), rhs }
    }

    /// Builds a system from a dense row-major matrix.
    pub fn from_dense(rows: &[Vec<Rational>], rhs: Vec<Rational>) -> Self {
        assert_eq!(rows.len(), rhs.len());
        let ncols = rows.first().map_or(0, Vec::len);
        let mut sys = EqualitySystem::new(rhs);
        for j in 0..ncols {
            let col = rows
                .iter()
                .enumerate()
                .filter(|(_, row)| !row[j].is_zero())
                .map(|(i, row)| (i, row[j].clone()))
                .collect();
            sys.add_column(col);
        }
        sys
    }

    /// Appends a column given as `(row, value)` pairs; returns its index.
    pub fn add_column(&mut self, mut entries: Vec<(usize, Rational)>) -> usize {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(r, _)| *r);
        assert!(entries.iter().all(|(r, _)| *r < self.num_rows), "row index out of range");
        assert!(entries.windows(2).all(|w| w[0].0 != w[1].0), "duplicate row in column");
        self.columns.push(entries);
        self.columns.len() - 1
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// `M y`.
    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.num_cols());
        let mut out = vec![Rational::zero(); self.num_rows];
        for (col, v) in self.columns.iter().zip(y) {
            if v.is_zero() {
                continue;
            }
            for (r, a) in col {
                out[*r] += &(a * v);
            }
        }
        out
    }

    /// `y >= 0` and `M y = c`, exactly.
    pub fn is_satisfied_by(&self, y: &[Rational]) -> bool {
        y.len() == self.num_cols() && y.iter().all(|v| !v.is_negative()) && self.apply(y) == self.rhs
    }

    /// Checks a classical Farkas certificate of emptiness: `u'M <= 0` on every
    /// column and `u'c > 0`.
    pub fn certifies_infeasible(&self, u: &[Rational]) -> bool {
        if u.len() != self.num_rows {
            return false;
        }
        let cols_ok = self.columns.iter().all(|col| {
            let dot: Rational = col.iter().map(|(r, a)| a * &u[*r]).sum();
            !dot.is_positive()
        });
        let rhs_dot: Rational = self.rhs.iter().zip(u).map(|(c, ui)| c * ui).sum();
        cols_ok && rhs_dot.is_positive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// An optimal vertex (or any feasible vertex for pure feasibility).
    Feasible { point: Vec<Rational>, objective: Rational },
    /// Row multipliers `u` with `u'M <= 0` columnwise and `u'c > 0`.
    Infeasible { multipliers: Vec<Rational> },
    /// A feasible point and a direction `d >= 0`, `M d = 0`, improving the objective.
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }
}

type SparseRow = Vec<(usize, Rational)>;

fn lookup(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `row - f * pivot_row`, dropping cancelled entries.
fn axpy(row: &SparseRow, f: &Rational, pivot_row: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < pivot_row.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let ck = pivot_row.get(k).map_or(usize::MAX, |e| e.0);
        if ci < ck {
            out.push(row[i].clone());
            i += 1;
        } else if ck < ci {
            out.push((ck, -(f * &pivot_row[k].1)));
            k += 1;
        } else {
            let v = &row[i].1 - &(f * &pivot_row[k].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

struct Tableau {
    rows: Vec<SparseRow>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of a minimization objective.
    cost: Vec<Rational>,
    /// Columns at or beyond this index may not enter the basis.
    enter_limit: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = lookup(&self.rows[r], c).expect("pivot on zero entry").clone();
        if !piv.is_one() {
            let inv = piv.recip();
            for (_, v) in self.rows[r].iter_mut() {
                *v *= &inv;
            }
            self.rhs[r] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            if let Some(f) = lookup(&self.rows[i], c).cloned() {
                self.rows[i] = axpy(&self.rows[i], &f, &pivot_row);
                let delta = &f * &pivot_rhs;
                self.rhs[i] -= &delta;
            }
        }
        let f = self.cost[c].clone();
        if !f.is_zero() {
            for (j, v) in &pivot_row {
                let delta = &f * v;
                self.cost[*j] -= &delta;
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column enters; among tied ratios
    /// the row whose basic variable has the lowest index leaves.
    fn run(&mut self) -> Phase {
        loop {
            let Some(c) = (0..self.enter_limit).find(|&j| self.cost[j].is_negative()) else {
                return Phase::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let Some(a) = lookup(row, c) else { continue };
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Phase::Unbounded(c),
            }
        }
    }

    fn basic_values(&self, ncols: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}

/// Result of phase 1: either a tableau at a feasible basis, or multipliers.
enum PhaseOne {
    Feasible(Tableau),
    Infeasible(Vec<Rational>),
}

fn phase_one(sys: &EqualitySystem) -> PhaseOne {
    let n = sys.num_cols();
    let m = sys.num_rows();
    let sign: Vec<Rational> = sys
        .rhs
        .iter()
        .map(|c| Rational::from_integer(if c.is_negative() { -1 } else { 1 }))
        .collect();
    let mut rows: Vec<SparseRow> = vec![Vec::new(); m];
    for (j, col) in sys.columns.iter().enumerate() {
        for (r, a) in col {
            rows[*r].push((j, a * &sign[*r]));
        }
    }
    let mut cost = vec![Rational::zero(); n + m];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, a) in row.iter() {
            cost[*j] -= a;
        }
        row.push((n + i, Rational::one()));
    }
    let rhs: Vec<Rational> = sys.rhs.iter().zip(&sign).map(|(c, s)| c * s).collect();
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect(), cost, enter_limit: n + m };
    match t.run() {
        Phase::Optimal => {}
        Phase::Unbounded(_) => unreachable!("phase-one objective is bounded below by zero"),
    }
    let infeasibility: Rational = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(b, _)| **b >= n)
        .map(|(_, v)| v.clone())
        .sum();
    if infeasibility.is_positive() {
        // duals of the phase-one problem: w_i = 1 - reduced cost of artificial i
        let multipliers = (0..m)
            .map(|i| &(&Rational::one() - &t.cost[n + i]) * &sign[i])
            .collect();
        return PhaseOne::Infeasible(multipliers);
    }
    PhaseOne::Feasible(t)
}

/// Decides whether `M y = c, y >= 0` has a solution.
pub fn solve_feasibility(sys: &EqualitySystem) -> LpOutcome {
    match phase_one(sys) {
        PhaseOne::Infeasible(multipliers) => LpOutcome::Infeasible { multipliers },
        PhaseOne::Feasible(t) => LpOutcome::Feasible {
            point: t.basic_values(sys.num_cols()),
            objective: Rational::zero(),
        },
    }
}

/// Maximizes `objective' y` over `M y = c, 0 <= y <= upper`.
///
/// `upper[j] = None` leaves variable `j` unbounded above. Bounds become extra
/// rows `y_j + s_j = upper_j`, so infeasibility multipliers cover the rows of
/// `sys` followed by one row per bounded variable.
pub fn maximize(
    objective: &[Rational],
    sys: &EqualitySystem,
    upper: &[Option<Rational>],
) -> LpOutcome {
    let n = sys.num_cols();
    assert_eq!(objective.len(), n, "objective length");
    assert!(upper.is_empty() || upper.len() == n, "bounds length");

    let bounded: Vec<(usize, &Rational)> = upper
        .iter()
        .enumerate()
        .filter_map(|(j, u)| u.as_ref().map(|u| (j, u)))
        .collect();
    let mut rhs = sys.rhs.clone();
    rhs.extend(bounded.iter().map(|(_, u)| (*u).clone()));
    let mut aug = EqualitySystem::new(rhs);
    for j in 0..n {
        let mut col = sys.columns[j].clone();
        if let Some(k) = bounded.iter().position(|(bj, _)| *bj == j) {
            col.push((sys.num_rows + k, Rational::one()));
        }
        aug.add_column(col);
    }
    for k in 0..bounded.len() {
        aug.add_column(vec![(sys.num_rows + k, Rational::one())]);
    }
    let total = aug.num_cols();

    let mut t = match phase_one(&aug) {
        PhaseOne::Infeasible(multipliers) => return LpOutcome::Infeasible { multipliers },
        PhaseOne::Feasible(t) => t,
    };

    // Pivot remaining (zero-valued) artificials out; rows with no structural
    // entry are redundant and dropped.
    let mut redundant = Vec::new();
    for r in 0..t.rows.len() {
        if t.basis[r] < total {
            continue;
        }
        match t.rows[r].iter().find(|(j, _)| *j < total).map(|(j, _)| *j) {
            Some(j) => t.pivot(r, j),
            None => redundant.push(r),
        }
    }
    for r in redundant.into_iter().rev() {
        t.rows.remove(r);
        t.rhs.remove(r);
        t.basis.remove(r);
    }
    for row in &mut t.rows {
        row.retain(|(j, _)| *j < total);
    }
    t.enter_limit = total;

    let mut cost: Vec<Rational> = (0..total)
        .map(|j| if j < n { -&objective[j] } else { Rational::zero() })
        .collect();
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        let cb = cost[b].clone();
        if cb.is_zero() {
            continue;
        }
        for (j, a) in row {
            let delta = &cb * a;
            cost[*j] -= &delta;
        }
    }
    t.cost = cost;

    let phase = t.run();
    let full = t.basic_values(total);
    let point: Vec<Rational> = full[..n].to_vec();
    match phase {
        Phase::Optimal => {
            let objective = objective.iter().zip(&point).map(|(c, x)| c * x).sum();
            LpOutcome::Feasible { point, objective }
        }
        Phase::Unbounded(c) => {
            let mut ray = vec![Rational::zero(); total];
            ray[c] = Rational::one();
            for (row, &b) in t.rows.iter().zip(&t.basis) {
                if let Some(a) = lookup(row, c) {
                    ray[b] = -a;
                }
            }
            ray.truncate(n);
            LpOutcome::Unbounded { point, ray }
        }
    }
}
