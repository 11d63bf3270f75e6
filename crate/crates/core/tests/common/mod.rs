#![allow(dead_code)]

use discrete_farkas::{EqualitySystem, Instance, Rational};
use num_traits::{One, Zero};
use rand::Rng;

/// Random nonnegative instance: `m <= 3`, `n <= 4`, entries in `0..=4`,
/// `sum(b) <= 12`, no zero columns. About half the right-hand sides are
/// built as `A x` so that both verdicts show up often.
pub fn random_nonneg<R: Rng>(rng: &mut R) -> Instance {
    loop {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=4);
        let a: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..=4)).collect()).collect();
        if (0..n).any(|j| (0..m).all(|k| a[k][j] == 0)) {
            continue;
        }
        let b: Vec<i64> = if rng.gen_bool(0.5) {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            (0..m).map(|k| (0..n).map(|j| a[k][j] * x[j]).sum()).collect()
        } else {
            (0..m).map(|_| rng.gen_range(0..=6)).collect()
        };
        if b.iter().sum::<i64>() > 12 {
            continue;
        }
        let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
        return Instance::from_i64(&rows, &b).unwrap();
    }
}

/// Random general instance: `m, n <= 3`, entries of `A` and `b` in `-3..=3`.
/// Half the time `b = A x` for a small `x` when that stays in range.
pub fn random_general<R: Rng>(rng: &mut R) -> Instance {
    let m = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=3);
    let a: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let ax: Vec<i64> = (0..m).map(|k| (0..n).map(|j| a[k][j] * x[j]).sum()).collect();
    let b: Vec<i64> = if rng.gen_bool(0.5) && ax.iter().all(|v| (-3..=3).contains(v)) {
        ax
    } else {
        (0..m).map(|_| rng.gen_range(-3..=3)).collect()
    };
    let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
    Instance::from_i64(&rows, &b).unwrap()
}

pub fn knapsack(a: &[i64], b: i64) -> Instance {
    Instance::from_i64(&[a], &[b]).unwrap()
}

pub fn r(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

/// Solves the square system `B y = c` exactly; `None` if `B` is singular.
fn solve_square(b: &[Vec<Rational>], c: &[Rational]) -> Option<Vec<Rational>> {
    let k = b.len();
    let mut aug: Vec<Vec<Rational>> = b
        .iter()
        .zip(c)
        .map(|(row, ci)| {
            let mut r = row.clone();
            r.push(ci.clone());
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = &*v / &p;
        }
        for i in 0..k {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let pivot_row = aug[col].clone();
                for (t, p) in pivot_row.iter().enumerate().skip(col) {
                    aug[i][t] = &aug[i][t] - &(&f * p);
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[k].clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every basic feasible solution of `M y = c, y >= 0`, found by trying all
/// column and row subsets of equal size. Redundant rows are handled by the
/// row subsets; the result is checked against the full system.
pub fn vertices(sys: &EqualitySystem) -> Vec<Vec<Rational>> {
    let (rows, cols) = (sys.num_rows(), sys.num_cols());
    let dense: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    sys.column(j)
                        .iter()
                        .find(|(r, _)| *r == i)
                        .map_or_else(Rational::zero, |(_, v)| v.clone())
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let zero = vec![Rational::zero(); cols];
    if sys.is_satisfied_by(&zero) {
        out.push(zero);
    }
    for k in 1..=rows.min(cols) {
        for cs in combinations(cols, k) {
            for rs in combinations(rows, k) {
                let b: Vec<Vec<Rational>> = rs.iter().map(|&i| cs.iter().map(|&j| dense[i][j].clone()).collect()).collect();
                let c: Vec<Rational> = rs.iter().map(|&i| sys.rhs()[i].clone()).collect();
                let Some(y) = solve_square(&b, &c) else { continue };
                if y.iter().any(Rational::is_negative) {
                    continue;
                }
                let mut full = vec![Rational::zero(); cols];
                for (v, &j) in y.into_iter().zip(&cs) {
                    full[j] = v;
                }
                if sys.is_satisfied_by(&full) && !out.contains(&full) {
                    out.push(full);
                }
            }
        }
    }
    out
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Random small system with integer entries in `-2..=2` and rhs in `0..=3`.
pub fn random_system<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> EqualitySystem {
    let dense: Vec<Vec<Rational>> = (0..rows)
        .map(|_| (0..cols).map(|_| r(rng.gen_range(-2..=2))).collect())
        .collect();
    let rhs = (0..rows)
        .map(|_| if rng.gen_bool(0.4) { Rational::zero() } else { r(rng.gen_range(0..=3)) })
        .collect();
    EqualitySystem::from_dense(&dense, rhs)
}

pub fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}
