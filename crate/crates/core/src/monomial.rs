//! Multi-indices (exponent vectors of monomials) and their graded ordering.
//!
//! Monomials are ordered by total degree first; within a degree the order is
//! lexicographic with the larger leading exponent first, so for two
//! variables the degree-1 band is `(1,0), (0,1)`. Ranks are computed in
//! closed form from binomial counts of compositions.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::{binomial, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exps: Vec<u32>,
    degree: u64,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "multi-index needs at least one variable");
        let degree = exps.iter().map(|&e| e as u64).sum();
        MultiIndex { exps, degree }
    }

    pub fn zero(m: usize) -> Self {
        MultiIndex::new(vec![0; m])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    /// Exponent-wise sum, i.e. the product of the two monomials.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        MultiIndex::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(MultiIndex::new(exps))
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &MultiIndex) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, t: u32) -> MultiIndex {
        MultiIndex::new(
            self.exps
                .iter()
                .map(|e| e.checked_mul(t).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Value of the monomial at `z`.
    pub fn eval(&self, z: &[Rational]) -> Rational {
        debug_assert_eq!(z.len(), self.exps.len());
        self.exps
            .iter()
            .zip(z)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| v.pow(*e as u64))
            .product()
    }

    /// Position of `self` in the graded order over all monomials in
    /// `self.num_vars()` variables. The constant monomial has rank 0.
    ///
    /// Panics if the rank does not fit a `usize`.
    pub fn rank(&self) -> usize {
        let m = self.exps.len() as u64;
        let below = if self.degree == 0 {
            0
        } else {
            binomial(self.degree - 1 + m, m).expect("rank overflow")
        };
        let mut within: u128 = 0;
        let mut rem = self.degree;
        for (i, &e) in self.exps.iter().enumerate().take(self.exps.len() - 1) {
            let parts = m - i as u64 - 1;
            let e = e as u64;
            // compositions of the remainder that put more than `e` in slot i
            if rem > e {
                within += binomial(rem - e - 1 + parts, parts).expect("rank overflow");
            }
            rem -= e;
        }
        usize::try_from(below + within).expect("rank overflow")
    }

    /// Inverse of [`MultiIndex::rank`] for `m` variables.
    pub fn unrank(rank: usize, m: usize) -> MultiIndex {
        assert!(m >= 1, "multi-index needs at least one variable");
        let m64 = m as u64;
        let rank = rank as u128;
        let mut degree = 0u64;
        let mut below = 0u128;
        loop {
            let upto = binomial(degree + m64, m64).expect("rank overflow");
            if rank < upto {
                break;
            }
            below = upto;
            degree += 1;
        }
        let mut idx = rank - below;
        let mut rem = degree;
        let mut exps = Vec::with_capacity(m);
        for i in 0..m - 1 {
            let parts = m64 - i as u64 - 1;
            let mut chosen = None;
            for v in (0..=rem).rev() {
                let count = binomial(rem - v + parts - 1, parts - 1).expect("rank overflow");
                if idx < count {
                    chosen = Some(v);
                    break;
                }
                idx -= count;
            }
            let v = chosen.expect("rank out of range");
            exps.push(v as u32);
            rem -= v;
        }
        exps.push(rem as u32);
        MultiIndex::new(exps)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if self.exps.len() == 1 {
                write!(f, "z")?;
            } else {
                write!(f, "z{}", k + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All multi-indices of degree exactly `d` in `m` variables, in graded order.
pub fn monomials_of_degree(m: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(slot: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slot + 1 == cur.len() {
            cur[slot] = rem;
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for v in (0..=rem).rev() {
            cur[slot] = v;
            rec(slot + 1, rem - v, cur, out);
        }
        cur[slot] = 0;
    }
    assert!(m >= 1);
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; m], &mut out);
    out
}

/// All multi-indices of degree at most `d` in `m` variables, in rank order.
pub fn monomials_up_to(m: usize, d: u32) -> Vec<MultiIndex> {
    (0..=d).flat_map(|k| monomials_of_degree(m, k)).collect()
}

/// All multi-indices componentwise below `upper`, in rank order.
pub fn monomials_in_box(upper: &MultiIndex) -> Vec<MultiIndex> {
    let m = upper.num_vars();
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    loop {
        out.push(MultiIndex::new(cur.clone()));
        let mut k = 0;
        loop {
            if k == m {
                out.sort();
                return out;
            }
            if cur[k] < upper.exponents()[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}
