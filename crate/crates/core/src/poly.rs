//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::Rational;
use crate::monomial::MultiIndex;

/// Polynomial whose stored coefficients are all strictly positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NonnegPoly {
    terms: BTreeMap<MultiIndex, Rational>,
}

impl NonnegPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff` to the coefficient of `alpha`. Zero is ignored.
    ///
    /// Panics on a negative coefficient.
    pub fn add_term(&mut self, alpha: MultiIndex, coeff: &Rational) {
        assert!(!coeff.is_negative(), "negative coefficient in NonnegPoly");
        if coeff.is_zero() {
            return;
        }
        *self.terms.entry(alpha).or_default() += coeff;
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Option<&Rational> {
        self.terms.get(alpha)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum term degree; 0 for the empty polynomial.
    pub fn degree(&self) -> u64 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        self.terms.iter().map(|(a, c)| c * &a.eval(z)).sum()
    }
}

impl FromIterator<(MultiIndex, Rational)> for NonnegPoly {
    fn from_iter<I: IntoIterator<Item = (MultiIndex, Rational)>>(iter: I) -> Self {
        let mut p = NonnegPoly::new();
        for (a, c) in iter {
            p.add_term(a, &c);
        }
        p
    }
}

/// Polynomial with signed coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Poly {
    pub fn new() -> Self {
        Self::default()
    }

    /// `z^b - 1`.
    pub fn binomial(b: &MultiIndex) -> Poly {
        let mut p = Poly::new();
        p.add_term(b.clone(), &Rational::from_integer(1));
        p.add_term(MultiIndex::zero(b.num_vars()), &Rational::from_integer(-1));
        p
    }

    pub fn add_term(&mut self, alpha: MultiIndex, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (a, c) in &other.terms {
            self.add_term(a.clone(), c);
        }
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        self.terms.iter().map(|(a, c)| c * &a.eval(z)).sum()
    }
}

/// Exact expansion of `q * (z^shift - 1)`.
pub fn poly_mul_binomial(q: &NonnegPoly, shift: &MultiIndex) -> Poly {
    let mut out = Poly::new();
    for (alpha, c) in q.terms() {
        out.add_term(alpha.add(shift), c);
        out.add_term(alpha.clone(), &-c);
    }
    out
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (&'a MultiIndex, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    // leading term first
    for (alpha, c) in terms.rev() {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag == Rational::from_integer(1);
        match (alpha.is_zero(), unit) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => write!(f, "{alpha}")?,
            (false, false) => write!(f, "{mag}*{alpha}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

impl fmt::Display for NonnegPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}
