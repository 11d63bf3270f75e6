//! Polynomial certificates `z^b - 1 = sum_j Q_j(z) (z^{A_j} - 1)` with
//! nonnegative `Q_j`: construction, exact verification, and witness recovery.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::instance::{integer_json, json_integer, Instance, Mode};
use crate::lp_build::{degree_bound_formula, LpProblem};
use crate::monomial::MultiIndex;
use crate::poly::{poly_mul_binomial, NonnegPoly, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub q: Vec<NonnegPoly>,
    pub degree_bound_used: BigInt,
    pub instance_hash: String,
}

impl Certificate {
    /// All-zero weights, the certificate for `b = 0`.
    pub fn empty(inst: &Instance) -> Certificate {
        Certificate {
            q: vec![NonnegPoly::new(); inst.n()],
            degree_bound_used: degree_bound_formula(inst),
            instance_hash: inst.fingerprint(),
        }
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn max_degree(&self) -> u64 {
        self.q.iter().map(NonnegPoly::degree).max().unwrap_or(0)
    }

    pub fn term_counts(&self) -> Vec<usize> {
        self.q.iter().map(NonnegPoly::len).collect()
    }

    /// True when every coefficient is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.q
            .iter()
            .all(|p| p.terms().all(|(_, c)| c.is_one()))
    }

    pub fn to_json(&self) -> Value {
        let q: Vec<Value> = self
            .q
            .iter()
            .map(|p| {
                Value::Array(
                    p.terms()
                        .map(|(alpha, c)| json!({"alpha": alpha.exponents(), "coeff": c.to_fraction_string()}))
                        .collect(),
                )
            })
            .collect();
        json!({
            "n": self.n(),
            "Q": q,
            "degree_bound": integer_json(&self.degree_bound_used),
            "instance_hash": self.instance_hash,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Certificate> {
        Certificate::from_json(&serde_json::from_str(text)?)
    }

    pub fn from_json(v: &Value) -> Result<Certificate> {
        let bad = |msg: String| Error::Parse(msg);
        let obj = v.as_object().ok_or_else(|| bad("certificate must be a JSON object".into()))?;
        let q_val = obj
            .get("Q")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"Q\" array".into()))?;
        let mut q = Vec::with_capacity(q_val.len());
        for (j, poly) in q_val.iter().enumerate() {
            let terms = poly
                .as_array()
                .ok_or_else(|| bad(format!("Q[{j}] must be an array of terms")))?;
            let mut p = NonnegPoly::new();
            for term in terms {
                let alpha = term
                    .get("alpha")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad(format!("Q[{j}]: term without \"alpha\"")))?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .and_then(|u| u32::try_from(u).ok())
                            .ok_or_else(|| bad(format!("Q[{j}]: bad exponent {e}")))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                if alpha.is_empty() {
                    return Err(bad(format!("Q[{j}]: empty exponent vector")));
                }
                let coeff: Rational = match term.get("coeff") {
                    Some(Value::String(s)) => s.parse()?,
                    Some(Value::Number(n)) => n.to_string().parse()?,
                    _ => return Err(bad(format!("Q[{j}]: term without \"coeff\""))),
                };
                if coeff.is_negative() {
                    return Err(bad(format!("Q[{j}]: negative coefficient {coeff}")));
                }
                p.add_term(MultiIndex::new(alpha), &coeff);
            }
            q.push(p);
        }
        if let Some(n) = obj.get("n") {
            if n.as_u64() != Some(q.len() as u64) {
                return Err(bad(format!("\"n\" = {n} but Q has {} entries", q.len())));
            }
        }
        let degree_bound_used = match obj.get("degree_bound") {
            Some(v) => json_integer(v).map_err(|e| bad(e.to_string()))?,
            None => return Err(bad("missing \"degree_bound\"".into())),
        };
        let instance_hash = obj
            .get("instance_hash")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string();
        Ok(Certificate { q, degree_bound_used, instance_hash })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, p) in self.q.iter().enumerate() {
            writeln!(f, "Q{} = {p}", j + 1)?;
        }
        Ok(())
    }
}

/// Collects an LP point into weight polynomials.
///
/// Panics if `point` has the wrong length or a negative entry.
pub fn from_lp_solution(p: &LpProblem, point: &[Rational]) -> Certificate {
    assert_eq!(point.len(), p.num_vars(), "point length");
    let mut q = vec![NonnegPoly::new(); p.n];
    for ((j, alpha), v) in p.var_labels.iter().zip(point) {
        assert!(!v.is_negative(), "negative LP value");
        q[*j].add_term(alpha.clone(), v);
    }
    Certificate {
        q,
        degree_bound_used: p.degree_bound.clone(),
        instance_hash: p.instance_hash.clone(),
    }
}

/// Telescoping certificate of a witness:
/// `Q_j = z^{A_1 x_1 + ... + A_{j-1} x_{j-1}} (1 + z^{A_j} + ... + z^{A_j (x_j - 1)})`.
pub fn from_witness(inst: &Instance, x: &[u64]) -> Result<Certificate> {
    if !inst.is_solution(x) {
        return Err(Error::NotAWitness);
    }
    let m = inst.m();
    let mut prefix = MultiIndex::zero(m);
    let mut q = Vec::with_capacity(inst.n());
    for (j, &xj) in x.iter().enumerate() {
        let col = inst.column_exponents(j)?;
        let mut p = NonnegPoly::new();
        // a zero column multiplies z^0 - 1 = 0; its weight is irrelevant
        if !col.is_zero() {
            let steps = u32::try_from(xj).map_err(|_| Error::TooLarge(format!("x_{j} = {xj}")))?;
            for t in 0..steps {
                p.add_term(prefix.add(&col.scale(t)), &Rational::one());
            }
            prefix = prefix.add(&col.scale(steps));
        }
        q.push(p);
    }
    Ok(Certificate {
        q,
        degree_bound_used: degree_bound_formula(inst),
        instance_hash: inst.fingerprint(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    GeneralInstance,
    WrongArity { expected: usize, found: usize },
    WrongVariableCount { column: usize, expected: usize, found: usize },
    DegreeExceeded { column: usize, degree: u64, bound: BigInt },
    /// Coefficient of `monomial` in the expansion differs from `z^b - 1`.
    Mismatch { monomial: MultiIndex, expected: Rational, found: Rational },
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::GeneralInstance => write!(f, "instance has negative entries"),
            InvalidReason::WrongArity { expected, found } => {
                write!(f, "expected {expected} weight polynomials, found {found}")
            }
            InvalidReason::WrongVariableCount { column, expected, found } => write!(
                f,
                "Q{} has a term in {found} variables, expected {expected}",
                column + 1
            ),
            InvalidReason::DegreeExceeded { column, degree, bound } => {
                write!(f, "deg Q{} = {degree} exceeds b* = {bound}", column + 1)
            }
            InvalidReason::Mismatch { monomial, expected, found } => write!(
                f,
                "coefficient of {monomial} is {found}, expected {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(InvalidReason),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// `sum_j Q_j (z^{A_j} - 1)`, expanded exactly.
pub fn expand(inst: &Instance, cert: &Certificate) -> Result<Poly> {
    let mut total = Poly::new();
    for (j, qj) in cert.q.iter().enumerate() {
        total.add_assign(&poly_mul_binomial(qj, &inst.column_exponents(j)?));
    }
    Ok(total)
}

/// Term-by-term check of the certificate identity, plus arity and degree
/// checks. Nonnegativity is carried by [`NonnegPoly`].
///
/// A mismatch is reported at the first expansion term, leading term first,
/// whose coefficient differs from `z^b - 1`; if every expansion term agrees,
/// at the first target term missing from the expansion.
pub fn verify(inst: &Instance, cert: &Certificate) -> Verification {
    use Verification::Invalid;
    if inst.mode() != Mode::NonnegOnly {
        return Invalid(InvalidReason::GeneralInstance);
    }
    if cert.n() != inst.n() {
        return Invalid(InvalidReason::WrongArity { expected: inst.n(), found: cert.n() });
    }
    let bound = degree_bound_formula(inst);
    for (j, qj) in cert.q.iter().enumerate() {
        if let Some((alpha, _)) = qj.terms().find(|(a, _)| a.num_vars() != inst.m()) {
            return Invalid(InvalidReason::WrongVariableCount {
                column: j,
                expected: inst.m(),
                found: alpha.num_vars(),
            });
        }
        if !qj.is_empty() && BigInt::from(qj.degree()) > bound {
            return Invalid(InvalidReason::DegreeExceeded { column: j, degree: qj.degree(), bound });
        }
    }
    let (Ok(expansion), Ok(b)) = (expand(inst, cert), inst.rhs_exponents()) else {
        return Invalid(InvalidReason::GeneralInstance);
    };
    let target = Poly::binomial(&b);
    for (alpha, found) in expansion.terms().rev() {
        let expected = target.coeff(alpha);
        if &expected != found {
            return Invalid(InvalidReason::Mismatch { monomial: alpha.clone(), expected, found: found.clone() });
        }
    }
    for (alpha, expected) in target.terms().rev() {
        let found = expansion.coeff(alpha);
        if &found != expected {
            return Invalid(InvalidReason::Mismatch { monomial: alpha.clone(), expected: expected.clone(), found });
        }
    }
    Verification::Valid
}

/// Recovers `x` with `Ax = b` by following positive coefficients from the
/// monomial `0`: at node `gamma` take the smallest `j` with `Q_j[gamma] > 0`
/// and step to `gamma + A_j`.
///
/// The certificate rows are flow conservation with a unit source at `0` and
/// sink at `b`, so every node reached other than `b` has positive outflow;
/// each step raises the degree, so the walk ends at `b`.
pub fn extract_witness(inst: &Instance, cert: &Certificate) -> Result<Vec<u64>> {
    let n = inst.n();
    let mut x = vec![0u64; n];
    if inst.rhs_is_zero() {
        return Ok(x);
    }
    let b = inst.rhs_exponents()?;
    let cols: Vec<MultiIndex> = (0..n).map(|j| inst.column_exponents(j)).collect::<Result<_>>()?;
    if cert.n() != n {
        return Err(Error::InvalidInstance(format!(
            "certificate has {} weights for {n} columns",
            cert.n()
        )));
    }
    let mut node = MultiIndex::zero(inst.m());
    while node != b {
        let next = (0..n).find(|&j| {
            !cols[j].is_zero() && cert.q[j].coeff(&node).is_some_and(Rational::is_positive)
        });
        match next {
            Some(j) if node.add(&cols[j]).le_componentwise(&b) => {
                node = node.add(&cols[j]);
                x[j] += 1;
            }
            _ => return Err(Error::Stuck(node.exponents().to_vec())),
        }
    }
    debug_assert!(inst.is_solution(&x));
    Ok(x)
}

/// Strictly positive rational evaluation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationPoint {
    z: Vec<Rational>,
}

impl EvaluationPoint {
    pub fn new(z: Vec<Rational>) -> Result<Self> {
        if z.is_empty() || z.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidInstance("evaluation point must be strictly positive".into()));
        }
        Ok(EvaluationPoint { z })
    }

    pub fn uniform(m: usize, value: Rational) -> Result<Self> {
        Self::new(vec![value; m])
    }

    /// Random point with numerators and denominators in `1..=12`.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let z = (0..m)
            .map(|_| Rational::new(rng.gen_range(1..=12), rng.gen_range(1..=12)))
            .collect();
        EvaluationPoint { z }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.z
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalOutcome {
    Pass,
    Fail { lhs: Rational, rhs: Rational },
}

impl EvalOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, EvalOutcome::Pass)
    }
}

/// Evaluates both sides of the identity at `pt`. Where `z^{A_j} >= 1` for
/// every `j` the left side must also be nonnegative.
pub fn eval_check(inst: &Instance, cert: &Certificate, pt: &EvaluationPoint) -> Result<EvalOutcome> {
    let z = pt.coords();
    let one = Rational::one();
    let lhs = &inst.rhs_exponents()?.eval(z) - &one;
    let mut rhs = Rational::zero();
    let mut dominated = true;
    for (j, qj) in cert.q.iter().enumerate() {
        let zaj = inst.column_exponents(j)?.eval(z);
        if zaj < one {
            dominated = false;
        }
        rhs += &(&qj.eval(z) * &(&zaj - &one));
    }
    if lhs != rhs || (dominated && lhs.is_negative()) {
        return Ok(EvalOutcome::Fail { lhs, rhs });
    }
    Ok(EvalOutcome::Pass)
}
