//! Problem instances `Ax = b` and their JSON file form.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::monomial::MultiIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every entry of `A` and `b` is nonnegative.
    NonnegOnly,
    General,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::NonnegOnly => "nonneg",
            Mode::General => "general",
        }
    }
}

/// Integer matrix `A` (m x n, stored by rows) and right-hand side `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    a: Vec<Vec<BigInt>>,
    b: Vec<BigInt>,
    mode: Mode,
}

impl Instance {
    pub fn new(a: Vec<Vec<BigInt>>, b: Vec<BigInt>, mode: Mode) -> Result<Self> {
        let m = a.len();
        if m == 0 {
            return Err(Error::InvalidInstance("A must have at least one row".into()));
        }
        let n = a[0].len();
        if n == 0 {
            return Err(Error::InvalidInstance("A must have at least one column".into()));
        }
        if let Some(k) = a.iter().position(|row| row.len() != n) {
            return Err(Error::InvalidInstance(format!(
                "row {k} of A has {} entries, expected {n}",
                a[k].len()
            )));
        }
        if b.len() != m {
            return Err(Error::InvalidInstance(format!(
                "b has {} entries but A has {m} rows",
                b.len()
            )));
        }
        if mode == Mode::NonnegOnly && (a.iter().flatten().chain(&b)).any(Signed::is_negative) {
            return Err(Error::NegativeEntries);
        }
        Ok(Instance { a, b, mode })
    }

    /// Mode inferred from the signs of the entries.
    pub fn infer(a: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Result<Self> {
        let neg = a.iter().flatten().chain(&b).any(Signed::is_negative);
        Self::new(a, b, if neg { Mode::General } else { Mode::NonnegOnly })
    }

    /// Same data under another mode; fails for `NonnegOnly` with negative entries.
    pub fn with_mode(self, mode: Mode) -> Result<Self> {
        Self::new(self.a, self.b, mode)
    }

    pub fn has_negative_entries(&self) -> bool {
        self.a.iter().flatten().chain(&self.b).any(Signed::is_negative)
    }

    pub fn from_i64(a: &[&[i64]], b: &[i64]) -> Result<Self> {
        let a = a
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::infer(a, b.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.a[0].len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.a
    }

    pub fn rhs(&self) -> &[BigInt] {
        &self.b
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.a[row][col]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.a.iter().map(|row| row[j].clone()).collect()
    }

    pub fn column_sum(&self, j: usize) -> BigInt {
        self.a.iter().map(|row| &row[j]).sum()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        self.a.iter().all(|row| row[j].is_zero())
    }

    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.is_zero_column(j)).collect()
    }

    pub fn rhs_is_zero(&self) -> bool {
        self.b.iter().all(Zero::is_zero)
    }

    pub fn rhs_sum(&self) -> BigInt {
        self.b.iter().sum()
    }

    /// Instance restricted to the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Instance> {
        let a = self
            .a
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
            .collect();
        Instance::new(a, self.b.clone(), self.mode)
    }

    /// Column `j` as an exponent vector.
    pub fn column_exponents(&self, j: usize) -> Result<MultiIndex> {
        to_exponents(self.a.iter().map(|row| &row[j]))
    }

    /// `b` as an exponent vector.
    pub fn rhs_exponents(&self) -> Result<MultiIndex> {
        to_exponents(self.b.iter())
    }

    /// `Ax` for a nonnegative integer vector `x`.
    pub fn apply(&self, x: &[u64]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.n(), "x has wrong length");
        self.a
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, &v)| a * BigInt::from(v)).sum())
            .collect()
    }

    pub fn is_solution(&self, x: &[u64]) -> bool {
        x.len() == self.n() && self.apply(x) == self.b
    }

    /// Matrix and right-hand side as `i64` when every entry fits.
    pub fn to_i64(&self) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
        let conv = |v: &BigInt| {
            v.to_i64()
                .ok_or_else(|| Error::TooLarge(format!("entry {v} does not fit in 64 bits")))
        };
        let a = self
            .a
            .iter()
            .map(|row| row.iter().map(conv).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let b = self.b.iter().map(conv).collect::<Result<Vec<_>>>()?;
        Ok((a, b))
    }

    /// SHA-256 over a canonical text form of `(A, b)`, hex encoded.
    pub fn fingerprint(&self) -> String {
        let mut text = format!("{}x{};", self.m(), self.n());
        for row in &self.a {
            for v in row {
                let _ = write!(text, "{v},");
            }
            text.push(';');
        }
        for v in &self.b {
            let _ = write!(text, "{v},");
        }
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().fold(String::with_capacity(64), |mut s, byte| {
            let _ = write!(s, "{byte:02x}");
            s
        })
    }

    /// Parses the instance file format:
    /// `{"m":…, "n":…, "A": [[…], …] or flat row-major, "b": […], "mode": "nonneg"|"general"}`.
    pub fn from_json_str(text: &str) -> Result<Instance> {
        let v: Value = serde_json::from_str(text)?;
        Instance::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Instance> {
        let bad = |msg: &str| Error::InvalidInstance(msg.to_string());
        let obj = v.as_object().ok_or_else(|| bad("instance must be a JSON object"))?;
        let dim = |key: &str| -> Result<Option<usize>> {
            match obj.get(key) {
                None => Ok(None),
                Some(x) => x
                    .as_u64()
                    .and_then(|u| usize::try_from(u).ok())
                    .map(Some)
                    .ok_or_else(|| bad(&format!("\"{key}\" must be a nonnegative integer"))),
            }
        };
        let m = dim("m")?;
        let n = dim("n")?;
        let a_val = obj.get("A").ok_or_else(|| bad("missing \"A\""))?;
        let b_val = obj.get("b").ok_or_else(|| bad("missing \"b\""))?;
        let b: Vec<BigInt> = b_val
            .as_array()
            .ok_or_else(|| bad("\"b\" must be an array"))?
            .iter()
            .map(json_integer)
            .collect::<Result<_>>()?;
        let a_arr = a_val.as_array().ok_or_else(|| bad("\"A\" must be an array"))?;
        let a: Vec<Vec<BigInt>> = if a_arr.iter().all(Value::is_array) && !a_arr.is_empty() {
            a_arr
                .iter()
                .map(|row| {
                    row.as_array()
                        .expect("checked")
                        .iter()
                        .map(json_integer)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?
        } else {
            let flat: Vec<BigInt> = a_arr.iter().map(json_integer).collect::<Result<_>>()?;
            let rows = m.unwrap_or(b.len());
            let cols = match n {
                Some(n) => n,
                None if rows > 0 && flat.len().is_multiple_of(rows) => flat.len() / rows,
                None => return Err(bad("cannot infer n for flat \"A\"")),
            };
            if rows * cols != flat.len() {
                return Err(bad(&format!(
                    "flat \"A\" has {} entries, expected m*n = {}",
                    flat.len(),
                    rows * cols
                )));
            }
            if cols == 0 {
                return Err(bad("A must have at least one column"));
            }
            flat.chunks(cols).map(<[BigInt]>::to_vec).collect()
        };
        if let Some(m) = m {
            if a.len() != m {
                return Err(bad(&format!("\"A\" has {} rows but m = {m}", a.len())));
            }
            if b.len() != m {
                return Err(bad(&format!("\"b\" has {} entries but m = {m}", b.len())));
            }
        }
        if let Some(n) = n {
            if let Some(k) = a.iter().position(|row| row.len() != n) {
                return Err(bad(&format!("row {k} of \"A\" has {} entries but n = {n}", a[k].len())));
            }
        }
        match obj.get("mode") {
            None | Some(Value::Null) => Instance::infer(a, b),
            Some(Value::String(s)) if s == "nonneg" => Instance::new(a, b, Mode::NonnegOnly),
            Some(Value::String(s)) if s == "general" => Instance::new(a, b, Mode::General),
            Some(_) => Err(bad("\"mode\" must be \"nonneg\" or \"general\"")),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m(),
            "n": self.n(),
            "A": self.a.iter().map(|row| row.iter().map(integer_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "b": self.b.iter().map(integer_json).collect::<Vec<_>>(),
            "mode": self.mode.as_str(),
        })
    }
}

fn to_exponents<'a>(vals: impl Iterator<Item = &'a BigInt>) -> Result<MultiIndex> {
    let exps = vals
        .map(|v| {
            if v.is_negative() {
                return Err(Error::NegativeEntries);
            }
            v.to_u32()
                .ok_or_else(|| Error::TooLarge(format!("exponent {v} exceeds 32 bits")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiIndex::new(exps))
}

/// Integer from a JSON number or a decimal string.
pub(crate) fn json_integer(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::InvalidInstance(format!("expected an integer, found {v}"))),
    };
    text.trim()
        .parse()
        .map_err(|_| Error::InvalidInstance(format!("expected an integer, found {text}")))
}

/// JSON number for an arbitrary-precision integer.
pub(crate) fn integer_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => serde_json::from_str(&v.to_string()).unwrap_or_else(|_| Value::String(v.to_string())),
    }
}
