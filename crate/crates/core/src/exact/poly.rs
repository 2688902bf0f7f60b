use std::fmt;

use serde::{Serialize, Serializer};

use super::Cyclotomic;

/// Dense univariate polynomial with cyclotomic coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<Cyclotomic>,
}

impl UniPoly {
    pub fn new(var: &str, mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        UniPoly { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str) -> Self {
        UniPoly { var: var.to_string(), coeffs: Vec::new() }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> Option<&Cyclotomic> {
        self.coeffs.get(d)
    }

    /// Adds `c·var^d` in place.
    pub fn add_term(&mut self, d: usize, c: &Cyclotomic) {
        if self.coeffs.len() <= d {
            self.coeffs.resize(d + 1, Cyclotomic::zero(c.order()));
        }
        self.coeffs[d] += c;
        while self.coeffs.last().is_some_and(Cyclotomic::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(x.order());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{d}", self.var)?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    /// Serialized as the ascending coefficient list.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}
