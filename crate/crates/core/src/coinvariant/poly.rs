use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::combinatorics::Partition;
use crate::exact::{root_power, Cyclotomic};
use crate::wreath::ColoredPermutation;

/// Exponent vector of x_1^{a_1}⋯x_n^{a_n}. The derived order is lex with x_1 > … > x_n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut a = vec![0; n];
        a[i - 1] = e;
        Monomial(a)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponents sorted into a partition.
    pub fn exponent_partition(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// x^a / x^b when b divides a.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Polynomial in x_1..x_n over Q(ξ_r), with no zero terms stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCyclo {
    r: u32,
    n: usize,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl PolyCyclo {
    pub fn zero(r: u32, n: usize) -> Self {
        PolyCyclo { r, n, terms: BTreeMap::new() }
    }

    pub fn monomial(r: u32, m: Monomial) -> Self {
        Self::term(r, m, Cyclotomic::one(r))
    }

    pub fn term(r: u32, m: Monomial, c: Cyclotomic) -> Self {
        let mut p = Self::zero(r, m.0.len());
        p.add_term(m, &c);
        p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(|| Cyclotomic::zero(self.r))
    }

    /// Largest monomial in lex order with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Cyclotomic) {
        assert_eq!(m.0.len(), self.n, "monomial in the wrong number of variables");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(|| Cyclotomic::zero(c.order()));
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_int(self.r, -1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.r, self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.r, self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.r, self.n);
        for (a, x) in &self.terms {
            out.add_term(a.mul(m), &(x * c));
        }
        out
    }

    /// Largest exponent partition over the support, the degree used by the filtration.
    pub fn degree_partition(&self) -> Option<Partition> {
        self.terms.keys().map(Monomial::exponent_partition).max_by(|a, b| a.parts().cmp(b.parts()))
    }
}

impl fmt::Display for PolyCyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("({c})*{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// w·f(x_1,…,x_n) = f(ξ^{c_1}x_{w(1)}, …, ξ^{c_n}x_{w(n)}).
pub fn act_monomial(w: &ColoredPermutation, m: &Monomial) -> (Monomial, Cyclotomic) {
    let n = w.n();
    let mut b = vec![0; n];
    let mut phase = 0i64;
    for i in 1..=n {
        b[w.image(i) - 1] = m.0[i - 1];
        phase += w.color(i) as i64 * m.0[i - 1] as i64;
    }
    (Monomial(b), root_power(w.r(), phase))
}

pub fn act(w: &ColoredPermutation, p: &PolyCyclo) -> PolyCyclo {
    assert_eq!(w.n(), p.n(), "element and polynomial have different n");
    let mut out = PolyCyclo::zero(p.r(), p.n());
    for (m, c) in p.terms() {
        let (b, z) = act_monomial(w, m);
        out.add_term(b, &(c * &z));
    }
    out
}
