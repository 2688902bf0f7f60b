use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use super::UniPoly;
use crate::error::{Error, Result};

pub fn euler_phi(r: u32) -> usize {
    assert!(r >= 1, "cyclotomic order must be positive");
    let mut n = r;
    let mut phi = r;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi as usize
}

fn integer_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of Φ_r in ascending degree, cached.
pub(crate) fn cyclotomic_coeffs(r: u32) -> Arc<Vec<BigInt>> {
    assert!(r >= 1, "cyclotomic order must be positive");
    if let Some(c) = phi_cache().lock().unwrap().get(&r) {
        return Arc::clone(c);
    }
    // x^r - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); r as usize + 1];
    num[0] = -BigInt::one();
    num[r as usize] = BigInt::one();
    for d in (1..r).filter(|d| r.is_multiple_of(*d)) {
        let den = cyclotomic_coeffs(d);
        num = integer_poly_div_exact(&num, &den);
    }
    let arc = Arc::new(num);
    phi_cache().lock().unwrap().insert(r, Arc::clone(&arc));
    arc
}

/// Φ_r as a polynomial in `x` with integer coefficients.
pub fn cyclotomic_polynomial(r: u32) -> UniPoly {
    let coeffs =
        cyclotomic_coeffs(r).iter().map(|c| Cyclotomic::from_rational(1, Rational::from_integer(c.clone()))).collect();
    UniPoly::new("x", coeffs)
}

/// Element Σ coeffs[i]·ξ^i of Q(ξ_r), reduced modulo Φ_r.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

/// Canonical representative of ξ^e.
pub fn root_power(r: u32, e: i64) -> Cyclotomic {
    let e = e.rem_euclid(r as i64) as usize;
    let mut c = vec![Rational::zero(); e + 1];
    c[e] = Rational::one();
    Cyclotomic::reduce(r, c)
}

impl Cyclotomic {
    fn reduce(order: u32, mut c: Vec<Rational>) -> Self {
        let phi = cyclotomic_coeffs(order);
        let deg = phi.len() - 1;
        if c.len() > deg {
            for top in (deg..c.len()).rev() {
                let lead = std::mem::take(&mut c[top]);
                if lead.is_zero() {
                    continue;
                }
                let base = top - deg;
                for (j, p) in phi.iter().enumerate().take(deg) {
                    if !p.is_zero() {
                        c[base + j] -= &lead * Rational::from_integer(p.clone());
                    }
                }
            }
        }
        c.resize(deg, Rational::zero());
        Cyclotomic { order, coeffs: c }
    }

    pub fn zero(r: u32) -> Self {
        Cyclotomic { order: r, coeffs: vec![Rational::zero(); euler_phi(r)] }
    }

    pub fn one(r: u32) -> Self {
        Self::from_rational(r, Rational::one())
    }

    pub fn from_int(r: u32, n: i64) -> Self {
        Self::from_rational(r, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(r: u32, n: BigInt) -> Self {
        Self::from_rational(r, Rational::from_integer(n))
    }

    pub fn from_rational(r: u32, q: Rational) -> Self {
        let mut z = Self::zero(r);
        z.coeffs[0] = q;
        z
    }

    /// Builds Σ c_i ξ^i for an arbitrary-length coefficient list.
    pub fn from_power_coeffs(r: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduce(r, coeffs)
    }

    pub fn from_text_coeffs<S: AsRef<str>>(r: u32, coeffs: &[S]) -> Result<Self> {
        if coeffs.len() != euler_phi(r) {
            return Err(Error::Parse(format!(
                "expected {} coefficients for order {r}, got {}",
                euler_phi(r),
                coeffs.len()
            )));
        }
        let c = coeffs.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic { order: r, coeffs: c })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn text_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// True when every coordinate is an integer, i.e. the element is in Z[ξ].
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic orders differ");
    }

    /// Image under ξ ↦ ξ^{r-1}.
    pub fn conjugate(&self) -> Self {
        self.galois(self.order as i64 - 1)
    }

    /// Image under ξ ↦ ξ^u; u must be a unit modulo r.
    pub fn galois(&self, u: i64) -> Self {
        let r = self.order;
        let mut out = vec![Rational::zero(); r as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as i64 * u).rem_euclid(r as i64) as usize;
                out[e] += c;
            }
        }
        Self::reduce(r, out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(self.order, q.recip()));
        }
        // solve (multiplication-by-self matrix) · y = e_0 over Q
        let d = self.coeffs.len();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut basis = vec![Rational::zero(); j + 1];
            basis[j] = Rational::one();
            cols.push(&Self::reduce(self.order, basis) * self);
        }
        let mut m: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&i| !m[i][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for i in 0..d {
                if i != col && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in col..=d {
                        let t = &f * &m[col][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        let y = m.into_iter().map(|row| row[d].clone()).collect();
        Some(Cyclotomic { order: self.order, coeffs: y })
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        if self.coeffs.len() == 1 {
            return Cyclotomic { order: self.order, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * self.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic::reduce(self.order, prod)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for Cyclotomic {
    /// Human-readable form in the generator `z`, e.g. `1 - 2*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let mag = format_rational(&abs);
            match (i, abs.is_one()) {
                (0, _) => f.write_str(&mag)?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    fn ints(p: &UniPoly) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.as_integer().unwrap().try_into().unwrap()).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        for r in 1..=30 {
            assert_eq!(cyclotomic_polynomial(r).degree(), Some(euler_phi(r)));
        }
    }

    #[test]
    fn root_powers() {
        let s = &root_power(3, 1) + &root_power(3, 2);
        assert_eq!(s, Cyclotomic::from_int(3, -1));
        assert_eq!(root_power(2, 1), Cyclotomic::from_int(2, -1));
        assert_eq!(root_power(4, 2), Cyclotomic::from_int(4, -1));
        assert!(root_power(5, 0).is_one());
        assert_eq!(root_power(1, 7), Cyclotomic::one(1));
    }

    #[test]
    fn root_sum_vanishes() {
        for r in 1..=12u32 {
            let mut s = Cyclotomic::zero(r);
            for e in 0..r as i64 {
                s += &root_power(r, e);
            }
            if r == 1 {
                assert!(s.is_one());
            } else {
                assert!(s.is_zero(), "r = {r}");
            }
            for e in -3..=r as i64 + 3 {
                assert!((root_power(r, e) * root_power(r, r as i64 - e)).is_one());
            }
        }
    }

    #[test]
    fn conjugates() {
        let z = root_power(3, 1);
        assert_eq!(z.conjugate(), &Cyclotomic::from_int(3, -1) - &z);
        let q = Cyclotomic::from_rational(3, Rational::new(5.into(), 3.into()));
        assert_eq!(q.conjugate(), q);
        let w = &Cyclotomic::one(4) + &root_power(4, 1);
        assert_eq!(w.conjugate(), &Cyclotomic::one(4) - &root_power(4, 1));
    }

    #[test]
    fn display_and_text() {
        let z = &Cyclotomic::one(3) - &root_power(3, 1).scale(&rat(2));
        assert_eq!(z.to_string(), "1 - 2*z");
        assert_eq!(z.text_coeffs(), vec!["1", "-2"]);
        assert_eq!(Cyclotomic::from_text_coeffs(3, &z.text_coeffs()).unwrap(), z);
        assert!(Cyclotomic::from_text_coeffs(3, &["1"]).is_err());
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"["1","-2"]"#);
    }

    fn arb_cyclo(r: u32) -> impl Strategy<Value = Cyclotomic> {
        prop::collection::vec((-9i64..=9, 1i64..=5), euler_phi(r)).prop_map(move |v| {
            let c = v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect();
            Cyclotomic::from_power_coeffs(r, c)
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12])
            .prop_flat_map(|r| (arb_cyclo(r), arb_cyclo(r), arb_cyclo(r)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if let Some(ai) = a.inv() {
                prop_assert!((&a * &ai).is_one());
            } else {
                prop_assert!(a.is_zero());
            }
        }

        #[test]
        fn conjugation_is_ring_involution((a, b, _c) in arb_triple()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        }
    }
}
