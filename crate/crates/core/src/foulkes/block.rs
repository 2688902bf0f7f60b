use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::chartable::{irreducible_table, ClassFunction};
use crate::combinatorics::{binomial, Multipartition};
use crate::error::{Error, Result};
use crate::exact::{determinant, exact_solve, Cyclotomic, Matrix, Rational};

/// A class function that depends only on the length ℓ; `values[ℓ]` for ℓ = 0..=n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockFunction {
    r: u32,
    values: Vec<Cyclotomic>,
}

fn int(r: u32, v: i128) -> Cyclotomic {
    Cyclotomic::from_bigint(r, BigInt::from(v))
}

impl BlockFunction {
    pub fn new(r: u32, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a block function needs n+1 values".into()));
        }
        if values.iter().any(|v| v.order() != r) {
            return Err(Error::InvalidArgument(format!("values must lie in Q(ξ_{r})")));
        }
        Ok(BlockFunction { r, values })
    }

    pub fn from_fn(r: u32, n: usize, f: impl FnMut(usize) -> Cyclotomic) -> Self {
        BlockFunction { r, values: (0..=n).map(f).collect() }
    }

    pub fn zero(r: u32, n: usize) -> Self {
        Self::from_fn(r, n, |_| Cyclotomic::zero(r))
    }

    /// `base^ℓ` for a rational base.
    pub fn power(r: u32, n: usize, base: &Rational) -> Self {
        Self::from_fn(r, n, |l| Cyclotomic::from_rational(r, num_traits::pow(base.clone(), l)))
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, length: usize) -> &Cyclotomic {
        &self.values[length]
    }

    /// Lengths that occur in W(r,n): all of 0..=n when r ≥ 2, only 1..=n when r = 1 and n ≥ 1.
    pub fn attained_lengths(r: u32, n: usize) -> std::ops::RangeInclusive<usize> {
        if r == 1 && n > 0 {
            1..=n
        } else {
            0..=n
        }
    }

    pub fn to_class_function(&self) -> ClassFunction {
        ClassFunction::from_length(self.r, self.n(), |l| self.values[l].clone())
    }

    /// Equality as functions on W(r,n), ignoring lengths that never occur.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.r == other.r
            && self.n() == other.n()
            && Self::attained_lengths(self.r, self.n()).all(|l| self.values[l] == other.values[l])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.r, self.n()), (other.r, other.n()), "block functions on different groups");
        BlockFunction { r: self.r, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        BlockFunction { r: self.r, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn scale_int(&self, k: i128) -> Self {
        self.scale(&int(self.r, k))
    }
}

impl Serialize for BlockFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlockFunction", 3)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("values_by_length", &self.values)?;
        st.end()
    }
}

/// χ_k: `(rk+1)^ℓ`.
pub fn chi_block(r: u32, n: usize, k: usize) -> BlockFunction {
    let base = r as i128 * k as i128 + 1;
    BlockFunction::from_fn(r, n, |l| int(r, base.pow(l as u32)))
}

/// The signed block function in the closed form `(-1)^{n+r-1}(-rk-1)^ℓ`, as printed.
pub fn chi_signed_closed(r: u32, n: usize, k: usize) -> BlockFunction {
    let sign: i128 = if (n + r as usize - 1).is_multiple_of(2) { 1 } else { -1 };
    let base = -(r as i128 * k as i128 + 1);
    BlockFunction::from_fn(r, n, |l| int(r, sign * base.pow(l as u32)))
}

/// φ_k = Σ_j (-1)^j C(n+1, j)·χ_{k-j}.
pub fn foulkes(r: u32, n: usize, k: usize) -> BlockFunction {
    let mut acc = BlockFunction::zero(r, n);
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&chi_block(r, n, k - j).scale_int(sign * binomial(n as u64 + 1, j as u64) as i128));
    }
    acc
}

/// All φ_0..φ_n.
pub fn foulkes_all(r: u32, n: usize) -> Vec<BlockFunction> {
    (0..=n).map(|k| foulkes(r, n, k)).collect()
}

/// Checks χ_k = Σ_j C(n+j, j)·φ_{k-j} for every k; returns the first k that fails.
pub fn foulkes_inverse_check(r: u32, n: usize) -> Option<usize> {
    let phis = foulkes_all(r, n);
    (0..=n).find(|&k| {
        let mut acc = BlockFunction::zero(r, n);
        for j in 0..=k {
            acc = acc.add(&phis[k - j].scale_int(binomial((n + j) as u64, j as u64) as i128));
        }
        acc != chi_block(r, n, k)
    })
}

/// The two binomial transforms as integer matrices multiply to the identity.
pub fn transform_round_trip(n: usize) -> bool {
    let forward = |k: usize, i: usize| -> i128 {
        if i > k {
            return 0;
        }
        let j = k - i;
        let sign = if j.is_multiple_of(2) { 1 } else { -1 };
        sign * binomial(n as u64 + 1, j as u64) as i128
    };
    let backward = |k: usize, i: usize| -> i128 {
        if i > k {
            0
        } else {
            binomial((n + k - i) as u64, (k - i) as u64) as i128
        }
    };
    (0..=n).all(|a| (0..=n).all(|b| (0..=n).map(|c| backward(a, c) * forward(c, b)).sum::<i128>() == (a == b) as i128))
}

/// The matrix [(ra+1)^b] for a, b = 0..=n.
pub fn length_power_matrix(r: u32, n: usize) -> Matrix {
    (0..=n).map(|a| (0..=n).map(|b| int(1, (r as i128 * a as i128 + 1).pow(b as u32))).collect()).collect()
}

pub fn length_power_determinant(r: u32, n: usize) -> Cyclotomic {
    determinant(&length_power_matrix(r, n))
}

/// Coordinates of a block function in the φ_0..φ_n basis. For r ≥ 2 the
/// k-th coordinate is ⟨f, χ^{λ_k}⟩ / C(n,k) with λ_k = ((n-k); (1^k); ∅; …).
/// For r = 1 the lengths are 1..=n and φ_n vanishes there; the coordinates
/// solve the linear system on φ_0..φ_{n-1} with the last set to 0.
pub fn block_coefficients(f: &BlockFunction) -> Result<Vec<Cyclotomic>> {
    let (r, n) = (f.r(), f.n());
    if r >= 2 {
        let table = irreducible_table(r, n);
        let cf = f.to_class_function();
        return (0..=n)
            .map(|k| {
                let ip = cf.inner_product(table.row(&Multipartition::hook_pair(r as usize, n, k)))?;
                let c = Rational::from_integer(BigInt::from(binomial(n as u64, k as u64)));
                Ok(ip.scale(&(Rational::one() / c)))
            })
            .collect();
    }
    let phis = foulkes_all(r, n);
    let lengths: Vec<usize> = BlockFunction::attained_lengths(r, n).collect();
    let cols = if n == 0 { 1 } else { n };
    let a: Matrix = lengths.iter().map(|&l| (0..cols).map(|k| phis[k].value(l).clone()).collect()).collect();
    let b: Vec<Cyclotomic> = lengths.iter().map(|&l| f.value(l).clone()).collect();
    let mut x = exact_solve(&a, &b)?;
    x.resize(n + 1, Cyclotomic::zero(r));
    Ok(x)
}

/// Σ_k coeffs[k]·φ_k.
pub fn from_coefficients(r: u32, n: usize, coeffs: &[Cyclotomic]) -> BlockFunction {
    let mut acc = BlockFunction::zero(r, n);
    for (k, c) in coeffs.iter().enumerate() {
        acc = acc.add(&foulkes(r, n, k).scale(c));
    }
    acc
}

/// True when every Foulkes coordinate is a non-negative rational.
pub fn is_block_character(f: &BlockFunction) -> Result<bool> {
    Ok(block_coefficients(f)?.iter().all(|c| c.as_rational().is_some_and(|q| !q.is_negative())))
}

/// C(x, n) = x(x-1)⋯(x-n+1)/n! for rational x.
pub fn generalized_binomial(x: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for t in 0..n {
        acc *= x - Rational::from_integer(BigInt::from(t));
        acc /= Rational::from_integer(BigInt::from(t + 1));
    }
    acc
}

/// Coefficients C(q+n-j, n), j = 0..=n, of (rq+1)^ℓ in the φ basis.
pub fn q_block_expansion(n: usize, q: &Rational) -> Vec<Rational> {
    (0..=n).map(|j| generalized_binomial(&(q + Rational::from_integer(BigInt::from(n as i64 - j as i64))), n)).collect()
}

/// Checks Σ_j C(q+n-j, n)·φ_j = (rq+1)^ℓ on every length.
pub fn q_block_check(r: u32, n: usize, q: &Rational) -> bool {
    let coeffs: Vec<Cyclotomic> =
        q_block_expansion(n, q).into_iter().map(|c| Cyclotomic::from_rational(r, c)).collect();
    let base = q * Rational::from_integer(BigInt::from(r)) + Rational::one();
    from_coefficients(r, n, &coeffs).agrees_with(&BlockFunction::power(r, n, &base))
}

/// Least integer threshold t such that every coordinate C(q+n-j, n) that
/// multiplies a nonzero φ_j is positive for all non-integer q > t. At r = 1
/// φ_n vanishes, which lowers the threshold by one.
pub fn q_block_threshold(r: u32, n: usize) -> i64 {
    let top = if r == 1 { n as i64 - 1 } else { n as i64 };
    top - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use crate::wreath::eulerian_row;
    use num_traits::Zero;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn chi_values() {
        assert!(chi_block(3, 4, 0).values().iter().all(Cyclotomic::is_one));
        assert_eq!(chi_block(2, 2, 1).value(2), &Cyclotomic::from_int(2, 9));
        assert_eq!(chi_block(3, 12, 1).value(2), &Cyclotomic::from_int(3, 16));
        assert_eq!(chi_signed_closed(2, 1, 0).value(1), &Cyclotomic::from_int(2, -1));
        assert_eq!(chi_signed_closed(3, 2, 5).value(0), &Cyclotomic::from_int(3, 1));
    }

    #[test]
    fn foulkes_small() {
        let p = foulkes_all(2, 1);
        assert_eq!(p[0].values(), &[Cyclotomic::one(2), Cyclotomic::one(2)]);
        // value at ℓ=1 is the identity
        assert_eq!(p[1].value(1), &Cyclotomic::from_int(2, 1));
        assert_eq!(p[1].value(0), &Cyclotomic::from_int(2, -1));
        for r in 1..=3 {
            for n in 0..=5 {
                let dims: Vec<_> = foulkes_all(r, n).iter().map(|f| f.value(n).as_integer().unwrap()).collect();
                let want: Vec<BigInt> = eulerian_row(r, n).into_iter().map(BigInt::from).collect();
                assert_eq!(dims, want);
                assert_eq!(foulkes(r, n, 0), chi_block(r, n, 0));
                assert_eq!(foulkes_inverse_check(r, n), None);
            }
        }
    }

    #[test]
    fn transforms_invert() {
        for n in 0..=8 {
            assert!(transform_round_trip(n));
        }
        for r in 1..=3 {
            for n in 0..=6 {
                assert!(!length_power_determinant(r, n).is_zero());
            }
        }
    }

    #[test]
    fn coefficients_of_foulkes_are_indicators() {
        for r in 1..=3 {
            for n in 0..=4 {
                for k in 0..=n {
                    if r == 1 && k == n && n > 0 {
                        continue;
                    }
                    let c = block_coefficients(&foulkes(r, n, k)).unwrap();
                    for (j, cj) in c.iter().enumerate() {
                        assert_eq!(cj, &Cyclotomic::from_int(r, (j == k) as i64), "r={r} n={n} k={k}");
                    }
                }
                assert!(block_coefficients(&BlockFunction::zero(r, n)).unwrap().iter().all(Cyclotomic::is_zero));
            }
        }
    }

    #[test]
    fn chi_coefficients_follow_inverse_transform() {
        for r in 2..=3 {
            for n in 1..=3 {
                for m in 0..=n {
                    let c = block_coefficients(&chi_block(r, n, m)).unwrap();
                    for (j, cj) in c.iter().enumerate() {
                        let want = if j <= m { binomial((n + m - j) as u64, (m - j) as u64) as i64 } else { 0 };
                        assert_eq!(cj, &Cyclotomic::from_int(r, want));
                    }
                    assert!(is_block_character(&chi_block(r, n, m)).unwrap());
                }
            }
        }
    }

    #[test]
    fn negative_combination_is_not_a_character() {
        let half = Cyclotomic::from_rational(2, q("1/2"));
        let f = foulkes(2, 2, 1).add(&foulkes(2, 2, 0).scale(&-half));
        assert!(!is_block_character(&f).unwrap());
    }

    #[test]
    fn q_expansion() {
        for r in 1..=3 {
            for n in 0..=4 {
                for s in ["0", "1", "3/2", "5/2", "7/3", "4"] {
                    assert!(q_block_check(r, n, &q(s)));
                }
                for k in 0..=n {
                    let c = q_block_expansion(n, &Rational::from_integer(BigInt::from(k)));
                    for (j, cj) in c.iter().enumerate() {
                        let want = if j <= k { binomial((n + k - j) as u64, n as u64) } else { 0 };
                        assert_eq!(cj, &Rational::from_integer(BigInt::from(want)));
                    }
                }
            }
        }
        let c = q_block_expansion(3, &Rational::zero());
        assert_eq!(c[0], Rational::one());
        assert!(c[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn power_block_positivity_threshold() {
        for r in 1..=3 {
            for n in 1..=4usize {
                let live = if r == 1 { n } else { n + 1 };
                for twice in (1..=(2 * n + 3)).step_by(2) {
                    let qv = Rational::new(BigInt::from(twice), BigInt::from(2));
                    let positive = q_block_expansion(n, &qv)[..live].iter().all(Signed::is_positive);
                    let threshold = Rational::from_integer(BigInt::from(q_block_threshold(r, n)));
                    assert_eq!(positive, qv > threshold, "r={r} n={n} q={qv}");
                    let base = &qv * Rational::from_integer(BigInt::from(r)) + Rational::one();
                    assert_eq!(is_block_character(&BlockFunction::power(r, n, &base)).unwrap(), positive);
                }
            }
        }
        let f = BlockFunction::power(2, 2, &q("4"));
        assert!(is_block_character(&f).unwrap());
    }
}
