use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ColoredPermutation;
use crate::combinatorics::{multipartitions, Multipartition};
use crate::exact::Rational;

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// |W(r,n)| = r^n·n!.
pub fn group_order(r: u32, n: usize) -> u128 {
    (r as u128).pow(n as u32) * factorial(n as u64)
}

/// Π over components and part sizes k of k^{a_k}·a_k!·r^{ℓ}.
pub fn centralizer_order(ty: &Multipartition) -> u128 {
    let r = ty.r() as u128;
    let mut z = 1u128;
    for p in ty.components() {
        for (k, a) in p.multiplicities() {
            z *= (k as u128).pow(a as u32) * factorial(a as u64);
        }
        z *= r.pow(p.len() as u32);
    }
    z
}

pub fn class_size(ty: &Multipartition) -> u128 {
    group_order(ty.r() as u32, ty.size()) / centralizer_order(ty)
}

/// Number of parts in component 0, the length of every element of the class.
pub fn class_length(ty: &Multipartition) -> usize {
    ty.component(0).len()
}

/// `out[k]` = E_{r,n}(k) from the recurrence
/// E_{r,n}(k) = (rk+1)E_{r,n-1}(k) + (r(n+1) - (rk+1))E_{r,n-1}(k-1).
pub fn eulerian_row(r: u32, n: usize) -> Vec<u128> {
    let r = r as u128;
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![0u128; m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let stay = row.get(k).map_or(0, |&e| (r * k as u128 + 1) * e);
            let rise = if k == 0 { 0 } else { (r * (m as u128 + 1) - (r * k as u128 + 1)) * row[k - 1] };
            *slot = stay + rise;
        }
        row = next;
    }
    row
}

pub fn eulerian(r: u32, n: usize, k: usize) -> u128 {
    eulerian_row(r, n).get(k).copied().unwrap_or(0)
}

/// Descent-number histogram over an explicit list of elements.
pub fn descent_histogram<'a>(n: usize, elems: impl IntoIterator<Item = &'a ColoredPermutation>) -> Vec<u128> {
    let mut out = vec![0u128; n + 1];
    for w in elems {
        out[w.descent_number()] += 1;
    }
    out
}

fn rat_int(v: u128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ewens_weight(w: &ColoredPermutation, q: &Rational) -> Rational {
    let base = q * rat_int(w.r() as u128) + Rational::one();
    num_traits::pow(base, w.length())
}

/// Σ_w (rq+1)^{ℓ(w)}, summed over classes.
pub fn ewens_normalizer(r: u32, n: usize, q: &Rational) -> Rational {
    let base = q * rat_int(r as u128) + Rational::one();
    let mut total = Rational::zero();
    for ty in multipartitions(r as usize, n) {
        total += rat_int(class_size(&ty)) * num_traits::pow(base.clone(), class_length(&ty));
    }
    total
}

/// Π_{i=1}^{n} r(q+i).
pub fn ewens_normalizer_closed(r: u32, n: usize, q: &Rational) -> Rational {
    (1..=n).map(|i| rat_int(r as u128) * (q + rat_int(i as u128))).product()
}

/// (rq+1)(r(q+1)+1)⋯(r(q+n)+1), the product as printed.
pub fn ewens_normalizer_printed(r: u32, n: usize, q: &Rational) -> Rational {
    (0..=n).map(|i| rat_int(r as u128) * (q + rat_int(i as u128)) + Rational::one()).product()
}
