use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::poly::{Monomial, PolyCyclo};
use crate::exact::{exact_solve, Cyclotomic, Matrix};

/// Exponent vectors of total degree `d` in `n` variables, in lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn fill(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            fill(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    fill(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// e_d(y_1..y_n), with y_i = x_i^power.
fn elementary(r: u32, n: usize, d: usize, power: u32) -> PolyCyclo {
    let mut p = PolyCyclo::zero(r, n);
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == d {
            let a = (0..n).map(|i| if mask >> i & 1 == 1 { power } else { 0 }).collect();
            p.add_term(Monomial(a), &Cyclotomic::one(r));
        }
    }
    p
}

/// h_m(y_from..y_n) with y_i = x_i^power.
fn complete_tail(r: u32, n: usize, from: usize, m: u32, power: u32) -> PolyCyclo {
    let mut p = PolyCyclo::zero(r, n);
    for tail in monomials_of_degree(n - from + 1, m) {
        let mut a = vec![0; from - 1];
        a.extend(tail.0.iter().map(|e| e * power));
        p.add_term(Monomial(a), &Cyclotomic::one(r));
    }
    p
}

/// Whether h_m(y_m..y_n) = Σ_d e_d(y)·g_d(y) has a solution with g_d homogeneous
/// of degree m−d, decided by exact linear algebra in the y variables.
fn in_invariant_ideal(n: usize, m: usize) -> bool {
    let target = complete_tail(1, n, m, m as u32, 1);
    let mut unknowns = Vec::new();
    for d in 1..=m.min(n) {
        let e = elementary(1, n, d, 1);
        for mono in monomials_of_degree(n, (m - d) as u32) {
            unknowns.push(e.mul_term(&mono, &Cyclotomic::one(1)));
        }
    }
    let rows = monomials_of_degree(n, m as u32);
    let a: Matrix = rows.iter().map(|row| unknowns.iter().map(|u| u.coeff(row)).collect()).collect();
    let b: Vec<Cyclotomic> = rows.iter().map(|row| target.coeff(row)).collect();
    exact_solve(&a, &b).is_ok()
}

/// The lex division set h_m(x_m^r, …, x_n^r) for m = 1..n, with leading term x_m^{rm}.
/// Each is checked to lie in the ideal generated by e_1(x^r), …, e_n(x^r).
pub fn reducers(r: u32, n: usize) -> Arc<Vec<PolyCyclo>> {
    type Cache = Mutex<HashMap<(u32, usize), Arc<Vec<PolyCyclo>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("reducer cache poisoned").get(&(r, n)) {
        return Arc::clone(v);
    }
    let out: Vec<PolyCyclo> = (1..=n)
        .map(|m| {
            assert!(in_invariant_ideal(n, m), "h_{m} is not in the invariant ideal for n = {n}");
            complete_tail(r, n, m, m as u32, r)
        })
        .collect();
    let out = Arc::new(out);
    cache.lock().expect("reducer cache poisoned").insert((r, n), Arc::clone(&out));
    out
}

/// Generators e_d(x^r) of the invariant ideal.
pub fn invariant_generators(r: u32, n: usize) -> Vec<PolyCyclo> {
    (1..=n).map(|d| elementary(r, n, d, r)).collect()
}

/// First variable m with a_m ≥ r·m, whose reducer divides the monomial.
fn reducible_at(r: u32, m: &Monomial) -> Option<usize> {
    m.0.iter().enumerate().find(|(i, &a)| a >= r * (*i as u32 + 1)).map(|(i, _)| i + 1)
}

/// Remainder of lex division by [`reducers`]; its support lies in the Artin box.
pub fn normal_form(p: &PolyCyclo) -> PolyCyclo {
    let (r, n) = (p.r(), p.n());
    let divisors = reducers(r, n);
    let mut rest = p.clone();
    let mut out = PolyCyclo::zero(r, n);
    while let Some((lead, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match reducible_at(r, &lead) {
            Some(m) => {
                let quotient = lead.div(&Monomial::var(n, m, r * m as u32)).expect("leading term divides");
                rest = rest.sub(&divisors[m - 1].mul_term(&quotient, &c));
            }
            None => {
                out.add_term(lead.clone(), &c);
                rest.add_term(lead, &-c);
            }
        }
    }
    out
}

/// Monomials with a_m < r·m, in lex order; there are r^n·n! of them.
pub fn artin_box(r: u32, n: usize) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for m in 1..=n as u32 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..r * m).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    let mut out: Vec<Monomial> = out.into_iter().map(Monomial).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wreath::group_order;

    #[test]
    fn reducer_examples() {
        let red = reducers(2, 1);
        assert_eq!(red.len(), 1);
        assert_eq!(red[0], PolyCyclo::monomial(2, Monomial(vec![2])));
        let red = reducers(1, 2);
        let mut h1 = PolyCyclo::zero(1, 2);
        h1.add_term(Monomial(vec![1, 0]), &Cyclotomic::one(1));
        h1.add_term(Monomial(vec![0, 1]), &Cyclotomic::one(1));
        assert_eq!(red[0], h1);
        assert_eq!(red[1], PolyCyclo::monomial(1, Monomial(vec![0, 2])));
        for r in 1..=3 {
            for n in 1..=4 {
                for (i, h) in reducers(r, n).iter().enumerate() {
                    let m = i + 1;
                    assert_eq!(h.leading().unwrap().0, &Monomial::var(n, m, r * m as u32));
                }
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        assert!(normal_form(&PolyCyclo::monomial(2, Monomial(vec![2]))).is_zero());
        for r in 1..=3 {
            for n in 1..=3 {
                for e in invariant_generators(r, n) {
                    assert!(normal_form(&e).is_zero(), "r={r} n={n}");
                    let shifted = e.mul_term(&Monomial::var(n, 1, 1), &Cyclotomic::from_int(r, 2));
                    assert!(normal_form(&shifted).is_zero());
                }
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_linear_and_boxed() {
        let (r, n) = (2, 3);
        let boxed: std::collections::HashSet<_> = artin_box(r, n).into_iter().collect();
        let mut polys = Vec::new();
        for d in [3, 5, 7] {
            let mut p = PolyCyclo::zero(r, n);
            for (i, m) in monomials_of_degree(n, d).into_iter().enumerate() {
                p.add_term(m, &Cyclotomic::from_int(r, (i % 5) as i64 - 2));
            }
            polys.push(p);
        }
        for p in &polys {
            let nf = normal_form(p);
            assert_eq!(normal_form(&nf), nf);
            assert!(nf.terms().keys().all(|m| boxed.contains(m)));
        }
        let sum = polys[0].add(&polys[1].scale(&Cyclotomic::from_int(r, 3)));
        assert_eq!(
            normal_form(&sum),
            normal_form(&polys[0]).add(&normal_form(&polys[1]).scale(&Cyclotomic::from_int(r, 3)))
        );
    }

    #[test]
    fn artin_box_counts() {
        for r in 1..=3 {
            for n in 0..=4 {
                assert_eq!(artin_box(r, n).len() as u128, group_order(r, n));
            }
        }
    }
}
