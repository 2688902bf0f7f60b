//! W(r,n) acting on V^{⊗n}, where V = V^(0) ⊕ … ⊕ V^(r-1) with dim V^(0) = k+1
//! and dim V^(c) = k otherwise. A colored permutation moves the tensor factor at
//! position t to position w(t) and scales it by ξ^{c_t·c(v)}.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::chartable::{irreducible_table, ClassFunction};
use crate::combinatorics::{column_semistandard_count, row_semistandard_count, standard_tableaux, Multipartition};
use crate::error::{Error, Result};
use crate::exact::{root_power, Cyclotomic, Rational};
use crate::wreath::{class_representative, ColoredPermutation};

pub const DEFAULT_TENSOR_BUDGET: u128 = 10_000_000;

/// Parity of each color block of V; odd blocks pick up Koszul signs when
/// tensor factors are permuted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityAssignment(Vec<bool>);

impl ParityAssignment {
    pub fn new(odd: Vec<bool>) -> Self {
        ParityAssignment(odd)
    }

    pub fn all_even(r: u32) -> Self {
        ParityAssignment(vec![false; r as usize])
    }

    pub fn all_odd(r: u32) -> Self {
        ParityAssignment(vec![true; r as usize])
    }

    /// All 2^r assignments, all-even first.
    pub fn all(r: u32) -> Vec<Self> {
        (0..1u32 << r).map(|mask| ParityAssignment((0..r).map(|c| mask >> c & 1 == 1).collect())).collect()
    }

    pub fn r(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_odd(&self, color: u32) -> bool {
        self.0[color as usize]
    }

    /// Parses "0,1,1" style text.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',')
            .map(|t| match t.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse(format!("parity must be 0 or 1, got {other:?}"))),
            })
            .collect::<Result<_>>()
            .map(ParityAssignment)
    }
}

impl fmt::Display for ParityAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        f.write_str(&bits.join(","))
    }
}

impl Serialize for ParityAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&b| b as u8))
    }
}

pub fn space_dimension(r: u32, k: usize) -> usize {
    r as usize * k + 1
}

/// Color block of the 0-based basis index `v` of V.
pub fn basis_color(k: usize, v: usize) -> u32 {
    if v <= k {
        0
    } else {
        (1 + (v - k - 1) / k) as u32
    }
}

fn block_dimension(k: usize, color: u32) -> i64 {
    if color == 0 {
        k as i64 + 1
    } else {
        k as i64
    }
}

fn check_budget(r: u32, n: usize, k: usize, budget: u128) -> Result<()> {
    let needed = (space_dimension(r, k) as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Trace of w on V^{⊗n} with the given parities. A basis tensor is fixed only
/// when it is constant along each cycle, so a cycle of length m and color c
/// contributes Σ_a dim V^(a)·ξ^{c·a}·(−1)^{(m−1)·p(a)}.
pub fn signed_trace(w: &ColoredPermutation, k: usize, parity: &ParityAssignment, budget: u128) -> Result<Cyclotomic> {
    let r = w.r();
    if parity.r() != r {
        return Err(Error::Mismatch(format!("{} parities for r = {r}", parity.r())));
    }
    check_budget(r, w.n(), k, budget)?;
    let mut acc = Cyclotomic::one(r);
    for (cycle, color) in w.cycles() {
        let mut factor = Cyclotomic::zero(r);
        for a in 0..r {
            let sign = if parity.is_odd(a) && cycle.len() % 2 == 0 { -1 } else { 1 };
            let term = root_power(r, (color * a) as i64);
            factor += &term.scale(&Rational::from_integer(BigInt::from(block_dimension(k, a) * sign)));
        }
        acc = &acc * &factor;
    }
    Ok(acc)
}

pub fn unsigned_trace(w: &ColoredPermutation, k: usize, budget: u128) -> Result<Cyclotomic> {
    signed_trace(w, k, &ParityAssignment::all_even(w.r()), budget)
}

/// Trace by summing the diagonal over every basis tensor; the oracle for the
/// cycle shortcut.
pub fn naive_trace(w: &ColoredPermutation, k: usize, parity: &ParityAssignment, budget: u128) -> Result<Cyclotomic> {
    let (r, n) = (w.r(), w.n());
    check_budget(r, n, k, budget)?;
    let dim = space_dimension(r, k);
    let mut acc = Cyclotomic::zero(r);
    let mut index = vec![0usize; n];
    loop {
        // the factor at t lands at w(t); fixed iff index is invariant
        if (0..n).all(|t| index[w.image(t + 1) - 1] == index[t]) {
            let mut exponent = 0i64;
            let mut sign = 1i64;
            for t in 0..n {
                let ct = basis_color(k, index[t]);
                exponent += (w.color(t + 1) * ct) as i64;
                for u in t + 1..n {
                    let both_odd = parity.is_odd(ct) && parity.is_odd(basis_color(k, index[u]));
                    if both_odd && w.image(t + 1) > w.image(u + 1) {
                        sign = -sign;
                    }
                }
            }
            acc += &root_power(r, exponent).scale(&Rational::from_integer(BigInt::from(sign)));
        }
        let Some(t) = (0..n).find(|&t| index[t] + 1 < dim) else {
            break;
        };
        index[t] += 1;
        index[..t].iter_mut().for_each(|x| *x = 0);
    }
    Ok(acc)
}

/// Per-class traces as a class function.
pub fn trace_character(r: u32, n: usize, k: usize, parity: &ParityAssignment, budget: u128) -> Result<ClassFunction> {
    check_budget(r, n, k, budget)?;
    let mut failure = None;
    let f = ClassFunction::from_fn(r, n, |ty| {
        signed_trace(&class_representative(ty), k, parity, budget).unwrap_or_else(|e| {
            failure = Some(e);
            Cyclotomic::zero(r)
        })
    });
    failure.map_or(Ok(f), Err)
}

/// ⟨unsigned trace, χ^λ⟩, checked against s_k(λ).
pub fn tensor_multiplicity(shape: &Multipartition, k: usize) -> Result<u128> {
    let (r, n) = (shape.r() as u32, shape.size());
    let trace = trace_character(r, n, k, &ParityAssignment::all_even(r), u128::MAX)?;
    let ip = trace.inner_product(irreducible_table(r, n).row(shape))?;
    let want = row_semistandard_count(shape, k);
    match ip.as_integer() {
        Some(m) if m == BigInt::from(want) => Ok(want),
        _ => Err(Error::Mismatch(format!("⟨V^⊗{n}, χ^{shape}⟩ = {ip} but s_{k} = {want}"))),
    }
}

pub fn signed_tensor_multiplicity(shape: &Multipartition, k: usize, parity: &ParityAssignment) -> Result<Cyclotomic> {
    let (r, n) = (shape.r() as u32, shape.size());
    let trace = trace_character(r, n, k, parity, u128::MAX)?;
    trace.inner_product(irreducible_table(r, n).row(shape))
}

#[derive(Clone, Debug, Serialize)]
pub struct SignedMultiplicityRow {
    pub shape: Multipartition,
    pub multiplicity: Cyclotomic,
    pub column_count: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignedMultiplicityReport {
    pub r: u32,
    pub n: usize,
    pub k: usize,
    pub parity: ParityAssignment,
    pub rows: Vec<SignedMultiplicityRow>,
    pub agrees: bool,
}

/// The signed decomposition for one parity assignment next to c_k(λ).
pub fn signed_multiplicity_report(
    r: u32,
    n: usize,
    k: usize,
    parity: &ParityAssignment,
) -> Result<SignedMultiplicityReport> {
    let trace = trace_character(r, n, k, parity, u128::MAX)?;
    let table = irreducible_table(r, n);
    let mut rows = Vec::with_capacity(table.labels.len());
    for (shape, chi) in table.iter() {
        rows.push(SignedMultiplicityRow {
            shape: shape.clone(),
            multiplicity: trace.inner_product(chi)?,
            column_count: column_semistandard_count(shape, k),
        });
    }
    let agrees = rows.iter().all(|row| row.multiplicity == Cyclotomic::from_bigint(r, BigInt::from(row.column_count)));
    Ok(SignedMultiplicityReport { r, n, k, parity: parity.clone(), rows, agrees })
}

/// The closed form (−1)^{n+r−1}·(−(rk+1))^ℓ(w) for the signed trace.
pub fn signed_trace_closed_form(w: &ColoredPermutation, k: usize) -> Cyclotomic {
    let (r, n) = (w.r(), w.n());
    let base = -(r as i64 * k as i64 + 1);
    let sign = if (n + r as usize - 1).is_multiple_of(2) { 1 } else { -1 };
    Cyclotomic::from_bigint(r, BigInt::from(sign) * BigInt::from(base).pow(w.length() as u32))
}

/// ε(w)·(rk+1)^ℓ(w) with ε the sign of the underlying permutation; the all-odd
/// trace agrees with this for every r.
pub fn signed_trace_sign_form(w: &ColoredPermutation, k: usize) -> Cyclotomic {
    let r = w.r();
    let even = w.cycles().iter().filter(|(c, _)| c.len() % 2 == 0).count();
    let sign = if even % 2 == 0 { 1 } else { -1 };
    let value = BigInt::from(sign) * BigInt::from(r as i64 * k as i64 + 1).pow(w.length() as u32);
    Cyclotomic::from_bigint(r, value)
}

/// First class whose signed trace differs from the closed form.
pub fn signed_closed_form_witness(
    r: u32,
    n: usize,
    k: usize,
    parity: &ParityAssignment,
) -> Result<Option<(Multipartition, Cyclotomic, Cyclotomic)>> {
    let trace = trace_character(r, n, k, parity, u128::MAX)?;
    for (ty, got) in trace.classes().types.iter().zip(trace.values()) {
        let want = signed_trace_closed_form(&class_representative(ty), k);
        if *got != want {
            return Ok(Some((ty.clone(), got.clone(), want)));
        }
    }
    Ok(None)
}

/// (Σ_λ s_k(λ)·|std λ|, Σ_λ c_k(λ)·|std λ|, (rk+1)^n).
pub fn dimension_counts(r: u32, n: usize, k: usize) -> (u128, u128, u128) {
    let mut rows = 0;
    let mut cols = 0;
    for shape in crate::combinatorics::multipartitions(r as usize, n) {
        let dim = standard_tableaux(&shape).len() as u128;
        rows += row_semistandard_count(&shape, k) * dim;
        cols += column_semistandard_count(&shape, k) * dim;
    }
    (rows, cols, (space_dimension(r, k) as u128).pow(n as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::classes;
    use crate::combinatorics::{binomial, in_row_support, multipartitions, Partition};
    use crate::wreath::elements;

    fn int(r: u32, v: i64) -> Cyclotomic {
        Cyclotomic::from_int(r, v)
    }

    #[test]
    fn identity_and_small_examples() {
        for r in 1..=3 {
            for k in 0..=2 {
                let id = ColoredPermutation::identity(r, 3);
                let d = space_dimension(r, k) as i64;
                assert_eq!(unsigned_trace(&id, k, DEFAULT_TENSOR_BUDGET).unwrap(), int(r, d.pow(3)));
                for p in ParityAssignment::all(r) {
                    assert_eq!(signed_trace(&id, k, &p, DEFAULT_TENSOR_BUDGET).unwrap(), int(r, d.pow(3)));
                }
            }
        }
        let s0 = ColoredPermutation::generator(2, 1, 0);
        assert_eq!(unsigned_trace(&s0, 3, DEFAULT_TENSOR_BUDGET).unwrap(), int(2, 1));
        let s1 = ColoredPermutation::generator(1, 2, 1);
        assert_eq!(signed_trace(&s1, 1, &ParityAssignment::all_odd(1), DEFAULT_TENSOR_BUDGET).unwrap(), int(1, -2));
    }

    #[test]
    fn budget_is_enforced() {
        let id = ColoredPermutation::identity(3, 8);
        let err = unsigned_trace(&id, 3, 1000).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 10u128.pow(8), budget: 1000 });
    }

    #[test]
    fn cycle_shortcut_matches_naive_sum() {
        for r in 1..=3 {
            for n in 1..=3 {
                let ks: &[usize] = if n == 3 { &[0, 1] } else { &[0, 1, 2] };
                for &k in ks {
                    for p in ParityAssignment::all(r) {
                        for w in elements(r, n) {
                            assert_eq!(
                                signed_trace(&w, k, &p, DEFAULT_TENSOR_BUDGET).unwrap(),
                                naive_trace(&w, k, &p, DEFAULT_TENSOR_BUDGET).unwrap(),
                                "{w} k={k} parity={p}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unsigned_trace_is_power_of_length() {
        for r in 1..=3 {
            for n in 0..=3 {
                for k in 0..=2 {
                    for w in elements(r, n) {
                        let want = (space_dimension(r, k) as i64).pow(w.length() as u32);
                        assert_eq!(unsigned_trace(&w, k, DEFAULT_TENSOR_BUDGET).unwrap(), int(r, want));
                    }
                }
            }
        }
    }

    #[test]
    fn n_one_signs_do_nothing() {
        for r in 1..=3 {
            for k in 0..=2 {
                for w in elements(r, 1) {
                    let u = unsigned_trace(&w, k, DEFAULT_TENSOR_BUDGET).unwrap();
                    for p in ParityAssignment::all(r) {
                        assert_eq!(signed_trace(&w, k, &p, DEFAULT_TENSOR_BUDGET).unwrap(), u);
                    }
                }
            }
        }
    }

    #[test]
    fn unsigned_multiplicities_are_row_counts() {
        for r in 1..=3 {
            for n in 1..=3 {
                for k in 0..=2 {
                    for shape in multipartitions(r as usize, n) {
                        let m = tensor_multiplicity(&shape, k).unwrap();
                        if !in_row_support(&shape, k) {
                            assert_eq!(m, 0);
                        }
                    }
                }
                let mut first = vec![Partition::empty(); r as usize];
                first[0] = Partition::from_unsorted(vec![n as u32]);
                let k = 2;
                let m = tensor_multiplicity(&Multipartition::new(first), k).unwrap();
                assert_eq!(m, binomial((n + k) as u64, n as u64));
            }
        }
    }

    #[test]
    fn all_odd_classical_case() {
        for n in 1..=3 {
            for k in 0..=3 {
                let rep = signed_multiplicity_report(1, n, k, &ParityAssignment::all_odd(1)).unwrap();
                assert!(rep.agrees, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn all_odd_reproduces_column_counts() {
        for r in 1..=3 {
            for n in 1..=3 {
                for k in 0..=2 {
                    let rep = signed_multiplicity_report(r, n, k, &ParityAssignment::all_odd(r)).unwrap();
                    assert!(rep.agrees, "r={r} n={n} k={k}");
                }
            }
        }
        let mixed = signed_multiplicity_report(2, 2, 1, &ParityAssignment::new(vec![false, true])).unwrap();
        assert!(!mixed.agrees);
    }

    #[test]
    fn closed_form_holds_only_for_r_one() {
        for n in 1..=3 {
            for k in 0..=2 {
                assert_eq!(signed_closed_form_witness(1, n, k, &ParityAssignment::all_odd(1)).unwrap(), None);
            }
        }
        let (ty, got, want) = signed_closed_form_witness(2, 1, 0, &ParityAssignment::all_odd(2)).unwrap().unwrap();
        assert_eq!((ty.to_string(), got, want), ("[[1],[]]".to_string(), int(2, 1), int(2, -1)));
        for r in 1..=3 {
            for p in ParityAssignment::all(r).iter().filter(|_| r >= 2) {
                assert!(signed_closed_form_witness(r, 1, 1, p).unwrap().is_some());
            }
            for n in 0..=3 {
                for w in elements(r, n) {
                    let got = signed_trace(&w, 2, &ParityAssignment::all_odd(r), DEFAULT_TENSOR_BUDGET).unwrap();
                    assert_eq!(got, signed_trace_sign_form(&w, 2), "{w}");
                }
            }
        }
    }

    #[test]
    fn dimension_counts_match() {
        for r in 1..=3 {
            for n in 0..=4 {
                for k in 0..=3 {
                    let (rows, cols, total) = dimension_counts(r, n, k);
                    assert_eq!((rows, cols), (total, total), "r={r} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn trace_is_a_class_function() {
        let cls = classes(2, 3);
        for w in elements(2, 3) {
            let rep = class_representative(&w.cycle_type());
            for p in ParityAssignment::all(2) {
                let a = signed_trace(&w, 1, &p, DEFAULT_TENSOR_BUDGET).unwrap();
                assert_eq!(a, signed_trace(&rep, 1, &p, DEFAULT_TENSOR_BUDGET).unwrap());
            }
        }
        assert_eq!(cls.len(), 10);
    }

    #[test]
    fn parity_text_round_trip() {
        let p = ParityAssignment::parse("0,1,1").unwrap();
        assert_eq!(p.to_string(), "0,1,1");
        assert!(ParityAssignment::parse("0,2").is_err());
    }
}
