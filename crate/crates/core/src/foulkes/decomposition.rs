use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::block::{chi_block, foulkes, foulkes_all};
use crate::chartable::{irreducible_table, irreducible_table_with_twist, CharacterTable, ClassFunction};
use crate::combinatorics::{
    column_descent_distribution, descent_distribution, multipartitions, BoundaryConvention, Multipartition,
};
use crate::error::{Error, Result};
use crate::exact::Cyclotomic;
use crate::wreath::eulerian_row;

/// ⟨φ_k, χ^λ⟩ for each label of `table`, checked against m_k(λ).
fn multiplicities_in(table: &CharacterTable, k: usize) -> Result<Vec<(Multipartition, u64)>> {
    let phi = foulkes(table.r, table.n, k).to_class_function();
    let mut out = Vec::with_capacity(table.labels.len());
    for (label, chi) in table.iter() {
        let ip = phi.inner_product(chi)?;
        let value = ip.as_integer().and_then(|v| u64::try_from(v).ok()).ok_or_else(|| {
            Error::ConventionMismatch(format!("⟨φ_{k}, χ^{label}⟩ = {ip} is not a non-negative integer"))
        })?;
        let want = descent_distribution(label)[k];
        if value != want {
            return Err(Error::ConventionMismatch(format!(
                "⟨φ_{k}, χ^{label}⟩ = {value} but {want} tableaux of that shape have {k} descents"
            )));
        }
        out.push((label.clone(), value));
    }
    Ok(out)
}

fn is_unit(u: u32, r: u32) -> bool {
    num_integer::gcd(u, r) == 1
}

/// The twist u under which row λ of the character table carries ξ^{u·i·(color sum)}
/// on component i. The smallest unit whose tables give ⟨φ_k, χ^λ⟩ = m_k(λ)
/// for every n ≤ 3 is chosen; 1 is tried first.
pub fn labeling_twist(r: u32) -> u32 {
    static CACHE: OnceLock<Mutex<HashMap<u32, u32>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&u) = cache.lock().expect("twist cache poisoned").get(&r) {
        return u;
    }
    let u = (1..r.max(2))
        .filter(|&u| r <= 1 || is_unit(u, r))
        .find(|&u| {
            (1..=3).all(|n| {
                let t = irreducible_table_with_twist(r, n, u);
                (0..=n).all(|k| multiplicities_in(&t, k).is_ok())
            })
        })
        .unwrap_or(1);
    cache.lock().expect("twist cache poisoned").insert(r, u);
    u
}

/// ⟨φ_k, χ^λ⟩ for every λ, verified to equal m_k(λ).
pub fn foulkes_multiplicities(r: u32, n: usize, k: usize) -> Result<Vec<(Multipartition, u64)>> {
    multiplicities_in(&irreducible_table(r, n), k)
}

/// Σ_λ m̄_k(λ)·χ^λ.
pub fn signed_foulkes_combinatorial(r: u32, n: usize, k: usize, conv: BoundaryConvention) -> ClassFunction {
    let table = irreducible_table(r, n);
    let mut acc = ClassFunction::zero(r, n);
    for (label, chi) in table.iter() {
        let m = column_descent_distribution(label, conv)[k];
        if m > 0 {
            acc = &acc + &chi.scale_int(m as i64);
        }
    }
    acc
}

/// First k where the signed Foulkes character fails to equal φ_{n-k}.
pub fn duality_check(r: u32, n: usize, conv: BoundaryConvention) -> Option<usize> {
    (0..=n).find(|&k| signed_foulkes_combinatorial(r, n, k, conv) != foulkes(r, n, n - k).to_class_function())
}

/// Restriction rules χ_k↓ = (rk+1)χ_k and
/// φ_k↓ = (r(n+1)-(rk+1))φ_{k-1} + (rk+1)φ_k; returns the first failure.
pub fn branching_check(r: u32, n: usize) -> Option<String> {
    assert!(n >= 1, "branching needs n ≥ 1");
    let lower = foulkes_all(r, n - 1);
    for k in 0..=n {
        let rk1 = r as i64 * k as i64 + 1;
        let chi_down = chi_block(r, n, k).to_class_function().restrict().expect("n ≥ 1");
        if chi_down != chi_block(r, n - 1, k).to_class_function().scale_int(rk1) {
            return Some(format!("χ_{k} restricted from W({r},{n})"));
        }
        let phi_down = foulkes(r, n, k).to_class_function().restrict().expect("n ≥ 1");
        let mut want = ClassFunction::zero(r, n - 1);
        if k < n {
            want = &want + &lower[k].to_class_function().scale_int(rk1);
        }
        if k >= 1 {
            let c = r as i64 * (n as i64 + 1) - rk1;
            want = &want + &lower[k - 1].to_class_function().scale_int(c);
        }
        if phi_down != want {
            return Some(format!("φ_{k} restricted from W({r},{n})"));
        }
    }
    None
}

/// φ_k(e) = E_{r,n}(k) and Σ_k φ_k = regular character; returns the first failure.
pub fn properties_check(r: u32, n: usize) -> Option<String> {
    let phis = foulkes_all(r, n);
    let eul = eulerian_row(r, n);
    for (k, phi) in phis.iter().enumerate() {
        if phi.value(n) != &Cyclotomic::from_bigint(r, BigInt::from(eul[k])) {
            return Some(format!("φ_{k}(e) = {} but E_{{{r},{n}}}({k}) = {}", phi.value(n), eul[k]));
        }
    }
    let mut sum = ClassFunction::zero(r, n);
    for phi in &phis {
        sum = &sum + &phi.to_class_function();
    }
    (sum != ClassFunction::regular(r, n)).then(|| format!("Σ φ_k on W({r},{n}) is not the regular character"))
}

/// Frobenius-reciprocity form of the branching of multiplicities: for μ of n-1,
/// Σ_{addable cells} m_k(μ+cell) = (r(n+1)-(rk+1))·m_{k-1}(μ) + (rk+1)·m_k(μ).
/// Returns the first (μ, k) that fails.
pub fn summed_multiplicity_branching(r: u32, n: usize) -> Option<(Multipartition, usize)> {
    for mu in multipartitions(r as usize, n - 1) {
        let below = descent_distribution(&mu);
        let above: Vec<Vec<u64>> =
            mu.addable_cells().into_iter().map(|c| descent_distribution(&mu.add_cell(c))).collect();
        for k in 0..=n {
            let lhs: u64 = above.iter().map(|d| d[k]).sum();
            let rk1 = r as u64 * k as u64 + 1;
            let mut rhs = if k < n { rk1 * below[k] } else { 0 };
            if k >= 1 {
                rhs += (r as u64 * (n as u64 + 1) - rk1) * below[k - 1];
            }
            if lhs != rhs {
                return Some((mu, k));
            }
        }
    }
    None
}

/// The per-cell form m_k(λ) = (r(n+1)-(rk+1))·m_{k-1}(λ-□) + (rk+1)·m_k(λ-□)
/// for a shape λ of n; returns the first (λ, cell index, k, lhs, rhs) that fails.
pub fn unsummed_multiplicity_branching(r: u32, n: usize) -> Option<(Multipartition, usize, usize, u64, u64)> {
    for lambda in multipartitions(r as usize, n) {
        let top = descent_distribution(&lambda);
        for (ci, cell) in lambda.removable_cells().into_iter().enumerate() {
            let below = descent_distribution(&lambda.remove_cell(cell));
            for k in 0..=n {
                let rk1 = r as u64 * k as u64 + 1;
                let mut rhs = if k < n { rk1 * below[k] } else { 0 };
                if k >= 1 {
                    rhs += (r as u64 * (n as u64 + 1) - rk1) * below[k - 1];
                }
                if top[k] != rhs {
                    return Some((lambda, ci, k, top[k], rhs));
                }
            }
        }
    }
    None
}

/// First shape λ of n with m_k(conjugate λ) ≠ m_{n-k}(λ) for some k.
pub fn conjugate_descent_witness(r: u32, n: usize) -> Option<(Multipartition, usize)> {
    for lambda in multipartitions(r as usize, n) {
        let a = descent_distribution(&lambda.conjugate());
        let b = descent_distribution(&lambda);
        if let Some(k) = (0..=n).find(|&k| a[k] != b[n - k]) {
            return Some((lambda, k));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;

    #[test]
    fn calibration_uses_plain_twist() {
        for r in 1..=4 {
            assert_eq!(labeling_twist(r), 1, "r={r}");
        }
    }

    #[test]
    fn multiplicities_match_descent_counts() {
        for r in 1..=3 {
            for n in 0..=4 {
                for k in 0..=n {
                    foulkes_multiplicities(r, n, k).unwrap();
                }
            }
        }
        for n in 1..=4 {
            for k in 0..=n {
                for (label, m) in foulkes_multiplicities(2, n, k).unwrap() {
                    for j in 0..=n {
                        if label == Multipartition::hook_pair(2, n, j) {
                            assert_eq!(m, if j == k { binomial(n as u64, k as u64) as u64 } else { 0 });
                        }
                    }
                    if k == 0 {
                        assert_eq!(m, (label == Multipartition::trivial(2, n)) as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn duality_with_complement_boundary() {
        for r in 1..=3 {
            for n in 0..=4 {
                assert_eq!(duality_check(r, n, BoundaryConvention::Complement), None, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn branching_and_properties() {
        for r in 1..=3 {
            for n in 1..=5 {
                assert_eq!(branching_check(r, n), None);
                assert_eq!(properties_check(r, n), None);
                assert_eq!(summed_multiplicity_branching(r, n), None);
            }
        }
        assert_eq!(properties_check(2, 0), None);
    }

    #[test]
    fn unsummed_branching_fails_early() {
        let (lambda, _, k, lhs, rhs) = unsummed_multiplicity_branching(1, 2).unwrap();
        assert_eq!((lambda.to_string().as_str(), k, lhs, rhs), ("[[2]]", 1, 0, 1));
    }

    #[test]
    fn conjugate_descents_per_shape() {
        for n in 1..=5 {
            assert_eq!(conjugate_descent_witness(2, n), None);
        }
        let (lambda, _) = conjugate_descent_witness(3, 1).unwrap();
        assert_eq!(lambda.to_string(), "[[],[1],[]]");
    }
}
