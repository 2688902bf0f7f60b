use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::combinatorics::Partition;

type Cache = Mutex<HashMap<(Partition, Partition), i64>>;

/// χ^λ of the symmetric group on the class of cycle type μ, by the
/// Murnaghan–Nakayama rule on beta-sets.
pub fn sn_character(shape: &Partition, cycles: &Partition) -> i64 {
    assert_eq!(shape.size(), cycles.size(), "shape and cycle type must have the same size");
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (shape.clone(), cycles.clone());
    if let Some(&v) = cache.lock().expect("character cache poisoned").get(&key) {
        return v;
    }
    let value = rim_hook_sum(shape, cycles);
    cache.lock().expect("character cache poisoned").insert(key, value);
    value
}

fn rim_hook_sum(shape: &Partition, cycles: &Partition) -> i64 {
    let Some((&k, rest)) = cycles.parts().split_first() else {
        return 1;
    };
    let rest = Partition::from_unsorted(rest.to_vec());
    let len = shape.len();
    // beta[i] = λ_i + (len - 1 - i), strictly decreasing
    let beta: Vec<u32> = shape.parts().iter().enumerate().map(|(i, &p)| p + (len - 1 - i) as u32).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let Some(target) = b.checked_sub(k) else {
            continue;
        };
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = next.iter().enumerate().map(|(j, &x)| x - (len - 1 - j) as u32).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * sn_character(&Partition::from_unsorted(parts), &rest);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{partitions, standard_tableaux, Multipartition};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign() {
        for n in 1..=6 {
            for mu in partitions(n) {
                assert_eq!(sn_character(&p(&[n as u32]), &mu), 1);
                let sign = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(sn_character(&Partition::from_unsorted(vec![1; n]), &mu), sign);
            }
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[3])), -1);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[2, 1])), 0);
        assert_eq!(sn_character(&p(&[2, 2]), &p(&[2, 2])), 2);
        assert_eq!(sn_character(&p(&[3, 1]), &p(&[2, 2])), -1);
        assert_eq!(sn_character(&Partition::empty(), &Partition::empty()), 1);
    }

    #[test]
    fn degrees_and_orthogonality() {
        for n in 1..=6 {
            let ps = partitions(n);
            let z = |mu: &Partition| -> i64 {
                mu.multiplicities()
                    .iter()
                    .map(|&(k, a)| (k as i64).pow(a as u32) * (1..=a as i64).product::<i64>())
                    .product()
            };
            for l in &ps {
                let dim = standard_tableaux(&Multipartition::new(vec![l.clone()])).len() as i64;
                assert_eq!(sn_character(l, &Partition::from_unsorted(vec![1; n])), dim);
                for m in &ps {
                    // column orthogonality, scaled by centralizer orders
                    let s: i64 = ps.iter().map(|x| sn_character(x, l) * sn_character(x, m)).sum();
                    assert_eq!(s, if l == m { z(l) } else { 0 });
                }
            }
        }
    }
}
