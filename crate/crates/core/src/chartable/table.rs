use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use super::classfn::{classes, ClassFunction};
use super::symmetric::sn_character;
use crate::combinatorics::{multipartitions, Multipartition, Partition};
use crate::error::Result;
use crate::exact::{Cyclotomic, Rational};

/// Irreducible characters of W(r,n), one row per multipartition label.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub r: u32,
    pub n: usize,
    /// Row λ attaches ξ^{twist·i·(color sum)} to component i.
    pub twist: u32,
    pub labels: Vec<Multipartition>,
    pub rows: Vec<ClassFunction>,
    index: HashMap<Multipartition, usize>,
}

impl CharacterTable {
    pub fn row(&self, label: &Multipartition) -> &ClassFunction {
        &self.rows[self.index[label]]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multipartition, &ClassFunction)> {
        self.labels.iter().zip(&self.rows)
    }

    /// ⟨f, χ^λ⟩ for every label λ, in label order.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<(Multipartition, Cyclotomic)>> {
        self.iter().map(|(l, chi)| Ok((l.clone(), f.inner_product(chi)?))).collect()
    }

    pub fn recompose(&self, coeffs: &[(Multipartition, Cyclotomic)]) -> ClassFunction {
        let mut acc = ClassFunction::zero(self.r, self.n);
        for (l, c) in coeffs {
            if !c.is_zero() {
                acc = &acc + &self.row(l).scale(c);
            }
        }
        acc
    }
}

#[derive(Serialize)]
pub struct TableJson {
    pub r: u32,
    pub n: usize,
    pub twist: u32,
    pub classes: Vec<String>,
    pub class_sizes: Vec<String>,
    pub rows: Vec<(String, Vec<Cyclotomic>)>,
}

impl CharacterTable {
    pub fn to_json(&self) -> TableJson {
        let cls = classes(self.r, self.n);
        TableJson {
            r: self.r,
            n: self.n,
            twist: self.twist,
            classes: cls.types.iter().map(ToString::to_string).collect(),
            class_sizes: cls.sizes.iter().map(ToString::to_string).collect(),
            rows: self.iter().map(|(l, f)| (l.to_string(), f.values().to_vec())).collect(),
        }
    }
}

/// Cycles of one class grouped by (length, color), with multiplicities.
fn cycle_groups(ty: &Multipartition) -> Vec<(u32, usize, usize)> {
    let mut out = Vec::new();
    for (color, p) in ty.components().iter().enumerate() {
        for (len, count) in p.multiplicities() {
            out.push((len, color, count));
        }
    }
    out
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Deals the cycles of one class out to the components of a label.
struct Dealer<'a> {
    label: &'a Multipartition,
    groups: Vec<(u32, usize, usize)>,
    twist: usize,
    capacity: Vec<usize>,
    split: Vec<Vec<usize>>,
    acc: Vec<i128>,
}

impl Dealer<'_> {
    fn group(&mut self, g: usize) {
        if g == self.groups.len() {
            if self.capacity.iter().all(|&c| c == 0) {
                self.record();
            }
            return;
        }
        let count = self.groups[g].2;
        self.place(g, 0, count);
    }

    /// Puts some of the `left` remaining cycles of group g into component i.
    fn place(&mut self, g: usize, i: usize, left: usize) {
        let len = self.groups[g].0 as usize;
        let last = i + 1 == self.capacity.len();
        let range = if last { left..=left } else { 0..=left };
        for a in range {
            if a * len > self.capacity[i] {
                break;
            }
            self.capacity[i] -= a * len;
            self.split[g][i] = a;
            if last {
                self.group(g + 1);
            } else {
                self.place(g, i + 1, left - a);
            }
            self.capacity[i] += a * len;
            self.split[g][i] = 0;
        }
    }

    fn record(&mut self) {
        let mut coeff: i128 = 1;
        let mut phase = 0usize;
        for (i, comp) in self.label.components().iter().enumerate() {
            let mut lens = Vec::new();
            for (k, &(len, color, _)) in self.groups.iter().enumerate() {
                let a = self.split[k][i];
                lens.extend(std::iter::repeat_n(len, a));
                phase += self.twist * i * color * a;
            }
            coeff *= sn_character(comp, &Partition::from_unsorted(lens)) as i128;
            if coeff == 0 {
                return;
            }
        }
        // |C_μ| / |C_μ ∩ subgroup class| reduces to a product of multinomials
        for (k, &(_, _, count)) in self.groups.iter().enumerate() {
            coeff *= factorial(count) / self.split[k].iter().map(|&a| factorial(a)).product::<i128>();
        }
        let r = self.acc.len();
        self.acc[phase % r] += coeff;
    }
}

/// Value of the row `label` on class `ty`, as the induced character from
/// Π_i W(r, |λ^(i)|).
fn character_value(label: &Multipartition, ty: &Multipartition, twist: u32) -> Cyclotomic {
    let r = label.r();
    let groups = cycle_groups(ty);
    let mut dealer = Dealer {
        label,
        twist: twist as usize,
        capacity: label.components().iter().map(Partition::size).collect(),
        split: vec![vec![0; r]; groups.len()],
        groups,
        acc: vec![0; r],
    };
    dealer.group(0);
    let coeffs = dealer.acc.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect();
    Cyclotomic::from_power_coeffs(r as u32, coeffs)
}

type TableCache = Mutex<HashMap<(u32, usize, u32), Arc<CharacterTable>>>;

/// The table with component i twisted by ξ^{twist·i·(color sum)}; `twist`
/// must be a unit modulo r.
pub fn irreducible_table_with_twist(r: u32, n: usize, twist: u32) -> Arc<CharacterTable> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (r, n, twist % r.max(1));
    if let Some(t) = cache.lock().expect("table cache poisoned").get(&key) {
        return Arc::clone(t);
    }
    let labels = multipartitions(r as usize, n);
    let rows: Vec<ClassFunction> =
        labels.iter().map(|l| ClassFunction::from_fn(r, n, |ty| character_value(l, ty, key.2))).collect();
    let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let table = Arc::new(CharacterTable { r, n, twist: key.2, labels, rows, index });
    cache.lock().expect("table cache poisoned").insert(key, Arc::clone(&table));
    table
}

/// The table under the labeling fixed by [`crate::foulkes::labeling_twist`].
pub fn irreducible_table(r: u32, n: usize) -> Arc<CharacterTable> {
    irreducible_table_with_twist(r, n, crate::foulkes::labeling_twist(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{partitions, standard_tableaux};
    use crate::exact::root_power;
    use crate::wreath::centralizer_order;

    #[test]
    fn r_one_is_symmetric_table() {
        for n in 1..=5 {
            let t = irreducible_table_with_twist(1, n, 1);
            for l in partitions(n) {
                for mu in partitions(n) {
                    let ml = Multipartition::new(vec![l.clone()]);
                    let mm = Multipartition::new(vec![mu.clone()]);
                    assert_eq!(t.row(&ml).value(&mm), &Cyclotomic::from_int(1, sn_character(&l, &mu)));
                }
            }
        }
    }

    #[test]
    fn linear_characters_of_cyclic_groups() {
        let t = irreducible_table_with_twist(2, 1, 1);
        let a: Multipartition = "[[1],[]]".parse().unwrap();
        let b: Multipartition = "[[],[1]]".parse().unwrap();
        assert_eq!(t.row(&a).values(), &[Cyclotomic::one(2), Cyclotomic::one(2)]);
        assert_eq!(t.row(&b).values(), &[Cyclotomic::one(2), Cyclotomic::from_int(2, -1)]);
        let t3 = irreducible_table_with_twist(3, 1, 1);
        for (i, l) in multipartitions(3, 1).iter().enumerate() {
            let want: Vec<_> = (0..3).map(|c| root_power(3, (i * c) as i64)).collect();
            assert_eq!(t3.row(l).values(), want.as_slice(), "{l}");
        }
    }

    #[test]
    fn orthogonality_and_degrees() {
        for r in 1..=3 {
            for n in 0..=4 {
                for twist in (1..r.max(2)).filter(|u| num_integer::gcd(*u, r.max(1)) == 1 || r == 1) {
                    let t = irreducible_table_with_twist(r, n, twist);
                    let mut sum_sq = 0u128;
                    for (i, (l, chi)) in t.iter().enumerate() {
                        let dim = standard_tableaux(l).len() as i64;
                        assert_eq!(chi.at_identity(), &Cyclotomic::from_int(r, dim));
                        sum_sq += (dim * dim) as u128;
                        assert!(chi.values().iter().all(Cyclotomic::is_algebraic_integer));
                        for (j, psi) in t.rows.iter().enumerate() {
                            let ip = chi.inner_product(psi).unwrap();
                            assert_eq!(ip, Cyclotomic::from_int(r, (i == j) as i64), "r={r} n={n} {l}");
                        }
                    }
                    assert_eq!(sum_sq, crate::wreath::group_order(r, n));
                    let cls = classes(r, n);
                    for (a, mu) in cls.types.iter().enumerate() {
                        for (b, _) in cls.types.iter().enumerate() {
                            let mut s = Cyclotomic::zero(r);
                            for chi in &t.rows {
                                s += &(&chi.values()[a] * &chi.values()[b].conjugate());
                            }
                            let want = if a == b { centralizer_order(mu) as i64 } else { 0 };
                            assert_eq!(s, Cyclotomic::from_int(r, want));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn branching_over_removable_cells() {
        for r in 1..=3 {
            for n in 1..=4 {
                let t = irreducible_table_with_twist(r, n, 1);
                let down = irreducible_table_with_twist(r, n - 1, 1);
                for (l, chi) in t.iter() {
                    let mut want = ClassFunction::zero(r, n - 1);
                    for cell in l.removable_cells() {
                        want = &want + down.row(&l.remove_cell(cell));
                    }
                    assert_eq!(chi.restrict().unwrap(), want, "{l}");
                }
            }
        }
    }

    #[test]
    fn decomposition_round_trip() {
        let t = irreducible_table_with_twist(3, 3, 1);
        let reg = ClassFunction::regular(3, 3);
        let coeffs = t.decompose(&reg).unwrap();
        for (l, c) in &coeffs {
            assert_eq!(c, &Cyclotomic::from_int(3, standard_tableaux(l).len() as i64));
        }
        assert_eq!(t.recompose(&coeffs), reg);
        let f = &t.rows[1] + &t.rows[4];
        let g = &t.rows[2] - &t.rows[4];
        let df = t.decompose(&f).unwrap();
        let dg = t.decompose(&g).unwrap();
        let dfg = t.decompose(&(&f + &g)).unwrap();
        for ((a, b), c) in df.iter().zip(&dg).zip(&dfg) {
            assert_eq!(&(&a.1 + &b.1), &c.1);
        }
    }
}
