use serde::Serialize;

use super::partition::{Multipartition, Partition};
use super::tableau::{standard_tableaux, BoundaryConvention};

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `out[k]` is the number of standard tableaux of shape λ with k descents.
pub fn descent_distribution(shape: &Multipartition) -> Vec<u64> {
    let mut out = vec![0; shape.size() + 1];
    for t in standard_tableaux(shape).iter() {
        out[t.descents()] += 1;
    }
    out
}

/// `out[k]` is the number of standard tableaux of shape λ with k column descents.
pub fn column_descent_distribution(shape: &Multipartition, conv: BoundaryConvention) -> Vec<u64> {
    let mut out = vec![0; shape.size() + 1];
    for t in standard_tableaux(shape).iter() {
        out[t.column_descent_set(conv).len()] += 1;
    }
    out
}

pub fn m_count(shape: &Multipartition, k: usize) -> u64 {
    descent_distribution(shape).get(k).copied().unwrap_or(0)
}

pub fn mbar_count(shape: &Multipartition, k: usize, conv: BoundaryConvention) -> u64 {
    column_descent_distribution(shape, conv).get(k).copied().unwrap_or(0)
}

/// Fillings of one partition from an alphabet of `size` letters. Rows weakly
/// increase and columns strictly increase, or the reverse when `strict_rows`.
fn fillings(p: &Partition, size: u32, strict_rows: bool) -> u128 {
    let cells: Vec<(usize, usize)> =
        p.parts().iter().enumerate().flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j))).collect();
    if cells.is_empty() {
        return 1;
    }
    if size == 0 {
        return 0;
    }
    let mut grid: Vec<Vec<u32>> = p.parts().iter().map(|&len| vec![0; len as usize]).collect();
    fn go(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, size: u32, strict_rows: bool) -> u128 {
        let Some(&(i, j)) = cells.get(idx) else {
            return 1;
        };
        let (row_step, col_step) = if strict_rows { (1, 0) } else { (0, 1) };
        let mut lo = 1;
        if j > 0 {
            lo = lo.max(grid[i][j - 1] + row_step);
        }
        if i > 0 {
            lo = lo.max(grid[i - 1][j] + col_step);
        }
        let mut total = 0;
        for v in lo..=size {
            grid[i][j] = v;
            total += go(idx + 1, cells, grid, size, strict_rows);
        }
        total
    }
    go(0, &cells, &mut grid, size, strict_rows)
}

fn alphabet(component: usize, k: usize) -> u32 {
    if component == 0 {
        k as u32 + 1
    } else {
        k as u32
    }
}

/// s_k(λ): row-semistandard fillings, component 0 over k+1 letters, the rest over k.
pub fn row_semistandard_count(shape: &Multipartition, k: usize) -> u128 {
    shape.components().iter().enumerate().map(|(i, p)| fillings(p, alphabet(i, k), false)).product()
}

/// c_k(λ): column-semistandard fillings with the same alphabets as s_k.
pub fn column_semistandard_count(shape: &Multipartition, k: usize) -> u128 {
    shape.components().iter().enumerate().map(|(i, p)| fillings(p, alphabet(i, k), true)).product()
}

/// Component lengths fit the alphabets: at most k+1 rows in component 0, k elsewhere.
pub fn in_row_support(shape: &Multipartition, k: usize) -> bool {
    shape.components().iter().enumerate().all(|(i, p)| p.len() as u32 <= alphabet(i, k))
}

/// Same bound on column counts.
pub fn in_column_support(shape: &Multipartition, k: usize) -> bool {
    shape.components().iter().enumerate().all(|(i, p)| p.conjugate().len() as u32 <= alphabet(i, k))
}

/// Both candidate binomial transforms of the descent counts, evaluated against s_k.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TransformCheck {
    pub count: u128,
    /// Σ_j C(n+1, j)·m_{k-j}(λ).
    pub printed: u128,
    /// Σ_j C(n+j, j)·m_{k-j}(λ).
    pub corrected: u128,
}

impl TransformCheck {
    pub fn printed_holds(&self) -> bool {
        self.printed == self.count
    }

    pub fn corrected_holds(&self) -> bool {
        self.corrected == self.count
    }
}

fn transforms(dist: &[u64], n: usize, k: usize) -> (u128, u128) {
    let mut printed = 0;
    let mut corrected = 0;
    for j in 0..=k {
        let m = dist.get(k - j).copied().unwrap_or(0) as u128;
        printed += binomial(n as u64 + 1, j as u64) * m;
        corrected += binomial((n + j) as u64, j as u64) * m;
    }
    (printed, corrected)
}

pub fn binomial_transform_check(shape: &Multipartition, k: usize) -> TransformCheck {
    let (printed, corrected) = transforms(&descent_distribution(shape), shape.size(), k);
    TransformCheck { count: row_semistandard_count(shape, k), printed, corrected }
}

/// The column analogue: c_k(λ) against three transforms of column-descent
/// counts. `printed` is Σ_j (-1)^j C(n+1, j)·m̄_{k-j}(λ); `direct` is
/// Σ_j C(n+j, j)·m̄_{k-j}(λ); `reversed` is the same sum taken over the shape
/// with its components in reverse order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ColumnTransformCheck {
    pub count: u128,
    pub printed: i128,
    pub direct: u128,
    pub reversed: u128,
}

pub fn column_transform_check(shape: &Multipartition, k: usize, conv: BoundaryConvention) -> ColumnTransformCheck {
    let n = shape.size();
    let dist = column_descent_distribution(shape, conv);
    let printed = (0..=k)
        .map(|j| {
            let m = dist.get(k - j).copied().unwrap_or(0) as i128;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * binomial(n as u64 + 1, j as u64) as i128 * m
        })
        .sum();
    let (_, direct) = transforms(&dist, n, k);
    let (_, reversed) = transforms(&column_descent_distribution(&shape.reversed(), conv), n, k);
    ColumnTransformCheck { count: column_semistandard_count(shape, k), printed, direct, reversed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::multipartitions;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn semistandard_single_rows_and_columns() {
        for r in 1..=3 {
            for n in 0..=5 {
                for k in 0..=4 {
                    let row = Multipartition::trivial(r, n);
                    assert_eq!(row_semistandard_count(&row, k), binomial((n + k) as u64, n as u64));
                    let col = row.conjugate_componentwise();
                    assert_eq!(column_semistandard_count(&col, k), binomial((n + k) as u64, n as u64));
                }
            }
        }
    }

    #[test]
    fn zero_letters_only_fill_one_row() {
        for r in 1..=3 {
            for n in 1..=4 {
                for l in multipartitions(r, n) {
                    let trivial = l == Multipartition::trivial(r, n);
                    assert_eq!(row_semistandard_count(&l, 0), u128::from(trivial));
                    let column = l == Multipartition::trivial(r, n).conjugate_componentwise();
                    assert_eq!(column_semistandard_count(&l, 0), u128::from(column));
                }
            }
        }
    }

    #[test]
    fn worked_example_is_fillable_with_two_colours() {
        assert!(row_semistandard_count(&mp("[[3,2,2],[2,1]]"), 2) >= 1);
        assert!(column_semistandard_count(&mp("[[3,2,2],[2,1]]"), 2) >= 1);
        assert_eq!(column_semistandard_count(&mp("[[3,2,2],[2,1]]"), 1), 0);
    }

    #[test]
    fn counts_vanish_exactly_off_support() {
        for r in 1..=3 {
            for n in 0..=4 {
                for l in multipartitions(r, n) {
                    for k in 0..=3 {
                        assert_eq!(row_semistandard_count(&l, k) > 0, in_row_support(&l, k));
                        assert_eq!(column_semistandard_count(&l, k) > 0, in_column_support(&l, k));
                        // componentwise transposition swaps the two counts
                        let t = l.conjugate_componentwise();
                        assert_eq!(column_semistandard_count(&l, k), row_semistandard_count(&t, k));
                        assert_eq!(in_column_support(&l, k), in_row_support(&t, k));
                    }
                }
            }
        }
    }

    #[test]
    fn reversing_conjugation_breaks_the_count_swap() {
        let l = mp("[[1],[]]");
        assert_eq!(column_semistandard_count(&l, 1), 2);
        assert_eq!(row_semistandard_count(&l.conjugate(), 1), 1);
    }

    #[test]
    fn descent_transform() {
        let c = binomial_transform_check(&mp("[[1],[]]"), 2);
        assert_eq!(c.count, 3);
        assert_eq!(c.corrected, 3);
        assert_eq!(c.printed, 1);
        for r in 1..=3 {
            for n in 0..=4 {
                for l in multipartitions(r, n) {
                    for k in 0..=3 {
                        let c = binomial_transform_check(&l, k);
                        assert!(c.corrected_holds(), "{l} k={k}");
                        if k == 0 {
                            assert!(c.printed_holds());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn column_transform_needs_reversed_components() {
        let c = column_transform_check(&mp("[[1],[]]"), 1, BoundaryConvention::Complement);
        assert_eq!((c.count, c.direct, c.reversed), (2, 1, 2));
        for r in 1..=3 {
            for n in 0..=4 {
                for l in multipartitions(r, n) {
                    for k in 0..=3 {
                        let c = column_transform_check(&l, k, BoundaryConvention::Sentinel);
                        assert_eq!(c.reversed, c.count, "{l} k={k}");
                        if r == 2 {
                            assert_eq!(column_transform_check(&l, k, BoundaryConvention::Complement), c);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complement_column_counts_mirror_descents() {
        for r in 1..=3 {
            for n in 0..=5 {
                for l in multipartitions(r, n) {
                    let d = descent_distribution(&l);
                    let c = column_descent_distribution(&l, BoundaryConvention::Complement);
                    for k in 0..=n {
                        assert_eq!(c[k], d[n - k]);
                    }
                }
            }
        }
    }

    #[test]
    fn hook_pairs_concentrate_descents() {
        for n in 0..=5 {
            for k in 0..=n {
                let l = Multipartition::hook_pair(2, n, k);
                for j in 0..=n {
                    let want = if j == k { binomial(n as u64, k as u64) as u64 } else { 0 };
                    assert_eq!(m_count(&l, j), want);
                }
            }
        }
    }
}
