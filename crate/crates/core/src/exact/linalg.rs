use super::Cyclotomic;
use crate::error::{Error, Result};

/// Dense row-major matrix over Q(ξ_r).
pub type Matrix = Vec<Vec<Cyclotomic>>;

struct Echelon {
    rows: Matrix,
    pivots: Vec<usize>,
}

/// Gauss–Jordan reduction on `cols` leading columns; every entry stays canonical.
fn reduce(mut m: Matrix, cols: usize, full: bool) -> Echelon {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if p != row {
            m.swap(p, row);
        }
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for x in m[row].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        let pivot_row = m[row].clone();
        let (upper, lower) = m.split_at_mut(row);
        let others = upper.iter_mut().filter(|_| full).chain(lower.iter_mut().skip(1));
        for other in others {
            if other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for j in col..other.len() {
                if !pivot_row[j].is_zero() {
                    let t = &f * &pivot_row[j];
                    other[j] -= &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon { rows: m, pivots }
}

pub fn exact_rank(a: &Matrix) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    reduce(a.clone(), cols, false).pivots.len()
}

/// Solves A·x = b exactly; for underdetermined systems free variables are set to 0.
pub fn exact_solve(a: &Matrix, b: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
    if a.len() != b.len() {
        return Err(Error::Mismatch(format!("{} rows but right-hand side of length {}", a.len(), b.len())));
    }
    let Some(order) = b.first().map(Cyclotomic::order) else {
        return Ok(Vec::new());
    };
    let cols = a[0].len();
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let ech = reduce(aug, cols, true);
    // a pivot-free row with nonzero right-hand side is inconsistent
    if ech.rows[ech.pivots.len()..].iter().any(|row| !row[cols].is_zero()) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![Cyclotomic::zero(order); cols];
    for (i, &c) in ech.pivots.iter().enumerate() {
        x[c] = ech.rows[i][cols].clone();
    }
    if mat_vec(a, &x) != b {
        return Err(Error::NoSolution);
    }
    Ok(x)
}

pub fn determinant(a: &Matrix) -> Cyclotomic {
    let n = a.len();
    assert!(n > 0 && a.iter().all(|r| r.len() == n), "determinant needs a nonempty square matrix");
    let order = a[0][0].order();
    // elimination without normalizing: track pivots
    let mut m = a.clone();
    let mut det = Cyclotomic::one(order);
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Cyclotomic::zero(order);
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().expect("pivot is nonzero");
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= &t;
            }
        }
    }
    det
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let order = a[0][0].order();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Cyclotomic::one(order) } else { Cyclotomic::zero(order) }));
            r
        })
        .collect();
    let ech = reduce(aug, n, true);
    (ech.pivots.len() == n).then(|| ech.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(a: &Matrix, x: &[Cyclotomic]) -> Vec<Cyclotomic> {
    a.iter()
        .map(|row| {
            let mut acc = Cyclotomic::zero(x[0].order());
            for (aij, xj) in row.iter().zip(x) {
                if !aij.is_zero() && !xj.is_zero() {
                    acc += &(aij * xj);
                }
            }
            acc
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Cyclotomic::zero(row[0].order());
                    for (k, aik) in row.iter().enumerate() {
                        if !aik.is_zero() && !b[k][j].is_zero() {
                            acc += &(aik * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::root_power;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int_matrix(r: u32, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|row| row.iter().map(|&v| Cyclotomic::from_int(r, v)).collect()).collect()
    }

    fn ints(r: u32, v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&x| Cyclotomic::from_int(r, x)).collect()
    }

    #[test]
    fn identity_solves_to_rhs() {
        let id = int_matrix(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = vec![root_power(3, 1), Cyclotomic::from_int(3, 4), root_power(3, 2)];
        assert_eq!(exact_solve(&id, &b).unwrap(), b);
        assert_eq!(exact_rank(&id), 3);
    }

    #[test]
    fn small_system() {
        let a = int_matrix(2, &[&[1, 1], &[1, -1]]);
        assert_eq!(exact_solve(&a, &ints(2, &[2, 0])).unwrap(), ints(2, &[1, 1]));
    }

    #[test]
    fn inconsistent_system() {
        let a = int_matrix(1, &[&[1, 1], &[2, 2]]);
        assert_eq!(exact_solve(&a, &ints(1, &[1, 3])), Err(Error::NoSolution));
        assert_eq!(exact_rank(&a), 1);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(exact_rank(&int_matrix(2, &[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank(&Vec::new()), 0);
    }

    #[test]
    fn cyclotomic_rank() {
        // det [[1, ξ], [ξ², 1]] = 1 - ξ³ = 0 in Q(ξ_3)
        let z = root_power(3, 1);
        let m = vec![vec![Cyclotomic::one(3), z.clone()], vec![root_power(3, 2), Cyclotomic::one(3)]];
        assert!(determinant(&m).is_zero());
        assert_eq!(exact_rank(&m), 1);
        // [[1, ξ], [ξ, 1]] has det 1 - ξ² ≠ 0
        let m2 = vec![vec![Cyclotomic::one(3), z.clone()], vec![z.clone(), Cyclotomic::one(3)]];
        assert_eq!(determinant(&m2), &Cyclotomic::one(3) - &root_power(3, 2));
        assert_eq!(exact_rank(&m2), 2);
    }

    #[test]
    fn random_rational_system_recovers_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let m: Matrix = loop {
                let m: Matrix = (0..10)
                    .map(|_| (0..10).map(|_| Cyclotomic::from_int(1, rng.gen_range(-5..=5))).collect())
                    .collect();
                if !determinant(&m).is_zero() {
                    break m;
                }
            };
            let v = ints(1, &(0..10).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>());
            let b = mat_vec(&m, &v);
            assert_eq!(exact_solve(&m, &b).unwrap(), v);
            let inv = inverse(&m).unwrap();
            assert_eq!(mat_vec(&inv, &b), v);
        }
    }

    #[test]
    fn underdetermined_system_is_verified() {
        let a = int_matrix(1, &[&[1, 2, 3]]);
        let b = ints(1, &[6]);
        let x = exact_solve(&a, &b).unwrap();
        assert_eq!(mat_vec(&a, &x), b);
    }
}
