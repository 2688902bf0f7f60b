use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use super::partition::{Cell, Multipartition, Partition};
use crate::error::{Error, Result};

/// How a column descent at the last entry n is decided.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum BoundaryConvention {
    /// n is a column descent iff it is not a descent, i.e. its component is 0.
    #[default]
    Complement,
    /// n is a column descent iff its component is below r-1.
    Sentinel,
}

/// A standard filling of a multipartition; `cells[i]` holds entry i+1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StandardTableau {
    shape: Multipartition,
    cells: Vec<Cell>,
}

impl StandardTableau {
    /// Builds a tableau from per-component row lists of entries.
    pub fn from_rows(rows: &[Vec<Vec<u32>>]) -> Result<Self> {
        let n: usize = rows.iter().flatten().map(Vec::len).sum();
        let shape = Multipartition::new(
            rows.iter()
                .map(|comp| Partition::new(comp.iter().map(|row| row.len() as u32).collect()))
                .collect::<Result<_>>()?,
        );
        let mut cells: Vec<Option<Cell>> = vec![None; n];
        for (c, comp) in rows.iter().enumerate() {
            for (i, row) in comp.iter().enumerate() {
                for (j, &e) in row.iter().enumerate() {
                    let slot = (e as usize)
                        .checked_sub(1)
                        .and_then(|k| cells.get_mut(k))
                        .ok_or_else(|| Error::InvalidArgument(format!("entry {e} outside 1..={n}")))?;
                    if slot.replace(Cell { component: c, row: i as u32 + 1, col: j as u32 + 1 }).is_some() {
                        return Err(Error::InvalidArgument(format!("entry {e} repeated")));
                    }
                    let left = j.checked_sub(1).map(|jj| row[jj]);
                    let above = i.checked_sub(1).and_then(|ii| comp[ii].get(j).copied());
                    if left.is_some_and(|l| l >= e) || above.is_some_and(|a| a >= e) {
                        return Err(Error::InvalidArgument(format!("entry {e} breaks row or column order")));
                    }
                }
            }
        }
        let cells = cells.into_iter().collect::<Option<Vec<_>>>().expect("every entry placed");
        Ok(StandardTableau { shape, cells })
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Cell of entry i (1-based).
    pub fn cell(&self, i: usize) -> Cell {
        self.cells[i - 1]
    }

    /// Component of entry i (1-based).
    pub fn component(&self, i: usize) -> usize {
        self.cells[i - 1].component
    }

    pub fn rows(&self) -> Vec<Vec<Vec<u32>>> {
        let mut out: Vec<Vec<Vec<u32>>> = self
            .shape
            .components()
            .iter()
            .map(|p| p.parts().iter().map(|&len| vec![0; len as usize]).collect())
            .collect();
        for (k, c) in self.cells.iter().enumerate() {
            out[c.component][c.row as usize - 1][c.col as usize - 1] = k as u32 + 1;
        }
        out
    }

    pub fn descent_set(&self) -> BTreeSet<usize> {
        let n = self.size();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            let a = self.cell(i);
            let is_descent = if i == n {
                a.component > 0
            } else {
                let b = self.cell(i + 1);
                (a.component == b.component && b.row > a.row) || a.component > b.component
            };
            if is_descent {
                out.insert(i);
            }
        }
        out
    }

    pub fn column_descent_set(&self, conv: BoundaryConvention) -> BTreeSet<usize> {
        let n = self.size();
        let r = self.shape.r();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            let a = self.cell(i);
            let is_descent = if i == n {
                match conv {
                    BoundaryConvention::Complement => a.component == 0,
                    BoundaryConvention::Sentinel => a.component + 1 < r,
                }
            } else {
                let b = self.cell(i + 1);
                (a.component == b.component && b.col > a.col) || a.component < b.component
            };
            if is_descent {
                out.insert(i);
            }
        }
        out
    }

    pub fn descents(&self) -> usize {
        self.descent_set().len()
    }

    /// Transposes each component and reverses their order, matching
    /// [`Multipartition::conjugate`].
    pub fn conjugate(&self) -> Self {
        let r = self.shape.r();
        let cells =
            self.cells.iter().map(|c| Cell { component: r - 1 - c.component, row: c.col, col: c.row }).collect();
        StandardTableau { shape: self.shape.conjugate(), cells }
    }

    /// Transposes each component in place.
    pub fn conjugate_componentwise(&self) -> Self {
        let cells = self.cells.iter().map(|c| Cell { component: c.component, row: c.col, col: c.row }).collect();
        StandardTableau { shape: self.shape.conjugate_componentwise(), cells }
    }
}

impl Serialize for StandardTableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

type TableauCache = Mutex<HashMap<Multipartition, Arc<Vec<StandardTableau>>>>;

/// All standard tableaux of shape λ. Entry n goes into each removable cell
/// in [`Multipartition::removable_cells`] order, recursively.
pub fn standard_tableaux(shape: &Multipartition) -> Arc<Vec<StandardTableau>> {
    static CACHE: OnceLock<TableauCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("tableau cache poisoned").get(shape) {
        return Arc::clone(hit);
    }
    let result = if shape.size() == 0 {
        vec![StandardTableau { shape: shape.clone(), cells: Vec::new() }]
    } else {
        let mut out = Vec::new();
        for cell in shape.removable_cells() {
            for t in standard_tableaux(&shape.remove_cell(cell)).iter() {
                let mut cells = t.cells.clone();
                cells.push(cell);
                out.push(StandardTableau { shape: shape.clone(), cells });
            }
        }
        out
    };
    let result = Arc::new(result);
    cache.lock().expect("tableau cache poisoned").insert(shape.clone(), Arc::clone(&result));
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{binomial, multipartitions};

    fn worked_example() -> StandardTableau {
        StandardTableau::from_rows(&[vec![vec![1, 3, 5], vec![6, 7], vec![8, 9]], vec![vec![2, 4], vec![10]]]).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn worked_example_statistics() {
        let t = worked_example();
        assert_eq!(t.descent_set(), set(&[2, 4, 5, 7, 10]));
        assert_eq!(t.column_descent_set(BoundaryConvention::Complement), set(&[1, 3, 6, 8, 9]));
        assert_eq!(t.column_descent_set(BoundaryConvention::Sentinel), set(&[1, 3, 6, 8, 9]));
        assert_eq!(t.shape().to_string(), "[[3,2,2],[2,1]]");
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[[1,3,5],[6,7],[8,9]],[[2,4],[10]]]");
    }

    #[test]
    fn rejects_bad_fillings() {
        assert!(StandardTableau::from_rows(&[vec![vec![2, 1]]]).is_err());
        assert!(StandardTableau::from_rows(&[vec![vec![1, 2], vec![1]]]).is_err());
        assert!(StandardTableau::from_rows(&[vec![vec![1, 3]]]).is_err());
        assert!(StandardTableau::from_rows(&[vec![vec![1, 2], vec![3]]]).is_ok());
    }

    #[test]
    fn small_shapes() {
        let row: Multipartition = "[[4],[]]".parse().unwrap();
        let ts = standard_tableaux(&row);
        assert_eq!(ts.len(), 1);
        assert!(ts[0].descent_set().is_empty());
        assert_eq!(standard_tableaux(&"[[1],[1]]".parse().unwrap()).len(), 2);
        let single: Multipartition = "[[],[1],[]]".parse().unwrap();
        assert_eq!(standard_tableaux(&single)[0].descent_set(), set(&[1]));
        let zero: Multipartition = "[[1],[]]".parse().unwrap();
        assert_eq!(standard_tableaux(&zero)[0].column_descent_set(BoundaryConvention::Complement), set(&[1]));
    }

    #[test]
    fn hook_pairs_have_binomial_many_tableaux() {
        for r in 2..=3 {
            for n in 0..=6 {
                for k in 0..=n {
                    let ts = standard_tableaux(&Multipartition::hook_pair(r, n, k));
                    assert_eq!(ts.len() as u128, binomial(n as u64, k as u64));
                    assert!(ts.iter().all(|t| t.descents() == k));
                }
            }
        }
    }

    #[test]
    fn wedderburn_count() {
        let mut fact = 1u64;
        for n in 0..=5u64 {
            if n > 0 {
                fact *= n;
            }
            for r in 1..=3u64 {
                let total: u64 = multipartitions(r as usize, n as usize)
                    .iter()
                    .map(|l| (standard_tableaux(l).len() as u64).pow(2))
                    .sum();
                assert_eq!(total, r.pow(n as u32) * fact, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn descents_and_column_descents_partition_under_complement() {
        for r in 1..=3 {
            for n in 1..=5 {
                for l in multipartitions(r, n) {
                    for t in standard_tableaux(&l).iter() {
                        let d = t.descent_set();
                        let c = t.column_descent_set(BoundaryConvention::Complement);
                        assert!(d.is_disjoint(&c));
                        assert_eq!(d.len() + c.len(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_tableau_swaps_statistics() {
        for r in 1..=3 {
            for n in 1..=5 {
                for l in multipartitions(r, n) {
                    for t in standard_tableaux(&l).iter() {
                        let ct = t.conjugate();
                        assert_eq!(ct.conjugate(), *t);
                        assert_eq!(t.descent_set(), ct.column_descent_set(BoundaryConvention::Sentinel));
                    }
                }
            }
        }
    }

    #[test]
    fn rows_round_trip() {
        for l in multipartitions(3, 4) {
            for t in standard_tableaux(&l).iter() {
                assert_eq!(StandardTableau::from_rows(&t.rows()).unwrap(), *t);
            }
        }
    }
}
