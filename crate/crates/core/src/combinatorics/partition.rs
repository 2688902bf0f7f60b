use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer partition stored as its weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("parts {parts:?} are not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("zero part inside a partition".into()));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row length, zero beyond the last row; rows are 1-based.
    pub fn row(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// Multiplicity a_k of each part size k, as (k, a_k) pairs.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((k, a)) if *k == p => *a += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// All partitions of n, in reverse-lexicographic order starting at (n).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// An r-tuple of partitions; component indices run over 0..r.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Multipartition {
    components: Vec<Partition>,
}

/// A cell of a multipartition diagram, with 1-based row and column.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Cell {
    pub component: usize,
    pub row: u32,
    pub col: u32,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "a multipartition needs at least one component");
        Multipartition { components }
    }

    /// `((n); ∅; …; ∅)`.
    pub fn trivial(r: usize, n: usize) -> Self {
        let mut comps = vec![Partition::empty(); r];
        comps[0] = Partition::from_unsorted(vec![n as u32]);
        Multipartition::new(comps)
    }

    /// `((n-k); (1^k); ∅; …)`, whose tableaux all have exactly k descents.
    pub fn hook_pair(r: usize, n: usize, k: usize) -> Self {
        assert!(r >= 2 && k <= n);
        let mut comps = vec![Partition::empty(); r];
        comps[0] = Partition::from_unsorted(vec![(n - k) as u32]);
        comps[1] = Partition::from_unsorted(vec![1; k]);
        Multipartition::new(comps)
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.components[i]
    }

    /// Component i of the result is the conjugate of component r-1-i.
    pub fn conjugate(&self) -> Self {
        Multipartition::new(self.components.iter().rev().map(Partition::conjugate).collect())
    }

    /// Conjugates every component in place, keeping component indices.
    pub fn conjugate_componentwise(&self) -> Self {
        Multipartition::new(self.components.iter().map(Partition::conjugate).collect())
    }

    pub fn reversed(&self) -> Self {
        Multipartition::new(self.components.iter().rev().cloned().collect())
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (c, p) in self.components.iter().enumerate() {
            for (i, &len) in p.parts().iter().enumerate() {
                for j in 1..=len {
                    out.push(Cell { component: c, row: i as u32 + 1, col: j });
                }
            }
        }
        out
    }

    pub fn removable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (c, p) in self.components.iter().enumerate() {
            for i in 1..=p.len() {
                if p.row(i) > p.row(i + 1) {
                    out.push(Cell { component: c, row: i as u32, col: p.row(i) });
                }
            }
        }
        out
    }

    pub fn addable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (c, p) in self.components.iter().enumerate() {
            for i in 1..=p.len() + 1 {
                if i == 1 || p.row(i - 1) > p.row(i) {
                    out.push(Cell { component: c, row: i as u32, col: p.row(i) + 1 });
                }
            }
        }
        out
    }

    pub fn remove_cell(&self, cell: Cell) -> Self {
        let mut comps = self.components.clone();
        let mut parts = comps[cell.component].parts().to_vec();
        parts[cell.row as usize - 1] -= 1;
        comps[cell.component] = Partition::from_unsorted(parts);
        Multipartition::new(comps)
    }

    pub fn add_cell(&self, cell: Cell) -> Self {
        let mut comps = self.components.clone();
        let mut parts = comps[cell.component].parts().to_vec();
        if cell.row as usize > parts.len() {
            parts.push(1);
        } else {
            parts[cell.row as usize - 1] += 1;
        }
        comps[cell.component] = Partition::from_unsorted(parts);
        Multipartition::new(comps)
    }
}

/// All r-multipartitions of n: component 0 takes sizes n, n-1, …, 0 and each
/// component runs through [`partitions`] in order.
pub fn multipartitions(r: usize, n: usize) -> Vec<Multipartition> {
    fn go(r: usize, rest: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if cur.len() + 1 == r {
            for p in partitions(rest) {
                cur.push(p);
                out.push(Multipartition::new(cur.clone()));
                cur.pop();
            }
            return;
        }
        for size in (0..=rest).rev() {
            for p in partitions(size) {
                cur.push(p);
                go(r, rest - size, cur, out);
                cur.pop();
            }
        }
    }
    assert!(r >= 1, "r must be positive");
    let mut out = Vec::new();
    go(r, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Multipartition {
    /// Text form `[[3,2,2],[2,1]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Multipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<Vec<u32>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("multipartition {s:?}: {e}")))?;
        if v.is_empty() {
            return Err(Error::Parse("multipartition needs at least one component".into()));
        }
        Ok(Multipartition::new(v.into_iter().map(Partition::new).collect::<Result<_>>()?))
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn count_partitions(n: usize) -> usize {
        // p(n) by the pentagonal-free recurrence over largest part
        let mut table = vec![vec![0usize; n + 1]; n + 1];
        for m in 0..=n {
            table[0][m] = 1;
        }
        for s in 1..=n {
            for m in 1..=n {
                table[s][m] = table[s][m - 1] + if s >= m { table[s - m][m] } else { 0 };
            }
        }
        table[n][n]
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
        for n in 0..=12 {
            assert_eq!(partitions(n).len(), count_partitions(n));
        }
        let p4: Vec<String> = partitions(4).iter().map(ToString::to_string).collect();
        assert_eq!(p4, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn multipartition_enumeration() {
        assert_eq!(multipartitions(1, 4).len(), 5);
        assert_eq!(multipartitions(3, 1).len(), 3);
        let m: Vec<String> = multipartitions(2, 2).iter().map(ToString::to_string).collect();
        assert_eq!(m, ["[[2],[]]", "[[1,1],[]]", "[[1],[1]]", "[[],[2]]", "[[],[1,1]]"]);
        // r-colored partition numbers
        let expect3 = [1, 3, 9, 22, 51, 108];
        for (n, &e) in expect3.iter().enumerate() {
            assert_eq!(multipartitions(3, n).len(), e);
        }
    }

    #[test]
    fn conjugation() {
        let p = Partition::new(vec![3, 2, 2]).unwrap();
        assert_eq!(p.conjugate(), Partition::new(vec![3, 3, 1]).unwrap());
        assert_eq!(Partition::new(vec![5]).unwrap().conjugate(), Partition::new(vec![1; 5]).unwrap());
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(mp("[[3,2,2],[2,1]]").conjugate(), mp("[[2,1],[3,3,1]]"));
        assert_eq!(mp("[[],[1],[]]").conjugate(), mp("[[],[1],[]]"));
        for r in 1..=3 {
            for n in 0..=5 {
                for l in multipartitions(r, n) {
                    assert_eq!(l.conjugate().conjugate(), l);
                }
            }
        }
    }

    #[test]
    fn addable_and_removable() {
        let l = mp("[[3,2,2],[2,1]]");
        assert_eq!(l.removable_cells().len(), 4);
        assert_eq!(l.addable_cells().len(), 6);
        let empty = mp("[[],[],[]]");
        assert_eq!(empty.removable_cells().len(), 0);
        assert_eq!(empty.addable_cells().len(), 3);
        let row = Multipartition::trivial(3, 4);
        assert_eq!(row.removable_cells(), vec![Cell { component: 0, row: 1, col: 4 }]);
        for c in l.addable_cells() {
            assert_eq!(l.add_cell(c).size(), 11);
            assert!(l.add_cell(c).removable_cells().contains(&c));
        }
        for c in l.removable_cells() {
            assert_eq!(l.remove_cell(c).add_cell(c), l);
        }
    }

    #[test]
    fn text_form() {
        let l = mp("[[3,2,2],[2,1]]");
        assert_eq!(l.to_string(), "[[3,2,2],[2,1]]");
        assert!("[[1,2]]".parse::<Multipartition>().is_err());
        assert!("[]".parse::<Multipartition>().is_err());
        assert_eq!(serde_json::to_string(&l).unwrap(), "\"[[3,2,2],[2,1]]\"");
    }
}
