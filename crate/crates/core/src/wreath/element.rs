use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::combinatorics::{Multipartition, Partition};
use crate::error::{Error, Result};

/// An r-colored permutation `w(1)^{c_1} … w(n)^{c_n}`, acting on colored
/// digits by `(i, z) ↦ (w(i), z + c_i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColoredPermutation {
    r: u32,
    images: Vec<usize>,
    colors: Vec<u32>,
}

impl ColoredPermutation {
    pub fn new(r: u32, images: Vec<usize>, colors: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if r == 0 {
            return Err(Error::InvalidArgument("r must be positive".into()));
        }
        if colors.len() != n {
            return Err(Error::InvalidArgument(format!("{n} images but {} colors", colors.len())));
        }
        let mut seen = vec![false; n];
        for &w in &images {
            if w == 0 || w > n || std::mem::replace(&mut seen[w - 1], true) {
                return Err(Error::InvalidArgument(format!("images {images:?} are not a permutation of 1..={n}")));
            }
        }
        if let Some(c) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::InvalidArgument(format!("color {c} outside 0..{r}")));
        }
        Ok(ColoredPermutation { r, images, colors })
    }

    /// Parses the one-line form `3^0 2^0 1^0 4^2 6^2 5^1`.
    pub fn parse(r: u32, text: &str) -> Result<Self> {
        let mut images = Vec::new();
        let mut colors = Vec::new();
        for tok in text.split_whitespace() {
            let bad = || Error::Parse(format!("letter {tok:?} is not of the form i^c"));
            let (i, c) = tok.split_once('^').ok_or_else(bad)?;
            images.push(i.parse().map_err(|_| bad())?);
            colors.push(c.parse().map_err(|_| bad())?);
        }
        Self::new(r, images, colors)
    }

    pub fn identity(r: u32, n: usize) -> Self {
        ColoredPermutation { r, images: (1..=n).collect(), colors: vec![0; n] }
    }

    /// Generators s_0, …, s_{n-1}: s_0 = 1^1 2^0 … n^0, s_i swaps i and i+1.
    pub fn generator(r: u32, n: usize, i: usize) -> Self {
        assert!(i < n, "generator index {i} out of range for n={n}");
        let mut g = Self::identity(r, n);
        if i == 0 {
            g.colors[0] = 1 % r;
        } else {
            g.images.swap(i - 1, i);
        }
        g
    }

    pub fn generators(r: u32, n: usize) -> Vec<Self> {
        (0..n).map(|i| Self::generator(r, n, i)).collect()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// w(i), 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// c_i, 1-based.
    pub fn color(&self, i: usize) -> u32 {
        self.colors[i - 1]
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.r != other.r || self.n() != other.n() {
            return Err(Error::InvalidArgument(format!(
                "elements of W({},{}) and W({},{}) cannot be multiplied",
                self.r,
                self.n(),
                other.r,
                other.n()
            )));
        }
        Ok(())
    }

    /// `self · other`: apply `other` first.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(self.compose(other))
    }

    pub(crate) fn compose(&self, other: &Self) -> Self {
        let images = other.images.iter().map(|&j| self.images[j - 1]).collect();
        let colors = other.images.iter().zip(&other.colors).map(|(&j, &c)| (c + self.colors[j - 1]) % self.r).collect();
        ColoredPermutation { r: self.r, images, colors }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut images = vec![0; n];
        let mut colors = vec![0; n];
        for (i, (&w, &c)) in self.images.iter().zip(&self.colors).enumerate() {
            images[w - 1] = i + 1;
            colors[w - 1] = (self.r - c) % self.r;
        }
        ColoredPermutation { r: self.r, images, colors }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.r, self.n()), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &w)| w == i + 1) && self.colors.iter().all(|&c| c == 0)
    }

    /// Appends the fixed point (n+1)^0.
    pub fn embed(&self) -> Self {
        let mut w = self.clone();
        w.images.push(self.n() + 1);
        w.colors.push(0);
        w
    }

    /// Cycles of the underlying permutation with their total colors, each
    /// cycle listed from its smallest point.
    pub fn cycles(&self) -> Vec<(Vec<usize>, u32)> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut color = 0;
            let mut i = start;
            while !seen[i - 1] {
                seen[i - 1] = true;
                cycle.push(i);
                color = (color + self.colors[i - 1]) % self.r;
                i = self.images[i - 1];
            }
            out.push((cycle, color));
        }
        out
    }

    /// The type: component i collects the lengths of cycles of color i.
    pub fn cycle_type(&self) -> Multipartition {
        let mut parts = vec![Vec::new(); self.r as usize];
        for (cycle, color) in self.cycles() {
            parts[color as usize].push(cycle.len() as u32);
        }
        Multipartition::new(parts.into_iter().map(Partition::from_unsorted).collect())
    }

    /// Number of cycles of color 0.
    pub fn length(&self) -> usize {
        self.cycles().iter().filter(|(_, c)| *c == 0).count()
    }

    /// Descents under the color-major order, with the sentinel (n+1)^0.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            let (a, ca) = (self.image(i), self.color(i));
            let (b, cb) = if i == n { (n + 1, 0) } else { (self.image(i + 1), self.color(i + 1)) };
            if ca > cb || (ca == cb && a > b) {
                out.insert(i);
            }
        }
        out
    }

    pub fn descent_number(&self) -> usize {
        self.descent_set().len()
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, c)) in self.images.iter().zip(&self.colors).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{w}^{c}")?;
        }
        Ok(())
    }
}

impl Serialize for ColoredPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Rearranges `v` into the next permutation in lexicographic order.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every element of W(r,n): permutations in lexicographic order, and for each
/// the colorings counted in base r with c_n varying fastest.
pub fn elements(r: u32, n: usize) -> Vec<ColoredPermutation> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        let mut colors = vec![0u32; n];
        loop {
            out.push(ColoredPermutation { r, images: perm.clone(), colors: colors.clone() });
            let Some(i) = (0..n).rev().find(|&i| colors[i] + 1 < r) else {
                break;
            };
            colors[i] += 1;
            colors[i + 1..].iter_mut().for_each(|c| *c = 0);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// A fixed element of the given type: each part becomes a cycle on
/// consecutive points, carrying its color on its first point.
pub fn class_representative(ty: &Multipartition) -> ColoredPermutation {
    let r = ty.r() as u32;
    let n = ty.size();
    let mut images = vec![0; n];
    let mut colors = vec![0; n];
    let mut start = 1;
    for (color, p) in ty.components().iter().enumerate() {
        for &len in p.parts() {
            let len = len as usize;
            for k in 0..len {
                images[start + k - 1] = start + (k + 1) % len;
            }
            colors[start - 1] = color as u32;
            start += len;
        }
    }
    ColoredPermutation { r, images, colors }
}
