use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinatorics::{multipartitions, Multipartition, Partition};
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Rational};
use crate::wreath::{class_length, class_size, group_order, ColoredPermutation};

/// The conjugacy classes of W(r,n) in [`multipartitions`] order.
#[derive(Debug)]
pub struct Classes {
    pub r: u32,
    pub n: usize,
    pub types: Vec<Multipartition>,
    pub sizes: Vec<u128>,
    index: HashMap<Multipartition, usize>,
}

impl Classes {
    pub fn index_of(&self, ty: &Multipartition) -> Option<usize> {
        self.index.get(ty).copied()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

type ClassCache = Mutex<HashMap<(u32, usize), Arc<Classes>>>;

pub fn classes(r: u32, n: usize) -> Arc<Classes> {
    static CACHE: OnceLock<ClassCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("class cache poisoned");
    Arc::clone(guard.entry((r, n)).or_insert_with(|| {
        let types = multipartitions(r as usize, n);
        let sizes = types.iter().map(class_size).collect();
        let index = types.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Arc::new(Classes { r, n, types, sizes, index })
    }))
}

/// A function on the conjugacy classes of W(r,n) with values in Q(ξ_r).
#[derive(Clone, Debug)]
pub struct ClassFunction {
    classes: Arc<Classes>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(r: u32, n: usize, values: Vec<Cyclotomic>) -> Result<Self> {
        let classes = classes(r, n);
        if values.len() != classes.len() {
            return Err(Error::InvalidArgument(format!("{} values for {} classes", values.len(), classes.len())));
        }
        if values.iter().any(|v| v.order() != r) {
            return Err(Error::InvalidArgument(format!("values must lie in Q(ξ_{r})")));
        }
        Ok(ClassFunction { classes, values })
    }

    pub fn from_fn(r: u32, n: usize, mut f: impl FnMut(&Multipartition) -> Cyclotomic) -> Self {
        let classes = classes(r, n);
        let values = classes.types.iter().map(&mut f).collect();
        ClassFunction { classes, values }
    }

    /// A function of the length ℓ alone.
    pub fn from_length(r: u32, n: usize, mut f: impl FnMut(usize) -> Cyclotomic) -> Self {
        Self::from_fn(r, n, |ty| f(class_length(ty)))
    }

    pub fn zero(r: u32, n: usize) -> Self {
        Self::from_fn(r, n, |_| Cyclotomic::zero(r))
    }

    pub fn trivial(r: u32, n: usize) -> Self {
        Self::from_fn(r, n, |_| Cyclotomic::one(r))
    }

    /// |W| at the identity, 0 elsewhere.
    pub fn regular(r: u32, n: usize) -> Self {
        let id = identity_type(r as usize, n);
        Self::from_fn(r, n, |ty| {
            if *ty == id {
                Cyclotomic::from_bigint(r, BigInt::from(group_order(r, n)))
            } else {
                Cyclotomic::zero(r)
            }
        })
    }

    pub fn r(&self) -> u32 {
        self.classes.r
    }

    pub fn n(&self) -> usize {
        self.classes.n
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, ty: &Multipartition) -> &Cyclotomic {
        let i =
            self.classes.index_of(ty).unwrap_or_else(|| panic!("{ty} is not a class of W({},{})", self.r(), self.n()));
        &self.values[i]
    }

    pub fn at(&self, w: &ColoredPermutation) -> &Cyclotomic {
        self.value(&w.cycle_type())
    }

    pub fn at_identity(&self) -> &Cyclotomic {
        self.value(&identity_type(self.r() as usize, self.n()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.r() != other.r() || self.n() != other.n() {
            return Err(Error::InvalidArgument(format!(
                "class functions on W({},{}) and W({},{})",
                self.r(),
                self.n(),
                other.r(),
                other.n()
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Self {
        self.check(other).expect("class functions on different groups");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        ClassFunction { classes: Arc::clone(&self.classes), values }
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        ClassFunction { classes: Arc::clone(&self.classes), values: self.values.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        self.map(|v| v * c)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let c = Cyclotomic::from_int(self.r(), k);
        self.scale(&c)
    }

    pub fn conjugate(&self) -> Self {
        self.map(Cyclotomic::conjugate)
    }

    pub fn galois(&self, u: i64) -> Self {
        self.map(|v| v.galois(u))
    }

    /// Pointwise product.
    pub fn product(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    /// (1/|W|)·Σ_μ |C_μ|·f(μ)·conj(g(μ)).
    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic> {
        self.check(other)?;
        let r = self.r();
        let mut acc = Cyclotomic::zero(r);
        for ((f, g), &size) in self.values.iter().zip(&other.values).zip(&self.classes.sizes) {
            if f.is_zero() || g.is_zero() {
                continue;
            }
            acc += &(f * &g.conjugate()).scale(&Rational::from_integer(BigInt::from(size)));
        }
        Ok(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(group_order(r, self.n())))))
    }

    /// Restriction to W(r,n-1), embedded by fixing n with color 0.
    pub fn restrict(&self) -> Result<Self> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidArgument("cannot restrict from W(r,0)".into()));
        }
        Ok(ClassFunction::from_fn(self.r(), n - 1, |ty| self.value(&add_fixed_point(ty)).clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }
}

pub fn identity_type(r: usize, n: usize) -> Multipartition {
    let mut comps = vec![Partition::empty(); r];
    comps[0] = Partition::from_unsorted(vec![1; n]);
    Multipartition::new(comps)
}

/// The type with an extra 1-cycle of color 0.
pub fn add_fixed_point(ty: &Multipartition) -> Multipartition {
    let mut comps = ty.components().to_vec();
    let mut parts = comps[0].parts().to_vec();
    parts.push(1);
    comps[0] = Partition::from_unsorted(parts);
    Multipartition::new(comps)
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.r() == other.r() && self.n() == other.n() && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        self.map(|v| -v.clone())
    }
}

impl Mul<&Cyclotomic> for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, rhs: &Cyclotomic) -> ClassFunction {
        self.scale(rhs)
    }
}

impl Serialize for ClassFunction {
    /// `{r, n, classes, values}` with classes in text form.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClassFunction", 4)?;
        st.serialize_field("r", &self.r())?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("classes", &self.classes.types)?;
        st.serialize_field("values", &self.values)?;
        st.end()
    }
}
