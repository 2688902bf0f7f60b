use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ideal::{artin_box, invariant_generators, monomials_of_degree, normal_form};
use super::poly::{act, Monomial, PolyCyclo};
use crate::chartable::{irreducible_table, ClassFunction};
use crate::combinatorics::{standard_tableaux, StandardTableau};
use crate::error::{Error, Result};
use crate::exact::{exact_rank, inverse, mat_vec, Cyclotomic, Matrix, UniPoly};
use crate::foulkes::foulkes_all;
use crate::wreath::{class_representative, elements, group_order, ColoredPermutation};

pub const DEFAULT_BASIS_BUDGET: u128 = 200;

/// How the exponents of a descent monomial are read off a colored permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlagVariant {
    /// f_i = r·des_i + (r−1) − c_i, descents counted in {i..n}.
    ComplementedColor,
    /// f_i = r·|Des ∩ {i..n−1}| + c_i.
    InteriorColor,
}

impl FlagVariant {
    pub const ALL: [FlagVariant; 2] = [FlagVariant::ComplementedColor, FlagVariant::InteriorColor];

    pub fn name(self) -> &'static str {
        match self {
            FlagVariant::ComplementedColor => "complemented-color",
            FlagVariant::InteriorColor => "interior-color",
        }
    }

    /// f-vector from a descent set and colors.
    fn flags(self, r: u32, descents: &[usize], colors: &[u32]) -> Vec<u32> {
        let n = colors.len();
        (1..=n)
            .map(|i| {
                let c = colors[i - 1];
                match self {
                    FlagVariant::ComplementedColor => {
                        let d = descents.iter().filter(|&&j| j >= i).count() as u32;
                        r * d + (r - 1) - c
                    }
                    FlagVariant::InteriorColor => {
                        let d = descents.iter().filter(|&&j| j >= i && j < n).count() as u32;
                        r * d + c
                    }
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagStatistics {
    /// des_i = |Des(w) ∩ {i..n}|.
    pub des: Vec<usize>,
    pub f: Vec<u32>,
    pub variant: FlagVariant,
}

impl FlagStatistics {
    /// Weakly decreasing with consecutive drops of at most r.
    pub fn is_flag_shaped(&self, r: u32) -> bool {
        self.f.windows(2).all(|p| p[0] >= p[1] && p[0] - p[1] <= r)
    }
}

pub fn flag_statistics(w: &ColoredPermutation, variant: FlagVariant) -> FlagStatistics {
    let des_set: Vec<usize> = w.descent_set().into_iter().collect();
    let des = (1..=w.n()).map(|i| des_set.iter().filter(|&&j| j >= i).count()).collect();
    FlagStatistics { des, f: variant.flags(w.r(), &des_set, w.colors()), variant }
}

/// x_{w(1)}^{f_1}⋯x_{w(n)}^{f_n}.
pub fn descent_monomial(w: &ColoredPermutation, variant: FlagVariant) -> Monomial {
    let f = flag_statistics(w, variant).f;
    let mut a = vec![0; w.n()];
    for i in 1..=w.n() {
        a[w.image(i) - 1] = f[i - 1];
    }
    Monomial(a)
}

/// The tableau f-vector, with c_i(T) the component holding i.
pub fn tableau_flags(t: &StandardTableau, variant: FlagVariant) -> Vec<u32> {
    let r = t.shape().r() as u32;
    let descents: Vec<usize> = t.descent_set().into_iter().collect();
    let colors: Vec<u32> = (1..=t.size()).map(|i| t.component(i) as u32).collect();
    variant.flags(r, &descents, &colors)
}

/// Descent monomials of W(r,n) reduced into the Artin-box basis.
#[derive(Debug)]
pub struct DescentBasis {
    pub r: u32,
    pub n: usize,
    pub variant: FlagVariant,
    pub elements: Vec<ColoredPermutation>,
    pub monomials: Vec<Monomial>,
    pub flags: Vec<FlagStatistics>,
    pub artin: Vec<Monomial>,
    artin_index: HashMap<Monomial, usize>,
    /// Column g holds the normal form of m_g.
    pub columns: Matrix,
    pub rank: usize,
    change: Option<Matrix>,
}

impl DescentBasis {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.size()
    }

    fn artin_vector(&self, p: &PolyCyclo) -> Vec<Cyclotomic> {
        let mut v = vec![Cyclotomic::zero(self.r); self.artin.len()];
        for (m, c) in normal_form(p).terms() {
            v[self.artin_index[m]] = c.clone();
        }
        v
    }

    /// Coordinates of w·m_g in the descent basis, one column per g.
    pub fn action_matrix(&self, w: &ColoredPermutation) -> Result<Matrix> {
        let change = self.change.as_ref().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "descent monomials ({}) are not a basis for r={} n={}",
                self.variant.name(),
                self.r,
                self.n
            ))
        })?;
        let cols: Vec<Vec<Cyclotomic>> = self
            .monomials
            .iter()
            .map(|m| mat_vec(change, &self.artin_vector(&act(w, &PolyCyclo::monomial(self.r, m.clone())))))
            .collect();
        let size = self.size();
        Ok((0..size).map(|h| (0..size).map(|g| cols[g][h].clone()).collect()).collect())
    }
}

fn build_basis(r: u32, n: usize, variant: FlagVariant) -> DescentBasis {
    let elements = elements(r, n);
    let monomials: Vec<Monomial> = elements.iter().map(|w| descent_monomial(w, variant)).collect();
    let flags = elements.iter().map(|w| flag_statistics(w, variant)).collect();
    let artin = artin_box(r, n);
    let artin_index: HashMap<Monomial, usize> = artin.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut columns = vec![vec![Cyclotomic::zero(r); monomials.len()]; artin.len()];
    for (g, m) in monomials.iter().enumerate() {
        for (a, c) in normal_form(&PolyCyclo::monomial(r, m.clone())).terms() {
            columns[artin_index[a]][g] = c.clone();
        }
    }
    let rank = exact_rank(&columns);
    let change = (rank == monomials.len()).then(|| inverse(&columns).expect("full rank square matrix"));
    DescentBasis { r, n, variant, elements, monomials, flags, artin, artin_index, columns, rank, change }
}

/// The descent basis for (r,n,variant), cached; fails when r^n·n! exceeds `budget`.
pub fn descent_basis(r: u32, n: usize, variant: FlagVariant, budget: u128) -> Result<Arc<DescentBasis>> {
    let needed = group_order(r, n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    type Cache = Mutex<HashMap<(u32, usize, FlagVariant), Arc<DescentBasis>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("basis cache poisoned").get(&(r, n, variant)) {
        return Ok(Arc::clone(b));
    }
    let basis = Arc::new(build_basis(r, n, variant));
    cache.lock().expect("basis cache poisoned").insert((r, n, variant), Arc::clone(&basis));
    Ok(basis)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub r: u32,
    pub n: usize,
    pub variant: FlagVariant,
    pub size: usize,
    pub rank: usize,
    pub full_rank: bool,
    pub flag_shaped: bool,
    pub monomials: Vec<(ColoredPermutation, Monomial)>,
}

pub fn descent_basis_check(r: u32, n: usize, variant: FlagVariant, budget: u128) -> Result<BasisReport> {
    let b = descent_basis(r, n, variant, budget)?;
    Ok(BasisReport {
        r,
        n,
        variant,
        size: b.size(),
        rank: b.rank,
        full_rank: b.is_full_rank(),
        flag_shaped: b.flags.iter().all(|f| f.is_flag_shaped(r)),
        monomials: b.elements.iter().cloned().zip(b.monomials.iter().cloned()).collect(),
    })
}

fn sorted_desc(v: &[u32]) -> Vec<u32> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Adds random multiples of the invariant generators to each m_g and checks that
/// the degree never drops below deg(m_g). Returns the first offending coset member.
pub fn degree_minimality_witness(
    basis: &DescentBasis,
    samples: usize,
    seed: u64,
) -> Option<(ColoredPermutation, PolyCyclo)> {
    let (r, n) = (basis.r, basis.n);
    let gens = invariant_generators(r, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (g, m) in basis.monomials.iter().enumerate() {
        let base = sorted_desc(&m.0);
        for _ in 0..samples {
            let mut f = PolyCyclo::monomial(r, m.clone());
            for e in &gens {
                let shift = monomials_of_degree(n, rng.gen_range(0..=r * n as u32));
                let mono = &shift[rng.gen_range(0..shift.len())];
                let c = Cyclotomic::from_int(r, rng.gen_range(-2..=2));
                f = f.add(&e.mul_term(mono, &c));
            }
            let deg = f.degree_partition().map(|p| p.parts().to_vec()).unwrap_or_default();
            let mut padded = deg.clone();
            padded.resize(n, 0);
            if padded < base {
                return Some((basis.elements[g].clone(), f));
            }
        }
    }
    None
}

fn q_poly(r: u32, terms: impl IntoIterator<Item = (u32, Cyclotomic)>) -> UniPoly {
    let mut p = UniPoly::zero("q");
    for (d, c) in terms {
        if c.is_zero() {
            continue;
        }
        p.add_term(d as usize, &c);
    }
    if p.is_zero() {
        UniPoly::new("q", vec![Cyclotomic::zero(r)])
    } else {
        p
    }
}

/// P_w(q) = Σ_g ⟨w·m_g, m_g⟩·q^{f_1(g)} with the descent monomials orthonormal.
pub fn graded_trace(w: &ColoredPermutation, variant: FlagVariant, budget: u128) -> Result<UniPoly> {
    let b = descent_basis(w.r(), w.n(), variant, budget)?;
    let a = b.action_matrix(w)?;
    Ok(q_poly(w.r(), b.flags.iter().enumerate().map(|(g, f)| (f.f.first().copied().unwrap_or(0), a[g][g].clone()))))
}

/// Q_w(q) = Σ_λ χ^λ(w)·Σ_{T ∈ std(λ)} q^{f_1(T)}.
pub fn tableau_side_trace(w: &ColoredPermutation, variant: FlagVariant) -> UniPoly {
    let (r, n) = (w.r(), w.n());
    let table = irreducible_table(r, n);
    let mut terms = Vec::new();
    for (shape, chi) in table.iter() {
        let value = chi.at(w);
        for t in standard_tableaux(shape).iter() {
            terms.push((tableau_flags(t, variant).first().copied().unwrap_or(0), value.clone()));
        }
    }
    q_poly(r, terms)
}

/// Both sides in all the variables q_1..q_n, keyed by f-vector.
pub type MultiGraded = BTreeMap<Vec<u32>, Cyclotomic>;

fn insert(map: &mut MultiGraded, key: Vec<u32>, c: &Cyclotomic) {
    let slot = map.entry(key).or_insert_with(|| Cyclotomic::zero(c.order()));
    *slot += c;
}

pub fn graded_trace_multi(w: &ColoredPermutation, variant: FlagVariant, budget: u128) -> Result<MultiGraded> {
    let b = descent_basis(w.r(), w.n(), variant, budget)?;
    let a = b.action_matrix(w)?;
    let mut out = MultiGraded::new();
    for (g, f) in b.flags.iter().enumerate() {
        insert(&mut out, f.f.clone(), &a[g][g]);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn tableau_side_trace_multi(w: &ColoredPermutation, variant: FlagVariant) -> MultiGraded {
    let table = irreducible_table(w.r(), w.n());
    let mut out = MultiGraded::new();
    for (shape, chi) in table.iter() {
        for t in standard_tableaux(shape).iter() {
            insert(&mut out, tableau_flags(t, variant), chi.at(w));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// First class where P_w ≠ Q_w.
pub fn graded_trace_witness(
    r: u32,
    n: usize,
    variant: FlagVariant,
    budget: u128,
) -> Result<Option<(ColoredPermutation, UniPoly, UniPoly)>> {
    for ty in crate::chartable::classes(r, n).types.iter() {
        let w = class_representative(ty);
        let p = graded_trace(&w, variant, budget)?;
        let q = tableau_side_trace(&w, variant);
        if p != q {
            return Ok(Some((w, p, q)));
        }
    }
    Ok(None)
}

/// Statistic used to filter the descent basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GradingStatistic {
    Des,
    FirstFlag,
}

impl GradingStatistic {
    pub const ALL: [GradingStatistic; 2] = [GradingStatistic::Des, GradingStatistic::FirstFlag];

    fn value(self, f: &FlagStatistics) -> u32 {
        match self {
            GradingStatistic::Des => f.des.first().copied().unwrap_or(0) as u32,
            GradingStatistic::FirstFlag => f.f.first().copied().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub r: u32,
    pub n: usize,
    pub variant: FlagVariant,
    pub statistic: GradingStatistic,
    /// Every span {m_w : statistic ≤ t} is stable under the generators.
    pub stable: bool,
    pub thresholds: Vec<u32>,
    pub dimensions: Vec<usize>,
    pub characters: Vec<ClassFunction>,
    /// Consecutive threshold groups whose characters sum to φ_0, …, φ_n.
    pub grouping: Option<Vec<Vec<u32>>>,
}

/// Characters of the successive quotients of the filtration by `statistic`.
pub fn filtration_characters(
    r: u32,
    n: usize,
    variant: FlagVariant,
    statistic: GradingStatistic,
    budget: u128,
) -> Result<FiltrationReport> {
    let b = descent_basis(r, n, variant, budget)?;
    let stat: Vec<u32> = b.flags.iter().map(|f| statistic.value(f)).collect();
    let mut thresholds = stat.clone();
    thresholds.sort_unstable();
    thresholds.dedup();
    let mut stable = true;
    for s in ColoredPermutation::generators(r, n) {
        let a = b.action_matrix(&s)?;
        for (h, row) in a.iter().enumerate() {
            for (g, v) in row.iter().enumerate() {
                if !v.is_zero() && stat[h] > stat[g] {
                    stable = false;
                }
            }
        }
    }
    let dimensions = thresholds.iter().map(|t| stat.iter().filter(|s| *s == t).count()).collect();
    let mut values = vec![Vec::new(); thresholds.len()];
    let cls = crate::chartable::classes(r, n);
    for ty in cls.types.iter() {
        let a = b.action_matrix(&class_representative(ty))?;
        for (i, t) in thresholds.iter().enumerate() {
            let mut acc = Cyclotomic::zero(r);
            for g in (0..b.size()).filter(|&g| stat[g] == *t) {
                acc += &a[g][g];
            }
            values[i].push(acc);
        }
    }
    let characters: Vec<ClassFunction> =
        values.into_iter().map(|v| ClassFunction::new(r, n, v)).collect::<Result<_>>()?;
    let grouping = if stable { foulkes_grouping(r, n, &thresholds, &characters) } else { None };
    Ok(FiltrationReport { r, n, variant, statistic, stable, thresholds, dimensions, characters, grouping })
}

/// Greedily merges consecutive pieces until their sum is φ_k; pieces have positive
/// dimension, so at most one cut point works for each k.
fn foulkes_grouping(r: u32, n: usize, thresholds: &[u32], pieces: &[ClassFunction]) -> Option<Vec<Vec<u32>>> {
    let targets: Vec<ClassFunction> =
        foulkes_all(r, n).iter().map(|f| f.to_class_function()).filter(|f| !f.is_zero()).collect();
    let mut groups = Vec::new();
    let mut i = 0;
    for target in &targets {
        let mut acc = ClassFunction::zero(r, n);
        let mut group = Vec::new();
        loop {
            let piece = pieces.get(i)?;
            acc = &acc + piece;
            group.push(thresholds[i]);
            i += 1;
            if &acc == target {
                break;
            }
        }
        groups.push(group);
    }
    (i == pieces.len()).then_some(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Cyclotomic;
    use crate::wreath::eulerian_row;

    fn w(r: u32, s: &str) -> ColoredPermutation {
        ColoredPermutation::parse(r, s).unwrap()
    }

    #[test]
    fn flag_values_of_worked_example() {
        let x = w(3, "3^0 2^0 1^0 4^2 6^2 5^1");
        let f = flag_statistics(&x, FlagVariant::ComplementedColor);
        assert_eq!(f.des, vec![4, 3, 2, 2, 2, 1]);
        assert_eq!(f.f, vec![14, 11, 8, 6, 6, 4]);
        assert_eq!(descent_monomial(&x, FlagVariant::ComplementedColor), Monomial(vec![8, 11, 14, 6, 4, 6]));
        let id = ColoredPermutation::identity(3, 4);
        assert_eq!(flag_statistics(&id, FlagVariant::ComplementedColor).f, vec![2; 4]);
        assert_eq!(flag_statistics(&w(2, "1^1"), FlagVariant::InteriorColor).f, vec![1]);
        assert_eq!(descent_monomial(&w(1, "2^0 1^0"), FlagVariant::ComplementedColor), Monomial(vec![0, 1]));
    }

    #[test]
    fn flag_shape_holds() {
        for r in 1..=3 {
            for n in 1..=4 {
                for x in elements(r, n) {
                    assert!(flag_statistics(&x, FlagVariant::ComplementedColor).is_flag_shaped(r), "{x}");
                }
            }
        }
    }

    #[test]
    fn interior_color_is_not_flag_shaped() {
        assert_eq!(flag_statistics(&w(2, "1^0 2^1"), FlagVariant::InteriorColor).f, vec![0, 1]);
        assert!(!flag_statistics(&w(2, "1^0 2^1"), FlagVariant::InteriorColor).is_flag_shaped(2));
    }

    #[test]
    fn basis_ranks() {
        assert_eq!(descent_basis_check(1, 3, FlagVariant::ComplementedColor, DEFAULT_BASIS_BUDGET).unwrap().rank, 6);
        let complemented = descent_basis_check(2, 1, FlagVariant::ComplementedColor, DEFAULT_BASIS_BUDGET).unwrap();
        assert_eq!((complemented.rank, complemented.size), (1, 2));
        assert!(descent_basis_check(2, 1, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET).unwrap().full_rank);
        assert_eq!(descent_basis_check(2, 2, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET).unwrap().rank, 8);
        let mons: Vec<_> =
            descent_basis(2, 1, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET).unwrap().monomials.clone();
        assert_eq!(mons, vec![Monomial(vec![0]), Monomial(vec![1])]);
        assert!(matches!(
            descent_basis(2, 4, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn identity_trace_is_dimension_polynomial() {
        let p = graded_trace(&ColoredPermutation::identity(1, 2), FlagVariant::ComplementedColor, DEFAULT_BASIS_BUDGET)
            .unwrap();
        assert_eq!(p, UniPoly::new("q", vec![Cyclotomic::one(1), Cyclotomic::one(1)]));
        for r in 1..=2 {
            for n in 1..=2 {
                let v = FlagVariant::InteriorColor;
                let b = descent_basis(r, n, v, DEFAULT_BASIS_BUDGET).unwrap();
                for x in elements(r, n) {
                    let p = graded_trace(&x, v, DEFAULT_BASIS_BUDGET).unwrap();
                    let want = if x.is_identity() { b.size() as i64 } else { 0 };
                    assert_eq!(p.eval(&Cyclotomic::one(r)), Cyclotomic::from_int(r, want));
                }
            }
        }
    }

    #[test]
    fn classical_traces_agree() {
        for n in 1..=4 {
            assert!(graded_trace_witness(1, n, FlagVariant::ComplementedColor, DEFAULT_BASIS_BUDGET)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn des_pieces_have_eulerian_dimensions() {
        for r in 1..=3 {
            for n in 1..=4 {
                let mut counts = vec![0u128; n + 1];
                for x in elements(r, n) {
                    counts[flag_statistics(&x, FlagVariant::InteriorColor).des[0]] += 1;
                }
                assert_eq!(counts, eulerian_row(r, n));
            }
        }
    }

    #[test]
    fn classical_filtration_by_des() {
        for n in 1..=3 {
            let rep = filtration_characters(
                1,
                n,
                FlagVariant::ComplementedColor,
                GradingStatistic::Des,
                DEFAULT_BASIS_BUDGET,
            )
            .unwrap();
            assert!(rep.stable);
            let phis = foulkes_all(1, n);
            for (k, chi) in rep.characters.iter().enumerate() {
                assert_eq!(chi, &phis[k].to_class_function());
            }
            assert!(rep.grouping.is_some());
        }
    }

    #[test]
    fn interior_color_grid() {
        for (r, n) in [(1, 3), (1, 4), (2, 2), (2, 3), (3, 2)] {
            let b = descent_basis_check(r, n, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET).unwrap();
            assert!(b.full_rank, "r={r} n={n}");
        }
        for (r, n) in [(2, 2), (2, 3), (3, 2)] {
            let b = descent_basis_check(r, n, FlagVariant::ComplementedColor, DEFAULT_BASIS_BUDGET).unwrap();
            assert!(!b.full_rank, "r={r} n={n}");
        }
        assert!(graded_trace_witness(2, 2, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET).unwrap().is_none());
        for x in elements(2, 2) {
            let p = graded_trace_multi(&x, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET).unwrap();
            assert_eq!(p, tableau_side_trace_multi(&x, FlagVariant::InteriorColor));
        }
    }

    #[test]
    fn des_grading_gives_foulkes_pieces() {
        let des = filtration_characters(2, 2, FlagVariant::InteriorColor, GradingStatistic::Des, DEFAULT_BASIS_BUDGET)
            .unwrap();
        assert!(des.stable);
        assert_eq!(des.grouping, Some(vec![vec![0], vec![1], vec![2]]));
        let first =
            filtration_characters(2, 2, FlagVariant::InteriorColor, GradingStatistic::FirstFlag, DEFAULT_BASIS_BUDGET)
                .unwrap();
        assert_eq!(first.dimensions, vec![3, 1, 1, 3]);
        assert_eq!(first.grouping, None);
    }

    #[test]
    fn degree_minimality_small() {
        for (r, n) in [(1, 2), (2, 1), (2, 2)] {
            let b = descent_basis(r, n, FlagVariant::InteriorColor, DEFAULT_BASIS_BUDGET).unwrap();
            assert!(degree_minimality_witness(&b, 10, 3).is_none());
        }
    }
}
