//! Finite abelian groups regarded as modules over the integers.
//!
//! A module is described by its invariant factors `d1 | d2 | ... | dk`
//! (each at least 2); elements are coordinate tuples enumerated in
//! lexicographic order, and submodules are explicit member bitsets over
//! that enumeration. The scalar action of the integers factors through
//! `Z_exponent`, so every quantification over scalars ranges over
//! `[0, exponent)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::zarith::{self, IdealOfZ, IntMatrix};

/// Default bound on module order for exhaustive submodule enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 256;

/// Hard bound on module order at construction time; indexing and
/// coordinate arithmetic assume the order fits comfortably in memory.
pub const MAX_CONSTRUCTIBLE_ORDER: usize = 1 << 20;

const ADD_TABLE_MAX_ORDER: usize = 1024;

#[derive(Debug)]
struct ModuleInner {
    invariant_factors: Vec<u64>,
    order: usize,
    exponent: u64,
    enumeration_cap: usize,
    /// Mixed-radix weights: index = sum(coord_i * weight_i).
    weights: Vec<usize>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
    submodules: OnceLock<Vec<PointSet>>,
}

/// A finite abelian group as a Z-module, cheap to clone.
#[derive(Clone)]
pub struct FiniteModule {
    inner: Arc<ModuleInner>,
}

/// An element of a [`FiniteModule`], as its coordinate tuple against the
/// invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<u64>,
}

impl Element {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FiniteModule {
    /// Build the module with the default enumeration cap. Factors must
    /// each be at least 2 and form a divisibility chain; normalize
    /// arbitrary factor lists through [`normalize_factors`] first.
    pub fn new(invariant_factors: &[u64]) -> Result<Self> {
        Self::with_enumeration_cap(invariant_factors, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_enumeration_cap(invariant_factors: &[u64], cap: usize) -> Result<Self> {
        if invariant_factors.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        for &d in invariant_factors {
            if d < 2 {
                return Err(Error::InvalidFactor(d));
            }
        }
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::NonDividingChain(w[0], w[1]));
            }
        }
        Self::build(invariant_factors.to_vec(), cap)
    }

    /// The order-1 marker object used for full quotients; exempt from the
    /// nonzero-module rule and rejected by [`FiniteModule::new`].
    pub fn trivial() -> Self {
        Self::build(Vec::new(), DEFAULT_ENUMERATION_CAP).expect("trivial module always builds")
    }

    fn build(invariant_factors: Vec<u64>, cap: usize) -> Result<Self> {
        let mut order: usize = 1;
        for &d in &invariant_factors {
            order = order
                .checked_mul(d as usize)
                .filter(|&o| o <= MAX_CONSTRUCTIBLE_ORDER)
                .ok_or(Error::SizeCap {
                    order: usize::MAX,
                    cap: MAX_CONSTRUCTIBLE_ORDER,
                })?;
        }
        let exponent = invariant_factors.last().copied().unwrap_or(1);
        // lexicographic enumeration: the last coordinate varies fastest
        let k = invariant_factors.len();
        let mut weights = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * invariant_factors[i + 1] as usize;
        }
        let mut inner = ModuleInner {
            invariant_factors,
            order,
            exponent,
            enumeration_cap: cap,
            weights,
            add_table: None,
            neg_table: Vec::new(),
            submodules: OnceLock::new(),
        };
        inner.neg_table = (0..order)
            .map(|i| neg_index(&inner, i) as u32)
            .collect();
        if order <= ADD_TABLE_MAX_ORDER {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = add_index(&inner, a, b) as u32;
                }
            }
            inner.add_table = Some(table);
        }
        Ok(FiniteModule {
            inner: Arc::new(inner),
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.inner.invariant_factors
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn exponent(&self) -> u64 {
        self.inner.exponent
    }

    pub fn rank(&self) -> usize {
        self.inner.invariant_factors.len()
    }

    /// True for the order-1 marker object.
    pub fn is_trivial(&self) -> bool {
        self.inner.order == 1
    }

    pub fn enumeration_cap(&self) -> usize {
        self.inner.enumeration_cap
    }

    /// The annihilator ideal `ann(M) = (exponent)`.
    pub fn annihilator(&self) -> IdealOfZ {
        IdealOfZ::new(self.inner.exponent as i128)
    }

    pub fn same_module(&self, other: &FiniteModule) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || self.inner.invariant_factors == other.inner.invariant_factors
    }

    pub(crate) fn expect_same(&self, other: &FiniteModule) -> Result<()> {
        if self.same_module(other) {
            Ok(())
        } else {
            Err(Error::ParentMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub fn element(&self, index: usize) -> Element {
        assert!(index < self.inner.order, "element index out of range");
        let mut coords = Vec::with_capacity(self.rank());
        let mut rest = index;
        for (w, &d) in self.inner.weights.iter().zip(&self.inner.invariant_factors) {
            coords.push((rest / w) as u64 % d);
            rest %= w;
        }
        Element { coords }
    }

    pub fn index_of(&self, e: &Element) -> usize {
        assert_eq!(e.coords.len(), self.rank(), "element arity mismatch");
        e.coords
            .iter()
            .zip(&self.inner.weights)
            .map(|(&c, &w)| c as usize * w)
            .sum()
    }

    /// Element from raw coordinates, reduced into range; arity must match.
    pub fn element_from_coords(&self, coords: &[i128]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                rank: self.rank(),
                got: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.inner.invariant_factors)
            .map(|(&c, &d)| c.rem_euclid(d as i128) as u64)
            .collect();
        Ok(Element { coords })
    }

    pub fn zero(&self) -> Element {
        Element {
            coords: vec![0; self.rank()],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.inner.order).map(move |i| self.element(i))
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.inner.add_table {
            t[a * self.inner.order + b] as usize
        } else {
            add_index(&self.inner, a, b)
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.inner.neg_table[a] as usize
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn scalar_idx(&self, k: u64, a: usize) -> usize {
        let e = self.element(a);
        let coords: Vec<u64> = e
            .coords
            .iter()
            .zip(&self.inner.invariant_factors)
            .map(|(&c, &d)| (c as u128 * k as u128 % d as u128) as u64)
            .collect();
        self.index_of(&Element { coords })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.element(self.add_idx(self.index_of(a), self.index_of(b)))
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.element(self.neg_idx(self.index_of(a)))
    }

    pub fn scalar(&self, k: u64, a: &Element) -> Element {
        self.element(self.scalar_idx(k, self.index_of(a)))
    }

    /// The additive cyclic subgroup generated by `m`.
    pub fn cyclic_set(&self, m: usize) -> PointSet {
        let mut set = PointSet::empty(self.inner.order);
        let mut cur = 0usize;
        loop {
            set.insert(cur);
            cur = self.add_idx(cur, m);
            if cur == 0 {
                break;
            }
        }
        set
    }

    /// The member set of `e * M`.
    pub fn scaled_set(&self, e: u64) -> PointSet {
        let mut set = PointSet::empty(self.inner.order);
        for i in 0..self.inner.order {
            set.insert(self.scalar_idx(e, i));
        }
        set
    }

    /// Pointwise sum of two subgroup member sets (already a subgroup).
    pub(crate) fn sum_sets(&self, a: &PointSet, b: &PointSet) -> PointSet {
        let (small, large) = if a.card() <= b.card() { (a, b) } else { (b, a) };
        let mut out = PointSet::empty(self.inner.order);
        for i in small.iter() {
            out.union_with(&large.map(|j| self.add_idx(i, j)));
        }
        out
    }

    /// Every submodule of the module, ascending by size then member bits,
    /// computed once and cached. Errors when the order exceeds the
    /// enumeration cap.
    pub fn enumerate_submodules(&self) -> Result<Vec<Submodule>> {
        if self.inner.order > self.inner.enumeration_cap {
            return Err(Error::SizeCap {
                order: self.inner.order,
                cap: self.inner.enumeration_cap,
            });
        }
        let sets = self.inner.submodules.get_or_init(|| {
            let mut seen = std::collections::HashSet::new();
            let zero = PointSet::singleton(self.inner.order, 0);
            let mut stack = vec![zero.clone()];
            seen.insert(zero);
            while let Some(h) = stack.pop() {
                for x in 0..self.inner.order {
                    if h.contains(x) {
                        continue;
                    }
                    let grown = self.sum_sets(&h, &self.cyclic_set(x));
                    if seen.insert(grown.clone()) {
                        stack.push(grown);
                    }
                }
            }
            let mut sets: Vec<PointSet> = seen.into_iter().collect();
            sets.sort_by_key(|s| s.sort_key());
            sets
        });
        Ok(sets
            .iter()
            .map(|s| Submodule {
                parent: self.clone(),
                members: s.clone(),
            })
            .collect())
    }
}

fn add_index(inner: &ModuleInner, a: usize, b: usize) -> usize {
    let mut out = 0usize;
    for (&w, &d) in inner.weights.iter().zip(&inner.invariant_factors) {
        let d = d as usize;
        let ca = a / w % d;
        let cb = b / w % d;
        out += (ca + cb) % d * w;
    }
    out
}

fn neg_index(inner: &ModuleInner, a: usize) -> usize {
    let mut out = 0usize;
    for (&w, &d) in inner.weights.iter().zip(&inner.invariant_factors) {
        let d = d as usize;
        let ca = a / w % d;
        out += (d - ca) % d * w;
    }
    out
}

impl fmt::Display for FiniteModule {
    /// Module literal, e.g. "2x4" for Z2 (+) Z4.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let s = self
            .inner
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("x");
        write!(f, "{s}")
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({self})")
    }
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.same_module(other)
    }
}
impl Eq for FiniteModule {}

/// Normalize an arbitrary positive factor list into an invariant-factor
/// chain via the Smith normal form of the diagonal relation matrix, so
/// "4x2" and "2x4" name the same module.
pub fn normalize_factors(factors: &[u64]) -> Result<Vec<u64>> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    if let Some(&z) = factors.iter().find(|&&d| d == 0) {
        return Err(Error::InvalidFactor(z));
    }
    let k = factors.len();
    let mut m = IntMatrix::zero(k, k);
    for (i, &d) in factors.iter().enumerate() {
        m.set(i, i, d as i128);
    }
    let chain: Vec<u64> = zarith::snf(&m)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect();
    if chain.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    Ok(chain)
}

/// A submodule of a finite module: the parent plus an explicit member set.
#[derive(Clone)]
pub struct Submodule {
    parent: FiniteModule,
    members: PointSet,
}

impl Submodule {
    pub fn zero(parent: &FiniteModule) -> Self {
        Submodule {
            parent: parent.clone(),
            members: PointSet::singleton(parent.order(), 0),
        }
    }

    pub fn whole(parent: &FiniteModule) -> Self {
        Submodule {
            parent: parent.clone(),
            members: PointSet::full(parent.order()),
        }
    }

    /// Smallest submodule containing the given elements.
    pub fn generated_by(parent: &FiniteModule, gens: &[Element]) -> Self {
        let mut members = PointSet::singleton(parent.order(), 0);
        for g in gens {
            members = parent.sum_sets(&members, &parent.cyclic_set(parent.index_of(g)));
        }
        Submodule {
            parent: parent.clone(),
            members,
        }
    }

    pub fn parent(&self) -> &FiniteModule {
        &self.parent
    }

    pub fn members(&self) -> &PointSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.card()
    }

    pub fn is_zero(&self) -> bool {
        self.members.card() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.is_full()
    }

    pub fn contains_idx(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.members.contains(self.parent.index_of(e))
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().map(|i| self.parent.element(i))
    }

    /// Smallest submodule containing both operands.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.parent.expect_same(&other.parent)?;
        Ok(Submodule {
            parent: self.parent.clone(),
            members: self.parent.sum_sets(&self.members, &other.members),
        })
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.parent.expect_same(&other.parent)?;
        Ok(Submodule {
            parent: self.parent.clone(),
            members: self.members.intersect(&other.members),
        })
    }

    /// Whether `self + other = M`, by the subgroup product formula
    /// `|N||K| = |N+K| |N \u{2229} K|` (no sum set materialized).
    pub fn sum_is_whole(&self, other: &Submodule) -> Result<bool> {
        self.parent.expect_same(&other.parent)?;
        let inter = self.members.intersect(&other.members).card();
        Ok(self.members.card() * other.members.card() == self.parent.order() * inter)
    }

    /// Residual ideal `(N : M) = { r : rM \u{2286} N }`, reported by its
    /// nonnegative generator. Always positive for finite modules: the
    /// generator is the least divisor `e` of the exponent with `eM \u{2286} N`.
    pub fn residual(&self) -> IdealOfZ {
        for d in zarith::divisors(self.parent.exponent()) {
            if self.parent.scaled_set(d).is_subset(&self.members) {
                return IdealOfZ::new(d as i128);
            }
        }
        unreachable!("exponent * M = 0 is always contained");
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{{")?;
        for (n, e) in self.elements().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_module(&other.parent) && self.members == other.members
    }
}
impl Eq for Submodule {}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.sort_key().cmp(&other.members.sort_key())
    }
}

impl std::hash::Hash for Submodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

/// The additive cyclic submodule `Rm` generated by one element.
pub fn cyclic(module: &FiniteModule, m: &Element) -> Submodule {
    Submodule {
        parent: module.clone(),
        members: module.cyclic_set(module.index_of(m)),
    }
}

/// A coset `rep + sub`, canonicalized to the enumeration-least
/// representative; two cosets are equal iff canonical rep and submodule
/// agree, which coincides with point-set equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Coset {
    rep: usize,
    sub: Submodule,
}

impl Coset {
    pub fn new(rep: &Element, sub: Submodule) -> Coset {
        let rep_idx = sub.parent.index_of(rep);
        Self::from_idx(rep_idx, sub)
    }

    pub(crate) fn from_idx(rep_idx: usize, sub: Submodule) -> Coset {
        let module = sub.parent.clone();
        let canonical = sub
            .members
            .iter()
            .map(|s| module.add_idx(rep_idx, s))
            .min()
            .expect("submodules are nonempty");
        Coset {
            rep: canonical,
            sub,
        }
    }

    pub fn rep(&self) -> Element {
        self.sub.parent.element(self.rep)
    }

    pub(crate) fn rep_idx(&self) -> usize {
        self.rep
    }

    pub fn submodule(&self) -> &Submodule {
        &self.sub
    }

    pub fn points(&self) -> PointSet {
        let module = &self.sub.parent;
        self.sub.members.map(|s| module.add_idx(self.rep, s))
    }

    pub fn size(&self) -> usize {
        self.sub.size()
    }
}

impl fmt::Debug for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {:?}", self.rep(), self.sub)
    }
}

/// Quotient projection `M -> M/N` as an explicit table.
pub struct QuotientMap {
    source: FiniteModule,
    target: FiniteModule,
    table: Vec<usize>,
}

impl QuotientMap {
    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, e: &Element) -> Element {
        self.target.element(self.table[self.source.index_of(e)])
    }

    /// Member set of the kernel.
    pub fn kernel_set(&self) -> PointSet {
        PointSet::from_indices(
            self.source.order(),
            (0..self.source.order()).filter(|&i| self.table[i] == 0),
        )
    }
}

/// Quotient `M/N`: the canonical finite module and the projection.
///
/// The invariant factors come from the Smith normal form of the relation
/// matrix `[diag(d) | coords of N]`; the projection applies the recorded
/// left transform and reduces coordinatewise.
pub fn quotient(module: &FiniteModule, n: &Submodule) -> Result<(FiniteModule, QuotientMap)> {
    module.expect_same(n.parent())?;
    let k = module.rank();
    let mut cols: Vec<Vec<i128>> = Vec::with_capacity(k + n.size());
    for (i, &d) in module.invariant_factors().iter().enumerate() {
        let mut col = vec![0i128; k];
        col[i] = d as i128;
        cols.push(col);
    }
    for e in n.elements() {
        cols.push(e.coords().iter().map(|&c| c as i128).collect());
    }
    let rel = IntMatrix::from_columns(k.max(1), &cols)?;
    let dec = zarith::snf_with_left(&rel);
    debug_assert_eq!(dec.diag.len(), k, "relation lattice has full rank");
    let factors: Vec<u64> = dec.diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    let target = if factors.is_empty() {
        FiniteModule::trivial()
    } else {
        FiniteModule::with_enumeration_cap(&factors, module.enumeration_cap())?
    };
    let kept: Vec<usize> = (0..dec.diag.len()).filter(|&i| dec.diag[i] > 1).collect();
    let mut table = Vec::with_capacity(module.order());
    for idx in 0..module.order() {
        let e = module.element(idx);
        let x: Vec<i128> = e.coords().iter().map(|&c| c as i128).collect();
        let y = dec.left.mul_vec(&x);
        let coords: Vec<i128> = kept.iter().map(|&i| y[i].rem_euclid(dec.diag[i])).collect();
        let q = target.element_from_coords(&coords)?;
        table.push(target.index_of(&q));
    }
    let map = QuotientMap {
        source: module.clone(),
        target: target.clone(),
        table,
    };
    Ok((target, map))
}

/// Which route produced a CRT solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrtPath {
    /// Residual generators were coprime: `z = b x + a y` with
    /// `a \u{2208} (N:M)`, `b \u{2208} (K:M)`, `a + b \u{2261} 1 (mod exponent)`.
    Residual,
    /// Exhaustive search over the module.
    Exhaustive,
}

#[derive(Debug, Clone)]
pub struct CrtSolution {
    pub z: Element,
    pub path: CrtPath,
}

/// Solve `z \u{2261} x (mod N)`, `z \u{2261} y (mod K)` given `K + N = M`.
///
/// The residual route takes `a + b = 1` with `a` in `(N:M)` and `b` in
/// `(K:M)` (possible exactly when the residual generators are coprime,
/// which covers every \u{3bc}-module) and returns `z = b x + a y`; otherwise
/// an exhaustive scan runs, and only a non-\u{3bc} parent can leave it empty.
pub fn crt_solve(
    x: &Element,
    y: &Element,
    n: &Submodule,
    k: &Submodule,
) -> Result<CrtSolution> {
    n.parent().expect_same(k.parent())?;
    let module = n.parent().clone();
    if !n.sum_is_whole(k)? {
        return Err(Error::NotCoprime);
    }
    let exp = module.exponent() as i128;
    let gn = n.residual().generator();
    let gk = k.residual().generator();
    let (g, u, v) = zarith::ext_gcd(gn, gk);
    if zarith::gcd(g, exp) == 1 {
        let (_, ginv, _) = zarith::ext_gcd(g, exp);
        let a = (u * gn % exp * ginv % exp).rem_euclid(exp) as u64;
        let b = (v * gk % exp * ginv % exp).rem_euclid(exp) as u64;
        debug_assert_eq!((a + b) % module.exponent(), 1 % module.exponent());
        let xi = module.index_of(x);
        let yi = module.index_of(y);
        let z = module.add_idx(module.scalar_idx(b, xi), module.scalar_idx(a, yi));
        debug_assert!(n.contains_idx(module.sub_idx(z, xi)));
        debug_assert!(k.contains_idx(module.sub_idx(z, yi)));
        return Ok(CrtSolution {
            z: module.element(z),
            path: CrtPath::Residual,
        });
    }
    let xi = module.index_of(x);
    let yi = module.index_of(y);
    for z in 0..module.order() {
        if n.contains_idx(module.sub_idx(z, xi)) && k.contains_idx(module.sub_idx(z, yi)) {
            return Ok(CrtSolution {
                z: module.element(z),
                path: CrtPath::Exhaustive,
            });
        }
    }
    Err(Error::NoSolution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteModule {
        FiniteModule::new(&[n]).unwrap()
    }

    fn el(m: &FiniteModule, coords: &[i128]) -> Element {
        m.element_from_coords(coords).unwrap()
    }

    #[test]
    fn construction_examples() {
        let z8 = z(8);
        assert_eq!(z8.order(), 8);
        assert_eq!(z8.exponent(), 8);
        let z2 = z(2);
        assert_eq!(z2.order(), 2);
        let m = FiniteModule::new(&[2, 4]).unwrap();
        assert_eq!(m.order(), 8);
        assert_eq!(m.exponent(), 4);
        assert_eq!(m.to_string(), "2x4");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteModule::new(&[]).unwrap_err(), Error::EmptyFactorList);
        assert_eq!(
            FiniteModule::new(&[4, 2]).unwrap_err(),
            Error::NonDividingChain(4, 2)
        );
        assert_eq!(FiniteModule::new(&[1]).unwrap_err(), Error::InvalidFactor(1));
    }

    #[test]
    fn normalize_reorders_via_snf() {
        assert_eq!(normalize_factors(&[4, 2]).unwrap(), vec![2, 4]);
        assert_eq!(normalize_factors(&[2, 3]).unwrap(), vec![6]);
        assert_eq!(normalize_factors(&[6, 4]).unwrap(), vec![2, 12]);
        assert_eq!(normalize_factors(&[1]).unwrap_err(), Error::EmptyFactorList);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let m = FiniteModule::new(&[2, 4]).unwrap();
        let listed: Vec<String> = m.elements().map(|e| e.to_string()).collect();
        assert_eq!(listed[0], "(0,0)");
        assert_eq!(listed[1], "(0,1)");
        assert_eq!(listed[4], "(1,0)");
        assert_eq!(listed[7], "(1,3)");
        for i in 0..m.order() {
            assert_eq!(m.index_of(&m.element(i)), i);
        }
    }

    #[test]
    fn submodules_of_z8() {
        let z8 = z(8);
        let subs = z8.enumerate_submodules().unwrap();
        let sets: Vec<Vec<usize>> = subs.iter().map(|s| s.members().iter().collect()).collect();
        assert_eq!(
            sets,
            vec![
                vec![0],
                vec![0, 4],
                vec![0, 2, 4, 6],
                vec![0, 1, 2, 3, 4, 5, 6, 7]
            ]
        );
    }

    #[test]
    fn submodules_of_z2_and_klein() {
        assert_eq!(z(2).enumerate_submodules().unwrap().len(), 2);
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let subs = klein.enumerate_submodules().unwrap();
        assert_eq!(subs.len(), 5);
        // independent oracle: subsets containing 0 closed under addition
        let mut count = 0;
        for mask in 0u32..16 {
            if mask & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = (0..4).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = members.iter().all(|&a| {
                members
                    .iter()
                    .all(|&b| members.contains(&klein.add_idx(a, b)))
            });
            if closed {
                count += 1;
            }
        }
        assert_eq!(count, 5);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let m = FiniteModule::with_enumeration_cap(&[8], 4).unwrap();
        assert_eq!(
            m.enumerate_submodules().unwrap_err(),
            Error::SizeCap { order: 8, cap: 4 }
        );
    }

    #[test]
    fn sum_and_intersect_examples() {
        let z8 = z(8);
        let four = cyclic(&z8, &el(&z8, &[4]));
        let two = cyclic(&z8, &el(&z8, &[2]));
        let one = cyclic(&z8, &el(&z8, &[1]));
        assert_eq!(four.sum(&two).unwrap(), two);
        assert!(four.sum(&one).unwrap().is_whole());
        assert_eq!(two.intersect(&four).unwrap(), four);
        assert_eq!(two.intersect(&two).unwrap(), two);

        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let a = cyclic(&klein, &el(&klein, &[1, 0]));
        let b = cyclic(&klein, &el(&klein, &[0, 1]));
        assert!(a.sum(&b).unwrap().is_whole());
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn parent_mismatch_detected() {
        let a = Submodule::zero(&z(8));
        let b = Submodule::zero(&z(4));
        assert!(matches!(a.sum(&b), Err(Error::ParentMismatch { .. })));
    }

    #[test]
    fn cyclic_examples() {
        let z8 = z(8);
        assert_eq!(
            cyclic(&z8, &el(&z8, &[2])).members().iter().collect::<Vec<_>>(),
            vec![0, 2, 4, 6]
        );
        assert!(cyclic(&z8, &el(&z8, &[0])).is_zero());
        let m = FiniteModule::new(&[2, 4]).unwrap();
        let c = cyclic(&m, &el(&m, &[1, 1]));
        let pts: Vec<String> = c.elements().map(|e| e.to_string()).collect();
        assert_eq!(pts, vec!["(0,0)", "(0,2)", "(1,1)", "(1,3)"]);
    }

    #[test]
    fn residual_examples() {
        let z8 = z(8);
        let two = cyclic(&z8, &el(&z8, &[2]));
        assert_eq!(two.residual().generator(), 2);
        assert_eq!(Submodule::zero(&z8).residual().generator(), 8);
        assert_eq!(Submodule::whole(&z8).residual().generator(), 1);
        assert_eq!(z8.annihilator().generator(), 8);
    }

    #[test]
    fn quotient_examples() {
        let z8 = z(8);
        let four = cyclic(&z8, &el(&z8, &[4]));
        let (q, proj) = quotient(&z8, &four).unwrap();
        assert_eq!(q.invariant_factors(), &[4]);
        assert_eq!(proj.kernel_set(), *four.members());

        let (full, proj) = quotient(&z8, &Submodule::whole(&z8)).unwrap();
        assert!(full.is_trivial());
        assert!(proj.kernel_set().is_full());

        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let line = cyclic(&klein, &el(&klein, &[1, 0]));
        let (q, proj) = quotient(&klein, &line).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.kernel_set().card(), 2);
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        for factors in [vec![8], vec![2, 4], vec![2, 2], vec![12]] {
            let m = FiniteModule::new(&factors).unwrap();
            for n in m.enumerate_submodules().unwrap() {
                let (q, proj) = quotient(&m, &n).unwrap();
                assert_eq!(q.order() * n.size(), m.order());
                for a in 0..m.order() {
                    for b in 0..m.order() {
                        let lhs = proj.apply_idx(m.add_idx(a, b));
                        let rhs = q.add_idx(proj.apply_idx(a), proj.apply_idx(b));
                        assert_eq!(lhs, rhs);
                    }
                }
                assert_eq!(proj.kernel_set(), *n.members());
            }
        }
    }

    #[test]
    fn crt_whole_module_side() {
        let z8 = z(8);
        let n = cyclic(&z8, &el(&z8, &[2]));
        let k = Submodule::whole(&z8);
        let sol = crt_solve(&el(&z8, &[1]), &el(&z8, &[3]), &n, &k).unwrap();
        // z = x (mod N) and trivially z = y (mod M)
        let diff = z8.sub_idx(z8.index_of(&sol.z), 1);
        assert!(n.contains_idx(diff));
    }

    #[test]
    fn crt_classic_z6() {
        let z6 = z(6);
        let n = cyclic(&z6, &el(&z6, &[2]));
        let k = cyclic(&z6, &el(&z6, &[3]));
        let sol = crt_solve(&el(&z6, &[1]), &el(&z6, &[2]), &n, &k).unwrap();
        assert_eq!(sol.path, CrtPath::Residual);
        assert_eq!(sol.z, el(&z6, &[5]));
        // classical check: 5 = 1 mod 2, 5 = 2 mod 3
        assert_eq!(5 % 2, 1);
        assert_eq!(5 % 3, 2);
    }

    #[test]
    fn crt_falls_back_to_search() {
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let n = cyclic(&klein, &el(&klein, &[1, 0]));
        let k = cyclic(&klein, &el(&klein, &[0, 1]));
        let x = el(&klein, &[0, 0]);
        let y = el(&klein, &[1, 1]);
        let sol = crt_solve(&x, &y, &n, &k).unwrap();
        assert_eq!(sol.path, CrtPath::Exhaustive);
        assert_eq!(sol.z, el(&klein, &[1, 0]));
        assert!(n.contains(&klein.add(&sol.z, &klein.neg(&x))));
        assert!(k.contains(&klein.add(&sol.z, &klein.neg(&y))));
    }

    #[test]
    fn crt_rejects_noncoprime() {
        let z8 = z(8);
        let n = cyclic(&z8, &el(&z8, &[2]));
        let k = cyclic(&z8, &el(&z8, &[4]));
        assert_eq!(
            crt_solve(&el(&z8, &[0]), &el(&z8, &[1]), &n, &k).unwrap_err(),
            Error::NotCoprime
        );
    }

    #[test]
    fn product_formula_small_modules() {
        for factors in [vec![8], vec![2, 4], vec![2, 2], vec![9], vec![12]] {
            let m = FiniteModule::new(&factors).unwrap();
            let subs = m.enumerate_submodules().unwrap();
            for a in &subs {
                for b in &subs {
                    let s = a.sum(b).unwrap().size();
                    let i = a.intersect(b).unwrap().size();
                    assert_eq!(a.size() * b.size(), s * i);
                    assert_eq!(a.sum_is_whole(b).unwrap(), a.sum(b).unwrap().is_whole());
                }
            }
        }
    }

    #[test]
    fn coset_canonical_rep() {
        let z8 = z(8);
        let four = cyclic(&z8, &el(&z8, &[4]));
        let c1 = Coset::new(&el(&z8, &[5]), four.clone());
        let c2 = Coset::new(&el(&z8, &[1]), four.clone());
        assert_eq!(c1, c2);
        assert_eq!(c1.rep(), el(&z8, &[1]));
        assert_eq!(c1.points().iter().collect::<Vec<_>>(), vec![1, 5]);
    }

    #[test]
    fn trivial_marker_module() {
        let t = FiniteModule::trivial();
        assert!(t.is_trivial());
        assert_eq!(t.order(), 1);
        assert_eq!(t.exponent(), 1);
        assert_eq!(t.zero().to_string(), "()");
    }
}
