//! The coprime-coset topology engine.
//!
//! `B_M` collects the coprime cosets `m + N` (with `N` a nonzero submodule
//! and `Rm + N = M`). When the basis axioms hold, the generated topology on
//! all of `M` and its punctured subspace on `M - {0}` are materialized as
//! explicit open families, and closures, indiscrete points, separation
//! axioms and the continuity of the module operations are decided by
//! finite scans over those opens.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finmod::{Coset, Element, FiniteModule};
use crate::pointset::PointSet;
use crate::zarith;
use crate::zlattice::{self, CosetMeet, IntegerLattice, LatticeCoset};

/// Default cap on the number of materialized opens.
pub const DEFAULT_OPEN_CAP: usize = 4096;

/// The family of coprime cosets of a finite module, deduplicated as point
/// sets and kept in canonical order (size descending, then point bits
/// descending).
#[derive(Debug, Clone)]
pub struct CoprimeBasis {
    module: FiniteModule,
    cosets: Vec<Coset>,
}

impl CoprimeBasis {
    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn point_sets(&self) -> Vec<PointSet> {
        self.cosets.iter().map(|c| c.points()).collect()
    }
}

/// Enumerate every coprime coset `(m, N)`: `N` nonzero and
/// `Rm + N = M` (tested by the subgroup product formula).
pub fn coprime_basis(module: &FiniteModule) -> Result<CoprimeBasis> {
    let order = module.order();
    let subs = module.enumerate_submodules()?;
    let cyclics: Vec<PointSet> = (0..order).map(|m| module.cyclic_set(m)).collect();
    let mut seen = std::collections::HashSet::new();
    let mut cosets = Vec::new();
    for n in &subs {
        if n.is_zero() {
            continue;
        }
        for m in 0..order {
            let meet = cyclics[m].intersect(n.members()).card();
            if cyclics[m].card() * n.size() != order * meet {
                continue;
            }
            let coset = Coset::from_idx(m, n.clone());
            let key = (coset.rep_idx(), n.members().clone());
            if seen.insert(key) {
                cosets.push(coset);
            }
        }
    }
    cosets.sort_by(|a, b| {
        let ka = a.points().sort_key();
        let kb = b.points().sort_key();
        kb.cmp(&ka)
    });
    Ok(CoprimeBasis {
        module: module.clone(),
        cosets,
    })
}

/// Outcome of the basis-axiom check.
#[derive(Debug, Clone)]
pub enum BasisCheck {
    Valid,
    /// A point covered by no coset (cannot occur: `m + M` is a coset).
    Uncovered(Element),
    /// A point in the intersection of two cosets admitting no member
    /// coset inside the intersection.
    Counterexample {
        point: Element,
        coset1: Coset,
        coset2: Coset,
    },
}

impl BasisCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, BasisCheck::Valid)
    }
}

/// Basis axioms: the cosets cover `M`, and every point of a pairwise
/// intersection has a member coset through it inside the intersection.
pub fn check_basis_axioms(basis: &CoprimeBasis) -> BasisCheck {
    let module = basis.module();
    let sets = basis.point_sets();
    let mut cover = PointSet::empty(module.order());
    for s in &sets {
        cover.union_with(s);
    }
    if !cover.is_full() {
        let missing = (0..module.order()).find(|&i| !cover.contains(i)).unwrap();
        return BasisCheck::Uncovered(module.element(missing));
    }
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            let meet = a.intersect(b);
            for p in meet.iter() {
                let ok = sets
                    .iter()
                    .any(|c| c.contains(p) && c.is_subset(&meet));
                if !ok {
                    return BasisCheck::Counterexample {
                        point: module.element(p),
                        coset1: basis.cosets[i].clone(),
                        coset2: basis.cosets[j].clone(),
                    };
                }
            }
        }
    }
    BasisCheck::Valid
}

/// A finite topological space: an ordered ground set with every open
/// materialized as a point bitset. Opens are sorted by size then bits and
/// always include the empty set and the ground set.
#[derive(Debug, Clone)]
pub struct FiniteTopology {
    labels: Vec<String>,
    opens: Vec<PointSet>,
    min_nbhd: OnceLock<Vec<PointSet>>,
}

impl PartialEq for FiniteTopology {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.opens == other.opens
    }
}
impl Eq for FiniteTopology {}

impl FiniteTopology {
    /// Build from an explicit open family, validating the finite-topology
    /// axioms (empty set, ground, unions, finite intersections).
    pub fn from_opens(labels: Vec<String>, opens: Vec<PointSet>) -> Result<FiniteTopology> {
        let n = labels.len();
        let mut family: Vec<PointSet> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for o in opens {
            assert_eq!(o.ground_len(), n, "open over wrong ground set");
            if seen.insert(o.clone()) {
                family.push(o);
            }
        }
        let empty = PointSet::empty(n);
        let ground = PointSet::full(n);
        if seen.insert(empty.clone()) {
            family.push(empty);
        }
        if seen.insert(ground.clone()) {
            family.push(ground);
        }
        for a in &family {
            for b in &family {
                if !seen.contains(&a.union(b)) {
                    return Err(Error::Parse(format!(
                        "open family not closed under union: {a:?} \u{222a} {b:?} missing"
                    )));
                }
                if !seen.contains(&a.intersect(b)) {
                    return Err(Error::Parse(format!(
                        "open family not closed under intersection: {a:?} \u{2229} {b:?} missing"
                    )));
                }
            }
        }
        family.sort_by_key(|s| s.sort_key());
        Ok(FiniteTopology {
            labels,
            opens: family,
            min_nbhd: OnceLock::new(),
        })
    }

    fn from_union_closed(labels: Vec<String>, mut opens: Vec<PointSet>) -> FiniteTopology {
        opens.sort_by_key(|s| s.sort_key());
        opens.dedup();
        FiniteTopology {
            labels,
            opens,
            min_nbhd: OnceLock::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        self.opens.iter().any(|o| o == s)
    }

    /// Indiscrete means the only nonempty open is the ground set.
    pub fn is_indiscrete(&self) -> bool {
        self.opens.iter().all(|o| o.is_empty() || o.is_full())
    }

    /// Minimal open neighborhood of each point: the intersection of all
    /// opens containing it (open in a finite space).
    pub fn min_neighborhoods(&self) -> &[PointSet] {
        self.min_nbhd.get_or_init(|| {
            (0..self.labels.len())
                .map(|x| {
                    let mut acc = PointSet::full(self.labels.len());
                    for o in &self.opens {
                        if o.contains(x) {
                            acc = acc.intersect(o);
                        }
                    }
                    acc
                })
                .collect()
        })
    }

    /// Closure of `s`: the points all of whose opens meet `s`;
    /// equivalently the complement of the union of the opens disjoint
    /// from `s`.
    pub fn closure(&self, s: &PointSet) -> PointSet {
        let mut outside = PointSet::empty(self.labels.len());
        for o in &self.opens {
            if !o.intersects(s) {
                outside.union_with(o);
            }
        }
        PointSet::full(self.labels.len()).minus(&outside)
    }

    /// Points whose only open neighborhood is the whole space.
    pub fn indiscrete_points(&self) -> PointSet {
        let mut proper = PointSet::empty(self.labels.len());
        for o in &self.opens {
            if !o.is_full() {
                proper.union_with(o);
            }
        }
        PointSet::full(self.labels.len()).minus(&proper)
    }

    /// Subspace topology on `keep`, with points reindexed in ground order.
    pub fn subspace(&self, keep: &PointSet) -> FiniteTopology {
        let kept: Vec<usize> = keep.iter().collect();
        let labels: Vec<String> = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let reindex = |o: &PointSet| {
            PointSet::from_indices(
                kept.len(),
                kept.iter()
                    .enumerate()
                    .filter(|(_, &i)| o.contains(i))
                    .map(|(new, _)| new),
            )
        };
        let opens: Vec<PointSet> = self.opens.iter().map(reindex).collect();
        FiniteTopology::from_union_closed(labels, opens)
    }

    /// Brute-force separation report with witnesses.
    pub fn separation(&self) -> SeparationReport {
        let n = self.labels.len();
        let nbhd = self.min_neighborhoods();
        let mut t0 = true;
        let mut t1 = true;
        let mut t2 = true;
        let mut t0_witness = None;
        let mut t1_witness = None;
        let mut t2_witness = None;
        'outer_t0: for x in 0..n {
            for y in (x + 1)..n {
                if nbhd[x] == nbhd[y] {
                    t0 = false;
                    t0_witness = Some((self.labels[x].clone(), self.labels[y].clone()));
                    break 'outer_t0;
                }
            }
        }
        // x in closure({y}) iff y lies in every open around x, i.e. in U_x
        'outer_t1: for x in 0..n {
            for y in 0..n {
                if x != y && nbhd[x].contains(y) {
                    t1 = false;
                    t1_witness = Some((self.labels[x].clone(), self.labels[y].clone()));
                    break 'outer_t1;
                }
            }
        }
        'outer_t2: for x in 0..n {
            for y in (x + 1)..n {
                if nbhd[x].intersects(&nbhd[y]) {
                    t2 = false;
                    t2_witness = Some((self.labels[x].clone(), self.labels[y].clone()));
                    break 'outer_t2;
                }
            }
        }
        SeparationReport {
            t0,
            t1,
            t2,
            t0_witness,
            t1_witness,
            t2_witness,
        }
    }

    /// Disjoint opens separating `x` and `y`, when they exist. The minimal
    /// neighborhoods are the canonical choice: any separating pair
    /// contains them.
    pub fn separating_opens(&self, x: usize, y: usize) -> Option<(PointSet, PointSet)> {
        let nbhd = self.min_neighborhoods();
        if nbhd[x].intersects(&nbhd[y]) {
            None
        } else {
            Some((nbhd[x].clone(), nbhd[y].clone()))
        }
    }

    /// JSON form `{ground: [...], opens: [[...], ...]}` in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        let opens: Vec<Vec<&str>> = self
            .opens
            .iter()
            .map(|o| o.iter().map(|i| self.labels[i].as_str()).collect())
            .collect();
        serde_json::json!({
            "ground": self.labels,
            "opens": opens,
        })
    }

    /// DOT rendering of the specialization preorder: an edge `x -> y` iff
    /// `x` lies in the closure of `{y}`; indiscrete points are shaded.
    pub fn to_dot(&self) -> String {
        let n = self.labels.len();
        let nbhd = self.min_neighborhoods();
        let indiscrete = self.indiscrete_points();
        let mut out = String::from("digraph specialization {\n");
        for x in 0..n {
            let style = if indiscrete.contains(x) {
                " [style=filled, fillcolor=lightgray]"
            } else {
                ""
            };
            out.push_str(&format!("  \"{}\"{};\n", self.labels[x], style));
        }
        for x in 0..n {
            for y in 0..n {
                // x in closure({y}) iff y in U_x
                if x != y && nbhd[x].contains(y) {
                    out.push_str(&format!(
                        "  \"{}\" -> \"{}\";\n",
                        self.labels[x], self.labels[y]
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// T0/T1/T2 verdicts with inseparable-pair witnesses for each failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    pub t0_witness: Option<(String, String)>,
    pub t1_witness: Option<(String, String)>,
    pub t2_witness: Option<(String, String)>,
}

/// Generate the full topology from a validated basis: all unions of basis
/// sets, plus the empty set, capped at `max_opens`.
///
/// The union closure is built from the minimal neighborhoods: with valid
/// axioms each is itself a basis set, and the opens are exactly the
/// unions of minimal neighborhoods.
pub fn generate_topology(basis: &CoprimeBasis, max_opens: usize) -> Result<FiniteTopology> {
    match check_basis_axioms(basis) {
        BasisCheck::Valid => {}
        BasisCheck::Uncovered(p) => {
            return Err(Error::NotABasis {
                point: p.to_string(),
            })
        }
        BasisCheck::Counterexample { point, .. } => {
            return Err(Error::NotABasis {
                point: point.to_string(),
            })
        }
    }
    let module = basis.module();
    let order = module.order();
    let sets = basis.point_sets();
    let mut atoms: Vec<PointSet> = (0..order)
        .map(|x| {
            let mut acc = PointSet::full(order);
            for s in &sets {
                if s.contains(x) {
                    acc = acc.intersect(s);
                }
            }
            acc
        })
        .collect();
    atoms.sort_by_key(|s| s.sort_key());
    atoms.dedup();
    let mut known: std::collections::HashSet<PointSet> = std::collections::HashSet::new();
    known.insert(PointSet::empty(order));
    let mut frontier: Vec<PointSet> = vec![PointSet::empty(order)];
    for atom in &atoms {
        let mut added = Vec::new();
        for s in &frontier {
            let u = s.union(atom);
            if known.insert(u.clone()) {
                added.push(u);
            }
        }
        frontier.extend(added);
        if known.len() > max_opens {
            return Err(Error::OpenSetCap { cap: max_opens });
        }
    }
    let labels = module.elements().map(|e| e.to_string()).collect();
    Ok(FiniteTopology::from_union_closed(
        labels,
        known.into_iter().collect(),
    ))
}

/// Continuity verdict for the module operations against the product
/// topology (basis: rectangles of opens).
#[derive(Debug, Clone)]
pub enum ContinuityCheck {
    Continuous,
    /// `open` has a preimage point `pair` admitting no basis rectangle
    /// inside the preimage.
    Discontinuous {
        operation: &'static str,
        open: PointSet,
        pair: (Element, Element),
    },
}

impl ContinuityCheck {
    pub fn is_continuous(&self) -> bool {
        matches!(self, ContinuityCheck::Continuous)
    }
}

/// All pairs `(a, b)` with `a + b` in `target`, in enumeration order.
pub fn addition_preimage(module: &FiniteModule, target: &PointSet) -> Vec<(Element, Element)> {
    let mut pairs = Vec::new();
    for a in 0..module.order() {
        for b in 0..module.order() {
            if target.contains(module.add_idx(a, b)) {
                pairs.push((module.element(a), module.element(b)));
            }
        }
    }
    pairs
}

/// Check continuity of addition and negation for `module` carrying `t`
/// (whose ground must be the module's enumeration).
///
/// A preimage is open in the product topology iff around each of its
/// points some open rectangle fits inside; the minimal rectangle at
/// `(a, b)` is `U_a x U_b`, so that is the only rectangle to test.
pub fn is_topological_group(module: &FiniteModule, t: &FiniteTopology) -> ContinuityCheck {
    assert_eq!(
        t.ground_size(),
        module.order(),
        "topology ground must be the module"
    );
    let n = module.order();
    let nbhd = t.min_neighborhoods();
    // distinct neighborhoods are few; cache their pointwise sums
    let mut distinct: Vec<PointSet> = nbhd.to_vec();
    distinct.sort_by_key(|s| s.sort_key());
    distinct.dedup();
    let id_of = |s: &PointSet| distinct.binary_search_by_key(&s.sort_key(), |d| d.sort_key()).unwrap();
    let point_ids: Vec<usize> = (0..n).map(|x| id_of(&nbhd[x])).collect();
    let k = distinct.len();
    let mut sum_cache: Vec<Option<PointSet>> = vec![None; k * k];
    let mut sum_of = |i: usize, j: usize, module: &FiniteModule| -> PointSet {
        if sum_cache[i * k + j].is_none() {
            let mut out = PointSet::empty(n);
            for a in distinct[i].iter() {
                out.union_with(&distinct[j].map(|b| module.add_idx(a, b)));
            }
            sum_cache[i * k + j] = Some(out);
        }
        sum_cache[i * k + j].clone().unwrap()
    };
    for open in t.opens() {
        if open.is_empty() || open.is_full() {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if !open.contains(module.add_idx(a, b)) {
                    continue;
                }
                let rect_sum = sum_of(point_ids[a], point_ids[b], module);
                if !rect_sum.is_subset(open) {
                    return ContinuityCheck::Discontinuous {
                        operation: "addition",
                        open: open.clone(),
                        pair: (module.element(a), module.element(b)),
                    };
                }
            }
        }
        for a in 0..n {
            if !open.contains(module.neg_idx(a)) {
                continue;
            }
            let neg_image = nbhd[a].map(|x| module.neg_idx(x));
            if !neg_image.is_subset(open) {
                return ContinuityCheck::Discontinuous {
                    operation: "negation",
                    open: open.clone(),
                    pair: (module.element(a), module.element(module.neg_idx(a))),
                };
            }
        }
    }
    ContinuityCheck::Continuous
}

/// Least prime dividing none of `m`, `n`, `m - n`.
pub fn least_separating_prime(m: i128, n: i128) -> i128 {
    zarith::primes()
        .find(|&p| m % p != 0 && n % p != 0 && (m - n) % p != 0)
        .expect("primes are unbounded")
}

/// Constructive T2 witness on the integers: disjoint coprime cosets
/// `m + pZ`, `n + pZ` for the least prime `p` dividing none of `m`, `n`,
/// `m - n`. Disjointness is re-certified through `coset_intersect`.
pub fn t2_witness_integers(m: i128, n: i128) -> Result<(LatticeCoset, LatticeCoset)> {
    if m == 0 || n == 0 || m == n {
        return Err(Error::Parse(
            "t2 witnesses need distinct nonzero integers".into(),
        ));
    }
    let p = least_separating_prime(m, n);
    let lat = IntegerLattice::from_generators(1, &[vec![p]])?;
    let c1 = LatticeCoset::new(&[m], lat.clone())?;
    let c2 = LatticeCoset::new(&[n], lat)?;
    debug_assert!(zlattice::is_coprime_coset(&[m], c1.lattice())?);
    match zlattice::coset_intersect(&c1, &c2)? {
        CosetMeet::Disjoint => Ok((c1, c2)),
        other => unreachable!("p excludes m - n, cosets cannot meet: {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::cyclic;

    fn z(n: u64) -> FiniteModule {
        FiniteModule::new(&[n]).unwrap()
    }

    fn set(m: &FiniteModule, idx: &[usize]) -> PointSet {
        PointSet::from_indices(m.order(), idx.iter().copied())
    }

    fn point_sets_of(b: &CoprimeBasis) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = b.point_sets().iter().map(|s| s.iter().collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn basis_of_z8_matches_golden() {
        let b = coprime_basis(&z(8)).unwrap();
        assert_eq!(
            point_sets_of(&b),
            vec![
                vec![0, 1, 2, 3, 4, 5, 6, 7],
                vec![1, 3, 5, 7],
                vec![1, 5],
                vec![3, 7],
            ]
        );
    }

    #[test]
    fn basis_of_simple_module() {
        let b = coprime_basis(&z(2)).unwrap();
        assert_eq!(point_sets_of(&b), vec![vec![0, 1]]);
    }

    #[test]
    fn basis_of_klein_contains_line_coset() {
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let b = coprime_basis(&klein).unwrap();
        // (1,1) + <(1,0)> = {(0,1),(1,1)} = indices {1,3}
        assert!(point_sets_of(&b).contains(&vec![1, 3]));
    }

    #[test]
    fn basis_axioms_on_z8_and_z2() {
        assert!(check_basis_axioms(&coprime_basis(&z(8)).unwrap()).is_valid());
        assert!(check_basis_axioms(&coprime_basis(&z(2)).unwrap()).is_valid());
    }

    #[test]
    fn basis_axioms_fail_on_klein_at_corner() {
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let b = coprime_basis(&klein).unwrap();
        match check_basis_axioms(&b) {
            BasisCheck::Counterexample {
                point,
                coset1,
                coset2,
            } => {
                assert_eq!(point.to_string(), "(1,1)");
                let meet = coset1.points().intersect(&coset2.points());
                assert_eq!(meet.card(), 1);
                assert!(meet.contains(3));
            }
            other => panic!("expected a counterexample, got {other:?}"),
        }
    }

    #[test]
    fn topology_of_z8_matches_golden() {
        let t = generate_topology(&coprime_basis(&z(8)).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        let opens: Vec<Vec<usize>> = t.opens().iter().map(|o| o.iter().collect()).collect();
        assert_eq!(
            opens,
            vec![
                vec![],
                vec![1, 5],
                vec![3, 7],
                vec![1, 3, 5, 7],
                vec![0, 1, 2, 3, 4, 5, 6, 7],
            ]
        );
    }

    #[test]
    fn topology_of_z2_is_indiscrete() {
        let t = generate_topology(&coprime_basis(&z(2)).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        assert!(t.is_indiscrete());
        assert_eq!(t.opens().len(), 2);
    }

    #[test]
    fn topology_of_z4() {
        let t = generate_topology(&coprime_basis(&z(4)).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        let opens: Vec<Vec<usize>> = t.opens().iter().map(|o| o.iter().collect()).collect();
        assert_eq!(opens, vec![vec![], vec![1, 3], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn generate_rejects_invalid_basis() {
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let b = coprime_basis(&klein).unwrap();
        assert!(matches!(
            generate_topology(&b, DEFAULT_OPEN_CAP),
            Err(Error::NotABasis { .. })
        ));
    }

    #[test]
    fn open_cap_is_enforced() {
        let z8 = z(8);
        let b = coprime_basis(&z8).unwrap();
        assert!(matches!(
            generate_topology(&b, 3),
            Err(Error::OpenSetCap { cap: 3 })
        ));
    }

    #[test]
    fn punctured_space_of_z8() {
        let z8 = z(8);
        let t = generate_topology(&coprime_basis(&z8).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        let keep = PointSet::full(8).minus(&PointSet::singleton(8, 0));
        let g = t.subspace(&keep);
        let opens: Vec<Vec<String>> = g
            .opens()
            .iter()
            .map(|o| o.iter().map(|i| g.labels()[i].clone()).collect())
            .collect();
        let as_strs: Vec<Vec<&str>> = opens
            .iter()
            .map(|o| o.iter().map(|s| s.as_str()).collect())
            .collect();
        assert_eq!(
            as_strs,
            vec![
                Vec::<&str>::new(),
                vec!["(1)", "(5)"],
                vec!["(3)", "(7)"],
                vec!["(1)", "(3)", "(5)", "(7)"],
                vec!["(1)", "(2)", "(3)", "(4)", "(5)", "(6)", "(7)"],
            ]
        );
    }

    #[test]
    fn subspace_identity_and_empty() {
        let t = generate_topology(&coprime_basis(&z(8)).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        let same = t.subspace(&PointSet::full(8));
        assert_eq!(same, t);
        let empty = t.subspace(&PointSet::empty(8));
        assert_eq!(empty.opens().len(), 1);
        assert!(empty.opens()[0].is_empty());
    }

    #[test]
    fn closure_examples_on_z8() {
        let z8 = z(8);
        let t = generate_topology(&coprime_basis(&z8).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        assert_eq!(
            t.closure(&set(&z8, &[2])),
            set(&z8, &[0, 2, 4, 6])
        );
        assert_eq!(t.closure(&set(&z8, &[0])), set(&z8, &[0, 2, 4, 6]));
        assert_eq!(t.closure(&PointSet::full(8)), PointSet::full(8));
    }

    #[test]
    fn closure_agrees_with_per_point_scan() {
        // dual route: definition-level scan over opens per point
        let z8 = z(8);
        let t = generate_topology(&coprime_basis(&z8).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        for s in [set(&z8, &[2]), set(&z8, &[0]), set(&z8, &[1, 2]), set(&z8, &[])] {
            let direct = PointSet::from_indices(
                8,
                (0..8).filter(|&x| {
                    t.opens()
                        .iter()
                        .all(|o| !o.contains(x) || o.intersects(&s))
                }),
            );
            assert_eq!(t.closure(&s), direct);
        }
    }

    #[test]
    fn indiscrete_points_of_z8() {
        let z8 = z(8);
        let t = generate_topology(&coprime_basis(&z8).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        assert_eq!(t.indiscrete_points(), set(&z8, &[0, 2, 4, 6]));
        let keep = PointSet::full(8).minus(&PointSet::singleton(8, 0));
        let g = t.subspace(&keep);
        let ind: Vec<&str> = g
            .indiscrete_points()
            .iter()
            .map(|i| g.labels()[i].as_str())
            .collect();
        assert_eq!(ind, vec!["(2)", "(4)", "(6)"]);
    }

    #[test]
    fn separation_of_z8_full_space() {
        let t = generate_topology(&coprime_basis(&z(8)).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        let rep = t.separation();
        assert!(!rep.t0 && !rep.t1 && !rep.t2);
        assert!(rep.t0_witness.is_some());
        // witness pair is topologically indistinguishable
        let (a, b) = rep.t0_witness.clone().unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn separation_extremes() {
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let discrete_opens: Vec<PointSet> = (0..8u32)
            .map(|mask| PointSet::from_indices(3, (0..3).filter(|&i| mask >> i & 1 == 1)))
            .collect();
        let discrete = FiniteTopology::from_opens(labels.clone(), discrete_opens).unwrap();
        let rep = discrete.separation();
        assert!(rep.t0 && rep.t1 && rep.t2);
        assert!(discrete.separating_opens(0, 1).is_some());

        let indiscrete = FiniteTopology::from_opens(
            labels,
            vec![PointSet::empty(3), PointSet::full(3)],
        )
        .unwrap();
        let rep = indiscrete.separation();
        assert!(!rep.t0 && !rep.t1 && !rep.t2);
        assert_eq!(indiscrete.indiscrete_points(), PointSet::full(3));
    }

    #[test]
    fn separation_implication_chain() {
        // t2 => t1 => t0 on assorted small topologies
        let z8 = z(8);
        let t = generate_topology(&coprime_basis(&z8).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        for space in [t.clone(), t.subspace(&PointSet::full(8).minus(&PointSet::singleton(8, 0)))] {
            let rep = space.separation();
            assert!(!rep.t2 || rep.t1);
            assert!(!rep.t1 || rep.t0);
        }
    }

    #[test]
    fn z8_is_not_a_topological_group() {
        let z8 = z(8);
        let t = generate_topology(&coprime_basis(&z8).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        match is_topological_group(&z8, &t) {
            ContinuityCheck::Discontinuous { operation, open, .. } => {
                assert_eq!(operation, "addition");
                assert_eq!(open.iter().collect::<Vec<_>>(), vec![1, 5]);
            }
            ContinuityCheck::Continuous => panic!("Z8 must fail continuity"),
        }
    }

    #[test]
    fn addition_preimage_of_15_set() {
        let z8 = z(8);
        let target = set(&z8, &[1, 5]);
        let pairs = addition_preimage(&z8, &target);
        assert_eq!(pairs.len(), 16);
        for (a, b) in &pairs {
            let sum = z8.add(a, b);
            assert!(target.contains(z8.index_of(&sum)));
        }
    }

    #[test]
    fn indiscrete_topologies_are_topological_groups() {
        let z2 = z(2);
        let t = generate_topology(&coprime_basis(&z2).unwrap(), DEFAULT_OPEN_CAP).unwrap();
        assert!(is_topological_group(&z2, &t).is_continuous());
        // an explicitly indiscrete topology on Z8
        let z8 = z(8);
        let ind = FiniteTopology::from_opens(
            z8.elements().map(|e| e.to_string()).collect(),
            vec![PointSet::empty(8), PointSet::full(8)],
        )
        .unwrap();
        assert!(is_topological_group(&z8, &ind).is_continuous());
    }

    #[test]
    fn t2_witness_examples() {
        let (c1, c2) = t2_witness_integers(1, 2).unwrap();
        assert_eq!(c1.to_string(), "(1)+[(3)]");
        assert_eq!(c2.to_string(), "(2)+[(3)]");
        let (c1, c2) = t2_witness_integers(2, 4).unwrap();
        assert_eq!(c1.lattice().basis_columns(), vec![vec![3]]);
        assert_eq!((c1.rep()[0], c2.rep()[0]), (2, 1));
        let (c1, _) = t2_witness_integers(3, 6).unwrap();
        assert_eq!(c1.lattice().basis_columns(), vec![vec![5]]);
    }

    #[test]
    fn t2_witness_rejects_bad_input() {
        assert!(t2_witness_integers(0, 1).is_err());
        assert!(t2_witness_integers(3, 3).is_err());
    }

    #[test]
    fn basis_coset_invariants() {
        // every coset in B_M: nonzero submodule, Rm + N = M, covers M
        for factors in [vec![8], vec![12], vec![2, 4], vec![2, 2]] {
            let m = FiniteModule::new(&factors).unwrap();
            let b = coprime_basis(&m).unwrap();
            let mut cover = PointSet::empty(m.order());
            for c in b.cosets() {
                assert!(!c.submodule().is_zero());
                let rm = cyclic(&m, &c.rep());
                assert!(rm.sum_is_whole(c.submodule()).unwrap());
                cover.union_with(&c.points());
            }
            assert!(cover.is_full());
            // dedup: no two cosets share a point set
            let sets = b.point_sets();
            for (i, a) in sets.iter().enumerate() {
                for bb in &sets[i + 1..] {
                    assert_ne!(a, bb);
                }
            }
        }
    }
}
