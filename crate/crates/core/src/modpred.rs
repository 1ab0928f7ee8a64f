//! Submodule predicates on the finite backend and witness checking on the
//! lattice backend.
//!
//! Every predicate that can fail returns a refuting witness rather than a
//! bare boolean, so FAIL reports stay independently checkable. Scalar
//! quantification ranges over `[0, exponent)` throughout, which is
//! exhaustive because the integer action factors through `Z_exponent`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finmod::{Element, FiniteModule, Submodule};
use crate::zarith;
use crate::zlattice::IntegerLattice;

/// A witnessed predicate outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witnessed<W> {
    Holds,
    Refuted(W),
}

impl<W> Witnessed<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Witnessed::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Witnessed::Holds => None,
            Witnessed::Refuted(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Witnessed::Holds => None,
            Witnessed::Refuted(w) => Some(w),
        }
    }
}

/// True iff `n` is proper and nothing sits strictly between `n` and `M`.
pub fn is_maximal(n: &Submodule) -> Result<bool> {
    if n.is_whole() {
        return Ok(false);
    }
    for p in n.parent().enumerate_submodules()? {
        if n.is_subset(&p) && !p.is_whole() && p != *n {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn maximal_submodules(module: &FiniteModule) -> Result<Vec<Submodule>> {
    module
        .enumerate_submodules()?
        .into_iter()
        .filter_map(|n| match is_maximal(&n) {
            Ok(true) => Some(Ok(n)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// Refutation of primality: `a * m` lands in `N` while `a` is outside
/// `(N : M)` and `m` outside `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeWitness {
    pub scalar: u64,
    pub element: Element,
}

/// Exhaustive prime-submodule test; `n` must be proper.
pub fn is_prime(n: &Submodule) -> Result<Witnessed<PrimeWitness>> {
    if n.is_whole() {
        return Err(Error::NotProper);
    }
    let module = n.parent();
    let residual = n.residual();
    for a in 0..module.exponent() {
        if residual.contains(a as i128) {
            continue;
        }
        for m in 0..module.order() {
            if n.contains_idx(module.scalar_idx(a, m)) && !n.contains_idx(m) {
                return Ok(Witnessed::Refuted(PrimeWitness {
                    scalar: a,
                    element: module.element(m),
                }));
            }
        }
    }
    Ok(Witnessed::Holds)
}

/// Exhaustive strong-irreducibility test: refuted by `(K, L)` with
/// `K \u{2229} L \u{2286} N` but neither operand inside `N`. Testing the zero
/// submodule decides meet-irreducibility of the parent.
pub fn is_strongly_irreducible(n: &Submodule) -> Result<Witnessed<(Submodule, Submodule)>> {
    let subs = n.parent().enumerate_submodules()?;
    for (i, k) in subs.iter().enumerate() {
        if k.is_subset(n) {
            continue;
        }
        for l in &subs[i..] {
            if l.is_subset(n) {
                continue;
            }
            if k.members().intersect(l.members()).is_subset(n.members()) {
                return Ok(Witnessed::Refuted((k.clone(), l.clone())));
            }
        }
    }
    Ok(Witnessed::Holds)
}

/// Meet-irreducibility of the module: any two nonzero submodules meet
/// nontrivially, equivalently the zero submodule is strongly irreducible.
pub fn is_meet_irreducible(module: &FiniteModule) -> Result<Witnessed<(Submodule, Submodule)>> {
    is_strongly_irreducible(&Submodule::zero(module))
}

/// Multiplication test: every submodule equals `(N : M) M`; a refuting
/// submodule is returned otherwise.
pub fn is_multiplication(module: &FiniteModule) -> Result<Witnessed<Submodule>> {
    for n in module.enumerate_submodules()? {
        let e = n.residual().generator() as u64;
        if module.scaled_set(e) != *n.members() {
            return Ok(Witnessed::Refuted(n));
        }
    }
    Ok(Witnessed::Holds)
}

/// \u{3bc}-module test: `(N + K : M) = (N : M) + (K : M)` for all pairs,
/// which over the integers is a gcd identity on residual generators.
pub fn is_mu_module(module: &FiniteModule) -> Result<Witnessed<(Submodule, Submodule)>> {
    let subs = module.enumerate_submodules()?;
    let residuals: Vec<i128> = subs.iter().map(|s| s.residual().generator()).collect();
    for (i, n) in subs.iter().enumerate() {
        for (j, k) in subs.iter().enumerate().skip(i) {
            let sum = n.sum(k)?;
            let lhs = sum.residual().generator();
            let rhs = zarith::gcd(residuals[i], residuals[j]);
            if lhs != rhs {
                return Ok(Witnessed::Refuted((n.clone(), k.clone())));
            }
        }
    }
    Ok(Witnessed::Holds)
}

/// Finite coprime condition, pairwise form: whenever
/// `N + K1 = M = N + K2`, also `N + (K1 \u{2229} K2) = M`.
pub fn has_finite_coprime_condition(
    module: &FiniteModule,
) -> Result<Witnessed<(Submodule, Submodule, Submodule)>> {
    let subs = module.enumerate_submodules()?;
    for n in &subs {
        let partners: Vec<&Submodule> = subs
            .iter()
            .filter(|k| n.sum_is_whole(k).expect("same parent"))
            .collect();
        for (i, &k1) in partners.iter().enumerate() {
            for &k2 in &partners[i..] {
                let meet = k1.intersect(k2)?;
                if !n.sum_is_whole(&meet)? {
                    return Ok(Witnessed::Refuted((n.clone(), k1.clone(), k2.clone())));
                }
            }
        }
    }
    Ok(Witnessed::Holds)
}

/// Jacobson radical `J(N)`: the intersection of all maximal submodules
/// containing `N`, or `M` itself when none does (impossible for proper
/// `N` in a finite module).
pub fn jacobson(n: &Submodule) -> Result<Submodule> {
    let module = n.parent();
    let mut acc: Option<Submodule> = None;
    for p in maximal_submodules(module)? {
        if n.is_subset(&p) {
            acc = Some(match acc {
                None => p,
                Some(cur) => cur.intersect(&p)?,
            });
        }
    }
    Ok(acc.unwrap_or_else(|| Submodule::whole(module)))
}

/// `J(M) = J((0))`.
pub fn jacobson_radical(module: &FiniteModule) -> Result<Submodule> {
    jacobson(&Submodule::zero(module))
}

/// Refuting witnesses backing the `false` entries of a profile.
#[derive(Debug, Clone, Default)]
pub struct ProfileWitnesses {
    pub meet_irreducible: Option<(Submodule, Submodule)>,
    pub multiplication: Option<Submodule>,
    pub mu_module: Option<(Submodule, Submodule)>,
    pub finite_coprime_condition: Option<(Submodule, Submodule, Submodule)>,
    /// `(P, K, L)`: maximal `P` refuted by the pair `(K, L)`.
    pub strongly_irreducible_maximal: Option<(Submodule, Submodule, Submodule)>,
}

/// All per-module predicate verdicts plus the radical and maximal list.
#[derive(Debug, Clone)]
pub struct PredicateProfile {
    pub module: FiniteModule,
    pub simple: bool,
    pub meet_irreducible: bool,
    pub multiplication: bool,
    pub mu_module: bool,
    pub finite_coprime_condition: bool,
    pub all_maximal_strongly_irreducible: bool,
    pub ann_prime: bool,
    pub jacobson_radical: Submodule,
    pub maximal_submodules: Vec<Submodule>,
    pub witnesses: ProfileWitnesses,
}

impl PredicateProfile {
    pub fn compute(module: &FiniteModule) -> Result<PredicateProfile> {
        let subs = module.enumerate_submodules()?;
        let simple = subs.len() == 2;
        let mut witnesses = ProfileWitnesses::default();

        let meet = is_meet_irreducible(module)?;
        let meet_irreducible = meet.holds();
        witnesses.meet_irreducible = meet.into_witness();

        let mult = is_multiplication(module)?;
        let multiplication = mult.holds();
        witnesses.multiplication = mult.into_witness();

        let mu = is_mu_module(module)?;
        let mu_module = mu.holds();
        witnesses.mu_module = mu.into_witness();

        let fcc = has_finite_coprime_condition(module)?;
        let finite_coprime_condition = fcc.holds();
        witnesses.finite_coprime_condition = fcc.into_witness();

        let maximal = maximal_submodules(module)?;
        let mut all_maximal_strongly_irreducible = true;
        for p in &maximal {
            if let Witnessed::Refuted((k, l)) = is_strongly_irreducible(p)? {
                all_maximal_strongly_irreducible = false;
                witnesses.strongly_irreducible_maximal = Some((p.clone(), k, l));
                break;
            }
        }

        Ok(PredicateProfile {
            module: module.clone(),
            simple,
            meet_irreducible,
            multiplication,
            mu_module,
            finite_coprime_condition,
            all_maximal_strongly_irreducible,
            ann_prime: module.annihilator().is_prime_ideal(),
            jacobson_radical: jacobson_radical(module)?,
            maximal_submodules: maximal,
            witnesses,
        })
    }

    /// Flat JSON object with stable key names (keys serialize sorted).
    pub fn to_json(&self) -> serde_json::Value {
        let sub_json = |s: &Submodule| {
            serde_json::Value::Array(
                s.elements()
                    .map(|e| serde_json::Value::String(e.to_string()))
                    .collect(),
            )
        };
        let mut witnesses = serde_json::Map::new();
        if let Some((k, l)) = &self.witnesses.meet_irreducible {
            witnesses.insert(
                "meet_irreducible".into(),
                serde_json::json!({ "k": sub_json(k), "l": sub_json(l) }),
            );
        }
        if let Some(n) = &self.witnesses.multiplication {
            witnesses.insert(
                "multiplication".into(),
                serde_json::json!({ "n": sub_json(n), "residual": n.residual().generator() as i64 }),
            );
        }
        if let Some((n, k)) = &self.witnesses.mu_module {
            witnesses.insert(
                "mu_module".into(),
                serde_json::json!({ "n": sub_json(n), "k": sub_json(k) }),
            );
        }
        if let Some((n, k1, k2)) = &self.witnesses.finite_coprime_condition {
            witnesses.insert(
                "finite_coprime_condition".into(),
                serde_json::json!({ "n": sub_json(n), "k1": sub_json(k1), "k2": sub_json(k2) }),
            );
        }
        if let Some((p, k, l)) = &self.witnesses.strongly_irreducible_maximal {
            witnesses.insert(
                "strongly_irreducible_maximal".into(),
                serde_json::json!({ "p": sub_json(p), "k": sub_json(k), "l": sub_json(l) }),
            );
        }
        serde_json::json!({
            "module": self.module.to_string(),
            "order": self.module.order(),
            "exponent": self.module.exponent(),
            "invariant_factors": self.module.invariant_factors(),
            "simple": self.simple,
            "meet_irreducible": self.meet_irreducible,
            "multiplication": self.multiplication,
            "mu_module": self.mu_module,
            "finite_coprime_condition": self.finite_coprime_condition,
            "all_maximal_strongly_irreducible": self.all_maximal_strongly_irreducible,
            "ann_prime": self.ann_prime,
            "jacobson_radical": sub_json(&self.jacobson_radical),
            "maximal_submodules": self.maximal_submodules.iter().map(sub_json).collect::<Vec<_>>(),
            "witnesses": serde_json::Value::Object(witnesses),
        })
    }
}

/// Certificate that `N` is not strongly irreducible in Z^n, via the pair
/// `(K, L)`: records `K \u{2229} L \u{2286} N` together with explicit vectors in
/// `K - N` and `L - N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatRefutation {
    pub ambient_rank: usize,
    pub n: String,
    pub k: String,
    pub l: String,
    pub intersection: String,
    pub non_member_k: Vec<i128>,
    pub non_member_l: Vec<i128>,
}

fn column_outside(of: &IntegerLattice, not_in: &IntegerLattice) -> Result<Option<Vec<i128>>> {
    for col in of.basis_columns() {
        if !not_in.contains_vector(&col)? {
            return Ok(Some(col));
        }
    }
    Ok(None)
}

/// Verify a strong-irreducibility refutation on the lattice backend.
pub fn check_strongly_irreducible_witness_lat(
    n: &IntegerLattice,
    k: &IntegerLattice,
    l: &IntegerLattice,
) -> Result<LatRefutation> {
    let meet = k.intersect(l)?;
    if !n.contains(&meet)? {
        let v = column_outside(&meet, n)?.expect("non-containment has a witness column");
        return Err(Error::NotARefutation(format!(
            "K \u{2229} L is not contained in N: witness {v:?}"
        )));
    }
    let Some(non_member_k) = column_outside(k, n)? else {
        return Err(Error::NotARefutation("K is contained in N".into()));
    };
    let Some(non_member_l) = column_outside(l, n)? else {
        return Err(Error::NotARefutation("L is contained in N".into()));
    };
    Ok(LatRefutation {
        ambient_rank: n.ambient_rank(),
        n: n.to_string(),
        k: k.to_string(),
        l: l.to_string(),
        intersection: meet.to_string(),
        non_member_k,
        non_member_l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::cyclic;

    fn z(n: u64) -> FiniteModule {
        FiniteModule::new(&[n]).unwrap()
    }

    fn el(m: &FiniteModule, coords: &[i128]) -> Element {
        m.element_from_coords(coords).unwrap()
    }

    fn sub(m: &FiniteModule, gen: &[i128]) -> Submodule {
        cyclic(m, &el(m, gen))
    }

    #[test]
    fn maximal_examples() {
        let z8 = z(8);
        assert!(is_maximal(&sub(&z8, &[2])).unwrap());
        assert!(!is_maximal(&sub(&z8, &[4])).unwrap());
        assert!(!is_maximal(&Submodule::whole(&z8)).unwrap());
        let z2 = z(2);
        assert!(is_maximal(&Submodule::zero(&z2)).unwrap());
    }

    #[test]
    fn maximal_matches_prime_index_oracle() {
        for factors in [vec![8], vec![12], vec![2, 4], vec![2, 2], vec![3, 3]] {
            let m = FiniteModule::new(&factors).unwrap();
            for n in m.enumerate_submodules().unwrap() {
                let index = m.order() / n.size();
                let oracle = zarith::is_prime(index as i128);
                assert_eq!(is_maximal(&n).unwrap(), oracle, "N={n:?} in {m}");
            }
        }
    }

    #[test]
    fn prime_examples() {
        let z8 = z(8);
        assert!(is_prime(&sub(&z8, &[2])).unwrap().holds());
        let refuted = is_prime(&sub(&z8, &[4])).unwrap();
        let w = refuted.witness().expect("4Z8 is not prime");
        assert_eq!(w.scalar, 2);
        assert_eq!(w.element, el(&z8, &[2]));
        // the witness re-validates
        let n = sub(&z8, &[4]);
        assert!(n.contains(&z8.scalar(w.scalar, &w.element)));
        assert!(!n.residual().contains(w.scalar as i128));
        assert!(!n.contains(&w.element));

        let z2 = z(2);
        assert!(is_prime(&Submodule::zero(&z2)).unwrap().holds());
        assert_eq!(
            is_prime(&Submodule::whole(&z2)).unwrap_err(),
            Error::NotProper
        );
    }

    #[test]
    fn prime_implies_prime_residual() {
        for factors in [vec![8], vec![12], vec![2, 4], vec![2, 2]] {
            let m = FiniteModule::new(&factors).unwrap();
            for n in m.enumerate_submodules().unwrap() {
                if n.is_whole() {
                    continue;
                }
                if is_prime(&n).unwrap().holds() {
                    assert!(n.residual().is_prime_ideal(), "N={n:?} in {m}");
                }
            }
        }
    }

    #[test]
    fn strongly_irreducible_examples() {
        let z8 = z(8);
        assert!(is_strongly_irreducible(&Submodule::zero(&z8)).unwrap().holds());
        for p in maximal_submodules(&z8).unwrap() {
            assert!(is_strongly_irreducible(&p).unwrap().holds());
        }
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let refuted = is_strongly_irreducible(&Submodule::zero(&klein)).unwrap();
        let (k, l) = refuted.witness().expect("Klein group is not meet irreducible");
        assert!(k.intersect(l).unwrap().is_zero());
        assert!(!k.is_zero() && !l.is_zero());
    }

    #[test]
    fn meet_irreducible_examples() {
        assert!(is_meet_irreducible(&z(8)).unwrap().holds());
        assert!(is_meet_irreducible(&z(2)).unwrap().holds());
        assert!(!is_meet_irreducible(&FiniteModule::new(&[2, 2]).unwrap())
            .unwrap()
            .holds());
    }

    #[test]
    fn multiplication_examples() {
        assert!(is_multiplication(&z(8)).unwrap().holds());
        assert!(is_multiplication(&z(2)).unwrap().holds());
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let refuted = is_multiplication(&klein).unwrap();
        let n = refuted.witness().expect("Klein group is not multiplication");
        let e = n.residual().generator() as u64;
        assert_ne!(klein.scaled_set(e), *n.members());
        assert_eq!(n.size(), 2);
    }

    #[test]
    fn mu_module_examples() {
        assert!(is_mu_module(&z(8)).unwrap().holds());
        assert!(is_mu_module(&z(2)).unwrap().holds());
        // every cyclic module is a mu-module: residuals are gcd-compatible
        for n in [6u64, 12, 30] {
            assert!(is_mu_module(&z(n)).unwrap().holds());
        }
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let refuted = is_mu_module(&klein).unwrap();
        let (n, k) = refuted.witness().expect("Klein group is not a mu-module");
        let lhs = n.sum(k).unwrap().residual().generator();
        let rhs = zarith::gcd(n.residual().generator(), k.residual().generator());
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn finite_coprime_condition_examples() {
        assert!(has_finite_coprime_condition(&z(8)).unwrap().holds());
        assert!(has_finite_coprime_condition(&z(2)).unwrap().holds());
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        let refuted = has_finite_coprime_condition(&klein).unwrap();
        let (n, k1, k2) = refuted.witness().expect("Klein group fails the condition");
        assert!(n.sum_is_whole(k1).unwrap());
        assert!(n.sum_is_whole(k2).unwrap());
        assert!(!n.sum_is_whole(&k1.intersect(k2).unwrap()).unwrap());
    }

    #[test]
    fn coprime_condition_equivalence_small() {
        // the equivalence with "every maximal submodule is strongly
        // irreducible" is itself a tested invariant
        for factors in [
            vec![2],
            vec![4],
            vec![8],
            vec![6],
            vec![12],
            vec![2, 2],
            vec![2, 4],
            vec![3, 3],
            vec![2, 2, 2],
        ] {
            let m = FiniteModule::new(&factors).unwrap();
            let fcc = has_finite_coprime_condition(&m).unwrap().holds();
            let all_max = maximal_submodules(&m)
                .unwrap()
                .iter()
                .all(|p| is_strongly_irreducible(p).unwrap().holds());
            assert_eq!(fcc, all_max, "mismatch for {m}");
        }
    }

    #[test]
    fn jacobson_examples() {
        let z8 = z(8);
        let j = jacobson_radical(&z8).unwrap();
        assert_eq!(j, sub(&z8, &[2]));
        let klein = FiniteModule::new(&[2, 2]).unwrap();
        assert!(jacobson_radical(&klein).unwrap().is_zero());
        assert!(jacobson_radical(&z(2)).unwrap().is_zero());
        // J of the whole module: no maximal contains M, so M is returned
        assert!(jacobson(&Submodule::whole(&z8)).unwrap().is_whole());
    }

    #[test]
    fn jacobson_monotone_small() {
        for factors in [vec![8], vec![12], vec![2, 4], vec![2, 2]] {
            let m = FiniteModule::new(&factors).unwrap();
            let subs = m.enumerate_submodules().unwrap();
            for a in &subs {
                let ja = jacobson(a).unwrap();
                assert!(a.is_subset(&ja));
                for b in &subs {
                    if a.is_subset(b) {
                        assert!(ja.is_subset(&jacobson(b).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn ring_ideal_coprimality_shadow() {
        // Z_n as a Z-module: coprime to two submodules implies coprime to
        // their intersection
        for n in [4u64, 6, 8, 9, 12, 30] {
            assert!(has_finite_coprime_condition(&z(n)).unwrap().holds());
        }
    }

    #[test]
    fn multiplication_prime_implies_strongly_irreducible() {
        for n in [4u64, 8, 9, 12, 16, 27] {
            let m = z(n);
            assert!(is_multiplication(&m).unwrap().holds());
            for sub in m.enumerate_submodules().unwrap() {
                if sub.is_whole() {
                    continue;
                }
                if is_prime(&sub).unwrap().holds() {
                    assert!(is_strongly_irreducible(&sub).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn profile_of_z8() {
        let p = PredicateProfile::compute(&z(8)).unwrap();
        assert!(!p.simple);
        assert!(p.meet_irreducible);
        assert!(p.multiplication);
        assert!(p.mu_module);
        assert!(p.finite_coprime_condition);
        assert!(p.all_maximal_strongly_irreducible);
        assert!(!p.ann_prime);
        assert_eq!(p.maximal_submodules.len(), 1);
        assert_eq!(p.jacobson_radical.size(), 4);
        let json = p.to_json();
        assert_eq!(json["module"], "8");
        assert_eq!(json["meet_irreducible"], true);
    }

    #[test]
    fn profile_of_klein() {
        let p = PredicateProfile::compute(&FiniteModule::new(&[2, 2]).unwrap()).unwrap();
        assert!(!p.simple);
        assert!(!p.meet_irreducible);
        assert!(!p.multiplication);
        assert!(!p.mu_module);
        assert!(!p.finite_coprime_condition);
        assert!(!p.all_maximal_strongly_irreducible);
        assert!(p.ann_prime);
        assert_eq!(p.maximal_submodules.len(), 3);
        assert!(p.witnesses.multiplication.is_some());
    }

    #[test]
    fn lattice_refutation_certificate() {
        let n = IntegerLattice::from_generators(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        let k = IntegerLattice::from_generators(2, &[vec![1, 0], vec![0, 2]]).unwrap();
        let l = IntegerLattice::from_generators(2, &[vec![2, 0], vec![0, 1]]).unwrap();
        let cert = check_strongly_irreducible_witness_lat(&n, &k, &l).unwrap();
        assert_eq!(cert.non_member_k, vec![1, 0]);
        assert_eq!(cert.non_member_l, vec![0, 1]);
        assert!(!n.contains_vector(&cert.non_member_k).unwrap());
        assert!(!n.contains_vector(&cert.non_member_l).unwrap());
        assert!(n.contains(&k.intersect(&l).unwrap()).unwrap());
    }

    #[test]
    fn lattice_refutation_rejects_degenerate() {
        let n = IntegerLattice::from_generators(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        let err = check_strongly_irreducible_witness_lat(&n, &n, &n).unwrap_err();
        assert!(matches!(err, Error::NotARefutation(ref m) if m.contains("K is contained")));

        let n1 = IntegerLattice::from_generators(1, &[vec![4]]).unwrap();
        let k1 = IntegerLattice::from_generators(1, &[vec![2]]).unwrap();
        let l1 = IntegerLattice::from_generators(1, &[vec![6]]).unwrap();
        let err = check_strongly_irreducible_witness_lat(&n1, &k1, &l1).unwrap_err();
        assert!(matches!(err, Error::NotARefutation(ref m) if m.contains("not contained")));
    }
}
