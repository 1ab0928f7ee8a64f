//! Submodules of Z^n as integer lattices in canonical Hermite normal form.
//!
//! This backend never enumerates submodules (there are infinitely many);
//! predicate checks take explicit candidate witnesses and certify them.
//! Lattice equality is basis equality because the HNF is canonical.

use std::fmt;

use crate::error::{Error, Result};
use crate::zarith::{self, IdealOfZ, IntMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl IntegerLattice {
    /// Lattice spanned by the given vectors, brought to canonical HNF.
    pub fn from_generators(ambient_rank: usize, vectors: &[Vec<i128>]) -> Result<Self> {
        assert!(ambient_rank > 0, "ambient rank must be positive");
        for v in vectors {
            if v.len() != ambient_rank {
                return Err(Error::RankMismatch {
                    rank: ambient_rank,
                    got: v.len(),
                });
            }
        }
        let m = IntMatrix::from_columns(ambient_rank, vectors)?;
        Ok(IntegerLattice {
            ambient_rank,
            basis: zarith::hnf(&m),
        })
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::from_generators(ambient_rank, &[]).expect("empty span is valid")
    }

    pub fn full(ambient_rank: usize) -> Self {
        let cols: Vec<Vec<i128>> = (0..ambient_rank)
            .map(|i| {
                let mut e = vec![0i128; ambient_rank];
                e[i] = 1;
                e
            })
            .collect();
        Self::from_generators(ambient_rank, &cols).expect("unit vectors are valid")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Number of basis vectors (the lattice rank).
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn is_full(&self) -> bool {
        self.basis == IntMatrix::identity(self.ambient_rank)
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<Vec<i128>> {
        self.basis.columns()
    }

    fn expect_same_rank(&self, other: &IntegerLattice) -> Result<()> {
        if self.ambient_rank == other.ambient_rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                rank: self.ambient_rank,
                got: other.ambient_rank,
            })
        }
    }

    pub fn contains_vector(&self, v: &[i128]) -> Result<bool> {
        if v.len() != self.ambient_rank {
            return Err(Error::RankMismatch {
                rank: self.ambient_rank,
                got: v.len(),
            });
        }
        if self.basis.cols() == 0 {
            return Ok(v.iter().all(|&x| x == 0));
        }
        Ok(zarith::hnf_solve(&self.basis, v).is_some())
    }

    /// Whether `other` is a sublattice of `self`.
    pub fn contains(&self, other: &IntegerLattice) -> Result<bool> {
        self.expect_same_rank(other)?;
        for col in other.basis.columns() {
            if !self.contains_vector(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        self.expect_same_rank(other)?;
        let mut cols = self.basis.columns();
        cols.extend(other.basis.columns());
        IntegerLattice::from_generators(self.ambient_rank, &cols)
    }

    /// Intersection via the integer kernel of `[A | -B]`: a kernel vector
    /// `(u, w)` has `A u = B w`, and those common values span the meet.
    pub fn intersect(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        self.expect_same_rank(other)?;
        let k = self.basis.cols();
        if k == 0 || other.basis.cols() == 0 {
            return Ok(IntegerLattice::zero(self.ambient_rank));
        }
        let mut cols = self.basis.columns();
        for c in other.basis.columns() {
            cols.push(c.iter().map(|&x| -x).collect());
        }
        let stacked = IntMatrix::from_columns(self.ambient_rank, &cols)?;
        let kernel = zarith::kernel_basis(&stacked);
        let gens: Vec<Vec<i128>> = kernel
            .iter()
            .map(|w| self.basis.mul_vec(&w[..k]))
            .collect();
        IntegerLattice::from_generators(self.ambient_rank, &gens)
    }

    /// Residual `(N : Z^n)`: zero when the lattice has deficient rank,
    /// otherwise the exponent of `Z^n / N` (the last Smith invariant).
    pub fn residual(&self) -> IdealOfZ {
        if self.basis.cols() < self.ambient_rank {
            return IdealOfZ::ZERO;
        }
        let diag = zarith::snf(&self.basis);
        IdealOfZ::new(*diag.last().expect("full-rank lattice has invariants"))
    }
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntegerLattice {
    /// Generator-list literal, e.g. "[(1,1),(0,2)]".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, col) in self.basis.columns().iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (i, x) in col.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

/// A coset `rep + L` of an integer lattice, with the representative
/// reduced canonically against the HNF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeCoset {
    rep: Vec<i128>,
    lat: IntegerLattice,
}

impl LatticeCoset {
    pub fn new(rep: &[i128], lat: IntegerLattice) -> Result<Self> {
        if rep.len() != lat.ambient_rank() {
            return Err(Error::RankMismatch {
                rank: lat.ambient_rank(),
                got: rep.len(),
            });
        }
        let rep = reduce_rep(rep, &lat);
        Ok(LatticeCoset { rep, lat })
    }

    pub fn rep(&self) -> &[i128] {
        &self.rep
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lat
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        if v.len() != self.lat.ambient_rank() {
            return Err(Error::RankMismatch {
                rank: self.lat.ambient_rank(),
                got: v.len(),
            });
        }
        let diff: Vec<i128> = v.iter().zip(&self.rep).map(|(a, b)| a - b).collect();
        self.lat.contains_vector(&diff)
    }
}

impl fmt::Debug for LatticeCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.rep.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")+{}", self.lat)
    }
}

/// Reduce a representative modulo the lattice: subtract column multiples
/// so every pivot-row entry lands in `[0, pivot)`.
fn reduce_rep(rep: &[i128], lat: &IntegerLattice) -> Vec<i128> {
    let mut rep = rep.to_vec();
    let basis = lat.basis();
    for j in 0..basis.cols() {
        let r = (0..basis.rows())
            .find(|&i| basis.at(i, j) != 0)
            .expect("canonical HNF has no zero columns");
        let q = rep[r].div_euclid(basis.at(r, j));
        if q != 0 {
            for i in 0..basis.rows() {
                rep[i] -= q * basis.at(i, j);
            }
        }
    }
    rep
}

/// Classification of a coset intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetMeet {
    Disjoint,
    /// The meet lattice is zero, so the intersection is a finite point
    /// set (always a single point).
    Points(Vec<Vec<i128>>),
    /// A full coset of `L1 \u{2229} L2`, carried by one witness.
    Coset(LatticeCoset),
}

/// Intersect two lattice cosets by solving `rep1 + L1 u = rep2 + L2 v`
/// over the integers.
pub fn coset_intersect(c1: &LatticeCoset, c2: &LatticeCoset) -> Result<CosetMeet> {
    c1.lattice().expect_same_rank(c2.lattice())?;
    let n = c1.lattice().ambient_rank();
    let k = c1.lattice().rank();
    let mut cols = c1.lattice().basis_columns();
    for c in c2.lattice().basis_columns() {
        cols.push(c.iter().map(|&x| -x).collect());
    }
    let target: Vec<i128> = c2.rep.iter().zip(&c1.rep).map(|(a, b)| a - b).collect();
    let witness = if cols.is_empty() {
        if target.iter().all(|&x| x == 0) {
            Some(c1.rep.clone())
        } else {
            None
        }
    } else {
        let stacked = IntMatrix::from_columns(n, &cols)?;
        let (h, v) = zarith::hnf_with_transform(&stacked);
        zarith::hnf_solve(&h, &target).map(|s| {
            let w = v.mul_vec(&s);
            let mut point = c1.rep.clone();
            for (j, &uj) in w[..k].iter().enumerate() {
                for i in 0..n {
                    point[i] += uj * c1.lattice().basis().at(i, j);
                }
            }
            point
        })
    };
    let Some(point) = witness else {
        return Ok(CosetMeet::Disjoint);
    };
    debug_assert!(c1.contains(&point)? && c2.contains(&point)?);
    let meet = c1.lattice().intersect(c2.lattice())?;
    if meet.is_zero() {
        Ok(CosetMeet::Points(vec![point]))
    } else {
        Ok(CosetMeet::Coset(LatticeCoset::new(&point, meet)?))
    }
}

/// Whether `rep + N` is a coprime coset of Z^n, i.e. `N + <rep> = Z^n`.
/// The zero submodule is excluded by definition.
pub fn is_coprime_coset(rep: &[i128], n: &IntegerLattice) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::ZeroSubmodule);
    }
    let span = IntegerLattice::from_generators(n.ambient_rank(), &[rep.to_vec()])?;
    Ok(n.sum(&span)?.is_full())
}
