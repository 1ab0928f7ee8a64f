//! Coprime-coset (Golomb) topologies of modules over the integers.
//!
//! The crate has two backends sharing one integer kernel:
//!
//! * [`finmod`] — finite abelian groups as Z-modules, with exhaustive
//!   submodule enumeration, quotients, residuals and a constructive
//!   Chinese-remainder solver;
//! * [`zlattice`] — submodules of Z^n as integer lattices in Hermite
//!   normal form, used for witness-based certificates on infinite
//!   modules.
//!
//! On top of those, [`modpred`] decides the submodule predicates (prime,
//! strongly irreducible, multiplication, \u{3bc}-module, finite coprime
//! condition, Jacobson radicals), [`golomb`] builds coprime-coset bases
//! and the finite topologies they generate, and [`verify`] sweeps
//! isomorphism classes of finite modules evaluating each structure
//! theorem and reporting PASS / FAIL / VACUOUS per instance.

pub mod error;
pub mod finmod;
pub mod golomb;
pub mod modpred;
pub mod pointset;
pub mod verify;
pub mod zarith;
pub mod zlattice;

pub use error::{Error, Result};
pub use finmod::{Coset, CrtPath, CrtSolution, Element, FiniteModule, QuotientMap, Submodule};
pub use golomb::{CoprimeBasis, FiniteTopology, SeparationReport};
pub use modpred::PredicateProfile;
pub use pointset::PointSet;
pub use verify::{CampaignConfig, CampaignReport, TheoremCase, TheoremId, Verdict};
pub use zarith::{IdealOfZ, IntMatrix};
pub use zlattice::{CosetMeet, IntegerLattice, LatticeCoset};
