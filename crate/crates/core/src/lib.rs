//! Dihedral Hopf-Galois structures on dihedral Galois extensions.
//!
//! For `G = D_n` acting on itself by the left regular representation
//! `lambda`, this crate constructs every regular subgroup `N ≅ D_n` of
//! `Perm(D_n)` normalized by `lambda(D_n)`, classifies each by the block
//! system of its characteristic cyclic subgroup, and checks the result
//! against a closed-form count and an independent exhaustive search.

pub mod arith;
pub mod blocks;
pub mod cli;
pub mod dihedral;
pub mod hgs;
pub mod oracle;
pub mod perm;

pub use blocks::{canonical_splittings, Placement, Splitting};
pub use dihedral::{Dihedral, DihedralElement};
pub use hgs::{closed_form_count, enumerate_hgs, CountBreakdown, HgsRecord, Params};
pub use perm::{FiniteGroup, PermError, Permutation, PointSet};
