//! Splittings of the `2n` points into two halves and the wreath products
//! they determine.
//!
//! `W(X,Y)` (permutations preserving or swapping the halves) and its base
//! `S(X,Y)` (permutations preserving both halves) are never materialized;
//! membership is decided by [`Splitting::classify`].

use thiserror::Error;

use crate::dihedral::{Dihedral, DihedralElement, DihedralError};
use crate::perm::{FiniteGroup, PermError, Permutation, PointSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("a splitting needs two halves of equal size containing point 0 on the first side")]
    BadSplitting,
    #[error("group of order {order} has no dihedral witness for n={n}")]
    NoDihedralWitness { n: usize, order: usize },
    #[error("orbit {orbit:?} of point 0 matches no canonical splitting for n={n}")]
    NoCanonicalMatch { n: usize, orbit: Vec<usize> },
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// How a permutation acts on a splitting `{X, Y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    /// `p(X) = X` and `p(Y) = Y`: a member of `S(X,Y)`.
    Preserve,
    /// `p(X) = Y` and `p(Y) = X`.
    Swap,
    /// Not a member of `W(X,Y)`.
    Outside,
}

impl Placement {
    pub fn in_wreath(self) -> bool {
        self != Placement::Outside
    }

    /// Preserve = 0, Swap = 1 in `Z_2`; `None` for `Outside`.
    pub fn parity(self) -> Option<u8> {
        match self {
            Placement::Preserve => Some(0),
            Placement::Swap => Some(1),
            Placement::Outside => None,
        }
    }
}

/// A partition of the points into two halves `X`, `Y` with `0 ∈ X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Splitting {
    x: PointSet,
    y: PointSet,
}

impl Splitting {
    /// The splitting `{X, complement of X}`.
    pub fn new(x: PointSet) -> Result<Self, BlockError> {
        let y = x.complement();
        if x.len() != y.len() || !x.contains(0) {
            return Err(BlockError::BadSplitting);
        }
        Ok(Self { x, y })
    }

    /// Normalizes the unordered pair so that the half holding point 0 is `X`.
    fn from_halves(a: PointSet, b: PointSet) -> Self {
        if a.contains(0) {
            Self { x: a, y: b }
        } else {
            Self { x: b, y: a }
        }
    }

    pub fn x(&self) -> &PointSet {
        &self.x
    }

    pub fn y(&self) -> &PointSet {
        &self.y
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    pub fn classify(&self, p: &Permutation) -> Placement {
        debug_assert_eq!(p.degree(), self.degree());
        let img: Vec<bool> = self.x.iter().map(|z| self.x.contains(p.apply(z))).collect();
        if img.iter().all(|&inside| inside) {
            Placement::Preserve
        } else if img.iter().all(|&inside| !inside) {
            Placement::Swap
        } else {
            Placement::Outside
        }
    }

    /// `{sigma(X), sigma(Y)}`, renormalized so that 0 lies in the first half.
    pub fn mapped_by(&self, sigma: &Permutation) -> Splitting {
        Splitting::from_halves(sigma.map_set(&self.x), sigma.map_set(&self.y))
    }
}

/// The splittings whose wreath products contain `lambda(D_n)`: `[S_0]` for
/// odd `n` and `[S_0, S_1, S_2]` for even `n`, with
/// `X_0 = {x^b}`, `X_1 = {x^even, tx^even}`, `X_2 = {x^even, tx^odd}`.
pub fn canonical_splittings(n: usize) -> Result<Vec<Splitting>, BlockError> {
    let d = Dihedral::new(n)?;
    let half = |pred: &dyn Fn(&DihedralElement) -> bool| {
        PointSet::new(
            d.degree(),
            d.elements().filter(|g| pred(g)).map(|g| d.point_of(&g)),
        )
    };
    let mut out = vec![Splitting::new(half(&|g| g.reflection() == 0)?)?];
    if n.is_multiple_of(2) {
        out.push(Splitting::new(half(&|g| g.rotation() % 2 == 0)?)?);
        out.push(Splitting::new(half(&|g| {
            (g.rotation() + g.reflection()) % 2 == 0
        })?)?);
    }
    Ok(out)
}

/// The index `i` of the canonical splitting `X_i` equal to the orbit of point
/// 0 under the cyclic index-2 subgroup of a regular dihedral group `N`.
pub fn block_index_of(group: &FiniteGroup, n: usize) -> Result<usize, BlockError> {
    let (rotation, _) = group
        .dihedral_witness(n)
        .ok_or(BlockError::NoDihedralWitness { n, order: group.order() })?;
    let k = FiniteGroup::generate(group.degree(), &[rotation])?;
    let orbit = k.orbit(0);
    canonical_splittings(n)?
        .iter()
        .position(|s| *s.x() == orbit)
        .ok_or_else(|| BlockError::NoCanonicalMatch { n, orbit: orbit.iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn canonical_halves() {
        let s3 = canonical_splittings(3).unwrap();
        assert_eq!(s3.len(), 1);
        assert_eq!(s3[0].x().iter().collect::<Vec<_>>(), vec![0, 1, 2]);

        let s4 = canonical_splittings(4).unwrap();
        assert_eq!(s4.len(), 3);
        assert_eq!(s4[1].x().iter().collect::<Vec<_>>(), vec![0, 2, 4, 6]);
        assert_eq!(s4[1].y().iter().collect::<Vec<_>>(), vec![1, 3, 5, 7]);
        assert_eq!(s4[2].x().iter().collect::<Vec<_>>(), vec![0, 2, 5, 7]);
        assert!(canonical_splittings(2).is_err());
    }

    #[test]
    fn splitting_validation() {
        assert_eq!(
            Splitting::new(PointSet::new(6, [1, 2, 3]).unwrap()),
            Err(BlockError::BadSplitting)
        );
        assert_eq!(
            Splitting::new(PointSet::new(6, [0, 1]).unwrap()),
            Err(BlockError::BadSplitting)
        );
    }

    #[test]
    fn lambda_generator_placements() {
        let d4 = Dihedral::new(4).unwrap();
        let (lx, lt) = d4.lambda_gens();
        let s = canonical_splittings(4).unwrap();
        assert_eq!(s[0].classify(&lt), Placement::Swap);
        assert_eq!(s[0].classify(&lx), Placement::Preserve);
        assert_eq!(s[1].classify(&lx), Placement::Swap);
        assert_eq!(s[1].classify(&lt), Placement::Preserve);
        assert_eq!(s[2].classify(&lx), Placement::Swap);
        assert_eq!(s[2].classify(&lt), Placement::Swap);
        assert_eq!(s[0].classify(&p("(0 4)", 8)), Placement::Outside);
    }

    #[test]
    fn blocks_of_lambda() {
        let d4 = Dihedral::new(4).unwrap();
        let g = d4.lambda_group();
        assert!(g.is_block(&PointSet::new(8, [0, 2, 4, 6]).unwrap()));
        assert!(!g.is_block(&PointSet::new(8, [0, 1]).unwrap()));
    }

    #[test]
    fn regular_representations_sit_in_block_zero() {
        for n in 3..=12 {
            let d = Dihedral::new(n).unwrap();
            assert_eq!(block_index_of(&d.lambda_group(), n).unwrap(), 0);
            assert_eq!(block_index_of(&d.rho_group(), n).unwrap(), 0);
        }
    }

    #[test]
    fn block_index_of_block_one_example() {
        let k = p("(0 6 2 4)(1 5 3 7)", 8);
        let tau = p("(0 7)(6 3)(2 5)(4 1)", 8);
        let n = FiniteGroup::generate(8, &[k, tau]).unwrap();
        assert!(n.is_regular());
        assert_eq!(block_index_of(&n, 4).unwrap(), 1);
    }

    #[test]
    fn block_index_needs_a_dihedral_group() {
        let c = FiniteGroup::generate(6, &[p("(0 1 2 3 4 5)", 6)]).unwrap();
        assert!(matches!(
            block_index_of(&c, 3),
            Err(BlockError::NoDihedralWitness { .. })
        ));
    }

    #[test]
    fn mapped_splitting_is_normalized() {
        let s = &canonical_splittings(4).unwrap()[0];
        let swap = Dihedral::new(4).unwrap().lambda_gens().1;
        // lambda(t) exchanges the halves; the image is the same splitting.
        assert_eq!(s.mapped_by(&swap), *s);
    }
}
