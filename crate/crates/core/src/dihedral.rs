//! The dihedral group `D_n = <x, t | x^n = t^2 = 1, xt = tx^-1>` of order
//! `2n` acting on its own elements, together with the permutation groups
//! built from it: left and right regular representations, automorphisms,
//! the holomorph and the index-2 subgroups.
//!
//! Element `t^a x^b` is labelled by the point `a*n + b`, so the identity is
//! point 0, the rotations are `0..n` and the reflections are `n..2n`.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{self, modulo};
use crate::perm::{FiniteGroup, PermError, Permutation, MAX_DEGREE};

/// Largest `n` whose regular action fits in a [`Permutation`].
pub const MAX_N: usize = MAX_DEGREE / 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DihedralError {
    #[error("n must be in 3..={MAX_N}, got {0}")]
    BadOrder(usize),
    #[error("{j} is not a unit modulo {n}")]
    NotAUnit { j: usize, n: usize },
    #[error("point {point} out of range for D_{n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("the cyclic holomorph search needs an even n >= 4, got {0}")]
    OddCyclicOrder(usize),
    #[error("found {found} regular dihedral subgroups of Hol(C_{n}) with rotations centralizing the generator; expected exactly one")]
    UniquenessViolation { n: usize, found: usize },
    #[error("a reflection of the regular dihedral subgroup of Hol(C_{0}) does not invert the generator")]
    ReflectionViolation(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// `t^reflection x^rotation` in `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    n: usize,
    reflection: u8,
    rotation: usize,
}

impl DihedralElement {
    pub fn new(n: usize, reflection: usize, rotation: i64) -> Self {
        Self {
            n,
            reflection: (reflection % 2) as u8,
            rotation: modulo(rotation, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, 0, 0)
    }

    pub fn x(n: usize) -> Self {
        Self::new(n, 0, 1)
    }

    pub fn t(n: usize) -> Self {
        Self::new(n, 1, 0)
    }

    pub fn reflection(&self) -> usize {
        self.reflection as usize
    }

    pub fn rotation(&self) -> usize {
        self.rotation
    }

    /// `(t^a1 x^b1)(t^a2 x^b2) = t^(a1+a2) x^((-1)^a2 b1 + b2)`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "elements of different dihedral groups");
        let b1 = self.rotation as i64;
        let twisted = if other.reflection == 1 { -b1 } else { b1 };
        Self::new(
            self.n,
            (self.reflection + other.reflection) as usize,
            twisted + other.rotation as i64,
        )
    }

    pub fn inverse(&self) -> Self {
        if self.reflection == 1 {
            *self
        } else {
            Self::new(self.n, 0, -(self.rotation as i64))
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = if self.reflection == 1 { "t" } else { "" };
        match (self.reflection, self.rotation) {
            (0, 0) => f.write_str("1"),
            (_, 0) => f.write_str(t),
            (_, 1) => write!(f, "{t}x"),
            (_, b) => write!(f, "{t}x^{b}"),
        }
    }
}

/// `D_n` together with its point labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dihedral {
    n: usize,
}

impl Dihedral {
    pub fn new(n: usize) -> Result<Self, DihedralError> {
        if (3..=MAX_N).contains(&n) {
            Ok(Self { n })
        } else {
            Err(DihedralError::BadOrder(n))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, `2n`.
    pub fn degree(&self) -> usize {
        2 * self.n
    }

    pub fn point_of(&self, g: &DihedralElement) -> usize {
        debug_assert_eq!(g.n, self.n);
        g.reflection() * self.n + g.rotation()
    }

    pub fn element_of(&self, point: usize) -> Result<DihedralElement, DihedralError> {
        if point >= self.degree() {
            return Err(DihedralError::PointOutOfRange { point, n: self.n });
        }
        Ok(self.elem(point))
    }

    fn elem(&self, point: usize) -> DihedralElement {
        DihedralElement::new(self.n, point / self.n, (point % self.n) as i64)
    }

    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        (0..self.degree()).map(|p| self.elem(p))
    }

    /// Renders a point as the element it labels, e.g. `tx^2`.
    pub fn label(&self, point: usize) -> String {
        self.elem(point).to_string()
    }

    fn perm_from(&self, f: impl Fn(DihedralElement) -> DihedralElement) -> Permutation {
        Permutation::from_fn(self.degree(), |p| self.point_of(&f(self.elem(p))))
    }

    /// Left translation `h -> g h`.
    pub fn lambda(&self, g: &DihedralElement) -> Permutation {
        self.perm_from(|h| g.mul(&h))
    }

    /// Right translation `h -> h g^-1`.
    pub fn rho(&self, g: &DihedralElement) -> Permutation {
        let g_inv = g.inverse();
        self.perm_from(|h| h.mul(&g_inv))
    }

    /// `(lambda(x), lambda(t))`.
    pub fn lambda_gens(&self) -> (Permutation, Permutation) {
        (
            self.lambda(&DihedralElement::x(self.n)),
            self.lambda(&DihedralElement::t(self.n)),
        )
    }

    /// `(rho(x), rho(t))`.
    pub fn rho_gens(&self) -> (Permutation, Permutation) {
        (
            self.rho(&DihedralElement::x(self.n)),
            self.rho(&DihedralElement::t(self.n)),
        )
    }

    pub fn lambda_group(&self) -> FiniteGroup {
        let (x, t) = self.lambda_gens();
        FiniteGroup::generate(self.degree(), &[x, t]).expect("order 2n closure")
    }

    pub fn rho_group(&self) -> FiniteGroup {
        let (x, t) = self.rho_gens();
        FiniteGroup::generate(self.degree(), &[x, t]).expect("order 2n closure")
    }

    /// The point permutation of the automorphism `t^a x^b -> t^a x^(ia + jb)`.
    pub fn aut_perm(&self, i: i64, j: usize) -> Result<Permutation, DihedralError> {
        if !arith::is_unit(j, self.n) {
            return Err(DihedralError::NotAUnit { j, n: self.n });
        }
        let n = self.n;
        Ok(self.perm_from(|g| {
            let a = g.reflection() as i64;
            DihedralElement::new(n, g.reflection(), i * a + (j * g.rotation()) as i64)
        }))
    }

    /// `Hol(D_n) = rho(D_n) Aut(D_n)`, generated from the right regular
    /// representation and automorphism permutations. Order `2n * n * phi(n)`.
    pub fn holomorph(&self) -> FiniteGroup {
        FiniteGroup::generate(self.degree(), &self.holomorph_generators())
            .expect("holomorph fits the closure cap")
    }

    /// `rho(x), rho(t), phi_{1,1}` and `phi_{0,j}` for a generating set of
    /// units `j`.
    pub fn holomorph_generators(&self) -> Vec<Permutation> {
        let (rx, rt) = self.rho_gens();
        let mut gens = vec![rx, rt, self.aut_perm(1, 1).expect("1 is a unit")];
        for j in unit_group_generators(self.n) {
            gens.push(self.aut_perm(0, j).expect("unit"));
        }
        gens
    }

    /// Expected order of [`Dihedral::holomorph`].
    pub fn holomorph_order(&self) -> usize {
        2 * self.n * self.n * arith::euler_phi(self.n)
    }

    /// Index-2 subgroups of `lambda(D_n)`: `[<x>]` for odd `n`, and
    /// `[<x>, <x^2, t>, <x^2, tx^(n-1)>]` for even `n`.
    pub fn index2_subgroups(&self) -> Vec<FiniteGroup> {
        let n = self.n;
        let deg = self.degree();
        let (lx, lt) = self.lambda_gens();
        let mut out = vec![FiniteGroup::generate(deg, std::slice::from_ref(&lx)).expect("cyclic")];
        if n.is_even() {
            let lx2 = &lx * &lx;
            let t_xinv = self.lambda(&DihedralElement::new(n, 1, n as i64 - 1));
            out.push(FiniteGroup::generate(deg, &[lx2.clone(), lt]).expect("order n"));
            out.push(FiniteGroup::generate(deg, &[lx2, t_xinv]).expect("order n"));
        }
        out
    }
}

/// A small generating set of `U_m`, chosen greedily in increasing order.
pub(crate) fn unit_group_generators(m: usize) -> Vec<usize> {
    let all = arith::units(m);
    let mut span = vec![false; m];
    span[1 % m] = true;
    let mut gens = Vec::new();
    for &u in &all {
        if span[u] {
            continue;
        }
        gens.push(u);
        // Re-close the span under multiplication by all chosen generators.
        let mut frontier: Vec<usize> = (0..m).filter(|&a| span[a]).collect();
        while let Some(a) = frontier.pop() {
            for &g in &gens {
                let b = a * g % m;
                if !span[b] {
                    span[b] = true;
                    frontier.push(b);
                }
            }
        }
    }
    gens
}

/// `Hol(C_n)` acting on `Z_n`: the pairs `(i, u)` acting as `k -> i + u k`.
pub fn cyclic_holomorph_elements(n: usize) -> Vec<Permutation> {
    arith::units(n)
        .into_iter()
        .flat_map(|u| {
            (0..n).map(move |i| Permutation::from_fn(n, move |k| (i + u * k) % n))
        })
        .collect()
}

/// The unique regular subgroup `D ≅ D_(n/2)` of `Hol(C_n)` whose rotations
/// commute with the generator `sigma: k -> k+1`, found by exhaustive search.
/// The generators of the returned group are `(r, f)` with `r = sigma^2`.
pub fn hol_cyclic_regular_dihedral(n: usize) -> Result<FiniteGroup, DihedralError> {
    if n.is_odd() || !(4..=MAX_DEGREE).contains(&n) {
        return Err(DihedralError::OddCyclicOrder(n));
    }
    let m = n / 2;
    let sigma = Permutation::from_fn(n, |k| (k + 1) % n);
    let sigma_inv = sigma.inverse();
    let hol = cyclic_holomorph_elements(n);

    let rotations: Vec<&Permutation> = hol
        .iter()
        .filter(|r| r.order() == m && &sigma * *r == *r * &sigma)
        .collect();
    let involutions: Vec<&Permutation> = hol.iter().filter(|f| f.order() == 2).collect();

    let mut found: Vec<FiniteGroup> = Vec::new();
    for r in &rotations {
        let r_inv = r.inverse();
        for f in &involutions {
            if r.conjugate_unchecked(f) != r_inv {
                continue;
            }
            let group = FiniteGroup::generate(n, &[(*r).clone(), (*f).clone()])?;
            if group.order() == n && group.is_regular() && !found.contains(&group) {
                found.push(group);
            }
        }
    }
    if found.len() != 1 {
        return Err(DihedralError::UniquenessViolation { n, found: found.len() });
    }
    let group = found.pop().expect("exactly one");
    let r = sigma.pow(2);
    let rotations = FiniteGroup::generate(n, std::slice::from_ref(&r))?;
    let reflections: Vec<&Permutation> =
        group.elements().iter().filter(|g| !rotations.contains(g)).collect();
    if reflections.iter().any(|f| sigma.conjugate_unchecked(f) != sigma_inv) {
        return Err(DihedralError::ReflectionViolation(n));
    }
    Ok(FiniteGroup::generate(n, &[r, reflections[0].clone()])?)
}
