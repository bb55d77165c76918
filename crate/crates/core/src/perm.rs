//! Permutations of `{0, .., degree-1}` and small explicit permutation groups.
//!
//! Composition follows the function convention: `(p * q)(z) = p(q(z))`, so
//! `q` is applied first. Conjugation of `p` by `s` is `s * p * s^-1`, which
//! relabels every cycle `(z1 .. zk)` of `p` as `(s(z1) .. s(zk))`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use thiserror::Error;

/// Largest supported degree. Points are stored as bytes.
pub const MAX_DEGREE: usize = 256;

/// Default bound on the size of a generated group.
pub const DEFAULT_CLOSURE_CAP: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} is outside the supported range 2..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("image sequence is not a bijection")]
    NotBijective,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("subgroup is not contained in the ambient group")]
    NotContained,
}

fn check_degree(degree: usize) -> Result<(), PermError> {
    if (2..=MAX_DEGREE).contains(&degree) {
        Ok(())
    } else {
        Err(PermError::BadDegree(degree))
    }
}

/// A bijection of `{0, .., degree-1}` stored as its image sequence.
///
/// The derived ordering is lexicographic on the image sequence, which is the
/// canonical order used for sorted storage and deterministic output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self, PermError> {
        check_degree(degree)?;
        Ok(Self {
            images: (0..degree).map(|p| p as u8).collect(),
        })
    }

    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        check_degree(degree)?;
        let mut seen = vec![false; degree];
        for &img in images {
            if img >= degree {
                return Err(PermError::PointOutOfRange { point: img, degree });
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(PermError::NotBijective);
            }
        }
        Ok(Self {
            images: images.iter().map(|&p| p as u8).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles; each inner vector maps
    /// `c[i] -> c[i+1]` cyclically.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        check_degree(degree)?;
        let mut images: Vec<u8> = (0..degree).map(|p| p as u8).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(PermError::RepeatedPoint(p));
                }
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u8;
            }
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from a point map that is already known to be a
    /// bijection of the right degree.
    pub(crate) fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Self {
        let images: Box<[u8]> = (0..degree).map(|p| f(p) as u8).collect();
        debug_assert!({
            let mut s: Vec<u8> = images.to_vec();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Self { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&p| p as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &p)| i == p as usize)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&z| self.images[z as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `by ∘ self ∘ by^-1`.
    pub fn conjugate(&self, by: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != by.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), by.degree()));
        }
        Ok(self.conjugate_unchecked(by))
    }

    #[inline]
    pub(crate) fn conjugate_unchecked(&self, by: &Permutation) -> Permutation {
        // by(z) -> by(self(z)) is the relabelled permutation.
        let mut out = vec![0u8; self.degree()];
        for (z, &img) in self.images.iter().enumerate() {
            out[by.images[z] as usize] = by.images[img as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::from_fn(self.degree(), |p| p);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> usize {
        self.cycle_lengths().fold(1, |acc, l| acc.lcm(&l))
    }

    fn cycle_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        let mut seen = vec![false; self.degree()];
        (0..self.degree()).filter_map(move |start| {
            if seen[start] {
                return None;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            Some(len)
        })
    }

    /// Non-trivial cycles in canonical form: each starts at its minimal
    /// point and cycles are sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses disjoint-cycle notation such as `(0 1 2)(3 5 4)`. Points may be
    /// separated by whitespace or commas; the empty string and `()` denote the
    /// identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
        check_degree(degree)?;
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Malformed(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| PermError::Malformed("unclosed cycle".into()))?;
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(PermError::Malformed("nested '('".into()));
            }
            let cycle = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| PermError::Malformed(format!("bad point {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// Canonical cycle notation; the identity renders as `()`.
    pub fn format_cycles(&self) -> String {
        self.format_cycles_with(|p| p.to_string())
    }

    /// Canonical cycle notation with a custom point renderer.
    pub fn format_cycles_with(&self, label: impl Fn(usize) -> String) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.into_iter().map(&label).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }

    /// Canonical generator of the cyclic group `<self>`: the lexicographically
    /// least `self^w` over units `w` modulo the order.
    pub fn cyclic_key(&self) -> Permutation {
        let order = self.order();
        (1..order.max(2))
            .filter(|w| w.gcd(&order) == 1)
            .map(|w| self.pow(w as i64))
            .min()
            .expect("1 is always a unit")
    }

    pub fn map_set(&self, set: &PointSet) -> PointSet {
        PointSet {
            degree: set.degree,
            members: set.members.iter().map(|&p| self.apply(p)).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self.format_cycles())
    }
}

/// Panics on degree mismatch; use [`Permutation::compose`] for a checked
/// version.
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(rhs)
    }
}

/// A subset of the points `{0, .., degree-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    degree: usize,
    members: BTreeSet<usize>,
}

impl PointSet {
    pub fn new(degree: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, PermError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&p) = members.iter().find(|&&p| p >= degree) {
            return Err(PermError::PointOutOfRange { point: p, degree });
        }
        Ok(Self { degree, members })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.members.contains(&point)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self) -> PointSet {
        PointSet {
            degree: self.degree,
            members: (0..self.degree).filter(|p| !self.members.contains(p)).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.members.is_disjoint(&other.members)
    }
}

/// An explicit permutation group: generators plus the full sorted element
/// list. Equality compares element sets only.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self, PermError> {
        Self::generate_with_cap(degree, generators, DEFAULT_CLOSURE_CAP)
    }

    /// Breadth-first closure of `generators` under composition.
    pub fn generate_with_cap(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self, PermError> {
        check_degree(degree)?;
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        let identity = Permutation::identity(degree)?;
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let next = g.compose_unchecked(&e);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(PermError::CapExceeded { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Self {
            degree,
            generators: generators.to_vec(),
            elements,
        })
    }

    /// Wraps a set already known to be closed under composition. A small
    /// generating set is chosen greedily.
    pub(crate) fn from_closed_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::new();
        span.insert(Permutation::from_fn(degree, |p| p));
        for e in &elements {
            if span.contains(e) {
                continue;
            }
            generators.push(e.clone());
            let closure = FiniteGroup::generate_with_cap(degree, &generators, elements.len() + 1)
                .expect("subset of a closed set cannot exceed it");
            span = closure.elements.into_iter().collect();
        }
        debug_assert_eq!(span.len(), elements.len());
        Self {
            degree,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn orbit(&self, point: usize) -> PointSet {
        PointSet {
            degree: self.degree,
            members: self.elements.iter().map(|g| g.apply(point)).collect(),
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Transitive and fixed-point free away from the identity.
    pub fn is_regular(&self) -> bool {
        self.is_transitive()
            && self
                .elements
                .iter()
                .all(|g| g.is_identity() || !g.has_fixed_point())
    }

    /// Whether every element maps `set` onto itself or onto a disjoint set.
    /// All elements are checked: the block property is not generator-local.
    pub fn is_block(&self, set: &PointSet) -> bool {
        self.elements.iter().all(|g| {
            let image = g.map_set(set);
            image == *set || image.is_disjoint(set)
        })
    }

    /// Whether `g` conjugates this group onto itself.
    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        g.degree() == self.degree
            && self
                .generators
                .iter()
                .all(|h| self.contains(&h.conjugate_unchecked(g)))
    }

    /// `{g in self | g h g^-1 = h' for h, h' in subgroup}`.
    pub fn normalizer_in(&self, subgroup: &FiniteGroup) -> Result<FiniteGroup, PermError> {
        if subgroup.degree != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, subgroup.degree));
        }
        if !subgroup.is_subgroup_of(self) {
            return Err(PermError::NotContained);
        }
        let normalizing: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| subgroup.is_normalized_by(g))
            .cloned()
            .collect();
        Ok(FiniteGroup::from_closed_elements(self.degree, normalizing))
    }

    /// The group `g G g^-1`, with conjugated generators.
    pub fn conjugate_by(&self, g: &Permutation) -> FiniteGroup {
        let mut elements: Vec<Permutation> =
            self.elements.iter().map(|e| e.conjugate_unchecked(g)).collect();
        elements.sort_unstable();
        FiniteGroup {
            degree: self.degree,
            generators: self.generators.iter().map(|e| e.conjugate_unchecked(g)).collect(),
            elements,
        }
    }

    /// A pair `(a, b)` with `|a| = n`, `|b| = 2`, `b a b^-1 = a^-1` and
    /// `<a, b>` equal to the whole group, certifying an isomorphism with the
    /// dihedral group of order `2n`. The first such pair in canonical order is
    /// returned.
    pub fn dihedral_witness(&self, n: usize) -> Option<(Permutation, Permutation)> {
        if n < 3 || self.order() != 2 * n {
            return None;
        }
        let rotations: Vec<&Permutation> =
            self.elements.iter().filter(|g| g.order() == n).collect();
        let involutions: Vec<&Permutation> =
            self.elements.iter().filter(|g| g.order() == 2).collect();
        for a in &rotations {
            let a_inv = a.inverse();
            // b a b^-1 = a^-1 with n >= 3 forces b outside <a>, so <a, b>
            // has order 2n.
            if let Some(b) = involutions.iter().find(|b| a.conjugate_unchecked(b) == a_inv) {
                return Some(((*a).clone(), (*b).clone()));
            }
        }
        None
    }
}
