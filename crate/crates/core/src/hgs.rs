//! Enumeration of the regular subgroups `N ≅ D_n` of `Perm(D_n)` normalized
//! by `lambda(D_n)`.
//!
//! Every such `N` is determined by its cyclic index-2 subgroup
//! `K = <k>`, where `k = k_X k_Y` is a product of two disjoint `n`-cycles
//! supported on the halves of one of the canonical splittings. The
//! generators `k` are produced from closed-form exponent sequences:
//!
//! * block 0 (`X_0 = {x^b}`): parameters `u ∈ Υ_n`, `v ∈ V_n`, `r ∈ U_n`;
//! * block 1 (`X_1 = {x^even, tx^even}`): parameters `s` odd, `v ∈ Υ_n`,
//!   `w ∈ U_(n/2)`, with `r = sv + 2w^-1`;
//! * block 2 is the image of block 1 under the automorphism `phi_{1,1}`.
//!
//! Construction postconditions are checked on every call and reported as
//! errors; they stay enabled in release builds.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, modulo};
use crate::blocks::{self, canonical_splittings, BlockError, Splitting};
use crate::dihedral::{Dihedral, DihedralElement, DihedralError};
use crate::perm::{FiniteGroup, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HgsError {
    #[error("invalid parameters for n={n}: {reason}")]
    InvalidParams { n: usize, reason: String },
    #[error("block-0 index sequence is not a bijection for n={n}, v={v}, r={r}")]
    IndexCollision { n: usize, v: usize, r: usize },
    #[error("block-1 cycles for n={n}, (s,v,w)=({s},{v},{w}) do not cover the halves of S_1")]
    SupportViolation { n: usize, s: usize, v: usize, w: usize },
    #[error("conjugation identity failed: {0}")]
    ConjugationViolation(String),
    #[error("v filter {filtered:?} disagrees with the closed form {closed:?} for n={n}")]
    VParamMismatch { n: usize, filtered: Vec<usize>, closed: Vec<usize> },
    #[error("k is not a product of two disjoint n-cycles on the halves of the splitting")]
    BadCycleShape,
    #[error("closure of k and its reflection is not regular dihedral: {0}")]
    ClosureViolation(String),
    #[error("expected a block-1 record, got block {0}")]
    WrongBlock(usize),
    #[error("record check failed for n={n}, block {block}: {reason}")]
    RecordViolation { n: usize, block: usize, reason: String },
    #[error("n={n}, block {block}: enumerated {found}, closed form gives {expected}")]
    CountMismatch { n: usize, block: usize, found: usize, expected: usize },
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// `Υ_n = {u ∈ U_n | u^2 = 1}`.
pub fn upsilon(n: usize) -> Vec<usize> {
    arith::units(n)
        .into_iter()
        .filter(|&u| u * u % n == 1 % n)
        .collect()
}

/// Admissible twist parameters `v` for block 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VParamSet {
    pub n: usize,
    pub values: Vec<usize>,
}

impl VParamSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `{1}` for odd `n`; for even `n` the `v ∈ Υ_n` with `gcd(v+1, n) = 2`,
/// checked against `{1}` (`8 ∤ n`) or `{1, n/2+1}` (`8 | n`).
pub fn v_param_set(n: usize) -> Result<VParamSet, HgsError> {
    Dihedral::new(n)?;
    if n.is_odd() {
        return Ok(VParamSet { n, values: vec![1] });
    }
    let filtered: Vec<usize> = upsilon(n)
        .into_iter()
        .filter(|&v| (v + 1).gcd(&n) == 2)
        .collect();
    let closed = if n.is_multiple_of(8) { vec![1, n / 2 + 1] } else { vec![1] };
    if filtered != closed {
        return Err(HgsError::VParamMismatch { n, filtered, closed });
    }
    Ok(VParamSet { n, values: filtered })
}

/// `μ_n`: 2 if `8 | n`, 1 for other even `n`, `None` for odd `n`.
pub fn mu(n: usize) -> Option<usize> {
    match n {
        _ if n.is_odd() => None,
        _ if n.is_multiple_of(8) => Some(2),
        _ => Some(1),
    }
}

/// The four-case closed form for the total number of structures.
pub fn total_formula(n: usize) -> usize {
    let ups = upsilon(n).len();
    if n.is_multiple_of(8) {
        (n / 2 + 2) * ups
    } else if n.is_multiple_of(4) {
        (n / 2 + 1) * ups
    } else if n.is_multiple_of(2) {
        (n + 1) * ups
    } else {
        ups
    }
}

/// Per-block and total counts from the closed-form expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountBreakdown {
    pub n: usize,
    #[serde(rename = "upsilon")]
    pub upsilon_size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<usize>,
    pub block0: usize,
    pub block1: usize,
    pub block2: usize,
    pub total: usize,
}

impl CountBreakdown {
    pub fn blocks(&self) -> [usize; 3] {
        [self.block0, self.block1, self.block2]
    }
}

pub fn closed_form_count(n: usize) -> Result<CountBreakdown, HgsError> {
    Dihedral::new(n)?;
    let ups = upsilon(n).len();
    let mu = mu(n);
    let (block0, delta, block1) = match mu {
        None => (ups, None, 0),
        Some(mu) => {
            let delta = (n / 2) * ups * arith::euler_phi(n / 2);
            let phi = arith::euler_phi(n);
            assert_eq!(delta % phi, 0, "delta_n must be divisible by phi(n)");
            (mu * ups, Some(delta), delta / phi)
        }
    };
    let total = total_formula(n);
    assert_eq!(block0 + 2 * block1, total, "per-block counts must sum to the total for n={n}");
    Ok(CountBreakdown {
        n,
        upsilon_size: ups,
        mu,
        delta,
        block0,
        block1,
        block2: block1,
        total,
    })
}

/// Parameters that produced a record's generator `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Params {
    Block0 { u: usize, v: usize, r: usize },
    Block12 { s: usize, v: usize, w: usize, r: usize },
}

/// One enumerated regular subgroup `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgsRecord {
    pub n: usize,
    pub block_index: usize,
    pub params: Params,
    /// Generator of the cyclic index-2 subgroup `K`.
    pub k: Permutation,
    /// The involution completing `k` to generators of `N`.
    pub tau: Permutation,
    pub group: FiniteGroup,
    pub in_multiple_holomorph: bool,
}

fn check_conjugation(
    by: &Permutation,
    of: &Permutation,
    expected: &Permutation,
    what: impl FnOnce() -> String,
) -> Result<(), HgsError> {
    if of.conjugate_unchecked(by) == *expected {
        Ok(())
    } else {
        Err(HgsError::ConjugationViolation(what()))
    }
}

/// Index sequence `i` of the block-0 cycle `k_X = (x^i_0, x^i_1, ..)`:
/// `i_{f r (v+1)} = 2f` and `i_{f r (v+1) + r v} = 2f + 1` for even `n`,
/// `i_{e r} = e` for odd `n`.
pub fn block0_i_sequence(n: usize, v: usize, r: usize) -> Result<Vec<usize>, HgsError> {
    let mut seq: Vec<Option<usize>> = vec![None; n];
    let mut place = |idx: usize, value: usize| -> Result<(), HgsError> {
        match seq[idx] {
            None => {
                seq[idx] = Some(value);
                Ok(())
            }
            Some(_) => Err(HgsError::IndexCollision { n, v, r }),
        }
    };
    if n.is_odd() {
        for e in 0..n {
            place(e * r % n, e)?;
        }
    } else {
        for f in 0..n / 2 {
            let even = f * r % n * (v + 1) % n;
            place(even, 2 * f)?;
            place((even + r * v) % n, 2 * f + 1)?;
        }
    }
    seq.into_iter()
        .collect::<Option<Vec<usize>>>()
        .ok_or(HgsError::IndexCollision { n, v, r })
}

/// Generator `k = k_X k_Y` of a block-0 subgroup `K`, with
/// `k_X: x^i_e -> x^i_(e+1)` and `k_Y: tx^j_e -> tx^j_(e+1)`, `j_e = i_(ue)`.
///
/// Checks `lambda(x) k lambda(x)^-1 = k^v` and `lambda(t) k lambda(t)^-1 = k^u`.
pub fn build_k_block0(d: &Dihedral, u: usize, v: usize, r: usize) -> Result<Permutation, HgsError> {
    let n = d.n();
    let invalid = |reason: String| HgsError::InvalidParams { n, reason };
    if !upsilon(n).contains(&u) {
        return Err(invalid(format!("u={u} is not in Υ_{n}")));
    }
    if !v_param_set(n)?.values.contains(&v) {
        return Err(invalid(format!("v={v} is not an admissible block-0 twist")));
    }
    if r >= n || !arith::is_unit(r, n) {
        return Err(invalid(format!("r={r} is not a unit")));
    }
    let i = block0_i_sequence(n, v, r)?;
    let j: Vec<usize> = (0..n).map(|e| i[u * e % n]).collect();
    let mut images = vec![0usize; 2 * n];
    for e in 0..n {
        images[i[e]] = i[(e + 1) % n];
        images[n + j[e]] = n + j[(e + 1) % n];
    }
    let k = Permutation::from_images(&images)?;

    let (lx, lt) = d.lambda_gens();
    check_conjugation(&lx, &k, &k.pow(v as i64), || {
        format!("block 0, n={n}, (u,v,r)=({u},{v},{r}): lambda(x) k lambda(x)^-1 != k^v")
    })?;
    check_conjugation(&lt, &k, &k.pow(u as i64), || {
        format!("block 0, n={n}, (u,v,r)=({u},{v},{r}): lambda(t) k lambda(t)^-1 != k^u")
    })?;
    Ok(k)
}

/// `r = s v + 2 w^-1 (mod n)`, where `w^-1` is taken modulo `n/2`.
pub fn block1_r(n: usize, s: usize, v: usize, w: usize) -> Option<usize> {
    let w_inv = arith::inverse_mod(w, n / 2)?;
    Some((s * v + 2 * w_inv) % n)
}

/// Generator `k = k_X k_Y` of a block-1 subgroup `K`, with
/// `k_X = (t^a_e x^b_e)` on `X_1` and `k_Y = (t^c_e x^d_e)` on `Y_1`:
/// `a_2e = c_2e = 0`, `a_(2e+1) = c_(2e+1) = 1`, `b_2e = 2ew`,
/// `d_2e = 2evw + 1`, `b_(r+2e) = -2ew`, `d_(s+2e) = -2evw + 1`.
///
/// Checks that the cycles cover `X_1` and `Y_1`, that
/// `lambda(t) k lambda(t)^-1 = k^-1`, and that `lambda(x)` conjugates
/// `k_X` to `k_Y^v` and `k_Y` to `k_X^v`.
pub fn build_k_block1(d: &Dihedral, s: usize, v: usize, w: usize) -> Result<Permutation, HgsError> {
    let n = d.n();
    let invalid = |reason: String| HgsError::InvalidParams { n, reason };
    if n.is_odd() {
        return Err(invalid("block 1 needs even n".into()));
    }
    let half = n / 2;
    if s >= n || s.is_even() {
        return Err(invalid(format!("s={s} is not an odd residue")));
    }
    if !upsilon(n).contains(&v) {
        return Err(invalid(format!("v={v} is not in Υ_{n}")));
    }
    if w >= half || !arith::is_unit(w, half) {
        return Err(invalid(format!("w={w} is not a unit modulo {half}")));
    }
    let r = block1_r(n, s, v, w).expect("w is a unit");
    let (sn, rn) = (s as i64, r as i64);
    let (vi, wi) = (v as i64, w as i64);

    let elem = |refl: usize, rot: i64| d.point_of(&DihedralElement::new(n, refl, rot));
    let x_cycle: Vec<usize> = (0..n as i64)
        .map(|p| {
            if p % 2 == 0 {
                elem(0, p * wi)
            } else {
                let e = modulo(p - rn, n) as i64 / 2;
                elem(1, -2 * e * wi)
            }
        })
        .collect();
    let y_cycle: Vec<usize> = (0..n as i64)
        .map(|p| {
            if p % 2 == 0 {
                elem(0, p * vi * wi + 1)
            } else {
                let e = modulo(p - sn, n) as i64 / 2;
                elem(1, -2 * e * vi * wi + 1)
            }
        })
        .collect();

    let s1 = &canonical_splittings(n)?[1];
    let covers = |cycle: &[usize], half: &crate::perm::PointSet| {
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == n && sorted.iter().all(|&z| half.contains(z))
    };
    if !covers(&x_cycle, s1.x()) || !covers(&y_cycle, s1.y()) {
        return Err(HgsError::SupportViolation { n, s, v, w });
    }
    let kx = Permutation::from_cycles(2 * n, &[x_cycle])?;
    let ky = Permutation::from_cycles(2 * n, &[y_cycle])?;
    let k = &kx * &ky;

    let (lx, lt) = d.lambda_gens();
    let ctx = || format!("block 1, n={n}, (s,v,w)=({s},{v},{w})");
    check_conjugation(&lt, &k, &k.inverse(), || format!("{}: lambda(t) k lambda(t)^-1 != k^-1", ctx()))?;
    check_conjugation(&lx, &kx, &ky.pow(v as i64), || format!("{}: lambda(x) k_X lambda(x)^-1 != k_Y^v", ctx()))?;
    check_conjugation(&lx, &ky, &kx.pow(v as i64), || format!("{}: lambda(x) k_Y lambda(x)^-1 != k_X^v", ctx()))?;
    Ok(k)
}

/// Splits `k` into its cycles `(z_0 .. z_(n-1))` on `X` and `(z'_0 .. )` on
/// `Y`, each starting at its minimal point.
fn split_cycles(k: &Permutation, s: &Splitting) -> Result<(Vec<usize>, Vec<usize>), HgsError> {
    let n = s.x().len();
    if k.degree() != s.degree() {
        return Err(HgsError::BadCycleShape);
    }
    let mut cycles = k.cycles();
    if cycles.len() != 2 || cycles.iter().any(|c| c.len() != n) {
        return Err(HgsError::BadCycleShape);
    }
    let on = |c: &Vec<usize>, half: &crate::perm::PointSet| c.iter().all(|&z| half.contains(z));
    if !on(&cycles[0], s.x()) {
        cycles.swap(0, 1);
    }
    if !on(&cycles[0], s.x()) || !on(&cycles[1], s.y()) {
        return Err(HgsError::BadCycleShape);
    }
    let y = cycles.pop().expect("two cycles");
    let x = cycles.pop().expect("two cycles");
    Ok((x, y))
}

/// The involution `tau_m: z_a <-> z'_(m - a mod n)` pairing the two cycles
/// of `k` so that `tau k tau = k^-1`.
pub fn closure_reflection(k: &Permutation, s: &Splitting, m: usize) -> Result<Permutation, HgsError> {
    let (xs, ys) = split_cycles(k, s)?;
    let n = xs.len();
    let pairs: Vec<Vec<usize>> = (0..n)
        .map(|a| vec![xs[a], ys[modulo(m as i64 - a as i64, n)]])
        .collect();
    Ok(Permutation::from_cycles(k.degree(), &pairs)?)
}

/// The unique regular `N ≅ D_n` whose cyclic index-2 subgroup is `<k>`.
/// The returned group has generators `[k, tau]` with `tau = tau_1`.
pub fn regular_closure_of_k(k: &Permutation, s: &Splitting) -> Result<FiniteGroup, HgsError> {
    let tau = closure_reflection(k, s, 1)?;
    let n = s.x().len();
    let group = FiniteGroup::generate(k.degree(), &[k.clone(), tau])?;
    if group.order() != 2 * n {
        return Err(HgsError::ClosureViolation(format!("order {} != {}", group.order(), 2 * n)));
    }
    if !group.is_regular() {
        return Err(HgsError::ClosureViolation("not regular".into()));
    }
    if n >= 3 && group.dihedral_witness(n).is_none() {
        return Err(HgsError::ClosureViolation("no dihedral witness".into()));
    }
    Ok(group)
}

/// Whether `Hol(N) = Hol(D_n)`. Every generator of `Hol(D_n)` normalizing
/// `N` gives `Hol(D_n) ≤ Hol(N)`, and both have order `2n |Aut(D_n)|`.
pub fn in_multiple_holomorph(group: &FiniteGroup, d: &Dihedral) -> bool {
    d.holomorph_generators()
        .iter()
        .all(|h| group.is_normalized_by(h))
}

/// `Hol(N) = Norm(N)`, obtained by transporting `Hol(D_n)` along the
/// bijection `g -> psi(g)(0)`, where `psi: D_n -> N` sends `x, t` to a
/// dihedral witness `(a, b)` of `N`.
pub fn hol_of_regular(group: &FiniteGroup, d: &Dihedral) -> Result<FiniteGroup, HgsError> {
    let n = d.n();
    let (a, b) = group
        .dihedral_witness(n)
        .ok_or(BlockError::NoDihedralWitness { n, order: group.order() })?;
    let transport = Permutation::from_images(
        &d.elements()
            .map(|g| {
                let psi = &b.pow(g.reflection() as i64) * &a.pow(g.rotation() as i64);
                psi.apply(0)
            })
            .collect::<Vec<_>>(),
    )?;
    let gens: Vec<Permutation> = d
        .holomorph_generators()
        .iter()
        .map(|h| h.conjugate_unchecked(&transport))
        .collect();
    Ok(FiniteGroup::generate(d.degree(), &gens)?)
}

fn make_record(
    d: &Dihedral,
    block_index: usize,
    params: Params,
    k: Permutation,
    group: FiniteGroup,
) -> HgsRecord {
    let tau = group.generators()[1].clone();
    let in_multiple_holomorph = in_multiple_holomorph(&group, d);
    HgsRecord {
        n: d.n(),
        block_index,
        params,
        k,
        tau,
        group,
        in_multiple_holomorph,
    }
}

/// Conjugates a block-1 record by `phi_{1,1}`, which exchanges `X_1` and
/// `X_2`. Parameters are carried over unchanged.
pub fn map_to_block2(rec: &HgsRecord, d: &Dihedral) -> Result<HgsRecord, HgsError> {
    if rec.block_index != 1 {
        return Err(HgsError::WrongBlock(rec.block_index));
    }
    let phi = d.aut_perm(1, 1)?;
    let k = rec.k.conjugate_unchecked(&phi);
    let group = rec.group.conjugate_by(&phi);
    let out = make_record(d, 2, rec.params, k, group);
    verify_record(&out, d)?;
    Ok(out)
}

/// Checks every structural property of a record: regular dihedral of order
/// `2n`, `<k>` of index 2, normalized by `lambda(x)` and `lambda(t)`, and in
/// the stated block.
pub fn verify_record(rec: &HgsRecord, d: &Dihedral) -> Result<(), HgsError> {
    let n = d.n();
    let fail = |reason: &str| HgsError::RecordViolation {
        n,
        block: rec.block_index,
        reason: reason.to_string(),
    };
    let g = &rec.group;
    if g.order() != 2 * n || !g.is_regular() {
        return Err(fail("not regular of order 2n"));
    }
    if g.dihedral_witness(n).is_none() {
        return Err(fail("no dihedral witness"));
    }
    if rec.k.order() != n || !g.contains(&rec.k) || !g.contains(&rec.tau) {
        return Err(fail("<k> is not an index-2 subgroup"));
    }
    let (lx, lt) = d.lambda_gens();
    if !g.is_normalized_by(&lx) || !g.is_normalized_by(&lt) {
        return Err(fail("not normalized by lambda(D_n)"));
    }
    if blocks::block_index_of(g, n)? != rec.block_index {
        return Err(fail("block index mismatch"));
    }
    Ok(())
}

/// Keeps the first parameter tuple for each distinct `<k>`, ordered by the
/// canonical key.
fn dedupe(candidates: Vec<(Params, Permutation)>) -> Vec<(Permutation, Params, Permutation)> {
    let mut by_key: BTreeMap<Permutation, (Params, Permutation)> = BTreeMap::new();
    for (params, k) in candidates {
        by_key.entry(k.cyclic_key()).or_insert((params, k));
    }
    by_key.into_iter().map(|(key, (p, k))| (key, p, k)).collect()
}

fn close_all(
    d: &Dihedral,
    block: usize,
    split: &Splitting,
    ks: Vec<(Permutation, Params, Permutation)>,
) -> Result<Vec<HgsRecord>, HgsError> {
    ks.into_par_iter()
        .map(|(_, params, k)| {
            let group = regular_closure_of_k(&k, split)?;
            let rec = make_record(d, block, params, k, group);
            verify_record(&rec, d)?;
            Ok(rec)
        })
        .collect()
}

/// All block-0 records, one per distinct `K`.
pub fn enumerate_block0(d: &Dihedral) -> Result<Vec<HgsRecord>, HgsError> {
    let n = d.n();
    let vs = v_param_set(n)?;
    let tuples: Vec<(usize, usize, usize)> = upsilon(n)
        .into_iter()
        .flat_map(|u| {
            let us = arith::units(n);
            vs.values
                .clone()
                .into_iter()
                .flat_map(move |v| us.clone().into_iter().map(move |r| (u, v, r)))
        })
        .collect();
    let built: Vec<(Params, Permutation)> = tuples
        .into_par_iter()
        .map(|(u, v, r)| Ok((Params::Block0 { u, v, r }, build_k_block0(d, u, v, r)?)))
        .collect::<Result<_, HgsError>>()?;
    let split = &canonical_splittings(n)?[0];
    close_all(d, 0, split, dedupe(built))
}

/// All block-1 records, one per distinct `K`; empty for odd `n`.
pub fn enumerate_block1(d: &Dihedral) -> Result<Vec<HgsRecord>, HgsError> {
    let n = d.n();
    if n.is_odd() {
        return Ok(Vec::new());
    }
    let ws = arith::units(n / 2);
    let tuples: Vec<(usize, usize, usize)> = (1..n)
        .step_by(2)
        .flat_map(|s| {
            let ws = ws.clone();
            upsilon(n)
                .into_iter()
                .flat_map(move |v| ws.clone().into_iter().map(move |w| (s, v, w)))
        })
        .collect();
    let built: Vec<(Params, Permutation)> = tuples
        .into_par_iter()
        .map(|(s, v, w)| {
            let r = block1_r(n, s, v, w).expect("w is a unit");
            Ok((Params::Block12 { s, v, w, r }, build_k_block1(d, s, v, w)?))
        })
        .collect::<Result<_, HgsError>>()?;
    let split = &canonical_splittings(n)?[1];
    close_all(d, 1, split, dedupe(built))
}

/// Every `N ∈ R(D_n, [D_n])`, ordered by block and then by the canonical
/// generator of `K`. Per-block counts must match [`closed_form_count`].
pub fn enumerate_hgs(n: usize) -> Result<Vec<HgsRecord>, HgsError> {
    let d = Dihedral::new(n)?;
    let expected = closed_form_count(n)?;
    let block0 = enumerate_block0(&d)?;
    let block1 = enumerate_block1(&d)?;
    let mut block2: Vec<HgsRecord> = block1
        .par_iter()
        .map(|rec| map_to_block2(rec, &d))
        .collect::<Result<_, _>>()?;
    block2.sort_by_cached_key(|rec| rec.k.cyclic_key());

    for (block, (found, expected)) in [block0.len(), block1.len(), block2.len()]
        .into_iter()
        .zip(expected.blocks())
        .enumerate()
    {
        if found != expected {
            return Err(HgsError::CountMismatch { n, block, found, expected });
        }
    }
    Ok(block0.into_iter().chain(block1).chain(block2).collect())
}
