//! Exhaustive searches that check the enumeration without using its
//! parameterization.
//!
//! The pair search walks every product of an `n`-cycle on `X` and an
//! `n`-cycle on `Y` for each canonical splitting and keeps those whose cyclic
//! group is normalized by `lambda(x)` and `lambda(t)`. The ambient sweep walks
//! all of `S_2n` for the smallest `n`. Only the generic group machinery,
//! the dihedral constructions, the splittings and [`regular_closure_of_k`]
//! are used here.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::blocks::{canonical_splittings, BlockError, Placement, Splitting};
use crate::dihedral::{Dihedral, DihedralError};
use crate::hgs::{regular_closure_of_k, HgsError};
use crate::perm::{FiniteGroup, PermError, Permutation};

/// Hard ceiling for the pair search.
pub const PAIRSEARCH_LIMIT: usize = 8;
/// Hard ceiling for the full `S_2n` sweep.
pub const AMBIENT_LIMIT: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} for n={n} refused: configured cap is {cap}")]
    RefusedScale { what: &'static str, n: usize, cap: usize },
    #[error("oracle cap {value} for {what} exceeds the hard limit {limit}")]
    BadConfig { what: &'static str, value: usize, limit: usize },
    #[error("oracle found an invalid group for n={n}: {reason}")]
    Verification { n: usize, reason: String },
    #[error(transparent)]
    Hgs(#[from] HgsError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_n_pairsearch: usize,
    pub max_n_ambient: usize,
    pub parallel: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_n_pairsearch: 6,
            max_n_ambient: 4,
            parallel: true,
        }
    }
}

impl OracleConfig {
    /// Caps raised to the hard limits (pair search up to `n = 8`, ambient
    /// sweep up to `n = 5`).
    pub fn extended() -> Self {
        Self {
            max_n_pairsearch: PAIRSEARCH_LIMIT,
            max_n_ambient: AMBIENT_LIMIT,
            parallel: true,
        }
    }

    pub fn new(max_n_pairsearch: usize, max_n_ambient: usize, parallel: bool) -> Result<Self, OracleError> {
        if max_n_pairsearch > PAIRSEARCH_LIMIT {
            return Err(OracleError::BadConfig {
                what: "pair search",
                value: max_n_pairsearch,
                limit: PAIRSEARCH_LIMIT,
            });
        }
        if max_n_ambient > AMBIENT_LIMIT {
            return Err(OracleError::BadConfig {
                what: "ambient sweep",
                value: max_n_ambient,
                limit: AMBIENT_LIMIT,
            });
        }
        Ok(Self {
            max_n_pairsearch,
            max_n_ambient,
            parallel,
        })
    }

    fn check_pairsearch(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_n_pairsearch {
            return Err(OracleError::RefusedScale {
                what: "pair search",
                n,
                cap: self.max_n_pairsearch,
            });
        }
        Ok(())
    }

    fn check_ambient(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_n_ambient {
            return Err(OracleError::RefusedScale {
                what: "ambient sweep",
                n,
                cap: self.max_n_ambient,
            });
        }
        Ok(())
    }
}

fn map_maybe_par<T, F>(parallel: bool, items: Vec<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if parallel {
        items.into_par_iter().map(f).collect()
    } else {
        items.into_iter().map(f).collect()
    }
}

/// Rearranges `buf` into the next permutation in lexicographic order;
/// returns `false` after the last one.
fn next_permutation(buf: &mut [usize]) -> bool {
    let Some(i) = buf.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = buf.iter().rposition(|&v| v > buf[i]).expect("pivot has a successor");
    buf.swap(i, j);
    buf[i + 1..].reverse();
    true
}

/// All `(n-1)!` cyclic orderings of `support`, each starting at its minimal
/// point.
pub fn n_cycles_on(support: &[usize]) -> Vec<Vec<usize>> {
    let mut pts = support.to_vec();
    pts.sort_unstable();
    let Some((&first, rest)) = pts.split_first() else {
        return Vec::new();
    };
    let mut tail = rest.to_vec();
    let mut out = Vec::new();
    loop {
        let mut c = Vec::with_capacity(pts.len());
        c.push(first);
        c.extend_from_slice(&tail);
        out.push(c);
        if !next_permutation(&mut tail) {
            break;
        }
    }
    out
}

/// Whether `c` is a power of the permutation with cycles `xs` and `ys`.
fn is_power_of_two_cycles(c: &Permutation, xs: &[usize], ys: &[usize], pos: &[usize]) -> bool {
    let n = xs.len();
    let target = c.apply(xs[0]);
    if xs[pos[target]] != target {
        return false;
    }
    let j = pos[target];
    (0..n).all(|a| c.apply(xs[a]) == xs[(a + j) % n] && c.apply(ys[a]) == ys[(a + j) % n])
}

/// Whether `g c g^-1` is a power of the single cycle `c` on its support.
fn normalizes_cycle(g: &Permutation, cycle: &[usize], pos: &[usize]) -> bool {
    let n = cycle.len();
    // g c g^-1 maps g(c_a) to g(c_(a+1)).
    let start = g.apply(cycle[0]);
    if pos[start] == usize::MAX || cycle[pos[start]] != start {
        return false;
    }
    let target = g.apply(cycle[1]);
    if pos[target] == usize::MAX || cycle[pos[target]] != target {
        return false;
    }
    let j = (pos[target] + n - pos[start]) % n;
    (0..n).all(|a| {
        let from = g.apply(cycle[a]);
        let to = g.apply(cycle[(a + 1) % n]);
        pos[from] != usize::MAX && cycle[(pos[from] + j) % n] == to
    })
}

fn positions(degree: usize, cycle: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; degree];
    for (a, &z) in cycle.iter().enumerate() {
        pos[z] = a;
    }
    pos
}

/// Canonical generators of every cyclic `K = <k_X k_Y>` with `k_X`, `k_Y`
/// `n`-cycles on the halves of `split` and `K` normalized by `lambda(x)`
/// and `lambda(t)`, in increasing order.
///
/// Elements of `lambda(D_n)` that preserve the halves must normalize each
/// cycle separately; that necessary condition prunes the cycles before the
/// pair loop.
pub fn oracle_k_candidates(
    n: usize,
    split: &Splitting,
    cfg: &OracleConfig,
) -> Result<Vec<Permutation>, OracleError> {
    cfg.check_pairsearch(n)?;
    let d = Dihedral::new(n)?;
    let degree = d.degree();
    let (lx, lt) = d.lambda_gens();
    let lxt = &lx * &lt;
    let preserving: Vec<&Permutation> = [&lx, &lt, &lxt]
        .into_iter()
        .filter(|g| split.classify(g) == Placement::Preserve)
        .collect();

    let survivors = |support: &[usize]| -> Vec<(Vec<usize>, Vec<usize>)> {
        n_cycles_on(support)
            .into_iter()
            .map(|c| {
                let pos = positions(degree, &c);
                (c, pos)
            })
            .filter(|(c, pos)| preserving.iter().all(|g| normalizes_cycle(g, c, pos)))
            .collect()
    };
    let xs_all = survivors(&split.x().iter().collect::<Vec<_>>());
    let ys_all = survivors(&split.y().iter().collect::<Vec<_>>());

    let per_x: Vec<Vec<Permutation>> = map_maybe_par(cfg.parallel, (0..xs_all.len()).collect(), |i| {
        let (xs, xpos) = &xs_all[i];
        let mut found = Vec::new();
        for (ys, ypos) in &ys_all {
            let k = Permutation::from_cycles(degree, &[xs.clone(), ys.clone()])
                .expect("disjoint cycles");
            let mut pos = xpos.clone();
            for &z in ys.iter() {
                pos[z] = ypos[z];
            }
            let ok = [&lx, &lt].iter().all(|g| {
                let c = k.conjugate_unchecked(g);
                is_power_of_two_cycles(&c, xs, ys, &pos)
            });
            if ok {
                found.push(k.cyclic_key());
            }
        }
        found
    });
    let mut keys: Vec<Permutation> = per_x.into_iter().flatten().collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(keys)
}

/// All regular `N ≅ D_n` normalized by `lambda(D_n)` found by the pair
/// search over the canonical splittings, deduplicated and sorted by element
/// list.
pub fn oracle_enumerate(n: usize, cfg: &OracleConfig) -> Result<Vec<FiniteGroup>, OracleError> {
    cfg.check_pairsearch(n)?;
    let d = Dihedral::new(n)?;
    let (lx, lt) = d.lambda_gens();
    let mut groups = Vec::new();
    for split in canonical_splittings(n)? {
        for k in oracle_k_candidates(n, &split, cfg)? {
            let group = regular_closure_of_k(&k, &split)?;
            let fail = |reason: &str| OracleError::Verification { n, reason: reason.into() };
            if group.order() != 2 * n || !group.is_regular() {
                return Err(fail("closure is not regular of order 2n"));
            }
            if group.dihedral_witness(n).is_none() {
                return Err(fail("closure is not dihedral"));
            }
            let normalized = [&lx, &lt].iter().all(|g| {
                group.elements().iter().all(|h| group.contains(&h.conjugate_unchecked(g)))
            });
            if !normalized {
                return Err(fail("closure is not normalized by lambda(D_n)"));
            }
            groups.push(group);
        }
    }
    groups.sort_by(|a, b| a.elements().cmp(b.elements()));
    groups.dedup();
    Ok(groups)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbientCheck {
    pub name: String,
    pub passed: bool,
    /// Number of permutations satisfying the normalizer condition.
    pub normalizer_size: usize,
    /// Size of the set the normalizer is expected to equal.
    pub expected_size: usize,
    /// Permutations on which the two membership tests disagree.
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbientReport {
    pub n: usize,
    pub permutations_checked: usize,
    pub checks: Vec<AmbientCheck>,
}

impl AmbientReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Default)]
struct SweepTally {
    total: usize,
    norm_c: usize,
    norm_lambda: usize,
    in_hol: usize,
    in_wreath: usize,
    norm_wreath: usize,
    norm_base: usize,
    bad_c: usize,
    bad_lambda: usize,
    bad_wreath: usize,
    bad_base: usize,
}

impl SweepTally {
    fn merge(mut self, o: SweepTally) -> SweepTally {
        self.total += o.total;
        self.norm_c += o.norm_c;
        self.norm_lambda += o.norm_lambda;
        self.in_hol += o.in_hol;
        self.in_wreath += o.in_wreath;
        self.norm_wreath += o.norm_wreath;
        self.norm_base += o.norm_base;
        self.bad_c += o.bad_c;
        self.bad_lambda += o.bad_lambda;
        self.bad_wreath += o.bad_wreath;
        self.bad_base += o.bad_base;
        self
    }
}

/// Generators of the base group `S(X,Y) = Sym(X) × Sym(Y)`.
fn base_generators(split: &Splitting) -> Vec<Permutation> {
    let degree = split.degree();
    let mut gens = Vec::new();
    for half in [split.x(), split.y()] {
        let pts: Vec<usize> = half.iter().collect();
        gens.push(Permutation::from_cycles(degree, &[pts[..2].to_vec()]).expect("transposition"));
        gens.push(Permutation::from_cycles(degree, &[pts]).expect("cycle"));
    }
    gens
}

/// Sweeps all of `S_2n` and checks:
/// `Norm(<lambda(x)>) = Hol(D_n)`, `Norm(lambda(D_n)) = Hol(D_n)`,
/// `Norm(W(S_0)) = W(S_0)` and `Norm(S(S_0)) = W(S_0)`.
pub fn ambient_checks(n: usize, cfg: &OracleConfig) -> Result<AmbientReport, OracleError> {
    cfg.check_ambient(n)?;
    let d = Dihedral::new(n)?;
    let degree = d.degree();
    let hol = d.holomorph();
    let (lx, _) = d.lambda_gens();
    let cyclic = FiniteGroup::generate(degree, &[lx])?;
    let lambda = d.lambda_group();
    let split = canonical_splittings(n)?.remove(0);
    let base_gens = base_generators(&split);
    let swap = d.lambda_gens().1;
    let mut wreath_gens = base_gens.clone();
    wreath_gens.push(swap);

    let sweep = |first: usize| -> SweepTally {
        let mut tally = SweepTally::default();
        let mut rest: Vec<usize> = (0..degree).filter(|&p| p != first).collect();
        let mut images = vec![0usize; degree];
        loop {
            images[0] = first;
            images[1..].copy_from_slice(&rest);
            let g = Permutation::from_images(&images).expect("bijection");
            let nc = cyclic.is_normalized_by(&g);
            let nl = lambda.is_normalized_by(&g);
            let ih = hol.contains(&g);
            let iw = split.classify(&g).in_wreath();
            let nw = wreath_gens
                .iter()
                .all(|w| split.classify(&w.conjugate_unchecked(&g)).in_wreath());
            let nb = base_gens
                .iter()
                .all(|s| split.classify(&s.conjugate_unchecked(&g)) == Placement::Preserve);
            tally.total += 1;
            tally.norm_c += nc as usize;
            tally.norm_lambda += nl as usize;
            tally.in_hol += ih as usize;
            tally.in_wreath += iw as usize;
            tally.norm_wreath += nw as usize;
            tally.norm_base += nb as usize;
            tally.bad_c += (nc != ih) as usize;
            tally.bad_lambda += (nl != ih) as usize;
            tally.bad_wreath += (nw != iw) as usize;
            tally.bad_base += (nb != iw) as usize;
            if !next_permutation(&mut rest) {
                break;
            }
        }
        tally
    };
    let tally = map_maybe_par(cfg.parallel, (0..degree).collect(), sweep)
        .into_iter()
        .fold(SweepTally::default(), SweepTally::merge);

    let hol_ok = hol.order() == d.holomorph_order() && tally.in_hol == hol.order();
    let check = |name: &str, size: usize, expected: usize, bad: usize, extra: bool| AmbientCheck {
        name: name.to_string(),
        passed: bad == 0 && size == expected && extra,
        normalizer_size: size,
        expected_size: expected,
        disagreements: bad,
    };
    Ok(AmbientReport {
        n,
        permutations_checked: tally.total,
        checks: vec![
            check("Norm(<lambda(x)>) = Hol(D_n)", tally.norm_c, hol.order(), tally.bad_c, hol_ok),
            check("Norm(lambda(D_n)) = Hol(D_n)", tally.norm_lambda, hol.order(), tally.bad_lambda, hol_ok),
            check("Norm(W(X_0,Y_0)) = W(X_0,Y_0)", tally.norm_wreath, tally.in_wreath, tally.bad_wreath, true),
            check("Norm(S(X_0,Y_0)) = W(X_0,Y_0)", tally.norm_base, tally.in_wreath, tally.bad_base, true),
        ],
    })
}
