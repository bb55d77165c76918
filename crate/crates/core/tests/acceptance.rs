//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! runtime; the process exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dihedral_hgs::arith::{euler_phi, units};
use dihedral_hgs::blocks::{block_index_of, canonical_splittings, Placement};
use dihedral_hgs::dihedral::hol_cyclic_regular_dihedral;
use dihedral_hgs::hgs::{block0_i_sequence, hol_of_regular, upsilon, v_param_set, Params};
use dihedral_hgs::oracle::{ambient_checks, oracle_enumerate, OracleConfig};
use dihedral_hgs::{closed_form_count, enumerate_hgs, Dihedral, FiniteGroup, Permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Units of order dividing two, counted by brute force.
fn upsilon_size(n: usize) -> usize {
    (1..n).filter(|&u| gcd(u, n) == 1 && u * u % n == 1).count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn group_set(groups: impl Iterator<Item = FiniteGroup>) -> BTreeSet<Vec<Permutation>> {
    groups.map(|g| g.elements().to_vec()).collect()
}

fn criterion_1() -> Outcome {
    let table = [(3, 2), (4, 6), (5, 2), (6, 14), (7, 2), (8, 24), (9, 2), (10, 22), (12, 28), (16, 40)];
    for n in 3..=16 {
        let records = enumerate_hgs(n).map_err(err)?;
        let closed = closed_form_count(n).map_err(err)?;
        ensure(records.len() == closed.total, || {
            format!("n={n}: enumeration {} != closed form {}", records.len(), closed.total)
        })?;
        if let Some(&(_, expected)) = table.iter().find(|(m, _)| *m == n) {
            ensure(closed.total == expected, || format!("n={n}: total {} != {expected}", closed.total))?;
        }
    }
    Ok("n=3..16 enumeration = closed form = reference table".into())
}

fn criterion_2() -> Outcome {
    let cfg = OracleConfig::extended();
    for n in [3, 4, 5, 6, 8] {
        let oracle = oracle_enumerate(n, &cfg).map_err(err)?;
        let records = enumerate_hgs(n).map_err(err)?;
        let a = group_set(oracle.iter().cloned());
        let b = group_set(records.iter().map(|r| r.group.clone()));
        ensure(a.len() == oracle.len() && b.len() == records.len(), || format!("n={n}: duplicate groups"))?;
        ensure(a == b, || format!("n={n}: oracle {} groups vs enumeration {}", a.len(), b.len()))?;
    }
    Ok("oracle and enumeration agree for n=3,4,5,6 and n=8".into())
}

fn criterion_3() -> Outcome {
    let literal = [(4, [2, 2, 2]), (6, [2, 6, 6]), (8, [8, 8, 8]), (10, [2, 10, 10]), (12, [4, 12, 12])];
    for (n, expected) in literal {
        let ups = upsilon_size(n);
        let mu = if n % 8 == 0 { 2 } else { 1 };
        let delta = (n / 2) * ups * euler_phi(n / 2);
        let formula = [mu * ups, delta / euler_phi(n), delta / euler_phi(n)];
        ensure(formula == expected, || format!("n={n}: formula {formula:?} != {expected:?}"))?;
        let mut found = [0usize; 3];
        for rec in enumerate_hgs(n).map_err(err)? {
            found[rec.block_index] += 1;
            let actual = block_index_of(&rec.group, n).map_err(err)?;
            ensure(actual == rec.block_index, || format!("n={n}: record labelled {} is in block {actual}", rec.block_index))?;
        }
        ensure(found == expected, || format!("n={n}: blocks {found:?} != {expected:?}"))?;
        let closed = closed_form_count(n).map_err(err)?;
        ensure(closed.blocks() == expected, || format!("n={n}: closed form {:?}", closed.blocks()))?;
    }
    Ok("block breakdowns for n=4,6,8,10,12".into())
}

fn criterion_4() -> Outcome {
    for n in 3..=8 {
        let d = Dihedral::new(n).map_err(err)?;
        let hol = d.holomorph();
        let records = enumerate_hgs(n).map_err(err)?;
        let mut count = 0;
        for rec in &records {
            let direct = hol_of_regular(&rec.group, &d).map_err(err)? == hol;
            ensure(direct == rec.in_multiple_holomorph, || format!("n={n}: flag disagrees with Hol(N) = Hol(D_n)"))?;
            count += direct as usize;
        }
        ensure(count == upsilon_size(n), || format!("n={n}: {count} in multiple holomorph, expected {}", upsilon_size(n)))?;
        if n == 8 {
            let flagged: BTreeSet<usize> = (0..records.len()).filter(|&i| records[i].in_multiple_holomorph).collect();
            let expected: BTreeSet<usize> = (0..records.len())
                .filter(|&i| matches!(records[i].params, Params::Block0 { v: 1, .. }))
                .collect();
            ensure(flagged == expected, || format!("n=8: flagged {flagged:?} != block-0 v=1 {expected:?}"))?;
        }
    }
    Ok("multiple-holomorph counts = |Upsilon_n| for n=3..8; n=8 set is block 0 with v=1".into())
}

fn criterion_5() -> Outcome {
    let cfg = OracleConfig::extended();
    let mut sizes = Vec::new();
    for (n, order) in [(3, 36), (4, 64), (5, 200)] {
        let report = ambient_checks(n, &cfg).map_err(err)?;
        ensure(report.all_passed(), || format!("n={n}: {report:?}"))?;
        ensure(report.checks[0].normalizer_size == order && report.checks[1].normalizer_size == order, || {
            format!("n={n}: normalizer sizes {} / {}", report.checks[0].normalizer_size, report.checks[1].normalizer_size)
        })?;
        ensure(Dihedral::new(n).map_err(err)?.holomorph().order() == order, || format!("n={n}: |Hol| != {order}"))?;
        sizes.push(format!("n={n}:{order}"));
    }
    Ok(format!("full symmetric-group sweeps ({})", sizes.join(", ")))
}

fn criterion_6() -> Outcome {
    for n in 3..=16 {
        let d = Dihedral::new(n).map_err(err)?;
        let (lambda, rho) = (d.lambda_group(), d.rho_group());
        let records = enumerate_hgs(n).map_err(err)?;
        for (name, g) in [("lambda", &lambda), ("rho", &rho)] {
            let rec = records.iter().find(|r| r.group == *g).ok_or_else(|| format!("n={n}: {name} missing"))?;
            ensure(rec.block_index == 0, || format!("n={n}: {name} not in block 0"))?;
        }
        if [3, 5, 7, 9, 11, 13].contains(&n) {
            let got = group_set(records.iter().map(|r| r.group.clone()));
            let want = group_set([lambda, rho].into_iter());
            ensure(got == want, || format!("n={n}: enumeration is not exactly {{lambda, rho}}"))?;
        }
    }
    Ok("lambda and rho present in block 0 for n=3..16; odd prime powers give exactly those".into())
}

fn group_axioms(g: &FiniteGroup) -> Result<(), String> {
    let id = Permutation::identity(g.degree()).map_err(err)?;
    ensure(g.contains(&id), || "identity missing".into())?;
    for a in g.elements() {
        ensure(g.contains(&a.inverse()) && a.compose(&a.inverse()).map_err(err)? == id, || "inverse law".into())?;
        for b in g.generators() {
            ensure(g.contains(&(a * b)), || "closure".into())?;
        }
    }
    let els = g.elements();
    let step = (els.len() / 7).max(1);
    for a in els.iter().step_by(step) {
        for b in els.iter().step_by(step) {
            for c in els.iter().step_by(step) {
                ensure(&(a * b) * c == a * &(b * c), || "associativity".into())?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for n in 3..=12 {
        let d = Dihedral::new(n).map_err(err)?;
        let hol = d.holomorph();
        group_axioms(&hol).map_err(|e| format!("n={n}: Hol {e}"))?;
        group_axioms(&d.lambda_group()).map_err(|e| format!("n={n}: lambda {e}"))?;

        for rec in enumerate_hgs(n).map_err(err)? {
            let g = &rec.group;
            ensure(g.is_transitive() && g.is_regular() == (g.order() == g.degree()), || format!("n={n}: regularity"))?;
        }
        for sub in d.index2_subgroups() {
            ensure(!sub.is_transitive() && !sub.is_regular(), || format!("n={n}: index-2 subgroup is regular"))?;
        }
        ensure(hol.is_transitive() && !hol.is_regular(), || format!("n={n}: Hol regularity"))?;

        let splits = canonical_splittings(n).map_err(err)?;
        let sample: Vec<&Permutation> = hol.elements().iter().step_by((hol.order() / 40).max(1)).collect();
        for s in &splits {
            for a in &sample {
                for b in &sample {
                    let (pa, pb, pab) = (s.classify(a), s.classify(b), s.classify(&(*a * *b)));
                    let ok = match (pa.parity(), pb.parity()) {
                        (Some(x), Some(y)) => pab.parity() == Some((x + y) % 2),
                        (None, Some(_)) | (Some(_), None) => pab == Placement::Outside,
                        (None, None) => true,
                    };
                    ensure(ok, || format!("n={n}: placement law"))?;
                }
            }
        }

        let us = units(n);
        for i1 in 0..n {
            for &j1 in &us {
                let f1 = d.aut_perm(i1 as i64, j1).map_err(err)?;
                for i2 in (0..n).step_by(2) {
                    for &j2 in &us {
                        let f2 = d.aut_perm(i2 as i64, j2).map_err(err)?;
                        let composed = d.aut_perm((i2 + j2 * i1) as i64, j2 * j1 % n).map_err(err)?;
                        ensure(&f2 * &f1 == composed, || format!("n={n}: aut composition"))?;
                    }
                }
            }
        }

        let vs = v_param_set(n).map_err(err)?.values;
        let vs_candidates = if n % 2 == 0 { upsilon(n) } else { vec![1] };
        for v in vs_candidates {
            for &r in &us {
                match block0_i_sequence(n, v, r) {
                    Ok(seq) => {
                        ensure(vs.contains(&v), || format!("n={n}: v={v} accepted"))?;
                        let mut sorted = seq.clone();
                        sorted.sort_unstable();
                        ensure(sorted == (0..n).collect::<Vec<_>>(), || format!("n={n}: sequence not bijective"))?;
                    }
                    Err(_) => ensure(!vs.contains(&v), || format!("n={n}: v={v} r={r} rejected"))?,
                }
            }
        }
    }
    Ok("group axioms, regularity, placement law, aut law, i-sequence guards for n<=12".into())
}

fn criterion_8() -> Outcome {
    for n in (4..=64).step_by(2) {
        let filtered: Vec<usize> = (1..n)
            .filter(|&v| gcd(v, n) == 1 && v * v % n == 1 && gcd(v + 1, n) == 2)
            .collect();
        let closed = if n % 8 == 0 { vec![1, n / 2 + 1] } else { vec![1] };
        ensure(filtered == closed, || format!("n={n}: gcd filter {filtered:?} != {closed:?}"))?;
        let lib = v_param_set(n).map_err(err)?;
        ensure(lib.values == closed, || format!("n={n}: v_param_set {:?}", lib.values))?;
    }
    for n in (4..=12).step_by(2) {
        let g = hol_cyclic_regular_dihedral(n).map_err(err)?;
        ensure(g.order() == n && g.is_regular(), || format!("n={n}: cyclic-holomorph subgroup"))?;
    }
    Ok("V_n closed form for even n<=64; unique regular dihedral subgroup of Hol(C_n) for even n<=12".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 count table", criterion_1, Duration::from_secs(10)),
        ("2 oracle equivalence", criterion_2, Duration::from_secs(30)),
        ("3 block breakdown", criterion_3, Duration::from_secs(60)),
        ("4 multiple holomorph", criterion_4, Duration::from_secs(60)),
        ("5 ambient brute force", criterion_5, Duration::from_secs(60)),
        ("6 canonical memberships", criterion_6, Duration::from_secs(60)),
        ("7 property suites", criterion_7, Duration::from_secs(30)),
        ("8 twist and cyclic-holomorph checks", criterion_8, Duration::from_secs(10)),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
