use dihedral_hgs::arith::units;
use dihedral_hgs::blocks::{canonical_splittings, Placement};
use dihedral_hgs::{Dihedral, FiniteGroup, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn perm_pair(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (2..=max_degree).prop_flat_map(|d| (perm(d), perm(d)))
}

fn perm_triple(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (2..=max_degree).prop_flat_map(|d| (perm(d), perm(d), perm(d)))
}

/// A dihedral order together with two holomorph elements.
fn hol_pair() -> impl Strategy<Value = (usize, Permutation, Permutation)> {
    (3usize..=8).prop_flat_map(|n| {
        let hol = Dihedral::new(n).unwrap().holomorph();
        let els = hol.elements().to_vec();
        let m = els.len();
        (Just(n), 0..m, 0..m).prop_map(move |(n, i, j)| (n, els[i].clone(), els[j].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative((a, b, c) in perm_triple(12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn identity_and_inverse(a in (2usize..=12).prop_flat_map(perm)) {
        let e = Permutation::identity(a.degree()).unwrap();
        prop_assert_eq!(&a * &e, a.clone());
        prop_assert_eq!(&e * &a, a.clone());
        prop_assert_eq!(&a * &a.inverse(), e.clone());
        prop_assert_eq!(a.pow(a.order() as i64), e);
    }

    #[test]
    fn conjugation_relabels_cycles((p, by) in perm_pair(10)) {
        let conj = p.conjugate(&by).unwrap();
        let relabelled: Vec<Vec<usize>> = p
            .cycles()
            .iter()
            .map(|c| c.iter().map(|&z| by.apply(z)).collect())
            .collect();
        prop_assert_eq!(conj, Permutation::from_cycles(p.degree(), &relabelled).unwrap());
    }

    #[test]
    fn cycle_text_round_trips(p in (2usize..=16).prop_flat_map(perm)) {
        let text = p.format_cycles();
        prop_assert_eq!(Permutation::parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn lagrange_divisibility((a, b) in (2usize..=6).prop_flat_map(|d| (perm(d), perm(d)))) {
        let g = FiniteGroup::generate(a.degree(), &[a.clone(), b.clone()]).unwrap();
        let factorial: usize = (1..=a.degree()).product();
        prop_assert_eq!(factorial % g.order(), 0);
        let h = FiniteGroup::generate(a.degree(), &[a.clone()]).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert_eq!(h.order(), a.order());
        for x in g.elements() {
            prop_assert_eq!(g.order() % x.order(), 0);
        }
    }

    #[test]
    fn regular_iff_order_equals_degree_when_transitive((a, b) in (2usize..=6).prop_flat_map(|d| (perm(d), perm(d)))) {
        let g = FiniteGroup::generate(a.degree(), &[a, b]).unwrap();
        if g.is_transitive() {
            prop_assert_eq!(g.is_regular(), g.order() == g.degree());
        } else {
            prop_assert!(!g.is_regular());
        }
    }

    #[test]
    fn placement_is_a_homomorphism_on_the_wreath((n, a, b) in hol_pair()) {
        for s in canonical_splittings(n).unwrap() {
            let (pa, pb, pab) = (s.classify(&a), s.classify(&b), s.classify(&(&a * &b)));
            match (pa.parity(), pb.parity()) {
                (Some(x), Some(y)) => prop_assert_eq!(pab.parity(), Some((x + y) % 2)),
                (None, Some(_)) | (Some(_), None) => prop_assert_eq!(pab, Placement::Outside),
                (None, None) => {}
            }
        }
    }

    #[test]
    fn placement_is_conjugation_covariant((p, sigma) in (3usize..=6).prop_flat_map(|n| (perm(2 * n), perm(2 * n)))) {
        let n = p.degree() / 2;
        for s in canonical_splittings(n).unwrap() {
            let moved = s.mapped_by(&sigma);
            prop_assert_eq!(moved.classify(&p.conjugate(&sigma).unwrap()), s.classify(&p));
        }
    }

    #[test]
    fn aut_perm_composes((n, i1, i2, a, b) in (3usize..=12).prop_flat_map(|n| (Just(n), 0..n, 0..n, 0..n, 0..n))) {
        let d = Dihedral::new(n).unwrap();
        let us = units(n);
        let (j1, j2) = (us[a % us.len()], us[b % us.len()]);
        let f1 = d.aut_perm(i1 as i64, j1).unwrap();
        let f2 = d.aut_perm(i2 as i64, j2).unwrap();
        prop_assert_eq!(&f2 * &f1, d.aut_perm((i2 + j2 * i1) as i64, j2 * j1 % n).unwrap());
        prop_assert!(d.lambda_group().is_normalized_by(&f1));
    }

    #[test]
    fn cyclic_key_is_a_class_invariant(k in (3usize..=10).prop_flat_map(perm)) {
        for w in units(k.order().max(2)) {
            prop_assert_eq!(k.pow(w as i64).cyclic_key(), k.cyclic_key());
        }
        prop_assert!(k.cyclic_key() <= k);
    }

    #[test]
    fn lambda_and_rho_commute((n, a, b) in (3usize..=12).prop_flat_map(|n| (Just(n), 0..2 * n, 0..2 * n))) {
        let d = Dihedral::new(n).unwrap();
        let g = d.element_of(a).unwrap();
        let h = d.element_of(b).unwrap();
        prop_assert_eq!(&d.lambda(&g) * &d.rho(&h), &d.rho(&h) * &d.lambda(&g));
        prop_assert_eq!(&d.lambda(&g) * &d.lambda(&h), d.lambda(&g.mul(&h)));
        prop_assert_eq!(&d.rho(&g) * &d.rho(&h), d.rho(&g.mul(&h)));
    }
}
