mod common;

use klmu::{
    insertion_tableau, inverse_rsk, knuth_applicable, knuth_apply, leq, recording_tableau, rsk,
    Engine, Permutation, Poly, Strategy as Recursion,
};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (3..=max).prop_flat_map(|n| (perm(n), perm(n)))
}

fn longest_conj(w: &Permutation) -> Permutation {
    let n = w.degree();
    Permutation::from_images(w.images().iter().rev().map(|&v| n - 1 - v as usize)).unwrap()
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-50i64..50, 0..6).prop_map(Poly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(w in (1usize..=36).prop_flat_map(perm)) {
        prop_assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
    }

    #[test]
    fn bruhat_matches_tableau_criterion((x, w) in pair(8)) {
        let raw = |p: &Permutation| p.images().to_vec();
        prop_assert_eq!(leq(&x, &w).unwrap(), common::bruhat_le(&raw(&x), &raw(&w)));
    }

    #[test]
    fn inverse_and_conjugation_symmetry((x, w) in pair(8)) {
        let (x, w) = if leq(&x, &w).unwrap() { (x, w) } else { (w, x) };
        let e = Engine::default();
        let base = e.kl_poly(&x, &w).unwrap();
        prop_assert_eq!(&e.kl_poly(&x.inverse(), &w.inverse()).unwrap(), &base);
        prop_assert_eq!(&e.kl_poly(&longest_conj(&x), &longest_conj(&w)).unwrap(), &base);
    }

    #[test]
    fn strategies_agree((x, w) in pair(7)) {
        let want = Engine::new(Recursion::SmallestRight).kl_poly(&x, &w).unwrap();
        for s in Recursion::ALL {
            prop_assert_eq!(&Engine::new(s).kl_poly(&x, &w).unwrap(), &want, "{}", s);
        }
    }

    #[test]
    fn polynomial_shape((x, w) in pair(8)) {
        let e = Engine::default();
        let p = e.kl_poly(&x, &w).unwrap();
        if leq(&x, &w).unwrap() {
            prop_assert_eq!(p.coeff(0), 1);
            let gap = w.length() - x.length();
            prop_assert!(x == w || 2 * p.degree().unwrap() < gap);
            prop_assert!(p.coeffs().iter().all(|&c| c >= 0));
        } else {
            prop_assert!(p.is_zero());
        }
    }

    #[test]
    fn rsk_is_a_bijection(w in (1usize..=12).prop_flat_map(perm)) {
        let (p, q) = rsk(&w);
        prop_assert_eq!(inverse_rsk(&p, &q).unwrap(), w.clone());
        prop_assert_eq!(&rsk(&w.inverse()).0, &q);
        let (op, oq) = common::rs(w.images());
        prop_assert_eq!(p.rows(), &op[..]);
        prop_assert_eq!(q.rows(), &oq[..]);
    }

    #[test]
    fn knuth_moves_match_the_oracle((w, k) in (3usize..=10).prop_flat_map(|n| (perm(n), 0..n - 2))) {
        let oracle = common::dual_knuth(k as u8, w.images());
        prop_assert_eq!(knuth_applicable(k, &w), oracle.is_some());
        if let Some(o) = oracle {
            let moved = knuth_apply(k, &w).unwrap();
            prop_assert_eq!(moved.images(), &o[..]);
            prop_assert_eq!(recording_tableau(&moved), recording_tableau(&w));
            prop_assert_ne!(insertion_tableau(&moved), insertion_tableau(&w));
        }
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b), &(&b + &a));
        prop_assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        prop_assert_eq!(&(&(&a - &b) + &b), &a);
        prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Simultaneous Knuth moves on a same-cell pair keep the symmetric μ;
    /// incomparable pairs count as 0.
    #[test]
    fn mu_sym_is_knuth_invariant(w in perm(6)) {
        let e = Engine::default();
        let sym = |a: &Permutation, b: &Permutation| e.mu_sym(a, b).unwrap_or(0);
        for x in klmu::left_cell(&recording_tableau(&w)) {
            let base = sym(&x, &w);
            for k in 0..4 {
                if knuth_applicable(k, &x) && knuth_applicable(k, &w) {
                    let (a, b) = (knuth_apply(k, &x).unwrap(), knuth_apply(k, &w).unwrap());
                    prop_assert_eq!(sym(&a, &b), base, "{} {} k={}", x, w, k);
                }
            }
        }
    }
}
