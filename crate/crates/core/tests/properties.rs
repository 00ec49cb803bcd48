mod common;

use common::{
    acyclic_strategy, bce, eval_poly, matrix_and_sequence, matrix_strategy, numeric_cluster,
    oracle_bi_infinite, oracle_green, oracle_mutate, random_positive_rational,
};
use num_rational::BigRational;
use proptest::prelude::*;
use quiverlab_core::{
    canonical_form, class_no_mgs_certificate, column_gcds, covering_pairs, degree,
    depth1_upper_membership, enumerate_class, is_mutation_finite, search_mgs,
    verify_green, verify_green_to_red, verify_maximal_green, ClassCaps, Degree, ExchangeMatrix,
    GradingVector, IceQuiver, LaurentPoly, MutationSequence, SearchOptions, Seed,
};
use std::collections::BTreeSet;

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (p, &v) in perm.iter().enumerate() {
        inv[v] = p;
    }
    inv
}

fn with_permutation<S: Strategy<Value = ExchangeMatrix>>(
    s: S,
) -> impl Strategy<Value = (ExchangeMatrix, Vec<usize>)> {
    s.prop_flat_map(|b| {
        let n = b.n();
        (Just(b), permutation(n))
    })
}

/// Drops the steps of `seq` that would create an arrow of multiplicity
/// above `max`.
fn within_multiplicity(b: &ExchangeMatrix, seq: &[usize], max: i64) -> Vec<usize> {
    let mut m = b.clone();
    let mut kept = Vec::new();
    for &k in seq {
        let next = m.mutate(k).unwrap();
        if next.max_multiplicity() <= max {
            kept.push(k);
            m = next;
        }
    }
    kept
}

fn canonical_set(b: &ExchangeMatrix, caps: ClassCaps) -> Option<BTreeSet<ExchangeMatrix>> {
    let class = enumerate_class(b, caps).unwrap();
    class
        .complete
        .then(|| class.representatives.into_iter().map(|m| m.canonical).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mutation_is_an_involution((b, seq) in matrix_and_sequence(6, 4, 8)) {
        let mut m = b.clone();
        for &k in &seq {
            let next = m.mutate(k).unwrap();
            prop_assert_eq!(&next.mutate(k).unwrap(), &m);
            for i in 0..m.n() {
                for j in 0..m.n() {
                    prop_assert_eq!(next.get(i, j), -next.get(j, i));
                }
            }
            m = next;
        }
    }

    #[test]
    fn matrix_rule_matches_multigraph_rule((b, seq) in matrix_and_sequence(5, 3, 6)) {
        let mut q = IceQuiver::frame(&b);
        let mut o = q.clone();
        for &k in &seq {
            q = q.mutate(k).unwrap();
            o = oracle_mutate(&o, k);
            prop_assert_eq!(&q, &o);
        }
    }

    #[test]
    fn frozen_vertices_mutate_like_arrows((b, seq) in matrix_and_sequence(5, 3, 5), f in 0usize..5) {
        // freeze one vertex of a framed quiver, then compare rules
        let f = f % b.n();
        let Ok(mut q) = IceQuiver::frame(&b).freeze(&[f]) else { return Ok(()) };
        let seq: Vec<usize> = seq.into_iter().filter(|&k| k < q.n()).collect();
        for &k in &seq {
            let next = oracle_mutate(&q, k);
            prop_assert_eq!(&q.mutate(k).unwrap(), &next);
            q = next;
        }
    }

    #[test]
    fn sign_coherence((b, seq) in matrix_and_sequence(6, 4, 12)) {
        let mut q = IceQuiver::frame(&b);
        for &k in &seq {
            match q.mutate(k) {
                Ok(next) => q = next,
                Err(_) => break,
            }
            for i in 0..q.n() {
                prop_assert!(oracle_green(&q, i).is_some());
                prop_assert!(q.vertex_status(i).is_ok());
            }
        }
    }

    #[test]
    fn framing_commutes_with_mutation(b in matrix_strategy(6, 4), k in 0usize..6) {
        let k = k % b.n();
        let framed = IceQuiver::frame(&b).mutate(k).unwrap();
        prop_assert_eq!(framed.principal(), &b.mutate(k).unwrap());
    }

    #[test]
    fn gcds_are_mutation_invariant((b, seq) in matrix_and_sequence(6, 4, 8)) {
        let want = column_gcds(&b);
        let mut m = b;
        for &k in &seq {
            match m.mutate(k) {
                Ok(next) => m = next,
                Err(_) => break,
            }
            prop_assert_eq!(&column_gcds(&m), &want);
        }
    }

    #[test]
    fn canonical_form_ignores_labels((b, perm) in with_permutation(matrix_strategy(7, 3))) {
        let c = canonical_form(&b).unwrap();
        prop_assert_eq!(canonical_form(&b.permuted(&perm)).unwrap().matrix, c.matrix.clone());
        prop_assert_eq!(b.permuted(&c.permutation), c.matrix);
    }

    #[test]
    fn verifiers_are_equivariant(
        ((b, seq), perm) in matrix_and_sequence(5, 3, 8).prop_flat_map(|(b, s)| {
            let n = b.n();
            (Just((b, s)), permutation(n))
        })
    ) {
        let seq = MutationSequence(seq);
        let pb = b.permuted(&perm);
        let ps = seq.relabeled(&inverse(&perm));
        prop_assert_eq!(verify_green(&b, &seq).ok(), verify_green(&pb, &ps).ok());
        prop_assert_eq!(verify_maximal_green(&b, &seq).ok(), verify_maximal_green(&pb, &ps).ok());
        prop_assert_eq!(verify_green_to_red(&b, &seq).ok(), verify_green_to_red(&pb, &ps).ok());
    }

    #[test]
    fn covering_pairs_avoid_bi_infinite_arrows(b in matrix_strategy(6, 2)) {
        for (i, j) in covering_pairs(&IceQuiver::from_principal(b.clone())) {
            prop_assert!(b.get(i, j) > 0);
            prop_assert!(!oracle_bi_infinite(&b, i, j));
        }
        for (i, j, _) in b.arrow_list() {
            if !oracle_bi_infinite(&b, i, j) {
                prop_assert!(covering_pairs(&IceQuiver::from_principal(b.clone())).contains(&(i, j)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pruning_does_not_change_existence(b in acyclic_strategy(4, 2)) {
        let depth = 2 * b.n();
        let on = search_mgs(&b, depth, &SearchOptions::default()).unwrap();
        let off = search_mgs(&b, depth, &SearchOptions { prune_bad_head: false, ..SearchOptions::default() }).unwrap();
        prop_assert_eq!(on.found().is_some(), off.found().is_some());
        let s = on.found().unwrap();
        prop_assert!(verify_maximal_green(&b, s).unwrap());
        for cut in 0..=s.len() {
            prop_assert!(verify_green(&b, &MutationSequence(s.0[..cut].to_vec())).unwrap());
        }
    }

    #[test]
    fn class_is_independent_of_labels((b, perm) in with_permutation(matrix_strategy(4, 2))) {
        let caps = ClassCaps { max_quivers: 400, max_multiplicity: 32 };
        let a = canonical_set(&b, caps);
        let c = canonical_set(&b.permuted(&perm), caps);
        prop_assert_eq!(a, c);
    }

    #[test]
    fn finiteness_agrees_with_completeness(b in matrix_strategy(4, 2)) {
        let caps = ClassCaps { max_quivers: 5000, max_multiplicity: 2 };
        let class = enumerate_class(&b, caps).unwrap();
        let connected = b.connected_components().len() == 1;
        if connected && b.n() >= 3 {
            prop_assert_eq!(is_mutation_finite(&b), class.complete);
        } else if class.complete {
            prop_assert!(is_mutation_finite(&b));
        }
    }

    #[test]
    fn class_certificates_block_every_sampled_member(seq in proptest::collection::vec(0usize..4, 0..4)) {
        prop_assert!(class_no_mgs_certificate(&bce()).is_some());
        let member = bce().mutate_seq(&seq).unwrap();
        let opts = SearchOptions { check_obstructions: false, ..SearchOptions::default() };
        prop_assert!(search_mgs(&member, 5, &opts).unwrap().found().is_none());
    }

    #[test]
    fn random_class_certificates_are_sound((b, seq) in matrix_and_sequence(4, 4, 3)) {
        let b = b.scaled(2).unwrap();
        if class_no_mgs_certificate(&b).is_some() {
            let member = b.mutate_seq(&seq).unwrap();
            let opts = SearchOptions { check_obstructions: false, ..SearchOptions::default() };
            prop_assert!(search_mgs(&member, 4, &opts).unwrap().found().is_none());
        }
    }

    #[test]
    fn laurent_and_positive((b, seq) in matrix_and_sequence(3, 3, 6)) {
        let seq = within_multiplicity(&b, &seq, 3);
        let mut seed = Seed::initial(&b);
        let mut rng = rand::rng();
        let x: Vec<BigRational> = (0..b.n()).map(|_| random_positive_rational(&mut rng)).collect();
        let y: Vec<BigRational> = (0..b.n()).map(|_| random_positive_rational(&mut rng)).collect();
        for (step, &k) in seq.iter().enumerate() {
            let f = seed.exchange_binomial(k).unwrap();
            let next = seed.mutate(k).unwrap();
            prop_assert_eq!(&(&seed.cluster[k] * &next.cluster[k]), &f);
            prop_assert!(next.cluster[k].all_coefficients_positive());
            let want = numeric_cluster(&b, &seq[..=step], &x, &y);
            prop_assert_eq!(eval_poly(&next.cluster[k], &x, &y), want[k].clone());
            seed = next;
        }
    }

    #[test]
    fn cluster_variables_pass_depth_one((b, seq) in matrix_and_sequence(3, 2, 4)) {
        let mut seed = Seed::initial(&b);
        for &k in &seq {
            seed = seed.mutate(k).unwrap();
        }
        for v in &seed.cluster {
            prop_assert!(depth1_upper_membership(v, &b));
        }
    }

    #[test]
    fn degree_is_additive(
        a in proptest::collection::vec((-3i64..=3, -3i64..=3, 1i64..4), 1..4),
        b in proptest::collection::vec((-3i64..=3, -3i64..=3, 1i64..4), 1..4),
    ) {
        // d = (1, 2): restrict to monomials of one fixed degree per polynomial
        let d = GradingVector(vec![1, 2]);
        let build = |terms: &[(i64, i64, i64)]| {
            let target = terms[0].0 + 2 * terms[0].1;
            let mut p = LaurentPoly::zero(2, 0);
            for &(e1, _, c) in terms {
                // choose e2 so that e1 + 2 e2 hits target when possible
                if (target - e1) % 2 == 0 {
                    let e2 = (target - e1) / 2;
                    p = &p + &(&LaurentPoly::x_power(2, 0, &[e1, e2]) * &LaurentPoly::constant(2, 0, c));
                }
            }
            p
        };
        let (p, q) = (build(&a), build(&b));
        let (Degree::Homogeneous { degree: dp }, Degree::Homogeneous { degree: dq }) = (degree(&p, &d), degree(&q, &d)) else {
            return Ok(());
        };
        prop_assert_eq!(degree(&(&p * &q), &d), Degree::Homogeneous { degree: dp + dq });
    }

    #[test]
    fn laurent_documents_round_trip((b, seq) in matrix_and_sequence(3, 2, 4)) {
        let mut seed = Seed::initial(&b);
        for &k in &seq {
            seed = seed.mutate(k).unwrap();
        }
        for v in &seed.cluster {
            let text = serde_json::to_string(v).unwrap();
            prop_assert_eq!(&serde_json::from_str::<LaurentPoly>(&text).unwrap(), v);
        }
    }
}
