mod common;

use common::{eval_poly, numeric_cluster, oracle_adjacent_member, random_positive_rational};
use num_rational::BigRational;
use quiverlab_core::cluster::{depth1_upper_report, is_totally_coprime_over_class};
use quiverlab_core::{
    cluster_variable, data, degree, depth1_upper_membership, grading_check, is_coprime_matrix,
    parse_laurent, ClassCaps, Degree, ExchangeMatrix, GradingVector, IceQuiver, LaurentPoly,
    MutationSequence, Seed,
};

const Z: &str = "(y2*y3*x2^2 + x3^2 + y2*x1)/(x1*x2)";

fn a2() -> ExchangeMatrix {
    data::a2()
}

fn seq(s: &str) -> MutationSequence {
    s.parse().unwrap()
}

fn poly(text: &str, n: usize) -> LaurentPoly {
    parse_laurent(text, n, n).unwrap()
}

#[test]
fn a2_variables() {
    assert_eq!(cluster_variable(&a2(), &seq("1")).unwrap(), poly("(y1*x2 + 1)/x1", 2));
    assert_eq!(
        cluster_variable(&a2(), &seq("1,2")).unwrap(),
        poly("(y1*y2*x2 + y2 + x1)/(x1*x2)", 2)
    );
    assert_eq!(cluster_variable(&a2(), &MutationSequence::empty()).unwrap(), LaurentPoly::x(2, 2, 1));
}

#[test]
fn seed_mutation_is_an_involution() {
    let s = Seed::initial(&a2());
    assert_eq!(s.mutate(0).unwrap().mutate(0).unwrap(), s);
    let s = Seed::initial(&data::markov()).mutate(1).unwrap();
    assert_eq!(s.mutate(2).unwrap().mutate(2).unwrap(), s);
}

#[test]
fn triangle_variable_matches_rational_replay() {
    let tri = ExchangeMatrix::from_arrows(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
    let steps = [0, 1, 2, 0, 1, 2];
    let p = cluster_variable(&tri, &MutationSequence(steps.to_vec())).unwrap();
    assert!(p.all_coefficients_positive());
    let mut rng = rand::rng();
    for _ in 0..5 {
        let x: Vec<BigRational> = (0..3).map(|_| random_positive_rational(&mut rng)).collect();
        let y: Vec<BigRational> = (0..3).map(|_| random_positive_rational(&mut rng)).collect();
        let want = numeric_cluster(&tri, &steps, &x, &y);
        assert_eq!(eval_poly(&p, &x, &y), want[2]);
    }
}

#[test]
fn coprimality() {
    assert!(is_coprime_matrix(&IceQuiver::from_principal(data::x7_b1())));
    assert!(is_coprime_matrix(&IceQuiver::from_principal(data::x7_b2())));
    let twins = ExchangeMatrix::from_arrows(3, [(0, 1, 1), (0, 2, 1)]).unwrap();
    assert!(!is_coprime_matrix(&IceQuiver::from_principal(twins.clone())));
    assert!(is_coprime_matrix(&IceQuiver::frame(&twins)));
    let c = is_totally_coprime_over_class(&data::x7_b1(), ClassCaps::default()).unwrap();
    assert!(c.coprime && c.exhaustive);
    assert_eq!(c.checked, 2);
}

#[test]
fn depth1_trivial_cases() {
    assert!(depth1_upper_membership(&LaurentPoly::x(2, 2, 0), &a2()));
    assert!(!depth1_upper_membership(&poly("1/x1", 2), &a2()));
    assert!(!oracle_adjacent_member(&poly("1/x1", 2), &a2(), 0, 3));
}

#[test]
fn depth1_agrees_with_substitution_oracle() {
    let b = data::x7_b1();
    let z = poly(Z, 7);
    let report = depth1_upper_report(&z, &b);
    for k in 0..7 {
        let engine = !report.failures.iter().any(|f| f.direction == k);
        assert_eq!(engine, oracle_adjacent_member(&z, &b, k, 4), "direction {}", k + 1);
    }
    for text in ["(y1*x2 + 1)/x1", "x1^2/x2", "(x1 + y2)/x2^2", "(y1*x2 + 1)^2/x1^2", "(y1*x2 + 1)/x1^2"] {
        let p = poly(text, 2);
        let report = depth1_upper_report(&p, &a2());
        for k in 0..2 {
            let engine = !report.failures.iter().any(|f| f.direction == k);
            assert_eq!(engine, oracle_adjacent_member(&p, &a2(), k, 4), "{text} direction {}", k + 1);
        }
    }
}

#[test]
fn gradings() {
    let d = GradingVector(vec![2, 1, 1, 1, 1, 1, 1]);
    let b = data::x7_b1();
    assert!(grading_check(&b, &d));
    for k in 0..7 {
        assert_eq!((0..7).map(|i| b.get(i, k) * d.0[i]).sum::<i64>(), 0);
    }
    assert!(grading_check(&b, &GradingVector(vec![0; 7])));
    assert!(!grading_check(&a2(), &GradingVector(vec![1, 1])));
    let Degree::Homogeneous { degree: g } = degree(&poly(Z, 7), &d) else {
        panic!("Z is homogeneous")
    };
    assert!(g <= 0);
    assert_eq!(g, -1);
    assert_eq!(degree(&LaurentPoly::x(7, 7, 0), &d), Degree::Homogeneous { degree: 2 });
    assert_eq!(degree(&poly("x1 + x2", 7), &d), Degree::NotHomogeneous);
}

#[test]
fn laurent_json_round_trip() {
    let p = cluster_variable(&data::markov(), &seq("1,2,3,1")).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), p);
    assert_eq!(parse_laurent(&p.to_string(), 3, 3).unwrap(), p);
}
