mod common;

use braidshuffle::braid::shuffle_by_enumeration;
use braidshuffle::exterior::{wedge, ExteriorSpec};
use braidshuffle::products::{
    check_twisted_bialgebra, check_twisted_commutative, classical_quasi_shuffle, pairs_up_to, quantum_shuffle,
    quasi_shuffle, quasi_shuffle_oracle, quasi_shuffle_words, twisted_tensor_product, words_up_to,
};
use braidshuffle::{AlgebraSpec, Braiding, Element, Letter, Scalar, Word};
use common::{el, exterior2, random_element, random_power_sum, random_zero_specs, rng, sc, word_el, worked_examples};
use proptest::prelude::*;

#[test]
fn low_degree_products_match_their_expansions() {
    for a in [exterior2(), random_power_sum(7, 2)] {
        let n = a.dim() as Letter;
        for u in 1..=n {
            for v in 1..=n {
                for t in 1..=n {
                    for (x, y, expected) in worked_examples(&a, u, v, t) {
                        let (x, y) = (word_el(a.dim(), &x), word_el(a.dim(), &y));
                        assert_eq!(quasi_shuffle(&a, &x, &y).unwrap().terms(), &expected, "{x} ⋈ {y}");
                        assert_eq!(quasi_shuffle_oracle(&a, &x, &y).unwrap().terms(), &expected, "{x} ⋈ {y}");
                    }
                }
            }
        }
    }
}

#[test]
fn recursive_quantum_shuffle_equals_enumeration() {
    let mut specs = random_zero_specs(11, 2, 2);
    specs.push(AlgebraSpec::zero_product(exterior2().braiding().clone()).unwrap());
    for a in &specs {
        let s = a.braiding();
        for (x, y) in pairs_up_to(s.dim(), 5) {
            if s.dim() > 2 && x.len() + y.len() > 4 {
                continue;
            }
            let got = quantum_shuffle(s, &word_el(s.dim(), &x), &word_el(s.dim(), &y)).unwrap();
            assert_eq!(got.terms(), &shuffle_by_enumeration(s, &x, &y), "{x} sh {y}");
            assert_eq!(*quasi_shuffle_words(a, &x, &y), shuffle_by_enumeration(s, &x, &y));
        }
    }
}

#[test]
fn top_degree_component_is_the_quantum_shuffle() {
    for a in [exterior2(), random_power_sum(3, 2), random_power_sum(4, 3)] {
        let s = a.braiding();
        for (x, y) in pairs_up_to(a.dim(), 4) {
            let full = quasi_shuffle(&a, &word_el(a.dim(), &x), &word_el(a.dim(), &y)).unwrap();
            let top = full.component(x.len() + y.len());
            assert_eq!(top.terms(), &shuffle_by_enumeration(s, &x, &y));
            // each use of m shortens a word by one letter
            let low = x.len().max(y.len());
            assert!(full.terms().keys().all(|k| (low..=x.len() + y.len()).contains(&k.len())));
        }
    }
}

#[test]
fn flip_power_sum_recovers_classical_quasi_shuffle() {
    let n = 4;
    let m = |i: Letter, j: Letter| {
        if (i + j) as usize <= n {
            vec![(i + j, Scalar::one())]
        } else {
            Vec::new()
        }
    };
    let a = AlgebraSpec::from_product_fn(Braiding::flip(n), None, m).unwrap();
    assert!(a.is_yb());
    for (x, y) in pairs_up_to(n, 4) {
        let (x, y) = (word_el(n, &x), word_el(n, &y));
        assert_eq!(quasi_shuffle(&a, &x, &y).unwrap(), classical_quasi_shuffle(&x, &y, m).unwrap(), "{x} ⋈ {y}");
    }
    let z1 = el("e1", n);
    assert_eq!(quasi_shuffle(&a, &z1, &z1).unwrap(), el("e2 + 2*e1.e1", n));
}

#[test]
fn twisted_square_on_the_exterior_algebra() {
    let spec = ExteriorSpec::new(2);
    let a = spec.to_algebra_spec();
    let e12 = spec.index_of(&[1, 2]).unwrap();
    // σ(e1⊗e2) = c e2⊗e1, then e1∧e2 twice
    let (c, _, _) = spec.qflip(&[1], &[2]);
    let (sign, _) = wedge(&[1], &[2]).unwrap();
    let expected = Element::word(3, &[e12, e12]).scaled(&(&c * &(&sign * &sign)));
    let got = twisted_tensor_product(&a, 2, &el("e1.e1", 3), &el("e2.e2", 3)).unwrap();
    assert_eq!(got, expected);
    assert_eq!(got, el("-q*e3.e3", 3));

    // associativity on all basis triples of A ⊗ A
    let words = Word::all_of_length(3, 2);
    for x in &words {
        for y in &words {
            let xy = twisted_tensor_product(&a, 2, &word_el(3, x), &word_el(3, y)).unwrap();
            for z in &words {
                let lhs = twisted_tensor_product(&a, 2, &xy, &word_el(3, z)).unwrap();
                let yz = twisted_tensor_product(&a, 2, &word_el(3, y), &word_el(3, z)).unwrap();
                let rhs = twisted_tensor_product(&a, 2, &word_el(3, x), &yz).unwrap();
                assert_eq!(lhs, rhs, "{x} {y} {z}");
            }
        }
    }

    // with the unit adjoined, 1⊗1 is a two-sided unit
    let spec = ExteriorSpec::new(2).unital(true);
    let a = spec.to_algebra_spec();
    let one = spec.index_of(&[]).unwrap();
    let unit = Element::word(4, &[one, one]);
    for x in Word::all_of_length(4, 2) {
        let x = word_el(4, &x);
        assert_eq!(twisted_tensor_product(&a, 2, &unit, &x).unwrap(), x);
        assert_eq!(twisted_tensor_product(&a, 2, &x, &unit).unwrap(), x);
    }
}

#[test]
fn twisted_commutativity_examples() {
    let r = check_twisted_commutative(&exterior2(), 4);
    assert!(r.m_sigma_eq_m && r.sigma_squared_id && r.join_commutes && r.consistent_with_theorem15);

    let d = Braiding::diagonal(vec![vec![1, 0], vec![0, 0]]).unwrap();
    let r = check_twisted_commutative(&AlgebraSpec::zero_product(d).unwrap(), 2);
    assert!(!r.sigma_squared_id && !r.join_commutes && r.consistent_with_theorem15);
    assert!(r.witness.is_some());

    let flip = AlgebraSpec::from_product_fn(Braiding::flip(3), None, |i, j| {
        if i + j <= 3 {
            vec![(i + j, sc("2"))]
        } else {
            Vec::new()
        }
    })
    .unwrap();
    let r = check_twisted_commutative(&flip, 3);
    assert!(r.m_sigma_eq_m && r.sigma_squared_id && r.join_commutes && r.consistent_with_theorem15);
}

#[test]
fn zero_product_bialgebra_passes() {
    for a in random_zero_specs(5, 2, 2) {
        assert!(check_twisted_bialgebra(&a, 3).passed());
    }
    assert!(check_twisted_bialgebra(&exterior2(), 3).passed());
}

#[test]
fn engine_agrees_with_oracle_on_mixed_elements() {
    let a = random_power_sum(19, 3);
    for x in words_up_to(3, 2) {
        for y in words_up_to(3, 2) {
            let (x, y) = (word_el(3, &x), word_el(3, &y));
            assert_eq!(quasi_shuffle(&a, &x, &y).unwrap(), quasi_shuffle_oracle(&a, &x, &y).unwrap());
        }
    }
    assert!(quasi_shuffle(&a, &el("e1", 3), &el("e1", 2)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unit_and_bilinearity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = braidshuffle::products::random_power_sum_spec(&mut r, 2);
        let x = random_element(&mut r, 2, 3, 3);
        let y = random_element(&mut r, 2, 3, 3);
        let z = random_element(&mut r, 2, 2, 2);
        let one = Element::unit(2);
        prop_assert_eq!(quasi_shuffle(&a, &one, &x).unwrap(), x.clone());
        prop_assert_eq!(quasi_shuffle(&a, &x, &one).unwrap(), x.clone());
        let lhs = quasi_shuffle(&a, &x.checked_add(&y).unwrap(), &z).unwrap();
        let rhs = quasi_shuffle(&a, &x, &z).unwrap().checked_add(&quasi_shuffle(&a, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quasi_shuffle_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = braidshuffle::products::random_power_sum_spec(&mut r, 2);
        let x = random_element(&mut r, 2, 2, 2);
        let y = random_element(&mut r, 2, 2, 2);
        let z = random_element(&mut r, 2, 2, 2);
        let lhs = quasi_shuffle(&a, &quasi_shuffle(&a, &x, &y).unwrap(), &z).unwrap();
        let rhs = quasi_shuffle(&a, &x, &quasi_shuffle(&a, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn engine_equals_oracle_up_to_degree_four() {
    let mut specs = vec![exterior2(), random_power_sum(29, 2)];
    specs.extend(random_zero_specs(31, 3, 2));
    for a in &specs {
        for (x, y) in pairs_up_to(a.dim(), 4) {
            let (x, y) = (word_el(a.dim(), &x), word_el(a.dim(), &y));
            assert_eq!(quasi_shuffle(a, &x, &y).unwrap(), quasi_shuffle_oracle(a, &x, &y).unwrap(), "{x} ⋈ {y}");
        }
    }
}

#[test]
fn idempotent_letter_products_need_trivial_braiding_on_their_support() {
    // m(e_i e_i) = λ_i e_i; compatibility forces q_ic = q_ci = 1 when λ_i ≠ 0
    let lambda = |i: Letter, j: Letter| if i == j && i == 1 { vec![(1, sc("3"))] } else { Vec::new() };
    let only_diagonal = Braiding::diagonal(vec![vec![0, 1], vec![-1, 0]]).unwrap();
    assert!(!AlgebraSpec::from_product_fn(only_diagonal, None, lambda).unwrap().is_yb());
    let trivial_row = Braiding::diagonal(vec![vec![0, 0], vec![0, 2]]).unwrap();
    let a = AlgebraSpec::from_product_fn(trivial_row, None, lambda).unwrap();
    assert!(a.is_yb());
    assert!(check_twisted_bialgebra(&a, 4).passed());
}
