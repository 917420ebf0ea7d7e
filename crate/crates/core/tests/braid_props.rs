mod common;

use braidshuffle::braid::{apply_braid_lift, beta, enumerate_shuffles, naturality_check, ybe_check};
use braidshuffle::exterior::{base_braiding, ExteriorSpec};
use braidshuffle::linalg::Matrix;
use braidshuffle::products::{random_diagonal_braiding, words_up_to};
use braidshuffle::{Braiding, LinComb, PairElement, Permutation, Scalar, Word};
use common::{rng, sc, w};
use proptest::prelude::*;

type Triple = (Word, Word, Word);

fn braidings() -> Vec<(&'static str, Braiding)> {
    vec![
        ("dense base", base_braiding(2)),
        ("exterior qflip", ExteriorSpec::new(2).qflip_braiding()),
        ("diagonal", Braiding::diagonal(vec![vec![1, -1], vec![2, 0]]).unwrap().certified().unwrap()),
    ]
}

fn beta_first(s: &Braiding, x: &LinComb<Triple>) -> LinComb<Triple> {
    x.map_linear(|(a, b, c)| s.beta_words(a, b).map_linear(|(b2, a2)| LinComb::basis((b2.clone(), a2.clone(), c.clone()))))
}

fn beta_second(s: &Braiding, x: &LinComb<Triple>) -> LinComb<Triple> {
    x.map_linear(|(a, b, c)| s.beta_words(b, c).map_linear(|(c2, b2)| LinComb::basis((a.clone(), c2.clone(), b2.clone()))))
}

#[test]
fn braid_lift_is_independent_of_reduced_expression() {
    let s = base_braiding(2);
    for p in Permutation::all(4) {
        let words = p.all_reduced_words();
        assert!(words.iter().all(|r| r.len() == p.inversions()));
        for input in Word::all_of_length(2, 4) {
            let x = LinComb::basis(input.clone());
            let first = s.apply_crossings(&x, &words[0]);
            for r in &words[1..] {
                assert_eq!(s.apply_crossings(&x, r), first, "{p} via {r:?} on {input}");
            }
            let lifted = apply_braid_lift(&s, &p, &common::word_el(2, &input)).unwrap();
            assert_eq!(lifted.terms(), &first);
        }
    }
}

#[test]
fn block_braiding_hexagons() {
    for (name, s) in braidings() {
        let dim = s.dim();
        for z in words_up_to(dim, 2) {
            for xy in words_up_to(dim, 3) {
                if xy.len() + z.len() > 5 {
                    continue;
                }
                for k in 0..=xy.len() {
                    let (x, y) = xy.split_at(k);
                    // β(xy ⊗ z) = (β ⊗ id)(id ⊗ β)
                    let mut rhs = LinComb::zero();
                    for ((z1, y1), c1) in s.beta_words(&y, &z).iter() {
                        for ((z2, x1), c2) in s.beta_words(&x, z1).iter() {
                            rhs.add_term((z2.clone(), x1.concat(y1)), c1 * c2);
                        }
                    }
                    assert_eq!(s.beta_words(&xy, &z), rhs, "{name}: ({x}.{y}) ⊗ {z}");

                    // β(z ⊗ xy) = (id ⊗ β)(β ⊗ id)
                    let mut rhs = LinComb::zero();
                    for ((x1, z1), c1) in s.beta_words(&z, &x).iter() {
                        for ((y1, z2), c2) in s.beta_words(z1, &y).iter() {
                            rhs.add_term((x1.concat(y1), z2.clone()), c1 * c2);
                        }
                    }
                    assert_eq!(s.beta_words(&z, &xy), rhs, "{name}: {z} ⊗ ({x}.{y})");
                }
            }
        }
    }
}

#[test]
fn block_braiding_satisfies_braid_relation() {
    for (name, s) in braidings() {
        let dim = s.dim();
        let words = words_up_to(dim, 3);
        for a in &words {
            for b in &words {
                for c in &words {
                    if a.len() + b.len() + c.len() > 5 {
                        continue;
                    }
                    let x = LinComb::basis((a.clone(), b.clone(), c.clone()));
                    let lhs = beta_first(&s, &beta_second(&s, &beta_first(&s, &x)));
                    let rhs = beta_second(&s, &beta_first(&s, &beta_second(&s, &x)));
                    assert_eq!(lhs, rhs, "{name}: {a} ⊗ {b} ⊗ {c}");
                }
            }
        }
    }
}

#[test]
fn involutive_braidings_give_involutive_blocks() {
    let cases = [
        ("flip", Braiding::flip(2)),
        ("exterior lt", ExteriorSpec::new(2).qflip_braiding()),
        ("exterior N=3", ExteriorSpec::new(3).qflip_braiding()),
    ];
    for (name, s) in cases {
        assert!(s.is_involutive(), "{name}");
        let words = words_up_to(s.dim(), 4);
        for x in &words {
            for y in &words {
                if x.len() + y.len() > 5 || (s.dim() > 3 && x.len() + y.len() > 4) {
                    continue;
                }
                let p = PairElement::basis(s.dim(), x.clone(), y.clone());
                assert_eq!(beta(&s, &beta(&s, &p)), p, "{name}: {x} ⊗ {y}");
            }
        }
    }
    // A non-involutive braiding does not square to the identity.
    let s = Braiding::diagonal(vec![vec![1]]).unwrap();
    assert!(!s.is_involutive());
    let p = PairElement::basis(1, w(&[1]), w(&[1, 1]));
    assert_ne!(beta(&s, &beta(&s, &p)), p);
}

#[test]
fn shuffles_are_counted_and_minimal() {
    for i in 0..=4 {
        for j in 0..=4 - i {
            let all = enumerate_shuffles(i, j);
            let binom = (1..=i).fold(1usize, |acc, k| acc * (j + k) / k);
            assert_eq!(all.len(), binom);
            assert!(all.iter().all(|p| p.is_shuffle(i)));
        }
    }
}

#[test]
fn naturality_under_scaling_map() {
    // Any invertible diagonal map intertwines a diagonal braiding with itself.
    let s = Braiding::diagonal(vec![vec![1, 2], vec![0, -1]]).unwrap().certified().unwrap();
    let f = Matrix::from_rows(vec![vec![sc("2"), Scalar::zero()], vec![Scalar::zero(), sc("q")]]);
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        assert!(naturality_check(&s, &s, &f, i, j).unwrap().is_pass());
    }
    // Swapping the basis does not intertwine it.
    let swap = Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::one(), Scalar::zero()]]);
    assert!(naturality_check(&s, &s, &swap, 1, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_diagonal_braidings_satisfy_ybe(seed in any::<u64>(), n in 1usize..=3) {
        let s = random_diagonal_braiding(&mut rng(seed), n, 3);
        prop_assert!(ybe_check(&s).is_pass());
    }
}
