#![allow(dead_code)]

use braidshuffle::braid::shuffle_by_enumeration;
use braidshuffle::exterior::ExteriorSpec;
use braidshuffle::products::{random_diagonal_braiding, random_power_sum_spec};
use braidshuffle::{AlgebraSpec, Element, Letter, LinComb, Scalar, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(letters: &[Letter]) -> Word {
    Word::new(letters)
}

pub fn el(text: &str, dim: usize) -> Element {
    Element::parse(text, dim).unwrap()
}

pub fn sc(text: &str) -> Scalar {
    text.parse().unwrap()
}

pub fn word_el(dim: usize, word: &Word) -> Element {
    Element::word(dim, word.letters())
}

pub fn exterior2() -> AlgebraSpec {
    ExteriorSpec::new(2).to_algebra_spec()
}

/// `count` specs with `m = 0` over random diagonal braidings on `V`, `dim V = n`.
pub fn random_zero_specs(seed: u64, count: usize, n: usize) -> Vec<AlgebraSpec> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| AlgebraSpec::zero_product(random_diagonal_braiding(&mut r, n, 3)).unwrap())
        .collect()
}

pub fn random_power_sum(seed: u64, n: usize) -> AlgebraSpec {
    random_power_sum_spec(&mut rng(seed), n)
}

/// A random element with words of length at most `max_len`.
pub fn random_element<R: rand::Rng>(r: &mut R, dim: usize, max_len: usize, terms: usize) -> Element {
    let mut out = LinComb::zero();
    for _ in 0..terms {
        let len = r.gen_range(0..=max_len);
        let letters: Vec<Letter> = (0..len).map(|_| r.gen_range(1..=dim as Letter)).collect();
        let c = Scalar::from_ratio(r.gen_range(-4..=4), r.gen_range(1..=3)).unwrap();
        let c = &c * &Scalar::q_pow(r.gen_range(-2..=2));
        out.add_term(Word::new(&letters), c);
    }
    Element::from_terms(dim, out).unwrap()
}

/// The three low-degree products written out in `m`, `σ` and `sh`, for letters
/// `u, v, w`: `u⋈v`, `(u.v)⋈w` and `u⋈(v.w)`.
pub fn worked_examples(a: &AlgebraSpec, u: Letter, v: Letter, t: Letter) -> [(Word, Word, LinComb<Word>); 3] {
    let s = a.braiding();
    let uv = LinComb::basis(w(&[u, v]));
    let uvt = LinComb::basis(w(&[u, v, t]));

    let mut first = a.contract_at(&uv, 1);
    first.add_assign(&uv);
    first.add_assign(&s.apply_crossing(&uv, 1));

    let mut second = a.contract_at(&uvt, 2);
    second.add_assign(&a.contract_at(&s.apply_crossing(&uvt, 2), 1));
    second.add_assign(&shuffle_by_enumeration(s, &w(&[u, v]), &w(&[t])));

    let mut third = a.contract_at(&uvt, 1);
    third.add_assign(&a.contract_at(&s.apply_crossing(&uvt, 1), 2));
    third.add_assign(&shuffle_by_enumeration(s, &w(&[u]), &w(&[v, t])));

    [
        (w(&[u]), w(&[v]), first),
        (w(&[u, v]), w(&[t]), second),
        (w(&[u]), w(&[v, t]), third),
    ]
}
