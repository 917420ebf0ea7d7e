//! Fixtures shared by the benchmarks.

use braidshuffle::exterior::ExteriorSpec;
use braidshuffle::{AlgebraSpec, Element, Scalar, Word};

pub fn exterior(n: usize) -> AlgebraSpec {
    ExteriorSpec::new(n).to_algebra_spec()
}

pub fn power_sum(n: usize) -> AlgebraSpec {
    AlgebraSpec::power_sum(n, 1, Scalar::from_int(2)).expect("valid data")
}

/// Sum of all words of length `len`, so products exercise every branch.
pub fn all_words(dim: usize, len: usize) -> Element {
    let mut x = Element::zero(dim);
    for w in Word::all_of_length(dim, len) {
        x = x.checked_add(&Element::word(dim, w.letters())).expect("same dimension");
    }
    x
}
