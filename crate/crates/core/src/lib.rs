//! Exact computations in quantum shuffle and quantum quasi-shuffle algebras
//! over braided vector spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: exact coefficients in the field of fractions of `Q[q, q^-1]`;
//! * [`tensor`]: words, formal sums and the deconcatenation coalgebra;
//! * [`braid`]: braidings, the Yang-Baxter check, braid lifts and the block
//!   braiding on the tensor space;
//! * [`products`]: Yang-Baxter algebra specs, the quantum shuffle and
//!   quasi-shuffle products and the identity checkers built on them;
//! * [`lyndon`]: Lyndon words and the quasi-shuffle basis of the tensor space;
//! * [`exterior`]: the quantum exterior algebra as a ready-made spec family;
//! * [`specfile`]: the JSON algebra spec format.

pub mod braid;
pub mod exterior;
pub mod linalg;
pub mod lyndon;
mod parse;
pub mod products;
pub mod report;
pub mod scalar;
pub mod specfile;
pub mod tensor;

pub use braid::{Braiding, BraidingKind, Permutation};
pub use parse::ParseError;
pub use products::AlgebraSpec;
pub use scalar::{LaurentPoly, Rational, Scalar};
pub use tensor::{Element, Letter, LinComb, PairElement, Word};
