//! Lyndon words, standard factorization, and the basis of `⋈`-products of
//! Lyndon words for diagonal braidings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::braid::Braiding;
use crate::linalg::Matrix;
use crate::products::{quasi_shuffle_words, AlgebraSpec};
use crate::scalar::{Rational, Scalar};
use crate::tensor::{Element, LinComb, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LyndonError {
    #[error("the empty word has no Lyndon factorization")]
    EmptyWord,
    #[error("the braiding is not diagonal")]
    NotDiagonal,
    #[error("diagonal mismatch at {word}: predicted {predicted}, found {actual}")]
    PredictionMismatch {
        word: Word,
        predicted: Box<Scalar>,
        actual: Box<Scalar>,
    },
    #[error("row {word} is not triangular: {offending} has a nonzero entry")]
    NonTriangular { word: Word, offending: Word },
    #[error("no basis slice of degree {0}")]
    MissingSlice(usize),
    #[error("zero diagonal entry at {0}")]
    ZeroDiagonal(Word),
    #[error("specialization failed: {0}")]
    Specialization(String),
}

/// Whether `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &Word) -> Result<bool, LyndonError> {
    if w.is_empty() {
        return Err(LyndonError::EmptyWord);
    }
    Ok((1..w.len()).all(|k| w.lex_cmp(&w.slice(k..w.len())) == Ordering::Less))
}

/// A word written as a nonincreasing product of Lyndon words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonFactorization {
    factors: Vec<Word>,
}

impl LyndonFactorization {
    /// The factorization of the empty word (no factors).
    pub fn empty() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn word(&self) -> Word {
        self.factors.iter().fold(Word::empty(), |acc, f| acc.concat(f))
    }

    /// Distinct factors with their multiplicities, in order.
    pub fn grouped(&self) -> Vec<(&Word, usize)> {
        let mut out: Vec<(&Word, usize)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((g, n)) if *g == f => *n += 1,
                _ => out.push((f, 1)),
            }
        }
        out
    }
}

impl fmt::Display for LyndonFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for LyndonFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Duval's algorithm.
pub fn standard_factorization(w: &Word) -> Result<LyndonFactorization, LyndonError> {
    if w.is_empty() {
        return Err(LyndonError::EmptyWord);
    }
    let s = w.letters();
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            factors.push(Word::new(&s[i..i + j - k]));
            i += j - k;
        }
    }
    Ok(LyndonFactorization { factors })
}

/// `(n)_ν = 1 + ν + … + ν^{n-1}`.
pub fn q_integer(n: usize, nu: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    let mut p = Scalar::one();
    for _ in 0..n {
        acc += &p;
        p = &p * nu;
    }
    acc
}

/// `(n)_ν! = (n)_ν (n-1)_ν … (1)_ν`.
pub fn q_factorial(n: usize, nu: &Scalar) -> Scalar {
    (1..=n).map(|k| q_integer(k, nu)).product()
}

/// `Π_i (n_i)_{Q_i}!` where `n_i` is the multiplicity of the factor `p_i` and
/// `Q_i` multiplies `q_{kl}` over all ordered pairs of letters of `p_i`.
pub fn predicted_diagonal(f: &LyndonFactorization, s: &Braiding) -> Result<Scalar, LyndonError> {
    if !s.is_diagonal() {
        return Err(LyndonError::NotDiagonal);
    }
    let mut out = Scalar::one();
    for (p, n) in f.grouped() {
        let mut big_q = Scalar::one();
        for &k in p.letters() {
            for &l in p.letters() {
                big_q = &big_q * s.diagonal_coefficient(k, l).expect("diagonal");
            }
        }
        out = &out * &q_factorial(n, &big_q);
    }
    Ok(out)
}

/// `l₁ ⋈ … ⋈ l_r`, left to right.
pub fn lyndon_product(a: &AlgebraSpec, f: &LyndonFactorization) -> LinComb<Word> {
    let mut acc = LinComb::basis(Word::empty());
    for p in f.factors() {
        let mut next = LinComb::zero();
        for (w, c) in &acc {
            next.add_scaled(&quasi_shuffle_words(a, w, p), c);
        }
        acc = next;
    }
    acc
}

/// Degree-`n` part of the basis: one row per word of length `n`.
#[derive(Debug, Clone)]
pub struct BasisSlice {
    pub degree: usize,
    pub rows: Vec<(LyndonFactorization, LinComb<Word>)>,
    /// All words of length at most `degree`, increasing in (length, lex).
    pub columns: Vec<Word>,
    pub matrix: Matrix,
    pub predictions: Vec<Scalar>,
}

impl BasisSlice {
    pub fn diagonal(&self) -> Vec<Scalar> {
        self.rows.iter().map(|(f, p)| p.coeff(&f.word())).collect()
    }

    /// Checks triangularity and the predicted diagonal after `q ↦ q0`.
    pub fn verify_specialized(&self, q0: &Rational) -> Result<(), LyndonError> {
        let spec = |s: &Scalar| s.specialize(q0).map_err(|e| LyndonError::Specialization(e.to_string()));
        for (r, (f, _)) in self.rows.iter().enumerate() {
            let w = f.word();
            let col = self.columns.binary_search(&w).expect("every word is a column");
            for c in col + 1..self.columns.len() {
                if !spec(self.matrix.get(r, c))?.is_zero() {
                    return Err(LyndonError::NonTriangular {
                        word: w,
                        offending: self.columns[c].clone(),
                    });
                }
            }
            let actual = spec(self.matrix.get(r, col))?;
            let predicted = spec(&self.predictions[r])?;
            if actual != predicted || predicted.is_zero() {
                return Err(LyndonError::PredictionMismatch {
                    word: w,
                    predicted: Box::new(Scalar::from_rational(predicted)),
                    actual: Box::new(Scalar::from_rational(actual)),
                });
            }
        }
        Ok(())
    }
}

/// Builds and verifies the degree-`n` slice: the leading word of each row
/// must be the factored word itself, with the predicted coefficient.
pub fn build_basis_slice(a: &AlgebraSpec, n: usize) -> Result<BasisSlice, LyndonError> {
    let s = a.braiding();
    if !s.is_diagonal() {
        return Err(LyndonError::NotDiagonal);
    }
    let words = Word::all_of_length(a.dim(), n);
    let rows: Vec<(LyndonFactorization, LinComb<Word>, Scalar)> = words
        .par_iter()
        .map(|w| {
            let f = standard_factorization(w)?;
            let p = lyndon_product(a, &f);
            let predicted = predicted_diagonal(&f, s)?;
            Ok((f, p, predicted))
        })
        .collect::<Result<_, LyndonError>>()?;

    let columns: Vec<Word> = (0..=n).flat_map(|k| Word::all_of_length(a.dim(), k)).collect();
    let mut matrix = Matrix::zeros(rows.len(), columns.len());
    let mut predictions = Vec::with_capacity(rows.len());
    let mut out_rows = Vec::with_capacity(rows.len());
    for (r, (f, p, predicted)) in rows.into_iter().enumerate() {
        let w = f.word();
        if let Some((lead, _)) = p.leading() {
            if *lead > w {
                return Err(LyndonError::NonTriangular {
                    word: w,
                    offending: lead.clone(),
                });
            }
        }
        let actual = p.coeff(&w);
        if actual != predicted {
            return Err(LyndonError::PredictionMismatch {
                word: w,
                predicted: Box::new(predicted),
                actual: Box::new(actual),
            });
        }
        if predicted.is_zero() {
            return Err(LyndonError::ZeroDiagonal(w));
        }
        for (v, c) in &p {
            let col = columns.binary_search(v).expect("product words have bounded length");
            matrix.set(r, col, c.clone());
        }
        predictions.push(predicted);
        out_rows.push((f, p));
    }
    Ok(BasisSlice {
        degree: n,
        rows: out_rows,
        columns,
        matrix,
        predictions,
    })
}

/// Slices for every degree `1..=n`; degree 0 is the empty product.
#[derive(Debug, Clone)]
pub struct SliceTower {
    slices: Vec<BasisSlice>,
    /// Row lookup: word ↦ (slice index, row index).
    index: BTreeMap<Word, (usize, usize)>,
}

impl SliceTower {
    pub fn build(a: &AlgebraSpec, n: usize) -> Result<Self, LyndonError> {
        let slices = (1..=n).map(|k| build_basis_slice(a, k)).collect::<Result<Vec<_>, _>>()?;
        let mut index = BTreeMap::new();
        for (si, slice) in slices.iter().enumerate() {
            for (ri, (f, _)) in slice.rows.iter().enumerate() {
                index.insert(f.word(), (si, ri));
            }
        }
        Ok(Self { slices, index })
    }

    pub fn max_degree(&self) -> usize {
        self.slices.len()
    }

    pub fn slices(&self) -> &[BasisSlice] {
        &self.slices
    }

    /// Coefficients of `x` in the Lyndon-`⋈` basis, by peeling off leading
    /// words.
    pub fn express_in_basis(&self, x: &Element) -> Result<LinComb<LyndonFactorization>, LyndonError> {
        let mut rem = x.terms().clone();
        let mut out = LinComb::zero();
        while let Some((w, c)) = rem.leading() {
            let (w, c) = (w.clone(), c.clone());
            if w.is_empty() {
                out.add_term(LyndonFactorization::empty(), c.clone());
                rem.add_term(w, -c);
                continue;
            }
            let &(si, ri) = self.index.get(&w).ok_or(LyndonError::MissingSlice(w.len()))?;
            let (f, row) = &self.slices[si].rows[ri];
            let diag = &self.slices[si].predictions[ri];
            let coeff = c.checked_div(diag).map_err(|_| LyndonError::ZeroDiagonal(w.clone()))?;
            rem.add_scaled(row, &-&coeff);
            out.add_term(f.clone(), coeff);
        }
        Ok(out)
    }

    /// `Σ c_f · (⋈-product of f)`.
    pub fn reconstruct(&self, dim: usize, coeffs: &LinComb<LyndonFactorization>) -> Result<Element, LyndonError> {
        let mut out = LinComb::zero();
        for (f, c) in coeffs {
            if f.factors().is_empty() {
                out.add_term(Word::empty(), c.clone());
                continue;
            }
            let w = f.word();
            let &(si, ri) = self.index.get(&w).ok_or(LyndonError::MissingSlice(w.len()))?;
            out.add_scaled(&self.slices[si].rows[ri].1, c);
        }
        Ok(Element::from_terms(dim, out).expect("letters in range"))
    }
}
