//! Tensor words, finite formal sums over them, and the deconcatenation
//! coalgebra structure of the tensor space.

use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;
use thiserror::Error;

use crate::parse::{self, ParseError};
use crate::scalar::{format_coefficient, Scalar};

/// A basis index in `1..=N`.
pub type Letter = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("element has a nonzero constant term {0}")]
    NonzeroConstantTerm(Scalar),
    #[error("letter {letter} out of range for dimension {dim}")]
    LetterOutOfRange { letter: Letter, dim: usize },
    #[error("expected words of length {expected}, found length {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A basis tensor `e_{i1} ⊗ ... ⊗ e_{im}`; the empty word is the unit `1`.
///
/// The `Ord` impl is the graded order used throughout the crate: shorter
/// words first, then lexicographic. Use [`Word::lex_cmp`] for the plain
/// lexicographic order with the prefix convention.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(SmallVec::from_slice(&[l]))
    }

    pub fn new(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word::new(&self.0[..k]), Word::new(&self.0[k..]))
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word::new(&self.0[range])
    }

    /// Lexicographic order in which a proper prefix is smaller.
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.0.as_slice().cmp(other.0.as_slice())
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    /// All words of length `n` over `1..=dim`, in lexicographic order.
    pub fn all_of_length(dim: usize, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| {
                    (1..=dim as Letter).map(move |l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    /// `e1.e2`; the unit word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "e{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite formal sum `Σ c_k · k` with no stored zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn basis(k: K) -> Self {
        Self::single(k, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    /// Largest key with its coefficient.
    pub fn leading(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in other.iter() {
            let v = if c.is_one() { x.clone() } else { x * c };
            self.add_term(k.clone(), v);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&Scalar::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<J, F>(&self, mut f: F) -> LinComb<J>
    where
        J: Ord + Clone,
        F: FnMut(&K) -> LinComb<J>,
    {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn map_coefficients<F: FnMut(&Scalar) -> Scalar>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), f(c));
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Bilinear concatenation of word combinations.
pub fn concat_words(x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_term(a.concat(b), ca * cb);
        }
    }
    out
}

pub(crate) fn format_word_sum(terms: &LinComb<Word>) -> String {
    if terms.len() == 1 {
        if let Some((w, c)) = terms.iter().next() {
            if w.is_empty() {
                return c.to_string();
            }
        }
    }
    format_keyed_sum(terms, |w| if w.is_empty() { None } else { Some(w.to_string()) })
}

/// Joins `c * body(k)` terms with ` + ` / ` - `; a `None` body marks a bare
/// scalar term.
pub(crate) fn format_keyed_sum<K: Ord + Clone>(
    terms: &LinComb<K>,
    body: impl Fn(&K) -> Option<String>,
) -> String {
    if terms.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let text = match body(k) {
            Some(b) => format_coefficient(c, &b),
            None if c.is_single_term() => c.to_string(),
            None => format!("({c})"),
        };
        if i == 0 {
            out.push_str(&text);
        } else if let Some(rest) = text.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&text);
        }
    }
    out
}

/// A vector of the tensor space `T(V)` with `dim V = N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    dim: usize,
    terms: LinComb<Word>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: LinComb::zero() }
    }

    /// The unit word `1`.
    pub fn unit(dim: usize) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    pub fn scalar(dim: usize, c: Scalar) -> Self {
        Self {
            dim,
            terms: LinComb::single(Word::empty(), c),
        }
    }

    /// Basis word; panics when a letter is outside `1..=dim`.
    pub fn word(dim: usize, letters: &[Letter]) -> Self {
        Self::try_word(dim, letters).expect("letter out of range")
    }

    pub fn try_word(dim: usize, letters: &[Letter]) -> Result<Self, TensorError> {
        check_letters(dim, letters)?;
        Ok(Self {
            dim,
            terms: LinComb::basis(Word::new(letters)),
        })
    }

    /// Wraps a combination, validating every letter against `dim`.
    pub fn from_terms(dim: usize, terms: LinComb<Word>) -> Result<Self, TensorError> {
        for w in terms.keys() {
            check_letters(dim, w.letters())?;
        }
        Ok(Self { dim, terms })
    }

    pub(crate) fn from_terms_unchecked(dim: usize, terms: LinComb<Word>) -> Self {
        Self { dim, terms }
    }

    /// Parses the element text grammar, e.g. `(1+q)*e1.e2 - q^-1*e2.e1`.
    pub fn parse(text: &str, dim: usize) -> Result<Self, TensorError> {
        let terms = parse::parse_element(text, dim)?;
        Ok(Self { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Word> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.coeff(w)
    }

    /// Largest word length present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Restriction to words of length `d`.
    pub fn component(&self, d: usize) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.len() == d)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        Self { dim: self.dim, terms }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        Self {
            dim: self.dim,
            terms: self.terms.scaled(c),
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element, TensorError> {
        same_dim(self.dim, other.dim)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(Self { dim: self.dim, terms })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element, TensorError> {
        same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            terms: self.terms.sub(&other.terms),
        })
    }

    /// `ε`: the coefficient of the empty word.
    pub fn counit(&self) -> Scalar {
        self.terms.coeff(&Word::empty())
    }

    /// Concatenation product of `T(V)`.
    pub fn concatenate(&self, other: &Element) -> Result<Element, TensorError> {
        same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            terms: concat_words(&self.terms, &other.terms),
        })
    }

    /// Deconcatenation `δ`.
    pub fn deconcatenate(&self) -> PairElement {
        let terms = self.terms.map_linear(|w| {
            (0..=w.len())
                .map(|i| (w.split_at(i), Scalar::one()))
                .collect()
        });
        PairElement { dim: self.dim, terms }
    }

    /// `Δ̄(x) = δ(x) - x⊗1 - 1⊗x`, defined on the kernel of the counit.
    pub fn reduced_coproduct(&self) -> Result<PairElement, TensorError> {
        let c = self.counit();
        if !c.is_zero() {
            return Err(TensorError::NonzeroConstantTerm(c));
        }
        Ok(PairElement {
            dim: self.dim,
            terms: self.terms.map_linear(reduced_coproduct_word),
        })
    }
}

pub(crate) fn reduced_coproduct_word(w: &Word) -> LinComb<(Word, Word)> {
    (1..w.len()).map(|i| (w.split_at(i), Scalar::one())).collect()
}


fn check_letters(dim: usize, letters: &[Letter]) -> Result<(), TensorError> {
    for &l in letters {
        if l == 0 || l as usize > dim {
            return Err(TensorError::LetterOutOfRange { letter: l, dim });
        }
    }
    Ok(())
}

fn same_dim(a: usize, b: usize) -> Result<(), TensorError> {
    if a == b {
        Ok(())
    } else {
        Err(TensorError::DimensionMismatch(a, b))
    }
}

/// Panics on dimension mismatch; see [`Element::checked_add`].
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            dim: self.dim,
            terms: self.terms.neg(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word_sum(&self.terms))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[N={}]({self})", self.dim)
    }
}

/// A vector of the outer tensor square `T(V) ⊗̲ T(V)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairElement {
    dim: usize,
    terms: LinComb<(Word, Word)>,
}

impl PairElement {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: LinComb::zero() }
    }

    pub fn basis(dim: usize, left: Word, right: Word) -> Self {
        Self {
            dim,
            terms: LinComb::basis((left, right)),
        }
    }

    pub fn from_terms(dim: usize, terms: LinComb<(Word, Word)>) -> Self {
        Self { dim, terms }
    }

    /// `x ⊗̲ y`.
    pub fn tensor(x: &Element, y: &Element) -> Result<Self, TensorError> {
        same_dim(x.dim, y.dim)?;
        let mut terms = LinComb::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                terms.add_term((a.clone(), b.clone()), ca * cb);
            }
        }
        Ok(Self { dim: x.dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &LinComb<(Word, Word)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> Scalar {
        self.terms.coeff(&(left.clone(), right.clone()))
    }
}

impl fmt::Display for PairElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_keyed_sum(&self.terms, |(a, b)| Some(format!("[{a} | {b}]"))))
    }
}

impl fmt::Debug for PairElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairElement[N={}]({self})", self.dim)
    }
}
