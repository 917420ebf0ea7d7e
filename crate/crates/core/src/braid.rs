//! Braidings on `V`, the quantum Yang-Baxter equation, braid-group lifts of
//! permutations and the block braiding `β` on `T(V) ⊗̲ T(V)`.
//!
//! Permutations act on positions: `T_w` sends the letter in position `k` to
//! position `w(k)`, picking up braiding coefficients on the way. A reduced
//! word is reported in *application order*: `[2, 1]` means apply `σ_2`, then
//! `σ_1`, i.e. the operator `σ_1 σ_2`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::report::{Counterexample, Verdict};
use crate::scalar::Scalar;
use crate::tensor::{Element, Letter, LinComb, PairElement, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braiding data has the wrong shape: {0}")]
    Shape(String),
    #[error("braiding matrix is singular")]
    Singular,
    #[error("the base of a diagonal braiding must be nonzero")]
    ZeroBase,
    #[error("braiding fails the Yang-Baxter equation: {0}")]
    YbeViolation(Box<YbeViolation>),
    #[error("map is not a morphism of braided vector spaces: {0}")]
    NotAMorphism(Box<Counterexample>),
    #[error("expected words of length {expected}, found length {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub enum BraidingKind {
    /// `σ(e_i ⊗ e_j) = base^{exponents[i][j]} e_j ⊗ e_i`; `base` is `q` unless
    /// stated otherwise.
    Diagonal { base: Scalar, exponents: Vec<Vec<i64>> },
    /// `N² × N²` matrix on the lexicographic basis `e_i ⊗ e_j`; column
    /// `(i-1)N + (j-1)` holds the image of `e_i ⊗ e_j`.
    Dense { matrix: Matrix },
}

type Crossing = Vec<(Letter, Letter, Scalar)>;

/// An invertible operator on `V ⊗ V`.
#[derive(Clone)]
pub struct Braiding {
    dim: usize,
    kind: BraidingKind,
    /// Image of `e_a ⊗ e_b` at index `(a-1)N + (b-1)`.
    action: Vec<Crossing>,
    certified: bool,
}

impl Braiding {
    /// Diagonal braiding with `q_{ij} = q^{exponents[i][j]}`.
    pub fn diagonal(exponents: Vec<Vec<i64>>) -> Result<Self, BraidError> {
        Self::diagonal_with_base(Scalar::q(), exponents)
    }

    /// Diagonal braiding with `q_{ij} = base^{exponents[i][j]}`.
    pub fn diagonal_with_base(base: Scalar, exponents: Vec<Vec<i64>>) -> Result<Self, BraidError> {
        if base.is_zero() {
            return Err(BraidError::ZeroBase);
        }
        let n = exponents.len();
        if n == 0 || exponents.iter().any(|row| row.len() != n) {
            return Err(BraidError::Shape("exponent matrix must be square and nonempty".into()));
        }
        let mut action = Vec::with_capacity(n * n);
        for (a, row) in exponents.iter().enumerate() {
            for (b, &e) in row.iter().enumerate() {
                let c = base.pow(e).expect("nonzero base");
                action.push(vec![((b + 1) as Letter, (a + 1) as Letter, c)]);
            }
        }
        Ok(Self {
            dim: n,
            kind: BraidingKind::Diagonal { base, exponents },
            action,
            certified: false,
        })
    }

    /// Dense braiding from its `N² × N²` matrix; rejects singular matrices.
    pub fn dense(dim: usize, matrix: Matrix) -> Result<Self, BraidError> {
        let n2 = dim * dim;
        if dim == 0 || matrix.rows() != n2 || matrix.cols() != n2 {
            return Err(BraidError::Shape(format!(
                "expected a {n2}x{n2} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.determinant().is_zero() {
            return Err(BraidError::Singular);
        }
        let mut action = Vec::with_capacity(n2);
        for col in 0..n2 {
            let mut images = Vec::new();
            for row in 0..n2 {
                let c = matrix.get(row, col);
                if !c.is_zero() {
                    images.push(((row / dim + 1) as Letter, (row % dim + 1) as Letter, c.clone()));
                }
            }
            action.push(images);
        }
        Ok(Self {
            dim,
            kind: BraidingKind::Dense { matrix },
            action,
            certified: false,
        })
    }

    /// The flip `τ(e_i ⊗ e_j) = e_j ⊗ e_i` as a dense permutation matrix.
    pub fn flip(dim: usize) -> Self {
        let n2 = dim * dim;
        let mut m = Matrix::zeros(n2, n2);
        for a in 0..dim {
            for b in 0..dim {
                m.set(b * dim + a, a * dim + b, Scalar::one());
            }
        }
        Self::dense(dim, m).expect("permutation matrices are invertible").certified().unwrap()
    }

    /// Runs [`ybe_check`] and marks the braiding certified on success.
    pub fn certified(mut self) -> Result<Self, BraidError> {
        match ybe_check(&self) {
            Verdict::Pass => {
                self.certified = true;
                Ok(self)
            }
            Verdict::Fail(v) => Err(BraidError::YbeViolation(Box::new(v))),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &BraidingKind {
        &self.kind
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.kind, BraidingKind::Diagonal { .. })
    }

    /// `q_{ab}` for a diagonal braiding.
    pub fn diagonal_coefficient(&self, a: Letter, b: Letter) -> Option<&Scalar> {
        match self.kind {
            BraidingKind::Diagonal { .. } => Some(&self.cross(a, b)[0].2),
            BraidingKind::Dense { .. } => None,
        }
    }

    /// Image of `e_a ⊗ e_b` as `(c, d, coefficient)` triples.
    pub fn cross(&self, a: Letter, b: Letter) -> &[(Letter, Letter, Scalar)] {
        &self.action[(a as usize - 1) * self.dim + (b as usize - 1)]
    }

    /// The full `N² × N²` matrix, for either storage kind.
    pub fn matrix(&self) -> Matrix {
        let n2 = self.dim * self.dim;
        let mut m = Matrix::zeros(n2, n2);
        for (col, images) in self.action.iter().enumerate() {
            for (c, d, x) in images {
                let row = (*c as usize - 1) * self.dim + (*d as usize - 1);
                m.set(row, col, x.clone());
            }
        }
        m
    }

    /// Whether `σ ∘ σ = id` on `V ⊗ V`.
    pub fn is_involutive(&self) -> bool {
        let m = self.matrix();
        &m * &m == Matrix::identity(self.dim * self.dim)
    }

    /// `σ_pos` (1-based, acting on letters `pos` and `pos + 1`) applied to a
    /// combination of words of length at least `pos + 1`.
    pub fn apply_crossing(&self, x: &LinComb<Word>, pos: usize) -> LinComb<Word> {
        let mut out = LinComb::zero();
        for (w, c) in x {
            let l = w.letters();
            for (a, b, coeff) in self.cross(l[pos - 1], l[pos]) {
                let mut t = l.to_vec();
                t[pos - 1] = *a;
                t[pos] = *b;
                let v = Word::new(&t);
                out.add_term(v, c * coeff);
            }
        }
        out
    }

    /// Applies crossings in the given (application) order.
    pub fn apply_crossings(&self, x: &LinComb<Word>, seq: &[usize]) -> LinComb<Word> {
        seq.iter().fold(x.clone(), |acc, &p| self.apply_crossing(&acc, p))
    }

    /// `β_{ij}` on a basis pair: `T_{χ_ij}` on the concatenation, re-split as
    /// (length `j`, length `i`). Pairs with an empty side are flipped.
    pub fn beta_words(&self, x: &Word, y: &Word) -> LinComb<(Word, Word)> {
        if x.is_empty() || y.is_empty() {
            return LinComb::basis((y.clone(), x.clone()));
        }
        if self.is_diagonal() {
            let mut c = Scalar::one();
            for &a in x.letters() {
                for &b in y.letters() {
                    c = &c * &self.cross(a, b)[0].2;
                }
            }
            return LinComb::single((y.clone(), x.clone()), c);
        }
        let (i, j) = (x.len(), y.len());
        let moved = self.apply_crossings(&LinComb::basis(x.concat(y)), &block_swap_crossings(i, j));
        moved.iter().map(|(w, c)| (w.split_at(j), c.clone())).collect()
    }

    fn check_dim(&self, dim: usize) -> Result<(), BraidError> {
        if dim == self.dim {
            Ok(())
        } else {
            Err(BraidError::DimensionMismatch(self.dim, dim))
        }
    }
}

impl fmt::Debug for Braiding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BraidingKind::Diagonal { base, exponents } => {
                write!(f, "Braiding::Diagonal(base={base}, exponents={exponents:?})")
            }
            BraidingKind::Dense { matrix } => write!(f, "Braiding::Dense({matrix:?})"),
        }
    }
}

/// Crossings realizing `T_{χ_ij}`: each letter of the left block, last one
/// first, is moved across the whole right block.
pub(crate) fn block_swap_crossings(i: usize, j: usize) -> Vec<usize> {
    let mut seq = Vec::with_capacity(i * j);
    for k in (0..i).rev() {
        seq.extend(k + 1..=k + j);
    }
    seq
}

/// A failing basis vector of `V^{⊗3}` for the Yang-Baxter equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeViolation {
    pub input: Word,
    pub lhs: Element,
    pub rhs: Element,
}

impl fmt::Display for YbeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "on {}: lhs = {}, rhs = {}", self.input, self.lhs, self.rhs)
    }
}

impl From<YbeViolation> for Counterexample {
    fn from(v: YbeViolation) -> Self {
        Counterexample {
            identity: "(σ⊗id)(id⊗σ)(σ⊗id) = (id⊗σ)(σ⊗id)(id⊗σ)".into(),
            input: v.input.to_string(),
            lhs: v.lhs.to_string(),
            rhs: v.rhs.to_string(),
        }
    }
}

/// Checks `σ_1 σ_2 σ_1 = σ_2 σ_1 σ_2` on every basis vector of `V^{⊗3}`,
/// returning the first violation in (length, lex) order.
pub fn ybe_check(s: &Braiding) -> Verdict<YbeViolation> {
    for w in Word::all_of_length(s.dim, 3) {
        let x = LinComb::basis(w.clone());
        let lhs = s.apply_crossings(&x, &[1, 2, 1]);
        let rhs = s.apply_crossings(&x, &[2, 1, 2]);
        if lhs != rhs {
            return Verdict::Fail(YbeViolation {
                input: w,
                lhs: Element::from_terms(s.dim, lhs).expect("letters in range"),
                rhs: Element::from_terms(s.dim, rhs).expect("letters in range"),
            });
        }
    }
    Verdict::Pass
}

/// A permutation of `1..=n`, stored by images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, BraidError> {
        let n = images.len();
        let set: BTreeSet<usize> = images.iter().copied().collect();
        if set.len() != n || images.iter().any(|&x| x == 0 || x > n) {
            return Err(BraidError::InvalidPermutation(n));
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The adjacent transposition `s_i = (i, i+1)` in `S_n`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(i - 1, i);
        Permutation(v)
    }

    /// `χ_ij`: the first `i` positions go to `j+1..=j+i`, the last `j` to `1..=j`.
    pub fn block_swap(i: usize, j: usize) -> Self {
        Permutation((1..=i).map(|k| j + k).chain(1..=j).collect())
    }

    /// `w_i ∈ S_{2i}`: `k ↦ 2k-1` and `i+k ↦ 2k`.
    pub fn interleave(i: usize) -> Self {
        Permutation((1..=i).map(|k| 2 * k - 1).chain((1..=i).map(|k| 2 * k)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `w(k)` for 1-based `k`.
    pub fn image(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (k, &wk) in self.0.iter().enumerate() {
            inv[wk - 1] = k + 1;
        }
        Permutation(inv)
    }

    pub fn inversions(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .flat_map(|a| (a + 1..v.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| v[a] > v[b])
            .count()
    }

    pub fn is_shuffle(&self, i: usize) -> bool {
        self.0[..i].windows(2).all(|p| p[0] < p[1]) && self.0[i..].windows(2).all(|p| p[0] < p[1])
    }

    /// Canonical reduced word by bubble sort, in application order.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.len();
        let mut arr: Vec<usize> = (1..=n).collect();
        let mut seq = Vec::new();
        loop {
            let mut swapped = false;
            for p in 0..n.saturating_sub(1) {
                if self.image(arr[p]) > self.image(arr[p + 1]) {
                    arr.swap(p, p + 1);
                    seq.push(p + 1);
                    swapped = true;
                }
            }
            if !swapped {
                return seq;
            }
        }
    }

    /// Every reduced word of `self`, in application order, found by
    /// breadth-first search over crossing sequences that remove one
    /// inversion per step.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = vec![((1..=n).collect(), Vec::new())];
        for _ in 0..self.inversions() {
            let mut next = Vec::new();
            for (arr, seq) in &frontier {
                for p in 0..n - 1 {
                    if self.image(arr[p]) > self.image(arr[p + 1]) {
                        let mut a = arr.clone();
                        a.swap(p, p + 1);
                        let mut s = seq.clone();
                        s.push(p + 1);
                        next.push((a, s));
                    }
                }
            }
            frontier = next;
        }
        frontier.into_iter().map(|(_, s)| s).collect()
    }

    /// Position permutation realized by a crossing sequence (application order).
    pub fn from_crossings(n: usize, seq: &[usize]) -> Self {
        // arr[p] = original position of the letter now at p
        let mut arr: Vec<usize> = (1..=n).collect();
        for &p in seq {
            arr.swap(p - 1, p);
        }
        let mut images = vec![0; n];
        for (p, &orig) in arr.iter().enumerate() {
            images[orig - 1] = p + 1;
        }
        Permutation(images)
    }

    /// All of `S_n` in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for x in 1..=n {
                if !used[x - 1] {
                    used[x - 1] = true;
                    prefix.push(x);
                    go(prefix, used, out);
                    prefix.pop();
                    used[x - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The canonical reduced word of `w`, in application order.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    w.reduced_word()
}

/// `T_w` applied to an element all of whose words have length `|w|`.
pub fn apply_braid_lift(s: &Braiding, w: &Permutation, x: &Element) -> Result<Element, BraidError> {
    s.check_dim(x.dim())?;
    for word in x.terms().keys() {
        if word.len() != w.len() {
            return Err(BraidError::LengthMismatch {
                expected: w.len(),
                found: word.len(),
            });
        }
    }
    let out = s.apply_crossings(x.terms(), &w.reduced_word());
    Ok(Element::from_terms(x.dim(), out).expect("letters in range"))
}

/// The block braiding `β` on `T(V) ⊗̲ T(V)`.
pub fn beta(s: &Braiding, x: &PairElement) -> PairElement {
    let terms = x.terms().map_linear(|(a, b)| s.beta_words(a, b));
    PairElement::from_terms(x.dim(), terms)
}

/// All `(i, j)`-shuffles, ordered by the positions taken by the first block.
pub fn enumerate_shuffles(i: usize, j: usize) -> Vec<Permutation> {
    let n = i + j;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(i);
    fn go(start: usize, n: usize, i: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == i {
            let rest = (1..=n).filter(|p| !chosen.contains(p));
            out.push(Permutation(chosen.iter().copied().chain(rest).collect()));
            return;
        }
        for p in start..=n {
            chosen.push(p);
            go(p + 1, n, i, chosen, out);
            chosen.pop();
        }
    }
    go(1, n, i, &mut chosen, &mut out);
    out
}

/// `Σ_{w ∈ S_{i,j}} T_w(x ⊗ y)` by explicit enumeration of shuffles.
pub fn shuffle_by_enumeration(s: &Braiding, x: &Word, y: &Word) -> LinComb<Word> {
    let xy = LinComb::basis(x.concat(y));
    let mut out = LinComb::zero();
    for w in enumerate_shuffles(x.len(), y.len()) {
        out.add_assign(&s.apply_crossings(&xy, &w.reduced_word()));
    }
    out
}

/// `f^{⊗n}` for a linear map `f: V1 → V2` given as a `dim V2 × dim V1` matrix.
pub fn apply_tensor_power(f: &Matrix, x: &LinComb<Word>) -> LinComb<Word> {
    x.map_linear(|w| {
        let mut acc = LinComb::basis(Word::empty());
        for &a in w.letters() {
            let col = a as usize - 1;
            let image: LinComb<Word> = (0..f.rows())
                .map(|r| (Word::letter((r + 1) as Letter), f.get(r, col).clone()))
                .collect();
            acc = crate::tensor::concat_words(&acc, &image);
        }
        acc
    })
}

/// Checks `T^{σ2}_{χ_ij} ∘ f^{⊗(i+j)} = f^{⊗(i+j)} ∘ T^{σ1}_{χ_ij}` on every
/// basis word, after verifying that `f` intertwines the two braidings.
pub fn naturality_check(
    s1: &Braiding,
    s2: &Braiding,
    f: &Matrix,
    i: usize,
    j: usize,
) -> Result<Verdict, BraidError> {
    if f.rows() != s2.dim() || f.cols() != s1.dim() {
        return Err(BraidError::Shape(format!(
            "map must be {}x{}, got {}x{}",
            s2.dim(),
            s1.dim(),
            f.rows(),
            f.cols()
        )));
    }
    for w in Word::all_of_length(s1.dim(), 2) {
        let x = LinComb::basis(w.clone());
        let lhs = s2.apply_crossing(&apply_tensor_power(f, &x), 1);
        let rhs = apply_tensor_power(f, &s1.apply_crossing(&x, 1));
        if lhs != rhs {
            return Err(BraidError::NotAMorphism(Box::new(Counterexample {
                identity: "σ2 (f⊗f) = (f⊗f) σ1".into(),
                input: w.to_string(),
                lhs: crate::tensor::format_word_sum(&lhs),
                rhs: crate::tensor::format_word_sum(&rhs),
            })));
        }
    }
    let seq = block_swap_crossings(i, j);
    for w in Word::all_of_length(s1.dim(), i + j) {
        let x = LinComb::basis(w.clone());
        let lhs = s2.apply_crossings(&apply_tensor_power(f, &x), &seq);
        let rhs = apply_tensor_power(f, &s1.apply_crossings(&x, &seq));
        if lhs != rhs {
            return Ok(Verdict::Fail(Counterexample {
                identity: format!("T_chi({i},{j}) naturality"),
                input: w.to_string(),
                lhs: crate::tensor::format_word_sum(&lhs),
                rhs: crate::tensor::format_word_sum(&rhs),
            }));
        }
    }
    Ok(Verdict::Pass)
}
