//! Yang-Baxter algebras and the products built from them: quantum shuffle,
//! quantum quasi-shuffle (inductive engine and definitional oracle), twisted
//! tensor powers, and the identity suites for twisted bialgebras.

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{BraidError, Braiding, Permutation};
use crate::report::{Counterexample, SuiteResult};
use crate::scalar::Scalar;
use crate::tensor::{format_keyed_sum, format_word_sum, Element, Letter, LinComb, TensorError, Word};

pub type Pair = (Word, Word);
pub type Triple = (Word, Word, Word);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("product data has the wrong shape: {0}")]
    Shape(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("not a Yang-Baxter algebra: {0}")]
    NotYbAlgebra(Box<Counterexample>),
    #[error("operands of the twisted tensor power must be words of length {0}")]
    TensorPowerShape(usize),
}

type Memo = DashMap<Pair, Arc<LinComb<Word>>>;

/// `(V, m, σ)` with optional unit; `m(e_i ⊗ e_j) = Σ_k c[i][j][k] e_k`.
pub struct AlgebraSpec {
    dim: usize,
    braiding: Braiding,
    constants: Vec<Vec<Vec<Scalar>>>,
    /// `m(e_a ⊗ e_b)` as a combination of one-letter words, at `(a-1)N + (b-1)`.
    table: Vec<LinComb<Word>>,
    unit: Option<Vec<Scalar>>,
    yb_violations: Vec<Counterexample>,
    memo: Memo,
}

impl AlgebraSpec {
    /// Certifies the braiding if needed, then runs [`check_yb_algebra`] and
    /// records the outcome.
    pub fn new(
        braiding: Braiding,
        constants: Vec<Vec<Vec<Scalar>>>,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self, ProductError> {
        let dim = braiding.dim();
        let braiding = if braiding.is_certified() { braiding } else { braiding.certified()? };
        let shape_ok = constants.len() == dim
            && constants.iter().all(|r| r.len() == dim && r.iter().all(|c| c.len() == dim));
        if !shape_ok {
            return Err(ProductError::Shape(format!("expected {dim}x{dim}x{dim} structure constants")));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(ProductError::Shape(format!("unit must have {dim} entries")));
            }
        }
        let mut table = Vec::with_capacity(dim * dim);
        for row in &constants {
            for cell in row {
                table.push(
                    cell.iter()
                        .enumerate()
                        .map(|(k, c)| (Word::letter((k + 1) as Letter), c.clone()))
                        .collect(),
                );
            }
        }
        let mut spec = Self {
            dim,
            braiding,
            constants,
            table,
            unit,
            yb_violations: Vec::new(),
            memo: Memo::default(),
        };
        spec.yb_violations = check_yb_algebra(&spec);
        Ok(spec)
    }

    /// `m = 0`, no unit.
    pub fn zero_product(braiding: Braiding) -> Result<Self, ProductError> {
        let n = braiding.dim();
        Self::new(braiding, vec![vec![vec![Scalar::zero(); n]; n]; n], None)
    }

    /// Builds the constants from `m(e_a ⊗ e_b)` given as `(letter, coeff)` pairs.
    pub fn from_product_fn<F>(braiding: Braiding, unit: Option<Vec<Scalar>>, m: F) -> Result<Self, ProductError>
    where
        F: Fn(Letter, Letter) -> Vec<(Letter, Scalar)>,
    {
        let n = braiding.dim();
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for a in 1..=n {
            for b in 1..=n {
                for (k, x) in m(a as Letter, b as Letter) {
                    c[a - 1][b - 1][k as usize - 1] += &x;
                }
            }
        }
        Self::new(braiding, c, unit)
    }

    /// Truncated power-sum product `m(e_i ⊗ e_j) = c·e_{i+j}` (zero when
    /// `i + j > N`) over the diagonal braiding `q_{ij} = q^{s·i·j}`.
    pub fn power_sum(n: usize, s: i64, c: Scalar) -> Result<Self, ProductError> {
        let exps = (1..=n as i64).map(|i| (1..=n as i64).map(|j| s * i * j).collect()).collect();
        Self::from_product_fn(Braiding::diagonal(exps)?, None, |a, b| {
            let k = a as usize + b as usize;
            if k <= n {
                vec![(k as Letter, c.clone())]
            } else {
                Vec::new()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.constants
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    /// Whether [`check_yb_algebra`] passed at construction.
    pub fn is_yb(&self) -> bool {
        self.yb_violations.is_empty()
    }

    pub fn yb_violations(&self) -> &[Counterexample] {
        &self.yb_violations
    }

    pub fn has_zero_product(&self) -> bool {
        self.table.iter().all(LinComb::is_zero)
    }

    /// `m(e_a ⊗ e_b)` as one-letter words.
    pub fn product(&self, a: Letter, b: Letter) -> &LinComb<Word> {
        &self.table[(a as usize - 1) * self.dim + (b as usize - 1)]
    }

    pub fn m_family(&self) -> MFamily<'_> {
        MFamily { spec: self }
    }

    /// A copy with one structure constant replaced; the copy is re-checked.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Result<Self, ProductError> {
        let mut c = self.constants.clone();
        c[i - 1][j - 1][k - 1] = value;
        Self::new(self.braiding.clone(), c, self.unit.clone())
    }

    pub fn without_unit(&self) -> Self {
        Self::new(self.braiding.clone(), self.constants.clone(), None).expect("same data")
    }

    /// Contracts letters `pos`, `pos + 1` (1-based) with `m`.
    pub fn contract_at(&self, x: &LinComb<Word>, pos: usize) -> LinComb<Word> {
        x.map_linear(|w| {
            let l = w.letters();
            let head = Word::new(&l[..pos - 1]);
            let tail = Word::new(&l[pos + 1..]);
            self.product(l[pos - 1], l[pos])
                .iter()
                .map(|(k, c)| (head.concat(k).concat(&tail), c.clone()))
                .collect()
        })
    }

    fn engine(&self) -> Engine<'_> {
        Engine {
            braiding: &self.braiding,
            spec: (!self.has_zero_product()).then_some(self),
            memo: &self.memo,
        }
    }

    fn check_dim(&self, dim: usize) -> Result<(), ProductError> {
        if dim == self.dim {
            Ok(())
        } else {
            Err(ProductError::DimensionMismatch(self.dim, dim))
        }
    }
}

impl Clone for AlgebraSpec {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            braiding: self.braiding.clone(),
            constants: self.constants.clone(),
            table: self.table.clone(),
            unit: self.unit.clone(),
            yb_violations: self.yb_violations.clone(),
            memo: Memo::default(),
        }
    }
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("dim", &self.dim)
            .field("braiding", &self.braiding)
            .field("constants", &self.constants)
            .field("unit", &self.unit)
            .field("is_yb", &self.is_yb())
            .finish()
    }
}

/// The maps `M_{pq}: V^{⊗p} ⊗ V^{⊗q} → V`: identity for `(1,0)` and `(0,1)`,
/// `m` for `(1,1)`, zero otherwise.
#[derive(Clone, Copy)]
pub struct MFamily<'a> {
    spec: &'a AlgebraSpec,
}

impl MFamily<'_> {
    pub fn apply(&self, x: &Word, y: &Word) -> LinComb<Word> {
        match (x.len(), y.len()) {
            (1, 0) => LinComb::basis(x.clone()),
            (0, 1) => LinComb::basis(y.clone()),
            (1, 1) => self.spec.product(x.letters()[0], y.letters()[0]).clone(),
            _ => LinComb::zero(),
        }
    }
}

fn triple_string(t: &Triple) -> String {
    format!("[{} | {} | {}]", t.0, t.1, t.2)
}

fn pair_string(p: &Pair) -> String {
    format!("[{} | {}]", p.0, p.1)
}

fn cx(identity: &str, input: String, lhs: String, rhs: String) -> Counterexample {
    Counterexample {
        identity: identity.to_string(),
        input,
        lhs,
        rhs,
    }
}

/// Checks the axioms of a Yang-Baxter algebra on basis vectors and returns
/// every violated instance (empty on success).
pub fn check_yb_algebra(a: &AlgebraSpec) -> Vec<Counterexample> {
    let s = &a.braiding;
    let mut out = Vec::new();
    for w in Word::all_of_length(a.dim, 3) {
        let x = LinComb::basis(w.clone());
        let lhs = a.contract_at(&s.apply_crossings(&x, &[2, 1]), 2);
        let rhs = s.apply_crossing(&a.contract_at(&x, 1), 1);
        if lhs != rhs {
            out.push(cx("(id⊗m)σ₁σ₂ = σ(m⊗id)", w.to_string(), format_word_sum(&lhs), format_word_sum(&rhs)));
        }
        let lhs = a.contract_at(&s.apply_crossings(&x, &[1, 2]), 1);
        let rhs = s.apply_crossing(&a.contract_at(&x, 2), 1);
        if lhs != rhs {
            out.push(cx("(m⊗id)σ₂σ₁ = σ(id⊗m)", w.to_string(), format_word_sum(&lhs), format_word_sum(&rhs)));
        }
        let lhs = a.contract_at(&a.contract_at(&x, 1), 1);
        let rhs = a.contract_at(&a.contract_at(&x, 2), 1);
        if lhs != rhs {
            out.push(cx("m(m⊗id) = m(id⊗m)", w.to_string(), format_word_sum(&lhs), format_word_sum(&rhs)));
        }
    }
    if let Some(u) = &a.unit {
        let unit: LinComb<Word> =
            u.iter().enumerate().map(|(i, c)| (Word::letter((i + 1) as Letter), c.clone())).collect();
        for l in 1..=a.dim {
            let e = LinComb::basis(Word::letter(l as Letter));
            let ue = crate::tensor::concat_words(&unit, &e);
            let eu = crate::tensor::concat_words(&e, &unit);
            let input = format!("1_A, e{l}");
            let checks = [
                ("σ(1⊗a) = a⊗1", s.apply_crossing(&ue, 1), eu.clone()),
                ("σ(a⊗1) = 1⊗a", s.apply_crossing(&eu, 1), ue.clone()),
                ("m(1⊗a) = a", a.contract_at(&ue, 1), e.clone()),
                ("m(a⊗1) = a", a.contract_at(&eu, 1), e.clone()),
            ];
            for (name, lhs, rhs) in checks {
                if lhs != rhs {
                    out.push(cx(name, input.clone(), format_word_sum(&lhs), format_word_sum(&rhs)));
                }
            }
        }
    }
    out
}

/// Recursive evaluation of the quasi-shuffle product on words; `spec = None`
/// means `m = 0`, i.e. the quantum shuffle.
struct Engine<'a> {
    braiding: &'a Braiding,
    spec: Option<&'a AlgebraSpec>,
    memo: &'a Memo,
}

impl Engine<'_> {
    fn words(&self, u: &Word, v: &Word) -> Arc<LinComb<Word>> {
        if u.is_empty() {
            return Arc::new(LinComb::basis(v.clone()));
        }
        if v.is_empty() {
            return Arc::new(LinComb::basis(u.clone()));
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Arc::clone(&hit);
        }
        let out = Arc::new(self.compute(u, v));
        self.memo.insert(key, Arc::clone(&out));
        out
    }

    fn compute(&self, u: &Word, v: &Word) -> LinComb<Word> {
        let (i, j) = (u.len(), v.len());
        let mut out = LinComb::zero();

        let (v_head, v_last) = v.split_at(j - 1);
        append(&mut out, &self.words(u, &v_head), &LinComb::basis(v_last), &Scalar::one());

        let uv = LinComb::basis(u.concat(v));
        let seq: Vec<usize> = (i..i + j).collect();
        for (w, c) in &self.braiding.apply_crossings(&uv, &seq) {
            let (head, last) = w.split_at(i + j - 1);
            let (a, b) = head.split_at(i - 1);
            append(&mut out, &self.words(&a, &b), &LinComb::basis(last), c);
        }

        if let Some(spec) = self.spec {
            for (w, c) in &self.braiding.apply_crossings(&uv, &seq[..j - 1]) {
                let (head, tail) = w.split_at(i + j - 2);
                let l = tail.letters();
                let prod = spec.product(l[0], l[1]);
                if prod.is_zero() {
                    continue;
                }
                let (a, b) = head.split_at(i - 1);
                append(&mut out, &self.words(&a, &b), prod, c);
            }
        }
        out
    }

    fn apply(&self, x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
        let mut out = LinComb::zero();
        for (u, cu) in x {
            for (v, cv) in y {
                out.add_scaled(&self.words(u, v), &(cu * cv));
            }
        }
        out
    }
}

/// `out += c · (x ⊗ y)`.
fn append(out: &mut LinComb<Word>, x: &LinComb<Word>, y: &LinComb<Word>, c: &Scalar) {
    for (a, ca) in x {
        let cac = ca * c;
        for (b, cb) in y {
            out.add_term(a.concat(b), &cac * cb);
        }
    }
}

/// The quasi-shuffle product `x ⋈ y`, memoized per spec.
pub fn quasi_shuffle(a: &AlgebraSpec, x: &Element, y: &Element) -> Result<Element, ProductError> {
    a.check_dim(x.dim())?;
    a.check_dim(y.dim())?;
    let out = a.engine().apply(x.terms(), y.terms());
    Ok(Element::from_terms_unchecked(a.dim, out))
}

/// `u ⋈ v` on basis words.
pub fn quasi_shuffle_words(a: &AlgebraSpec, u: &Word, v: &Word) -> Arc<LinComb<Word>> {
    a.engine().words(u, v)
}

/// The quantum shuffle product, by the recursive engine with `m = 0`.
pub fn quantum_shuffle(s: &Braiding, x: &Element, y: &Element) -> Result<Element, ProductError> {
    for d in [x.dim(), y.dim()] {
        if d != s.dim() {
            return Err(ProductError::DimensionMismatch(s.dim(), d));
        }
    }
    let memo = Memo::default();
    let engine = Engine {
        braiding: s,
        spec: None,
        memo: &memo,
    };
    Ok(Element::from_terms_unchecked(s.dim(), engine.apply(x.terms(), y.terms())))
}

/// `Δ_β = (id ⊗ β ⊗ id)(δ ⊗ δ)` on a basis pair, as `((x₁, y'), (x', y₂))`.
pub fn delta_beta(s: &Braiding, x: &Word, y: &Word) -> LinComb<(Pair, Pair)> {
    let mut out = LinComb::zero();
    for k in 0..=x.len() {
        let (x1, x2) = x.split_at(k);
        for l in 0..=y.len() {
            let (y1, y2) = y.split_at(l);
            for ((yb, xb), c) in &s.beta_words(&x2, &y1) {
                out.add_term(((x1.clone(), yb.clone()), (xb.clone(), y2.clone())), c.clone());
            }
        }
    }
    out
}

/// `ε⊗ε + Σ_n M^{⊗n} ∘ Δ_β^{(n-1)}` evaluated directly. Splits whose first
/// block is killed by `M` are skipped.
pub fn quasi_shuffle_oracle(a: &AlgebraSpec, x: &Element, y: &Element) -> Result<Element, ProductError> {
    a.check_dim(x.dim())?;
    a.check_dim(y.dim())?;
    let mut out = LinComb::zero();
    for (u, cu) in x.terms() {
        for (v, cv) in y.terms() {
            out.add_scaled(&oracle_words(a, u, v), &(cu * cv));
        }
    }
    Ok(Element::from_terms_unchecked(a.dim, out))
}

fn oracle_words(a: &AlgebraSpec, u: &Word, v: &Word) -> LinComb<Word> {
    let mut out = LinComb::zero();
    if u.is_empty() && v.is_empty() {
        out.add_term(Word::empty(), Scalar::one());
    }
    oracle_rec(a, &LinComb::basis(Word::empty()), u, v, &mut out);
    out
}

fn oracle_rec(a: &AlgebraSpec, prefix: &LinComb<Word>, x: &Word, y: &Word, out: &mut LinComb<Word>) {
    let m = a.m_family();
    append(out, prefix, &m.apply(x, y), &Scalar::one());
    for k in 0..=x.len().min(1) {
        for l in 0..=y.len().min(1) {
            if k + l == 0 {
                continue;
            }
            let (x1, x2) = x.split_at(k);
            let (y1, y2) = y.split_at(l);
            for ((yb, xb), c) in &a.braiding.beta_words(&x2, &y1) {
                let head = m.apply(&x1, yb);
                if head.is_zero() {
                    continue;
                }
                let mut next = LinComb::zero();
                append(&mut next, prefix, &head, c);
                oracle_rec(a, &next, xb, &y2, out);
            }
        }
    }
}

/// `m^{⊗i} ∘ T_{w_i}` on `A^{⊗i}`: interleave the two words, then multiply
/// neighbouring letters.
pub fn twisted_tensor_product(a: &AlgebraSpec, i: usize, x: &Element, y: &Element) -> Result<Element, ProductError> {
    a.check_dim(x.dim())?;
    a.check_dim(y.dim())?;
    if let Some(v) = a.yb_violations.first() {
        return Err(ProductError::NotYbAlgebra(Box::new(v.clone())));
    }
    if i == 0 || x.terms().keys().chain(y.terms().keys()).any(|w| w.len() != i) {
        return Err(ProductError::TensorPowerShape(i));
    }
    let seq = Permutation::interleave(i).reduced_word();
    let mut z = a.braiding.apply_crossings(&crate::tensor::concat_words(x.terms(), y.terms()), &seq);
    for k in 1..=i {
        z = a.contract_at(&z, k);
    }
    Ok(Element::from_terms_unchecked(a.dim, z))
}

/// All words of length at most `d`, shortest first.
pub fn words_up_to(dim: usize, d: usize) -> Vec<Word> {
    (0..=d).flat_map(|n| Word::all_of_length(dim, n)).collect()
}

pub fn pairs_up_to(dim: usize, d: usize) -> Vec<Pair> {
    let mut out = Vec::new();
    for i in 0..=d {
        for x in Word::all_of_length(dim, i) {
            for j in 0..=d - i {
                for y in Word::all_of_length(dim, j) {
                    out.push((x.clone(), y));
                }
            }
        }
    }
    out
}

pub fn triples_up_to(dim: usize, d: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for (x, y) in pairs_up_to(dim, d) {
        for k in 0..=d - x.len() - y.len() {
            for z in Word::all_of_length(dim, k) {
                out.push((x.clone(), y.clone(), z));
            }
        }
    }
    out
}

fn beta12(s: &Braiding, t: &Triple) -> LinComb<Triple> {
    s.beta_words(&t.0, &t.1)
        .iter()
        .map(|((a, b), c)| ((a.clone(), b.clone(), t.2.clone()), c.clone()))
        .collect()
}

fn beta23(s: &Braiding, t: &Triple) -> LinComb<Triple> {
    s.beta_words(&t.1, &t.2)
        .iter()
        .map(|((b, c), k)| ((t.0.clone(), b.clone(), c.clone()), k.clone()))
        .collect()
}

fn join_pair(e: &Engine<'_>, x: &Word, y: &Word, z: &Word, first: bool) -> LinComb<Pair> {
    // (x⋈y, z) when `first`, else (x, y⋈z)
    let (joined, keep) = if first { (e.words(x, y), z) } else { (e.words(y, z), x) };
    joined
        .iter()
        .map(|(w, c)| {
            let key = if first { (w.clone(), keep.clone()) } else { (keep.clone(), w.clone()) };
            (key, c.clone())
        })
        .collect()
}

fn pair_sum(x: &LinComb<Pair>) -> String {
    format_keyed_sum(x, |p| Some(pair_string(p)))
}

fn triple_sum(x: &LinComb<Triple>) -> String {
    format_keyed_sum(x, |t| Some(triple_string(t)))
}

fn run_suite<T, F>(name: &str, inputs: &[T], check: F) -> SuiteResult
where
    T: Sync,
    F: Fn(&T) -> Option<Counterexample> + Sync + Send,
{
    SuiteResult {
        name: name.to_string(),
        instances: inputs.len(),
        counterexample: inputs.par_iter().find_map_first(check),
    }
}

/// Outcome of [`check_twisted_bialgebra`], one entry per identity.
#[derive(Debug, Clone)]
pub struct BialgebraReport {
    pub suites: Vec<SuiteResult>,
}

impl BialgebraReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.suites.iter().filter_map(|s| s.counterexample.as_ref())
    }
}

/// Runs the compatibility, braiding-naturality, associativity and
/// reduced-coproduct identities on all basis inputs of total degree at most
/// `max_degree`.
pub fn check_twisted_bialgebra(a: &AlgebraSpec, max_degree: usize) -> BialgebraReport {
    let e = a.engine();
    let s = &a.braiding;
    let pairs = pairs_up_to(a.dim, max_degree);
    let triples = triples_up_to(a.dim, max_degree);
    let mut suites = Vec::new();

    suites.push(run_suite("δ(x⋈y) = (⋈⊗⋈)Δ_β(x⊗y)", &pairs, |(x, y)| {
        let lhs: LinComb<Pair> = e.words(x, y).map_linear(|w| {
            (0..=w.len()).map(|k| (w.split_at(k), Scalar::one())).collect()
        });
        let mut rhs = LinComb::zero();
        for (((x1, y1), (x2, y2)), c) in &delta_beta(s, x, y) {
            let left = e.words(x1, y1);
            let right = e.words(x2, y2);
            for (l, cl) in left.iter() {
                let clc = cl * c;
                for (r, cr) in right.iter() {
                    rhs.add_term((l.clone(), r.clone()), &clc * cr);
                }
            }
        }
        (lhs != rhs).then(|| cx("δ(x⋈y) = (⋈⊗⋈)Δ_β(x⊗y)", pair_string(&(x.clone(), y.clone())), pair_sum(&lhs), pair_sum(&rhs)))
    }));

    suites.push(run_suite("β(⋈⊗id) = (id⊗⋈)β₁β₂", &triples, |t| {
        let lhs = join_pair(&e, &t.0, &t.1, &t.2, true).map_linear(|(w, z)| s.beta_words(w, z));
        let rhs = beta23(s, t)
            .map_linear(|u| beta12(s, u))
            .map_linear(|(z, x, y)| join_pair(&e, z, x, y, false));
        (lhs != rhs).then(|| cx("β(⋈⊗id) = (id⊗⋈)β₁β₂", triple_string(t), pair_sum(&lhs), pair_sum(&rhs)))
    }));

    suites.push(run_suite("β(id⊗⋈) = (⋈⊗id)β₂β₁", &triples, |t| {
        let lhs = join_pair(&e, &t.0, &t.1, &t.2, false).map_linear(|(x, w)| s.beta_words(x, w));
        let rhs = beta12(s, t)
            .map_linear(|u| beta23(s, u))
            .map_linear(|(y, z, x)| join_pair(&e, y, z, x, true));
        (lhs != rhs).then(|| cx("β(id⊗⋈) = (⋈⊗id)β₂β₁", triple_string(t), pair_sum(&lhs), pair_sum(&rhs)))
    }));

    suites.push(run_suite("(x⋈y)⋈z = x⋈(y⋈z)", &triples, |t| {
        let lhs = e.apply(&e.words(&t.0, &t.1), &LinComb::basis(t.2.clone()));
        let rhs = e.apply(&LinComb::basis(t.0.clone()), &e.words(&t.1, &t.2));
        (lhs != rhs).then(|| cx("(x⋈y)⋈z = x⋈(y⋈z)", triple_string(t), format_word_sum(&lhs), format_word_sum(&rhs)))
    }));

    let left_nonempty: Vec<Pair> = pairs.iter().filter(|p| !p.0.is_empty()).cloned().collect();
    suites.push(run_suite("(id⊗Δ̄)β = β₁β₂(Δ̄⊗id)", &left_nonempty, |(x, y)| {
        let lhs: LinComb<Triple> = s.beta_words(x, y).map_linear(|(yb, xb)| {
            crate::tensor::reduced_coproduct_word(xb)
                .iter()
                .map(|((a, b), c)| ((yb.clone(), a.clone(), b.clone()), c.clone()))
                .collect()
        });
        let rhs = crate::tensor::reduced_coproduct_word(x)
            .map_linear(|(a, b)| beta23(s, &(a.clone(), b.clone(), y.clone())))
            .map_linear(|u| beta12(s, u));
        (lhs != rhs).then(|| cx("(id⊗Δ̄)β = β₁β₂(Δ̄⊗id)", pair_string(&(x.clone(), y.clone())), triple_sum(&lhs), triple_sum(&rhs)))
    }));

    let right_nonempty: Vec<Pair> = pairs.iter().filter(|p| !p.1.is_empty()).cloned().collect();
    suites.push(run_suite("(Δ̄⊗id)β = β₂β₁(id⊗Δ̄)", &right_nonempty, |(x, y)| {
        let lhs: LinComb<Triple> = s.beta_words(x, y).map_linear(|(yb, xb)| {
            crate::tensor::reduced_coproduct_word(yb)
                .iter()
                .map(|((a, b), c)| ((a.clone(), b.clone(), xb.clone()), c.clone()))
                .collect()
        });
        let rhs = crate::tensor::reduced_coproduct_word(y)
            .map_linear(|(a, b)| beta12(s, &(x.clone(), a.clone(), b.clone())))
            .map_linear(|u| beta23(s, u));
        (lhs != rhs).then(|| cx("(Δ̄⊗id)β = β₂β₁(id⊗Δ̄)", pair_string(&(x.clone(), y.clone())), triple_sum(&lhs), triple_sum(&rhs)))
    }));

    BialgebraReport { suites }
}

/// The three facts related by the twisted-commutativity criterion.
#[derive(Debug, Clone)]
pub struct TwistedCommutativity {
    pub m_sigma_eq_m: bool,
    pub sigma_squared_id: bool,
    pub join_commutes: bool,
    pub consistent_with_theorem15: bool,
    /// First pair on which `⋈∘β ≠ ⋈`, if any.
    pub witness: Option<Counterexample>,
}

pub fn check_twisted_commutative(a: &AlgebraSpec, max_degree: usize) -> TwistedCommutativity {
    let s = &a.braiding;
    let m_sigma_eq_m = Word::all_of_length(a.dim, 2).iter().all(|w| {
        let x = LinComb::basis(w.clone());
        a.contract_at(&s.apply_crossing(&x, 1), 1) == a.contract_at(&x, 1)
    });
    let sigma_squared_id = s.is_involutive();
    let e = a.engine();
    let pairs = pairs_up_to(a.dim, max_degree);
    let witness = pairs.par_iter().find_map_first(|(x, y)| {
        let lhs = s.beta_words(x, y).map_linear(|(b, c)| (*e.words(b, c)).clone());
        let rhs = (*e.words(x, y)).clone();
        (lhs != rhs).then(|| {
            cx("⋈∘β = ⋈", pair_string(&(x.clone(), y.clone())), format_word_sum(&lhs), format_word_sum(&rhs))
        })
    });
    let join_commutes = witness.is_none();
    TwistedCommutativity {
        m_sigma_eq_m,
        sigma_squared_id,
        join_commutes,
        consistent_with_theorem15: join_commutes == (m_sigma_eq_m && sigma_squared_id),
        witness,
    }
}

/// Classical quasi-shuffle `(a x') ∗ (b y') = a (x' ∗ b y') + b (a x' ∗ y') +
/// m(a, b) (x' ∗ y')`, with no braiding involved.
pub fn classical_quasi_shuffle<F>(x: &Element, y: &Element, m: F) -> Result<Element, ProductError>
where
    F: Fn(Letter, Letter) -> Vec<(Letter, Scalar)>,
{
    if x.dim() != y.dim() {
        return Err(ProductError::DimensionMismatch(x.dim(), y.dim()));
    }
    fn go<F: Fn(Letter, Letter) -> Vec<(Letter, Scalar)>>(u: &[Letter], v: &[Letter], m: &F) -> LinComb<Word> {
        if u.is_empty() {
            return LinComb::basis(Word::new(v));
        }
        if v.is_empty() {
            return LinComb::basis(Word::new(u));
        }
        let prepend = |l: Letter, rest: LinComb<Word>, c: &Scalar| -> LinComb<Word> {
            rest.iter()
                .map(|(w, k)| (Word::letter(l).concat(w), k * c))
                .collect()
        };
        let mut out = prepend(u[0], go(&u[1..], v, m), &Scalar::one());
        out.add_assign(&prepend(v[0], go(u, &v[1..], m), &Scalar::one()));
        let tail = go(&u[1..], &v[1..], m);
        for (k, c) in m(u[0], v[0]) {
            out.add_assign(&prepend(k, tail.clone(), &c));
        }
        out
    }
    let mut out = LinComb::zero();
    for (u, cu) in x.terms() {
        for (v, cv) in y.terms() {
            out.add_scaled(&go(u.letters(), v.letters(), &m), &(cu * cv));
        }
    }
    Ok(Element::from_terms_unchecked(x.dim(), out))
}

/// A diagonal braiding with exponents drawn from `-range..=range`.
pub fn random_diagonal_braiding<R: Rng>(rng: &mut R, n: usize, range: i64) -> Braiding {
    let exps = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    Braiding::diagonal(exps).expect("square exponents")
}

/// A random small nonzero rational.
pub fn random_nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let n = rng.gen_range(-5..=5);
        if n != 0 {
            return Scalar::from_ratio(n, rng.gen_range(1..=4)).expect("nonzero denominator");
        }
    }
}

/// A power-sum spec with random exponent scale and random product constant.
pub fn random_power_sum_spec<R: Rng>(rng: &mut R, n: usize) -> AlgebraSpec {
    let s = [-2, -1, 1, 2][rng.gen_range(0..4)];
    AlgebraSpec::power_sum(n, s, random_nonzero_scalar(rng)).expect("valid data")
}

/// Drops the unit and changes structure constants at random until the spec
/// fails the Yang-Baxter algebra axioms.
pub fn perturb_to_non_yb<R: Rng>(rng: &mut R, a: &AlgebraSpec) -> AlgebraSpec {
    let base = a.without_unit();
    let n = a.dim;
    loop {
        let (i, j, k) = (rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(1..=n));
        let old = &base.constants[i - 1][j - 1][k - 1];
        let value = old + &random_nonzero_scalar(rng);
        let candidate = base.with_constant(i, j, k, value).expect("same shape");
        if !candidate.is_yb() {
            return candidate;
        }
    }
}
