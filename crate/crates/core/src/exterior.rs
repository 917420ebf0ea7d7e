//! The quantum exterior algebra on the subset basis, its base braiding and
//! the q-flip `𝒯`.

use std::fmt;

use crate::braid::{ybe_check, Braiding};
use crate::linalg::Matrix;
use crate::products::{check_twisted_commutative, AlgebraSpec, TwistedCommutativity};
use crate::report::Counterexample;
use crate::scalar::Scalar;
use crate::tensor::Letter;

/// Which pairs `(i, j) ∈ I × J` are counted in the q-flip exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Count `i < j`.
    LessThan,
    /// Count `i > j`.
    GreaterThan,
}

/// How the q-flip exponent treats overlapping supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OverlapRule {
    /// `#{counted pairs} - #{opposite pairs}` for every `I, J`; agrees with
    /// `2·#{counted} - st` on disjoint supports.
    Additive,
    /// Exponent `0` whenever `I ∩ J ≠ ∅`.
    Printed,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::LessThan => "lt",
            Convention::GreaterThan => "gt",
        })
    }
}

impl fmt::Display for OverlapRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OverlapRule::Additive => "additive",
            OverlapRule::Printed => "printed",
        })
    }
}

/// An increasing list of indices in `1..=N`.
pub type Subset = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExteriorSpec {
    pub n: usize,
    pub convention: Convention,
    pub overlap: OverlapRule,
    /// Include the empty set (the unit) in the basis.
    pub unital: bool,
}

impl ExteriorSpec {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            convention: Convention::LessThan,
            overlap: OverlapRule::Additive,
            unital: false,
        }
    }

    pub fn with_convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }

    pub fn with_overlap(mut self, o: OverlapRule) -> Self {
        self.overlap = o;
        self
    }

    pub fn unital(mut self, unital: bool) -> Self {
        self.unital = unital;
        self
    }

    /// Basis subsets ordered by (size, lex); basis letter `k` is entry `k-1`.
    pub fn basis(&self) -> Vec<Subset> {
        let n = self.n;
        let mut out: Vec<Subset> = (0u32..1 << n)
            .map(|mask| (1..=n as Letter).filter(|i| mask >> (i - 1) & 1 == 1).collect())
            .filter(|s: &Subset| self.unital || !s.is_empty())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn dim(&self) -> usize {
        (1 << self.n) - usize::from(!self.unital)
    }

    pub fn index_of(&self, s: &[Letter]) -> Option<Letter> {
        self.basis().iter().position(|b| b == s).map(|k| (k + 1) as Letter)
    }

    /// Exponent of `-q` in `𝒯(e_I ⊗ e_J)`.
    pub fn qflip_exponent(&self, i: &[Letter], j: &[Letter]) -> i64 {
        let (mut lt, mut gt) = (0i64, 0i64);
        for a in i {
            for b in j {
                match a.cmp(b) {
                    std::cmp::Ordering::Less => lt += 1,
                    std::cmp::Ordering::Greater => gt += 1,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        let (counted, opposite) = match self.convention {
            Convention::LessThan => (lt, gt),
            Convention::GreaterThan => (gt, lt),
        };
        let overlap = i.iter().any(|a| j.contains(a));
        match self.overlap {
            OverlapRule::Printed if overlap => 0,
            OverlapRule::Printed => 2 * counted - (i.len() * j.len()) as i64,
            OverlapRule::Additive => counted - opposite,
        }
    }

    /// `𝒯(e_I ⊗ e_J) = (-q)^{(I|J)} e_J ⊗ e_I`.
    pub fn qflip(&self, i: &[Letter], j: &[Letter]) -> (Scalar, Subset, Subset) {
        let c = minus_q().pow(self.qflip_exponent(i, j)).expect("-q is nonzero");
        (c, j.to_vec(), i.to_vec())
    }

    /// `𝒯` as a diagonal braiding with base `-q` on the subset basis.
    pub fn qflip_braiding(&self) -> Braiding {
        let basis = self.basis();
        let exps = basis
            .iter()
            .map(|a| basis.iter().map(|b| self.qflip_exponent(a, b)).collect())
            .collect();
        Braiding::diagonal_with_base(minus_q(), exps).expect("valid exponents")
    }

    /// `Λ_σ(V)` with `∧` and `𝒯`; unit `e_∅` when unital.
    pub fn to_algebra_spec(&self) -> AlgebraSpec {
        let basis = self.basis();
        let unit = self.unital.then(|| {
            let mut u = vec![Scalar::zero(); basis.len()];
            u[0] = Scalar::one();
            u
        });
        AlgebraSpec::from_product_fn(self.qflip_braiding(), unit, |a, b| {
            match wedge(&basis[a as usize - 1], &basis[b as usize - 1]) {
                Some((c, s)) => vec![(self.index_of(&s).expect("subset in basis"), c)],
                None => Vec::new(),
            }
        })
        .expect("consistent shapes")
    }
}

fn minus_q() -> Scalar {
    -Scalar::q()
}

/// The braiding on `V` with `dim V = n` whose exterior algebra this is.
pub fn base_braiding(n: usize) -> Braiding {
    let n2 = n * n;
    let mut m = Matrix::zeros(n2, n2);
    let qi = Scalar::q_pow(-1);
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    for i in 1..=n {
        for j in 1..=n {
            let col = idx(i, j);
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => m.set(col, col, Scalar::one()),
                std::cmp::Ordering::Less => m.set(idx(j, i), col, qi.clone()),
                std::cmp::Ordering::Greater => {
                    m.set(idx(j, i), col, qi.clone());
                    m.set(col, col, &Scalar::one() - &Scalar::q_pow(-2));
                }
            }
        }
    }
    Braiding::dense(n, m)
        .expect("invertible")
        .certified()
        .expect("satisfies the braid relation")
}

/// `e_I ∧ e_J` as `c · e_K`, or `None` when it vanishes.
pub fn wedge(i: &[Letter], j: &[Letter]) -> Option<(Scalar, Subset)> {
    let mut v: Vec<Letter> = i.iter().chain(j).copied().collect();
    let mut swaps = 0i64;
    for a in 0..v.len() {
        for b in 0..v.len() - 1 - a {
            match v[b].cmp(&v[b + 1]) {
                std::cmp::Ordering::Greater => {
                    v.swap(b, b + 1);
                    swaps += 1;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    let c = (-Scalar::q_pow(-1)).pow(swaps).expect("nonzero");
    Some((c, v))
}

/// Outcome of [`validate_exterior`].
#[derive(Debug, Clone)]
pub struct ExteriorReport {
    pub spec: ExteriorSpec,
    pub iwahori: bool,
    pub kernel_dim: usize,
    pub kernel_expected_dim: usize,
    pub kernel_vectors_ok: bool,
    pub qflip_ybe: bool,
    pub qflip_involutive: bool,
    /// `∧ ∘ 𝒯 = ∧` on all basis pairs.
    pub wedge_invariant: bool,
    pub wedge_invariant_witness: Option<Counterexample>,
    pub yb_algebra_violations: Vec<Counterexample>,
    pub twisted_commutativity: TwistedCommutativity,
}

impl ExteriorReport {
    pub fn yb_algebra(&self) -> bool {
        self.yb_algebra_violations.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.iwahori
            && self.kernel_dim == self.kernel_expected_dim
            && self.kernel_vectors_ok
            && self.qflip_ybe
            && self.qflip_involutive
            && self.wedge_invariant
            && self.yb_algebra()
            && self.twisted_commutativity.join_commutes
    }

    /// One `name: pass|fail` line per claim.
    pub fn lines(&self) -> Vec<(String, bool)> {
        let tc = &self.twisted_commutativity;
        vec![
            ("Iwahori relation (σ-id)(σ+q^-2 id) = 0".into(), self.iwahori),
            (
                format!("dim Ker(id-σ) = {} (found {})", self.kernel_expected_dim, self.kernel_dim),
                self.kernel_dim == self.kernel_expected_dim,
            ),
            ("listed vectors lie in Ker(id-σ)".into(), self.kernel_vectors_ok),
            ("𝒯 satisfies the braid relation".into(), self.qflip_ybe),
            ("𝒯² = id".into(), self.qflip_involutive),
            ("∧∘𝒯 = ∧".into(), self.wedge_invariant),
            ("(Λ, ∧, 𝒯) is a Yang-Baxter algebra".into(), self.yb_algebra()),
            ("⋈∘β = ⋈".into(), tc.join_commutes),
            ("twisted-commutativity criterion consistent".into(), tc.consistent_with_theorem15),
        ]
    }
}

/// Runs every check on the base braiding and the derived algebra; the
/// quasi-shuffle commutativity check goes up to `max_degree`.
pub fn validate_exterior(spec: &ExteriorSpec, max_degree: usize) -> ExteriorReport {
    let n = spec.n;
    let sigma = base_braiding(n).matrix();
    let id = Matrix::identity(n * n);
    let iwahori = (&(&sigma - &id) * &(&sigma + &id.scaled(&Scalar::q_pow(-2)))).is_zero();
    let ker = &id - &sigma;
    let kernel_dim = n * n - ker.rank();
    let mut listed = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let mut v = vec![Scalar::zero(); n * n];
            if i == j {
                v[(i - 1) * n + (i - 1)] = Scalar::one();
            } else {
                v[(i - 1) * n + (j - 1)] = Scalar::q_pow(-1);
                v[(j - 1) * n + (i - 1)] = Scalar::one();
            }
            listed.push(v);
        }
    }
    let kernel_vectors_ok = listed.iter().all(|v| ker.apply(v).iter().all(Scalar::is_zero))
        && Matrix::from_rows(listed.clone()).rank() == listed.len();

    let qflip = spec.qflip_braiding();
    let qflip_ybe = ybe_check(&qflip).is_pass();
    let qflip_involutive = qflip.is_involutive();

    let basis = spec.basis();
    let mut wedge_invariant_witness = None;
    'outer: for a in &basis {
        for b in &basis {
            let (c, x, y) = spec.qflip(a, b);
            let lhs = wedge(&x, &y).map(|(k, s)| (&k * &c, s));
            let rhs = wedge(a, b);
            if lhs != rhs {
                let show = |w: &Option<(Scalar, Subset)>| match w {
                    None => "0".to_string(),
                    Some((k, s)) => format!("({k})*{}", subset_name(s)),
                };
                wedge_invariant_witness = Some(Counterexample {
                    identity: "∧∘𝒯 = ∧".into(),
                    input: format!("{} ⊗ {}", subset_name(a), subset_name(b)),
                    lhs: show(&lhs),
                    rhs: show(&rhs),
                });
                break 'outer;
            }
        }
    }

    let algebra = spec.to_algebra_spec();
    ExteriorReport {
        spec: *spec,
        iwahori,
        kernel_dim,
        kernel_expected_dim: n * (n + 1) / 2,
        kernel_vectors_ok,
        qflip_ybe,
        qflip_involutive,
        wedge_invariant: wedge_invariant_witness.is_none(),
        wedge_invariant_witness,
        yb_algebra_violations: algebra.yb_violations().to_vec(),
        twisted_commutativity: check_twisted_commutative(&algebra, max_degree),
    }
}

/// `e1^e3` style name of a basis subset; `1` for the empty set.
pub fn subset_name(s: &[Letter]) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("^")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::scalar_parse;
    use crate::tensor::{LinComb, Word};

    fn sc(t: &str) -> Scalar {
        scalar_parse(t).unwrap()
    }

    #[test]
    fn base_braiding_cases() {
        let s = base_braiding(2);
        let apply = |a: Letter, b: Letter| s.apply_crossing(&LinComb::basis(Word::new(&[a, b])), 1);
        assert_eq!(apply(1, 1), LinComb::basis(Word::new(&[1, 1])));
        assert_eq!(apply(1, 2), LinComb::single(Word::new(&[2, 1]), sc("q^-1")));
        let mut expected = LinComb::single(Word::new(&[1, 2]), sc("q^-1"));
        expected.add_term(Word::new(&[2, 1]), sc("1-q^-2"));
        assert_eq!(apply(2, 1), expected);
    }

    #[test]
    fn wedge_relations() {
        assert_eq!(wedge(&[1], &[1]), None);
        assert_eq!(wedge(&[2], &[1]), Some((sc("-q^-1"), vec![1, 2])));
        assert_eq!(wedge(&[1, 2], &[1]), None);
        assert_eq!(wedge(&[3], &[1, 2]), Some((sc("q^-2"), vec![1, 2, 3])));
        assert_eq!(wedge(&[], &[2]), Some((Scalar::one(), vec![2])));
    }

    #[test]
    fn qflip_examples() {
        let lt = ExteriorSpec::new(2);
        let gt = lt.with_convention(Convention::GreaterThan).with_overlap(OverlapRule::Printed);
        for spec in [lt, gt, lt.with_overlap(OverlapRule::Printed)] {
            assert_eq!(spec.qflip(&[1], &[1]).0, Scalar::one());
        }
        assert_eq!(gt.qflip(&[1], &[2]).0, sc("-q^-1"));
        assert_eq!(lt.qflip(&[1], &[2]).0, sc("-q"));
        // overlapping supports: the two rules differ
        let printed = lt.with_overlap(OverlapRule::Printed);
        assert_eq!(printed.qflip_exponent(&[2], &[1, 2]), 0);
        assert_eq!(lt.qflip_exponent(&[2], &[1, 2]), -1);
    }

    #[test]
    fn basis_order() {
        let spec = ExteriorSpec::new(2);
        assert_eq!(spec.basis(), vec![vec![1], vec![2], vec![1, 2]]);
        assert_eq!(spec.dim(), 3);
        let unital = spec.unital(true);
        assert_eq!(unital.basis()[0], Vec::<Letter>::new());
        assert_eq!(unital.dim(), 4);
    }

    #[test]
    fn default_reading_passes_everything() {
        for n in 1..=3 {
            let r = validate_exterior(&ExteriorSpec::new(n), 2);
            assert!(r.all_pass(), "{n}: {:?}", r.lines());
        }
    }

    #[test]
    fn printed_overlap_rule_breaks_compatibility() {
        let spec = ExteriorSpec::new(2).with_overlap(OverlapRule::Printed);
        let r = validate_exterior(&spec, 2);
        assert!(r.qflip_ybe && r.qflip_involutive && r.wedge_invariant);
        assert!(!r.yb_algebra());
    }

    #[test]
    fn greater_than_breaks_wedge_invariance() {
        let spec = ExteriorSpec::new(2).with_convention(Convention::GreaterThan);
        let r = validate_exterior(&spec, 2);
        assert!(!r.wedge_invariant);
        assert_eq!(r.wedge_invariant_witness.as_ref().unwrap().input, "e1 ⊗ e2");
        assert!(r.yb_algebra());
        assert!(!r.twisted_commutativity.join_commutes);
        assert!(r.twisted_commutativity.consistent_with_theorem15);
    }
}
