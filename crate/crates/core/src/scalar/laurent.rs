use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, ScalarError};

/// A Laurent polynomial in `q` with rational coefficients.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: Rational, exp: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut v: Vec<(i64, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// The constant value if the polynomial has no non-constant term.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms
            .binary_search_by_key(&exp, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Splits `self = q^k * p` with `p` having a nonzero constant term.
    /// Returns `None` for the zero polynomial.
    pub(crate) fn split_monomial(&self) -> Option<(i64, LaurentPoly)> {
        let k = self.min_exp()?;
        Some((k, self.shift(-k)))
    }

    /// Exact evaluation at `q = q0`.
    pub fn evaluate(&self, q0: &Rational) -> Result<Rational, ScalarError> {
        if q0.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(ScalarError::NegativePowerAtZero);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * rational_pow(q0, *e);
        }
        Ok(acc)
    }

    /// Polynomial long division for ordinary polynomials (all exponents >= 0).
    pub(crate) fn div_rem(&self, divisor: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        debug_assert!(self.min_exp().unwrap_or(0) >= 0);
        debug_assert!(divisor.min_exp().unwrap_or(0) >= 0);
        let d_deg = divisor.max_exp().expect("division by zero polynomial");
        let d_lead = divisor.leading_coeff().unwrap().clone();
        let mut quotient = Vec::new();
        let mut rem = self.clone();
        while let Some(r_deg) = rem.max_exp() {
            if r_deg < d_deg {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &d_lead;
            let e = r_deg - d_deg;
            rem = &rem - &divisor.scale(&c).shift(e);
            quotient.push((e, c));
        }
        (LaurentPoly::from_terms(quotient), rem)
    }

    /// Monic gcd of two ordinary polynomials.
    pub(crate) fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        match x.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                x.scale(&inv)
            }
            None => x,
        }
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mono = match *e {
                0 => None,
                1 => Some("q".to_string()),
                k => Some(format!("q^{k}")),
            };
            match mono {
                None => write!(f, "{abs}")?,
                Some(m) if abs.is_one() => write!(f, "{m}")?,
                Some(m) => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn rational_pow(base: &Rational, exp: i64) -> Rational {
    let b = if exp < 0 { base.recip() } else { base.clone() };
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

fn merge(a: &[(i64, Rational)], b: &[(i64, Rational)], negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    LaurentPoly { terms: out }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let mut prod = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                prod.push((ea + eb, ca * cb));
            }
        }
        LaurentPoly::from_terms(prod)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn poly(coeffs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(coeffs.iter().map(|&(e, c)| (e, r(c))))
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let p = poly(&[(1, 2), (0, 1), (1, -2), (3, 4)]);
        assert_eq!(p.terms(), &[(0, r(1)), (3, r(4))]);
    }

    #[test]
    fn long_division() {
        // (q^2 - 1) = (q - 1)(q + 1)
        let (quo, rem) = poly(&[(2, 1), (0, -1)]).div_rem(&poly(&[(1, 1), (0, -1)]));
        assert_eq!(quo, poly(&[(1, 1), (0, 1)]));
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        let a = poly(&[(2, 2), (0, -2)]);
        let b = poly(&[(1, 3), (0, 3)]);
        assert_eq!(LaurentPoly::gcd(&a, &b), poly(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn evaluate_negative_exponent_at_zero_fails() {
        assert!(poly(&[(-1, 1)]).evaluate(&r(0)).is_err());
        assert_eq!(poly(&[(0, 5), (2, 1)]).evaluate(&r(0)).unwrap(), r(5));
    }
}
