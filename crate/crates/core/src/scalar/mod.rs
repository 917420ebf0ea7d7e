//! Exact coefficients: rationals, Laurent polynomials in `q`, and reduced
//! fractions of Laurent polynomials.
//!
//! Every constructor normalizes eagerly, so a value has exactly one
//! representation and `==` is mathematical equality:
//!
//! * constants are always [`Scalar::Rational`];
//! * anything whose denominator is a unit `c * q^k` of the Laurent ring is a
//!   [`Scalar::Laurent`];
//! * everything else is a [`Scalar::Fraction`] whose denominator is a monic
//!   ordinary polynomial of positive degree with nonzero constant term,
//!   coprime to the numerator.

mod laurent;

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use laurent::LaurentPoly;

use crate::parse::{self, ParseError};

/// Arbitrary-precision rational number; the ground field.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    DenominatorVanishes(Rational),
    #[error("cannot specialize q = 0 with negative powers of q present")]
    NegativePowerAtZero,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Laurent(LaurentPoly),
    Fraction { num: LaurentPoly, den: LaurentPoly },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn q() -> Self {
        Scalar::Laurent(LaurentPoly::q())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(Rational::one(), k))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        if d == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::Rational(Rational::new(n.into(), d.into())))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::Rational(r)
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Rational(c),
            None => Scalar::Laurent(p),
        }
    }

    /// Builds and reduces `num / den`.
    pub fn fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        let Some((den_shift, den_core)) = den.split_monomial() else {
            return Err(ScalarError::DivisionByZero);
        };
        let Some((num_shift, num_core)) = num.split_monomial() else {
            return Ok(Scalar::zero());
        };
        let g = LaurentPoly::gcd(&num_core, &den_core);
        let (mut n, _) = num_core.div_rem(&g);
        let (mut d, _) = den_core.div_rem(&g);
        let lc = d.leading_coeff().expect("nonzero denominator").recip();
        n = n.scale(&lc);
        d = d.scale(&lc);
        let n = n.shift(num_shift - den_shift);
        if d.max_exp() == Some(0) {
            Ok(Self::from_laurent(n))
        } else {
            Ok(Scalar::Fraction { num: n, den: d })
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Numerator as a Laurent polynomial.
    pub fn numerator(&self) -> LaurentPoly {
        match self {
            Scalar::Rational(r) => LaurentPoly::constant(r.clone()),
            Scalar::Laurent(p) => p.clone(),
            Scalar::Fraction { num, .. } => num.clone(),
        }
    }

    /// Denominator; `1` unless this is a proper fraction.
    pub fn denominator(&self) -> LaurentPoly {
        match self {
            Scalar::Fraction { den, .. } => den.clone(),
            _ => LaurentPoly::one(),
        }
    }

    /// True when the value is `c * q^k` for a rational `c`, i.e. it formats
    /// without a `+`, `-` between terms or `/` between polynomials.
    pub fn is_single_term(&self) -> bool {
        match self {
            Scalar::Rational(_) => true,
            Scalar::Laurent(p) => p.is_monomial(),
            Scalar::Fraction { .. } => false,
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a / b)),
            (_, Scalar::Rational(b)) => Ok(self * &Scalar::Rational(b.recip())),
            (_, Scalar::Laurent(p)) if p.is_monomial() => {
                let (e, c) = &p.terms()[0];
                let inv = Scalar::Laurent(LaurentPoly::monomial(c.recip(), -e));
                Ok(self * &inv)
            }
            _ => {
                let num = &self.numerator() * &rhs.denominator();
                let den = &self.denominator() * &rhs.numerator();
                Scalar::fraction(num, den)
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().checked_div(self)
    }

    /// Integer power; negative exponents require an invertible base.
    pub fn pow(&self, exp: i64) -> Result<Scalar, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact evaluation at `q = q0`. Fractions are stored reduced, so a
    /// removable singularity never triggers an error.
    pub fn specialize(&self, q0: &Rational) -> Result<Rational, ScalarError> {
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Laurent(p) => p.evaluate(q0),
            Scalar::Fraction { num, den } => {
                let d = den.evaluate(q0)?;
                if d.is_zero() {
                    return Err(ScalarError::DenominatorVanishes(q0.clone()));
                }
                Ok(num.evaluate(q0)? / d)
            }
        }
    }

}

/// Parses the scalar text grammar: rational literals, `q`, `q^k`, `*`, `/`,
/// `+`, `-` and parentheses.
pub fn scalar_parse(text: &str) -> Result<Scalar, ScalarError> {
    Ok(parse::parse_scalar(text)?)
}

/// Exact evaluation of `s` at `q = q0`.
pub fn scalar_specialize(s: &Scalar, q0: &Rational) -> Result<Rational, ScalarError> {
    s.specialize(q0)
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        scalar_parse(s)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Scalar::from_laurent(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Laurent(p) => write!(f, "{p}"),
            Scalar::Fraction { num, den } => {
                if num.is_monomial() && !num.terms()[0].1.is_negative() {
                    write!(f, "{num}/({den})")
                } else {
                    write!(f, "({num})/({den})")
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Formats `coeff * body` the way the element grammar expects, e.g.
/// `e1.e2`, `-q^-1*e2`, `(1+q)*e1`.
pub(crate) fn format_coefficient(coeff: &Scalar, body: &str) -> String {
    if coeff.is_one() {
        body.to_string()
    } else if (-coeff).is_one() {
        format!("-{body}")
    } else if coeff.is_single_term() {
        format!("{coeff}*{body}")
    } else {
        format!("({coeff})*{body}")
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Rational(a), Scalar::Laurent(p)) | (Scalar::Laurent(p), Scalar::Rational(a)) => {
                Scalar::from_laurent(p + &LaurentPoly::constant(a.clone()))
            }
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::from_laurent(a + b),
            _ => {
                let (n1, d1) = (self.numerator(), self.denominator());
                let (n2, d2) = (rhs.numerator(), rhs.denominator());
                let (num, den) = if d1 == d2 {
                    (&n1 + &n2, d1)
                } else {
                    (&(&n1 * &d2) + &(&n2 * &d1), &d1 * &d2)
                };
                Scalar::fraction(num, den).expect("nonzero denominators")
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Laurent(p)) | (Scalar::Laurent(p), Scalar::Rational(a)) => {
                Scalar::from_laurent(p.scale(a))
            }
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::from_laurent(a * b),
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return Scalar::zero();
                }
                let num = &self.numerator() * &rhs.numerator();
                let den = &self.denominator() * &rhs.denominator();
                Scalar::fraction(num, den).expect("nonzero denominators")
            }
        }
    }
}

/// Panics on division by zero; see [`Scalar::checked_div`].
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Laurent(p) => Scalar::Laurent(-p),
            Scalar::Fraction { num, den } => Scalar::Fraction {
                num: -num,
                den: den.clone(),
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        scalar_parse(text).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parse_examples() {
        assert_eq!(s("q^-1"), Scalar::Laurent(LaurentPoly::monomial(rat(1, 1), -1)));
        assert_eq!(
            s("1 - q^-2"),
            Scalar::Laurent(LaurentPoly::from_terms([(0, rat(1, 1)), (-2, rat(-1, 1))]))
        );
        assert!(s("0").is_zero());
    }

    #[test]
    fn arithmetic_examples() {
        // (1+q)(1+q+q^2), expanded by hand
        assert_eq!(s("(1+q)*(1+q+q^2)"), s("1 + 2*q + 2*q^2 + q^3"));
        // long division: q^2 - 1 = (q - 1)(q + 1)
        assert_eq!(s("q^2-1").checked_div(&s("q-1")).unwrap(), s("q+1"));
        let x = s("(1+q)/(2-q^3)");
        assert_eq!(&x + &Scalar::zero(), x);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s("q").checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        assert!(matches!(scalar_parse("1/0"), Err(ScalarError::Parse(_))));
    }

    #[test]
    fn fractions_reduce_and_demote() {
        let x = s("(q^2-1)/(q-1)");
        assert_eq!(x, s("q+1"));
        assert!(matches!(x, Scalar::Laurent(_)));
        // monomial denominators are units of the Laurent ring
        assert!(matches!(s("(1+q)/(2*q^3)"), Scalar::Laurent(_)));
        let f = s("1/(1+q)");
        assert!(matches!(f, Scalar::Fraction { .. }));
        assert_eq!(&f * &s("1+q"), Scalar::one());
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(s("1+q").specialize(&rat(2, 1)).unwrap(), rat(3, 1));
        assert_eq!(s("q^-2").specialize(&rat(2, 1)).unwrap(), rat(1, 4));
        // reduced before evaluation: the removable singularity disappears
        assert_eq!(s("(q^2-1)/(q-1)").specialize(&rat(1, 1)).unwrap(), rat(2, 1));
        assert_eq!(
            s("1/(q-1)").specialize(&rat(1, 1)),
            Err(ScalarError::DenominatorVanishes(rat(1, 1)))
        );
        assert_eq!(s("q^-1").specialize(&rat(0, 1)), Err(ScalarError::NegativePowerAtZero));
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "-3/4", "q^-1", "-q^-2+1", "1+2*q-1/3*q^5", "1/(1+q)", "(-q+2)/(q^2+q+1)", "-1/(q-2)"] {
            let x = s(text);
            assert_eq!(s(&x.to_string()), x, "{text} -> {x}");
        }
    }
}
