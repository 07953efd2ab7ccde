use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::literal;
use super::smooth::{exact_isqrt, first_irregular_factor, is_sixty_smooth};
use crate::error::{Error, Result};

/// An exact signed rational number, the value type behind every sexagesimal
/// numeral.
///
/// Always held in lowest terms with a positive denominator. Values are
/// absolute: `0;30` and `30` are different numbers.
///
/// There is deliberately no `Div` impl. Division in the scribal sense is
/// multiplication by a [`reciprocal`](Sexa::reciprocal), which only exists for
/// regular numbers; [`exact_quotient`](Sexa::exact_quotient) is the
/// unrestricted escape hatch.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Sexa(BigRational);

impl Sexa {
    pub fn zero() -> Self {
        Sexa(BigRational::zero())
    }

    pub fn one() -> Self {
        Sexa(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Sexa(BigRational::from_integer(n.into()))
    }

    /// `numer / denom` reduced to lowest terms.
    ///
    /// Panics if `denom` is zero; use [`Sexa::try_from_ratio`] for untrusted input.
    pub fn from_ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Sexa(BigRational::new(numer.into(), denom.into()))
    }

    pub fn try_from_ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Sexa(BigRational::new(numer.into(), denom)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Sexa(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Sexa {
        Sexa(self.0.abs())
    }

    /// Parses a numeral such as `21,9;8,26,15` or `-0;1,40`.
    pub fn parse(text: &str) -> Result<Sexa> {
        literal::parse(text)
    }

    /// Canonical sexagesimal rendering; fails for values with no finite expansion.
    pub fn render(&self) -> Result<String> {
        literal::render(self)
    }

    /// `p/q` form, or plain `p` for integers. Always succeeds.
    pub fn render_fraction(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    /// True iff the reduced denominator is 60-smooth.
    pub fn has_finite_expansion(&self) -> bool {
        is_sixty_smooth(self.denom().magnitude())
    }

    /// True iff `|x| = 2^a 3^b 5^c` for integers `a, b, c`, i.e. the number has
    /// a finite reciprocal in base 60.
    pub fn is_regular(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput { op: "is_regular" });
        }
        Ok(is_sixty_smooth(self.numer().magnitude()) && self.has_finite_expansion())
    }

    /// The scribal reciprocal (igi). Only regular numbers have one; the error
    /// names the first prime outside {2, 3, 5}.
    pub fn reciprocal(&self) -> Result<Sexa> {
        if self.is_zero() {
            return Err(Error::ZeroInput { op: "reciprocal" });
        }
        let offending = first_irregular_factor(self.numer().magnitude())
            .or_else(|| first_irregular_factor(self.denom().magnitude()));
        if let Some(factor) = offending {
            return Err(Error::IrregularDivisor {
                value: self.to_string(),
                factor,
            });
        }
        Ok(self.exact_inverse())
    }

    /// `1/x` with no regularity check. Panics on zero.
    pub fn exact_inverse(&self) -> Sexa {
        Sexa(self.0.recip())
    }

    /// `self / divisor` as an exact rational, regular or not.
    pub fn exact_quotient(&self, divisor: &Sexa) -> Result<Sexa> {
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Sexa(&self.0 / &divisor.0))
    }

    pub fn square(&self) -> Sexa {
        Sexa(&self.0 * &self.0)
    }

    pub fn halve(&self) -> Sexa {
        Sexa(&self.0 / BigInt::from(2))
    }

    /// The nonnegative exact square root. Never approximates.
    pub fn sqrt_exact(&self) -> Result<Sexa> {
        if self.is_negative() {
            return Err(Error::NegativeRadicand {
                value: self.to_string(),
            });
        }
        let not_square = || Error::NotAPerfectSquare {
            value: self.to_string(),
        };
        let num = exact_isqrt(self.numer().magnitude()).ok_or_else(not_square)?;
        let den = exact_isqrt(self.denom().magnitude()).ok_or_else(not_square)?;
        Ok(Sexa::from_ratio(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        ))
    }

    /// Integer part toward zero and the remaining nonnegative fraction of `|x|`.
    pub(crate) fn split_abs(&self) -> (BigUint, BigRational) {
        let a = self.0.abs();
        let whole = a.trunc();
        let frac = &a - &whole;
        (whole.to_integer().magnitude().clone(), frac)
    }
}

impl fmt::Display for Sexa {
    /// Canonical sexagesimal form when one exists, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render() {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str(&self.render_fraction()),
        }
    }
}

impl fmt::Debug for Sexa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sexa({self})")
    }
}

impl FromStr for Sexa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sexa::parse(s)
    }
}

impl From<i64> for Sexa {
    fn from(n: i64) -> Self {
        Sexa::from_integer(n)
    }
}

impl From<BigRational> for Sexa {
    fn from(r: BigRational) -> Self {
        Sexa(r)
    }
}

impl Serialize for Sexa {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sexa {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Sexa::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Neg for Sexa {
    type Output = Sexa;
    fn neg(self) -> Sexa {
        Sexa(-self.0)
    }
}

impl Neg for &Sexa {
    type Output = Sexa;
    fn neg(self) -> Sexa {
        Sexa(-&self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Sexa> for Sexa {
            type Output = Sexa;
            fn $method(self, rhs: Sexa) -> Sexa {
                Sexa(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Sexa> for Sexa {
            type Output = Sexa;
            fn $method(self, rhs: &Sexa) -> Sexa {
                Sexa(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Sexa> for &Sexa {
            type Output = Sexa;
            fn $method(self, rhs: Sexa) -> Sexa {
                Sexa((&self.0).$method(rhs.0))
            }
        }
        impl $tr<&Sexa> for &Sexa {
            type Output = Sexa;
            fn $method(self, rhs: &Sexa) -> Sexa {
                Sexa((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::iter::Sum for Sexa {
    fn sum<I: Iterator<Item = Sexa>>(iter: I) -> Sexa {
        iter.fold(Sexa::zero(), |acc, x| acc + x)
    }
}
