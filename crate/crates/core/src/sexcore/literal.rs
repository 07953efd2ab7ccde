//! The numeral grammar:
//!
//! ```text
//! literal := ["-"] group ("," group)* [";" group ("," group)*]
//! group   := 1-2 decimal digits valued 0..=59
//! ```
//!
//! A `:` is read as `;`, the way the transliteration writes `14:3,45`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::number::Sexa;
use crate::error::{Error, Result};

/// Sign, base-60 digits and radix position of a terminating [`Sexa`].
///
/// In canonical form the integer part has no leading zero digit (except the
/// lone `0`) and the fraction has no trailing zero digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SexaDigits {
    pub negative: bool,
    pub digits: Vec<u8>,
    /// Number of leading entries of `digits` that form the integer part.
    pub radix_offset: usize,
}

impl SexaDigits {
    pub fn integer_digits(&self) -> &[u8] {
        &self.digits[..self.radix_offset]
    }

    pub fn fraction_digits(&self) -> &[u8] {
        &self.digits[self.radix_offset..]
    }

    pub fn is_canonical(&self) -> bool {
        let int = self.integer_digits();
        let frac = self.fraction_digits();
        let digits_ok = self.digits.iter().all(|&d| d < 60);
        let lead_ok = !int.is_empty() && (int.len() == 1 || int[0] != 0);
        let trail_ok = frac.last().is_none_or(|&d| d != 0);
        let zero_unsigned = !(self.negative && int == [0] && frac.is_empty());
        digits_ok && lead_ok && trail_ok && zero_unsigned
    }

    /// Drops redundant zeros at both ends.
    pub fn canonicalize(mut self) -> SexaDigits {
        while self.radix_offset > 1 && self.digits[0] == 0 {
            self.digits.remove(0);
            self.radix_offset -= 1;
        }
        if self.radix_offset == 0 {
            self.digits.insert(0, 0);
            self.radix_offset = 1;
        }
        while self.digits.len() > self.radix_offset && self.digits.last() == Some(&0) {
            self.digits.pop();
        }
        if self.digits == [0] {
            self.negative = false;
        }
        self
    }

    pub fn to_sexa(&self) -> Sexa {
        let sixty = BigInt::from(60u32);
        let mut numer = BigInt::zero();
        for &d in &self.digits {
            numer = numer * &sixty + BigInt::from(d);
        }
        let frac_len = self.digits.len() - self.radix_offset;
        let denom = num_traits::pow(sixty, frac_len);
        let value = Sexa::from_ratio(numer, denom);
        if self.negative {
            -value
        } else {
            value
        }
    }

    pub fn from_sexa(x: &Sexa) -> Result<SexaDigits> {
        if !x.has_finite_expansion() {
            return Err(Error::NonTerminating {
                value: x.render_fraction(),
            });
        }
        let (whole, mut frac) = x.split_abs();

        let mut int_digits = Vec::new();
        let sixty = BigUint::from(60u32);
        let mut w = whole;
        while !w.is_zero() {
            let d = (&w % &sixty).to_u8().expect("digit below 60");
            int_digits.push(d);
            w /= &sixty;
        }
        if int_digits.is_empty() {
            int_digits.push(0);
        }
        int_digits.reverse();
        let radix_offset = int_digits.len();

        let mut digits = int_digits;
        let sixty_r = BigRational::from_integer(BigInt::from(60u32));
        // Terminates: the denominator is 60-smooth, so each step strips a factor.
        while !frac.is_zero() {
            frac *= &sixty_r;
            let d = frac.trunc();
            frac -= &d;
            digits.push(d.to_integer().to_u8().expect("digit below 60"));
        }

        Ok(SexaDigits {
            negative: x.is_negative(),
            digits,
            radix_offset,
        })
    }
}

impl fmt::Display for SexaDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        write_groups(f, self.integer_digits())?;
        if self.radix_offset < self.digits.len() {
            f.write_str(";")?;
            write_groups(f, self.fraction_digits())?;
        }
        Ok(())
    }
}

fn write_groups(f: &mut fmt::Formatter<'_>, groups: &[u8]) -> fmt::Result {
    for (i, d) in groups.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

/// Parses `text` into its digit representation, keeping any redundant zeros.
pub fn parse_digits(text: &str) -> Result<SexaDigits> {
    let fail = |reason: String| Error::MalformedLiteral {
        literal: text.to_owned(),
        reason,
    };
    if text.is_empty() {
        return Err(fail("empty literal".into()));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let mut halves = body.split([';', ':']);
    let int_part = halves.next().unwrap_or("");
    let frac_part = halves.next();
    if halves.next().is_some() {
        return Err(fail("more than one radix point".into()));
    }

    let mut digits = parse_groups(int_part, &fail)?;
    let radix_offset = digits.len();
    if let Some(frac) = frac_part {
        digits.extend(parse_groups(frac, &fail)?);
    }
    Ok(SexaDigits {
        negative,
        digits,
        radix_offset,
    })
}

fn parse_groups(part: &str, fail: &impl Fn(String) -> Error) -> Result<Vec<u8>> {
    part.split(',')
        .map(|group| {
            if group.is_empty() {
                return Err(fail("empty digit group".into()));
            }
            if let Some(c) = group.chars().find(|c| !c.is_ascii_digit()) {
                return Err(fail(format!("unexpected character {c:?}")));
            }
            if group.len() > 2 {
                return Err(fail(format!("digit group {group:?} is longer than two places")));
            }
            let d: u8 = group.parse().expect("one or two ascii digits");
            if d >= 60 {
                return Err(fail(format!("digit {d} exceeds 59")));
            }
            Ok(d)
        })
        .collect()
}

pub fn parse(text: &str) -> Result<Sexa> {
    parse_digits(text).map(|d| d.to_sexa())
}

pub fn render(x: &Sexa) -> Result<String> {
    SexaDigits::from_sexa(x).map(|d| d.to_string())
}

/// The canonical spelling of a valid literal, e.g. `0,5;30,0` becomes `5;30`.
pub fn canonical(text: &str) -> Result<String> {
    Ok(parse_digits(text)?.canonicalize().to_string())
}
