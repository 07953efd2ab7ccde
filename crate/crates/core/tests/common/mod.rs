//! Strategies and independent oracles shared by the integration tests.
//!
//! The oracles work on plain `BigRational`s and machine integers so that they
//! share no code with the arithmetic under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sexakit::Sexa;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

/// `2^a · 3^b · 5^c` with small exponents.
pub fn smooth_int(max_exp: u32) -> impl Strategy<Value = BigInt> {
    (0..=max_exp, 0..=max_exp, 0..=max_exp).prop_map(|(a, b, c)| {
        num_traits::pow(big(2), a as usize) * num_traits::pow(big(3), b as usize) * num_traits::pow(big(5), c as usize)
    })
}

/// Nonzero values whose numerator and denominator are both 60-smooth.
pub fn regular() -> impl Strategy<Value = Sexa> {
    (smooth_int(8), smooth_int(8), any::<bool>()).prop_map(|(n, d, neg)| {
        let v = Sexa::from_ratio(n, d);
        if neg {
            -v
        } else {
            v
        }
    })
}

pub fn positive_regular() -> impl Strategy<Value = Sexa> {
    (smooth_int(6), smooth_int(6)).prop_map(|(n, d)| Sexa::from_ratio(n, d))
}

/// Values with a finite sexagesimal expansion.
pub fn terminating() -> impl Strategy<Value = Sexa> {
    (-2_000_000i64..2_000_000, smooth_int(6)).prop_map(|(n, d)| Sexa::from_ratio(n, d))
}

pub fn positive_terminating() -> impl Strategy<Value = Sexa> {
    (1i64..2_000_000, smooth_int(6)).prop_map(|(n, d)| Sexa::from_ratio(n, d))
}

pub fn nonnegative_terminating() -> impl Strategy<Value = Sexa> {
    (0i64..2_000_000, smooth_int(6)).prop_map(|(n, d)| Sexa::from_ratio(n, d))
}

/// Any rational with a moderate denominator.
pub fn rational() -> impl Strategy<Value = Sexa> {
    (-1_000_000i64..1_000_000, 1i64..10_000).prop_map(|(n, d)| Sexa::from_ratio(n, d))
}

/// A literal as written, possibly with redundant zeros, plus its parts.
#[derive(Debug, Clone)]
pub struct Literal {
    pub text: String,
    pub negative: bool,
    pub int: Vec<u8>,
    pub frac: Vec<u8>,
}

pub fn literal() -> impl Strategy<Value = Literal> {
    (
        any::<bool>(),
        prop::collection::vec(0u8..60, 1..5),
        prop::option::of(prop::collection::vec(0u8..60, 1..5)),
        prop::collection::vec(any::<bool>(), 8),
        any::<bool>(),
    )
        .prop_map(|(negative, int, frac, pad, colon)| {
            let group = |i: usize, d: u8| {
                if d < 10 && pad[i % pad.len()] {
                    format!("0{d}")
                } else {
                    d.to_string()
                }
            };
            let join = |ds: &[u8], off: usize| {
                ds.iter()
                    .enumerate()
                    .map(|(i, &d)| group(i + off, d))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let mut text = String::new();
            if negative {
                text.push('-');
            }
            text += &join(&int, 0);
            if let Some(f) = &frac {
                text.push(if colon { ':' } else { ';' });
                text += &join(f, int.len());
            }
            Literal {
                text,
                negative,
                int,
                frac: frac.unwrap_or_default(),
            }
        })
}

/// Exact value of a literal's parts.
pub fn literal_value(l: &Literal) -> BigRational {
    let mut v = BigRational::zero();
    for &d in &l.int {
        v = v * ratio(60, 1) + ratio(d as i64, 1);
    }
    let mut scale = BigRational::one();
    for &d in &l.frac {
        scale /= ratio(60, 1);
        v += ratio(d as i64, 1) * &scale;
    }
    if l.negative {
        -v
    } else {
        v
    }
}

/// Canonical spelling computed from the digit lists alone.
pub fn canonical_oracle(l: &Literal) -> String {
    let mut int: &[u8] = &l.int;
    while int.len() > 1 && int[0] == 0 {
        int = &int[1..];
    }
    let mut frac: &[u8] = &l.frac;
    while let [rest @ .., 0] = frac {
        frac = rest;
    }
    let join = |ds: &[u8]| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
    let zero = int == [0] && frac.is_empty();
    let mut s = String::new();
    if l.negative && !zero {
        s.push('-');
    }
    s += &join(int);
    if !frac.is_empty() {
        s.push(';');
        s += &join(frac);
    }
    s
}

/// True when `n > 0` has no prime factor other than 2, 3 and 5, found by
/// factoring `n` completely by trial division.
pub fn brute_force_smooth(n: u64) -> bool {
    assert!(n > 0);
    let mut rest = n;
    let mut p = 2;
    let mut largest = 1;
    while p * p <= rest {
        while rest.is_multiple_of(p) {
            largest = largest.max(p);
            rest /= p;
        }
        p += 1;
    }
    if rest > 1 {
        largest = largest.max(rest);
    }
    largest <= 5
}

/// Nonnegative rational square root, if one exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// `(B + √(B² + 4AC)) / 2A` for `A·u² − B·u = C`.
pub fn quadratic_oracle(a: &BigRational, b: &BigRational, c: &BigRational) -> Option<BigRational> {
    let four = ratio(4, 1);
    let disc = b * b + four * a * c;
    let root = rational_sqrt(&disc)?;
    Some((b + root) / (ratio(2, 1) * a))
}

pub fn to_big(x: &Sexa) -> BigRational {
    x.as_rational().clone()
}

pub fn from_big(x: BigRational) -> Sexa {
    Sexa::from_rational(x)
}

/// Property checks shared by the property suite and the acceptance suite.
pub mod checks {
    use super::*;
    use proptest::test_runner::TestCaseError;
    use sexakit::geometry::{length_from_volume, prism_volume};
    use sexakit::procedures::{
        audit_quadratic_trace, audit_sum_difference_trace, solve_quadratic_scribal,
        solve_sum_difference, QuadraticProblem, SumDifferenceProblem,
    };
    use sexakit::sexcore::canonical;
    use sexakit::Quantity;

    type Check = Result<(), TestCaseError>;

    pub fn reciprocal_inverts(x: &Sexa) -> Check {
        let r = x.reciprocal().map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(x * &r, Sexa::one());
        prop_assert_eq!(to_big(&r), BigRational::one() / to_big(x));
        Ok(())
    }

    pub fn sqrt_of_square(x: &Sexa) -> Check {
        let root = x.square().sqrt_exact().map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(to_big(&root), to_big(x).abs());
        Ok(())
    }

    pub fn literal_round_trip(l: &Literal) -> Check {
        let x = Sexa::parse(&l.text).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(to_big(&x), literal_value(l));
        let want = canonical_oracle(l);
        prop_assert_eq!(x.render().unwrap(), want.clone());
        prop_assert_eq!(canonical(&l.text).unwrap(), want);
        Ok(())
    }

    pub fn render_parse(x: &Sexa) -> Check {
        let text = x.render().map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&Sexa::parse(&text).unwrap(), x);
        Ok(())
    }

    /// Builds `A·u² − B·u = C` from a chosen `u` and compares the solver with
    /// the quadratic formula.
    pub fn quadratic_matches_formula(a: &Sexa, b: &Sexa, u: &Sexa) -> Check {
        let c = a * u.square() - b * u;
        let p = QuadraticProblem::new(a.clone(), b.clone(), c.clone()).unwrap();
        let (got, trace) = solve_quadratic_scribal(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let want = quadratic_oracle(&to_big(a), &to_big(b), &to_big(&c)).expect("square discriminant");
        prop_assert_eq!(to_big(&got), want);
        prop_assert!(audit_quadratic_trace(&p, &trace).is_ok());
        Ok(())
    }

    pub fn sum_difference_reconstructs(y: &Sexa, diff: &Sexa) -> Check {
        let x = y + diff;
        let p = SumDifferenceProblem {
            diff: diff.clone(),
            prod: &x * y,
        };
        let (gx, gy, trace) = solve_sum_difference(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(gx >= gy);
        prop_assert_eq!(&gx - &gy, p.diff.clone());
        prop_assert_eq!(&gx * &gy, p.prod.clone());
        prop_assert_eq!(to_big(&gx), to_big(&x));
        prop_assert!(audit_sum_difference_trace(&p, &trace).is_ok());
        Ok(())
    }

    pub fn volume_inverts(section: &Sexa, length: &Sexa) -> Check {
        let s = Quantity::nindan_kus(section.clone());
        let x = Quantity::nindan(length.clone());
        let v = prism_volume(&s, &x).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(to_big(&v.magnitude), to_big(section) * to_big(length));
        let back = length_from_volume(&v, &s).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, x);
        Ok(())
    }

    pub fn regularity_matches_factoring(n: u64) -> Check {
        let x = Sexa::from_integer(n);
        prop_assert_eq!(x.is_regular().unwrap(), brute_force_smooth(n), "n = {}", n);
        Ok(())
    }
}
