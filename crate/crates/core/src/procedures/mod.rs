//! Scribal algorithms that record every intermediate value they compute.
//!
//! Each procedure follows the tablet's order of operations rather than a
//! normalized textbook form, so its trace can be compared line by line.

mod trace;

pub use trace::{LineTag, LineTagParseError, Side, Step, StepTrace};

use crate::error::{AtStep, Error, ProcedureError, Result};
use crate::sexcore::Sexa;

/// `A·u² − B·u = C`, the form the scribe solves. `A` is the "false area".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticProblem {
    pub a: Sexa,
    pub b: Sexa,
    pub c: Sexa,
}

impl QuadraticProblem {
    pub fn new(a: Sexa, b: Sexa, c: Sexa) -> Result<Self> {
        let p = QuadraticProblem { a, b, c };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !self.a.is_positive() {
            return Err(Error::MalformedProblem(format!(
                "leading coefficient must be positive, got {}",
                self.a
            )));
        }
        Ok(())
    }

    /// `A·u² − B·u − C`; zero exactly at a root.
    pub fn residual(&self, u: &Sexa) -> Sexa {
        &self.a * u.square() - &self.b * u - &self.c
    }
}

/// Trace labels of [`solve_quadratic_scribal`], in order.
pub const QUADRATIC_LABELS: [&str; 8] = [
    "half_B",
    "half_B_sq",
    "AC",
    "radicand",
    "root",
    "root_plus",
    "recip_A",
    "u",
];

/// Completing the square with the false area.
///
/// Multiplying through by `A` turns the equation into
/// `(A·u)² − 2·(B/2)·(A·u) = A·C`, so `A·u = B/2 + √((B/2)² + A·C)`. Only the
/// additive root is taken, as on the tablet. The final division is by the
/// reciprocal of `A`, which therefore has to be regular.
pub fn solve_quadratic_scribal(
    p: &QuadraticProblem,
) -> Result<(Sexa, StepTrace), ProcedureError> {
    p.validate().at("A")?;
    let d = LineTag::Derived;
    let mut t = StepTrace::new();

    let half_b = t.record("half_B", p.b.halve(), d);
    let half_b_sq = t.record("half_B_sq", half_b.square(), d);
    let ac = t.record("AC", &p.a * &p.c, d);
    let radicand = t.record("radicand", &half_b_sq + &ac, d);
    let root = t.record("root", radicand.sqrt_exact().at("root")?, d);
    let root_plus = t.record("root_plus", &root + &half_b, d);
    let recip_a = t.record("recip_A", p.a.reciprocal().at("recip_A")?, d);
    let u = t.record("u", &root_plus * &recip_a, d);

    if !p.residual(&u).is_zero() {
        return Err(ProcedureError {
            step: "u".into(),
            source: Error::VerificationFailed(format!("u = {u} does not satisfy the equation")),
        });
    }
    Ok((u, t))
}

/// Recomputes every step of a quadratic trace from the steps before it.
pub fn audit_quadratic_trace(p: &QuadraticProblem, t: &StepTrace) -> std::result::Result<(), String> {
    let v = |label: &str| t.value(label).ok_or_else(|| format!("missing step {label}"));
    let check = |label: &str, want: Sexa| -> std::result::Result<(), String> {
        let got = v(label)?;
        if *got == want {
            Ok(())
        } else {
            Err(format!("{label}: recorded {got}, recomputed {want}"))
        }
    };
    check("half_B", p.b.halve())?;
    check("half_B_sq", v("half_B")?.square())?;
    check("AC", &p.a * &p.c)?;
    check("radicand", v("half_B_sq")? + v("AC")?)?;
    let root = v("root")?;
    if root.is_negative() || root.square() != *v("radicand")? {
        return Err(format!("root: {root} is not the square root of the radicand"));
    }
    check("root_plus", root + v("half_B")?)?;
    if &p.a * v("recip_A")? != Sexa::one() {
        return Err("recip_A: not the reciprocal of A".into());
    }
    check("u", v("root_plus")? * v("recip_A")?)?;
    ordered(t, &QUADRATIC_LABELS)
}

/// Recovering two numbers from their difference and product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumDifferenceProblem {
    /// `x − y`
    pub diff: Sexa,
    /// `x·y`
    pub prod: Sexa,
}

pub const SUM_DIFFERENCE_LABELS: [&str; 6] =
    ["half_diff", "half_diff_sq", "radicand", "root", "x", "y"];

/// `(x + y)/2 = √(((x − y)/2)² + x·y)`, then `x` and `y` are the half-sum
/// plus and minus the half-difference.
pub fn solve_sum_difference(
    p: &SumDifferenceProblem,
) -> Result<(Sexa, Sexa, StepTrace), ProcedureError> {
    if p.diff.is_negative() {
        return Err(ProcedureError {
            step: "half_diff".into(),
            source: Error::MalformedProblem(format!("difference {} is negative", p.diff)),
        });
    }
    let d = LineTag::Derived;
    let mut t = StepTrace::new();
    let half = t.record("half_diff", p.diff.halve(), d);
    let half_sq = t.record("half_diff_sq", half.square(), d);
    let radicand = t.record("radicand", &half_sq + &p.prod, d);
    let root = t.record("root", radicand.sqrt_exact().at("root")?, d);
    let x = t.record("x", &root + &half, d);
    let y = t.record("y", &root - &half, d);
    Ok((x, y, t))
}

pub fn audit_sum_difference_trace(
    p: &SumDifferenceProblem,
    t: &StepTrace,
) -> std::result::Result<(), String> {
    let v = |label: &str| t.value(label).ok_or_else(|| format!("missing step {label}"));
    let same = |label: &str, want: Sexa| -> std::result::Result<(), String> {
        let got = v(label)?;
        (*got == want)
            .then_some(())
            .ok_or_else(|| format!("{label}: recorded {got}, recomputed {want}"))
    };
    same("half_diff", p.diff.halve())?;
    same("half_diff_sq", v("half_diff")?.square())?;
    same("radicand", v("half_diff_sq")? + &p.prod)?;
    let root = v("root")?;
    if root.is_negative() || root.square() != *v("radicand")? {
        return Err(format!("root: {root} is not the square root of the radicand"));
    }
    same("x", root + v("half_diff")?)?;
    same("y", root - v("half_diff")?)?;
    ordered(t, &SUM_DIFFERENCE_LABELS)
}

/// Quotient by inspection: "what should I put to `d` which gives me `n`?"
///
/// The divisor may be irregular; the quotient itself must have a finite
/// sexagesimal expansion.
pub fn divide_by_recognition(n: &Sexa, d: &Sexa) -> Result<Sexa> {
    if d.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let q = n.exact_quotient(d)?;
    if !q.has_finite_expansion() {
        return Err(Error::NoFiniteQuotient {
            numerator: n.to_string(),
            divisor: d.to_string(),
        });
    }
    Ok(q)
}

/// `x² + y²` from the difference and product: `(x − y)² + 2xy`.
pub fn apply_identity_sum_of_squares(diff: &Sexa, prod: &Sexa) -> Sexa {
    diff.square() + prod * Sexa::from(2)
}

fn ordered(t: &StepTrace, labels: &[&str]) -> std::result::Result<(), String> {
    let positions: Vec<_> = labels.iter().filter_map(|l| t.position(l)).collect();
    if positions.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err("steps are out of order".into())
    }
}
