//! The solution chains of the canal and hole problems, tagged with the tablet
//! lines on which each value is written.

use crate::error::{AtStep, Error, ProcedureError, Result};
use crate::geometry::{length_from_volume, trapezoid_cross_section, CanalConstraints};
use crate::procedures::{
    apply_identity_sum_of_squares, divide_by_recognition, solve_quadratic_scribal,
    solve_sum_difference, LineTag, QuadraticProblem, StepTrace, SumDifferenceProblem,
};
use crate::sexcore::Sexa;
use crate::units::{Dimension, Quantity};

/// Steps after the breadth and depth relations: the trapezoid check.
pub const QUADRATIC_CANAL_TAIL: [&str; 5] =
    ["breadth_sum", "half_breadth_sum", "S", "recip_S", "x"];

/// The trapezoidal canal whose upper breadth solves a false-area quadratic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCanal {
    pub problem: QuadraticProblem,
    pub constraints: CanalConstraints,
    pub volume: Quantity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCanalSolution {
    pub u: Quantity,
    pub v: Quantity,
    pub z: Quantity,
    pub s: Quantity,
    pub x: Quantity,
    pub trace: StepTrace,
}

fn obverse_tag(label: &str) -> LineTag {
    match label {
        "half_B" => LineTag::obv(26),
        "half_B_sq" => LineTag::obv(27),
        "AC" => LineTag::obv(21),
        "radicand" | "root" => LineTag::obv(29),
        "root_plus" => LineTag::obv(31),
        "u" => LineTag::obv(33),
        _ => LineTag::Derived,
    }
}

/// Solves for the upper breadth, derives the lower breadth and depth, then
/// recomputes the cross-section and the length from the volume.
///
/// The recomputed `S` and `x` are checked against the plain geometry
/// functions; a disagreement is a `VerificationFailed` error.
pub fn solve_quadratic_canal(
    c: &QuadraticCanal,
) -> std::result::Result<QuadraticCanalSolution, ProcedureError> {
    let volume = c
        .volume
        .expect_dim("volume", Dimension::VolumeSar)
        .at("x")?
        .clone();
    let (u, quad_trace) = solve_quadratic_scribal(&c.problem)?;
    let mut t = StepTrace::new();
    t.absorb(quad_trace, obverse_tag);
    let (v, z) = c.constraints.apply_traced(&u, &mut t)?;

    let sum = t.record("breadth_sum", &u + &v, LineTag::obv(37));
    let half = t.record("half_breadth_sum", sum.halve(), LineTag::obv(38));
    let s = t.record_quantity("S", Quantity::nindan_kus(&half * &z), LineTag::obv(39));
    let recip_s = t.record("recip_S", s.magnitude.reciprocal().at("recip_S")?, LineTag::obv(39));
    let x = t.record_quantity("x", Quantity::nindan(&recip_s * &volume), LineTag::obv(40));

    let (u, v, z) = (Quantity::nindan(u), Quantity::nindan(v), Quantity::kus(z));
    let s_geom = trapezoid_cross_section(&u, &v, &z).at("S")?;
    if s_geom != s {
        return Err(Error::VerificationFailed(format!("cross-section {s} but trapezoid gives {s_geom}")))
            .at("S");
    }
    let x_geom = length_from_volume(&c.volume, &s).at("x")?;
    if x_geom != x {
        return Err(Error::VerificationFailed(format!("length {x} but volume gives {x_geom}"))).at("x");
    }
    Ok(QuadraticCanalSolution {
        u,
        v,
        z,
        s,
        x,
        trace: t,
    })
}

/// The hole-and-canal system:
///
/// ```text
/// x − y = diff
/// z = depth_factor · (x − y)
/// z·(x² + y²) + x·y·(z + 1) + (x² + y²)/thirteenth = rhs
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectCanalParams {
    pub diff: Sexa,
    pub depth_factor: Sexa,
    pub thirteenth: Sexa,
    pub rhs: Sexa,
}

impl RectCanalParams {
    /// The tablet's values: 0;10, 12, 13 and 1;15.
    pub fn tablet() -> Self {
        RectCanalParams {
            diff: Sexa::from_ratio(1, 6),
            depth_factor: Sexa::from(12),
            thirteenth: Sexa::from(13),
            rhs: Sexa::from_ratio(5, 4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectCanalSolution {
    pub x: Sexa,
    pub y: Sexa,
    pub z: Sexa,
    pub xy: Sexa,
    pub trace: StepTrace,
}

/// Labels of the general chain, in order.
pub const RECT_CANAL_LABELS: [&str; 24] = [
    "rhs_x13",
    "diff_sq",
    "reduced_rhs",
    "recip_diff",
    "recip_depth_factor",
    "recip_z",
    "z",
    "rhs_over_z",
    "diff_sq_again",
    "diff_sq_x13",
    "xy_rhs",
    "recip_z_x13",
    "recip_z_x2",
    "coeff_partial",
    "three_x13",
    "xy_coeff",
    "xy",
    "half_diff",
    "half_diff_sq",
    "radicand",
    "root",
    "x",
    "y",
    "sum_of_squares",
];

/// Labels when `diff = 0`, where `z = 0` and no reciprocal of it exists.
pub const RECT_CANAL_DEGENERATE_LABELS: [&str; 13] = [
    "rhs_x13",
    "diff_sq",
    "reduced_rhs",
    "z",
    "xy_coeff",
    "xy",
    "half_diff",
    "half_diff_sq",
    "radicand",
    "root",
    "x",
    "y",
    "sum_of_squares",
];

fn reverse_tag(label: &str) -> LineTag {
    let uncertain = |line| LineTag::Line {
        side: crate::procedures::Side::Reverse,
        line,
        uncertain: true,
    };
    match label {
        "half_diff" => uncertain(21),
        "half_diff_sq" => LineTag::rev(21),
        "radicand" => LineTag::rev(22),
        "root" => uncertain(23),
        "x" => LineTag::rev(23),
        "y" => LineTag::rev(24),
        _ => LineTag::Derived,
    }
}

/// Residuals of the three equations at `(x, y, z)`; all zero at a solution.
pub fn rect_canal_residuals(p: &RectCanalParams, x: &Sexa, y: &Sexa, z: &Sexa) -> Result<[Sexa; 3]> {
    let squares = x.square() + y.square();
    let xy = x * y;
    let third = z * &squares + &xy * (z + Sexa::one()) + squares.exact_quotient(&p.thirteenth)?;
    Ok([x - y - &p.diff, z - &p.depth_factor * (x - y), third - &p.rhs])
}

/// Solves the system the way the tablet does: scale by thirteen, eliminate
/// `x² + y²` with the identity `(x − y)² + 2xy`, divide through by `z` using
/// its reciprocal, find `xy` by recognition, then split `xy` and `x − y`
/// into the two sides.
///
/// The `(x − y)²` term is kept unsimplified, as on the tablet. With
/// `diff = 0` the depth vanishes and `xy` comes straight from `rhs`.
pub fn replay_smt24_p2(
    p: &RectCanalParams,
) -> std::result::Result<RectCanalSolution, ProcedureError> {
    if p.diff.is_negative() {
        return Err(Error::MalformedProblem(format!("difference {} is negative", p.diff))).at("diff_sq");
    }
    if !p.depth_factor.is_positive() {
        return Err(Error::NonPositiveDimension {
            name: "depth factor",
            value: p.depth_factor.to_string(),
        })
        .at("recip_depth_factor");
    }
    if !p.thirteenth.is_positive() {
        return Err(Error::NonPositiveDimension {
            name: "thirteenth",
            value: p.thirteenth.to_string(),
        })
        .at("rhs_x13");
    }
    let t13 = &p.thirteenth;
    let mut t = StepTrace::new();
    let rhs_x13 = t.record("rhs_x13", &p.rhs * t13, LineTag::rev(7));
    let diff_sq = t.record("diff_sq", p.diff.square(), LineTag::rev(8));
    let reduced = t.record("reduced_rhs", &rhs_x13 - &diff_sq, LineTag::rev(9));

    let (xy, degenerate) = if p.diff.is_zero() {
        let d = LineTag::Derived;
        t.record("z", Sexa::zero(), d);
        let coeff = t.record("xy_coeff", t13 + Sexa::from(2), d);
        let xy = t.record("xy", divide_by_recognition(&reduced, &coeff).at("xy")?, d);
        (xy, true)
    } else {
        let recip_diff = t.record("recip_diff", p.diff.reciprocal().at("recip_diff")?, LineTag::rev(10));
        let recip_k = t.record(
            "recip_depth_factor",
            p.depth_factor.reciprocal().at("recip_depth_factor")?,
            LineTag::rev(10),
        );
        let recip_z = t.record("recip_z", &recip_diff * &recip_k, LineTag::rev(11));
        t.record("z", &p.depth_factor * &p.diff, LineTag::Derived);
        let rhs_over_z = t.record("rhs_over_z", &recip_z * &reduced, LineTag::rev(12));
        let diff_sq_again = t.record("diff_sq_again", p.diff.square(), LineTag::rev(12));
        let diff_sq_x13 = t.record("diff_sq_x13", &diff_sq_again * t13, LineTag::rev(13));
        let xy_rhs = t.record("xy_rhs", &rhs_over_z - &diff_sq_x13, LineTag::rev(14));
        let rz13 = t.record("recip_z_x13", &recip_z * t13, LineTag::rev(15));
        let rz2 = t.record("recip_z_x2", &recip_z * Sexa::from(2), LineTag::rev(16));
        let partial = t.record("coeff_partial", &rz2 + &rz13, LineTag::rev(17));
        let three = t.record("three_x13", t13 * Sexa::from(3), LineTag::rev(18));
        let coeff = t.record("xy_coeff", &partial + &three, LineTag::rev(18));
        let xy = t.record("xy", divide_by_recognition(&xy_rhs, &coeff).at("xy")?, LineTag::rev(20));
        (xy, false)
    };

    let sd = SumDifferenceProblem {
        diff: p.diff.clone(),
        prod: xy.clone(),
    };
    let (x, y, sd_trace) = solve_sum_difference(&sd)?;
    if degenerate {
        t.absorb(sd_trace, |_| LineTag::Derived);
    } else {
        t.absorb(sd_trace, reverse_tag);
    }
    t.record("sum_of_squares", apply_identity_sum_of_squares(&p.diff, &xy), LineTag::Derived);

    let z = t.value("z").expect("recorded above").clone();
    let residuals = rect_canal_residuals(p, &x, &y, &z).at("y")?;
    if let Some(i) = residuals.iter().position(|r| !r.is_zero()) {
        return Err(Error::VerificationFailed(format!(
            "equation {} leaves residual {}",
            i + 1,
            residuals[i]
        )))
        .at("y");
    }
    Ok(RectCanalSolution { x, y, z, xy, trace: t })
}
