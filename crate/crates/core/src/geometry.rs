//! Canal cross-sections and volumes.
//!
//! A canal is a prism: its volume is the length times the cross-section. The
//! cross-section mixes a horizontal breadth in nindan with a depth in kùš, so
//! it is a [`Dimension::NindanKus`] quantity.

use crate::error::{AtStep, Error, ProcedureError, Result};
use crate::procedures::{LineTag, StepTrace};
use crate::sexcore::Sexa;
use crate::units::{qdiv, qmul, Dimension, Quantity};

/// Ratio of the reserved-water depth to the canal depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanalConstant {
    ratio: Sexa,
}

impl CanalConstant {
    /// Accepts `0 < ratio ≤ 1`.
    pub fn new(ratio: Sexa) -> Result<Self> {
        if !ratio.is_positive() || ratio > Sexa::one() {
            return Err(Error::MalformedProblem(format!(
                "canal constant must lie in (0, 1], got {ratio}"
            )));
        }
        Ok(CanalConstant { ratio })
    }

    /// 0;48, the constant of a small canal.
    pub fn small_canal() -> Self {
        CanalConstant {
            ratio: Sexa::from_ratio(4, 5),
        }
    }

    pub fn ratio(&self) -> &Sexa {
        &self.ratio
    }
}

impl Default for CanalConstant {
    fn default() -> Self {
        CanalConstant::small_canal()
    }
}

/// A canal with a trapezoidal cross-section, wider at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrapezoidCanal {
    pub upper_breadth: Quantity,
    pub lower_breadth: Quantity,
    pub length: Quantity,
    pub depth: Quantity,
}

impl TrapezoidCanal {
    pub fn new(upper: Quantity, lower: Quantity, length: Quantity, depth: Quantity) -> Result<Self> {
        let u = positive("upper breadth", &upper, Dimension::LengthNindan)?;
        let v = positive("lower breadth", &lower, Dimension::LengthNindan)?;
        positive("length", &length, Dimension::LengthNindan)?;
        positive("depth", &depth, Dimension::LengthKus)?;
        if u < v {
            return Err(Error::InconsistentConstraint(format!(
                "upper breadth {u} is narrower than lower breadth {v}"
            )));
        }
        Ok(TrapezoidCanal {
            upper_breadth: upper,
            lower_breadth: lower,
            length,
            depth,
        })
    }

    pub fn cross_section(&self) -> Quantity {
        trapezoid_cross_section(&self.upper_breadth, &self.lower_breadth, &self.depth)
            .expect("validated on construction")
    }

    pub fn volume(&self) -> Quantity {
        prism_volume(&self.cross_section(), &self.length).expect("validated on construction")
    }
}

/// A canal with a rectangular cross-section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectCanal {
    pub length: Quantity,
    pub width: Quantity,
    pub depth: Quantity,
}

impl RectCanal {
    pub fn new(length: Quantity, width: Quantity, depth: Quantity) -> Result<Self> {
        positive("length", &length, Dimension::LengthNindan)?;
        positive("width", &width, Dimension::LengthNindan)?;
        positive("depth", &depth, Dimension::LengthKus)?;
        Ok(RectCanal { length, width, depth })
    }

    pub fn cross_section(&self) -> Quantity {
        qmul(&self.width, &self.depth).expect("nindan times kus")
    }

    pub fn volume(&self) -> Quantity {
        qmul(&self.cross_section(), &self.length).expect("section times nindan")
    }

    /// The same canal filled to `c` of its depth.
    pub fn reserved_water(&self, c: &CanalConstant) -> RectCanal {
        RectCanal {
            length: self.length.clone(),
            width: self.width.clone(),
            depth: self.depth.scale(c.ratio()),
        }
    }
}

fn positive<'a>(name: &'static str, q: &'a Quantity, dim: Dimension) -> Result<&'a Sexa> {
    let m = q.expect_dim(name, dim)?;
    if !m.is_positive() {
        return Err(Error::NonPositiveDimension {
            name,
            value: m.to_string(),
        });
    }
    Ok(m)
}

/// `S = ½·z·(u + v)`.
pub fn trapezoid_cross_section(u: &Quantity, v: &Quantity, z: &Quantity) -> Result<Quantity> {
    positive("upper breadth", u, Dimension::LengthNindan)?;
    positive("lower breadth", v, Dimension::LengthNindan)?;
    positive("depth", z, Dimension::LengthKus)?;
    let sum = u.checked_add(v)?;
    let s = qmul(z, &sum)?;
    Ok(Quantity::new(s.magnitude.halve(), s.dim))
}

/// `V = x·S`.
pub fn prism_volume(s: &Quantity, x: &Quantity) -> Result<Quantity> {
    positive("cross-section", s, Dimension::NindanKus)?;
    positive("length", x, Dimension::LengthNindan)?;
    qmul(x, s)
}

/// `V' = c·V`; with the small-canal constant this is four fifths of the volume.
pub fn reserved_water_volume(v: &Quantity, c: &CanalConstant) -> Result<Quantity> {
    let m = v.expect_dim("reserved_water_volume", Dimension::VolumeSar)?;
    if m.is_negative() {
        return Err(Error::NonPositiveDimension {
            name: "volume",
            value: m.to_string(),
        });
    }
    Ok(v.scale(c.ratio()))
}

/// `x = V/S`, dividing by the reciprocal of the cross-section.
pub fn length_from_volume(v: &Quantity, s: &Quantity) -> Result<Quantity> {
    positive("volume", v, Dimension::VolumeSar)?;
    positive("cross-section", s, Dimension::NindanKus)?;
    qdiv(v, s)
}

/// The relations between the breadths and the depth of the obverse canal:
///
/// ```text
/// v = u/2 + excess
/// z = kus_per_nindan · (depth_base + excess_share · (u − v))
/// ```
///
/// Defaults are the tablet's: excess 0;30, depth base 0;30, share 1/12 and
/// 12 kùš per nindan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanalConstraints {
    pub excess: Sexa,
    pub depth_base: Sexa,
    pub excess_share: Sexa,
    pub kus_per_nindan: Sexa,
}

impl Default for CanalConstraints {
    fn default() -> Self {
        CanalConstraints {
            excess: Sexa::from_ratio(1, 2),
            depth_base: Sexa::from_ratio(1, 2),
            excess_share: Sexa::from_ratio(1, 12),
            kus_per_nindan: Sexa::from(12),
        }
    }
}

/// Labels recorded by [`CanalConstraints::apply_traced`], in order.
pub const CONSTRAINT_LABELS: [&str; 6] =
    ["half_u", "v", "breadth_excess", "excess_share", "depth_sum", "z"];

impl CanalConstraints {
    /// `(v, z)` for upper breadth `u`.
    pub fn apply(&self, u: &Sexa) -> Result<(Sexa, Sexa)> {
        let mut scratch = StepTrace::new();
        self.apply_traced(u, &mut scratch).map_err(|e| e.source)
    }

    /// As [`apply`](Self::apply), recording the steps of obverse lines 33–36.
    pub fn apply_traced(
        &self,
        u: &Sexa,
        t: &mut StepTrace,
    ) -> std::result::Result<(Sexa, Sexa), ProcedureError> {
        if !u.is_positive() {
            return Err(Error::NonPositiveDimension {
                name: "upper breadth",
                value: u.to_string(),
            })
            .at("half_u");
        }
        let half_u = t.record("half_u", u.halve(), LineTag::obv(33));
        let v = t.record("v", &half_u + &self.excess, LineTag::obv(34));
        if *u < v {
            return Err(Error::InconsistentConstraint(format!(
                "upper breadth {u} is narrower than lower breadth {v}"
            )))
            .at("v");
        }
        let excess = t.record("breadth_excess", u - &v, LineTag::Derived);
        let share = t.record("excess_share", &excess * &self.excess_share, LineTag::obv(35));
        let depth_sum = t.record("depth_sum", &self.depth_base + &share, LineTag::obv(35));
        let z = t.record("z", &depth_sum * &self.kus_per_nindan, LineTag::obv(36));
        Ok((v, z))
    }
}

/// `(v, z)` from the upper breadth under the tablet's default constraints.
pub fn breadths_from_constraints(u: &Sexa) -> Result<(Sexa, Sexa)> {
    CanalConstraints::default().apply(u)
}

/// Labels recorded by [`depth_from_labor`], in order.
pub const LABOR_DEPTH_LABELS: [&str; 11] = [
    "recip_reach",
    "water_per_nindan",
    "recip_workers",
    "water_per_worker",
    "wet_section",
    "recip_constant",
    "section",
    "recip_width",
    "z",
    "z_water",
    "wet_ratio",
];

/// Depth of a rectangular canal from the reserved water, the length each
/// worker digs, the number of workers and the width.
///
/// This follows the restored statement of the reverse problem (lines 25–34):
/// the water over one nindan of length is shared out among the workers, the
/// share of one worker over one nindan is the wetted cross-section, dividing
/// by the canal constant gives the full cross-section, and dividing by the
/// width gives the depth. The restoration itself is conjectural; the
/// arithmetic is what the tablet shows.
pub fn depth_from_labor(
    total_water: &Quantity,
    reach_length: &Sexa,
    workers: &Quantity,
    width: &Quantity,
    c: &CanalConstant,
) -> std::result::Result<(Quantity, Quantity, StepTrace), ProcedureError> {
    positive("water", total_water, Dimension::VolumeSar).at("recip_reach")?;
    positive("workers", workers, Dimension::WorkerCount).at("recip_workers")?;
    positive("width", width, Dimension::LengthNindan).at("recip_width")?;
    if !reach_length.is_positive() {
        return Err(Error::NonPositiveDimension {
            name: "reach length",
            value: reach_length.to_string(),
        })
        .at("recip_reach");
    }

    let mut t = StepTrace::new();
    let recip_reach = t.record("recip_reach", reach_length.reciprocal().at("recip_reach")?, LineTag::rev(27));
    let per_nindan = t.record_quantity(
        "water_per_nindan",
        total_water.scale(&recip_reach),
        LineTag::rev(28),
    );
    let recip_workers = t.record(
        "recip_workers",
        workers.magnitude.reciprocal().at("recip_workers")?,
        LineTag::rev(29),
    );
    let per_worker = t.record_quantity(
        "water_per_worker",
        per_nindan.scale(&recip_workers),
        LineTag::rev(30),
    );
    // One worker's water over a slice one nindan long is the wetted section.
    let unit_length = Quantity::nindan(Sexa::one());
    let wet_section = t.record_quantity(
        "wet_section",
        qdiv(&per_worker, &unit_length).at("wet_section")?,
        LineTag::Derived,
    );
    let recip_c = t.record("recip_constant", c.ratio().reciprocal().at("recip_constant")?, LineTag::rev(32));
    let section = t.record_quantity("section", wet_section.scale(&recip_c), LineTag::rev(33));
    let recip_width = t.record(
        "recip_width",
        width.magnitude.reciprocal().at("recip_width")?,
        LineTag::rev(33),
    );
    let depth = Quantity::new(&section.magnitude * &recip_width, Dimension::LengthKus);
    let depth = t.record_quantity("z", depth, LineTag::rev(34));
    let water_depth = t.record_quantity("z_water", depth.scale(c.ratio()), LineTag::Derived);
    let ratio = wet_section
        .magnitude
        .exact_quotient(&section.magnitude)
        .at("wet_ratio")?;
    t.record("wet_ratio", ratio, LineTag::Derived);
    Ok((depth, water_depth, t))
}
