//! Babylonian metrology: lengths in nindan and kùš, areas and volumes in sar.
//!
//! Horizontal lengths are measured in nindan and depths in kùš, so a canal
//! cross-section is naturally a nindan·kùš quantity and a volume-sar is
//! 1 nindan × 1 nindan × 1 kùš.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sexcore::Sexa;

/// Kùš per nindan, "12 of the depth".
pub const KUS_PER_NINDAN: i64 = 12;
/// Volume-sar in one šár (saros), 1,0,0.
pub const VOLUME_SAR_PER_SAR60: i64 = 3600;
/// Volume-sar in one šūši, 1,0.
pub const VOLUME_SAR_PER_SUSI: i64 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    LengthNindan,
    LengthKus,
    /// nindan², the area-sar.
    AreaSar,
    /// nindan × kùš, the unit of a canal cross-section.
    NindanKus,
    /// nindan² × kùš.
    VolumeSar,
    Dimensionless,
    WorkerCount,
}

impl Dimension {
    pub const ALL: [Dimension; 7] = [
        Dimension::LengthNindan,
        Dimension::LengthKus,
        Dimension::AreaSar,
        Dimension::NindanKus,
        Dimension::VolumeSar,
        Dimension::Dimensionless,
        Dimension::WorkerCount,
    ];

    /// The spelling used in corpus files and CLI output.
    pub fn symbol(self) -> &'static str {
        match self {
            Dimension::LengthNindan => "nindan",
            Dimension::LengthKus => "kus",
            Dimension::AreaSar => "sar",
            Dimension::NindanKus => "nindan-kus",
            Dimension::VolumeSar => "volume-sar",
            Dimension::Dimensionless => "1",
            Dimension::WorkerCount => "workers",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<Dimension> {
        Dimension::ALL.into_iter().find(|d| d.symbol() == symbol)
    }

    /// Product dimension, or `None` when the pair is outside the table.
    pub fn times(self, other: Dimension) -> Option<Dimension> {
        use Dimension::*;
        match (self, other) {
            (Dimensionless, d) | (d, Dimensionless) => Some(d),
            (LengthNindan, LengthNindan) => Some(AreaSar),
            (LengthNindan, LengthKus) | (LengthKus, LengthNindan) => Some(NindanKus),
            (AreaSar, LengthKus) | (LengthKus, AreaSar) => Some(VolumeSar),
            (NindanKus, LengthNindan) | (LengthNindan, NindanKus) => Some(VolumeSar),
            _ => None,
        }
    }

    /// Quotient dimension, or `None` when the pair is outside the table.
    ///
    /// A volume over a worker count is the per-worker share, still a volume.
    pub fn per(self, divisor: Dimension) -> Option<Dimension> {
        use Dimension::*;
        match (self, divisor) {
            (d, Dimensionless) => Some(d),
            (a, b) if a == b => Some(Dimensionless),
            (VolumeSar, WorkerCount) => Some(VolumeSar),
            (VolumeSar, NindanKus) => Some(LengthNindan),
            (VolumeSar, LengthNindan) => Some(NindanKus),
            (VolumeSar, AreaSar) => Some(LengthKus),
            (VolumeSar, LengthKus) => Some(AreaSar),
            (NindanKus, LengthNindan) => Some(LengthKus),
            (NindanKus, LengthKus) => Some(LengthNindan),
            (AreaSar, LengthNindan) => Some(LengthNindan),
            _ => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Counting units for volumes of earth or water.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeUnit {
    /// šár, the saros: 1,0,0 volume-sar.
    Sar60,
    /// šūši: 1,0 volume-sar.
    Susi,
    VolumeSar,
}

impl VolumeUnit {
    pub fn factor(self) -> i64 {
        match self {
            VolumeUnit::Sar60 => VOLUME_SAR_PER_SAR60,
            VolumeUnit::Susi => VOLUME_SAR_PER_SUSI,
            VolumeUnit::VolumeSar => 1,
        }
    }
}

/// A magnitude tagged with its dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quantity {
    pub magnitude: Sexa,
    pub dim: Dimension,
}

impl Quantity {
    pub fn new(magnitude: Sexa, dim: Dimension) -> Self {
        Quantity { magnitude, dim }
    }

    pub fn nindan(magnitude: Sexa) -> Self {
        Quantity::new(magnitude, Dimension::LengthNindan)
    }

    pub fn kus(magnitude: Sexa) -> Self {
        Quantity::new(magnitude, Dimension::LengthKus)
    }

    pub fn nindan_kus(magnitude: Sexa) -> Self {
        Quantity::new(magnitude, Dimension::NindanKus)
    }

    pub fn volume_sar(magnitude: Sexa) -> Self {
        Quantity::new(magnitude, Dimension::VolumeSar)
    }

    pub fn workers(magnitude: Sexa) -> Self {
        Quantity::new(magnitude, Dimension::WorkerCount)
    }

    pub fn scalar(magnitude: Sexa) -> Self {
        Quantity::new(magnitude, Dimension::Dimensionless)
    }

    /// `magnitude` counted in the unit spelled `unit`; `sar60` and `susi`
    /// become volume-sar.
    pub fn with_unit(magnitude: Sexa, unit: &str) -> Option<Quantity> {
        match unit {
            "sar60" => Some(sar_to_volume_sar(&magnitude, VolumeUnit::Sar60)),
            "susi" => Some(sar_to_volume_sar(&magnitude, VolumeUnit::Susi)),
            other => Dimension::from_symbol(other).map(|dim| Quantity::new(magnitude, dim)),
        }
    }

    /// Errors unless `self` has dimension `dim`.
    pub fn expect_dim(&self, op: &'static str, dim: Dimension) -> Result<&Sexa> {
        if self.dim == dim {
            Ok(&self.magnitude)
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.dim,
                right: dim,
            })
        }
    }

    pub fn checked_add(&self, other: &Quantity) -> Result<Quantity> {
        self.same_dim("add", other)?;
        Ok(Quantity::new(&self.magnitude + &other.magnitude, self.dim))
    }

    pub fn checked_sub(&self, other: &Quantity) -> Result<Quantity> {
        self.same_dim("sub", other)?;
        Ok(Quantity::new(&self.magnitude - &other.magnitude, self.dim))
    }

    pub fn scale(&self, factor: &Sexa) -> Quantity {
        Quantity::new(&self.magnitude * factor, self.dim)
    }

    fn same_dim(&self, op: &'static str, other: &Quantity) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.dim,
                right: other.dim,
            })
        }
    }
}

/// Dimensioned product.
pub fn qmul(a: &Quantity, b: &Quantity) -> Result<Quantity> {
    let dim = a.dim.times(b.dim).ok_or(Error::DimensionMismatch {
        op: "mul",
        left: a.dim,
        right: b.dim,
    })?;
    Ok(Quantity::new(&a.magnitude * &b.magnitude, dim))
}

/// Scribal division: multiplication by the reciprocal of `divisor`, which must
/// therefore be regular.
pub fn qdiv(dividend: &Quantity, divisor: &Quantity) -> Result<Quantity> {
    let dim = dividend.dim.per(divisor.dim).ok_or(Error::DimensionMismatch {
        op: "div",
        left: dividend.dim,
        right: divisor.dim,
    })?;
    let recip = divisor.magnitude.reciprocal()?;
    Ok(Quantity::new(&dividend.magnitude * recip, dim))
}

pub fn nindan_to_kus(q: &Quantity) -> Result<Quantity> {
    let m = q.expect_dim("nindan_to_kus", Dimension::LengthNindan)?;
    Ok(Quantity::kus(m * Sexa::from(KUS_PER_NINDAN)))
}

pub fn kus_to_nindan(q: &Quantity) -> Result<Quantity> {
    let m = q.expect_dim("kus_to_nindan", Dimension::LengthKus)?;
    Ok(Quantity::nindan(m * Sexa::from_ratio(1, KUS_PER_NINDAN)))
}

/// Counts of šár, šūši or volume-sar as volume-sar.
pub fn sar_to_volume_sar(count: &Sexa, unit: VolumeUnit) -> Quantity {
    Quantity::volume_sar(count * Sexa::from(unit.factor()))
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.magnitude, self.dim)
    }
}

/// Why a quantity string failed to parse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantityParseError {
    #[error("expected `<literal> <unit>`, got {0:?}")]
    Shape(String),
    #[error("unknown unit {0:?}")]
    UnknownUnit(String),
    #[error(transparent)]
    Literal(#[from] Error),
}

impl FromStr for Quantity {
    type Err = QuantityParseError;

    /// Reads `<literal> <unit>`. `sar60` and `susi` are converted to volume-sar.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut parts = s.split_whitespace();
        let (Some(lit), Some(unit), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(QuantityParseError::Shape(s.to_owned()));
        };
        let magnitude = Sexa::parse(lit)?;
        Quantity::with_unit(magnitude, unit)
            .ok_or_else(|| QuantityParseError::UnknownUnit(unit.to_owned()))
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Dimension {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Dimension::from_symbol(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown unit {s:?}")))
    }
}
