use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::sexcore::Sexa;
use crate::units::{Dimension, Quantity};

/// Obverse or reverse of the tablet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Obverse,
    Reverse,
}

/// Where a step value comes from: a tablet line, or derived arithmetic that
/// the tablet does not spell out.
///
/// Text form: `obv.26`, `rev.21?` (uncertain reading), or `derived`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineTag {
    Line {
        side: Side,
        line: u32,
        uncertain: bool,
    },
    Derived,
}

impl LineTag {
    pub const fn obv(line: u32) -> LineTag {
        LineTag::Line {
            side: Side::Obverse,
            line,
            uncertain: false,
        }
    }

    pub const fn rev(line: u32) -> LineTag {
        LineTag::Line {
            side: Side::Reverse,
            line,
            uncertain: false,
        }
    }

    pub fn is_uncertain(&self) -> bool {
        matches!(self, LineTag::Line { uncertain: true, .. })
    }
}

impl fmt::Display for LineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineTag::Derived => f.write_str("derived"),
            LineTag::Line {
                side,
                line,
                uncertain,
            } => {
                let side = match side {
                    Side::Obverse => "obv",
                    Side::Reverse => "rev",
                };
                write!(f, "{side}.{line}{}", if *uncertain { "?" } else { "" })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad line tag {0:?}, expected obv.N, rev.N (optionally with ?) or derived")]
pub struct LineTagParseError(pub String);

impl FromStr for LineTag {
    type Err = LineTagParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "derived" {
            return Ok(LineTag::Derived);
        }
        let bad = || LineTagParseError(s.to_owned());
        let (side, rest) = s.split_once('.').ok_or_else(bad)?;
        let side = match side {
            "obv" => Side::Obverse,
            "rev" => Side::Reverse,
            _ => return Err(bad()),
        };
        let (num, uncertain) = match rest.strip_suffix('?') {
            Some(n) => (n, true),
            None => (rest, false),
        };
        if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let line = num.parse().map_err(|_| bad())?;
        Ok(LineTag::Line {
            side,
            line,
            uncertain,
        })
    }
}

impl Serialize for LineTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LineTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One named intermediate value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    pub value: Sexa,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Dimension>,
    pub source: LineTag,
}

impl Step {
    pub fn quantity(&self) -> Option<Quantity> {
        self.unit.map(|d| Quantity::new(self.value.clone(), d))
    }
}

/// The ordered record of a procedure's "you see N" values.
///
/// Labels are unique; recording a label twice is a bug in the procedure and
/// panics.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StepTrace {
    steps: Vec<Step>,
}

impl StepTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `value` under `label` and hands it back.
    pub fn record(&mut self, label: &str, value: Sexa, source: LineTag) -> Sexa {
        self.push(Step {
            label: label.to_owned(),
            value: value.clone(),
            unit: None,
            source,
        });
        value
    }

    pub fn record_quantity(&mut self, label: &str, q: Quantity, source: LineTag) -> Quantity {
        self.push(Step {
            label: label.to_owned(),
            value: q.magnitude.clone(),
            unit: Some(q.dim),
            source,
        });
        q
    }

    pub fn push(&mut self, step: Step) {
        assert!(
            self.get(&step.label).is_none(),
            "duplicate trace label {:?}",
            step.label
        );
        self.steps.push(step);
    }

    /// Appends every step of `other`, re-tagging sources through `tag`.
    pub fn absorb(&mut self, other: StepTrace, tag: impl Fn(&str) -> LineTag) {
        for mut step in other.steps {
            step.source = tag(&step.label);
            self.push(step);
        }
    }

    pub fn get(&self, label: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.label == label)
    }

    pub fn value(&self, label: &str) -> Option<&Sexa> {
        self.get(label).map(|s| &s.value)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.steps.iter().position(|s| s.label == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.label.as_str())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Step> {
        self.steps.iter()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl<'a> IntoIterator for &'a StepTrace {
    type Item = &'a Step;
    type IntoIter = std::slice::Iter<'a, Step>;

    fn into_iter(self) -> Self::IntoIter {
        self.steps.iter()
    }
}

impl fmt::Display for StepTrace {
    /// One `label = value [unit] @ source` line per step.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            write!(f, "{} = {}", step.label, step.value)?;
            if let Some(unit) = step.unit {
                write!(f, " {unit}")?;
            }
            writeln!(f, " @ {}", step.source)?;
        }
        Ok(())
    }
}
