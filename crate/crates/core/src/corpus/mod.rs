//! Tablet problems as data, and the replay engine that checks them.
//!
//! A corpus file holds one record per problem:
//!
//! ```text
//! [problem smt25.p1]
//! procedure = labor-depth
//! given total_water = 6 sar60
//! param reach = 5
//! expect step recip_reach = 0;12 @ rev.27
//! expect answer z = 4;30 kus
//! ```
//!
//! `#` starts a comment. Files are 7-bit ASCII.

mod excavation;
mod format;
mod replay;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::procedures::{LineTag, QUADRATIC_LABELS, SUM_DIFFERENCE_LABELS};
use crate::geometry::{CONSTRAINT_LABELS, LABOR_DEPTH_LABELS};
use crate::sexcore::Sexa;
use crate::units::{Dimension, Quantity};

pub use excavation::{
    rect_canal_residuals, replay_smt24_p2, solve_quadratic_canal, QuadraticCanal,
    QuadraticCanalSolution, RectCanalParams, RectCanalSolution, QUADRATIC_CANAL_TAIL,
    RECT_CANAL_DEGENERATE_LABELS, RECT_CANAL_LABELS,
};
pub use format::parse_corpus;
pub use replay::{replay, AnswerOutcome, ReplayError, ReplayReport, StepOutcome, StepStatus};

/// The corpus shipped with the crate.
pub const BUNDLED_CORPUS: &str = include_str!("../../corpus/smt.corpus");

/// Environment variable naming a corpus file to use instead of the bundled one.
pub const CORPUS_ENV: &str = "SEXAKIT_CORPUS";

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read corpus {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown procedure {name:?}")]
    UnknownProcedure {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}, column {column}: {source}")]
    BadLiteral {
        line: usize,
        column: usize,
        #[source]
        source: crate::Error,
    },
    #[error("no problem {0:?} in the corpus")]
    UnknownProblem(String),
}

/// Which solution chain a problem replays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Procedure {
    /// False-area quadratic for the upper breadth, then the trapezoid check.
    Quadratic,
    /// The hole-and-canal system solved for the product and then the sides.
    RectCanalSystem,
    /// Depth of a rectangular canal from the workers' share of water.
    LaborDepth,
}

impl Procedure {
    pub const ALL: [Procedure; 3] = [
        Procedure::Quadratic,
        Procedure::RectCanalSystem,
        Procedure::LaborDepth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Procedure::Quadratic => "quadratic",
            Procedure::RectCanalSystem => "rect-canal-system",
            Procedure::LaborDepth => "labor-depth",
        }
    }

    /// Every label the procedure can put in its trace.
    pub fn step_labels(self) -> Vec<&'static str> {
        match self {
            Procedure::Quadratic => QUADRATIC_LABELS
                .iter()
                .chain(&CONSTRAINT_LABELS)
                .chain(&QUADRATIC_CANAL_TAIL)
                .copied()
                .collect(),
            Procedure::RectCanalSystem => {
                let mut labels: Vec<_> = RECT_CANAL_LABELS.to_vec();
                for l in RECT_CANAL_DEGENERATE_LABELS.iter().chain(&SUM_DIFFERENCE_LABELS) {
                    if !labels.contains(l) {
                        labels.push(l);
                    }
                }
                labels
            }
            Procedure::LaborDepth => LABOR_DEPTH_LABELS.to_vec(),
        }
    }

    /// Answer names and their dimensions.
    pub fn answers(self) -> &'static [(&'static str, Dimension)] {
        use Dimension::*;
        match self {
            Procedure::Quadratic => &[
                ("u", LengthNindan),
                ("v", LengthNindan),
                ("z", LengthKus),
                ("S", NindanKus),
                ("x", LengthNindan),
            ],
            Procedure::RectCanalSystem => &[
                ("x", LengthNindan),
                ("y", LengthNindan),
                ("z", LengthKus),
                ("xy", AreaSar),
            ],
            Procedure::LaborDepth => &[("z", LengthKus), ("z_water", LengthKus)],
        }
    }

    /// Givens every problem of this kind must supply.
    pub fn givens(self) -> &'static [(&'static str, Dimension)] {
        use Dimension::*;
        match self {
            Procedure::Quadratic => &[("volume", VolumeSar)],
            Procedure::RectCanalSystem => &[],
            Procedure::LaborDepth => &[
                ("total_water", VolumeSar),
                ("workers", WorkerCount),
                ("width", LengthNindan),
            ],
        }
    }

    /// Required parameters, then optional ones.
    pub fn params(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Procedure::Quadratic => (
                &["A", "B", "C"],
                &["excess", "depth_base", "excess_share", "kus_per_nindan"],
            ),
            Procedure::RectCanalSystem => (&["diff", "depth_factor", "thirteenth", "rhs"], &[]),
            Procedure::LaborDepth => (&["reach", "constant"], &[]),
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Procedure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Procedure::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| s.to_owned())
    }
}

/// One value the tablet shows, as transcribed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedStep {
    pub label: String,
    /// The literal exactly as written in the corpus.
    pub literal: String,
    #[serde(skip)]
    pub value: Sexa,
    pub tag: LineTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedAnswer {
    pub name: String,
    pub quantity: Quantity,
}

/// A corpus entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TabletProblem {
    pub id: String,
    pub procedure: Procedure,
    pub givens: BTreeMap<String, Quantity>,
    pub params: BTreeMap<String, Sexa>,
    pub expected_steps: Vec<ExpectedStep>,
    pub expected_answers: Vec<ExpectedAnswer>,
}

impl TabletProblem {
    pub fn given(&self, name: &str) -> &Quantity {
        self.givens
            .get(name)
            .unwrap_or_else(|| panic!("validated problem {} lacks given {name}", self.id))
    }

    pub fn param(&self, name: &str) -> Option<&Sexa> {
        self.params.get(name)
    }

    fn required_param(&self, name: &str) -> &Sexa {
        self.param(name)
            .unwrap_or_else(|| panic!("validated problem {} lacks param {name}", self.id))
    }
}

/// Reads and validates a corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<TabletProblem>, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text)
}

pub fn bundled_corpus() -> Vec<TabletProblem> {
    parse_corpus(BUNDLED_CORPUS).expect("bundled corpus is well-formed")
}

/// The problem called `id`.
pub fn find<'a>(problems: &'a [TabletProblem], id: &str) -> Result<&'a TabletProblem, CorpusError> {
    problems
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| CorpusError::UnknownProblem(id.to_owned()))
}
