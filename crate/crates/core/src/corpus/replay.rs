use std::fmt;

use serde::Serialize;

use super::excavation::{replay_smt24_p2, solve_quadratic_canal, QuadraticCanal, RectCanalParams};
use super::{Procedure, TabletProblem};
use crate::error::{AtStep, ProcedureError};
use crate::geometry::{depth_from_labor, CanalConstant, CanalConstraints};
use crate::procedures::{LineTag, QuadraticProblem, StepTrace};
use crate::sexcore::Sexa;
use crate::units::Quantity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    Match,
    Mismatch,
    Missing,
}

impl fmt::Display for StepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepStatus::Match => "MATCH",
            StepStatus::Mismatch => "MISMATCH",
            StepStatus::Missing => "MISSING",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    pub label: String,
    pub tag: LineTag,
    pub expected: String,
    pub got: Option<Sexa>,
    pub status: StepStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnswerOutcome {
    pub name: String,
    pub expected: Quantity,
    pub got: Option<Quantity>,
    pub status: StepStatus,
}

/// The result of checking one problem; `pass` holds when nothing mismatched
/// and nothing was missing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub problem: String,
    pub procedure: Procedure,
    pub pass: bool,
    pub steps: Vec<StepOutcome>,
    pub answers: Vec<AnswerOutcome>,
    pub trace: StepTrace,
}

impl ReplayReport {
    pub fn mismatches(&self) -> usize {
        let bad = |s: &StepStatus| *s != StepStatus::Match;
        self.steps.iter().filter(|s| bad(&s.status)).count()
            + self.answers.iter().filter(|a| bad(&a.status)).count()
    }
}

impl fmt::Display for ReplayReport {
    /// A header, one `<id> <label> <status> <expected> <got>` line per step,
    /// then one line per answer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "== {} {} ({} steps, {} answers, {} failed)",
            self.problem,
            if self.pass { "PASS" } else { "FAIL" },
            self.steps.len(),
            self.answers.len(),
            self.mismatches()
        )?;
        for s in &self.steps {
            let got = s.got.as_ref().map_or_else(|| "-".to_owned(), Sexa::to_string);
            writeln!(f, "{} {} {} {} {}", self.problem, s.label, s.status, s.expected, got)?;
        }
        for a in &self.answers {
            write!(f, "{} answer {} = {} {}", self.problem, a.name, a.expected, a.status)?;
            match (&a.got, a.status) {
                (Some(got), StepStatus::Mismatch) => writeln!(f, " (got {got})")?,
                _ => writeln!(f)?,
            }
        }
        Ok(())
    }
}

/// A procedure failed while replaying a problem.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{problem}: {source}")]
pub struct ReplayError {
    pub problem: String,
    #[source]
    pub source: ProcedureError,
}

/// Runs the problem's procedure and compares every expected value with the
/// trace, by exact equality.
pub fn replay(p: &TabletProblem) -> Result<ReplayReport, ReplayError> {
    let (trace, answers) = run(p).map_err(|source| ReplayError {
        problem: p.id.clone(),
        source,
    })?;

    let steps: Vec<_> = p
        .expected_steps
        .iter()
        .map(|e| {
            let got = trace.value(&e.label).cloned();
            let status = match &got {
                None => StepStatus::Missing,
                Some(v) if *v == e.value => StepStatus::Match,
                Some(_) => StepStatus::Mismatch,
            };
            StepOutcome {
                label: e.label.clone(),
                tag: e.tag,
                expected: e.literal.clone(),
                got,
                status,
            }
        })
        .collect();

    let answers: Vec<_> = p
        .expected_answers
        .iter()
        .map(|e| {
            let got = answers.iter().find(|(n, _)| *n == e.name).map(|(_, q)| q.clone());
            let status = match &got {
                None => StepStatus::Missing,
                Some(q) if *q == e.quantity => StepStatus::Match,
                Some(_) => StepStatus::Mismatch,
            };
            AnswerOutcome {
                name: e.name.clone(),
                expected: e.quantity.clone(),
                got,
                status,
            }
        })
        .collect();

    let mut report = ReplayReport {
        problem: p.id.clone(),
        procedure: p.procedure,
        pass: false,
        steps,
        answers,
        trace,
    };
    report.pass = report.mismatches() == 0;
    Ok(report)
}

type Answers = Vec<(&'static str, Quantity)>;

fn run(p: &TabletProblem) -> Result<(StepTrace, Answers), ProcedureError> {
    match p.procedure {
        Procedure::Quadratic => {
            let problem = QuadraticProblem::new(
                p.required_param("A").clone(),
                p.required_param("B").clone(),
                p.required_param("C").clone(),
            )
            .at("A")?;
            let mut constraints = CanalConstraints::default();
            let overrides = [
                ("excess", &mut constraints.excess),
                ("depth_base", &mut constraints.depth_base),
                ("excess_share", &mut constraints.excess_share),
                ("kus_per_nindan", &mut constraints.kus_per_nindan),
            ];
            for (name, slot) in overrides {
                if let Some(v) = p.param(name) {
                    *slot = v.clone();
                }
            }
            let canal = QuadraticCanal {
                problem,
                constraints,
                volume: p.given("volume").clone(),
            };
            let sol = solve_quadratic_canal(&canal)?;
            let answers = vec![("u", sol.u), ("v", sol.v), ("z", sol.z), ("S", sol.s), ("x", sol.x)];
            Ok((sol.trace, answers))
        }
        Procedure::RectCanalSystem => {
            let params = RectCanalParams {
                diff: p.required_param("diff").clone(),
                depth_factor: p.required_param("depth_factor").clone(),
                thirteenth: p.required_param("thirteenth").clone(),
                rhs: p.required_param("rhs").clone(),
            };
            let sol = replay_smt24_p2(&params)?;
            let answers = vec![
                ("x", Quantity::nindan(sol.x)),
                ("y", Quantity::nindan(sol.y)),
                ("z", Quantity::kus(sol.z)),
                ("xy", Quantity::new(sol.xy, crate::units::Dimension::AreaSar)),
            ];
            Ok((sol.trace, answers))
        }
        Procedure::LaborDepth => {
            let c = CanalConstant::new(p.required_param("constant").clone()).at("recip_constant")?;
            let (z, z_water, trace) = depth_from_labor(
                p.given("total_water"),
                p.required_param("reach"),
                p.given("workers"),
                p.given("width"),
                &c,
            )?;
            Ok((trace, vec![("z", z), ("z_water", z_water)]))
        }
    }
}
