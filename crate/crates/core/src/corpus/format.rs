use std::collections::BTreeMap;

use super::{CorpusError, ExpectedAnswer, ExpectedStep, Procedure, TabletProblem};
use crate::procedures::LineTag;
use crate::sexcore::{parse_digits, Sexa};
use crate::units::Quantity;

/// A whitespace-separated word and its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Word<'a> {
    col: usize,
    text: &'a str,
}

fn words(line: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, b) in line.bytes().enumerate().chain([(line.len(), b' ')]) {
        match (b.is_ascii_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Word {
                    col: s + 1,
                    text: &line[s..i],
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct Draft {
    line: usize,
    id: String,
    procedure: Option<Procedure>,
    givens: BTreeMap<String, Quantity>,
    params: BTreeMap<String, Sexa>,
    steps: Vec<ExpectedStep>,
    answers: Vec<ExpectedAnswer>,
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err(&self, column: usize, message: impl Into<String>) -> CorpusError {
        CorpusError::Parse {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn literal(&self, w: Word<'_>) -> Result<Sexa, CorpusError> {
        parse_digits(w.text)
            .map(|d| d.to_sexa())
            .map_err(|source| CorpusError::BadLiteral {
                line: self.line,
                column: w.col,
                source,
            })
    }

    fn quantity(&self, lit: Word<'_>, unit: Word<'_>) -> Result<Quantity, CorpusError> {
        let magnitude = self.literal(lit)?;
        Quantity::with_unit(magnitude, unit.text)
            .ok_or_else(|| self.err(unit.col, format!("unknown unit {:?}", unit.text)))
    }

    fn expect(&self, w: Word<'_>, text: &str) -> Result<(), CorpusError> {
        if w.text == text {
            Ok(())
        } else {
            Err(self.err(w.col, format!("expected `{text}`, found {:?}", w.text)))
        }
    }

    fn shape<'a>(&self, ws: &[Word<'a>], n: usize, form: &str) -> Result<(), CorpusError> {
        if ws.len() == n {
            Ok(())
        } else {
            let col = ws.get(n).or(ws.last()).map_or(1, |w| w.col);
            Err(self.err(col, format!("expected `{form}`")))
        }
    }

    fn header(&self, raw: &str, ws: &[Word<'_>]) -> Result<String, CorpusError> {
        let col = ws[0].col;
        let trimmed = raw.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| self.err(col, "expected `[problem <id>]`"))?;
        let mut parts = inner.split_ascii_whitespace();
        let (Some("problem"), Some(id), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(self.err(col, "expected `[problem <id>]`"));
        };
        let ok = id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b"._-".contains(&b));
        if !ok {
            return Err(self.err(col, format!("bad problem id {id:?}")));
        }
        Ok(id.to_owned())
    }

    fn field(&self, d: &mut Draft, ws: &[Word<'_>]) -> Result<(), CorpusError> {
        match ws[0].text {
            "procedure" => {
                self.shape(ws, 3, "procedure = <name>")?;
                self.expect(ws[1], "=")?;
                if d.procedure.is_some() {
                    return Err(self.err(ws[0].col, "procedure given twice"));
                }
                let p = ws[2].text.parse().map_err(|name| CorpusError::UnknownProcedure {
                    line: self.line,
                    column: ws[2].col,
                    name,
                })?;
                d.procedure = Some(p);
            }
            "given" => {
                self.shape(ws, 5, "given <name> = <literal> <unit>")?;
                self.expect(ws[2], "=")?;
                let q = self.quantity(ws[3], ws[4])?;
                if d.givens.insert(ws[1].text.to_owned(), q).is_some() {
                    return Err(self.err(ws[1].col, format!("given {} repeated", ws[1].text)));
                }
            }
            "param" => {
                self.shape(ws, 4, "param <name> = <literal>")?;
                self.expect(ws[2], "=")?;
                let v = self.literal(ws[3])?;
                if d.params.insert(ws[1].text.to_owned(), v).is_some() {
                    return Err(self.err(ws[1].col, format!("param {} repeated", ws[1].text)));
                }
            }
            "expect" if ws.get(1).map(|w| w.text) == Some("step") => {
                self.shape(ws, 7, "expect step <label> = <literal> @ <line-tag>")?;
                self.expect(ws[3], "=")?;
                self.expect(ws[5], "@")?;
                let label = ws[2].text;
                if d.steps.iter().any(|s| s.label == label) {
                    return Err(self.err(ws[2].col, format!("step {label} repeated")));
                }
                let value = self.literal(ws[4])?;
                let tag: LineTag = ws[6]
                    .text
                    .parse()
                    .map_err(|e: crate::procedures::LineTagParseError| self.err(ws[6].col, e.to_string()))?;
                d.steps.push(ExpectedStep {
                    label: label.to_owned(),
                    literal: ws[4].text.to_owned(),
                    value,
                    tag,
                });
            }
            "expect" if ws.get(1).map(|w| w.text) == Some("answer") => {
                self.shape(ws, 6, "expect answer <name> = <literal> <unit>")?;
                self.expect(ws[3], "=")?;
                let name = ws[2].text;
                if d.answers.iter().any(|a| a.name == name) {
                    return Err(self.err(ws[2].col, format!("answer {name} repeated")));
                }
                let quantity = self.quantity(ws[4], ws[5])?;
                d.answers.push(ExpectedAnswer {
                    name: name.to_owned(),
                    quantity,
                });
            }
            "expect" => {
                let col = ws.get(1).map_or(ws[0].col, |w| w.col);
                return Err(self.err(col, "expected `expect step` or `expect answer`"));
            }
            other => return Err(self.err(ws[0].col, format!("unknown field {other:?}"))),
        }
        Ok(())
    }
}

/// Checks a finished record against its procedure's schema.
fn finish(d: Draft) -> Result<TabletProblem, CorpusError> {
    let err = |message: String| CorpusError::Parse {
        line: d.line,
        column: 1,
        message: format!("problem {}: {message}", d.id),
    };
    let procedure = d.procedure.ok_or_else(|| err("no procedure".into()))?;

    for (name, dim) in procedure.givens() {
        match d.givens.get(*name) {
            None => return Err(err(format!("missing given {name}"))),
            Some(q) if q.dim != *dim => {
                return Err(err(format!("given {name} is in {}, expected {dim}", q.dim)))
            }
            Some(_) => {}
        }
    }
    if let Some(extra) = d.givens.keys().find(|k| !procedure.givens().iter().any(|(n, _)| n == k)) {
        return Err(err(format!("unknown given {extra} for {procedure}")));
    }

    let (required, optional) = procedure.params();
    if let Some(missing) = required.iter().find(|r| !d.params.contains_key(**r)) {
        return Err(err(format!("missing param {missing}")));
    }
    if let Some(extra) = d
        .params
        .keys()
        .find(|k| !required.contains(&k.as_str()) && !optional.contains(&k.as_str()))
    {
        return Err(err(format!("unknown param {extra} for {procedure}")));
    }

    let labels = procedure.step_labels();
    if let Some(s) = d.steps.iter().find(|s| !labels.contains(&s.label.as_str())) {
        return Err(err(format!("unknown step label {} for {procedure}", s.label)));
    }
    for a in &d.answers {
        match procedure.answers().iter().find(|(n, _)| *n == a.name) {
            None => return Err(err(format!("unknown answer {} for {procedure}", a.name))),
            Some((_, dim)) if *dim != a.quantity.dim => {
                return Err(err(format!("answer {} is in {}, expected {dim}", a.name, a.quantity.dim)))
            }
            Some(_) => {}
        }
    }

    Ok(TabletProblem {
        id: d.id,
        procedure,
        givens: d.givens,
        params: d.params,
        expected_steps: d.steps,
        expected_answers: d.answers,
    })
}

/// Parses and validates corpus text.
pub fn parse_corpus(text: &str) -> Result<Vec<TabletProblem>, CorpusError> {
    let mut problems: Vec<TabletProblem> = Vec::new();
    let mut current: Option<Draft> = None;

    for (i, raw) in text.lines().enumerate() {
        let p = Parser { line: i + 1 };
        if let Some(pos) = raw.bytes().position(|b| !b.is_ascii()) {
            return Err(p.err(pos + 1, "non-ASCII byte"));
        }
        let content = raw.split('#').next().unwrap_or("");
        let ws = words(content);
        if ws.is_empty() {
            continue;
        }
        if ws[0].text.starts_with('[') {
            let id = p.header(content, &ws)?;
            if problems.iter().any(|q| q.id == id) || current.as_ref().is_some_and(|d| d.id == id) {
                return Err(p.err(ws[0].col, format!("problem {id} defined twice")));
            }
            if let Some(d) = current.take() {
                problems.push(finish(d)?);
            }
            current = Some(Draft {
                line: p.line,
                id,
                procedure: None,
                givens: BTreeMap::new(),
                params: BTreeMap::new(),
                steps: Vec::new(),
                answers: Vec::new(),
            });
            continue;
        }
        let d = current
            .as_mut()
            .ok_or_else(|| p.err(ws[0].col, "field outside a [problem] record"))?;
        p.field(d, &ws)?;
    }
    if let Some(d) = current {
        problems.push(finish(d)?);
    }
    Ok(problems)
}
