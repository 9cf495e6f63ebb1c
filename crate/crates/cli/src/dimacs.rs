//! DIMACS CNF restricted to clauses of one or two literals, extended with
//! annotation lines.
//!
//! ```text
//! c comment
//! p cnf <vars> <clauses>
//! <lit> [<lit>] 0        one clause per line, repeats allowed
//! a <lit> ... 0          annotation literals (the set L), any number of lines
//! t <lit> 0              pivot literal, at most once
//! ```
//!
//! Parsing is strict: every error names the 1-based line and column of the
//! offending token.

use std::fmt::Write as _;

use a2sat_core::{Clause, Lit};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InputDocument {
    pub vars: u32,
    /// Clauses in file order, repeats kept.
    pub clauses: Vec<Clause>,
    /// Annotation literals in file order.
    pub annotation: Vec<Lit>,
    pub pivot: Option<Lit>,
}

impl InputDocument {
    pub fn is_annotated(&self) -> bool {
        self.pivot.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("second `p` header")]
    DuplicateHeader,
    #[error("malformed header, expected `p cnf <vars> <clauses>`")]
    MalformedHeader,
    #[error("expected an integer, found `{0}`")]
    NotAnInteger(String),
    #[error("literal {0} is outside the declared {1} variables")]
    LiteralOutOfRange(i64, u32),
    #[error("clause has {0} literals; at most 2 are supported")]
    ClauseTooLong(usize),
    #[error("empty clause")]
    EmptyClause,
    #[error("line does not end with 0")]
    MissingTerminator,
    #[error("unexpected `{0}` after the terminating 0")]
    TrailingToken(String),
    #[error("pivot line must hold exactly one literal")]
    PivotArity,
    #[error("second pivot line")]
    DuplicatePivot,
    #[error("header declares {declared} clauses but the file has {found}")]
    ClauseCount { declared: usize, found: usize },
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let mut header: Option<(u32, usize, usize)> = None;
    let mut doc = InputDocument::default();
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let toks = tokens(line);
        let Some(first) = toks.first() else {
            continue;
        };
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            column,
            kind,
        };
        match first.text {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err(first.column, ParseErrorKind::DuplicateHeader));
                }
                if toks.len() != 4 || toks[1].text != "cnf" {
                    return Err(err(first.column, ParseErrorKind::MalformedHeader));
                }
                let vars = toks[2]
                    .text
                    .parse::<u32>()
                    .map_err(|_| err(toks[2].column, ParseErrorKind::MalformedHeader))?;
                let clauses = toks[3]
                    .text
                    .parse::<usize>()
                    .map_err(|_| err(toks[3].column, ParseErrorKind::MalformedHeader))?;
                doc.vars = vars;
                header = Some((vars, clauses, line_no));
            }
            tag => {
                let Some((vars, _, _)) = header else {
                    return Err(err(first.column, ParseErrorKind::MissingHeader));
                };
                let body = if matches!(tag, "a" | "t") {
                    &toks[1..]
                } else {
                    &toks[..]
                };
                let raw = literal_list(body, line_no, line.chars().count() + 1)?;
                if !matches!(tag, "a" | "t") && raw.len() > 2 {
                    return Err(err(first.column, ParseErrorKind::ClauseTooLong(raw.len())));
                }
                let lits = raw
                    .into_iter()
                    .map(|(value, column)| {
                        if value.unsigned_abs() > u64::from(vars) {
                            return Err(err(column, ParseErrorKind::LiteralOutOfRange(value, vars)));
                        }
                        Ok(Lit::from_dimacs(value).expect("non-zero"))
                    })
                    .collect::<Result<Vec<Lit>, ParseError>>()?;
                match tag {
                    "a" => doc.annotation.extend(lits),
                    "t" => {
                        if doc.pivot.is_some() {
                            return Err(err(first.column, ParseErrorKind::DuplicatePivot));
                        }
                        if lits.len() != 1 {
                            return Err(err(first.column, ParseErrorKind::PivotArity));
                        }
                        doc.pivot = Some(lits[0]);
                    }
                    _ => match lits[..] {
                        [] => return Err(err(first.column, ParseErrorKind::EmptyClause)),
                        [x] => doc.clauses.push(Clause::unit(x)),
                        [x, y] => doc.clauses.push(Clause::new(x, y)),
                        _ => unreachable!("arity checked above"),
                    },
                }
            }
        }
    }

    let Some((_, declared, header_line)) = header else {
        return Err(ParseError {
            line: last_line.max(1),
            column: 1,
            kind: ParseErrorKind::MissingHeader,
        });
    };
    if declared != doc.clauses.len() {
        return Err(ParseError {
            line: header_line,
            column: 1,
            kind: ParseErrorKind::ClauseCount {
                declared,
                found: doc.clauses.len(),
            },
        });
    }
    Ok(doc)
}

/// Non-zero integers with their columns, up to a terminating 0 that must end
/// the line. `end_col` is the column just past the line, reported when the
/// terminator is missing.
fn literal_list(toks: &[Token<'_>], line: usize, end_col: usize) -> Result<Vec<(i64, usize)>, ParseError> {
    let err = |column: usize, kind: ParseErrorKind| ParseError { line, column, kind };
    let mut lits = Vec::new();
    for (i, tok) in toks.iter().enumerate() {
        let value: i64 = tok
            .text
            .parse()
            .map_err(|_| err(tok.column, ParseErrorKind::NotAnInteger(tok.text.to_string())))?;
        if value == 0 {
            if let Some(extra) = toks.get(i + 1) {
                return Err(err(extra.column, ParseErrorKind::TrailingToken(extra.text.to_string())));
            }
            return Ok(lits);
        }
        lits.push((value, tok.column));
    }
    Err(err(end_col, ParseErrorKind::MissingTerminator))
}

/// Canonical text: header, clauses, then one annotation line and the pivot
/// line when present.
pub fn render(doc: &InputDocument) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", doc.vars, doc.clauses.len()).unwrap();
    for c in &doc.clauses {
        if c.is_unit() {
            writeln!(out, "{} 0", c.a()).unwrap();
        } else {
            writeln!(out, "{} {} 0", c.a(), c.b()).unwrap();
        }
    }
    if !doc.annotation.is_empty() {
        out.push('a');
        for l in &doc.annotation {
            write!(out, " {l}").unwrap();
        }
        out.push_str(" 0\n");
    }
    if let Some(p) = doc.pivot {
        writeln!(out, "t {p} 0").unwrap();
    }
    out
}
