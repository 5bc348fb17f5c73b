//! Text forms and their parsers.
//!
//! The canonical renderings live on the types' `Display` impls; this
//! module holds the inverse direction plus the line-oriented problem
//! format used by the command-line front end:
//!
//! ```text
//! n = 3
//! precluded = {1,2};{2,3}
//! query = {1};{2}
//! f = 1,1,2
//! ```
//!
//! Unknown keys are rejected, every error carries a line and column, and
//! `parse_problem` inverts `render_problem` on well-formed specs.

use std::fmt;

use thiserror::Error;

use crate::event::{Event, OutcomeSpace};
use crate::poly::Coevent;
use crate::preclusion::PrecludedFamily;
use crate::projection::RandomVariable;
use crate::truth::TruthTable;

/// A syntax or range error with its 1-based position in the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn here(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: 1,
            column,
            message: message.into(),
        }
    }

    fn at_line(mut self, line: usize, column_base: usize) -> Self {
        self.line = line;
        self.column += column_base;
        self
    }
}

/// Parse `{i,j,...}` (arbitrary index order, duplicates rejected).
pub fn parse_event(input: &str, space: OutcomeSpace) -> Result<Event, ParseError> {
    let s = input.trim_end();
    let offset = input.len() - input.trim_start().len();
    let s = s.trim_start();
    let col = |pos: usize| offset + pos + 1;
    if !s.starts_with('{') {
        return Err(ParseError::here(col(0), "expected '{' to open an event"));
    }
    if !s.ends_with('}') {
        return Err(ParseError::here(
            col(s.len()),
            "expected '}' to close the event",
        ));
    }
    let inner = &s[1..s.len() - 1];
    let mut event = space.empty_event();
    if inner.trim().is_empty() {
        return Ok(event);
    }
    let mut pos = 1;
    for piece in inner.split(',') {
        let trimmed = piece.trim();
        let piece_col = col(pos + (piece.len() - piece.trim_start().len()));
        let index: usize = trimmed.parse().map_err(|_| {
            ParseError::here(
                piece_col,
                format!("expected an outcome index, found {trimmed:?}"),
            )
        })?;
        let singleton = space
            .singleton(index)
            .map_err(|e| ParseError::here(piece_col, e.to_string()))?;
        if !event.intersect(&singleton).is_empty() {
            return Err(ParseError::here(
                piece_col,
                format!("duplicate outcome index {index}"),
            ));
        }
        event = event.union(&singleton);
        pos += piece.len() + 1;
    }
    Ok(event)
}

/// Parse a semicolon-separated event list, e.g. `{1,2};{2,3}`.
pub fn parse_event_list(input: &str, space: OutcomeSpace) -> Result<Vec<Event>, ParseError> {
    let mut events = Vec::new();
    let mut pos = 0;
    for piece in input.split(';') {
        events.push(parse_event(piece, space).map_err(|e| ParseError {
            line: e.line,
            column: e.column + pos,
            message: e.message,
        })?);
        pos += piece.len() + 1;
    }
    Ok(events)
}

/// Render an event list in the family form `{1,2};{2,3}`.
pub fn render_event_list(events: &[Event]) -> String {
    events
        .iter()
        .map(Event::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// Parse a truth table given as its true events, e.g. `[{1},{1,2}]`.
pub fn parse_table(input: &str, space: OutcomeSpace) -> Result<TruthTable, ParseError> {
    let s = input.trim();
    let offset = input.len() - input.trim_start().len();
    if !s.starts_with('[') || !s.ends_with(']') {
        return Err(ParseError::here(offset + 1, "expected a [...] event list"));
    }
    let inner = &s[1..s.len() - 1];
    if inner.trim().is_empty() {
        return Ok(TruthTable::zero(space));
    }
    // split on commas that sit between events, not inside them
    let mut events = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                events.push((start, &inner[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    events.push((start, &inner[start..]));
    let mut parsed = Vec::new();
    for (pos, piece) in events {
        parsed.push(parse_event(piece, space).map_err(|e| ParseError {
            line: e.line,
            column: e.column + offset + 1 + pos,
            message: e.message,
        })?);
    }
    TruthTable::from_true_events(space, &parsed)
        .map_err(|e| ParseError::here(offset + 1, e.to_string()))
}

/// Parse a coevent polynomial such as `w3* + w1*w3* + w2*w3*` or `0`.
/// Monomials may come in any order with any whitespace; a repeated
/// monomial cancels, since the sum is over GF(2).
pub fn parse_coevent(input: &str, space: OutcomeSpace) -> Result<Coevent, ParseError> {
    let mut acc = Coevent::zero(space);
    let mut pos = 0;
    for piece in input.split('+') {
        let term = piece.trim();
        let term_col = pos + (piece.len() - piece.trim_start().len()) + 1;
        if term.is_empty() {
            return Err(ParseError::here(term_col, "empty term"));
        }
        if term != "0" {
            acc = acc + parse_monomial(term, space, term_col)?;
        }
        pos += piece.len() + 1;
    }
    Ok(acc)
}

fn parse_monomial(term: &str, space: OutcomeSpace, col: usize) -> Result<Coevent, ParseError> {
    let mut indices = Vec::new();
    let mut rest = term;
    while !rest.is_empty() {
        let Some(after_w) = rest.strip_prefix('w') else {
            return Err(ParseError::here(
                col,
                format!("expected a monomial like w1* or w1*w2*, found {term:?}"),
            ));
        };
        let digits: String = after_w.chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(ParseError::here(
                col,
                format!("missing outcome index in {term:?}"),
            ));
        }
        let Some(after_digits) = after_w[digits.len()..].strip_prefix('*') else {
            return Err(ParseError::here(col, format!("missing '*' in {term:?}")));
        };
        let index: usize = digits
            .parse()
            .map_err(|_| ParseError::here(col, format!("bad outcome index in {term:?}")))?;
        space
            .check_index(index)
            .map_err(|e| ParseError::here(col, e.to_string()))?;
        indices.push(index);
        rest = after_digits;
    }
    match indices.as_slice() {
        [i] => Ok(Coevent::containment(space, *i).expect("validated index")),
        [i, j] if i != j => Ok(Coevent::pair(space, *i, *j).expect("validated pair")),
        [i, j] => Err(ParseError::here(
            col,
            format!("repeated factor w{i}*w{j}* is not a degree-2 monomial"),
        )),
        _ => Err(ParseError::here(
            col,
            format!("monomial {term:?} has degree {} > 2", indices.len()),
        )),
    }
}

/// A parsed problem: the outcome space plus the optional ingredients the
/// subcommands consume.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub space: OutcomeSpace,
    pub precluded: Option<PrecludedFamily>,
    pub query: Vec<Event>,
    pub random_variable: Option<RandomVariable>,
}

/// Parse the line-oriented problem format. Keys are `n`, `precluded`,
/// `query` and `f`; `n` is required and each key may appear once.
pub fn parse_problem(input: &str) -> Result<ProblemSpec, ParseError> {
    let mut entries: Vec<(usize, usize, &str, &str)> = Vec::new(); // line, value column, key, value
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(ParseError {
                line: line_no,
                column: raw.len() + 1,
                message: "expected 'key = value'".into(),
            });
        };
        let key = raw[..eq].trim();
        let key_col = raw.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
        if !matches!(key, "n" | "precluded" | "query" | "f") {
            return Err(ParseError {
                line: line_no,
                column: key_col,
                message: format!("unknown key {key:?} (expected n, precluded, query or f)"),
            });
        }
        if entries.iter().any(|&(_, _, k, _)| k == key) {
            return Err(ParseError {
                line: line_no,
                column: key_col,
                message: format!("duplicate key {key:?}"),
            });
        }
        entries.push((line_no, eq + 1, key, &raw[eq + 1..]));
    }

    let Some(&(n_line, n_col, _, n_value)) = entries.iter().find(|&&(_, _, k, _)| k == "n") else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "missing required line 'n = <count>'".into(),
        });
    };
    let n_trimmed = n_value.trim();
    let n: usize = n_trimmed.parse().map_err(|_| ParseError {
        line: n_line,
        column: n_col + 1,
        message: format!("expected an outcome count, found {n_trimmed:?}"),
    })?;
    let space = OutcomeSpace::new(n).map_err(|e| ParseError {
        line: n_line,
        column: n_col + 1,
        message: e.to_string(),
    })?;

    let mut spec = ProblemSpec {
        space,
        precluded: None,
        query: Vec::new(),
        random_variable: None,
    };
    for &(line, col, key, value) in &entries {
        match key {
            "n" => {}
            "precluded" => {
                let events = parse_event_list(value, space).map_err(|e| e.at_line(line, col))?;
                spec.precluded = Some(PrecludedFamily::new(space, &events));
            }
            "query" => {
                spec.query = parse_event_list(value, space).map_err(|e| e.at_line(line, col))?;
            }
            "f" => {
                let mut values = Vec::new();
                for piece in value.split(',') {
                    let trimmed = piece.trim();
                    values.push(trimmed.parse::<f64>().map_err(|_| ParseError {
                        line,
                        column: col + 1,
                        message: format!("expected a real value, found {trimmed:?}"),
                    })?);
                }
                spec.random_variable =
                    Some(RandomVariable::new(space, values).map_err(|e| ParseError {
                        line,
                        column: col + 1,
                        message: e.to_string(),
                    })?);
            }
            _ => unreachable!("keys validated above"),
        }
    }
    Ok(spec)
}

fn render_real(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Render a problem in the same line format `parse_problem` reads.
pub fn render_problem(spec: &ProblemSpec) -> String {
    let mut out = format!("n = {}\n", spec.space.outcome_count());
    if let Some(family) = &spec.precluded {
        out.push_str(&format!("precluded = {family}\n"));
    }
    if !spec.query.is_empty() {
        out.push_str(&format!("query = {}\n", render_event_list(&spec.query)));
    }
    if let Some(f) = &spec.random_variable {
        let values: Vec<String> = f.values().iter().map(|&v| render_real(v)).collect();
        out.push_str(&format!("f = {}\n", values.join(",")));
    }
    out
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_problem(self))
    }
}
