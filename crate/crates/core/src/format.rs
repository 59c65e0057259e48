//! Text and JSON encodings of betti tables.
//!
//! Text: one line per nonzero row, `q: v0 v1 …`, `.` for an empty cell,
//! rationals as `a/b`. Each row stops at its last nonzero column.
//!
//! JSON: `{"entries":[{"p":0,"q":0,"num":"1","den":"1"}, …]}` sorted by `(p, q)`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::table::{BettiTable, Rational};

/// A parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `q:` row label, found {0:?}")]
    BadRowLabel(String),
    #[error("row {0} appears twice")]
    DuplicateCell(usize),
    #[error("negative entry {0:?}")]
    NegativeEntry(String),
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("cell (p={p}, q={q}) appears twice")]
    DuplicateJsonCell { p: usize, q: usize },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("generator is not homogeneous (degrees {0} and {1})")]
    NonHomogeneous(u32, u32),
    #[error("generator has degree 0")]
    ConstantGenerator,
    #[error("generator is zero")]
    ZeroGenerator,
    #[error("unexpected token {0:?}")]
    UnexpectedToken(String),
    #[error("missing `vars N` header")]
    MissingVars,
    #[error("invalid field {0:?}")]
    BadField(String),
    #[error("coefficient {0} is not defined over the chosen field")]
    CoefficientNotInField(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

pub(crate) fn parse_rational(tok: &str) -> Option<Rational> {
    Rational::from_str(tok).ok()
}

/// Emits the canonical text form. The empty table emits the empty string.
pub fn table_to_text(table: &BettiTable) -> String {
    let mut out = String::new();
    let Some(reg) = table.regularity() else {
        return out;
    };
    for q in 0..=reg {
        let cells: Vec<(usize, &Rational)> = table.row(q).collect();
        let Some(&(last, _)) = cells.last() else {
            continue;
        };
        let _ = write!(out, "{q}:");
        let mut iter = cells.into_iter().peekable();
        for p in 0..=last {
            match iter.peek() {
                Some(&(pp, v)) if pp == p => {
                    let _ = write!(out, " {v}");
                    iter.next();
                }
                _ => out.push_str(" ."),
            }
        }
        out.push('\n');
    }
    out
}

/// Parses the text form. Blank lines and `#` comments are ignored.
pub fn table_from_text(text: &str) -> Result<BettiTable, ParseError> {
    let mut table = BettiTable::new();
    let mut seen_rows = std::collections::BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(ParseError::new(
                line_no,
                col,
                ParseErrorKind::BadRowLabel(content.trim().to_string()),
            ));
        };
        let label = content[..colon].trim();
        let label_col = content.len() - content.trim_start().len() + 1;
        let q: usize = label.parse().map_err(|_| {
            ParseError::new(
                line_no,
                label_col,
                ParseErrorKind::BadRowLabel(label.to_string()),
            )
        })?;
        if !seen_rows.insert(q) {
            return Err(ParseError::new(
                line_no,
                label_col,
                ParseErrorKind::DuplicateCell(q),
            ));
        }
        let rest = &content[colon + 1..];
        for (p, (offset, tok)) in tokens_with_offsets(rest).into_iter().enumerate() {
            let column = colon + 2 + offset;
            if tok == "." || tok == "-" {
                continue;
            }
            let value = parse_rational(tok).ok_or_else(|| {
                ParseError::new(line_no, column, ParseErrorKind::BadNumber(tok.to_string()))
            })?;
            if value.is_negative() {
                return Err(ParseError::new(
                    line_no,
                    column,
                    ParseErrorKind::NegativeEntry(tok.to_string()),
                ));
            }
            table
                .set(p, q, value)
                .expect("nonnegative value always accepted");
        }
    }
    Ok(table)
}

fn tokens_with_offsets(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonCell {
    p: usize,
    q: usize,
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTable {
    entries: Vec<JsonCell>,
}

/// The canonical JSON form as a value, for embedding in larger documents.
pub fn table_to_json_value(table: &BettiTable) -> serde_json::Value {
    let wire = JsonTable {
        entries: table
            .iter()
            .map(|(p, q, v)| JsonCell {
                p,
                q,
                num: v.numer().to_string(),
                den: v.denom().to_string(),
            })
            .collect(),
    };
    serde_json::to_value(wire).expect("table serializes")
}

/// Emits the canonical JSON form (compact, entries sorted by `(p, q)`).
pub fn table_to_json(table: &BettiTable) -> String {
    table_to_json_value(table).to_string()
}

/// Parses the JSON form. Entries may come in any order but must not repeat.
pub fn table_from_json(text: &str) -> Result<BettiTable, ParseError> {
    let wire: JsonTable = serde_json::from_str(text)
        .map_err(|e| ParseError::new(e.line(), e.column(), ParseErrorKind::Json(e.to_string())))?;
    let mut table = BettiTable::new();
    let mut seen = std::collections::BTreeSet::new();
    for cell in wire.entries {
        let bad = |s: &str| ParseError::new(1, 1, ParseErrorKind::BadNumber(s.to_string()));
        let num = BigInt::from_str(&cell.num).map_err(|_| bad(&cell.num))?;
        let den = BigInt::from_str(&cell.den).map_err(|_| bad(&cell.den))?;
        if den.is_zero() || den.is_negative() {
            return Err(bad(&cell.den));
        }
        if !seen.insert((cell.p, cell.q)) {
            return Err(ParseError::new(
                1,
                1,
                ParseErrorKind::DuplicateJsonCell {
                    p: cell.p,
                    q: cell.q,
                },
            ));
        }
        let value = Rational::new(num, den);
        if value.is_negative() {
            return Err(ParseError::new(
                1,
                1,
                ParseErrorKind::NegativeEntry(value.to_string()),
            ));
        }
        table.set(cell.p, cell.q, value).expect("nonnegative");
    }
    Ok(table)
}

/// Parses either encoding, choosing JSON when the first non-blank character is `{`.
pub fn table_from_str(text: &str) -> Result<BettiTable, ParseError> {
    if text.trim_start().starts_with('{') {
        table_from_json(text)
    } else {
        table_from_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn veronese_projection() -> BettiTable {
        BettiTable::from_integers(&[(0, 0, 1), (1, 2, 7), (2, 2, 10), (3, 2, 5), (4, 2, 1)])
            .unwrap()
    }

    #[test]
    fn parses_projected_veronese_text() {
        let t = table_from_text("0: 1\n2: . 7 10 5 1").unwrap();
        assert_eq!(t, veronese_projection());
        assert_eq!(table_to_text(&t), "0: 1\n2: . 7 10 5 1\n");
    }

    #[test]
    fn text_accepts_rationals_and_comments() {
        let t = table_from_text("# header\n0: 1/3 .\n\n1: . 2/4\n").unwrap();
        assert_eq!(t.entry(1, 1), Rational::new(1.into(), 2.into()));
        assert_eq!(table_to_text(&t), "0: 1/3\n1: . 1/2\n");
    }

    #[test]
    fn negative_entry_is_rejected_with_position() {
        let err = table_from_text("0: 1\n1: -2").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 4);
        assert!(matches!(err.kind, ParseErrorKind::NegativeEntry(_)));
    }

    #[test]
    fn duplicate_row_is_rejected() {
        let err = table_from_text("0: 1\n0: 2").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::DuplicateCell(0)));
    }

    #[test]
    fn bad_tokens() {
        assert!(matches!(
            table_from_text("0: 1 x").unwrap_err().kind,
            ParseErrorKind::BadNumber(_)
        ));
        assert!(matches!(
            table_from_text("zero: 1").unwrap_err().kind,
            ParseErrorKind::BadRowLabel(_)
        ));
        assert!(matches!(
            table_from_text("1 2 3").unwrap_err().kind,
            ParseErrorKind::BadRowLabel(_)
        ));
    }

    #[test]
    fn json_shape_is_canonical() {
        let t = BettiTable::from_cells([
            (1, 1, Rational::new(2.into(), 3.into())),
            (0, 0, Rational::from_integer(1.into())),
        ])
        .unwrap();
        assert_eq!(
            table_to_json(&t),
            r#"{"entries":[{"p":0,"q":0,"num":"1","den":"1"},{"p":1,"q":1,"num":"2","den":"3"}]}"#
        );
        assert_eq!(table_from_str(&table_to_json(&t)).unwrap(), t);
    }

    #[test]
    fn json_rejects_duplicates_and_negatives() {
        let dup =
            r#"{"entries":[{"p":0,"q":0,"num":"1","den":"1"},{"p":0,"q":0,"num":"1","den":"1"}]}"#;
        assert!(matches!(
            table_from_json(dup).unwrap_err().kind,
            ParseErrorKind::DuplicateJsonCell { p: 0, q: 0 }
        ));
        let neg = r#"{"entries":[{"p":0,"q":0,"num":"-1","den":"1"}]}"#;
        assert!(table_from_json(neg).is_err());
        let zero_den = r#"{"entries":[{"p":0,"q":0,"num":"1","den":"0"}]}"#;
        assert!(table_from_json(zero_den).is_err());
    }
}
