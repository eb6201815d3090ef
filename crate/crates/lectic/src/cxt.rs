//! The Burmeister `.cxt` interchange format.
//!
//! Grammar (strict, one item per line):
//!
//! ```text
//! B                  header
//! <name or blank>    optional; present in canonical files (blank)
//! <object count>
//! <attribute count>
//!                    blank separator
//! <object name>      × object count
//! <attribute name>   × attribute count
//! <row of . / X>     × object count
//! ```
//!
//! Nothing may follow the last row. [`write_cxt`] emits the canonical
//! form (blank name line, final newline); [`parse_cxt`] accepts files
//! with or without the name line and reports errors with line numbers.

use crate::bitset::BitSet;
use crate::context::FormalContext;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CxtError {
    #[error("line {line}: expected Burmeister header \"B\"")]
    MissingHeader { line: usize },
    #[error("line {line}: expected {expected}")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: unexpected end of file, expected {expected}")]
    UnexpectedEnd { line: usize, expected: &'static str },
    #[error("line {line}: incidence row has {found} symbols, expected {expected}")]
    RowLength {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("line {line}: illegal symbol {symbol:?} in incidence row (expected '.' or 'X')")]
    IllegalSymbol { line: usize, symbol: char },
    #[error("line {line}: duplicate {kind} name {name:?}")]
    DuplicateName {
        line: usize,
        kind: &'static str,
        name: String,
    },
    #[error("line {line}: trailing content after the incidence rows")]
    TrailingContent { line: usize },
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, expected: &'static str) -> Result<&'a str, CxtError> {
        let line = self.lines.get(self.pos).copied().ok_or(CxtError::UnexpectedEnd {
            line: self.pos + 1,
            expected,
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn line_number(&self) -> usize {
        self.pos // the line just consumed, 1-based
    }

    fn peek(&self, offset: usize) -> Option<&'a str> {
        self.lines.get(self.pos + offset).copied()
    }
}

pub fn parse_cxt(text: &str) -> Result<FormalContext, CxtError> {
    let mut cursor = Cursor {
        lines: text.lines().collect(),
        pos: 0,
    };

    if cursor.next("header \"B\"")? != "B" {
        return Err(CxtError::MissingHeader { line: 1 });
    }

    // The name line is optional: skip it unless the next three lines
    // already look like "count, count, blank".
    let counts_follow_directly = matches!(
        (cursor.peek(0), cursor.peek(1), cursor.peek(2)),
        (Some(a), Some(b), Some("")) if a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok()
    );
    if !counts_follow_directly {
        cursor.next("name line or object count")?;
    }

    let object_count = parse_count(&mut cursor, "object count")?;
    let attribute_count = parse_count(&mut cursor, "attribute count")?;
    if !cursor.next("blank separator line")?.is_empty() {
        return Err(CxtError::Malformed {
            line: cursor.line_number(),
            expected: "blank separator line",
        });
    }

    let objects = parse_names(&mut cursor, object_count, "object")?;
    let attributes = parse_names(&mut cursor, attribute_count, "attribute")?;

    let mut rows = Vec::with_capacity(object_count);
    for _ in 0..object_count {
        let text = cursor.next("incidence row")?;
        let line = cursor.line_number();
        let mut row = BitSet::new(attribute_count);
        let mut found = 0;
        for (m, symbol) in text.chars().enumerate() {
            found += 1;
            match symbol {
                'X' if m < attribute_count => row.insert(m),
                'X' | '.' => {}
                _ => return Err(CxtError::IllegalSymbol { line, symbol }),
            }
        }
        if found != attribute_count {
            return Err(CxtError::RowLength {
                line,
                found,
                expected: attribute_count,
            });
        }
        rows.push(row);
    }

    if cursor.peek(0).is_some() {
        return Err(CxtError::TrailingContent {
            line: cursor.line_number() + 1,
        });
    }

    Ok(FormalContext::new(objects, attributes, rows)
        .expect("counts, widths and name uniqueness were validated during parsing"))
}

fn parse_count(cursor: &mut Cursor<'_>, expected: &'static str) -> Result<usize, CxtError> {
    let text = cursor.next(expected)?;
    text.parse().map_err(|_| CxtError::Malformed {
        line: cursor.line_number(),
        expected,
    })
}

fn parse_names(
    cursor: &mut Cursor<'_>,
    count: usize,
    kind: &'static str,
) -> Result<Vec<String>, CxtError> {
    let mut names = Vec::with_capacity(count);
    for _ in 0..count {
        let name = cursor.next(match kind {
            "object" => "object name",
            _ => "attribute name",
        })?;
        if names.iter().any(|n| n == name) {
            return Err(CxtError::DuplicateName {
                line: cursor.line_number(),
                kind,
                name: name.to_string(),
            });
        }
        names.push(name.to_string());
    }
    Ok(names)
}

/// Canonical serialization; `parse_cxt(write_cxt(k))` reproduces `k`
/// exactly.
pub fn write_cxt(context: &FormalContext) -> String {
    let mut out = String::new();
    out.push_str("B\n\n");
    out.push_str(&format!(
        "{}\n{}\n\n",
        context.object_count(),
        context.attribute_count()
    ));
    for name in context.object_names() {
        out.push_str(name);
        out.push('\n');
    }
    for name in context.attribute_names() {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..context.object_count() {
        let row = context.object_intent(g);
        for m in 0..context.attribute_count() {
            out.push(if row.contains(m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}
