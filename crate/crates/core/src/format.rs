//! Plain-text matrix format.
//!
//! One row per line, entries separated by whitespace, zero written as
//! `-inf` (`.` and `@` are accepted on input). Blank lines and everything
//! after `#` are ignored. The shape is inferred.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::semifield::Semifield;

pub fn parse_matrix<S>(text: &str) -> Result<TropMatrix<S>>
where
    S: Semifield + FromStr<Err = Error>,
{
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut width: Option<usize> = None;
    for (line_idx, raw) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut column = 0;
        for (offset, token) in tokens_with_offsets(content) {
            column += 1;
            let value = token.parse::<S>().map_err(|_| Error::BadToken {
                token: token.to_string(),
                line: line_no,
                column: offset + 1,
            })?;
            row.push(value);
        }
        let expected = *width.get_or_insert(column);
        if column != expected {
            return Err(Error::RaggedRow {
                line: line_no,
                expected,
                found: column,
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    TropMatrix::from_rows(rows)
}

fn tokens_with_offsets(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.char_indices()
        .filter(|&(i, c)| !c.is_whitespace() && line[..i].chars().next_back().is_none_or(char::is_whitespace))
        .map(move |(start, _)| {
            let end = line[start..]
                .find(char::is_whitespace)
                .map_or(line.len(), |len| start + len);
            (start, &line[start..end])
        })
}

/// Canonical rendering: entries right-aligned per column, one space between
/// columns, trailing newline after every row.
pub fn write_matrix<S: Semifield>(matrix: &TropMatrix<S>) -> String {
    let cells: Vec<String> = matrix.entries().iter().map(ToString::to_string).collect();
    let cols = matrix.cols();
    let widths: Vec<usize> = (0..cols)
        .map(|j| (0..matrix.rows()).map(|i| cells[i * cols + j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for i in 0..matrix.rows() {
        let line: Vec<String> = (0..cols)
            .map(|j| format!("{:>width$}", cells[i * cols + j], width = widths[j]))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
