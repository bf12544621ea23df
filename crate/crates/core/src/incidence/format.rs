//! The `INC 1` text format.
//!
//! ```text
//! INC 1
//! points <n>
//! lines <m>
//! <m rows of ascending point ids, rows in lexicographic order>
//! labels              (optional)
//! <point-id> <label>  (ascending id)
//! ```
//!
//! Lines beginning with `#` and blank lines are skipped on parse. Emit is
//! canonical and never writes comments.

use std::collections::BTreeMap;

use super::{join_ids, IncidenceStructure};
use crate::error::{Error, Result};

pub fn emit_structure(s: &IncidenceStructure) -> String {
    let mut lines = s.lines().to_vec();
    lines.sort();
    let mut out = format!("INC 1\npoints {}\nlines {}\n", s.num_points(), lines.len());
    for line in &lines {
        out.push_str(&join_ids(line));
        out.push('\n');
    }
    if !s.point_labels().is_empty() {
        out.push_str("labels\n");
        for (p, label) in s.point_labels() {
            out.push_str(&format!("{p} {label}\n"));
        }
    }
    out
}

/// Content lines with their 1-based line numbers, comments and blanks removed.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

/// Parses `"<key> <n>"` returning `n`.
pub(crate) fn keyed_count(line: Option<(usize, &str)>, key: &str, at_eof: usize) -> Result<usize> {
    let (no, text) = line.ok_or_else(|| Error::format(at_eof, format!("missing '{key}' header")))?;
    let rest = text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| Error::format(no, format!("expected '{key} <count>'")))?;
    rest.trim()
        .parse()
        .map_err(|_| Error::format(no, format!("bad {key} count '{rest}'")))
}

pub(crate) fn expect_header(line: Option<(usize, &str)>, header: &str) -> Result<()> {
    match line {
        Some((_, l)) if l.trim_end() == header => Ok(()),
        Some((no, l)) => Err(Error::format(no, format!("expected '{header}', found '{l}'"))),
        None => Err(Error::format(1, format!("empty input, expected '{header}'"))),
    }
}

pub fn parse_structure(text: &str) -> Result<IncidenceStructure> {
    let last = text.lines().count().max(1);
    let mut it = content_lines(text);
    expect_header(it.next(), "INC 1")?;
    let num_points = keyed_count(it.next(), "points", last)?;
    let num_lines = keyed_count(it.next(), "lines", last)?;

    let mut rows = Vec::with_capacity(num_lines);
    let mut row_numbers = Vec::with_capacity(num_lines);
    for _ in 0..num_lines {
        let (no, text) = it
            .next()
            .ok_or_else(|| Error::format(last, format!("expected {num_lines} line rows")))?;
        let mut row = Vec::new();
        for tok in text.split_whitespace() {
            let p: usize = tok
                .parse()
                .map_err(|_| Error::format(no, format!("bad point id '{tok}'")))?;
            if p >= num_points {
                return Err(Error::format(
                    no,
                    format!("point {p} out of range for {num_points} points"),
                ));
            }
            if row.contains(&p) {
                return Err(Error::format(no, format!("point {p} repeated")));
            }
            row.push(p);
        }
        rows.push(row);
        row_numbers.push(no);
    }

    let mut labels = BTreeMap::new();
    if let Some((no, text)) = it.next() {
        if text.trim_end() != "labels" {
            return Err(Error::format(no, format!("unexpected content '{text}'")));
        }
        for (no, text) in it {
            let (id, label) = text
                .split_once(' ')
                .ok_or_else(|| Error::format(no, "expected '<point-id> <label>'"))?;
            let p: usize = id
                .parse()
                .map_err(|_| Error::format(no, format!("bad point id '{id}'")))?;
            if p >= num_points {
                return Err(Error::format(no, format!("label for point {p} out of range")));
            }
            if labels.insert(p, label.to_string()).is_some() {
                return Err(Error::format(no, format!("point {p} labeled twice")));
            }
        }
    }

    let s = IncidenceStructure::new(num_points, rows).map_err(|e| match e {
        Error::DuplicateLine { first, line } => Error::format(
            row_numbers[line],
            format!("duplicates the line at input line {}", row_numbers[first]),
        ),
        Error::NoLines => Error::format(last, "structure has no lines"),
        other => other,
    })?;
    s.with_point_labels(labels)
}
