//! Strength-2 orthogonal arrays OA(2, k, v) and the `OA 1` text format.

use crate::error::{Error, Result};
use crate::incidence::format::{content_lines, expect_header, keyed_count};
use crate::incidence::join_ids;
use crate::par;
use crate::report::{VerificationReport, Violation};

use super::AffinePlane;

/// A `v² × k` array over symbols `0..v`, stored row-major. The shape and the
/// symbol range are enforced on construction; the strength-2 property is
/// checked by [`validate_oa`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthogonalArray {
    columns: usize,
    symbols: usize,
    data: Vec<usize>,
}

impl OrthogonalArray {
    pub fn new(columns: usize, symbols: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if columns == 0 || symbols == 0 {
            return Err(Error::Shape("columns and symbols must be positive".into()));
        }
        if rows.len() != symbols * symbols {
            return Err(Error::Shape(format!(
                "{} rows, expected {}",
                rows.len(),
                symbols * symbols
            )));
        }
        let mut data = Vec::with_capacity(rows.len() * columns);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != columns {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {columns}",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= symbols) {
                return Err(Error::Shape(format!("row {i} has symbol {x} ≥ {symbols}")));
            }
            data.extend(row);
        }
        Ok(OrthogonalArray {
            columns,
            symbols,
            data,
        })
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn num_rows(&self) -> usize {
        self.symbols * self.symbols
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.data[i * self.columns..(i + 1) * self.columns]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.data.chunks(self.columns)
    }

    #[inline]
    pub fn get(&self, row: usize, column: usize) -> usize {
        self.data[row * self.columns + column]
    }

    pub fn column(&self, j: usize) -> Vec<usize> {
        (0..self.num_rows()).map(|i| self.get(i, j)).collect()
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, keep: &[usize]) -> Result<Self> {
        if let Some(&j) = keep.iter().find(|&&j| j >= self.columns) {
            return Err(Error::IdOutOfRange {
                kind: "column",
                id: j,
                limit: self.columns,
            });
        }
        let rows = self
            .rows()
            .map(|r| keep.iter().map(|&j| r[j]).collect())
            .collect();
        Self::new(keep.len(), self.symbols, rows)
    }
}

/// Passes iff every column is balanced and every pair of columns contains each
/// ordered symbol pair exactly once. Reports the first offending pair of rows
/// (`oa-pair c1 c2 r1 r2`) and the first unbalanced column (`oa-balance col symbol`).
pub fn validate_oa(oa: &OrthogonalArray) -> VerificationReport {
    let k = oa.columns;
    let v = oa.symbols;
    let n = oa.num_rows();
    let mut violations = Vec::new();

    let pair = par::find_first(k, |c1| {
        (c1 + 1..k).find_map(|c2| {
            let mut first: Vec<Option<usize>> = vec![None; v * v];
            (0..n).find_map(|i| {
                let slot = &mut first[oa.get(i, c1) * v + oa.get(i, c2)];
                match *slot {
                    Some(prev) => Some(vec![c1, c2, prev, i]),
                    None => {
                        *slot = Some(i);
                        None
                    }
                }
            })
        })
    });
    if let Some(w) = pair {
        violations.push(Violation::new("oa-pair", w));
    }

    let balance = (0..k).find_map(|j| {
        let mut counts = vec![0; v];
        for i in 0..n {
            counts[oa.get(i, j)] += 1;
        }
        counts.iter().position(|&c| c != v).map(|x| vec![j, x])
    });
    if let Some(w) = balance {
        violations.push(Violation::new("oa-balance", w));
    }

    if violations.is_empty() {
        VerificationReport::pass(None)
    } else {
        VerificationReport::fail(violations)
    }
}

/// Row `i` is point `i`; column `j` is parallel class `j`; the entry is the
/// position within class `j` of the line through point `i`.
pub fn oa_from_affine(plane: &AffinePlane) -> OrthogonalArray {
    let m = plane.order;
    let rows = (0..plane.num_points())
        .map(|p| {
            plane
                .parallel_classes
                .iter()
                .map(|class| {
                    class
                        .iter()
                        .position(|&g| plane.structure.contains(g, p))
                        .expect("a parallel class partitions the points")
                })
                .collect()
        })
        .collect();
    OrthogonalArray::new(m + 1, m, rows).expect("affine plane yields an OA(2,m+1,m)")
}

/// Extends an OA(2,m,m) by one column.
///
/// Rows that agree in no column form `m` disjoint cliques of `m` rows in any
/// genuine OA(2,m,m); the new column assigns symbol `i` to the `i`-th clique,
/// cliques ordered by their smallest row.
pub fn complete_oa(oa: &OrthogonalArray) -> Result<OrthogonalArray> {
    let m = oa.symbols;
    if oa.columns != m {
        return Err(Error::NotCompletable(format!(
            "expected {m} columns for {m} symbols, found {}",
            oa.columns
        )));
    }
    let report = validate_oa(oa);
    if !report.passed() {
        return Err(Error::NotCompletable(format!(
            "input is not an orthogonal array ({})",
            report.to_text().trim_end().replace('\n', "; ")
        )));
    }
    let n = oa.num_rows();
    let disjoint = |a: usize, b: usize| (0..m).all(|j| oa.get(a, j) != oa.get(b, j));
    let cliques: Vec<Vec<usize>> =
        par::map_range(n, |a| (0..n).filter(|&b| b == a || disjoint(a, b)).collect());

    let mut symbol = vec![usize::MAX; n];
    let mut next = 0;
    for a in 0..n {
        if symbol[a] != usize::MAX {
            continue;
        }
        let clique = &cliques[a];
        if clique.len() != m || clique.iter().any(|&b| cliques[b] != *clique) {
            return Err(Error::NotCompletable(format!(
                "rows agreeing nowhere with row {a} do not form a clique of size {m}"
            )));
        }
        for &b in clique {
            symbol[b] = next;
        }
        next += 1;
    }
    let rows = oa
        .rows()
        .zip(&symbol)
        .map(|(r, &s)| {
            let mut row = r.to_vec();
            row.push(s);
            row
        })
        .collect();
    let completed = OrthogonalArray::new(m + 1, m, rows)?;
    if !validate_oa(&completed).passed() {
        return Err(Error::NotCompletable("completed array fails validation".into()));
    }
    Ok(completed)
}

pub fn emit_oa(oa: &OrthogonalArray) -> String {
    let mut rows: Vec<&[usize]> = oa.rows().collect();
    rows.sort();
    let mut out = format!("OA 1\ncolumns {}\nsymbols {}\n", oa.columns, oa.symbols);
    for r in rows {
        out.push_str(&join_ids(r));
        out.push('\n');
    }
    out
}

pub fn parse_oa(text: &str) -> Result<OrthogonalArray> {
    let last = text.lines().count().max(1);
    let mut it = content_lines(text);
    expect_header(it.next(), "OA 1")?;
    let k = keyed_count(it.next(), "columns", last)?;
    let v = keyed_count(it.next(), "symbols", last)?;
    let mut rows = Vec::with_capacity(v * v);
    for _ in 0..v * v {
        let (no, line) = it
            .next()
            .ok_or_else(|| Error::format(last, format!("expected {} rows", v * v)))?;
        let row = line
            .split_whitespace()
            .map(|t| {
                let x: usize = t
                    .parse()
                    .map_err(|_| Error::format(no, format!("bad symbol '{t}'")))?;
                if x >= v {
                    return Err(Error::format(no, format!("symbol {x} out of range")));
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != k {
            return Err(Error::format(no, format!("expected {k} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if let Some((no, line)) = it.next() {
        return Err(Error::format(no, format!("unexpected content '{line}'")));
    }
    OrthogonalArray::new(k, v, rows)
}
