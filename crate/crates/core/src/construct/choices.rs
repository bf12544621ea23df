//! The ledger of free choices made when assembling a plane, and its
//! `CHOICES 1` text form.
//!
//! ```text
//! CHOICES 1
//! point <P>: <line>-><class> ...
//! line <l>: columns <P0 P1 ...>; symbols <class-line>-><symbol> ...
//! seed <n>
//! ```
//!
//! `point` rows list the base lines through `P` in ascending order, each with
//! the parallel class of `P`'s neighbourhood it uses. `symbols` holds one run
//! of `m` mappings per column, in column order; within a run the class lines
//! (ids in that column's neighbourhood) ascend. The `seed` row is present
//! only for randomized ledgers.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::incidence::format::{content_lines, expect_header};
use crate::seeds::{validate_oa, AffinePlane, OrthogonalArray};

use super::plane::{broadcast, BasePlane};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointChoice {
    /// `(base line, class index)`, ascending by line.
    pub classes: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LineChoice {
    /// Column `j` of the line's array belongs to base point `columns[j]`.
    pub columns: Vec<usize>,
    /// For column `j`: `(class line, symbol)` pairs, ascending by class line.
    pub symbols: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConstructionChoices {
    pub points: Vec<PointChoice>,
    pub lines: Vec<LineChoice>,
    pub seed: Option<u64>,
}

impl ConstructionChoices {
    /// Parallel class of `p`'s neighbourhood assigned to base line `l`.
    pub fn class_for(&self, p: usize, l: usize) -> Option<usize> {
        self.points.get(p)?.classes.iter().find(|(g, _)| *g == l).map(|&(_, c)| c)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("CHOICES 1\n");
        for (p, pc) in self.points.iter().enumerate() {
            write!(out, "point {p}:").unwrap();
            for (l, c) in &pc.classes {
                write!(out, " {l}->{c}").unwrap();
            }
            out.push('\n');
        }
        for (l, lc) in self.lines.iter().enumerate() {
            write!(out, "line {l}: columns").unwrap();
            for p in &lc.columns {
                write!(out, " {p}").unwrap();
            }
            out.push_str("; symbols");
            for run in &lc.symbols {
                for (g, s) in run {
                    write!(out, " {g}->{s}").unwrap();
                }
            }
            out.push('\n');
        }
        if let Some(seed) = self.seed {
            writeln!(out, "seed {seed}").unwrap();
        }
        out
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    /// Parses a ledger. Symbol runs are split by the number of columns, so
    /// every run must have the same length.
    pub fn parse(text: &str) -> Result<Self> {
        let mut it = content_lines(text).peekable();
        expect_header(it.next(), "CHOICES 1")?;
        let mut choices = ConstructionChoices::default();

        while let Some(&(no, line)) = it.peek() {
            let Some(rest) = line.strip_prefix("point ") else { break };
            it.next();
            let (id, body) = split_id(no, rest)?;
            if id != choices.points.len() {
                return Err(Error::format(no, format!("expected point {}", choices.points.len())));
            }
            let classes = body
                .split_whitespace()
                .map(|tok| arrow(no, tok))
                .collect::<Result<Vec<_>>>()?;
            choices.points.push(PointChoice { classes });
        }

        while let Some(&(no, line)) = it.peek() {
            let Some(rest) = line.strip_prefix("line ") else { break };
            it.next();
            let (id, body) = split_id(no, rest)?;
            if id != choices.lines.len() {
                return Err(Error::format(no, format!("expected line {}", choices.lines.len())));
            }
            let (cols, syms) = body
                .trim_start()
                .strip_prefix("columns")
                .and_then(|b| b.split_once("; symbols"))
                .ok_or_else(|| Error::format(no, "expected 'columns ...; symbols ...'"))?;
            let columns = cols
                .split_whitespace()
                .map(|t| number(no, t))
                .collect::<Result<Vec<usize>>>()?;
            let pairs = syms
                .split_whitespace()
                .map(|tok| arrow(no, tok))
                .collect::<Result<Vec<_>>>()?;
            if columns.is_empty() || pairs.len() % columns.len() != 0 {
                return Err(Error::format(no, "symbol count is not a multiple of the column count"));
            }
            let run = pairs.len() / columns.len();
            let symbols = pairs.chunks(run.max(1)).map(<[_]>::to_vec).collect();
            choices.lines.push(LineChoice { columns, symbols });
        }

        if let Some((no, line)) = it.next() {
            let seed = line
                .strip_prefix("seed ")
                .ok_or_else(|| Error::format(no, format!("unexpected content '{line}'")))?;
            choices.seed = Some(
                seed.trim()
                    .parse()
                    .map_err(|_| Error::format(no, format!("bad seed '{seed}'")))?,
            );
        }
        if let Some((no, line)) = it.next() {
            return Err(Error::format(no, format!("unexpected content '{line}'")));
        }
        Ok(choices)
    }

    /// Checks the ledger against its inputs: each neighbourhood's classes go
    /// to distinct base lines, each array column is labeled by exactly one
    /// point of its line, and each symbol map is a bijection onto the chosen
    /// class.
    pub fn validate(
        &self,
        base: &BasePlane,
        neighbourhoods: &[AffinePlane],
        oas: &[OrthogonalArray],
    ) -> Result<()> {
        let s = base.structure();
        let m = base.order();
        let bad = |msg: String| Err(Error::InvalidChoices(msg));
        if self.points.len() != s.num_points() || self.lines.len() != s.num_lines() {
            return bad(format!(
                "ledger covers {} points and {} lines, base has {} and {}",
                self.points.len(),
                self.lines.len(),
                s.num_points(),
                s.num_lines()
            ));
        }
        for (p, pc) in self.points.iter().enumerate() {
            let lines: Vec<usize> = pc.classes.iter().map(|&(l, _)| l).collect();
            if lines != s.lines_at(p) {
                return bad(format!("point {p}: lines {lines:?} are not the lines through it"));
            }
            let hood = broadcast(neighbourhoods, p);
            let mut used = vec![false; hood.parallel_classes.len()];
            for &(l, c) in &pc.classes {
                if c >= used.len() {
                    return bad(format!("point {p}: class {c} out of range"));
                }
                if std::mem::replace(&mut used[c], true) {
                    return bad(format!("point {p}: class {c} assigned to two lines (again at {l})"));
                }
            }
        }
        for (l, lc) in self.lines.iter().enumerate() {
            let mut cols = lc.columns.clone();
            cols.sort_unstable();
            if cols != s.line(l) || lc.columns.len() != broadcast(oas, l).columns() {
                return bad(format!("line {l}: columns {:?} do not label its points", lc.columns));
            }
            if lc.symbols.len() != lc.columns.len() {
                return bad(format!("line {l}: symbol runs do not match columns"));
            }
            for (j, run) in lc.symbols.iter().enumerate() {
                let p = lc.columns[j];
                let hood = broadcast(neighbourhoods, p);
                let c = self.class_for(p, l).expect("point rows checked above");
                let mut class = hood.parallel_classes[c].clone();
                class.sort_unstable();
                let lines: Vec<usize> = run.iter().map(|&(g, _)| g).collect();
                let mut syms: Vec<usize> = run.iter().map(|&(_, x)| x).collect();
                syms.sort_unstable();
                if lines != class || syms != (0..m).collect::<Vec<_>>() {
                    return bad(format!(
                        "line {l}, column {j}: symbols are not a bijection onto class {c} of point {p}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// For base line `l`, column `j`: class line carrying each symbol.
    pub(crate) fn symbol_lines(&self, l: usize, j: usize) -> Vec<usize> {
        let run = &self.lines[l].symbols[j];
        let mut out = vec![0; run.len()];
        for &(g, s) in run {
            out[s] = g;
        }
        out
    }
}

fn number(no: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::format(no, format!("bad number '{tok}'")))
}

fn arrow(no: usize, tok: &str) -> Result<(usize, usize)> {
    let (a, b) = tok
        .split_once("->")
        .ok_or_else(|| Error::format(no, format!("expected '<a>-><b>', found '{tok}'")))?;
    Ok((number(no, a)?, number(no, b)?))
}

fn split_id(no: usize, rest: &str) -> Result<(usize, &str)> {
    let (id, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::format(no, "missing ':'"))?;
    Ok((number(no, id.trim())?, body))
}

/// Checks list lengths, orders and array shapes shared by both algorithms.
pub(crate) fn check_inputs(
    base: &BasePlane,
    neighbourhoods: &[AffinePlane],
    oas: &[OrthogonalArray],
) -> Result<()> {
    let s = base.structure();
    let m = base.order();
    let mismatch = |msg: String| Err(Error::SizeMismatch(msg));
    if neighbourhoods.len() != 1 && neighbourhoods.len() != s.num_points() {
        return mismatch(format!(
            "{} neighbourhood planes for {} base points",
            neighbourhoods.len(),
            s.num_points()
        ));
    }
    if oas.len() != 1 && oas.len() != s.num_lines() {
        return mismatch(format!("{} arrays for {} base lines", oas.len(), s.num_lines()));
    }
    if let Some(i) = neighbourhoods.iter().position(|a| a.order != m) {
        return mismatch(format!("neighbourhood {i} has order {}, base has {m}", neighbourhoods[i].order));
    }
    let k = base.oa_columns();
    for (i, oa) in oas.iter().enumerate() {
        if oa.columns() != k || oa.symbols() != m {
            return mismatch(format!(
                "array {i} is {}x{} over {} symbols, need {} columns over {m}",
                oa.num_rows(),
                oa.columns(),
                oa.symbols(),
                k
            ));
        }
        if !validate_oa(oa).passed() {
            return mismatch(format!("array {i} is not an orthogonal array"));
        }
    }
    Ok(())
}

/// Lines through each base point receive classes in canonical class order
/// (by ascending line id); columns take the points of their line in
/// ascending order; symbols go to class lines in class order.
pub fn canonical_choices(
    base: &BasePlane,
    neighbourhoods: &[AffinePlane],
    oas: &[OrthogonalArray],
) -> Result<ConstructionChoices> {
    check_inputs(base, neighbourhoods, oas)?;
    build(base, neighbourhoods, None, |_| {})
}

/// Seeded pseudo-random bijections (ChaCha8, stable across platforms).
/// The same inputs and seed always give the same ledger.
pub fn random_choices(
    base: &BasePlane,
    neighbourhoods: &[AffinePlane],
    oas: &[OrthogonalArray],
    seed: u64,
) -> Result<ConstructionChoices> {
    check_inputs(base, neighbourhoods, oas)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build(base, neighbourhoods, Some(seed), |v| v.shuffle(&mut rng))
}

/// Shared ledger builder. `permute` is applied, in a fixed order, to each
/// list of candidates before it is assigned.
fn build(
    base: &BasePlane,
    neighbourhoods: &[AffinePlane],
    seed: Option<u64>,
    mut permute: impl FnMut(&mut Vec<usize>),
) -> Result<ConstructionChoices> {
    let s = base.structure();
    let m = base.order();
    let points = (0..s.num_points())
        .map(|p| {
            let mut classes: Vec<usize> = (0..broadcast(neighbourhoods, p).parallel_classes.len()).collect();
            permute(&mut classes);
            let through = s.lines_at(p);
            if through.len() > classes.len() {
                return Err(Error::SizeMismatch(format!(
                    "{} lines through point {p} but only {} parallel classes",
                    through.len(),
                    classes.len()
                )));
            }
            Ok(PointChoice {
                classes: through.iter().copied().zip(classes).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut choices = ConstructionChoices {
        points,
        lines: Vec::new(),
        seed,
    };
    for l in 0..s.num_lines() {
        let mut columns = s.line(l).to_vec();
        permute(&mut columns);
        let symbols = columns
            .iter()
            .map(|&p| {
                let hood = broadcast(neighbourhoods, p);
                let c = choices.class_for(p, l).expect("assigned above");
                let mut syms: Vec<usize> = (0..m).collect();
                permute(&mut syms);
                let mut run: Vec<(usize, usize)> =
                    hood.parallel_classes[c].iter().copied().zip(syms).collect();
                run.sort_unstable();
                run
            })
            .collect();
        choices.lines.push(LineChoice { columns, symbols });
    }
    Ok(choices)
}
