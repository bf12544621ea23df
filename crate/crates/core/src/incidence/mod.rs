//! Dense incidence structures: points are `0..num_points`, lines are point
//! sets. Every geometry in the crate is carried by an [`IncidenceStructure`].

pub(crate) mod format;

use std::collections::{BTreeMap, HashMap};

use sha2::{Digest, Sha256};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub use format::{emit_structure, parse_structure};

/// Structures with at most this many points (resp. lines) get packed bit rows
/// for intersections; larger ones fall back to sorted merges.
pub const DEFAULT_BITSET_THRESHOLD: usize = 4096;

#[derive(Clone, Debug)]
pub struct IncidenceStructure {
    num_points: usize,
    /// Each line sorted ascending.
    lines: Vec<Vec<usize>>,
    point_labels: BTreeMap<usize, String>,
    line_labels: BTreeMap<usize, String>,
    /// Lines through each point, ascending.
    point_lines: Vec<Vec<usize>>,
    line_bits: Option<Vec<BitSet>>,
    point_bits: Option<Vec<BitSet>>,
}

impl PartialEq for IncidenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.num_points == other.num_points
            && self.lines == other.lines
            && self.point_labels == other.point_labels
            && self.line_labels == other.line_labels
    }
}

impl Eq for IncidenceStructure {}

impl IncidenceStructure {
    /// Builds a validated structure. Each line is treated as a set; repeated
    /// points within one line collapse.
    pub fn new<L, I>(num_points: usize, lines: L) -> Result<Self>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        Self::with_threshold(num_points, lines, DEFAULT_BITSET_THRESHOLD)
    }

    pub fn with_threshold<L, I>(num_points: usize, lines: L, bitset_threshold: usize) -> Result<Self>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut stored: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (g, line) in lines.into_iter().enumerate() {
            let mut pts: Vec<usize> = line.into_iter().collect();
            pts.sort_unstable();
            pts.dedup();
            if pts.is_empty() {
                return Err(Error::EmptyLine(g));
            }
            if let Some(&p) = pts.iter().find(|&&p| p >= num_points) {
                return Err(Error::PointOutOfRange {
                    line: g,
                    point: p,
                    num_points,
                });
            }
            if let Some(&first) = seen.get(&pts) {
                return Err(Error::DuplicateLine { first, line: g });
            }
            seen.insert(pts.clone(), g);
            stored.push(pts);
        }
        if stored.is_empty() {
            return Err(Error::NoLines);
        }

        let mut point_lines = vec![Vec::new(); num_points];
        for (g, line) in stored.iter().enumerate() {
            for &p in line {
                point_lines[p].push(g);
            }
        }
        let line_bits = (num_points <= bitset_threshold).then(|| {
            stored
                .iter()
                .map(|l| BitSet::from_indices(num_points, l.iter().copied()))
                .collect()
        });
        let num_lines = stored.len();
        let point_bits = (num_lines <= bitset_threshold).then(|| {
            point_lines
                .iter()
                .map(|ls| BitSet::from_indices(num_lines, ls.iter().copied()))
                .collect()
        });

        Ok(IncidenceStructure {
            num_points,
            lines: stored,
            point_labels: BTreeMap::new(),
            line_labels: BTreeMap::new(),
            point_lines,
            line_bits,
            point_bits,
        })
    }

    pub fn with_point_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some((&id, _)) = labels.iter().find(|(&id, _)| id >= self.num_points) {
            return Err(Error::IdOutOfRange {
                kind: "point",
                id,
                limit: self.num_points,
            });
        }
        self.point_labels = labels;
        Ok(self)
    }

    pub fn with_line_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some((&id, _)) = labels.iter().find(|(&id, _)| id >= self.lines.len()) {
            return Err(Error::IdOutOfRange {
                kind: "line",
                id,
                limit: self.lines.len(),
            });
        }
        self.line_labels = labels;
        Ok(self)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Points of line `g`, ascending. Panics if `g` is out of range.
    pub fn line(&self, g: usize) -> &[usize] {
        &self.lines[g]
    }

    pub fn point_labels(&self) -> &BTreeMap<usize, String> {
        &self.point_labels
    }

    pub fn line_labels(&self) -> &BTreeMap<usize, String> {
        &self.line_labels
    }

    /// Label of `p`, or its decimal id when unlabeled.
    pub fn point_name(&self, p: usize) -> String {
        self.point_labels
            .get(&p)
            .cloned()
            .unwrap_or_else(|| p.to_string())
    }

    /// Point id carrying `label`, if any.
    pub fn point_by_label(&self, label: &str) -> Option<usize> {
        self.point_labels
            .iter()
            .find_map(|(&p, l)| (l == label).then_some(p))
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p < self.num_points {
            Ok(())
        } else {
            Err(Error::IdOutOfRange {
                kind: "point",
                id: p,
                limit: self.num_points,
            })
        }
    }

    fn check_line(&self, g: usize) -> Result<()> {
        if g < self.lines.len() {
            Ok(())
        } else {
            Err(Error::IdOutOfRange {
                kind: "line",
                id: g,
                limit: self.lines.len(),
            })
        }
    }

    /// Ids of the lines containing `p`, ascending.
    pub fn lines_through(&self, p: usize) -> Result<&[usize]> {
        self.check_point(p)?;
        Ok(&self.point_lines[p])
    }

    /// Unchecked variant of [`lines_through`](Self::lines_through) for hot loops.
    pub(crate) fn lines_at(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn degree(&self, p: usize) -> usize {
        self.point_lines[p].len()
    }

    pub fn contains(&self, g: usize, p: usize) -> bool {
        match &self.line_bits {
            Some(bits) => bits[g].contains(p),
            None => self.lines[g].binary_search(&p).is_ok(),
        }
    }

    /// Points shared by two distinct lines, ascending.
    pub fn common_points(&self, g: usize, h: usize) -> Result<Vec<usize>> {
        self.check_line(g)?;
        self.check_line(h)?;
        if g == h {
            return Err(Error::SameElement { kind: "line", id: g });
        }
        Ok(merge_intersection(&self.lines[g], &self.lines[h]))
    }

    /// Lines shared by two distinct points, ascending.
    pub fn common_lines(&self, p: usize, q: usize) -> Result<Vec<usize>> {
        self.check_point(p)?;
        self.check_point(q)?;
        if p == q {
            return Err(Error::SameElement { kind: "point", id: p });
        }
        Ok(merge_intersection(&self.point_lines[p], &self.point_lines[q]))
    }

    /// `|g ∩ h|` without bounds or distinctness checks.
    #[inline]
    pub fn meet_count(&self, g: usize, h: usize) -> usize {
        match &self.line_bits {
            Some(bits) => bits[g].intersection_len(&bits[h]),
            None => merge_count(&self.lines[g], &self.lines[h]),
        }
    }

    /// Number of lines through both `p` and `q`, unchecked.
    #[inline]
    pub fn join_count(&self, p: usize, q: usize) -> usize {
        match &self.point_bits {
            Some(bits) => bits[p].intersection_len(&bits[q]),
            None => merge_count(&self.point_lines[p], &self.point_lines[q]),
        }
    }

    /// Deterministic sorted form with a content digest.
    pub fn canonicalize(&self) -> CanonicalForm {
        let mut lines = self.lines.clone();
        lines.sort();
        let structure = IncidenceStructure::new(self.num_points, lines)
            .expect("reordering a valid structure keeps it valid")
            .with_point_labels(self.point_labels.clone())
            .expect("labels already validated");
        let digest = digest_of(&structure);
        CanonicalForm { structure, digest }
    }

    /// Digest of the canonical incidence data (labels excluded).
    pub fn digest(&self) -> String {
        let mut lines = self.lines.clone();
        lines.sort();
        digest_lines(self.num_points, &lines)
    }

    /// Renames points through `map` (old id → new id, a permutation of
    /// `0..num_points`) and reorders lines so that new line `i` is old line
    /// `line_order[i]`. Labels follow their points.
    pub fn permuted(&self, point_map: &[usize], line_order: &[usize]) -> Result<Self> {
        if point_map.len() != self.num_points || line_order.len() != self.lines.len() {
            return Err(Error::SizeMismatch("permutation length".into()));
        }
        let lines = line_order
            .iter()
            .map(|&g| self.lines[g].iter().map(|&p| point_map[p]).collect::<Vec<_>>());
        let labels = self
            .point_labels
            .iter()
            .map(|(&p, l)| (point_map[p], l.clone()))
            .collect();
        IncidenceStructure::new(self.num_points, lines)?.with_point_labels(labels)
    }
}

fn digest_lines(num_points: usize, sorted_lines: &[Vec<usize>]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("INC 1\npoints {}\nlines {}\n", num_points, sorted_lines.len()));
    for line in sorted_lines {
        hasher.update(join_ids(line));
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

fn digest_of(s: &IncidenceStructure) -> String {
    digest_lines(s.num_points, &s.lines)
}

pub(crate) fn join_ids(ids: &[usize]) -> String {
    let mut out = String::new();
    for (i, id) in ids.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&id.to_string());
    }
    out
}

pub(crate) fn merge_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn merge_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Lines sorted ascending as integer sequences, plus a stable SHA-256 digest
/// of that representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub structure: IncidenceStructure,
    pub digest: String,
}
