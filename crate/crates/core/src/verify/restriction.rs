use std::collections::BTreeMap;

use crate::error::Result;
use crate::incidence::IncidenceStructure;

use super::neighbour::point_classes;

/// The geometry induced on one point neighbourhood.
///
/// Only intersections with at least two points count as restricted lines;
/// empty and single-point traces are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub center: usize,
    /// The neighbourhood of `center`, ascending.
    pub points: Vec<usize>,
    /// Distinct traces `g ∩ class`, lexicographic.
    pub lines: Vec<Vec<usize>>,
    /// Number of lines of the whole plane with each trace.
    pub multiplicity: Vec<usize>,
}

impl Restriction {
    /// The traces renumbered onto `0..points.len()`.
    pub fn local_structure(&self) -> Option<IncidenceStructure> {
        if self.lines.is_empty() {
            return None;
        }
        let lines = self.lines.iter().map(|l| {
            l.iter()
                .map(|p| self.points.binary_search(p).expect("trace inside class"))
                .collect::<Vec<_>>()
        });
        IncidenceStructure::new(self.points.len(), lines).ok()
    }
}

pub fn restriction(s: &IncidenceStructure, center: usize) -> Result<Restriction> {
    let (classes, class_of) = point_classes(s)?;
    Ok(restrict_class(s, &classes[class_of[center]], center))
}

pub(crate) fn restrict_class(s: &IncidenceStructure, class: &[usize], center: usize) -> Restriction {
    let mut lines: Vec<usize> = class.iter().flat_map(|&q| s.lines_at(q).iter().copied()).collect();
    lines.sort_unstable();
    lines.dedup();
    let mut traces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for g in lines {
        let trace = crate::incidence::merge_intersection(s.line(g), class);
        if trace.len() >= 2 {
            *traces.entry(trace).or_default() += 1;
        }
    }
    let (lines, multiplicity) = traces.into_iter().unzip();
    Restriction {
        center,
        points: class.to_vec(),
        lines,
        multiplicity,
    }
}
