use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;

use super::{validate_affine_plane, ProjectivePlane};

/// An affine plane together with its parallel classes.
///
/// Classes are stored canonically: lines within a class sorted by their point
/// sequence, classes ordered by their smallest line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePlane {
    pub structure: IncidenceStructure,
    pub order: usize,
    pub parallel_classes: Vec<Vec<usize>>,
}

impl AffinePlane {
    pub fn new(structure: IncidenceStructure) -> Result<Self> {
        let report = validate_affine_plane(&structure);
        if !report.passed() {
            return Err(Error::NotAffine(report.to_text().trim_end().replace('\n', "; ")));
        }
        let parallel_classes = parallel_classes(&structure)?;
        Ok(AffinePlane {
            order: structure.line(0).len(),
            structure,
            parallel_classes,
        })
    }

    pub fn num_points(&self) -> usize {
        self.structure.num_points()
    }

    /// Index of the class containing line `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.parallel_classes
            .iter()
            .position(|c| c.contains(&g))
            .expect("every line lies in a class")
    }

    /// Line of class `class` through point `p`.
    pub fn line_in_class(&self, class: usize, p: usize) -> usize {
        self.parallel_classes[class]
            .iter()
            .copied()
            .find(|&g| self.structure.contains(g, p))
            .expect("a parallel class partitions the points")
    }

    /// Adds one point per parallel class and the line through them. Point
    /// and line ids of the affine plane are kept; the point for class `c` is
    /// `m² + c` and the new line comes last.
    pub fn projective_completion(&self) -> ProjectivePlane {
        let m2 = self.num_points();
        let mut lines: Vec<Vec<usize>> = self.structure.lines().to_vec();
        for (c, class) in self.parallel_classes.iter().enumerate() {
            for &g in class {
                lines[g].push(m2 + c);
            }
        }
        lines.push((0..self.parallel_classes.len()).map(|c| m2 + c).collect());
        let mut labels = self.structure.point_labels().clone();
        if !labels.is_empty() {
            for c in 0..self.parallel_classes.len() {
                labels.insert(m2 + c, format!("inf{c}"));
            }
        }
        let structure = IncidenceStructure::new(m2 + self.parallel_classes.len(), lines)
            .and_then(|s| s.with_point_labels(labels))
            .expect("completion of a valid affine plane is well formed");
        ProjectivePlane {
            structure,
            order: self.order,
        }
    }
}

fn sort_classes(s: &IncidenceStructure, mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for class in &mut classes {
        class.sort_by(|&g, &h| s.line(g).cmp(s.line(h)));
    }
    classes.sort_by(|a, b| s.line(a[0]).cmp(s.line(b[0])));
    classes
}

/// Partitions the lines of an affine plane into parallel classes, where two
/// lines are parallel when equal or disjoint. Fails with `NotAffine` when
/// that relation is not an equivalence or the classes have the wrong shape.
pub fn parallel_classes(s: &IncidenceStructure) -> Result<Vec<Vec<usize>>> {
    let b = s.num_lines();
    let m = s.line(0).len();
    let mut class_of = vec![usize::MAX; b];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..b {
        if class_of[g] != usize::MAX {
            continue;
        }
        let class: Vec<usize> = (0..b).filter(|&h| h == g || s.meet_count(g, h) == 0).collect();
        for &h in &class {
            if class_of[h] != usize::MAX {
                return Err(Error::NotAffine(format!(
                    "parallelism not transitive: line {h} parallel to lines in two classes"
                )));
            }
            for &k in &class {
                if h != k && s.meet_count(h, k) != 0 {
                    return Err(Error::NotAffine(format!(
                        "parallelism not transitive: {g}∥{h}, {g}∥{k} but {h},{k} meet"
                    )));
                }
            }
            class_of[h] = classes.len();
        }
        classes.push(class);
    }
    if classes.len() != m + 1 || classes.iter().any(|c| c.len() != m) {
        return Err(Error::NotAffine(format!(
            "expected {} classes of {m} lines, found sizes {:?}",
            m + 1,
            classes.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    Ok(sort_classes(s, classes))
}

/// Deletes line `l` and its points. Surviving points keep their relative
/// order; lines keep theirs. Parallel classes are the groups of surviving
/// lines through a common deleted point.
pub fn affine_from_projective(p: &ProjectivePlane, l: usize) -> Result<AffinePlane> {
    let s = &p.structure;
    if l >= s.num_lines() {
        return Err(Error::IdOutOfRange {
            kind: "line",
            id: l,
            limit: s.num_lines(),
        });
    }
    let removed = s.line(l);
    let mut new_id = vec![usize::MAX; s.num_points()];
    let mut next = 0;
    for (q, slot) in new_id.iter_mut().enumerate() {
        if removed.binary_search(&q).is_err() {
            *slot = next;
            next += 1;
        }
    }
    let mut lines = Vec::with_capacity(s.num_lines() - 1);
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (g, line) in s.lines().iter().enumerate() {
        if g == l {
            continue;
        }
        let mut kept = Vec::with_capacity(line.len() - 1);
        for &q in line {
            if new_id[q] == usize::MAX {
                groups.entry(q).or_default().push(lines.len());
            } else {
                kept.push(new_id[q]);
            }
        }
        lines.push(kept);
    }
    let labels = s
        .point_labels()
        .iter()
        .filter(|(&q, _)| new_id[q] != usize::MAX)
        .map(|(&q, label)| (new_id[q], label.clone()))
        .collect();
    let structure = IncidenceStructure::new(next, lines)?.with_point_labels(labels)?;
    let parallel_classes = sort_classes(&structure, groups.into_values().collect());
    Ok(AffinePlane {
        order: p.order,
        structure,
        parallel_classes,
    })
}

/// Whether every line of class `a` meets every line of class `b` exactly once.
pub fn check_orthogonal_classes(plane: &AffinePlane, a: usize, b: usize) -> bool {
    let (Some(ca), Some(cb)) = (plane.parallel_classes.get(a), plane.parallel_classes.get(b))
    else {
        return false;
    };
    ca.iter()
        .all(|&g| cb.iter().all(|&h| plane.structure.meet_count(g, h) == 1))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::projective_plane;
    use super::*;

    fn names(a: &AffinePlane, class: &[usize]) -> Vec<String> {
        class
            .iter()
            .map(|&g| {
                a.structure
                    .line(g)
                    .iter()
                    .map(|&p| a.structure.point_name(p))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn example_affine_classes() {
        let a = AffinePlane::new(example_affine()).unwrap();
        let classes: Vec<Vec<String>> = a.parallel_classes.iter().map(|c| names(&a, c)).collect();
        assert_eq!(
            classes,
            vec![
                vec!["RST", "UVW", "XYZ"],
                vec!["RUX", "SVY", "TWZ"],
                vec!["RVZ", "SWX", "TUY"],
                vec!["RWY", "SUZ", "TVX"],
            ]
        );
        for s in 0..4 {
            for t in 0..4 {
                assert_eq!(check_orthogonal_classes(&a, s, t), s != t);
            }
        }
    }

    #[test]
    fn fano_minus_line() {
        let p = projective_plane(2, None).unwrap();
        for l in 0..7 {
            let a = affine_from_projective(&p, l).unwrap();
            assert_eq!(a.num_points(), 4);
            assert_eq!(a.structure.num_lines(), 6);
            assert_eq!(a.parallel_classes.len(), 3);
            assert!(a.parallel_classes.iter().all(|c| c.len() == 2));
            assert_eq!(a.parallel_classes, parallel_classes(&a.structure).unwrap());
        }
        assert!(affine_from_projective(&p, 7).is_err());
    }

    #[test]
    fn non_affine_disjointness() {
        // two disjoint lines plus a line meeting only one of them
        let s = IncidenceStructure::new(
            5,
            vec![vec![0, 1], vec![2, 3], vec![3, 4], vec![0, 4]],
        )
        .unwrap();
        assert!(matches!(parallel_classes(&s), Err(Error::NotAffine(_))));
    }

    #[test]
    fn completion_is_projective() {
        for m in [2, 3, 4, 5] {
            let p = projective_plane(m, None).unwrap();
            let a = affine_from_projective(&p, 0).unwrap();
            let back = a.projective_completion();
            assert!(super::super::validate_projective_plane(&back.structure).passed());
            assert_eq!(back.order, m);
        }
    }
}
