use std::collections::HashMap;

use crate::error::{Error, Result, Side};
use crate::incidence::IncidenceStructure;
use crate::par;

/// Points split by the neighbour relation, and lines likewise. Classes are
/// ordered by their smallest member; members ascend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourPartition {
    pub point_classes: Vec<Vec<usize>>,
    pub line_classes: Vec<Vec<usize>>,
    /// Class index of each point.
    pub point_class: Vec<usize>,
    /// Class index of each line.
    pub line_class: Vec<usize>,
}

/// Classes of the relation `related` plus reflexivity. Transitivity is
/// checked, not forced: the first failure (lowest `a`, then `b`, then `c`)
/// is returned as a witness.
fn classes_of<F>(n: usize, side: Side, related: F) -> Result<(Vec<Vec<usize>>, Vec<usize>)>
where
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    let closed: Vec<Vec<usize>> =
        par::map_range(n, |a| (0..n).filter(|&b| b == a || related(a, b)).collect());
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for a in 0..n {
        for &b in &closed[a] {
            if closed[b] == closed[a] {
                continue;
            }
            if let Some(&c) = closed[b].iter().find(|c| closed[a].binary_search(c).is_err()) {
                return Err(Error::NotTransitive { side, a, b, c });
            }
            let c = *closed[a]
                .iter()
                .find(|c| closed[b].binary_search(c).is_err())
                .expect("classes differ");
            return Err(Error::NotTransitive { side, a: b, b: a, c });
        }
        if class_of[a] == usize::MAX {
            for &b in &closed[a] {
                class_of[b] = classes.len();
            }
            classes.push(closed[a].clone());
        }
    }
    Ok((classes, class_of))
}

/// Point neighbourhoods: points joined by at least two lines.
pub fn point_classes(s: &IncidenceStructure) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    classes_of(s.num_points(), Side::Points, |p, q| s.join_count(p, q) >= 2)
}

/// Neighbour relations as in a projective Hjelmslev plane: points on at
/// least two common lines, and dually lines through at least two common
/// points. Both must be equivalence relations.
pub fn neighbour_partition(s: &IncidenceStructure) -> Result<NeighbourPartition> {
    let (point_classes, point_class) = point_classes(s)?;
    let (line_classes, line_class) =
        classes_of(s.num_lines(), Side::Lines, |g, h| s.meet_count(g, h) >= 2)?;
    Ok(NeighbourPartition {
        point_classes,
        line_classes,
        point_class,
        line_class,
    })
}

/// Neighbour relations for affine Hjelmslev planes. Parallel neighbouring
/// lines share no point, so lines are grouped by the set of point
/// neighbourhoods they meet instead of by common points.
pub fn affine_partition(s: &IncidenceStructure) -> Result<NeighbourPartition> {
    let (point_classes, point_class) = point_classes(s)?;
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut line_classes: Vec<Vec<usize>> = Vec::new();
    let mut line_class = Vec::with_capacity(s.num_lines());
    for g in 0..s.num_lines() {
        let image = line_image(s, &point_class, g);
        let c = *index.entry(image).or_insert_with(|| {
            line_classes.push(Vec::new());
            line_classes.len() - 1
        });
        line_classes[c].push(g);
        line_class.push(c);
    }
    Ok(NeighbourPartition {
        point_classes,
        line_classes,
        point_class,
        line_class,
    })
}

/// Point classes met by line `g`, ascending.
fn line_image(s: &IncidenceStructure, point_class: &[usize], g: usize) -> Vec<usize> {
    let mut image: Vec<usize> = s.line(g).iter().map(|&p| point_class[p]).collect();
    image.sort_unstable();
    image.dedup();
    image
}

/// The map collapsing neighbourhoods, and its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Image point of each point (its class index).
    pub point_map: Vec<usize>,
    /// Image line of each line.
    pub line_map: Vec<usize>,
    /// Image line of each line class; not injective when distinct classes
    /// collapse onto one image line.
    pub class_map: Vec<usize>,
    pub image: IncidenceStructure,
}

impl Quotient {
    /// Line classes that collapsed onto the same image line, if any.
    pub fn collapsed_pair(&self) -> Option<(usize, usize)> {
        let mut first: HashMap<usize, usize> = HashMap::new();
        for (c, &img) in self.class_map.iter().enumerate() {
            if let Some(&d) = first.get(&img) {
                return Some((d, c));
            }
            first.insert(img, c);
        }
        None
    }
}

/// Image structure on the classes: class `P` lies on class `g` when some
/// member of `P` lies on some member of `g`. Classes with identical images
/// share one image line.
pub fn quotient(s: &IncidenceStructure, n: &NeighbourPartition) -> Quotient {
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut image_lines: Vec<Vec<usize>> = Vec::new();
    let class_map: Vec<usize> = n
        .line_classes
        .iter()
        .map(|members| {
            let mut img: Vec<usize> = members
                .iter()
                .flat_map(|&g| s.line(g).iter().map(|&p| n.point_class[p]))
                .collect();
            img.sort_unstable();
            img.dedup();
            *index.entry(img.clone()).or_insert_with(|| {
                image_lines.push(img);
                image_lines.len() - 1
            })
        })
        .collect();
    let image = IncidenceStructure::new(n.point_classes.len(), image_lines)
        .expect("images of nonempty lines are nonempty and deduplicated");
    Quotient {
        point_map: n.point_class.clone(),
        line_map: n.line_class.iter().map(|&c| class_map[c]).collect(),
        class_map,
        image,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::projective_plane;

    #[test]
    fn projective_plane_has_singleton_classes() {
        let p = projective_plane(2, None).unwrap();
        let n = neighbour_partition(&p.structure).unwrap();
        assert_eq!(n.point_classes.len(), 7);
        assert!(n.line_classes.iter().all(|c| c.len() == 1));
        let q = quotient(&p.structure, &n);
        assert_eq!(q.image, p.structure);
        assert_eq!(q.collapsed_pair(), None);
    }

    #[test]
    fn glued_triangles_are_not_transitive() {
        // 0~1 (lines A, B) and 1~2 (A, C) but 0, 2 share only A
        let s = IncidenceStructure::new(5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 4]]).unwrap();
        let err = neighbour_partition(&s).unwrap_err();
        assert_eq!(
            err,
            Error::NotTransitive {
                side: Side::Points,
                a: 0,
                b: 1,
                c: 2
            }
        );
    }

    #[test]
    fn collapsed_classes_are_reported() {
        // lines 0 and 1 meet once, so are separate classes, but cover the
        // same pair of point classes {0,1},{2,3}
        let s = IncidenceStructure::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let n = NeighbourPartition {
            point_classes: vec![vec![0, 1], vec![2, 3]],
            line_classes: vec![vec![0], vec![1]],
            point_class: vec![0, 0, 1, 1],
            line_class: vec![0, 1],
        };
        let q = quotient(&s, &n);
        assert_eq!(q.image.num_lines(), 1);
        assert_eq!(q.collapsed_pair(), Some((0, 1)));
    }
}
