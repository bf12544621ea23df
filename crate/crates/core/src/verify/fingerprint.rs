//! Relabeling-invariant summaries for screening non-isomorphic planes.
//!
//! Equal fingerprints are necessary for isomorphism, never sufficient.

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::incidence::IncidenceStructure;
use crate::par;

pub type Histogram = BTreeMap<usize, usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub points: usize,
    pub lines: usize,
    pub line_sizes: Histogram,
    pub point_degrees: Histogram,
    /// Sizes of the connected components of "on at least two common lines".
    pub point_class_sizes: Histogram,
    /// Sizes of the connected components of "through at least two common points".
    pub line_class_sizes: Histogram,
    /// `|g ∩ h|` over unordered pairs of distinct lines.
    pub intersections: Histogram,
}

impl Fingerprint {
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }
}

fn histogram(values: impl IntoIterator<Item = usize>) -> Histogram {
    let mut h = Histogram::new();
    for v in values {
        *h.entry(v).or_default() += 1;
    }
    h
}

fn merge(mut a: Histogram, b: Histogram) -> Histogram {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn component_sizes<F: Fn(usize, usize) -> bool + Sync + Send>(n: usize, related: F) -> Histogram {
    let edges: Vec<Vec<usize>> =
        par::map_range(n, |a| (a + 1..n).filter(|&b| related(a, b)).collect());
    let mut parent: Vec<usize> = (0..n).collect();
    for (a, bs) in edges.iter().enumerate() {
        for &b in bs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    histogram(histogram(roots).into_values())
}

pub fn fingerprint(s: &IncidenceStructure) -> Fingerprint {
    let b = s.num_lines();
    let intersections = par::map_range(b, |g| histogram((g + 1..b).map(|h| s.meet_count(g, h))))
        .into_iter()
        .fold(Histogram::new(), merge);
    Fingerprint {
        points: s.num_points(),
        lines: b,
        line_sizes: histogram(s.lines().iter().map(Vec::len)),
        point_degrees: histogram((0..s.num_points()).map(|p| s.degree(p))),
        point_class_sizes: component_sizes(s.num_points(), |p, q| s.join_count(p, q) >= 2),
        line_class_sizes: component_sizes(b, |g, h| s.meet_count(g, h) >= 2),
        intersections,
    }
}

fn write_hist(f: &mut fmt::Formatter<'_>, key: &str, h: &Histogram) -> fmt::Result {
    write!(f, "{key}=")?;
    for (i, (k, v)) in h.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{k}:{v}")?;
    }
    writeln!(f)
}

/// `key=value` lines; histograms as `value:count` lists.
impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points={}", self.points)?;
        writeln!(f, "lines={}", self.lines)?;
        write_hist(f, "line_sizes", &self.line_sizes)?;
        write_hist(f, "point_degrees", &self.point_degrees)?;
        write_hist(f, "point_class_sizes", &self.point_class_sizes)?;
        write_hist(f, "line_class_sizes", &self.line_class_sizes)?;
        write_hist(f, "intersections", &self.intersections)
    }
}
