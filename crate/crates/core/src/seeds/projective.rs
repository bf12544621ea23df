use crate::error::{Error, Result};
use crate::field::{FieldSpec, GaloisField};
use crate::incidence::IncidenceStructure;

use super::validate_projective_plane;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePlane {
    pub structure: IncidenceStructure,
    pub order: usize,
}

impl ProjectivePlane {
    /// Accepts any structure passing [`validate_projective_plane`], including
    /// planes loaded from files that no field generates.
    pub fn new(structure: IncidenceStructure) -> Result<Self> {
        let report = validate_projective_plane(&structure);
        match report.params {
            Some(p) if report.passed() => Ok(ProjectivePlane {
                structure,
                order: p.r,
            }),
            _ => Err(Error::NotProjective(report.to_text().trim_end().replace('\n', "; "))),
        }
    }

    pub fn num_points(&self) -> usize {
        self.structure.num_points()
    }

    pub fn num_lines(&self) -> usize {
        self.structure.num_lines()
    }
}

/// Normalized homogeneous triples over GF(q): `(1,a,b)`, then `(0,1,b)`, then
/// `(0,0,1)`. Index order is the id order used for both points and lines.
fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            out.push([1, a, b]);
        }
    }
    for b in 0..q {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out
}

/// PG(2, m): points and lines are normalized nonzero triples, incident when
/// their dot product vanishes. Without an explicit `field` the built-in one
/// of order `m` is used.
pub fn projective_plane(m: usize, field: Option<&FieldSpec>) -> Result<ProjectivePlane> {
    let spec = match field {
        Some(f) if f.order() != m => {
            return Err(Error::BadField(format!(
                "field of order {} cannot build a plane of order {m}",
                f.order()
            )))
        }
        Some(f) => f.clone(),
        None => FieldSpec::for_order(m)?,
    };
    let gf = GaloisField::new(spec);
    let triples = normalized_triples(m);
    let dot = |u: &[usize; 3], x: &[usize; 3]| {
        (0..3).fold(0, |acc, i| gf.add(acc, gf.mul(u[i], x[i])))
    };
    let lines: Vec<Vec<usize>> = triples
        .iter()
        .map(|u| {
            triples
                .iter()
                .enumerate()
                .filter(|(_, x)| dot(u, x) == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let structure = IncidenceStructure::new(triples.len(), lines)?;
    debug_assert!(validate_projective_plane(&structure).passed());
    Ok(ProjectivePlane {
        structure,
        order: m,
    })
}
