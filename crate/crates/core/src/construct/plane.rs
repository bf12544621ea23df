use crate::incidence::IncidenceStructure;
use crate::seeds::{AffinePlane, OrthogonalArray, ProjectivePlane};

use super::ConstructionChoices;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaneKind {
    Projective,
    Affine,
}

impl std::fmt::Display for PlaneKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlaneKind::Projective => "projective",
            PlaneKind::Affine => "affine",
        })
    }
}

/// The ordinary plane whose points are blown up into neighbourhoods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasePlane {
    Projective(ProjectivePlane),
    Affine(AffinePlane),
}

impl BasePlane {
    pub fn structure(&self) -> &IncidenceStructure {
        match self {
            BasePlane::Projective(p) => &p.structure,
            BasePlane::Affine(a) => &a.structure,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            BasePlane::Projective(p) => p.order,
            BasePlane::Affine(a) => a.order,
        }
    }

    pub fn kind(&self) -> PlaneKind {
        match self {
            BasePlane::Projective(_) => PlaneKind::Projective,
            BasePlane::Affine(_) => PlaneKind::Affine,
        }
    }

    /// Columns each orthogonal array must have: one per point of a base line.
    pub fn oa_columns(&self) -> usize {
        match self {
            BasePlane::Projective(p) => p.order + 1,
            BasePlane::Affine(a) => a.order,
        }
    }
}

/// A point of the constructed plane as (base point, point of that base
/// point's neighbourhood). Flattened id is `base * m² + local`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositePoint {
    pub base: usize,
    pub local: usize,
}

impl CompositePoint {
    pub fn flatten(self, m: usize) -> usize {
        self.base * m * m + self.local
    }

    pub fn unflatten(id: usize, m: usize) -> Self {
        CompositePoint {
            base: id / (m * m),
            local: id % (m * m),
        }
    }
}

/// Everything needed to replay a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub base: BasePlane,
    /// One per base point, or a single plane used everywhere.
    pub neighbourhoods: Vec<AffinePlane>,
    /// One per base line, or a single array used everywhere.
    pub oas: Vec<OrthogonalArray>,
    pub choices: ConstructionChoices,
}

impl Provenance {
    pub fn neighbourhood(&self, p: usize) -> &AffinePlane {
        broadcast(&self.neighbourhoods, p)
    }

    pub fn oa(&self, l: usize) -> &OrthogonalArray {
        broadcast(&self.oas, l)
    }
}

pub(crate) fn broadcast<T>(items: &[T], i: usize) -> &T {
    if items.len() == 1 {
        &items[0]
    } else {
        &items[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HjelmslevPlane {
    pub structure: IncidenceStructure,
    pub t: usize,
    pub r: usize,
    pub kind: PlaneKind,
    /// Point ids grouped by neighbourhood, indexed by base point.
    pub point_classes: Vec<Vec<usize>>,
    /// Line ids grouped by neighbourhood, indexed by base line.
    pub line_classes: Vec<Vec<usize>>,
    /// `None` for planes not produced by a construction (e.g. truncations).
    pub provenance: Option<Provenance>,
}

impl HjelmslevPlane {
    pub fn order(&self) -> usize {
        self.t
    }

    pub fn composite(&self, id: usize) -> CompositePoint {
        CompositePoint::unflatten(id, self.t)
    }
}
