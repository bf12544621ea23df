use std::collections::BTreeMap;

use crate::error::Result;
use crate::incidence::IncidenceStructure;
use crate::par;
use crate::seeds::{AffinePlane, OrthogonalArray, ProjectivePlane};

use super::choices::check_inputs;
use super::plane::{broadcast, BasePlane, HjelmslevPlane, Provenance};
use super::ConstructionChoices;

/// Builds a 2-uniform (m, m) projective Hjelmslev plane from a projective
/// plane of order `m`, affine planes of order `m` (one per base point, or
/// one for all) and OA(2, m+1, m) arrays (one per base line, or one for all).
pub fn construct_ph(
    base: &ProjectivePlane,
    neighbourhoods: &[AffinePlane],
    oas: &[OrthogonalArray],
    choices: &ConstructionChoices,
) -> Result<HjelmslevPlane> {
    assemble(BasePlane::Projective(base.clone()), neighbourhoods, oas, choices)
}

/// Builds a 2-uniform (m, m) affine Hjelmslev plane from an affine plane of
/// order `m`, neighbourhood planes of order `m` and OA(2, m, m) arrays.
pub fn construct_ah(
    base: &AffinePlane,
    neighbourhoods: &[AffinePlane],
    oas: &[OrthogonalArray],
    choices: &ConstructionChoices,
) -> Result<HjelmslevPlane> {
    assemble(BasePlane::Affine(base.clone()), neighbourhoods, oas, choices)
}

pub(crate) fn assemble(
    base: BasePlane,
    neighbourhoods: &[AffinePlane],
    oas: &[OrthogonalArray],
    choices: &ConstructionChoices,
) -> Result<HjelmslevPlane> {
    check_inputs(&base, neighbourhoods, oas)?;
    choices.validate(&base, neighbourhoods, oas)?;

    let s = base.structure();
    let m = base.order();
    let block = m * m;

    // Lines of class `l` come from the rows of its array, in row order.
    let classes: Vec<Vec<Vec<usize>>> = par::map_range(s.num_lines(), |l| {
        let oa = broadcast(oas, l);
        let lc = &choices.lines[l];
        let symbol_lines: Vec<Vec<usize>> =
            (0..lc.columns.len()).map(|j| choices.symbol_lines(l, j)).collect();
        (0..oa.num_rows())
            .map(|row| {
                let mut pts = Vec::with_capacity(lc.columns.len() * m);
                for (j, &p) in lc.columns.iter().enumerate() {
                    let hood = broadcast(neighbourhoods, p);
                    let local = symbol_lines[j][oa.get(row, j)];
                    pts.extend(hood.structure.line(local).iter().map(|&q| p * block + q));
                }
                pts.sort_unstable();
                pts
            })
            .collect()
    });

    let line_classes = (0..s.num_lines())
        .map(|l| (l * block..(l + 1) * block).collect())
        .collect();
    let point_classes = (0..s.num_points())
        .map(|p| (p * block..(p + 1) * block).collect())
        .collect();
    let labels: BTreeMap<usize, String> = (0..s.num_points())
        .flat_map(|p| {
            let hood = broadcast(neighbourhoods, p);
            let base_name = s.point_name(p);
            (0..block).map(move |q| {
                (p * block + q, format!("({},{})", base_name, hood.structure.point_name(q)))
            })
        })
        .collect();

    let structure = IncidenceStructure::new(s.num_points() * block, classes.into_iter().flatten())?
        .with_point_labels(labels)?;

    Ok(HjelmslevPlane {
        structure,
        t: m,
        r: m,
        kind: base.kind(),
        point_classes,
        line_classes,
        provenance: Some(Provenance {
            base,
            neighbourhoods: neighbourhoods.to_vec(),
            oas: oas.to_vec(),
            choices: choices.clone(),
        }),
    })
}
