use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::seeds::{complete_oa, validate_oa, AffinePlane, OrthogonalArray};

use super::algorithm::assemble;
use super::choices::{LineChoice, PointChoice};
use super::plane::{broadcast, BasePlane, HjelmslevPlane, PlaneKind, Provenance};
use super::ConstructionChoices;

/// Removes the lines of line class `l` and every point on them. Surviving
/// points and lines keep their relative order.
pub fn truncate_ph(h: &HjelmslevPlane, l: usize) -> Result<HjelmslevPlane> {
    if h.kind != PlaneKind::Projective {
        return Err(Error::NotProjectiveKind);
    }
    let Some(removed_lines) = h.line_classes.get(l) else {
        return Err(Error::IdOutOfRange {
            kind: "line class",
            id: l,
            limit: h.line_classes.len(),
        });
    };
    let s = &h.structure;
    let mut removed_point = vec![false; s.num_points()];
    for &g in removed_lines {
        for &p in s.line(g) {
            removed_point[p] = true;
        }
    }
    let point_map = renumber(&removed_point);
    let mut removed_line = vec![false; s.num_lines()];
    for &g in removed_lines {
        removed_line[g] = true;
    }
    let line_map = renumber(&removed_line);

    let lines = s
        .lines()
        .iter()
        .zip(&removed_line)
        .filter(|(_, &gone)| !gone)
        .map(|(line, _)| line.iter().filter_map(|&p| point_map[p]).collect::<Vec<_>>());
    let labels: BTreeMap<usize, String> = s
        .point_labels()
        .iter()
        .filter_map(|(&p, label)| point_map[p].map(|q| (q, label.clone())))
        .collect();
    let structure = IncidenceStructure::new(point_map.iter().flatten().count(), lines)?
        .with_point_labels(labels)?;

    let remap = |classes: &[Vec<usize>], map: &[Option<usize>]| -> Vec<Vec<usize>> {
        classes
            .iter()
            .map(|c| c.iter().filter_map(|&x| map[x]).collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect()
    };
    Ok(HjelmslevPlane {
        point_classes: remap(&h.point_classes, &point_map),
        line_classes: remap(&h.line_classes, &line_map),
        structure,
        t: h.t,
        r: h.r,
        kind: PlaneKind::Affine,
        provenance: None,
    })
}

fn renumber(removed: &[bool]) -> Vec<Option<usize>> {
    let mut next = 0;
    removed
        .iter()
        .map(|&gone| {
            (!gone).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

/// Extends a constructed (m, m) affine Hjelmslev plane to an (m, m)
/// projective one.
///
/// The base affine plane gains a point per parallel class and a line through
/// them. Every array is completed by one column, labeled with the new point
/// of its line's class. The new neighbourhoods (one per class, or one for
/// all) take classes for their lines in canonical order, and the new line
/// uses `infinity_oa`. Truncating the result at its last line class gives
/// back `h`.
pub fn extend_ah(
    h: &HjelmslevPlane,
    new_neighbourhoods: &[AffinePlane],
    infinity_oa: &OrthogonalArray,
) -> Result<HjelmslevPlane> {
    if h.kind != PlaneKind::Affine {
        return Err(Error::NotAffineKind);
    }
    let Some(Provenance {
        base: BasePlane::Affine(affine),
        neighbourhoods,
        oas,
        choices,
    }) = &h.provenance
    else {
        return Err(Error::MissingProvenance);
    };
    let m = affine.order;
    let m2 = affine.num_points();
    let num_classes = affine.parallel_classes.len();
    if new_neighbourhoods.len() != 1 && new_neighbourhoods.len() != num_classes {
        return Err(Error::SizeMismatch(format!(
            "{} new neighbourhoods for {num_classes} parallel classes",
            new_neighbourhoods.len()
        )));
    }
    if infinity_oa.columns() != m + 1 || infinity_oa.symbols() != m || !validate_oa(infinity_oa).passed() {
        return Err(Error::SizeMismatch(format!("infinity array must be a valid OA(2,{},{m})", m + 1)));
    }

    let projective = affine.projective_completion();
    let infinity_line = projective.structure.num_lines() - 1;

    let mut hoods: Vec<AffinePlane> = (0..m2).map(|p| broadcast(neighbourhoods, p).clone()).collect();
    hoods.extend((0..num_classes).map(|c| broadcast(new_neighbourhoods, c).clone()));

    let mut completed: Vec<OrthogonalArray> = Vec::with_capacity(infinity_line + 1);
    if oas.len() == 1 {
        let done = complete_oa(&oas[0])?;
        completed.resize(infinity_line, done);
    } else {
        for oa in oas {
            completed.push(complete_oa(oa)?);
        }
    }
    completed.push(infinity_oa.clone());

    let class_of_line: Vec<usize> = {
        let mut v = vec![0; infinity_line];
        for (c, class) in affine.parallel_classes.iter().enumerate() {
            for &g in class {
                v[g] = c;
            }
        }
        v
    };

    let mut points = choices.points.clone();
    for c in 0..num_classes {
        let through = projective.structure.lines_at(m2 + c);
        points.push(PointChoice {
            classes: through.iter().copied().zip(0..).collect(),
        });
    }
    let ext = ConstructionChoices {
        points,
        lines: Vec::new(),
        seed: choices.seed,
    };
    let canonical_run = |p: usize, l: usize| -> Vec<(usize, usize)> {
        let c = ext.class_for(p, l).expect("infinity point lies on line");
        let mut run: Vec<(usize, usize)> =
            hoods[p].parallel_classes[c].iter().copied().zip(0..).collect();
        run.sort_unstable();
        run
    };
    let mut lines = Vec::with_capacity(infinity_line + 1);
    for (l, lc) in choices.lines.iter().enumerate() {
        let inf = m2 + class_of_line[l];
        let mut columns = lc.columns.clone();
        columns.push(inf);
        let mut symbols = lc.symbols.clone();
        symbols.push(canonical_run(inf, l));
        lines.push(LineChoice { columns, symbols });
    }
    let inf_points: Vec<usize> = (m2..m2 + num_classes).collect();
    lines.push(LineChoice {
        symbols: inf_points.iter().map(|&p| canonical_run(p, infinity_line)).collect(),
        columns: inf_points,
    });
    let ext = ConstructionChoices { lines, ..ext };

    assemble(BasePlane::Projective(projective), &hoods, &completed, &ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{canonical_choices, construct_ah, construct_ph};
    use crate::seeds::{affine_from_projective, oa_from_affine, projective_plane};

    fn ph(m: usize) -> HjelmslevPlane {
        let p = projective_plane(m, None).unwrap();
        let a = affine_from_projective(&p, 0).unwrap();
        let oas = vec![oa_from_affine(&a)];
        let hoods = vec![a];
        let c = canonical_choices(&BasePlane::Projective(p.clone()), &hoods, &oas).unwrap();
        construct_ph(&p, &hoods, &oas, &c).unwrap()
    }

    fn ah(m: usize) -> HjelmslevPlane {
        let a = affine_from_projective(&projective_plane(m, None).unwrap(), 0).unwrap();
        let oas = vec![oa_from_affine(&a).select_columns(&(0..m).collect::<Vec<_>>()).unwrap()];
        let hoods = vec![a.clone()];
        let c = canonical_choices(&BasePlane::Affine(a.clone()), &hoods, &oas).unwrap();
        construct_ah(&a, &hoods, &oas, &c).unwrap()
    }

    #[test]
    fn truncation_counts() {
        for m in [2, 3] {
            let h = ph(m);
            let t = truncate_ph(&h, 4).unwrap();
            assert_eq!(t.structure.num_points(), m.pow(4));
            assert_eq!(t.structure.num_lines(), (m * m + m) * m * m);
            assert_eq!(h.structure.num_points() - t.structure.num_points(), (m + 1) * m * m);
            assert!(t.structure.lines().iter().all(|l| l.len() == m * m));
            assert_eq!(t.point_classes.len(), m * m);
            assert_eq!(t.kind, PlaneKind::Affine);
        }
    }

    #[test]
    fn truncation_errors() {
        let h = ph(2);
        assert!(matches!(truncate_ph(&h, 7), Err(Error::IdOutOfRange { .. })));
        let t = truncate_ph(&h, 0).unwrap();
        assert_eq!(truncate_ph(&t, 0).unwrap_err(), Error::NotProjectiveKind);
        assert_eq!(
            extend_ah(&t, &[], &OrthogonalArray::new(1, 1, vec![vec![0]]).unwrap()).unwrap_err(),
            Error::MissingProvenance
        );
    }

    #[test]
    fn extend_then_truncate_round_trips() {
        for m in [2, 3] {
            let h = ah(m);
            let prov = h.provenance.as_ref().unwrap();
            let inf = complete_oa(&prov.oas[0]).unwrap();
            let e = extend_ah(&h, &prov.neighbourhoods, &inf).unwrap();
            assert_eq!(e.kind, PlaneKind::Projective);
            assert_eq!(e.structure.num_points(), (m * m + m + 1) * m * m);
            let back = truncate_ph(&e, e.line_classes.len() - 1).unwrap();
            assert_eq!(back.structure.digest(), h.structure.digest());
        }
    }
}
