//! Deciding, from incidence data alone, whether a structure is a (t, r)
//! projective or affine Hjelmslev plane, and whether it is 2-uniform.
//!
//! Every check is a pure function. Pairwise loops run through [`crate::par`]
//! and report the lowest offending `(id, id)` pair, so reports do not depend
//! on scheduling.

mod fingerprint;
mod neighbour;
mod restriction;

pub use fingerprint::{fingerprint, Fingerprint, Histogram};
pub use neighbour::{affine_partition, neighbour_partition, point_classes, quotient, NeighbourPartition, Quotient};
pub use restriction::{restriction, Restriction};

use crate::construct::{HjelmslevPlane, PlaneKind};
use crate::error::{Error, Result, Side};
use crate::incidence::IncidenceStructure;
use crate::par;
use crate::report::{Params, VerificationReport, Violation};
use crate::seeds::{validate_affine_plane, validate_projective_plane};

use restriction::restrict_class;

fn isqrt_exact(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

fn inconsistent<T>(msg: String) -> Result<T> {
    Err(Error::Inconsistent(msg))
}

/// Extracts `(t, r)` and cross-checks three derivations of `t`: the square
/// root of the neighbourhood size, the number of points a line has in any
/// neighbourhood it meets, and the largest intersection of two distinct
/// neighbouring lines. Then `r = (line size - t) / t` for projective planes
/// and `r = line size / t` for affine ones.
pub fn parameters(s: &IncidenceStructure, n: &NeighbourPartition, kind: PlaneKind) -> Result<Params> {
    let size = s.line(0).len();
    if let Some(g) = s.lines().iter().position(|l| l.len() != size) {
        return inconsistent(format!("line {g} has {} points, line 0 has {size}", s.line(g).len()));
    }
    let class_size = n.point_classes[0].len();
    if let Some(c) = n.point_classes.iter().position(|c| c.len() != class_size) {
        return inconsistent(format!("point class {c} has {} points, class 0 has {class_size}", n.point_classes[c].len()));
    }
    let line_class_size = n.line_classes[0].len();
    if let Some(c) = n.line_classes.iter().position(|c| c.len() != line_class_size) {
        return inconsistent(format!("line class {c} has {} lines, class 0 has {line_class_size}", n.line_classes[c].len()));
    }
    let Some(t) = isqrt_exact(class_size) else {
        return inconsistent(format!("point class size {class_size} is not a square"));
    };
    if kind == PlaneKind::Projective && line_class_size != class_size {
        return inconsistent(format!("line classes have {line_class_size} lines, point classes {class_size} points"));
    }

    let traces = par::find_first(s.num_lines(), |g| {
        let mut counts = std::collections::BTreeMap::<usize, usize>::new();
        for &p in s.line(g) {
            *counts.entry(n.point_class[p]).or_default() += 1;
        }
        counts.values().find(|&&c| c != t).map(|&c| (g, c))
    });
    if let Some((g, c)) = traces {
        return inconsistent(format!("line {g} has {c} points in one neighbourhood, expected t={t}"));
    }

    let widest = par::map_range(n.line_classes.len(), |c| {
        let members = &n.line_classes[c];
        let mut best = None;
        for (i, &g) in members.iter().enumerate() {
            for &h in &members[i + 1..] {
                best = best.max(Some(s.meet_count(g, h)));
            }
        }
        best
    })
    .into_iter()
    .flatten()
    .max();
    if let Some(w) = widest {
        if w != t {
            return inconsistent(format!("neighbouring lines share up to {w} points, expected t={t}"));
        }
    }

    let s_part = match kind {
        PlaneKind::Projective => size.checked_sub(t).filter(|&x| x > 0),
        PlaneKind::Affine => Some(size),
    };
    match s_part {
        Some(x) if x % t == 0 => Ok(Params { t, r: x / t }),
        _ => inconsistent(format!("line size {size} does not decompose with t={t}")),
    }
}

fn uniform_line_size(s: &IncidenceStructure) -> Option<Violation> {
    let size = s.line(0).len();
    s.lines()
        .iter()
        .position(|l| l.len() != size)
        .map(|g| Violation::new("line-size", vec![0, g]))
}

fn transitivity_violation(e: Error) -> Violation {
    match e {
        Error::NotTransitive { side, a, b, c } => {
            let axiom = match side {
                Side::Points => "neighbour-points",
                Side::Lines => "neighbour-lines",
            };
            Violation::new(axiom, vec![a, b, c])
        }
        other => Violation::new(format!("internal:{other}"), vec![0]),
    }
}

fn class_sizes(n: &NeighbourPartition) -> Option<Violation> {
    let ps = n.point_classes[0].len();
    if let Some(c) = n.point_classes.iter().position(|c| c.len() != ps) {
        return Some(Violation::new("point-class-size", vec![0, c]));
    }
    let ls = n.line_classes[0].len();
    n.line_classes
        .iter()
        .position(|c| c.len() != ls)
        .map(|c| Violation::new("line-class-size", vec![0, c]))
}

fn params_violation(e: Error) -> Violation {
    let _ = e;
    Violation::new("params", vec![0])
}

/// Projective Hjelmslev plane check: joins and meets exist, the neighbour
/// relations are equivalences, the quotient is a projective plane, and the
/// parameters are consistent.
pub fn verify_ph(s: &IncidenceStructure) -> VerificationReport {
    analyze_ph(s).0
}

fn analyze_ph(s: &IncidenceStructure) -> (VerificationReport, Option<NeighbourPartition>) {
    if let Some(v) = uniform_line_size(s) {
        return (VerificationReport::fail(vec![v]), None);
    }
    let np = s.num_points();
    let nl = s.num_lines();
    let mut violations = Vec::new();
    if let Some((p, q)) = par::find_first(np, |p| (p + 1..np).find(|&q| s.join_count(p, q) == 0).map(|q| (p, q))) {
        violations.push(Violation::new("ph-points", vec![p, q]));
    }
    if let Some((g, h)) = par::find_first(nl, |g| (g + 1..nl).find(|&h| s.meet_count(g, h) == 0).map(|h| (g, h))) {
        violations.push(Violation::new("ph-lines", vec![g, h]));
    }
    if !violations.is_empty() {
        return (VerificationReport::fail(violations), None);
    }
    let n = match neighbour_partition(s) {
        Ok(n) => n,
        Err(e) => return (VerificationReport::fail(vec![transitivity_violation(e)]), None),
    };
    if let Some(v) = class_sizes(&n) {
        return (VerificationReport::fail(vec![v]), None);
    }
    let q = quotient(s, &n);
    if let Some((c, d)) = q.collapsed_pair() {
        violations.push(Violation::new("quotient-lines", vec![c, d]));
    }
    let image = validate_projective_plane(&q.image);
    violations.extend(image.violations.iter().cloned().map(|v| v.nested("quotient")));
    if !violations.is_empty() {
        return (VerificationReport::fail(violations), None);
    }
    match parameters(s, &n, PlaneKind::Projective) {
        Ok(p) if Some(p.r) == image.params.map(|x| x.r) => (VerificationReport::pass(Some(p)), Some(n)),
        Ok(p) => (
            VerificationReport::fail(vec![Violation::new("params-quotient", vec![p.r, image.params.map_or(0, |x| x.r)])]),
            None,
        ),
        Err(e) => (VerificationReport::fail(vec![params_violation(e)]), None),
    }
}

/// Affine Hjelmslev plane check: joins exist, lines sharing two points are
/// neighbours, the quotient is an affine plane under which disjoint lines
/// map to parallel lines, and the parameters are consistent.
pub fn verify_ah(s: &IncidenceStructure) -> VerificationReport {
    analyze_ah(s).0
}

fn analyze_ah(s: &IncidenceStructure) -> (VerificationReport, Option<NeighbourPartition>) {
    if let Some(v) = uniform_line_size(s) {
        return (VerificationReport::fail(vec![v]), None);
    }
    let np = s.num_points();
    let nl = s.num_lines();
    if let Some((p, q)) = par::find_first(np, |p| (p + 1..np).find(|&q| s.join_count(p, q) == 0).map(|q| (p, q))) {
        return (VerificationReport::fail(vec![Violation::new("ah-points", vec![p, q])]), None);
    }
    let n = match affine_partition(s) {
        Ok(n) => n,
        Err(e) => return (VerificationReport::fail(vec![transitivity_violation(e)]), None),
    };
    if let Some(v) = class_sizes(&n) {
        return (VerificationReport::fail(vec![v]), None);
    }
    let q = quotient(s, &n);
    let image = validate_affine_plane(&q.image);
    let mut violations: Vec<Violation> = image.violations.iter().cloned().map(|v| v.nested("quotient")).collect();
    if !violations.is_empty() {
        return (VerificationReport::fail(violations), None);
    }

    let pair = par::find_first(nl, |g| {
        (g + 1..nl).find_map(|h| {
            let meet = s.meet_count(g, h);
            let same = n.line_class[g] == n.line_class[h];
            if meet >= 2 && !same {
                Some(("ah-neighbour-lines", g, h))
            } else if meet == 0 && !same && q.image.meet_count(q.line_map[g], q.line_map[h]) != 0 {
                Some(("ah-parallel", g, h))
            } else {
                None
            }
        })
    });
    if let Some((axiom, g, h)) = pair {
        violations.push(Violation::new(axiom, vec![g, h]));
        return (VerificationReport::fail(violations), None);
    }
    match parameters(s, &n, PlaneKind::Affine) {
        Ok(p) if Some(p.r) == image.params.map(|x| x.r) => (VerificationReport::pass(Some(p)), Some(n)),
        Ok(p) => (
            VerificationReport::fail(vec![Violation::new("params-quotient", vec![p.r, image.params.map_or(0, |x| x.r)])]),
            None,
        ),
        Err(e) => (VerificationReport::fail(vec![params_violation(e)]), None),
    }
}

/// 2-uniformity: every neighbourhood restriction is an affine plane of order
/// `t`, and within each restriction every line is the trace of the same
/// number of lines. A plane with `t = 1` is an ordinary plane (1-uniform)
/// and passes without restriction checks.
///
/// The structure is first tried as a projective, then as an affine
/// Hjelmslev plane; if both fail, those violations are reported alongside
/// any restriction failures.
pub fn verify_2_uniform(s: &IncidenceStructure) -> VerificationReport {
    let ph = verify_ph(s);
    let base = if ph.passed() { ph } else {
        let ah = verify_ah(s);
        if ah.passed() {
            ah
        } else {
            let mut vs: Vec<Violation> = ph.violations.into_iter().map(|v| v.nested("ph")).collect();
            vs.extend(ah.violations.into_iter().map(|v| v.nested("ah")));
            VerificationReport::fail(vs)
        }
    };
    let mut violations = base.violations.clone();

    let (classes, _) = match point_classes(s) {
        Ok(c) => c,
        Err(e) => {
            violations.push(transitivity_violation(e));
            return VerificationReport::fail(violations);
        }
    };
    let t = match base.params {
        Some(p) => p.t,
        None => isqrt_exact(classes[0].len()).unwrap_or(0),
    };
    if t == 1 && base.passed() {
        return base;
    }
    let per_class = par::map_range(classes.len(), |c| {
        let class = &classes[c];
        let r = restrict_class(s, class, class[0]);
        let affine = r
            .local_structure()
            .map(|local| validate_affine_plane(&local))
            .filter(|rep| rep.passed() && rep.params.map(|p| p.r) == Some(t));
        let mut out = Vec::new();
        if affine.is_none() {
            out.push(Violation::new("uniform-affine", vec![c, class[0]]));
        }
        if let Some(i) = r.multiplicity.iter().position(|&x| x != r.multiplicity[0]) {
            out.push(Violation::new(
                "uniform-multiplicity",
                vec![c, r.multiplicity[0], r.multiplicity[i]],
            ));
        }
        out
    });
    violations.extend(per_class.into_iter().flatten());
    if violations.is_empty() {
        base
    } else {
        VerificationReport::fail(violations)
    }
}

/// Exhaustive intersection profile of a 2-uniform plane with parameter `t`:
/// neighbouring lines meet in exactly `t` points (projective) or in `0` or
/// `t` points (affine); other lines meet in exactly one point, except
/// affine lines whose images are parallel, which are disjoint.
pub fn intersection_violations(
    s: &IncidenceStructure,
    n: &NeighbourPartition,
    t: usize,
    kind: PlaneKind,
) -> Vec<Violation> {
    let q = quotient(s, n);
    let nl = s.num_lines();
    par::find_first(nl, |g| {
        (g + 1..nl).find_map(|h| {
            let meet = s.meet_count(g, h);
            let ok = if n.line_class[g] == n.line_class[h] {
                meet == t || (kind == PlaneKind::Affine && meet == 0)
            } else if kind == PlaneKind::Affine && q.image.meet_count(q.line_map[g], q.line_map[h]) == 0 {
                meet == 0
            } else {
                meet == 1
            };
            (!ok).then(|| Violation::new("intersection", vec![g, h, meet]))
        })
    })
    .into_iter()
    .collect()
}

/// Reads a verified structure back as a [`HjelmslevPlane`] (without
/// provenance), with classes taken from its neighbour partition.
pub fn recognize(s: &IncidenceStructure, kind: PlaneKind) -> Result<HjelmslevPlane> {
    let (report, partition) = match kind {
        PlaneKind::Projective => analyze_ph(s),
        PlaneKind::Affine => analyze_ah(s),
    };
    let (Some(p), Some(n)) = (report.params, partition) else {
        return Err(Error::NotHjelmslev(report.to_text().trim_end().replace('\n', "; ")));
    };
    Ok(HjelmslevPlane {
        structure: s.clone(),
        t: p.t,
        r: p.r,
        kind,
        point_classes: n.point_classes,
        line_classes: n.line_classes,
        provenance: None,
    })
}
