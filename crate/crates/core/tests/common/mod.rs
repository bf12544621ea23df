#![allow(dead_code)]

use std::collections::BTreeMap;

use hjelmslev_core::construct::{canonical_choices, construct_ah, construct_ph, BasePlane, HjelmslevPlane};
use hjelmslev_core::seeds::{affine_from_projective, oa_from_affine, projective_plane, AffinePlane, OrthogonalArray};
use hjelmslev_core::IncidenceStructure;

pub const BASE_SYMBOLS: &str = "0123456789ABC";
pub const LOCAL_SYMBOLS: &str = "RSTUVWXYZ";

fn labels(symbols: &str) -> BTreeMap<usize, String> {
    symbols.chars().enumerate().map(|(i, c)| (i, c.to_string())).collect()
}

fn rows(symbols: &str, rows: &[&str]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| r.chars().map(|c| symbols.find(c).unwrap()).collect())
        .collect()
}

/// The worked example's projective plane of order 3, lines in printed order.
pub fn example_projective() -> IncidenceStructure {
    let lines = rows(
        BASE_SYMBOLS,
        &[
            "0129", "3459", "6789", "036A", "147A", "258A", "048B", "156B", "237B", "075C",
            "138C", "246C", "9ABC",
        ],
    );
    IncidenceStructure::new(13, lines).unwrap().with_point_labels(labels(BASE_SYMBOLS)).unwrap()
}

/// The worked example's affine plane of order 3 on R..Z.
pub fn example_affine() -> IncidenceStructure {
    let lines = rows(
        LOCAL_SYMBOLS,
        &["RST", "UVW", "XYZ", "RUX", "SVY", "TWZ", "RVZ", "SWX", "TUY", "RWY", "SUZ", "TVX"],
    );
    IncidenceStructure::new(9, lines).unwrap().with_point_labels(labels(LOCAL_SYMBOLS)).unwrap()
}

/// The worked example's OA(2,4,3) over L, M, N.
pub fn example_oa() -> OrthogonalArray {
    let data = rows("LMN", &["LLLL", "LMMM", "LNNN", "MLMN", "MMNL", "MNLM", "NLNM", "NMLN", "NNML"]);
    OrthogonalArray::new(4, 3, data).unwrap()
}

pub struct Seeds {
    pub hoods: Vec<AffinePlane>,
    pub oas: Vec<OrthogonalArray>,
}

/// Field-built PG(2,m) with the neighbourhood plane AG(2,m) and its OA.
pub fn ph_seeds(m: usize) -> (hjelmslev_core::seeds::ProjectivePlane, Seeds) {
    let p = projective_plane(m, None).unwrap();
    let a = affine_from_projective(&p, 0).unwrap();
    let oa = oa_from_affine(&a);
    (p, Seeds { hoods: vec![a], oas: vec![oa] })
}

pub fn ah_seeds(m: usize) -> (AffinePlane, Seeds) {
    let a = affine_from_projective(&projective_plane(m, None).unwrap(), 0).unwrap();
    let oa = oa_from_affine(&a).select_columns(&(0..m).collect::<Vec<_>>()).unwrap();
    (a.clone(), Seeds { hoods: vec![a], oas: vec![oa] })
}

pub fn ph(m: usize) -> HjelmslevPlane {
    let (p, s) = ph_seeds(m);
    let c = canonical_choices(&BasePlane::Projective(p.clone()), &s.hoods, &s.oas).unwrap();
    construct_ph(&p, &s.hoods, &s.oas, &c).unwrap()
}

pub fn ah(m: usize) -> HjelmslevPlane {
    let (a, s) = ah_seeds(m);
    let c = canonical_choices(&BasePlane::Affine(a.clone()), &s.hoods, &s.oas).unwrap();
    construct_ah(&a, &s.hoods, &s.oas, &c).unwrap()
}

/// Backtracking isomorphism search: returns a point map `f` with
/// `f(line of a)` a line of `b` for every line. Only for small inputs.
pub fn isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Vec<usize>> {
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return None;
    }
    let target: std::collections::HashSet<Vec<usize>> = b.lines().iter().cloned().collect();
    let n = a.num_points();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(a: &IncidenceStructure, target: &std::collections::HashSet<Vec<usize>>, map: &[usize]) -> bool {
        a.lines().iter().all(|l| {
            if l.iter().any(|&p| map[p] == usize::MAX) {
                return true;
            }
            let mut img: Vec<usize> = l.iter().map(|&p| map[p]).collect();
            img.sort_unstable();
            target.contains(&img)
        })
    }

    fn search(
        p: usize,
        a: &IncidenceStructure,
        b: &IncidenceStructure,
        target: &std::collections::HashSet<Vec<usize>>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if p == map.len() {
            return true;
        }
        for q in 0..map.len() {
            if used[q] || a.degree(p) != b.degree(q) {
                continue;
            }
            map[p] = q;
            used[q] = true;
            if consistent(a, target, map) && search(p + 1, a, b, target, map, used) {
                return true;
            }
            map[p] = usize::MAX;
            used[q] = false;
        }
        false
    }

    search(0, a, b, &target, &mut map, &mut used).then_some(map)
}

/// Labels of the points on line `g`, sorted.
pub fn line_names(s: &IncidenceStructure, g: usize) -> Vec<String> {
    let mut v: Vec<String> = s.line(g).iter().map(|&p| s.point_name(p)).collect();
    v.sort();
    v
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether two columns are equal after renaming the symbols of `b`.
pub fn same_up_to_renaming(a: &[usize], b: &[usize]) -> bool {
    let mut forward = BTreeMap::new();
    let mut backward = BTreeMap::new();
    a.len() == b.len()
        && a.iter().zip(b).all(|(&x, &y)| {
            *forward.entry(y).or_insert(x) == x && *backward.entry(x).or_insert(y) == y
        })
}

/// Whether `b` arises from `a` by permuting rows, permuting columns and
/// renaming symbols column by column. Exhaustive over column permutations
/// and renamings; small arrays only.
pub fn oa_equivalent(a: &OrthogonalArray, b: &OrthogonalArray) -> bool {
    if a.columns() != b.columns() || a.symbols() != b.symbols() || a.num_rows() != b.num_rows() {
        return false;
    }
    let k = a.columns();
    let renamings = permutations(a.symbols());
    let mut target: Vec<Vec<usize>> = b.rows().map(|r| r.to_vec()).collect();
    target.sort();
    for cols in permutations(k) {
        // Odometer over one renaming per column.
        let mut pick = vec![0usize; k];
        loop {
            let mut rows: Vec<Vec<usize>> = a
                .rows()
                .map(|r| (0..k).map(|j| renamings[pick[j]][r[cols[j]]]).collect())
                .collect();
            rows.sort();
            if rows == target {
                return true;
            }
            let mut j = 0;
            while j < k {
                pick[j] += 1;
                if pick[j] < renamings.len() {
                    break;
                }
                pick[j] = 0;
                j += 1;
            }
            if j == k {
                break;
            }
        }
    }
    false
}
