//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so that the verdict lines are printed on
//! every `cargo test`; exits non-zero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hjelmslev_core::construct::*;
use hjelmslev_core::incidence::emit_structure;
use hjelmslev_core::seeds::*;
use hjelmslev_core::verify::*;
use hjelmslev_core::{Error, IncidenceStructure, Params};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const ORDERS: [usize; 4] = [2, 3, 4, 5];

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(took)
}

/// The nine lines printed for the {3,4,5,9} neighbourhood, with `(4,X)`
/// read as `(4,W)` in the two rows whose column-4 symbol is M: the class
/// line labeled M there is UVW, so `(4,X)` cannot occur.
const PRINTED: [&str; 9] = [
    "3R 3S 3T 4R 4S 4T 5R 5S 5T 9R 9U 9X",
    "3R 3S 3T 4U 4V 4W 5U 5V 5W 9S 9V 9Y",
    "3R 3S 3T 4X 4Y 4Z 5X 5Y 5Z 9T 9W 9Z",
    "3U 3V 3W 4R 4S 4T 5U 5V 5W 9T 9W 9Z",
    "3U 3V 3W 4U 4V 4X 5X 5Y 5Z 9R 9U 9X",
    "3U 3V 3W 4X 4Y 4Z 5R 5S 5T 9S 9V 9Y",
    "3X 3Y 3Z 4R 4S 4T 5X 5Y 5Z 9S 9V 9Y",
    "3X 3Y 3Z 4U 4V 4X 5R 5S 5T 9T 9W 9Z",
    "3X 3Y 3Z 4X 4Y 4Z 5U 5V 5W 9R 9U 9X",
];
const ERRATUM_ROWS: [usize; 2] = [4, 7];

fn golden_rows(corrected: bool) -> BTreeSet<BTreeSet<String>> {
    PRINTED
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.split(' ')
                .map(|tok| {
                    let fix = corrected && ERRATUM_ROWS.contains(&i) && tok == "4X";
                    let tok = if fix { "4W" } else { tok };
                    format!("({},{})", &tok[..1], &tok[1..])
                })
                .collect()
        })
        .collect()
}

fn golden() -> Outcome {
    let start = Instant::now();
    let p = ProjectivePlane::new(common::example_projective()).map_err(|e| e.to_string())?;
    let a = AffinePlane::new(common::example_affine()).map_err(|e| e.to_string())?;
    let base = BasePlane::Projective(p.clone());
    let (hoods, oas) = (vec![a], vec![common::example_oa()]);

    let file = canonical_choices(&base, &hoods, &oas).unwrap().to_text();
    let choices = ConstructionChoices::parse(&file).map_err(|e| e.to_string())?;
    // The ledger must make the example's own choices on line {3,4,5,9}:
    // rows class at 3, 4, 5 and columns class at 9, symbols in line order.
    let l = 1;
    ensure!(choices.lines[l].columns == [3, 4, 5, 9], "columns {:?}", choices.lines[l].columns);
    for (p, class, first_line) in [(3, 0, 0), (4, 0, 0), (5, 0, 0), (9, 1, 3)] {
        ensure!(choices.class_for(p, l) == Some(class), "point {p} uses class {:?}", choices.class_for(p, l));
        let j = choices.lines[l].columns.iter().position(|&q| q == p).unwrap();
        let expect: Vec<(usize, usize)> = (0..3).map(|s| (first_line + s, s)).collect();
        ensure!(choices.lines[l].symbols[j] == expect, "point {p} symbols {:?}", choices.lines[l].symbols[j]);
    }

    let h = construct_ph(&p, &hoods, &oas, &choices).map_err(|e| e.to_string())?;
    let got: BTreeSet<BTreeSet<String>> = h.line_classes[l]
        .iter()
        .map(|&g| h.structure.line(g).iter().map(|&q| h.structure.point_name(q)).collect())
        .collect();
    let want = golden_rows(true);
    ensure!(got == want, "neighbourhood differs: extra {:?}", got.difference(&want).collect::<Vec<_>>());
    let printed = golden_rows(false);
    let off = printed.difference(&got).count();
    ensure!(off == ERRATUM_ROWS.len(), "{off} printed rows differ, expected only the erratum rows");
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("9/9 lines match, {off} printed rows corrected (4,X)->(4,W), {took:.2?}"))
}

fn counts() -> Outcome {
    let start = Instant::now();
    for m in ORDERS {
        let h = common::ph(m);
        let s = &h.structure;
        let n = (m * m + m + 1) * m * m;
        ensure!(s.num_points() == n && s.num_lines() == n, "m={m}: {} points {} lines", s.num_points(), s.num_lines());
        ensure!(s.lines().iter().all(|l| l.len() == m * m + m), "m={m}: line size");
        ensure!((0..n).all(|p| s.degree(p) == m * m + m), "m={m}: point degree");
        ensure!(h.point_classes.iter().all(|c| c.len() == m * m), "m={m}: point class size");
        ensure!(h.line_classes.iter().all(|c| c.len() == m * m), "m={m}: line class size");
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("m=2..5, {took:.2?}"))
}

fn axioms() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    for m in ORDERS {
        for (h, kind) in [(common::ph(m), PlaneKind::Projective), (common::ah(m), PlaneKind::Affine)] {
            let s = &h.structure;
            let report = match kind {
                PlaneKind::Projective => verify_ph(s),
                PlaneKind::Affine => verify_ah(s),
            };
            ensure!(report.params == Some(Params { t: m, r: m }), "m={m} {kind}: {report}");
            let n = match kind {
                PlaneKind::Projective => neighbour_partition(s),
                PlaneKind::Affine => affine_partition(s),
            }
            .map_err(|e| e.to_string())?;
            let bad = intersection_violations(s, &n, m, kind);
            ensure!(bad.is_empty(), "m={m} {kind}: {:?}", bad);
            pairs += s.num_lines() * (s.num_lines() - 1) / 2;
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("{pairs} line pairs checked, {took:.2?}"))
}

fn base_image(h: &HjelmslevPlane, n: &NeighbourPartition) -> IncidenceStructure {
    let q = quotient(&h.structure, n);
    let base_of = |c: usize| h.composite(n.point_classes[c][0]).base;
    let lines = q.image.lines().iter().map(|l| l.iter().map(|&c| base_of(c)).collect::<Vec<_>>());
    IncidenceStructure::new(q.image.num_points(), lines).unwrap()
}

fn quotients() -> Outcome {
    for m in ORDERS {
        let ph = common::ph(m);
        let n = neighbour_partition(&ph.structure).map_err(|e| e.to_string())?;
        let want = ph.provenance.as_ref().unwrap().base.structure().digest();
        ensure!(base_image(&ph, &n).digest() == want, "m={m}: projective quotient differs from base");

        let ah = common::ah(m);
        let n = affine_partition(&ah.structure).map_err(|e| e.to_string())?;
        let want = ah.provenance.as_ref().unwrap().base.structure().digest();
        ensure!(base_image(&ah, &n).digest() == want, "m={m}: affine quotient differs from base");
    }
    Ok("8 quotients digest-equal to their bases".into())
}

fn uniformity() -> Outcome {
    let mut checked = 0;
    for m in ORDERS {
        for h in [common::ph(m), common::ah(m)] {
            for (c, class) in h.point_classes.iter().enumerate() {
                let r = restriction(&h.structure, class[0]).map_err(|e| e.to_string())?;
                let local = r.local_structure().ok_or(format!("m={m} class {c}: no lines"))?;
                let report = validate_affine_plane(&local);
                ensure!(report.params == Some(Params { t: 1, r: m }), "m={m} class {c}: {report}");
                ensure!(r.multiplicity.iter().all(|&k| k == m), "m={m} class {c}: multiplicities {:?}", r.multiplicity);
                checked += 1;
            }
            ensure!(verify_2_uniform(&h.structure).passed(), "m={m}: verify_2_uniform");
        }
    }
    Ok(format!("{checked} restrictions"))
}

fn transforms() -> Outcome {
    let mut truncations = 0;
    for m in ORDERS {
        let h = common::ph(m);
        let classes = h.line_classes.len();
        let ls: Vec<usize> = if m <= 3 { (0..classes).collect() } else { (0..classes).step_by(classes / 4).collect() };
        for l in ls {
            let t = truncate_ph(&h, l).map_err(|e| e.to_string())?;
            let report = verify_ah(&t.structure);
            ensure!(report.params == Some(Params { t: m, r: m }), "m={m} l={l}: {report}");
            truncations += 1;
        }
    }
    for m in [2, 3] {
        let h = common::ah(m);
        let hood = h.provenance.as_ref().unwrap().neighbourhoods[0].clone();
        let inf = oa_from_affine(&hood);
        let e = extend_ah(&h, &[hood], &inf).map_err(|e| e.to_string())?;
        ensure!(verify_ph(&e.structure).passed(), "m={m}: extension is not projective");
        let back = truncate_ph(&e, e.line_classes.len() - 1).map_err(|e| e.to_string())?;
        ensure!(back.structure.digest() == h.structure.digest(), "m={m}: round trip digest differs");
    }
    Ok(format!("{truncations} truncations, 2 round trips"))
}

fn completion() -> Outcome {
    for m in ORDERS {
        let full = oa_from_affine(&affine_from_projective(&projective_plane(m, None).unwrap(), 0).unwrap());
        let cut = full.select_columns(&(0..m).collect::<Vec<_>>()).unwrap();
        let done = complete_oa(&cut).map_err(|e| e.to_string())?;
        ensure!(done.columns() == m + 1 && validate_oa(&done).passed(), "m={m}: completion invalid");
        ensure!(common::same_up_to_renaming(&done.column(m), &full.column(m)), "m={m}: new column differs");
    }
    Ok("m=2..5".into())
}

fn negatives() -> Outcome {
    let h = common::ph(2).structure;
    let mut incidences: Vec<(usize, usize)> =
        (0..h.num_lines()).flat_map(|g| h.line(g).iter().map(move |&p| (g, p))).collect();
    incidences.shuffle(&mut ChaCha8Rng::seed_from_u64(2));
    for &(g, p) in &incidences[..20] {
        let mut lines = h.lines().to_vec();
        lines[g].retain(|&q| q != p);
        let s = IncidenceStructure::new(h.num_points(), lines).map_err(|e| e.to_string())?;
        let report = verify_ph(&s);
        let witness = report.first_violation().map(|v| v.witness.clone()).unwrap_or_default();
        ensure!(!report.passed() && !witness.is_empty(), "deleting {p} from line {g} still passes");
    }
    let glued = IncidenceStructure::new(5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 4]]).unwrap();
    ensure!(
        matches!(neighbour_partition(&glued), Err(Error::NotTransitive { .. })),
        "glued triangles are not rejected"
    );
    Ok("20/20 deletions rejected, NotTransitive raised".into())
}

fn pipeline(seed: u64) -> String {
    let (p, s) = common::ph_seeds(3);
    let base = BasePlane::Projective(p.clone());
    let c = random_choices(&base, &s.hoods, &s.oas, seed).unwrap();
    let h = construct_ph(&p, &s.hoods, &s.oas, &c).unwrap();
    let t = truncate_ph(&h, 3).unwrap();
    let mut out = c.to_text();
    out.push_str(&emit_structure(&h.structure));
    out.push_str(&emit_structure(&t.structure));
    out.push_str(&verify_2_uniform(&h.structure).to_text());
    out.push_str(&fingerprint(&h.structure).to_string());
    out
}

fn determinism() -> Outcome {
    use sha2::{Digest, Sha256};
    let digests: BTreeSet<String> = (0..3).map(|_| hex::encode(Sha256::digest(pipeline(7).as_bytes()))).collect();
    ensure!(digests.len() == 1, "{} distinct digests over 3 runs", digests.len());
    Ok(format!("3 runs, digest {}", &digests.iter().next().unwrap()[..16]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden m=3 neighbourhood", golden),
        ("count suite", counts),
        ("axiom suite", axioms),
        ("quotient recovery", quotients),
        ("2-uniformity", uniformity),
        ("transform round trip", transforms),
        ("OA completion", completion),
        ("negative controls", negatives),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
