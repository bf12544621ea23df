use std::fs;
use std::path::{Path, PathBuf};

use hjelmslev_core::construct::{
    canonical_choices, construct_ah, construct_ph, extend_ah, random_choices, truncate_ph, BasePlane,
    ConstructionChoices, HjelmslevPlane, PlaneKind,
};
use hjelmslev_core::field::{prime_power, FieldSpec};
use hjelmslev_core::incidence::{emit_structure, parse_structure};
use hjelmslev_core::seeds::{
    affine_from_projective, complete_oa, emit_oa, oa_from_affine, parse_oa, projective_plane, AffinePlane,
    OrthogonalArray, ProjectivePlane,
};
use hjelmslev_core::verify::{fingerprint, recognize, restriction, verify_2_uniform, verify_ah, verify_ph};
use hjelmslev_core::IncidenceStructure;

use crate::{Command, Failure, Seeds};

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: hjelmslev_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Result<IncidenceStructure, Failure> {
    in_file(path, parse_structure(&read(path)?))
}

fn load_projective(path: &Path) -> Result<ProjectivePlane, Failure> {
    in_file(path, ProjectivePlane::new(load_structure(path)?))
}

fn load_affine(path: &Path) -> Result<AffinePlane, Failure> {
    in_file(path, AffinePlane::new(load_structure(path)?))
}

fn load_oa(path: &Path) -> Result<OrthogonalArray, Failure> {
    in_file(path, parse_oa(&read(path)?))
}

fn note(verbose: bool, msg: impl AsRef<str>) {
    if verbose {
        eprintln!("{}", msg.as_ref());
    }
}

fn summary(pairs: &[(&str, String)]) {
    for (k, v) in pairs {
        println!("{k}={v}");
    }
}

fn structure_summary(s: &IncidenceStructure) -> Vec<(&'static str, String)> {
    let mut sizes: Vec<usize> = s.lines().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let sizes = sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    vec![
        ("points", s.num_points().to_string()),
        ("lines", s.num_lines().to_string()),
        ("line_sizes", sizes),
        ("digest", s.digest()),
    ]
}

fn plane_summary(h: &HjelmslevPlane) -> Vec<(&'static str, String)> {
    let mut out = vec![
        ("kind", h.kind.to_string()),
        ("t", h.t.to_string()),
        ("r", h.r.to_string()),
    ];
    out.extend(structure_summary(&h.structure));
    out
}

struct Loaded {
    hoods: Vec<AffinePlane>,
    oas: Vec<OrthogonalArray>,
    choices: ConstructionChoices,
}

fn load_seeds(base: &BasePlane, seeds: &Seeds) -> Result<Loaded, Failure> {
    let hoods = seeds.affine.iter().map(|p| load_affine(p)).collect::<Result<Vec<_>, _>>()?;
    let oas = seeds.oa.iter().map(|p| load_oa(p)).collect::<Result<Vec<_>, _>>()?;
    let choices = match (seeds.choices.as_str(), seeds.seed) {
        ("canonical", None) => canonical_choices(base, &hoods, &oas)?,
        ("random", Some(seed)) => random_choices(base, &hoods, &oas, seed)?,
        ("random", None) => return Err(Failure::Input("--choices random needs --seed".into())),
        ("canonical", Some(_)) => return Err(Failure::Input("--seed only applies to --choices random".into())),
        (path, _) => {
            let path = PathBuf::from(path);
            in_file(&path, ConstructionChoices::parse(&read(&path)?))?
        }
    };
    if let Some(path) = &seeds.emit_choices {
        write(path, &choices.to_text())?;
    }
    Ok(Loaded { hoods, oas, choices })
}

fn emit_plane(h: &HjelmslevPlane, choices: &ConstructionChoices, o: &Path) -> Outcome {
    write(o, &emit_structure(&h.structure))?;
    let mut s = plane_summary(h);
    s.push(("choices_digest", choices.digest()));
    summary(&s);
    Ok(())
}

fn build_ah(base: &Path, seeds: &Seeds) -> Result<(HjelmslevPlane, Loaded), Failure> {
    let a = load_affine(base)?;
    let loaded = load_seeds(&BasePlane::Affine(a.clone()), seeds)?;
    let h = construct_ah(&a, &loaded.hoods, &loaded.oas, &loaded.choices)?;
    Ok((h, loaded))
}

pub fn run(command: Command, verbose: bool) -> Outcome {
    match command {
        Command::GenPp { order, modulus, o } => {
            let field = match modulus {
                None => None,
                Some(text) => {
                    let coeffs = text
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|_| Failure::Input(format!("bad coefficient {t:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let (p, d) = prime_power(order)
                        .ok_or_else(|| Failure::Input(format!("order {order} is not a prime power")))?;
                    Some(FieldSpec::new(p, d, Some(coeffs))?)
                }
            };
            let p = projective_plane(order, field.as_ref())?;
            note(verbose, format!("PG(2,{order}) from homogeneous coordinates"));
            write(&o, &emit_structure(&p.structure))?;
            let mut s = vec![("order", order.to_string())];
            s.extend(structure_summary(&p.structure));
            summary(&s);
        }
        Command::GenAp { projective, line, o } => {
            let p = load_projective(&projective)?;
            let a = affine_from_projective(&p, line)?;
            write(&o, &emit_structure(&a.structure))?;
            let mut s = vec![("order", a.order.to_string()), ("classes", a.parallel_classes.len().to_string())];
            s.extend(structure_summary(&a.structure));
            summary(&s);
        }
        Command::GenOa { affine, columns, o } => {
            let a = load_affine(&affine)?;
            let mut oa = oa_from_affine(&a);
            if let Some(k) = columns {
                if k == 0 || k > oa.columns() {
                    return Err(Failure::Input(format!("--columns must be in 1..={}", oa.columns())));
                }
                oa = oa.select_columns(&(0..k).collect::<Vec<_>>())?;
            }
            write(&o, &emit_oa(&oa))?;
            summary(&[
                ("columns", oa.columns().to_string()),
                ("symbols", oa.symbols().to_string()),
                ("rows", oa.num_rows().to_string()),
            ]);
        }
        Command::CompleteOa { oa, o } => {
            let done = complete_oa(&load_oa(&oa)?)?;
            write(&o, &emit_oa(&done))?;
            summary(&[("columns", done.columns().to_string()), ("symbols", done.symbols().to_string())]);
        }
        Command::ConstructPh { base, seeds, o } => {
            let p = load_projective(&base)?;
            let loaded = load_seeds(&BasePlane::Projective(p.clone()), &seeds)?;
            let h = construct_ph(&p, &loaded.hoods, &loaded.oas, &loaded.choices)?;
            note(verbose, format!("built from {} base lines", p.num_lines()));
            emit_plane(&h, &loaded.choices, &o)?;
        }
        Command::ConstructAh { base, seeds, o } => {
            let (h, loaded) = build_ah(&base, &seeds)?;
            emit_plane(&h, &loaded.choices, &o)?;
        }
        Command::Truncate { input, line, o } => {
            let h = recognize(&load_structure(&input)?, PlaneKind::Projective)?;
            note(verbose, format!("{} line neighbourhoods recognized", h.line_classes.len()));
            let t = truncate_ph(&h, line)?;
            write(&o, &emit_structure(&t.structure))?;
            summary(&plane_summary(&t));
        }
        Command::Extend { base, seeds, new_affine, infinity_oa, o } => {
            let (h, loaded) = build_ah(&base, &seeds)?;
            let new_hoods = if new_affine.is_empty() {
                vec![loaded.hoods[0].clone()]
            } else {
                new_affine.iter().map(|p| load_affine(p)).collect::<Result<Vec<_>, _>>()?
            };
            let inf = match infinity_oa {
                Some(path) => load_oa(&path)?,
                None => complete_oa(&loaded.oas[0])?,
            };
            let e = extend_ah(&h, &new_hoods, &inf)?;
            let choices = &e.provenance.as_ref().expect("extension records provenance").choices;
            emit_plane(&e, choices, &o)?;
        }
        Command::Verify { input, ph, ah, uniform } => {
            let s = load_structure(&input)?;
            let report = match (ph, ah, uniform) {
                (_, true, _) => verify_ah(&s),
                (_, _, true) => verify_2_uniform(&s),
                _ => verify_ph(&s),
            };
            print!("{}", report.to_text());
            if !report.passed() {
                note(verbose, format!("{} violation(s)", report.violations.len()));
                return Err(Failure::Verification);
            }
        }
        Command::Restrict { input, point, o } => {
            let s = load_structure(&input)?;
            if point >= s.num_points() {
                return Err(Failure::Input(format!("point {point} out of range (0..{})", s.num_points())));
            }
            let r = restriction(&s, point)?;
            let mut mult = r.multiplicity.clone();
            mult.sort_unstable();
            mult.dedup();
            summary(&[
                ("center", point.to_string()),
                ("points", r.points.len().to_string()),
                ("lines", r.lines.len().to_string()),
                ("multiplicities", mult.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
            ]);
            if let Some(o) = o {
                let local = r
                    .local_structure()
                    .ok_or_else(|| Failure::Input("restriction has no lines".into()))?;
                write(&o, &emit_structure(&local))?;
            }
        }
        Command::Fingerprint { input } => {
            let f = fingerprint(&load_structure(&input)?);
            print!("{f}");
            println!("digest={}", f.digest());
        }
        Command::Info { input } => {
            let s = load_structure(&input)?;
            summary(&structure_summary(&s));
            note(verbose, format!("{} labeled points", s.point_labels().len()));
        }
    }
    Ok(())
}
