use std::path::Path;

use flexgeom::geom::{self, IncidenceStats};
use flexgeom::io::{self, SurfaceDoc};
use flexgeom::polymethod;
use flexgeom::search::{search_flexy, SearchSpec};
use flexgeom::surface::{Attestation, FlexVerdict, PointClass};
use flexgeom::{Field, Line3, Monomial, MultiPoly, Point3, Surface};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn field_hint(cfg: &RunConfig) -> Result<Option<Field>, CliError> {
    Ok(cfg.field.as_deref().map(Field::parse).transpose()?)
}

fn read_lines(cfg: &RunConfig, path: &Path, hint: Option<&Field>) -> Result<(Field, Vec<Line3>), CliError> {
    let own = field_hint(cfg)?;
    let (field, lines) = io::parse_lines(&read(path)?, hint.or(own.as_ref()))?;
    cfg.budget.check_lines(lines.len() as u64)?;
    Ok((field, lines))
}

fn read_points(cfg: &RunConfig, path: &Path, hint: Option<&Field>) -> Result<(Field, Vec<Point3>), CliError> {
    let own = field_hint(cfg)?;
    let (field, pts) = io::parse_points(&read(path)?, hint.or(own.as_ref()))?;
    cfg.budget.check_points(pts.len() as u64)?;
    Ok((field, pts))
}

pub fn verdict_json(field: &Field, v: &FlexVerdict) -> Value {
    match v {
        FlexVerdict::FlexyEvidence { ext, histogram } => {
            json!({"verdict": "flexy-evidence", "ext": ext, "histogram": histogram})
        }
        FlexVerdict::NotFlexy { ext, witness } => {
            let big = field.extension(*ext).expect("scanned field exists");
            json!({"verdict": "not-flexy", "ext": ext, "witness": witness.format(&big)})
        }
        FlexVerdict::Undetermined { ext, histogram } => {
            json!({"verdict": "undetermined", "ext": ext, "histogram": histogram})
        }
    }
}

fn parse_attestation(items: &[String]) -> Result<Attestation, CliError> {
    let mut a = Attestation::default();
    for item in items {
        match item.trim() {
            "reduced" => a.reduced = true,
            "irreducible" => a.irreducible = true,
            "non-flexy" => a.non_flexy = true,
            other => return Err(CliError::Usage(format!("unknown attestation `{other}`"))),
        }
    }
    Ok(a)
}

pub fn analyze(
    cfg: &RunConfig,
    doc_path: Option<&Path>,
    poly: Option<&str>,
    attest: &[String],
    save: Option<&Path>,
) -> Result<Value, CliError> {
    let (surface, cached) = match (doc_path, poly) {
        (Some(path), _) => SurfaceDoc::parse(&read(path)?)?.to_surface()?,
        (None, Some(text)) => {
            let field = field_hint(cfg)?.ok_or_else(|| CliError::Usage("--poly needs --field".into()))?;
            (Surface::new(MultiPoly::parse(&field, text)?)?, None)
        }
        (None, None) => return Err(CliError::Usage("give a surface.json file or --poly".into())),
    };
    let extra = parse_attestation(attest)?;
    let mut a = surface.attestation();
    a.reduced |= extra.reduced;
    a.irreducible |= extra.irreducible;
    a.non_flexy |= extra.non_flexy;
    let surface = surface.with_attestation(a);
    let field = surface.field().clone();
    let budget = &cfg.budget;

    let classes = surface.classify_all(1, budget)?;
    let points = classes.len();
    let lines = match cached.as_ref().and_then(|c| c.lines) {
        Some(n) => n,
        None => surface.lines_in(budget)?.len(),
    };
    let singular: Vec<String> =
        classes.iter().filter(|(_, c)| *c == PointClass::SingularPt).map(|(p, _)| p.format(&field)).collect();
    let histogram = surface.histogram(1, budget)?;
    let verdict = surface.is_flexy_surface(cfg.ext, budget)?;
    let irreducible = match surface.verified_irreducible()? {
        Some(true) => "verified",
        Some(false) => "reducible",
        None if a.irreducible => "attested",
        None => "unknown",
    };
    if irreducible == "reducible" && a.irreducible {
        return Err(CliError::Usage("attested irreducible, but a linear factor exists".into()));
    }
    let surface = surface.attest_verified(cfg.ext, budget)?;
    let att = surface.attestation();
    let census = if att.reduced && att.irreducible && att.non_flexy && surface.degree() >= 2 {
        let c = surface.bad_line_census(cfg.ext, budget)?;
        json!({
            "ext": c.ext,
            "contained_lines": c.contained_lines,
            "l1": c.l1.len(),
            "l2": c.l2.len(),
            "l1_bound": c.l1_bound,
            "l2_bound": c.l2_bound,
            "total_bound": c.total_bound,
            "l1_ok": c.l1_ok(),
            "l2_ok": c.l2_ok(),
            "total_ok": c.total_ok(),
        })
    } else {
        Value::Null
    };

    if let Some(path) = save {
        write(path, &SurfaceDoc::from_surface(&surface, Some(points), Some(lines)).to_json())?;
    }
    Ok(json!({
        "field": field.params().to_string(),
        "polynomial": surface.poly().to_string(),
        "degree": surface.degree(),
        "points": points,
        "lines": lines,
        "histogram": histogram,
        "singular_points": singular,
        "flexiness": verdict_json(&field, &verdict),
        "irreducible": irreducible,
        "attested": att,
        "census": census,
    }))
}

fn parse_monomial(field: &Field, s: &str) -> Result<Monomial, CliError> {
    let p = MultiPoly::parse(field, s)?;
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if *c == field.one() => Ok(*m),
        _ => Err(CliError::Usage(format!("`{s}` is not a monomial"))),
    }
}

pub fn search(cfg: &RunConfig, p: u32, max_degree: u32, support: &[String]) -> Result<Value, CliError> {
    let field = Field::gf(p, 1)?;
    let mut spec = SearchSpec::new(p, max_degree);
    spec.ext = cfg.ext;
    if !support.is_empty() {
        spec.support = Some(support.iter().map(|s| parse_monomial(&field, s)).collect::<Result<_, _>>()?);
    }
    let report = search_flexy(&spec, &cfg.budget)?;
    Ok(serde_json::to_value(report).expect("plain data"))
}

pub fn vanish(cfg: &RunConfig, path: &Path, degree: Option<u32>) -> Result<Value, CliError> {
    let (field, pts) = read_points(cfg, path, None)?;
    let (d, poly) = match degree {
        Some(d) => match polymethod::vanishing_poly(&field, &pts, d) {
            Some(p) => (d, Some(p)),
            None => (d, None),
        },
        None => {
            let (d, p) = polymethod::min_degree_vanishing(&field, &pts)?;
            (d, Some(p))
        }
    };
    let verified = poly.as_ref().map(|p| pts.iter().all(|x| p.evaluate(x).is_zero()));
    Ok(json!({
        "field": field.params().to_string(),
        "points": pts.len(),
        "degree_bound": d,
        "monomials": polymethod::monomial_count(d),
        "found": poly.is_some(),
        "polynomial": poly.as_ref().map(|p| p.to_string()),
        "polynomial_degree": poly.as_ref().and_then(|p| p.degree()),
        "verified": verified,
    }))
}

pub fn decompose(
    cfg: &RunConfig,
    lines_path: &Path,
    points_path: Option<&Path>,
    n: u64,
    out: Option<&Path>,
    require_success: bool,
) -> Result<(Value, Result<(), CliError>), CliError> {
    let (field, lines) = read_lines(cfg, lines_path, None)?;
    let points: Vec<Point3> = match points_path {
        Some(p) => read_points(cfg, p, Some(&field))?.1,
        None => geom::union_points(&field, &lines).into_iter().collect(),
    };
    cfg.budget.check_points(points.len() as u64)?;
    let state = polymethod::decompose(&field, &points, &lines, n, &cfg.constants)?;
    let ledger = state.to_json();
    let outcome = match state.first_failure() {
        Some(e) if require_success => Err(CliError::Mismatch(format!("ledger line {}: {}", e.id, e.claim))),
        _ => Ok(()),
    };
    let report = match out {
        Some(path) => {
            let mut text = serde_json::to_string_pretty(&ledger).expect("plain data");
            text.push('\n');
            write(path, &text)?;
            json!({
                "ledger": path.display().to_string(),
                "entries": state.ledger.len(),
                "outcome": state.outcome,
            })
        }
        None => ledger,
    };
    Ok((report, outcome))
}

pub fn incidence(
    cfg: &RunConfig,
    lines_path: &Path,
    points_path: Option<&Path>,
    plane_bound: Option<usize>,
) -> Result<Value, CliError> {
    let (field, lines) = read_lines(cfg, lines_path, None)?;
    let points: Vec<Point3> = match points_path {
        Some(p) => read_points(cfg, p, Some(&field))?.1,
        None => geom::union_points(&field, &lines).into_iter().collect(),
    };
    let stats = IncidenceStats::compute(&field, &points, &lines);
    let mut v = json!({
        "field": field.params().to_string(),
        "stats": stats,
        "kakeya": geom::kakeya_check(&lines),
    });
    if let Some(b) = plane_bound {
        let w = geom::wolff_check(&field, &lines, b);
        v["plane_bound"] = json!({
            "bound": w.bound,
            "max": w.max,
            "holds": w.holds,
            "violating_plane": w.violating_plane.map(|p| p.format(&field)),
        });
    }
    Ok(v)
}
