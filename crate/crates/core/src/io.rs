//! Text formats for point and line lists, and the `surface.json` document.
//!
//! Point and line files are line-oriented. An optional header `# field: GF(...)`
//! names the field; other lines starting with `#` and blank lines are ignored.
//!
//! ```text
//! # field: GF(2^2; 1,1,1)
//! 00,01,00;11,01,01
//! ```
//!
//! A point record is `x,y,z`; a line record is `base;direction`, each a point record.
//! Coordinates use the digit-string element format of [`Field::parse_elem`].

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::geom::{Line3, Point3};
use crate::mpoly::MultiPoly;
use crate::surface::{Attestation, Surface};

const HEADER: &str = "# field:";

fn resolve_field(text: &str, hint: Option<&Field>) -> Result<Field> {
    let header = text.lines().find_map(|l| l.trim().strip_prefix(HEADER).map(str::trim));
    match (header, hint) {
        (Some(h), Some(f)) => {
            let named = Field::parse(h)?;
            if &named != f {
                return Err(Error::FieldMismatch(format!("file declares {named}, expected {f}")));
            }
            Ok(f.clone())
        }
        (Some(h), None) => Field::parse(h),
        (None, Some(f)) => Ok(f.clone()),
        (None, None) => Err(Error::InvalidArgument("no `# field:` header and no field given".into())),
    }
}

fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_triple(field: &Field, s: &str, line_no: usize) -> Result<[FieldElem; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse { pos: line_no, msg: format!("expected three coordinates in `{s}`") });
    }
    let mut out = [FieldElem::ZERO; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = field.parse_elem(part).map_err(|e| Error::Parse { pos: line_no, msg: e.to_string() })?;
    }
    Ok(out)
}

/// Parses a points file. `pos` in parse errors is the 1-based line number.
pub fn parse_points(text: &str, hint: Option<&Field>) -> Result<(Field, Vec<Point3>)> {
    let field = resolve_field(text, hint)?;
    let pts = records(text)
        .map(|(no, r)| parse_triple(&field, r, no).map(Point3::from_coords))
        .collect::<Result<Vec<_>>>()?;
    Ok((field, pts))
}

/// Parses a lines file; every line is put in canonical form.
pub fn parse_lines(text: &str, hint: Option<&Field>) -> Result<(Field, Vec<Line3>)> {
    let field = resolve_field(text, hint)?;
    let lines = records(text)
        .map(|(no, r)| {
            let (b, d) = r
                .split_once(';')
                .ok_or_else(|| Error::Parse { pos: no, msg: format!("expected `base;direction` in `{r}`") })?;
            let base = Point3::from_coords(parse_triple(&field, b, no)?);
            let dir = parse_triple(&field, d, no)?;
            Line3::new(&field, base, dir).map_err(|e| Error::Parse { pos: no, msg: e.to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((field, lines))
}

pub fn write_points(field: &Field, pts: &[Point3]) -> String {
    let mut out = format!("{HEADER} {}\n", field.params());
    for p in pts {
        out.push_str(&p.format(field));
        out.push('\n');
    }
    out
}

pub fn write_lines(field: &Field, lines: &[Line3]) -> String {
    let mut out = format!("{HEADER} {}\n", field.params());
    for l in lines {
        out.push_str(&l.format(field));
        out.push('\n');
    }
    out
}

/// Hex SHA-256 of the canonical polynomial text.
pub fn poly_digest(poly: &MultiPoly) -> String {
    let d = Sha256::digest(poly.to_string().as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedCounts {
    pub digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<usize>,
}

/// The `surface.json` document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub field: String,
    pub polynomial: String,
    #[serde(default)]
    pub attested: Attestation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cached: Option<CachedCounts>,
}

impl SurfaceDoc {
    pub fn from_surface(s: &Surface, points: Option<usize>, lines: Option<usize>) -> Self {
        let cached = (points.is_some() || lines.is_some()).then(|| CachedCounts { digest: poly_digest(s.poly()), points, lines });
        SurfaceDoc {
            field: s.field().params().to_string(),
            polynomial: s.poly().to_string(),
            attested: s.attestation(),
            cached,
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse { pos: e.column(), msg: format!("surface.json: {e}") })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Builds the surface. Cached counts are returned only when their digest matches.
    pub fn to_surface(&self) -> Result<(Surface, Option<CachedCounts>)> {
        let field = Field::parse(&self.field)?;
        let poly = MultiPoly::parse(&field, &self.polynomial)?;
        let cached = self.cached.clone().filter(|c| c.digest == poly_digest(&poly));
        Ok((Surface::new(poly)?.with_attestation(self.attested), cached))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{heisenberg, heisenberg_lines};

    #[test]
    fn lines_round_trip() {
        let lines = heisenberg_lines(2).unwrap();
        let f = Field::gf(2, 2).unwrap();
        let text = write_lines(&f, &lines);
        let (g, back) = parse_lines(&text, None).unwrap();
        assert_eq!(g, f);
        assert_eq!(back, lines);
        assert!(parse_lines(&text, Some(&Field::gf(3, 1).unwrap())).is_err());
    }

    #[test]
    fn points_need_a_field() {
        assert!(parse_points("0,0,0\n", None).is_err());
        let f = Field::gf(3, 1).unwrap();
        let (_, pts) = parse_points("# a comment\n\n0,1,2\n", Some(&f)).unwrap();
        assert_eq!(pts, vec![Point3::from_coords([f.zero(), f.one(), f.from_int(2)])]);
        assert!(matches!(parse_points("0,1\n", Some(&f)), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_lines("0,0,0;0,0,0\n", Some(&f)), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn surface_doc_round_trip() {
        let h = heisenberg(2).unwrap();
        let doc = SurfaceDoc::from_surface(&h, Some(32), None);
        let back = SurfaceDoc::parse(&doc.to_json()).unwrap();
        let (s, cached) = back.to_surface().unwrap();
        assert_eq!(s.poly(), h.poly());
        assert_eq!(cached.unwrap().points, Some(32));

        let mut stale = doc.clone();
        stale.polynomial = "x".into();
        assert!(stale.to_surface().unwrap().1.is_none());
    }
}
