//! Vanishing polynomials, the Kakeya surface bound, the hypothesis checker and the
//! decomposition driver.

mod decompose;

use std::collections::HashSet;

use serde::Serialize;

pub use decompose::{
    decompose, Component, DecompositionConstants, DecompositionState, LedgerEntry, LedgerStatus, Outcome, Relation,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geom::{self, Line3, Point3};
use crate::linalg;
use crate::mpoly::{Monomial, MultiPoly};
use crate::surface::{Budget, FlexVerdict, Surface};

/// `C(d + 3, 3)`, the number of monomials of degree at most `d` in three variables.
pub fn monomial_count(d: u32) -> u64 {
    let d = d as u64;
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// A nonzero polynomial of degree at most `d` vanishing on `points`, or `None` when the
/// evaluation map is injective.
///
/// Columns are the monomials of degree `<= d`, lowest degree first and `x`-heavy first
/// within a degree; the answer is the kernel vector attached to the first free column.
pub fn vanishing_poly(field: &Field, points: &[Point3], d: u32) -> Option<MultiPoly> {
    let monos = Monomial::up_to_degree(d);
    let rows: Vec<Vec<_>> = points
        .iter()
        .map(|p| monos.iter().map(|&m| monomial_value(field, m, p)).collect())
        .collect();
    let v = linalg::first_kernel_vector(field, &rows, monos.len())?;
    let poly = MultiPoly::from_terms(field, monos.into_iter().zip(v));
    debug_assert!(points.iter().all(|p| poly.evaluate(p).is_zero()));
    Some(poly)
}

fn monomial_value(field: &Field, m: Monomial, p: &Point3) -> crate::FieldElem {
    let c = p.coords();
    (0..3).fold(field.one(), |acc, v| field.mul(acc, field.pow(c[v], m.0[v] as u64)))
}

/// Smallest `d` admitting a nonzero vanishing polynomial of degree `<= d`, with that polynomial.
pub fn min_degree_vanishing(field: &Field, points: &[Point3]) -> Result<(u32, MultiPoly)> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("min_degree_vanishing needs at least one point".into()));
    }
    // x^q - x vanishes everywhere, so the search stops by d = q.
    for d in 1..=field.q() {
        if let Some(p) = vanishing_poly(field, points, d) {
            return Ok((d, p));
        }
    }
    unreachable!("x^q - x vanishes on every point")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KakeyaReport {
    pub degree: u32,
    pub contained: usize,
    /// `d (q + 1)`, the number of points on a degree-`d` curve in the plane at infinity.
    pub bound: u64,
    pub holds: bool,
    /// Distinct directions of the contained lines (points at infinity on `X`).
    pub directions: usize,
}

/// Counts the lines of a Kakeya family lying on `X` against `d (q + 1)`.
pub fn kakeya_surface_bound(x: &Surface, lines: &[Line3]) -> Result<KakeyaReport> {
    if !geom::kakeya_check(lines) {
        return Err(Error::Precondition("lines do not point in pairwise distinct directions".into()));
    }
    let inside: Vec<&Line3> = lines.iter().filter(|l| x.contains_line(l)).collect();
    let directions: HashSet<_> = inside.iter().map(|l| l.direction()).collect();
    let bound = x.degree() as u64 * (x.field().q() as u64 + 1);
    Ok(KakeyaReport {
        degree: x.degree(),
        contained: inside.len(),
        bound,
        holds: inside.len() as u64 <= bound,
        directions: directions.len(),
    })
}

/// A surface offered to the hypothesis checker together with its flexiness evidence.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub surface: Surface,
    pub verdict: FlexVerdict,
}

impl Candidate {
    /// Scans GF(q^m) for flexiness evidence.
    pub fn assess(surface: Surface, m: u32, budget: &Budget) -> Result<Self> {
        let verdict = surface.is_flexy_surface(m, budget)?;
        Ok(Candidate { surface, verdict })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneVerdict {
    pub max: usize,
    pub bound: u64,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceVerdict {
    pub polynomial: String,
    pub degree: u32,
    /// `flexy-evidence`, `not-flexy` or `undetermined`.
    pub flexiness: &'static str,
    pub contained: usize,
    pub bound: u64,
    /// Only flexy candidates are constrained; the others pass vacuously.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub n: u64,
    pub lines: usize,
    pub plane: PlaneVerdict,
    pub surfaces: Vec<SurfaceVerdict>,
    /// No flexy candidate was examined, so the surface condition is unverified.
    pub surfaces_unverified: bool,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.plane.holds && self.surfaces.iter().all(|s| s.holds)
    }
}

/// At most `2N` lines in any plane (checked over every plane), and at most `2Nd` lines
/// in each supplied flexy surface of degree `d`.
pub fn check_theorem_hypotheses(field: &Field, lines: &[Line3], n: u64, candidates: &[Candidate]) -> HypothesisReport {
    let pc = geom::max_lines_per_plane(field, lines);
    let plane_bound = 2 * n;
    let plane_holds = pc.count as u64 <= plane_bound;
    let plane = PlaneVerdict {
        max: pc.count,
        bound: plane_bound,
        holds: plane_holds,
        witness: pc.witness.filter(|_| !plane_holds).map(|w| w.format(field)),
    };
    let distinct: Vec<Line3> = lines.iter().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let surfaces: Vec<SurfaceVerdict> = candidates
        .iter()
        .map(|c| {
            let contained = distinct.iter().filter(|l| c.surface.contains_line(l)).count();
            let bound = 2 * n * c.surface.degree() as u64;
            let (flexiness, flexy) = match c.verdict {
                FlexVerdict::FlexyEvidence { .. } => ("flexy-evidence", true),
                FlexVerdict::NotFlexy { .. } => ("not-flexy", false),
                FlexVerdict::Undetermined { .. } => ("undetermined", false),
            };
            SurfaceVerdict {
                polynomial: c.surface.poly().to_string(),
                degree: c.surface.degree(),
                flexiness,
                contained,
                bound,
                holds: !flexy || contained as u64 <= bound,
            }
        })
        .collect();
    let surfaces_unverified = !surfaces.iter().any(|s| s.flexiness == "flexy-evidence");
    HypothesisReport { n, lines: lines.len(), plane, surfaces, surfaces_unverified }
}
