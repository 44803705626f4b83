//! Hypersurfaces in AG(3, q): rational points, contained lines and the
//! singular / flexy / smooth classification of points.
//!
//! A point on `X = V(f)` is singular when the linear part of the jet of `f` at the
//! point vanishes, flexy when the linear part divides the quadratic part, and smooth
//! non-flexy otherwise. Flexiness of a whole surface can only be sampled: verdicts
//! are graded by the extension GF(q^m) whose points were scanned.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geom::{self, Line3, Point3};
use crate::mpoly::calculus::quad_divisible;
use crate::mpoly::{DividedPower, Monomial, MultiPoly, Var};

/// Enumeration limits.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest number of points a single scan may visit.
    pub points: u64,
    /// Largest number of lines a single scan may visit.
    pub lines: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { points: 1 << 20, lines: 1 << 20 }
    }
}

impl Budget {
    pub fn check_points(&self, needed: u64) -> Result<()> {
        if needed > self.points {
            return Err(Error::BudgetExceeded { what: "point scan", needed, budget: self.points });
        }
        Ok(())
    }

    pub fn check_lines(&self, needed: u64) -> Result<()> {
        if needed > self.lines {
            return Err(Error::BudgetExceeded { what: "line scan", needed, budget: self.lines });
        }
        Ok(())
    }
}

/// Hypotheses a caller vouches for; they are not verified in general.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attestation {
    #[serde(default)]
    pub reduced: bool,
    #[serde(default)]
    pub irreducible: bool,
    #[serde(default)]
    pub non_flexy: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    SingularPt,
    FlexyPt,
    SmoothNonFlexyPt,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassHistogram {
    pub singular: usize,
    pub flexy: usize,
    pub smooth_non_flexy: usize,
}

impl ClassHistogram {
    fn record(&mut self, c: PointClass) {
        match c {
            PointClass::SingularPt => self.singular += 1,
            PointClass::FlexyPt => self.flexy += 1,
            PointClass::SmoothNonFlexyPt => self.smooth_non_flexy += 1,
        }
    }
}

/// Outcome of scanning the points of GF(q^m)^3 on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlexVerdict {
    /// Every smooth point over GF(q^m) is flexy, and there is at least one.
    FlexyEvidence { ext: u32, histogram: ClassHistogram },
    /// A smooth non-flexy point, in coordinates of GF(q^m).
    NotFlexy { ext: u32, witness: Point3 },
    /// No smooth point over GF(q^m).
    Undetermined { ext: u32, histogram: ClassHistogram },
}

impl FlexVerdict {
    pub fn is_flexy_evidence(&self) -> bool {
        matches!(self, FlexVerdict::FlexyEvidence { .. })
    }

    pub fn is_not_flexy(&self) -> bool {
        matches!(self, FlexVerdict::NotFlexy { .. })
    }
}

/// The hypersurface `f = 0`.
#[derive(Debug)]
pub struct Surface {
    poly: MultiPoly,
    attested: Attestation,
    points: OnceLock<Vec<Point3>>,
    lines: OnceLock<Vec<Line3>>,
}

impl Clone for Surface {
    fn clone(&self) -> Self {
        Surface {
            poly: self.poly.clone(),
            attested: self.attested,
            points: self.points.clone(),
            lines: self.lines.clone(),
        }
    }
}

impl Surface {
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.is_constant() {
            return Err(Error::InvalidArgument(format!("`{poly}` is constant and defines no surface")));
        }
        Ok(Surface { poly, attested: Attestation::default(), points: OnceLock::new(), lines: OnceLock::new() })
    }

    pub fn with_attestation(mut self, attested: Attestation) -> Self {
        self.attested = attested;
        self
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().expect("surfaces are non-constant")
    }

    pub fn attestation(&self) -> Attestation {
        self.attested
    }

    /// The same surface over GF(q^m); attestations carry over.
    pub fn over_extension(&self, m: u32) -> Result<Surface> {
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        Ok(Surface::new(self.poly.over_extension(m)?)?.with_attestation(self.attested))
    }

    fn scan_points(&self) -> Vec<Point3> {
        let f = self.field();
        let elems: Vec<_> = f.elements().collect();
        elems
            .par_iter()
            .flat_map_iter(|&x| {
                f.elements()
                    .flat_map(move |y| f.elements().map(move |z| Point3::new(x, y, z)))
                    .filter(|p| self.poly.evaluate(p).is_zero())
            })
            .collect()
    }

    /// Points of GF(q^m)^3 where `f` vanishes, in lexicographic order.
    pub fn rational_points(&self, m: u32, budget: &Budget) -> Result<Vec<Point3>> {
        let qm = (self.field().q() as u64).checked_pow(m).unwrap_or(u64::MAX);
        budget.check_points(qm.saturating_pow(3))?;
        if m == 1 {
            return Ok(self.points.get_or_init(|| self.scan_points()).clone());
        }
        Ok(self.over_extension(m)?.scan_points())
    }

    /// Whether the line lies on the surface as a variety: the restriction of `f`
    /// to the line is the zero polynomial, not merely zero at the `q` rational points.
    pub fn contains_line(&self, line: &Line3) -> bool {
        let f = self.field();
        let cheap_reject = f.elements().any(|t| !self.poly.evaluate(&line.point_at(f, t)).is_zero());
        !cheap_reject && self.poly.restrict_to_line(line).is_zero()
    }

    /// All lines of AG(3, q) contained in the surface, in canonical order.
    pub fn lines_in(&self, budget: &Budget) -> Result<Vec<Line3>> {
        budget.check_lines(geom::num_lines(self.field().q() as u64))?;
        Ok(self
            .lines
            .get_or_init(|| {
                let all: Vec<Line3> = geom::all_lines(self.field()).collect();
                all.into_par_iter().filter(|l| self.contains_line(l)).collect()
            })
            .clone())
    }

    /// Classification of a point of the surface.
    pub fn classify_point(&self, pt: &Point3) -> Result<PointClass> {
        let jet = self.poly.jet_coeffs(pt);
        if !jet.f0.is_zero() {
            return Err(Error::PointNotOnSurface);
        }
        Ok(classify_jet(self.field(), jet.lin, jet.quad))
    }

    /// Classifies every point over GF(q^m).
    pub fn classify_all(&self, m: u32, budget: &Budget) -> Result<Vec<(Point3, PointClass)>> {
        let ext = self.over_extension(m)?;
        let pts = ext.rational_points(1, budget)?;
        Ok(pts
            .into_par_iter()
            .map(|p| {
                let c = ext.classify_point(&p).expect("scanned points lie on the surface");
                (p, c)
            })
            .collect())
    }

    pub fn histogram(&self, m: u32, budget: &Budget) -> Result<ClassHistogram> {
        let mut h = ClassHistogram::default();
        let qm = (self.field().q() as u64).saturating_pow(m);
        budget.check_points(qm.saturating_pow(3))?;
        for (_, c) in self.classify_all(m, budget)? {
            h.record(c);
        }
        Ok(h)
    }

    /// Scans GF(q^m)^3 for a smooth non-flexy point, stopping at the first one.
    pub fn is_flexy_surface(&self, m: u32, budget: &Budget) -> Result<FlexVerdict> {
        let qm = (self.field().q() as u64).checked_pow(m).unwrap_or(u64::MAX);
        budget.check_points(qm.saturating_pow(3))?;
        let ext = self.over_extension(m)?;
        Ok(flex_scan(ext.poly(), m))
    }

    /// Exact irreducibility over the algebraic closure where it is decidable here:
    ///
    /// * a variable occurring only to the first power with a constant coefficient
    ///   makes `f` irreducible;
    /// * a quadric is absolutely irreducible iff it has no linear factor over GF(q^2),
    ///   since any linear factor is defined over a quadratic extension.
    ///
    /// `None` when neither test applies.
    pub fn verified_irreducible(&self) -> Result<Option<bool>> {
        if monic_linear_variable(&self.poly).is_some() {
            return Ok(Some(true));
        }
        match self.degree() {
            1 => Ok(Some(true)),
            2 => {
                let lifted = self.poly.over_extension(2)?;
                Ok(Some(lifted.linear_factors()?.factors.is_empty()))
            }
            _ => Ok(None),
        }
    }

    /// Fills in the attestation flags this crate can prove: irreducibility (which implies
    /// reducedness) and non-flexiness from a witness over GF(q^m). Flags already set stay set.
    pub fn attest_verified(mut self, m: u32, budget: &Budget) -> Result<Self> {
        if self.verified_irreducible()? == Some(true) {
            self.attested.irreducible = true;
            self.attested.reduced = true;
        }
        if self.is_flexy_surface(m, budget)?.is_not_flexy() {
            self.attested.non_flexy = true;
        }
        Ok(self)
    }

    /// Lines of AG(3, q) on the surface with many singular or many flexy points, the
    /// points being counted over GF(q^m).
    pub fn bad_line_census(&self, m: u32, budget: &Budget) -> Result<BadLineCensus> {
        let a = self.attested;
        let d = self.degree();
        if !(a.reduced && a.irreducible && a.non_flexy) {
            return Err(Error::Precondition(format!("surface must be attested reduced, irreducible and non-flexy, got {a:?}")));
        }
        if d < 2 {
            return Err(Error::Precondition("degree must exceed one".into()));
        }
        let lines = self.lines_in(budget)?;
        let qm = (self.field().q() as u64).saturating_pow(m);
        budget.check_points(qm.saturating_mul(lines.len() as u64))?;
        let ext = self.over_extension(m)?;
        let big = ext.field().clone();
        let emb = self.field().embedding_into(&big)?;
        let lift = |p: Point3| Point3::from_coords(p.coords().map(|c| emb.apply(c)));
        let mut classes: HashMap<Point3, PointClass> = HashMap::new();
        let (mut l1, mut l2) = (Vec::new(), Vec::new());
        for line in &lines {
            let lifted = Line3::new(&big, lift(line.base()), line.dir().map(|c| emb.apply(c)))?;
            let (mut sing, mut flex) = (0u32, 0u32);
            for p in lifted.points(&big) {
                let c = *classes.entry(p).or_insert_with(|| ext.classify_point(&p).expect("contained line"));
                match c {
                    PointClass::SingularPt => sing += 1,
                    PointClass::FlexyPt => flex += 1,
                    PointClass::SmoothNonFlexyPt => {}
                }
            }
            if sing >= d {
                l1.push(*line);
            }
            if flex >= 3 * d - 3 {
                l2.push(*line);
            }
        }
        Ok(BadLineCensus::new(d, m, lines.len(), l1, l2))
    }
}

pub(crate) fn classify_jet(field: &Field, lin: [crate::FieldElem; 3], quad: [crate::FieldElem; 6]) -> PointClass {
    if lin.iter().all(|c| c.is_zero()) {
        PointClass::SingularPt
    } else if quad_divisible(field, lin, quad) {
        PointClass::FlexyPt
    } else {
        PointClass::SmoothNonFlexyPt
    }
}

/// Sequential scan with early exit; `poly` is already over the scanned field.
pub(crate) fn flex_scan(poly: &MultiPoly, ext: u32) -> FlexVerdict {
    let f = poly.field();
    let mut hist = ClassHistogram::default();
    for p in geom::all_points(f) {
        let jet = poly.jet_coeffs(&p);
        if !jet.f0.is_zero() {
            continue;
        }
        let c = classify_jet(f, jet.lin, jet.quad);
        if c == PointClass::SmoothNonFlexyPt {
            return FlexVerdict::NotFlexy { ext, witness: p };
        }
        hist.record(c);
    }
    if hist.flexy > 0 {
        FlexVerdict::FlexyEvidence { ext, histogram: hist }
    } else {
        FlexVerdict::Undetermined { ext, histogram: hist }
    }
}

/// A variable `v` such that `f = c v + g` with `c` a nonzero constant and `g` free of `v`.
fn monic_linear_variable(f: &MultiPoly) -> Option<Var> {
    Var::ALL.into_iter().find(|&v| {
        f.degree_in(v) == 1 && f.terms().filter(|(m, _)| m.exp(v) == 1).count() == 1 && {
            let mut unit = [0; 3];
            unit[v.index()] = 1;
            !f.coeff(Monomial(unit)).is_zero()
        }
    })
}

/// Lines contained in `X` with at least `d` singular points (`l1`) or at least `3d - 3`
/// flexy points (`l2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadLineCensus {
    pub degree: u32,
    pub ext: u32,
    pub contained_lines: usize,
    pub l1: Vec<Line3>,
    pub l2: Vec<Line3>,
    pub l1_bound: u64,
    pub l2_bound: u64,
    pub total_bound: u64,
}

impl BadLineCensus {
    fn new(d: u32, ext: u32, contained_lines: usize, l1: Vec<Line3>, l2: Vec<Line3>) -> Self {
        let d = d as u64;
        BadLineCensus {
            degree: d as u32,
            ext,
            contained_lines,
            l1,
            l2,
            l1_bound: d * (d - 1),
            l2_bound: d * (3 * d - 4),
            total_bound: 4 * d * d,
        }
    }

    /// `|L1| <= d(d-1)`.
    pub fn l1_ok(&self) -> bool {
        self.l1.len() as u64 <= self.l1_bound
    }

    /// `|L2| <= d(3d-4)`.
    pub fn l2_ok(&self) -> bool {
        self.l2.len() as u64 <= self.l2_bound
    }

    /// `|L1| + |L2| < 4d^2`.
    pub fn total_ok(&self) -> bool {
        ((self.l1.len() + self.l2.len()) as u64) < self.total_bound
    }
}

/// `F_x^2 F_yy/2 + F_y^2 F_xx/2 - F_x F_y F_xy` for a polynomial in `x, y`.
pub fn curve_g(f: &MultiPoly, mode: DividedPower) -> Result<MultiPoly> {
    if f.involves(Var::Z) {
        return Err(Error::InvalidArgument(format!("`{f}` is not a plane curve in x, y")));
    }
    let fx = f.partial(Var::X);
    let fy = f.partial(Var::Y);
    let fxy = fx.partial(Var::Y);
    let hxx = f.divided_second(Var::X, mode);
    let hyy = f.divided_second(Var::Y, mode);
    let a = &(&fx * &fx) * &hyy;
    let b = &(&fy * &fy) * &hxx;
    let c = &(&fx * &fy) * &fxy;
    Ok(&(&a + &b) - &c)
}

/// Remainder of `g` modulo `f`, when `f` is monic (up to a constant) in `x` or `y`.
///
/// `None` when `f` has no such variable.
pub fn rem_monic(g: &MultiPoly, f: &MultiPoly) -> Option<MultiPoly> {
    let field = f.field();
    let (var, lead_exp, lead_c) = [Var::X, Var::Y, Var::Z].into_iter().find_map(|v| {
        let e = f.degree_in(v);
        if e == 0 {
            return None;
        }
        let top: Vec<_> = f.terms().filter(|(m, _)| m.exp(v) == e).collect();
        (top.len() == 1 && top[0].0.degree() == e).then(|| (v, e, top[0].1))
    })?;
    let inv = field.inv(lead_c).ok()?;
    let mut r = g.clone();
    // Each step removes the top term of r in `var` whose exponent reaches lead_exp.
    loop {
        let Some((m, c)) = r.terms().rev().find(|(m, _)| m.exp(var) >= lead_exp) else { break };
        let mut shift = m.0;
        shift[var.index()] -= lead_exp;
        let factor = MultiPoly::monomial(field, field.mul(c, inv), Monomial(shift));
        r = &r - &(&factor * f);
    }
    Some(r)
}
