//! Explicit objects: the funny curve, the Heisenberg surface and the generalized
//! surface over GF(p^n) with their line families.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::geom::{self, Line3, Point3};
use crate::mpoly::{Monomial, MultiPoly};
use crate::surface::{Budget, Surface};

/// Chart `z = 1` of `x^3 y + y^3 z + z^3 x` over GF(3).
pub fn funny_curve() -> MultiPoly {
    let f3 = Field::gf(3, 1).expect("GF(3)");
    MultiPoly::parse(&f3, "x^3*y + y^3 + x").expect("literal")
}

/// The projective quartic `x^3 y + y^3 z + z^3 x` over GF(3).
pub fn funny_curve_projective() -> MultiPoly {
    let f3 = Field::gf(3, 1).expect("GF(3)");
    MultiPoly::parse(&f3, "x^3*y + y^3*z + z^3*x").expect("literal")
}

/// The affine charts `z = 1`, `x = 1`, `y = 1`, each in its two remaining variables.
pub fn funny_curve_charts() -> [MultiPoly; 3] {
    let f3 = Field::gf(3, 1).expect("GF(3)");
    ["x^3*y + y^3 + x", "y + y^3*z + z^3", "x^3 + z + z^3*x"].map(|s| MultiPoly::parse(&f3, s).expect("literal"))
}

fn prime_field_check(p: u32) -> Result<()> {
    if !crate::field::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

/// `x - x^p + y z^p - z y^p` over GF(p^2).
pub fn heisenberg(p: u32) -> Result<Surface> {
    prime_field_check(p)?;
    let f = Field::gf(p, 2)?;
    let one = f.one();
    let m1 = f.neg(one);
    let poly = MultiPoly::from_terms(
        &f,
        [
            (Monomial::new(1, 0, 0), one),
            (Monomial::new(p, 0, 0), m1),
            (Monomial::new(0, 1, p), one),
            (Monomial::new(0, p, 1), m1),
        ],
    );
    Surface::new(poly)
}

/// The `p^4` lines `(a, b, 0) + t(b^p, v, 1)` with `a, v` in GF(p) and `b` in GF(p^2).
pub fn heisenberg_lines(p: u32) -> Result<Vec<Line3>> {
    prime_field_check(p)?;
    let f = Field::gf(p, 2)?;
    let prime: Vec<FieldElem> = f.prime_subfield().collect();
    let mut out = Vec::with_capacity((p as usize).pow(4));
    for &a in &prime {
        for b in f.elements() {
            for &v in &prime {
                let base = Point3::new(a, b, f.zero());
                out.push(Line3::new(&f, base, [f.frobenius(b, 1), v, f.one()])?);
            }
        }
    }
    Ok(out)
}

/// `sum x^{p^i} + sum y^{p^i} z^{p^{i+1}} - sum y^{p^i} z^{p^{i-1}}` over GF(p^n), indices mod n.
///
/// For `n = 2` the two `yz` sums coincide and cancel, leaving `x + x^p`.
pub fn general_surface(p: u32, n: u32) -> Result<Surface> {
    prime_field_check(p)?;
    if n < 2 {
        return Err(Error::InvalidArgument("the generalized surface needs n >= 2".into()));
    }
    let f = Field::gf(p, n)?;
    let pw = |i: u32| p.pow(i % n);
    let mut poly = MultiPoly::zero(&f);
    for i in 0..n {
        poly.add_term(Monomial::new(pw(i), 0, 0), f.one());
        poly.add_term(Monomial::new(0, pw(i), pw(i + 1)), f.one());
        poly.add_term(Monomial::new(0, pw(i), pw(i + n - 1)), f.neg(f.one()));
    }
    Surface::new(poly)
}

/// `L(a, b, u, v) = (a, b, 0) + t(u, v, 1)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LineFamilyParams {
    pub a: FieldElem,
    pub b: FieldElem,
    pub u: FieldElem,
    pub v: FieldElem,
}

impl LineFamilyParams {
    pub fn line(&self, field: &Field) -> Line3 {
        Line3::new(field, Point3::new(self.a, self.b, field.zero()), [self.u, self.v, field.one()]).expect("direction has z = 1")
    }

    /// Whether `v - v^p`, `b - b^{p^2} + u^p` and the trace of `a` all vanish.
    pub fn satisfies_conditions(&self, field: &Field) -> bool {
        let v_ok = field.frobenius(self.v, 1) == self.v;
        let b_ok = field.add(field.sub(self.b, field.frobenius(self.b, 2)), field.frobenius(self.u, 1)).is_zero();
        v_ok && b_ok && field.trace_to_prime(self.a).is_zero()
    }
}

/// `u = (b^{p^2} - b)^{p^{n-1}}`, the unique solution of `u^p = b^{p^2} - b`.
pub fn u_from_b(field: &Field, b: FieldElem) -> FieldElem {
    field.frobenius(field.sub(field.frobenius(b, 2), b), field.n() - 1)
}

/// Every `L(a, b, u, v)` in the generalized surface: `p` values of `v`, `p^n` of `b`,
/// `p^{n-1}` of `a`.
pub fn general_lines(p: u32, n: u32) -> Result<Vec<Line3>> {
    prime_field_check(p)?;
    if n < 2 {
        return Err(Error::InvalidArgument("the generalized surface needs n >= 2".into()));
    }
    let f = Field::gf(p, n)?;
    let traceless: Vec<FieldElem> = f.elements().filter(|&a| f.trace_to_prime(a).is_zero()).collect();
    let prime: Vec<FieldElem> = f.prime_subfield().collect();
    let mut out = Vec::new();
    for &v in &prime {
        for b in f.elements() {
            let u = u_from_b(&f, b);
            for &a in &traceless {
                out.push(LineFamilyParams { a, b, u, v }.line(&f));
            }
        }
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClIndexKind {
    /// `l = 0`.
    Constant,
    /// `l = p^j`.
    Power,
    /// `l = p^j + p^{j-1}`, exponents mod n.
    Mixed,
    /// Any other index; predicted zero.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClEntry {
    pub index: u64,
    pub kind: ClIndexKind,
    pub predicted: FieldElem,
    pub actual: FieldElem,
}

impl ClEntry {
    pub fn matches(&self) -> bool {
        self.predicted == self.actual
    }
}

/// Comparison of the restriction of the generalized surface to `L(a, b, u, v)` with the
/// closed forms for its coefficients.
#[derive(Clone, Debug)]
pub struct ClReport {
    pub field: Field,
    pub params: LineFamilyParams,
    pub restriction: crate::UniPoly,
    pub entries: Vec<ClEntry>,
    /// `c_{p^i}^p = c_{p^{i+1}}` for each `i`, on the actual coefficients.
    pub power_linkage: Vec<bool>,
    /// `c_{p^i + p^{i-1}}^p = c_{p^{i+1} + p^i}` for each `i`.
    pub mixed_linkage: Vec<bool>,
}

impl ClReport {
    pub fn all_match(&self) -> bool {
        self.entries.iter().all(ClEntry::matches)
    }

    pub fn linkage_holds(&self) -> bool {
        self.power_linkage.iter().chain(&self.mixed_linkage).all(|&b| b)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ClEntry> {
        self.entries.iter().filter(|e| !e.matches())
    }

    pub fn coefficient(&self, l: u64) -> FieldElem {
        self.restriction.coeff(l as usize)
    }
}

/// Closed-form coefficients at `0`, `p^j` and `p^j + p^{j-1}`; where two
/// characterized indices coincide (`n = 2`, `p^1 + p^0 = p^0 + p^{1}`), their values add.
pub fn predicted_coefficients(field: &Field, params: &LineFamilyParams) -> BTreeMap<u64, (ClIndexKind, FieldElem)> {
    let f = field;
    let n = f.n();
    let p = f.p() as u64;
    let pw = |i: u32| p.pow(i % n);
    let fr = |x: FieldElem, e: u32| f.frobenius(x, e % n);
    let LineFamilyParams { a, b, u, v } = *params;
    let mut out: BTreeMap<u64, (ClIndexKind, FieldElem)> = BTreeMap::new();
    let mut put = |l: u64, kind: ClIndexKind, val: FieldElem| {
        let slot = out.entry(l).or_insert((kind, FieldElem::ZERO));
        slot.1 = f.add(slot.1, val);
    };
    put(0, ClIndexKind::Constant, f.trace_to_prime(a));
    for j in 0..n {
        let jm = j + n - 1;
        put(pw(j), ClIndexKind::Power, f.add(f.sub(fr(b, jm), fr(b, j + 1)), fr(u, j)));
        put(pw(j) + pw(jm), ClIndexKind::Mixed, f.sub(fr(v, jm), fr(v, j)));
    }
    out
}

pub fn check_cl_characterization(p: u32, n: u32, params: LineFamilyParams) -> Result<ClReport> {
    let surface = general_surface(p, n)?;
    let field = surface.field().clone();
    for x in [params.a, params.b, params.u, params.v] {
        if x.index() >= field.q() {
            return Err(Error::NotInField(format!("{x:?} in {}", field.params())));
        }
    }
    let restriction = surface
        .poly()
        .restrict_affine(&Point3::new(params.a, params.b, field.zero()), [params.u, params.v, field.one()]);
    let predicted = predicted_coefficients(&field, &params);
    let top = surface.degree() as u64;
    let mut entries = Vec::new();
    for l in 0..=top {
        let (kind, pred) = predicted.get(&l).copied().unwrap_or((ClIndexKind::Other, FieldElem::ZERO));
        entries.push(ClEntry { index: l, kind, predicted: pred, actual: restriction.coeff(l as usize) });
    }
    let pp = p as u64;
    let pw = |i: u32| pp.pow(i % n);
    let c = |l: u64| restriction.coeff(l as usize);
    let power_linkage = (0..n).map(|i| field.frobenius(c(pw(i)), 1) == c(pw(i + 1))).collect();
    let mixed_linkage = (0..n)
        .map(|i| field.frobenius(c(pw(i) + pw(i + n - 1)), 1) == c(pw(i + 1) + pw(i)))
        .collect();
    Ok(ClReport { field, params, restriction, entries, power_linkage, mixed_linkage })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneMax {
    pub count: usize,
    pub plane: Option<String>,
    /// Largest number of family lines allowed in one plane: `p` for the Heisenberg
    /// family, `q - 1` (no `q` lines in a plane) otherwise.
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exponents {
    /// `log_q |S|` when `|S|` is a power of `p`.
    pub points: Option<String>,
    /// `3 - 1/d`, `d` the smallest nontrivial divisor of `n`.
    pub question: String,
    pub smallest_divisor: u32,
}

/// Counts for the counterexample surface over GF(p^n): Heisenberg for `n = 2`, the
/// generalized surface otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub field: String,
    pub polynomial: String,
    pub points: usize,
    pub lines_family: usize,
    pub lines_total: usize,
    pub max_per_plane: PlaneMax,
    pub union: usize,
    pub exponents: Exponents,
}

pub fn counterexample_report(p: u32, n: u32, budget: &Budget) -> Result<CounterexampleReport> {
    prime_field_check(p)?;
    let (surface, family) = match n {
        2 => (heisenberg(p)?, heisenberg_lines(p)?),
        n if n > 2 => (general_surface(p, n)?, general_lines(p, n)?),
        _ => return Err(Error::InvalidArgument("counterexamples need n >= 2".into())),
    };
    let field = surface.field().clone();
    let points = surface.rational_points(1, budget)?;
    let lines_total = surface.lines_in(budget)?.len();
    let pc = geom::max_lines_per_plane(&field, &family);
    let union = geom::union_points(&field, &family).len();
    let d = (2..=n).find(|d| n % d == 0).expect("n >= 2");
    let exps = Exponents {
        points: exact_log(points.len() as u64, p as u64).map(|k| Ratio::new(k as i64, n as i64).to_string()),
        question: (Ratio::from_integer(3) - Ratio::new(1, d as i64)).to_string(),
        smallest_divisor: d,
    };
    Ok(CounterexampleReport {
        field: field.params().to_string(),
        polynomial: surface.poly().to_string(),
        points: points.len(),
        lines_family: family.len(),
        lines_total,
        max_per_plane: PlaneMax {
            count: pc.count,
            plane: pc.witness.map(|w| w.format(&field)),
            bound: if n == 2 { p as u64 } else { field.q() as u64 - 1 },
        },
        union,
        exponents: exps,
    })
}

fn exact_log(x: u64, base: u64) -> Option<u32> {
    let mut k = 0;
    let mut acc = 1u64;
    while acc < x {
        acc = acc.checked_mul(base)?;
        k += 1;
    }
    (acc == x).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_shape() {
        let h = heisenberg(2).unwrap();
        assert_eq!(h.degree(), 3);
        assert_eq!(h.poly().to_string(), "y^2*z + y*z^2 + x^2 + x");
        assert_eq!(heisenberg(3).unwrap().degree(), 4);
        assert!(heisenberg(4).is_err());
    }

    #[test]
    fn general_surface_n2_collapses() {
        let g = general_surface(2, 2).unwrap();
        assert_eq!(g.poly().to_string(), "x^2 + x");
        let g = general_surface(2, 3).unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.poly().num_terms(), 9);
    }

    #[test]
    fn u_solves_its_equation() {
        let f = Field::gf(2, 3).unwrap();
        for b in f.elements() {
            let u = u_from_b(&f, b);
            assert_eq!(f.frobenius(u, 1), f.sub(f.frobenius(b, 2), b));
        }
    }

    #[test]
    fn exact_logs() {
        assert_eq!(exact_log(32, 2), Some(5));
        assert_eq!(exact_log(1, 7), Some(0));
        assert_eq!(exact_log(33, 2), None);
    }

    #[test]
    fn funny_charts_are_cyclic() {
        let [a, b, c] = funny_curve_charts();
        let hom = funny_curve_projective();
        let one = hom.field().one();
        let zero = hom.field().zero();
        // Each chart agrees with the projective form on its affine patch.
        for x in hom.field().elements() {
            for y in hom.field().elements() {
                assert_eq!(a.evaluate(&Point3::new(x, y, zero)), hom.evaluate(&Point3::new(x, y, one)));
                assert_eq!(b.evaluate(&Point3::new(zero, x, y)), hom.evaluate(&Point3::new(one, x, y)));
                assert_eq!(c.evaluate(&Point3::new(x, zero, y)), hom.evaluate(&Point3::new(x, one, y)));
            }
        }
    }
}
