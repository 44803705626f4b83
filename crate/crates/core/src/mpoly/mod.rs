//! Sparse polynomials in `x, y, z` over GF(q).
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic with `x > y > z`. No zero coefficient is ever stored, so two
//! polynomials over the same field are equal iff their term maps are equal.

pub(crate) mod calculus;
mod linear;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};
use crate::geom::Point3;

pub use calculus::{DividedPower, TaylorJet};
pub use linear::LinearFactorization;

/// One of the three coordinates.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// Exponent triple of `x^i y^j z^k`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Monomial([i, j, k])
    }

    pub fn degree(self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    /// All monomials of total degree `<= d`, lowest degree first and
    /// `x`-heavy first within a degree.
    pub fn up_to_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for deg in 0..=d {
            for i in (0..=deg).rev() {
                for j in (0..=deg - i).rev() {
                    out.push(Monomial([i, j, deg - i - j]));
                }
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(field: &Field) -> Self {
        MultiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, c: FieldElem) -> Self {
        Self::monomial(field, c, Monomial::ONE)
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, FieldElem::ONE)
    }

    pub fn var(field: &Field, v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(field, FieldElem::ONE, Monomial(e))
    }

    pub fn monomial(field: &Field, c: FieldElem, m: Monomial) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, c);
        p
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `a x + b y + c z + d`.
    pub fn linear_form(field: &Field, coeffs: [FieldElem; 3], constant: FieldElem) -> Self {
        let mut p = Self::constant(field, constant);
        for v in Var::ALL {
            let mut e = [0; 3];
            e[v.index()] = 1;
            p.add_term(Monomial(e), coeffs[v.index()]);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, FieldElem)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Monomial) -> FieldElem {
        self.terms.get(&m).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Largest exponent of `v` among the terms.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(Monomial, FieldElem)> {
        self.terms.iter().next_back().map(|(&m, &c)| (m, c))
    }

    /// The degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(&m, &c)| (m, c)).collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_field(&self, other: &MultiPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)))
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_field(other)?;
        let f = &self.field;
        let mut out = MultiPoly::zero(f);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let f = &self.field;
        MultiPoly { field: f.clone(), terms: self.terms.iter().map(|(&m, &c)| (m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: FieldElem) -> MultiPoly {
        let f = &self.field;
        if c.is_zero() {
            return MultiPoly::zero(f);
        }
        MultiPoly { field: f.clone(), terms: self.terms.iter().map(|(&m, &a)| (m, f.mul(a, c))).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.field);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Divides by the leading coefficient. Returns the scalar removed and the monic polynomial.
    pub fn monic(&self) -> Result<(FieldElem, MultiPoly)> {
        let (_, lead) = self.leading().ok_or(Error::ZeroPolynomial("monic"))?;
        let inv = self.field.inv(lead)?;
        Ok((lead, self.scale(inv)))
    }

    pub fn evaluate(&self, pt: &Point3) -> FieldElem {
        let f = &self.field;
        let [x, y, z] = pt.coords();
        self.terms.iter().fold(FieldElem::ZERO, |acc, (m, &c)| {
            let [i, j, k] = m.0;
            let v = f.mul(f.mul(c, f.pow(x, i as u64)), f.mul(f.pow(y, j as u64), f.pow(z, k as u64)));
            f.add(acc, v)
        })
    }

    /// Maps every coefficient through a field embedding.
    pub fn embed(&self, e: &Embedding) -> Result<MultiPoly> {
        if e.source() != &self.field {
            return Err(Error::FieldMismatch(format!("embedding from {} applied to {}", e.source(), self.field)));
        }
        Ok(MultiPoly {
            field: e.target().clone(),
            terms: self.terms.iter().map(|(&m, &c)| (m, e.apply(c))).collect(),
        })
    }

    /// The same polynomial over GF(q^m).
    pub fn over_extension(&self, m: u32) -> Result<MultiPoly> {
        if m == 1 {
            return Ok(self.clone());
        }
        let ext = self.field.extension(m)?;
        self.embed(&self.field.embedding_into(&ext)?)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self} over {})", self.field)
    }
}

// The operator impls panic on mismatched fields; use the `checked_*` methods
// when the operands come from different sources.

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomials over the same field")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomials over the same field")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomials over the same field")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(field: &Field, s: &str) -> MultiPoly {
        MultiPoly::parse(field, s).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let mons = Monomial::up_to_degree(2);
        assert_eq!(mons.len(), 10);
        assert_eq!(mons[0], Monomial::ONE);
        assert_eq!(&mons[1..4], &[Monomial::new(1, 0, 0), Monomial::new(0, 1, 0), Monomial::new(0, 0, 1)]);
        assert_eq!(mons[4], Monomial::new(2, 0, 0));
        assert!(Monomial::new(2, 0, 0) > Monomial::new(1, 1, 0));
        assert!(Monomial::new(0, 0, 3) > Monomial::new(2, 0, 0));
    }

    #[test]
    fn evaluation_examples() {
        let f3 = Field::gf(3, 1).unwrap();
        let funny = parse(&f3, "x^3*y + y^3*z + z^3*x");
        let one = f3.one();
        assert_eq!(funny.evaluate(&Point3::new(one, one, one)), f3.zero());

        let f4 = Field::gf(2, 2).unwrap();
        let a = f4.elem(2).unwrap();
        assert_eq!(MultiPoly::var(&f4, Var::X).evaluate(&Point3::new(a, f4.zero(), f4.zero())), a);
    }

    #[test]
    fn zero_has_no_degree() {
        let f = Field::gf(2, 1).unwrap();
        let z = MultiPoly::zero(&f);
        assert_eq!(z.degree(), None);
        assert!(z.is_constant());
        let x = MultiPoly::var(&f, Var::X);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn mismatched_fields_error() {
        let a = MultiPoly::var(&Field::gf(2, 1).unwrap(), Var::X);
        let b = MultiPoly::var(&Field::gf(3, 1).unwrap(), Var::X);
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(_))));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn frobenius_identity_in_char_two() {
        let f = Field::gf(2, 1).unwrap();
        let s = parse(&f, "x + y");
        assert_eq!(s.pow(2), parse(&f, "x^2 + y^2"));
    }

    #[test]
    fn extension_keeps_values() {
        let f = Field::gf(2, 2).unwrap();
        let g = parse(&f, "10*x^2 + y*z + 11");
        let big = g.over_extension(2).unwrap();
        let e = f.embedding_into(big.field()).unwrap();
        for pt in crate::geom::all_points(&f) {
            let lifted = Point3::new(e.apply(pt.x()), e.apply(pt.y()), e.apply(pt.z()));
            assert_eq!(big.evaluate(&lifted), e.apply(g.evaluate(&pt)));
        }
    }
}
