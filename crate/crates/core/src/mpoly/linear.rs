//! Division by affine-linear forms and extraction of linear factors.

use std::collections::BTreeMap;

use super::{Monomial, MultiPoly, Var};
use crate::error::{Error, Result};
use crate::field::FieldElem;

/// `f = scalar * prod(factor^multiplicity) * remainder`, with `remainder` monic and
/// free of linear factors over the ground field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    pub factors: Vec<(MultiPoly, u32)>,
    pub scalar: FieldElem,
    pub remainder: MultiPoly,
}

impl LinearFactorization {
    /// Multiplies everything back together.
    pub fn recompose(&self) -> MultiPoly {
        let mut acc = self.remainder.scale(self.scalar);
        for (l, mult) in &self.factors {
            acc = &acc * &l.pow(*mult);
        }
        acc
    }
}

impl MultiPoly {
    /// Divides by a polynomial of degree at most one.
    ///
    /// Writing `l = c x_pivot + r` with `x_pivot` the first variable that occurs in `l`,
    /// returns `(Q, R)` with `self = l Q + R` and `R` free of `x_pivot`; `R` is `self`
    /// with `x_pivot = -r / c` substituted.
    pub fn div_linear(&self, l: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        if l.is_zero() {
            return Err(Error::ZeroPolynomial("linear divisor"));
        }
        if l.degree() > Some(1) {
            return Err(Error::InvalidArgument(format!("`{l}` is not of degree <= 1")));
        }
        let f = self.field().clone();
        if l.degree() == Some(0) {
            let inv = f.inv(l.coeff(Monomial::ONE))?;
            return Ok((self.scale(inv), MultiPoly::zero(&f)));
        }
        let pivot = Var::ALL
            .into_iter()
            .find(|&v| l.involves(v))
            .expect("degree-one polynomial involves a variable");
        let mut unit = [0; 3];
        unit[pivot.index()] = 1;
        let c = l.coeff(Monomial(unit));
        let c_inv = f.inv(c)?;
        // x_pivot = s modulo l
        let s = (&l.monomial_dropped(Monomial(unit))).scale(f.neg(c_inv));

        // self = sum_k g_k x_pivot^k
        let mut slices: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, coef) in self.terms() {
            let k = m.exp(pivot);
            let mut rest = m.0;
            rest[pivot.index()] = 0;
            slices.entry(k).or_insert_with(|| MultiPoly::zero(&f)).add_term(Monomial(rest), coef);
        }
        let top = slices.keys().next_back().copied().unwrap_or(0);
        let slice = |k: u32| slices.get(&k).cloned().unwrap_or_else(|| MultiPoly::zero(&f));

        // Horner division by (x_pivot - s).
        let mut quotient = MultiPoly::zero(&f);
        let mut carry = MultiPoly::zero(&f);
        for k in (1..=top).rev() {
            carry = &slice(k) + &(&s * &carry);
            let mut shift = [0; 3];
            shift[pivot.index()] = k - 1;
            quotient = &quotient + &(&carry * &MultiPoly::monomial(&f, FieldElem::ONE, Monomial(shift)));
        }
        let remainder = &slice(0) + &(&s * &carry);
        // x_pivot - s = l / c
        Ok((quotient.scale(c_inv), remainder))
    }

    fn monomial_dropped(&self, m: Monomial) -> MultiPoly {
        let mut out = self.clone();
        out.terms.remove(&m);
        out
    }

    /// Whether the degree-<=1 polynomial `l` divides `self`.
    pub fn linear_divides(l: &MultiPoly, g: &MultiPoly) -> Result<bool> {
        Ok(g.div_linear(l)?.1.is_zero())
    }

    /// Strips every affine-linear factor defined over the ground field.
    ///
    /// Candidates are the forms `a x + b y + c z + d` whose first nonzero coefficient
    /// among `a, b, c` is one, tried in encoding order.
    pub fn linear_factors(&self) -> Result<LinearFactorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("linear_factors"));
        }
        let f = self.field().clone();
        let mut rest = self.clone();
        let mut factors = Vec::new();
        for l in normalized_linear_forms(&f) {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_linear(&l)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((l, mult));
            }
        }
        let (scalar, remainder) = rest.monic()?;
        Ok(LinearFactorization { factors, scalar, remainder })
    }
}

/// Every affine-linear form with first nonzero linear coefficient equal to one:
/// `(q^2 + q + 1) q` forms.
pub fn normalized_linear_forms(field: &crate::field::Field) -> impl Iterator<Item = MultiPoly> + '_ {
    crate::geom::normalized_triples(field).flat_map(move |n| {
        field.elements().map(move |d| MultiPoly::linear_form(field, n, d))
    })
}
