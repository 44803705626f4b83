//! Dense univariate polynomials in `t`, the result of restricting a surface to a line.

use std::fmt;

use crate::field::{Field, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    /// `coeffs[l]` multiplies `t^l`; no trailing zeros.
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero(field: &Field) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: FieldElem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c0 + c1 t`.
    pub fn linear(field: &Field, c0: FieldElem, c1: FieldElem) -> Self {
        Self::from_coeffs(field, vec![c0, c1])
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `t^l` (zero past the degree).
    pub fn coeff(&self, l: usize) -> FieldElem {
        self.coeffs.get(l).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate(&self, t: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, t), c))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|l| f.add(self.coeff(l), other.coeff(l))).collect();
        UniPoly::from_coeffs(f, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::from_coeffs(f, out)
    }

    pub fn scale(&self, c: FieldElem) -> UniPoly {
        let f = &self.field;
        UniPoly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let digits = self.field.format_elem(c);
            match (l, c == FieldElem::ONE) {
                (0, _) => write!(f, "{digits}")?,
                (_, true) => write!(f, "t^{l}")?,
                _ => write!(f, "{digits}*t^{l}")?,
            }
        }
        Ok(())
    }
}
