//! Formal derivatives, Hasse derivatives and Taylor jets.
//!
//! Everything here is computed with binomial coefficients reduced mod p, never by
//! dividing factorials, so it is exact in every characteristic.

use serde::{Deserialize, Serialize};

use super::{Monomial, MultiPoly, Var};
use crate::field::{Field, FieldElem};
use crate::geom::{Line3, Point3};
use crate::unipoly::UniPoly;

/// How `F_vv / 2` is read in characteristic 2.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DividedPower {
    /// The second Hasse derivative: `x^m -> C(m, 2) x^(m-2)` in every characteristic.
    #[default]
    Standard,
    /// In characteristic 2 only, `x^m -> m(m+1)/2 x^(m-2)`. Odd characteristics use `C(m, 2)`.
    PaperLiteral,
}

/// `C(m, k) mod p` by Lucas' theorem.
pub fn binom_mod(m: u64, k: u64, p: u32) -> u32 {
    let p = p as u64;
    let (mut m, mut k) = (m, k);
    let mut acc = 1u64;
    while k > 0 {
        let (mi, ki) = (m % p, k % p);
        if ki > mi {
            return 0;
        }
        acc = acc * small_binom_mod(mi, ki, p) % p;
        m /= p;
        k /= p;
    }
    acc as u32
}

// C(m, k) mod p for m < p.
fn small_binom_mod(m: u64, k: u64, p: u64) -> u64 {
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * (m - i) % p;
        den = den * (i + 1) % p;
    }
    let (mut inv, mut b, mut e) = (1u64, den, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    num * inv % p
}

/// Components of degree 0, 1 and 2 of a polynomial re-centred at a base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorJet {
    pub f0: FieldElem,
    pub f1: MultiPoly,
    pub f2: MultiPoly,
}

/// Raw jet coefficients. `quad` is ordered `xx, xy, xz, yy, yz, zz`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) struct JetCoeffs {
    pub f0: FieldElem,
    pub lin: [FieldElem; 3],
    pub quad: [FieldElem; 6],
}

const QUAD_SHAPES: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
const QUAD_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl MultiPoly {
    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> MultiPoly {
        self.hasse(v, 1)
    }

    /// Hasse derivative of order `k`: `x^m -> C(m, k) x^(m-k)` in the chosen variable.
    pub fn hasse(&self, v: Var, k: u32) -> MultiPoly {
        let f = self.field();
        let p = f.p();
        let mut out = MultiPoly::zero(f);
        for (m, c) in self.terms() {
            let e = m.exp(v);
            if e < k {
                continue;
            }
            let b = binom_mod(e as u64, k as u64, p);
            if b == 0 {
                continue;
            }
            let mut exps = m.0;
            exps[v.index()] -= k;
            out.add_term(Monomial(exps), f.mul(c, f.from_int(b as i64)));
        }
        out
    }

    /// The halved second derivative `F_vv / 2`.
    pub fn divided_second(&self, v: Var, mode: DividedPower) -> MultiPoly {
        let f = self.field();
        if mode == DividedPower::Standard || f.p() != 2 {
            return self.hasse(v, 2);
        }
        let mut out = MultiPoly::zero(f);
        for (m, c) in self.terms() {
            let e = m.exp(v) as u64;
            if e < 2 {
                continue;
            }
            // e(e+1)/2 mod 2
            let factor = ((e * (e + 1) / 2) % 2) as i64;
            let mut exps = m.0;
            exps[v.index()] -= 2;
            out.add_term(Monomial(exps), f.mul(c, f.from_int(factor)));
        }
        out
    }

    pub(crate) fn jet_coeffs(&self, base: &Point3) -> JetCoeffs {
        let f = self.field();
        let p = f.p();
        let b = base.coords();
        let mut jet = JetCoeffs { f0: FieldElem::ZERO, lin: [FieldElem::ZERO; 3], quad: [FieldElem::ZERO; 6] };
        // Coefficient of X^e in (X + b)^m is C(m, e) b^(m - e).
        let part = |m: u32, e: u32, bv: FieldElem| -> FieldElem {
            if e > m {
                return FieldElem::ZERO;
            }
            let c = binom_mod(m as u64, e as u64, p);
            f.mul(f.from_int(c as i64), f.pow(bv, (m - e) as u64))
        };
        for (mono, c) in self.terms() {
            let [i, j, k] = mono.0;
            let px = [part(i, 0, b[0]), part(i, 1, b[0]), part(i, 2, b[0])];
            let py = [part(j, 0, b[1]), part(j, 1, b[1]), part(j, 2, b[1])];
            let pz = [part(k, 0, b[2]), part(k, 1, b[2]), part(k, 2, b[2])];
            let coef = |e: [u32; 3]| f.mul(c, f.mul(px[e[0] as usize], f.mul(py[e[1] as usize], pz[e[2] as usize])));
            jet.f0 = f.add(jet.f0, coef([0, 0, 0]));
            for v in 0..3 {
                let mut e = [0; 3];
                e[v] = 1;
                jet.lin[v] = f.add(jet.lin[v], coef(e));
            }
            for (slot, shape) in QUAD_SHAPES.iter().enumerate() {
                jet.quad[slot] = f.add(jet.quad[slot], coef(*shape));
            }
        }
        jet
    }

    /// Homogeneous components of degree 0, 1 and 2 of `self(X + base)`.
    pub fn taylor_jet(&self, base: &Point3) -> TaylorJet {
        let f = self.field();
        let j = self.jet_coeffs(base);
        let f1 = MultiPoly::linear_form(f, j.lin, FieldElem::ZERO);
        let f2 = MultiPoly::from_terms(f, QUAD_SHAPES.iter().zip(j.quad).map(|(&s, c)| (Monomial(s), c)));
        TaylorJet { f0: j.f0, f1, f2 }
    }

    /// Substitutes `x = b_x + t d_x`, `y = b_y + t d_y`, `z = b_z + t d_z`.
    pub fn restrict_affine(&self, base: &Point3, dir: [FieldElem; 3]) -> UniPoly {
        let f = self.field();
        let b = base.coords();
        let coord: Vec<UniPoly> = (0..3).map(|v| UniPoly::linear(f, b[v], dir[v])).collect();
        let powers: Vec<Vec<UniPoly>> = Var::ALL
            .iter()
            .map(|&v| {
                let top = self.degree_in(v);
                let mut pw = vec![UniPoly::constant(f, FieldElem::ONE)];
                for e in 1..=top as usize {
                    pw.push(pw[e - 1].mul(&coord[v.index()]));
                }
                pw
            })
            .collect();
        let mut out = UniPoly::zero(f);
        for (m, c) in self.terms() {
            let [i, j, k] = m.0;
            let term = powers[0][i as usize].mul(&powers[1][j as usize]).mul(&powers[2][k as usize]).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// The exact polynomial in `t` obtained by composing with the line's parametrization.
    pub fn restrict_to_line(&self, line: &Line3) -> UniPoly {
        self.restrict_affine(&line.base(), line.dir())
    }
}

/// Whether the quadratic form `quad` is divisible by the nonzero linear form `lin`.
///
/// Substitutes the pivot variable (first with a nonzero coefficient) and checks that
/// the remaining binary quadratic form vanishes.
pub(crate) fn quad_divisible(field: &Field, lin: [FieldElem; 3], quad: [FieldElem; 6]) -> bool {
    let f = field;
    let Some(piv) = lin.iter().position(|c| !c.is_zero()) else {
        return quad.iter().all(|c| c.is_zero());
    };
    let inv = f.inv(lin[piv]).expect("pivot is nonzero");
    // Each variable as a linear form in the non-pivot variables.
    let mut image = [[FieldElem::ZERO; 3]; 3];
    for (v, row) in image.iter_mut().enumerate() {
        if v == piv {
            for k in 0..3 {
                if k != piv {
                    row[k] = f.neg(f.mul(lin[k], inv));
                }
            }
        } else {
            row[v] = FieldElem::ONE;
        }
    }
    let mut out = [[FieldElem::ZERO; 3]; 3];
    for (slot, &(a, b)) in QUAD_PAIRS.iter().enumerate() {
        let q = quad[slot];
        if q.is_zero() {
            continue;
        }
        for c in 0..3 {
            for d in 0..3 {
                let prod = f.mul(q, f.mul(image[a][c], image[b][d]));
                let (lo, hi) = if c <= d { (c, d) } else { (d, c) };
                out[lo][hi] = f.add(out[lo][hi], prod);
            }
        }
    }
    out.iter().flatten().all(|c| c.is_zero())
}
