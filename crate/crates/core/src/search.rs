//! Exhaustive search for flexy surfaces of low degree over a prime field.
//!
//! Candidates are the polynomials supported on a monomial list whose first nonzero
//! coefficient (in list order) is one, so each surface appears once up to scalar.
//! A hit is a polynomial of degree at least two whose smooth points over GF(p^m) are
//! all flexy and which has no linear factor over GF(p^2). For quadrics that is exact
//! irreducibility; for higher degree it only screens out unions with planes.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::mpoly::{Monomial, MultiPoly};
use crate::surface::{flex_scan, Budget, ClassHistogram, FlexVerdict, Surface};

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub p: u32,
    pub max_degree: u32,
    /// Monomials to use; `None` means every monomial of degree `<= max_degree`.
    pub support: Option<Vec<Monomial>>,
    /// Extension degree of the flexiness scan.
    pub ext: u32,
}

impl SearchSpec {
    pub fn new(p: u32, max_degree: u32) -> Self {
        SearchSpec { p, max_degree, support: None, ext: 2 }
    }

    fn monomials(&self) -> Result<Vec<Monomial>> {
        match &self.support {
            None => Ok(Monomial::up_to_degree(self.max_degree)),
            Some(s) => {
                if let Some(m) = s.iter().find(|m| m.degree() > self.max_degree) {
                    return Err(Error::InvalidArgument(format!(
                        "support monomial of degree {} exceeds max degree {}",
                        m.degree(),
                        self.max_degree
                    )));
                }
                let mut s = s.clone();
                s.sort();
                s.dedup();
                Ok(s)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub polynomial: String,
    pub degree: u32,
    pub histogram: ClassHistogram,
    /// `verified` when exact irreducibility holds, otherwise `no-linear-factor` (over GF(p^2)).
    pub irreducibility: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub field: String,
    pub max_degree: u32,
    pub ext: u32,
    pub monomials: usize,
    pub candidates: u64,
    /// Flexy candidates of degree >= 2 discarded for a linear factor.
    pub reducible_flexy: u64,
    pub hits: Vec<SearchHit>,
}

fn candidate(field: &Field, monos: &[Monomial], mut index: u64) -> MultiPoly {
    // index enumerates (lead position, tail digits) in order.
    let p = field.p() as u64;
    let m = monos.len();
    let mut lead = 0;
    loop {
        let block = p.pow((m - 1 - lead) as u32);
        if index < block {
            break;
        }
        index -= block;
        lead += 1;
    }
    let mut terms = vec![(monos[lead], FieldElem::ONE)];
    for &mono in &monos[lead + 1..] {
        terms.push((mono, field.from_int((index % p) as i64)));
        index /= p;
    }
    MultiPoly::from_terms(field, terms)
}

/// `(p^M - 1) / (p - 1)` polynomials up to scalar.
pub fn candidate_count(p: u32, monomials: usize) -> u64 {
    let p = p as u64;
    (p.pow(monomials as u32) - 1) / (p - 1)
}

pub fn search_flexy(spec: &SearchSpec, budget: &Budget) -> Result<SearchReport> {
    let field = Field::gf(spec.p, 1)?;
    let monos = spec.monomials()?;
    if monos.is_empty() {
        return Err(Error::InvalidArgument("empty support".into()));
    }
    let total = (spec.p as u64)
        .checked_pow(monos.len() as u32)
        .ok_or(Error::BudgetExceeded { what: "search space", needed: u64::MAX, budget: budget.points })?;
    if total > budget.points {
        return Err(Error::BudgetExceeded { what: "search space", needed: total, budget: budget.points });
    }
    let qm = (spec.p as u64).pow(spec.ext);
    budget.check_points(qm.pow(3))?;
    let big = field.extension(spec.ext)?;
    let emb = field.embedding_into(&big)?;
    let n = candidate_count(spec.p, monos.len());

    let outcomes: Vec<Option<std::result::Result<SearchHit, ()>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let f = candidate(&field, &monos, i);
            if f.degree().unwrap_or(0) < 2 {
                return None;
            }
            let lifted = f.embed(&emb).expect("same prime field");
            let FlexVerdict::FlexyEvidence { histogram, .. } = flex_scan(&lifted, spec.ext) else {
                return None;
            };
            let surf = Surface::new(f.clone()).expect("non-constant");
            let irreducibility = match surf.verified_irreducible() {
                Ok(Some(true)) => "verified",
                Ok(Some(false)) => return Some(Err(())),
                _ => {
                    let wide = f.over_extension(2).expect("extension in range");
                    if !wide.linear_factors().expect("nonzero").factors.is_empty() {
                        return Some(Err(()));
                    }
                    "no-linear-factor"
                }
            };
            Some(Ok(SearchHit { polynomial: f.to_string(), degree: f.degree().unwrap(), histogram, irreducibility }))
        })
        .collect();

    let mut hits = Vec::new();
    let mut reducible = 0;
    for o in outcomes.into_iter().flatten() {
        match o {
            Ok(h) => hits.push(h),
            Err(()) => reducible += 1,
        }
    }
    Ok(SearchReport {
        field: field.params().to_string(),
        max_degree: spec.max_degree,
        ext: spec.ext,
        monomials: monos.len(),
        candidates: n,
        reducible_flexy: reducible,
        hits,
    })
}
