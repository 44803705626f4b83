//! The decomposition pipeline: distinguished incidences, dyadic buckets by multiplicity,
//! a fitted vanishing polynomial and the line/point refinements `L'`, `S'`, `L''`,
//! with every inequality of the argument evaluated exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{min_degree_vanishing, monomial_count};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geom::{Line3, Point3};
use crate::mpoly::MultiPoly;
use crate::surface::{PointClass, Surface};

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Constants of the argument. `k = None` means `K = N^3 / |S|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionConstants {
    pub k: Option<BigRational>,
    /// `S_v` is `v(x) >= bucket K`.
    pub bucket: BigRational,
    /// Fitted degree budget `fit N / (K 2^j)^(1/3)`.
    pub fit: BigRational,
    /// `L'` threshold factor on `d`.
    pub l_prime: BigRational,
    /// `L''` threshold factor on `d`.
    pub l_double: BigRational,
    /// `d <= cap N`.
    pub degree_cap: BigRational,
}

impl Default for DecompositionConstants {
    fn default() -> Self {
        DecompositionConstants {
            k: None,
            bucket: frac(1, 1000),
            fit: rat(25),
            l_prime: rat(100),
            l_double: rat(10),
            degree_cap: frac(1, 4),
        }
    }
}

impl DecompositionConstants {
    fn validate(&self) -> Result<()> {
        let all = [&self.bucket, &self.fit, &self.l_prime, &self.l_double, &self.degree_cap];
        if all.iter().any(|c| !c.is_positive()) || self.k.as_ref().is_some_and(|k| !k.is_positive()) {
            return Err(Error::InvalidArgument("decomposition constants must be positive".into()));
        }
        if self.bucket >= BigRational::one() {
            return Err(Error::InvalidArgument("the bucket factor must be below one".into()));
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn holds(self, l: &BigRational, r: &BigRational) -> bool {
        match self {
            Relation::Eq => l == r,
            Relation::Le => l <= r,
            Relation::Lt => l < r,
            Relation::Ge => l >= r,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LedgerStatus {
    Pass,
    Fail,
    /// An earlier stage produced nothing to evaluate.
    Skipped,
}

/// One inequality with both sides evaluated exactly. When `cubed` is set, both sides were
/// raised to the third power to clear cube roots of `K 2^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub id: u32,
    pub claim: &'static str,
    #[serde(serialize_with = "ser_opt_rat")]
    pub lhs: Option<BigRational>,
    pub relation: Relation,
    #[serde(serialize_with = "ser_opt_rat")]
    pub rhs: Option<BigRational>,
    pub cubed: bool,
    pub status: LedgerStatus,
}

fn ser_opt_rat<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Outcome {
    Success,
    Failure { first_failing: u32, claim: &'static str },
}

/// A factor of the fitted polynomial with the points of `S_j` it vanishes on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    #[serde(serialize_with = "ser_poly")]
    pub poly: MultiPoly,
    pub degree: u32,
    pub linear: bool,
    pub points: usize,
}

fn ser_poly<S: serde::Serializer>(p: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionState {
    pub field: String,
    pub n: u64,
    #[serde(serialize_with = "ser_rat")]
    pub k: BigRational,
    pub points: usize,
    pub lines: usize,
    /// Distinguished points per line, `N` each, lexicographically smallest.
    #[serde(skip)]
    pub distinguished: Vec<Vec<Point3>>,
    /// `v(x)` for every point of `S`.
    #[serde(skip)]
    pub multiplicity: BTreeMap<Point3, u32>,
    pub s_v: usize,
    /// `j -> |S_j|`.
    pub buckets: BTreeMap<u32, usize>,
    pub j: Option<u32>,
    /// The fitted polynomial and its degree.
    #[serde(serialize_with = "ser_opt_poly")]
    pub fitted: Option<MultiPoly>,
    pub fit_degree_budget: Option<u64>,
    pub components: Vec<Component>,
    pub chosen: Option<usize>,
    pub d: Option<u32>,
    pub s_jl: usize,
    pub l_prime: usize,
    pub s_prime: usize,
    pub l_double_prime: usize,
    pub warnings: Vec<String>,
    pub ledger: Vec<LedgerEntry>,
    pub outcome: Outcome,
}

fn ser_opt_poly<S: serde::Serializer>(p: &Option<MultiPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

struct Ledger(Vec<LedgerEntry>);

impl Ledger {
    fn check(&mut self, claim: &'static str, lhs: BigRational, relation: Relation, rhs: BigRational, cubed: bool) {
        let status = if relation.holds(&lhs, &rhs) { LedgerStatus::Pass } else { LedgerStatus::Fail };
        let id = self.0.len() as u32 + 1;
        self.0.push(LedgerEntry { id, claim, lhs: Some(lhs), relation, rhs: Some(rhs), cubed, status });
    }

    fn skip(&mut self, claim: &'static str, relation: Relation) {
        let id = self.0.len() as u32 + 1;
        self.0.push(LedgerEntry { id, claim, lhs: None, relation, rhs: None, cubed: false, status: LedgerStatus::Skipped });
    }

    fn outcome(&self) -> Outcome {
        match self.0.iter().find(|e| e.status != LedgerStatus::Pass) {
            None => Outcome::Success,
            Some(e) => Outcome::Failure { first_failing: e.id, claim: e.claim },
        }
    }
}

const CLAIMS_AFTER_BUCKETS: [(&str, Relation, bool); 21] = [
    ("I(S_j, L) >= (1 - b) |L| N / (2 j^2)", Relation::Ge, false),
    ("I(S_j, L) counted point-major = counted line-major", Relation::Eq, false),
    ("|S_j| 2^j b K >= I(S_j, L)", Relation::Ge, false),
    ("|S_j| >= (1 - b) |L| N / (2 j^2 2^j b K)", Relation::Ge, false),
    ("|S_j| <= |L| N / (2^(j-1) b K)", Relation::Le, false),
    ("|S_j| < C(D + 3, 3) with D = ceil(c_fit N / (K 2^j)^(1/3))", Relation::Lt, false),
    ("deg P <= c_fit N / (K 2^j)^(1/3)", Relation::Le, true),
    ("P vanishes on S_j", Relation::Eq, false),
    ("sum d_l <= c_fit N / (K 2^j)^(1/3)", Relation::Le, true),
    ("sum |S_{j,l}| >= (1 - b) |L| N / (2 j^2 2^j b K)", Relation::Ge, false),
    ("|S_{j,l}| >= (1 - b) |L| d / (2 j^2 b c_fit (K 2^j)^(2/3))", Relation::Ge, true),
    ("I(S_{j,l}, L \\ L') <= c_L' |L| d", Relation::Le, false),
    ("I(S_{j,l} \\ S', L') <= 2 |S_{j,l}|", Relation::Le, false),
    ("I(S', L' \\ L'') <= c_L'' |L| d", Relation::Le, false),
    ("I(S', L'') >= |S_{j,l}| 2^(j-1) b K - c_L' |L| d - 2 |S_{j,l}| - c_L'' |L| d", Relation::Ge, false),
    ("I(S', L'') >= 2 N^2 d", Relation::Ge, false),
    ("|L''| >= 2 N d", Relation::Ge, false),
    ("2 N d >= 4 d^2", Relation::Ge, false),
    ("d <= c_cap N", Relation::Le, false),
    ("every line of L'' lies on X", Relation::Eq, false),
    ("every point of S' is singular or flexy on X", Relation::Eq, false),
];

/// Runs the decomposition on `(S, L)` with `N` distinguished points per line.
///
/// Always returns a complete ledger; the outcome names the first claim that fails.
/// Errors only when some line carries fewer than `N` points of `S`.
pub fn decompose(
    field: &Field,
    s: &[Point3],
    l: &[Line3],
    n: u64,
    constants: &DecompositionConstants,
) -> Result<DecompositionState> {
    constants.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let sset: BTreeSet<Point3> = s.iter().copied().collect();
    let lines: Vec<Line3> = {
        let mut seen = BTreeSet::new();
        l.iter().copied().filter(|x| seen.insert(*x)).collect()
    };
    if sset.is_empty() || lines.is_empty() {
        return Err(Error::Precondition("S and L must be nonempty".into()));
    }

    // I': the N smallest points of S on each line.
    let mut distinguished = Vec::with_capacity(lines.len());
    for line in &lines {
        let mut on: Vec<Point3> = line.points(field).into_iter().filter(|p| sset.contains(p)).collect();
        if (on.len() as u64) < n {
            return Err(Error::Precondition(format!(
                "line {} carries {} points of S, fewer than N = {n}",
                line.format(field),
                on.len()
            )));
        }
        on.sort();
        on.truncate(n as usize);
        distinguished.push(on);
    }
    let mut multiplicity: BTreeMap<Point3, u32> = sset.iter().map(|&p| (p, 0)).collect();
    for pts in &distinguished {
        for p in pts {
            *multiplicity.get_mut(p).expect("distinguished points lie in S") += 1;
        }
    }

    let nn = rat(n);
    let n3 = &nn * &nn * &nn;
    let size_s = rat(sset.len() as u64);
    let size_l = rat(lines.len() as u64);
    let k = constants.k.clone().unwrap_or_else(|| &n3 / &size_s);
    let b = &constants.bucket;
    let bk = b * &k;
    let one = BigRational::one();
    let two = rat(2);
    let incidences_total = rat(distinguished.iter().map(|d| d.len() as u64).sum::<u64>());

    let mut ledger = Ledger(Vec::new());
    let mut warnings = Vec::new();
    ledger.check("|L| = N^2", size_l.clone(), Relation::Eq, &nn * &nn, false);
    ledger.check("|S| <= N^3 / K", size_s.clone(), Relation::Le, &n3 / &k, false);
    ledger.check("I(S, L) = |L| N", incidences_total.clone(), Relation::Eq, &size_l * &nn, false);

    // S_v and the dyadic buckets [2^(j-1) bK, 2^j bK), the top one closed.
    let s_v: Vec<Point3> = multiplicity.iter().filter(|(_, &v)| rat(v) >= bk).map(|(&p, _)| p).collect();
    let i_of = |pts: &mut dyn Iterator<Item = &Point3>| -> u64 { pts.map(|p| multiplicity[p] as u64).sum() };
    let i_sv = i_of(&mut s_v.iter());
    let i_not_sv = incidences_total.clone() - rat(i_sv);
    ledger.check("I(S \\ S_v, L) <= b K |S|", i_not_sv, Relation::Le, &bk * &size_s, false);
    ledger.check("I(S_v, L) >= (1 - b) |L| N", rat(i_sv), Relation::Ge, (&one - b) * &size_l * &nn, false);

    let pow2 = |j: u32| rat(BigInt::one() << j as usize);
    let mut buckets: BTreeMap<u32, Vec<Point3>> = BTreeMap::new();
    if let Some(vmax) = s_v.iter().map(|p| multiplicity[p]).max() {
        let vmax = rat(vmax);
        let top = (1..).find(|&j| vmax <= pow2(j) * &bk).expect("v is finite");
        for &p in &s_v {
            let v = rat(multiplicity[&p]);
            let j = (1..top).find(|&j| v < pow2(j) * &bk).unwrap_or(top);
            buckets.entry(j).or_default().push(p);
        }
    }

    let mut state = DecompositionState {
        field: field.params().to_string(),
        n,
        k: k.clone(),
        points: sset.len(),
        lines: lines.len(),
        distinguished: Vec::new(),
        multiplicity: BTreeMap::new(),
        s_v: s_v.len(),
        buckets: buckets.iter().map(|(&j, v)| (j, v.len())).collect(),
        j: None,
        fitted: None,
        fit_degree_budget: None,
        components: Vec::new(),
        chosen: None,
        d: None,
        s_jl: 0,
        l_prime: 0,
        s_prime: 0,
        l_double_prime: 0,
        warnings: Vec::new(),
        ledger: Vec::new(),
        outcome: Outcome::Success,
    };

    // Pigeonhole on j: the smallest j meeting the threshold, else the best ratio.
    let threshold = |j: u32| (&one - b) * &size_l * &nn / (&two * rat(j as u64 * j as u64));
    let bucket_i: BTreeMap<u32, u64> = buckets.iter().map(|(&j, pts)| (j, i_of(&mut pts.iter()))).collect();
    let chosen_j = bucket_i.iter().find(|(&j, &i)| rat(i) >= threshold(j)).map(|(&j, _)| j).or_else(|| {
        let best = bucket_i.iter().max_by(|a, b| {
            (rat(*a.1) / threshold(*a.0)).cmp(&(rat(*b.1) / threshold(*b.0))).then(b.0.cmp(a.0))
        });
        if let Some((&j, _)) = best {
            warnings.push(format!("no bucket meets the pigeonhole threshold; continuing with the best, j = {j}"));
        }
        best.map(|(&j, _)| j)
    });

    let Some(j) = chosen_j else {
        warnings.push("S_v is empty, so there is no bucket to fit".into());
        for (claim, rel, _) in CLAIMS_AFTER_BUCKETS {
            ledger.skip(claim, rel);
        }
        state.outcome = ledger.outcome();
        state.ledger = ledger.0;
        state.warnings = warnings;
        state.distinguished = distinguished;
        state.multiplicity = multiplicity;
        return Ok(state);
    };
    state.j = Some(j);
    let s_j = &buckets[&j];
    let s_j_set: BTreeSet<Point3> = s_j.iter().copied().collect();
    let i_sj = bucket_i[&j];
    let i_sj_lines: u64 = distinguished.iter().map(|d| d.iter().filter(|p| s_j_set.contains(p)).count() as u64).sum();
    let size_sj = rat(s_j.len() as u64);
    let jj = rat(j as u64 * j as u64);
    let k2j = &k * pow2(j);

    ledger.check(CLAIMS_AFTER_BUCKETS[0].0, rat(i_sj), Relation::Ge, threshold(j), false);
    ledger.check(CLAIMS_AFTER_BUCKETS[1].0, rat(i_sj), Relation::Eq, rat(i_sj_lines), false);
    ledger.check(CLAIMS_AFTER_BUCKETS[2].0, &size_sj * pow2(j) * &bk, Relation::Ge, rat(i_sj), false);
    let sj_lower = (&one - b) * &size_l * &nn / (&two * &jj * pow2(j) * &bk);
    ledger.check(CLAIMS_AFTER_BUCKETS[3].0, size_sj.clone(), Relation::Ge, sj_lower.clone(), false);
    ledger.check(CLAIMS_AFTER_BUCKETS[4].0, size_sj.clone(), Relation::Le, &size_l * &nn / (pow2(j - 1) * &bk), false);

    // D = ceil(c_fit N / (K 2^j)^(1/3)): least D with D^3 K 2^j >= (c_fit N)^3.
    let fit_n = &constants.fit * &nn;
    let fit_n3 = &fit_n * &fit_n * &fit_n;
    let big_d = (0u64..).find(|&d| rat(d * d * d) * &k2j >= fit_n3).expect("unbounded search");
    state.fit_degree_budget = Some(big_d);
    ledger.check(CLAIMS_AFTER_BUCKETS[5].0, size_sj.clone(), Relation::Lt, rat(monomial_count(big_d as u32)), false);

    let (deg_p, p) = min_degree_vanishing(field, s_j)?;
    let cube = |x: u64| rat(x * x * x);
    ledger.check(CLAIMS_AFTER_BUCKETS[6].0, cube(deg_p as u64) * &k2j, Relation::Le, fit_n3.clone(), true);
    let nonvanishing = s_j.iter().filter(|x| !p.evaluate(x).is_zero()).count();
    ledger.check(CLAIMS_AFTER_BUCKETS[7].0, rat(nonvanishing as u64), Relation::Eq, rat(0), false);

    // Components: distinct linear factors, then the remainder as one piece.
    let lf = p.linear_factors()?;
    if lf.factors.iter().any(|(_, m)| *m > 1) {
        warnings.push("repeated linear factors of P were removed".into());
    }
    let mut comps: Vec<MultiPoly> = lf.factors.iter().map(|(l, _)| l.clone()).collect();
    if lf.remainder.degree().unwrap_or(0) > 0 {
        warnings.push(format!(
            "the non-linear part `{}` of P is treated as one component; its irreducibility and squarefreeness are not checked",
            lf.remainder
        ));
        comps.push(lf.remainder.clone());
    }
    let components: Vec<(Component, Vec<Point3>)> = comps
        .into_iter()
        .map(|c| {
            let pts: Vec<Point3> = s_j.iter().copied().filter(|x| c.evaluate(x).is_zero()).collect();
            let degree = c.degree().expect("non-constant");
            (Component { linear: degree == 1, degree, points: pts.len(), poly: c }, pts)
        })
        .collect();
    let sum_d: u64 = components.iter().map(|(c, _)| c.degree as u64).sum();
    let sum_sjl: u64 = components.iter().map(|(c, _)| c.points as u64).sum();
    ledger.check(CLAIMS_AFTER_BUCKETS[8].0, cube(sum_d) * &k2j, Relation::Le, fit_n3.clone(), true);
    ledger.check(CLAIMS_AFTER_BUCKETS[9].0, rat(sum_sjl), Relation::Ge, sj_lower, false);

    // Largest |S_{j,l}| / d_l, first on ties.
    let chosen = (0..components.len())
        .reduce(|best, i| {
            let (a, b) = (&components[best].0, &components[i].0);
            if (b.points as u64) * (a.degree as u64) > (a.points as u64) * (b.degree as u64) {
                i
            } else {
                best
            }
        })
        .expect("P has a factor");
    let (comp, s_jl) = components[chosen].clone();
    let d = comp.degree;
    let dd = rat(d);
    let size_sjl = rat(s_jl.len() as u64);
    let c16 = (&one - b) * &size_l * &dd / (&two * &jj * b * &constants.fit);
    ledger.check(CLAIMS_AFTER_BUCKETS[10].0, &size_sjl * &size_sjl * &size_sjl * &k2j * &k2j, Relation::Ge, &c16 * &c16 * &c16, true);

    // L': lines of L on X. A line off X meets it in at most d <= c_L' d points, so this
    // is exactly the set of lines with more than c_L' d points of X.
    let x = Surface::new(comp.poly.clone())?;
    let on_x: Vec<bool> = lines.iter().map(|line| x.contains_line(line)).collect();
    let sjl_set: BTreeSet<Point3> = s_jl.iter().copied().collect();
    let count_in = |idx: usize, set: &BTreeSet<Point3>| distinguished[idx].iter().filter(|p| set.contains(p)).count() as u64;
    let mut lp_count: HashMap<Point3, u32> = HashMap::new();
    for (idx, _) in lines.iter().enumerate().filter(|(i, _)| on_x[*i]) {
        for p in distinguished[idx].iter().filter(|p| sjl_set.contains(p)) {
            *lp_count.entry(*p).or_default() += 1;
        }
    }
    let s_prime: BTreeSet<Point3> = s_jl.iter().copied().filter(|p| lp_count.get(p).copied().unwrap_or(0) >= 3).collect();
    let l_double_thresh = &constants.l_double * &dd;
    let in_l2: Vec<bool> =
        (0..lines.len()).map(|i| on_x[i] && rat(count_in(i, &s_prime)) > l_double_thresh).collect();

    let i_sjl_off: u64 = (0..lines.len()).filter(|&i| !on_x[i]).map(|i| count_in(i, &sjl_set)).sum();
    let sjl_minus: BTreeSet<Point3> = sjl_set.difference(&s_prime).copied().collect();
    let i_rest_lp: u64 = (0..lines.len()).filter(|&i| on_x[i]).map(|i| count_in(i, &sjl_minus)).sum();
    let i_sp_lp_not_l2: u64 = (0..lines.len()).filter(|&i| on_x[i] && !in_l2[i]).map(|i| count_in(i, &s_prime)).sum();
    let i_sp_l2: u64 = (0..lines.len()).filter(|&i| in_l2[i]).map(|i| count_in(i, &s_prime)).sum();
    let l2_count = in_l2.iter().filter(|&&b| b).count() as u64;

    let lp_bound = &constants.l_prime * &size_l * &dd;
    let l2_bound = &constants.l_double * &size_l * &dd;
    ledger.check(CLAIMS_AFTER_BUCKETS[11].0, rat(i_sjl_off), Relation::Le, lp_bound.clone(), false);
    ledger.check(CLAIMS_AFTER_BUCKETS[12].0, rat(i_rest_lp), Relation::Le, &two * &size_sjl, false);
    ledger.check(CLAIMS_AFTER_BUCKETS[13].0, rat(i_sp_lp_not_l2), Relation::Le, l2_bound.clone(), false);
    let combined = &size_sjl * pow2(j - 1) * &bk - &lp_bound - &two * &size_sjl - &l2_bound;
    ledger.check(CLAIMS_AFTER_BUCKETS[14].0, rat(i_sp_l2), Relation::Ge, combined, false);
    ledger.check(CLAIMS_AFTER_BUCKETS[15].0, rat(i_sp_l2), Relation::Ge, &two * &nn * &nn * &dd, false);
    ledger.check(CLAIMS_AFTER_BUCKETS[16].0, rat(l2_count), Relation::Ge, &two * &nn * &dd, false);
    ledger.check(CLAIMS_AFTER_BUCKETS[17].0, &two * &nn * &dd, Relation::Ge, rat(4) * &dd * &dd, false);
    ledger.check(CLAIMS_AFTER_BUCKETS[18].0, dd.clone(), Relation::Le, &constants.degree_cap * &nn, false);
    let l2_on_x = (0..lines.len()).filter(|&i| in_l2[i] && x.contains_line(&lines[i])).count() as u64;
    ledger.check(CLAIMS_AFTER_BUCKETS[19].0, rat(l2_on_x), Relation::Eq, rat(l2_count), false);
    let special = s_prime
        .iter()
        .filter(|p| matches!(x.classify_point(p), Ok(PointClass::SingularPt | PointClass::FlexyPt)))
        .count();
    ledger.check(CLAIMS_AFTER_BUCKETS[20].0, rat(special as u64), Relation::Eq, rat(s_prime.len() as u64), false);

    state.fitted = Some(p);
    state.components = components.into_iter().map(|(c, _)| c).collect();
    state.chosen = Some(chosen);
    state.d = Some(d);
    state.s_jl = s_jl.len();
    state.l_prime = on_x.iter().filter(|&&b| b).count();
    state.s_prime = s_prime.len();
    state.l_double_prime = l2_count as usize;
    state.outcome = ledger.outcome();
    state.ledger = ledger.0;
    state.warnings = warnings;
    state.distinguished = distinguished;
    state.multiplicity = multiplicity;
    Ok(state)
}

impl DecompositionState {
    pub fn entry(&self, id: u32) -> Option<&LedgerEntry> {
        self.ledger.iter().find(|e| e.id == id)
    }

    pub fn first_failure(&self) -> Option<&LedgerEntry> {
        self.ledger.iter().find(|e| e.status != LedgerStatus::Pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}
