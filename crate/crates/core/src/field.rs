//! Exact arithmetic in GF(p^n).
//!
//! Elements are stored in the polynomial basis `c_0 + c_1 a + ... + c_{n-1} a^{n-1}`
//! where `a` is a root of the field's monic irreducible modulus. A [`FieldElem`] is
//! the base-`p` integer `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`, so two elements are
//! equal iff their coordinate lists are equal. Elements carry no reference to their
//! field; all arithmetic goes through a [`Field`] handle.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order this crate will build.
pub const MAX_ORDER: u64 = 1 << 16;

/// Characteristic, degree and modulus of GF(p^n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    n: u32,
    /// Modulus coefficients `c_0, ..., c_n` (low degree first), monic.
    modulus: Vec<u32>,
}

impl FieldParams {
    /// Validates `p` prime, the modulus monic of degree `n`, and irreducible over GF(p).
    ///
    /// `modulus` is given low degree first.
    pub fn new(p: u32, n: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        order_of(p, n)?;
        if modulus.len() != n as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus of GF({p}^{n}) needs {} coefficients, got {}",
                n + 1,
                modulus.len()
            )));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficient {c} is not a residue mod {p}")));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over GF({p})",
                format_poly_digits(&modulus)
            )));
        }
        Ok(Self { p, n, modulus })
    }

    /// GF(p^n) with the built-in modulus: the smallest monic irreducible polynomial
    /// when coefficients are read `c_{n-1} ... c_0` as a base-`p` number.
    ///
    /// This gives x^2+x+1 for GF(4), x^3+x+1 for GF(8) and x^2+1 for GF(9).
    pub fn standard(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = order_of(p, n)?;
        let mut modulus = vec![0u32; n as usize + 1];
        modulus[n as usize] = 1;
        for code in 0..q {
            let mut c = code;
            for slot in modulus.iter_mut().take(n as usize) {
                *slot = (c % p as u64) as u32;
                c /= p as u64;
            }
            if is_irreducible(p, &modulus) {
                return Ok(Self { p, n, modulus });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Modulus coefficients, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.n)
    }
}

impl fmt::Display for FieldParams {
    /// `GF(p^n; c_n,...,c_0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        write!(f, "GF({}^{}; {})", self.p, self.n, coeffs.join(","))
    }
}

impl std::str::FromStr for FieldParams {
    type Err = Error;

    /// Accepts `GF(p^n; c_n,...,c_0)`, `GF(p^n)` and `GF(q)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { pos: 0, msg: format!("malformed field spec `{s}`") };
        let body = s
            .trim()
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (size, modulus) = match body.split_once(';') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (body.trim(), None),
        };
        let (p, n) = match size.split_once('^') {
            Some((p, n)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                n.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = size.parse::<u64>().map_err(|_| bad())?;
                prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?
            }
        };
        match modulus {
            None => FieldParams::standard(p, n),
            Some(m) => {
                let mut coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                coeffs.reverse();
                FieldParams::new(p, n, coeffs)
            }
        }
    }
}

/// An element of some GF(p^n), encoded as the base-`p` integer of its coordinates.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The raw encoding `c_0 + c_1 p + ...`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    q: u32,
    add: Vec<u32>,
    neg: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so products of logs index directly.
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
}

/// A handle on GF(p^n) with precomputed arithmetic tables. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    params: FieldParams,
    t: Tables,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.params == other.0.params
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.params)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.params)
    }
}

impl Field {
    pub fn new(params: FieldParams) -> Self {
        let t = build_tables(&params);
        Field(Arc::new(Inner { params, t }))
    }

    /// GF(p^n) with the built-in modulus.
    pub fn gf(p: u32, n: u32) -> Result<Self> {
        Ok(Self::new(FieldParams::standard(p, n)?))
    }

    /// Parses a field spec such as `GF(2^2; 1,1,1)` or `GF(9)`.
    pub fn parse(spec: &str) -> Result<Self> {
        Ok(Self::new(spec.parse()?))
    }

    pub fn params(&self) -> &FieldParams {
        &self.0.params
    }

    pub fn p(&self) -> u32 {
        self.0.params.p
    }

    pub fn n(&self) -> u32 {
        self.0.params.n
    }

    /// Field order q = p^n.
    pub fn q(&self) -> u32 {
        self.0.t.q
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Element with the given encoding.
    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if index < self.q() {
            Ok(FieldElem(index))
        } else {
            Err(Error::NotInField(format!("index {index} in {}", self.params())))
        }
    }

    /// Element with coordinates `c_0, ..., c_{n-1}` in the polynomial basis.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() != self.n() as usize {
            return Err(Error::NotInField(format!("{} coordinates for degree {}", coeffs.len(), self.n())));
        }
        let p = self.p();
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::NotInField(format!("coordinate {c} is not a residue mod {p}")));
            }
            v = v * p + c;
        }
        Ok(FieldElem(v))
    }

    /// Coordinates `c_0, ..., c_{n-1}`.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        let p = self.p();
        let mut v = x.0;
        (0..self.n())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(self.p() as i64) as u32)
    }

    /// Every element, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone + Send + Sync {
        (0..self.q()).map(FieldElem)
    }

    /// The prime subfield GF(p) as elements of this field.
    pub fn prime_subfield(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.p()).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let t = &self.0.t;
        if t.add.is_empty() {
            FieldElem(self.add_digits(x.0, y.0))
        } else {
            FieldElem(t.add[(x.0 * t.q + y.0) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, x: FieldElem) -> FieldElem {
        FieldElem(self.0.t.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        if x.0 == 0 || y.0 == 0 {
            return FieldElem::ZERO;
        }
        let t = &self.0.t;
        FieldElem(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize])
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &self.0.t;
        let l = t.log[x.0 as usize];
        Ok(FieldElem(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k`, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, x: FieldElem, k: u64) -> FieldElem {
        if k == 0 {
            return FieldElem::ONE;
        }
        if x.is_zero() {
            return FieldElem::ZERO;
        }
        let t = &self.0.t;
        let e = (t.log[x.0 as usize] as u64 * (k % (t.q as u64 - 1))) % (t.q as u64 - 1);
        FieldElem(t.exp[e as usize])
    }

    /// `x^(p^e)`.
    pub fn frobenius(&self, x: FieldElem, e: u32) -> FieldElem {
        let frob = &self.0.t.frob;
        let mut v = x.0;
        for _ in 0..e % self.n() {
            v = frob[v as usize];
        }
        FieldElem(v)
    }

    /// Absolute trace `x + x^p + ... + x^(p^(n-1))`, an element of the prime subfield.
    pub fn trace_to_prime(&self, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.n() {
            acc = self.add(acc, y);
            y = self.frobenius(y, 1);
        }
        acc
    }

    /// Whether `x` lies in the subfield GF(p^m); `m` must divide `n`.
    pub fn in_subfield(&self, x: FieldElem, m: u32) -> Result<bool> {
        if m == 0 || self.n() % m != 0 {
            return Err(Error::NotASubfield { m, n: self.n() });
        }
        Ok(self.frobenius(x, m) == x)
    }

    /// The digit string `c_{n-1} ... c_0`.
    pub fn format_elem(&self, x: FieldElem) -> String {
        self.coeffs(x).iter().rev().map(|&c| digit_char(c)).collect()
    }

    /// Parses a digit string `c_{k-1} ... c_0` with `k <= n` (missing high digits are zero).
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if s.is_empty() || s.chars().count() > self.n() as usize {
            return Err(Error::NotInField(format!("`{s}` is not an element of {}", self.params())));
        }
        let mut v = 0u32;
        for ch in s.chars() {
            let d = ch
                .to_digit(36)
                .filter(|&d| d < self.p())
                .ok_or_else(|| Error::NotInField(format!("`{s}` is not an element of {}", self.params())))?;
            v = v * self.p() + d;
        }
        Ok(FieldElem(v))
    }

    /// GF(q^m) with its built-in modulus.
    pub fn extension(&self, m: u32) -> Result<Field> {
        if m == 1 {
            return Ok(self.clone());
        }
        Field::gf(self.p(), self.n() * m)
    }

    /// A field embedding of `self` into `target`, which must contain it.
    ///
    /// The generator `a` of `self` is sent to the smallest root of `self`'s modulus in `target`.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if target.p() != self.p() || target.n() % self.n() != 0 {
            return Err(Error::FieldMismatch(format!("{self} does not embed in {target}")));
        }
        if target == self {
            return Ok(Embedding { source: self.clone(), target: target.clone(), map: (0..self.q()).map(FieldElem).collect() });
        }
        let modulus = self.params().modulus();
        let root = target
            .elements()
            .find(|&r| {
                let mut acc = FieldElem::ZERO;
                for &c in modulus.iter().rev() {
                    acc = target.add(target.mul(acc, r), target.from_int(c as i64));
                }
                acc.is_zero()
            })
            .expect("a field of degree divisible by n contains every root of a degree-n irreducible");
        let powers: Vec<FieldElem> = (0..self.n()).map(|i| target.pow(root, i as u64)).collect();
        let map = self
            .elements()
            .map(|x| {
                self.coeffs(x)
                    .iter()
                    .zip(&powers)
                    .fold(FieldElem::ZERO, |acc, (&c, &pw)| target.add(acc, target.mul(target.from_int(c as i64), pw)))
            })
            .collect();
        Ok(Embedding { source: self.clone(), target: target.clone(), map })
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }
}

/// An injective field homomorphism GF(p^n) -> GF(p^(nm)).
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    map: Vec<FieldElem>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: FieldElem) -> FieldElem {
        self.map[x.0 as usize]
    }
}

fn digit_char(d: u32) -> char {
    std::char::from_digit(d, 36).expect("residues below 36")
}

fn format_poly_digits(coeffs: &[u32]) -> String {
    coeffs.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn order_of(p: u32, n: u32) -> Result<u64> {
    let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_ORDER);
    q.ok_or_else(|| Error::InvalidField(format!("GF({p}^{n}) exceeds the supported order {MAX_ORDER}")))
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Writes `q = p^n`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut n) = (q, 0);
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p as u32, n))
}

// Polynomials over GF(p), low degree first, trimmed.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let v = &mut r[shift + i];
            *v = ((*v as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Exhaustive search for a monic factor of degree `1..=n/2`.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let n = modulus.len() - 1;
    for k in 1..=n / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut cand = vec![0u32; k + 1];
            cand[k] = 1;
            let mut c = code;
            for slot in cand.iter_mut().take(k) {
                *slot = (c % p as u64) as u32;
                c /= p as u64;
            }
            if poly_rem(p, modulus, &cand).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Schoolbook product of two encoded elements, reduced by the modulus.
pub(crate) fn mul_slow(params: &FieldParams, a: u32, b: u32) -> u32 {
    let (p, n) = (params.p, params.n as usize);
    let digits = |mut v: u32| {
        (0..n)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect::<Vec<_>>()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u32; 2 * n];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let r = poly_rem(p, &prod, &params.modulus);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_tables(params: &FieldParams) -> Tables {
    let p = params.p;
    let q = params.order();
    let digit_add = |a: u32, b: u32| {
        let (mut a, mut b, mut out, mut scale) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    };
    let neg: Vec<u32> = (0..q)
        .map(|a| {
            let (mut a, mut out, mut scale) = (a, 0u32, 1u32);
            while a > 0 {
                out += ((p - a % p) % p) * scale;
                a /= p;
                scale *= p;
            }
            out
        })
        .collect();
    let add = if q <= 1024 {
        let mut t = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                t.push(digit_add(a, b));
            }
        }
        t
    } else {
        Vec::new()
    };

    // Smallest generator of the multiplicative group.
    let order = q - 1;
    let mut exp = Vec::new();
    for g in 1..q {
        exp.clear();
        let mut x = 1u32;
        loop {
            exp.push(x);
            x = mul_slow(params, x, g);
            if x == 1 {
                break;
            }
        }
        if exp.len() == order as usize {
            break;
        }
    }
    let mut log = vec![0u32; q as usize];
    for (i, &e) in exp.iter().enumerate() {
        log[e as usize] = i as u32;
    }
    let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
    let frob = (0..q)
        .map(|x| {
            if x == 0 {
                0
            } else {
                doubled[(log[x as usize] as u64 * p as u64 % order as u64) as usize]
            }
        })
        .collect();
    Tables { q, add, neg, exp: doubled, log, frob }
}
