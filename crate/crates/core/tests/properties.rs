use std::collections::BTreeSet;

use flexgeom::geom::all_points;
use flexgeom::polymethod::{decompose, monomial_count, vanishing_poly, DecompositionConstants};
use flexgeom::{Field, FieldElem, Line3, Monomial, MultiPoly, Point3, Var};
use num_rational::BigRational;
use proptest::prelude::*;

const FIELDS: &[(u32, u32)] = &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)];

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(FIELDS).prop_map(|(p, n)| Field::gf(p, n).unwrap())
}

fn el(f: &Field, i: u32) -> FieldElem {
    f.elem(i % f.q()).unwrap()
}

type Terms = Vec<(u32, u32, u32, u32)>;

fn terms(max_exp: u32, len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, 0..=max_exp, any::<u32>()), 0..len)
}

fn poly(f: &Field, t: &Terms) -> MultiPoly {
    MultiPoly::from_terms(f, t.iter().map(|&(i, j, k, c)| (Monomial::new(i, j, k), el(f, c))))
}

/// `f(X + b)` by expanding every `(x_v + b_v)^e` with polynomial arithmetic.
fn translate(f: &MultiPoly, b: &Point3) -> MultiPoly {
    let field = f.field();
    let shifted: Vec<MultiPoly> = Var::ALL
        .iter()
        .map(|&v| &MultiPoly::var(field, v) + &MultiPoly::constant(field, b.coords()[v.index()]))
        .collect();
    let mut out = MultiPoly::zero(field);
    for (m, c) in f.terms() {
        let mut term = MultiPoly::constant(field, c);
        for v in Var::ALL {
            term = &term * &shifted[v.index()].pow(m.exp(v));
        }
        out = &out + &term;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(f in field(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (el(&f, a), el(&f, b), el(&f, c));
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.mul(a, f.one()), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        } else {
            prop_assert!(f.inv(a).is_err());
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        let fr = |x| f.frobenius(x, 1);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert!(f.in_subfield(f.trace_to_prime(a), 1).unwrap());
    }

    #[test]
    fn embeddings_are_homomorphisms(
        pair in prop::sample::select(vec![((2u32, 1u32), 2u32), ((2, 2), 2), ((3, 1), 2), ((2, 1), 3), ((3, 2), 2)]),
        a in any::<u32>(), b in any::<u32>(),
    ) {
        let ((p, n), m) = pair;
        let small = Field::gf(p, n).unwrap();
        let big = small.extension(m).unwrap();
        let e = small.embedding_into(&big).unwrap();
        let (a, b) = (el(&small, a), el(&small, b));
        prop_assert_eq!(e.apply(small.add(a, b)), big.add(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.apply(small.mul(a, b)), big.mul(e.apply(a), e.apply(b)));
        prop_assert!(big.in_subfield(e.apply(a), n).unwrap());
    }

    #[test]
    fn restriction_to_lines_is_a_ring_map(
        f in field(), s in terms(3, 5), t in terms(3, 5),
        base in any::<[u32; 3]>(), dir in any::<[u32; 3]>(),
    ) {
        let (g, h) = (poly(&f, &s), poly(&f, &t));
        let base = Point3::from_coords(base.map(|i| el(&f, i)));
        let dir = dir.map(|i| el(&f, i));
        let r = |p: &MultiPoly| p.restrict_affine(&base, dir);
        prop_assert_eq!(r(&(&g + &h)), r(&g).add(&r(&h)));
        prop_assert_eq!(r(&(&g * &h)), r(&g).mul(&r(&h)));
        for t in f.elements() {
            let pt = Point3::from_coords([0, 1, 2].map(|v| f.add(base.coords()[v], f.mul(t, dir[v]))));
            prop_assert_eq!(r(&g).evaluate(t), g.evaluate(&pt));
        }
    }

    #[test]
    fn hasse_leibniz(f in field(), s in terms(4, 5), t in terms(4, 5), k in 0u32..4, vi in 0usize..3) {
        let (g, h) = (poly(&f, &s), poly(&f, &t));
        let v = Var::ALL[vi];
        let lhs = (&g * &h).hasse(v, k);
        let mut rhs = MultiPoly::zero(&f);
        for i in 0..=k {
            rhs = &rhs + &(&g.hasse(v, i) * &h.hasse(v, k - i));
        }
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!((&g * &h).partial(v), &(&g.partial(v) * &h) + &(&g * &h.partial(v)));
    }

    #[test]
    fn jets_match_translation(f in field(), s in terms(4, 6), base in any::<[u32; 3]>()) {
        let g = poly(&f, &s);
        let base = Point3::from_coords(base.map(|i| el(&f, i)));
        let moved = translate(&g, &base);
        let jet = g.taylor_jet(&base);
        prop_assert_eq!(jet.f0, g.evaluate(&base));
        prop_assert_eq!(jet.f1, moved.homogeneous_part(1));
        prop_assert_eq!(jet.f2, moved.homogeneous_part(2));
    }

    /// Over GF(2^4), a polynomial of degree below 16 is divisible by a linear form
    /// exactly when it vanishes on the form's zero set.
    #[test]
    fn linear_divides_vs_vanishing(s in terms(2, 5), lin in any::<[u32; 4]>(), multiply in any::<bool>()) {
        let f = Field::gf(2, 4).unwrap();
        let l = MultiPoly::linear_form(&f, [lin[0], lin[1], lin[2]].map(|i| el(&f, i)), el(&f, lin[3]));
        prop_assume!(l.degree() == Some(1));
        let h = poly(&f, &s);
        let g = if multiply { &l * &h } else { h };
        let vanishes = all_points(&f).filter(|x| l.evaluate(x).is_zero()).all(|x| g.evaluate(&x).is_zero());
        prop_assert_eq!(MultiPoly::linear_divides(&l, &g).unwrap(), vanishes);
        if multiply {
            prop_assert!(vanishes);
        }
    }

    #[test]
    fn vanishing_poly_exists_below_the_monomial_count(
        q in prop::sample::select(vec![2u32, 3, 4, 5, 7]), d in 1u32..=6, raw in prop::collection::vec(any::<[u32; 3]>(), 1..84),
    ) {
        let f = Field::parse(&format!("GF({q})")).unwrap();
        let size = raw.len().min(monomial_count(d) as usize - 1);
        let pts: Vec<Point3> = raw[..size].iter().map(|c| Point3::from_coords(c.map(|i| el(&f, i)))).collect();
        let p = vanishing_poly(&f, &pts, d);
        prop_assert!(p.is_some());
        let p = p.unwrap();
        prop_assert!(!p.is_zero());
        prop_assert!(p.degree().unwrap() <= d);
        prop_assert!(pts.iter().all(|x| p.evaluate(x).is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    /// The dyadic buckets partition `S_v`, and each point lands in the bucket its
    /// multiplicity selects.
    #[test]
    fn buckets_partition_s_v(
        raw in prop::collection::vec((any::<[u32; 3]>(), any::<[u32; 3]>()), 1..25),
        n in 1u64..=3, bucket in 1i64..=900, k in prop::option::of(1i64..=20),
    ) {
        let f = Field::gf(3, 1).unwrap();
        let lines: Vec<Line3> = raw
            .iter()
            .filter_map(|(b, d)| Line3::new(&f, Point3::from_coords(b.map(|i| el(&f, i))), d.map(|i| el(&f, i))).ok())
            .collect();
        prop_assume!(!lines.is_empty());
        let s: Vec<Point3> = flexgeom::geom::union_points(&f, &lines).into_iter().collect();
        let c = DecompositionConstants {
            k: k.map(|k| BigRational::from_integer(k.into())),
            bucket: BigRational::new(bucket.into(), 1000.into()),
            ..DecompositionConstants::default()
        };
        let state = decompose(&f, &s, &lines, n, &c).unwrap();
        let bk = &c.bucket * &state.k;
        let v: Vec<BigRational> = state.multiplicity.values().map(|&m| BigRational::from_integer(m.into())).collect();
        let s_v: Vec<&BigRational> = v.iter().filter(|x| **x >= bk).collect();
        prop_assert_eq!(state.s_v, s_v.len());
        prop_assert_eq!(state.buckets.values().sum::<usize>(), state.s_v);

        let two = BigRational::from_integer(2.into());
        let top = state.buckets.keys().max().copied();
        let mut expected = std::collections::BTreeMap::new();
        for x in s_v {
            let top = top.unwrap();
            let j = (1..top).find(|&j| *x < two.pow(j as i32) * &bk).unwrap_or(top);
            prop_assert!(*x >= two.pow(j as i32 - 1) * &bk);
            *expected.entry(j).or_insert(0usize) += 1;
        }
        prop_assert_eq!(expected, state.buckets.clone());
        let distinct: BTreeSet<_> = lines.iter().collect();
        prop_assert_eq!(state.distinguished.len(), distinct.len());
    }
}
