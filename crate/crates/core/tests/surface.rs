use std::collections::BTreeSet;

use flexgeom::geom::all_points;
use flexgeom::surface::{curve_g, PointClass};
use flexgeom::{Budget, DividedPower, Error, Field, Line3, Monomial, MultiPoly, Point3, Surface, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(f: &Field, rng: &mut ChaCha8Rng, monos: &[Monomial]) -> MultiPoly {
    MultiPoly::from_terms(f, monos.iter().map(|&m| (m, f.elem(rng.gen_range(0..f.q())).unwrap())))
}

#[test]
fn points_match_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = Field::gf(p, n).unwrap();
        for _ in 0..10 {
            let poly = random_poly(&f, &mut rng, &Monomial::up_to_degree(3));
            let Ok(s) = Surface::new(poly.clone()) else { continue };
            let brute: Vec<Point3> = all_points(&f).filter(|x| poly.evaluate(x).is_zero()).collect();
            let got = s.rational_points(1, &Budget::default()).unwrap();
            assert_eq!(got.iter().collect::<BTreeSet<_>>(), brute.iter().collect::<BTreeSet<_>>());
        }
    }
}

#[test]
fn singular_points_match_partials() {
    for (field, text) in [("GF(5)", "x^2 + y^2 - z^2"), ("GF(7)", "x^2 + y^2 - z^2"), ("GF(3)", "x^2*z - y^2")] {
        let f = Field::parse(field).unwrap();
        let poly = MultiPoly::parse(&f, text).unwrap();
        let s = Surface::new(poly.clone()).unwrap();
        let partials: Vec<MultiPoly> = Var::ALL.iter().map(|&v| poly.partial(v)).collect();
        let oracle: BTreeSet<Point3> = all_points(&f)
            .filter(|x| poly.evaluate(x).is_zero() && partials.iter().all(|d| d.evaluate(x).is_zero()))
            .collect();
        let found: BTreeSet<Point3> = s
            .classify_all(1, &Budget::default())
            .unwrap()
            .into_iter()
            .filter(|(_, c)| *c == PointClass::SingularPt)
            .map(|(x, _)| x)
            .collect();
        assert_eq!(found, oracle, "{text} over {field}");
        assert_eq!(s.histogram(1, &Budget::default()).unwrap().singular, oracle.len());
    }
}

/// On a plane curve, a smooth point is flexy exactly when `G` vanishes there.
#[test]
fn flexy_points_are_zeros_of_g() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cubic: Vec<Monomial> = Monomial::up_to_degree(3).into_iter().filter(|m| m.exp(Var::Z) == 0).collect();
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = Field::gf(p, n).unwrap();
        let mut checked = 0;
        for _ in 0..40 {
            let poly = random_poly(&f, &mut rng, &cubic);
            if poly.degree() != Some(3) {
                continue;
            }
            let s = Surface::new(poly.clone()).unwrap();
            let g = curve_g(&poly, DividedPower::Standard).unwrap();
            for (pt, class) in s.classify_all(1, &Budget::default()).unwrap() {
                match class {
                    PointClass::SingularPt => {}
                    PointClass::FlexyPt => assert!(g.evaluate(&pt).is_zero(), "{poly} at {pt:?}"),
                    PointClass::SmoothNonFlexyPt => assert!(!g.evaluate(&pt).is_zero(), "{poly} at {pt:?}"),
                }
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn planes_are_flexy_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = Field::gf(p, n).unwrap();
        for _ in 0..5 {
            let poly = random_poly(&f, &mut rng, &Monomial::up_to_degree(1));
            if poly.degree() != Some(1) {
                continue;
            }
            let s = Surface::new(poly).unwrap();
            let h = s.histogram(1, &Budget::default()).unwrap();
            assert_eq!(h.flexy, (f.q() as usize).pow(2));
            assert_eq!(h.singular + h.smooth_non_flexy, 0);
        }
    }
}

/// Lines by brute force: join every pair of rational points and keep the lines lying on `X`.
#[test]
fn lines_match_pairwise_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (p, n) in [(2, 1), (3, 1), (2, 2)] {
        let f = Field::gf(p, n).unwrap();
        for _ in 0..6 {
            let poly = random_poly(&f, &mut rng, &Monomial::up_to_degree(2));
            let Ok(s) = Surface::new(poly.clone()) else { continue };
            let pts = s.rational_points(1, &Budget::default()).unwrap();
            let mut oracle = BTreeSet::new();
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let l = Line3::through(&f, pts[i], pts[j]).unwrap();
                    if l.points(&f).iter().all(|x| poly.evaluate(x).is_zero()) {
                        oracle.insert(l);
                    }
                }
            }
            // Degree 2 < q is not guaranteed, so pointwise containment can exceed formal containment.
            let formal: BTreeSet<Line3> = s.lines_in(&Budget::default()).unwrap().into_iter().collect();
            assert!(formal.is_subset(&oracle), "{poly}");
            if f.q() > 2 {
                assert_eq!(formal, oracle, "{poly}");
            }
        }
    }
}

#[test]
fn census_bounds_on_attested_surfaces() {
    let f = Field::gf(3, 1).unwrap();
    let s = Surface::new(MultiPoly::parse(&f, "x^2 + y^2 + z^2 - 1").unwrap()).unwrap();
    assert!(matches!(s.bad_line_census(2, &Budget::default()), Err(Error::Precondition(_))));
    let s = s.attest_verified(2, &Budget::default()).unwrap();
    let c = s.bad_line_census(2, &Budget::default()).unwrap();
    assert!(c.l1_ok() && c.l2_ok() && c.total_ok());
    assert_eq!(c.total_bound, 16);

    let tight = Budget { points: 1 << 20, lines: 10 };
    assert!(matches!(s.bad_line_census(2, &tight), Err(Error::BudgetExceeded { .. })));
}
