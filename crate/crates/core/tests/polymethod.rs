use flexgeom::constructions::{heisenberg, heisenberg_lines};
use flexgeom::geom::all_points;
use flexgeom::polymethod::{
    check_theorem_hypotheses, kakeya_surface_bound, min_degree_vanishing, vanishing_poly, Candidate,
};
use flexgeom::{Budget, Error, Field, Line3, MultiPoly, Point3, Surface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn elem(f: &Field, i: u32) -> flexgeom::FieldElem {
    f.elem(i).unwrap()
}

fn random_points(f: &Field, rng: &mut ChaCha8Rng, n: usize) -> Vec<Point3> {
    (0..n)
        .map(|_| {
            let mut e = || elem(f, rng.gen_range(0..f.q()));
            Point3::new(e(), e(), e())
        })
        .collect()
}

#[test]
fn hundred_points_at_degree_seven() {
    let f = Field::gf(7, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let pts = random_points(&f, &mut rng, 100);
        let p = vanishing_poly(&f, &pts, 7).expect("100 < C(10, 3) = 120");
        assert!(!p.is_zero());
        assert!(p.degree().unwrap() <= 7);
        assert!(pts.iter().all(|x| p.evaluate(x).is_zero()));
    }
}

#[test]
fn min_degree_is_minimal() {
    let f = Field::gf(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for size in [1, 3, 4, 9, 10, 20, 35, 60] {
        let pts = random_points(&f, &mut rng, size);
        let (d, p) = min_degree_vanishing(&f, &pts).unwrap();
        assert!(pts.iter().all(|x| p.evaluate(x).is_zero()));
        assert!(p.degree().unwrap() <= d);
        assert!(d == 1 || vanishing_poly(&f, &pts, d - 1).is_none(), "size {size}");
    }
    // The whole space needs degree q: x^5 - x.
    let all: Vec<Point3> = all_points(&f).collect();
    assert_eq!(min_degree_vanishing(&f, &all).unwrap().0, 5);
}

/// One line through the origin in each of the `q^2 + q + 1` directions.
fn star(f: &Field) -> Vec<Line3> {
    flexgeom::geom::normalized_triples(f).map(|d| Line3::new(f, Point3::origin(), d).unwrap()).collect()
}

#[test]
fn kakeya_bound_on_a_star() {
    let f = Field::gf(3, 1).unwrap();
    let lines = star(&f);
    assert_eq!(lines.len(), 13);
    let plane = Surface::new(MultiPoly::parse(&f, "x").unwrap()).unwrap();
    let r = kakeya_surface_bound(&plane, &lines).unwrap();
    assert_eq!((r.contained, r.bound), (4, 4));
    let pair = Surface::new(MultiPoly::parse(&f, "x*y").unwrap()).unwrap();
    let r = kakeya_surface_bound(&pair, &lines).unwrap();
    // x = 0 and y = 0 share the z direction.
    assert_eq!((r.contained, r.bound), (7, 8));
    assert!(r.holds);

    let mut repeated = lines.clone();
    repeated.push(Line3::new(&f, Point3::new(f.one(), f.zero(), f.zero()), [f.zero(), f.zero(), f.one()]).unwrap());
    assert!(matches!(kakeya_surface_bound(&plane, &repeated), Err(Error::Precondition(_))));
}

#[test]
fn heisenberg_hypotheses() {
    let budget = Budget::default();
    for (p, holds) in [(2u32, true), (3, false)] {
        let x = heisenberg(p).unwrap();
        let lines = heisenberg_lines(p).unwrap();
        let n = x.field().q() as u64;
        let c = Candidate::assess(x.clone(), 1, &budget).unwrap();
        assert!(c.verdict.is_flexy_evidence());
        let r = check_theorem_hypotheses(x.field(), &lines, n, &[c]);
        assert!(r.plane.holds);
        let s = &r.surfaces[0];
        assert_eq!(s.contained, (p as usize).pow(4));
        assert_eq!(s.bound, 2 * n * (p as u64 + 1));
        assert_eq!(r.holds(), holds, "p = {p}: {} lines vs {}", s.contained, s.bound);
    }
}

#[test]
fn coplanar_lines_break_the_plane_condition() {
    let f = Field::gf(5, 1).unwrap();
    let n = 2u64;
    let lines: Vec<Line3> = (0..2 * n as u32 + 1)
        .map(|i| Line3::new(&f, Point3::new(f.zero(), elem(&f, i), f.zero()), [f.one(), f.zero(), f.zero()]).unwrap())
        .collect();
    let r = check_theorem_hypotheses(&f, &lines, n, &[]);
    assert!(!r.holds());
    assert_eq!(r.plane.max, 5);
    assert_eq!(r.plane.witness.as_deref(), Some("0,0,1;0"));
    assert!(r.surfaces_unverified);

    let r = check_theorem_hypotheses(&f, &lines[..4], n, &[]);
    assert!(r.holds());
    assert!(r.plane.witness.is_none());
}
