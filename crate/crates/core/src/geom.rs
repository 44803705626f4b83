//! Points, lines and planes of AG(3, q) in canonical form.
//!
//! A line is stored as `base + t dir` with `dir` scaled so its first nonzero
//! coordinate (the pivot) is one and `base` the unique point of the line whose pivot
//! coordinate is zero. Planes `a x + b y + c z = d` are scaled the same way on the
//! normal. Equal sets of points therefore have identical representations.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3([FieldElem; 3]);

impl Point3 {
    pub fn new(x: FieldElem, y: FieldElem, z: FieldElem) -> Self {
        Point3([x, y, z])
    }

    pub fn origin() -> Self {
        Point3::default()
    }

    pub fn from_coords(c: [FieldElem; 3]) -> Self {
        Point3(c)
    }

    pub fn coords(&self) -> [FieldElem; 3] {
        self.0
    }

    pub fn x(&self) -> FieldElem {
        self.0[0]
    }

    pub fn y(&self) -> FieldElem {
        self.0[1]
    }

    pub fn z(&self) -> FieldElem {
        self.0[2]
    }

    /// `x,y,z` as field digit strings.
    pub fn format(&self, field: &Field) -> String {
        format_triple(field, self.0)
    }
}

pub(crate) fn format_triple(field: &Field, t: [FieldElem; 3]) -> String {
    t.iter().map(|&c| field.format_elem(c)).collect::<Vec<_>>().join(",")
}

/// All `q^3` points in lexicographic order.
pub fn all_points(field: &Field) -> impl Iterator<Item = Point3> + '_ {
    field.elements().flat_map(move |x| {
        field.elements().flat_map(move |y| field.elements().map(move |z| Point3::new(x, y, z)))
    })
}

/// Nonzero triples whose first nonzero entry is one: the `q^2 + q + 1` points of PG(2, q).
pub fn normalized_triples(field: &Field) -> impl Iterator<Item = [FieldElem; 3]> + '_ {
    let (zero, one) = (FieldElem::ZERO, FieldElem::ONE);
    let lead_x = field.elements().flat_map(move |b| field.elements().map(move |c| [one, b, c]));
    let lead_y = field.elements().map(move |c| [zero, one, c]);
    lead_x.chain(lead_y).chain(std::iter::once([zero, zero, one]))
}

fn normalize(field: &Field, v: [FieldElem; 3]) -> Option<(usize, FieldElem, [FieldElem; 3])> {
    let piv = v.iter().position(|c| !c.is_zero())?;
    let inv = field.inv(v[piv]).expect("pivot is nonzero");
    Some((piv, inv, v.map(|c| field.mul(c, inv))))
}

fn dot(field: &Field, a: [FieldElem; 3], b: [FieldElem; 3]) -> FieldElem {
    (0..3).fold(FieldElem::ZERO, |acc, i| field.add(acc, field.mul(a[i], b[i])))
}

/// A projective direction, i.e. the point where a line meets the plane at infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectionPt([FieldElem; 3]);

impl DirectionPt {
    pub fn coords(&self) -> [FieldElem; 3] {
        self.0
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line3 {
    base: Point3,
    dir: [FieldElem; 3],
}

impl Line3 {
    /// The line `base + t dir`, canonicalized.
    pub fn new(field: &Field, base: Point3, dir: [FieldElem; 3]) -> Result<Self> {
        let (piv, _, dir) = normalize(field, dir).ok_or_else(|| Error::InvalidArgument("zero direction".into()))?;
        let shift = base.0[piv];
        let base = Point3(std::array::from_fn(|i| field.sub(base.0[i], field.mul(shift, dir[i]))));
        Ok(Line3 { base, dir })
    }

    pub fn through(field: &Field, p: Point3, r: Point3) -> Result<Self> {
        if p == r {
            return Err(Error::InvalidArgument("a line needs two distinct points".into()));
        }
        let dir = std::array::from_fn(|i| field.sub(r.0[i], p.0[i]));
        Line3::new(field, p, dir)
    }

    pub fn base(&self) -> Point3 {
        self.base
    }

    pub fn dir(&self) -> [FieldElem; 3] {
        self.dir
    }

    pub fn direction(&self) -> DirectionPt {
        DirectionPt(self.dir)
    }

    pub fn point_at(&self, field: &Field, t: FieldElem) -> Point3 {
        Point3(std::array::from_fn(|i| field.add(self.base.0[i], field.mul(t, self.dir[i]))))
    }

    /// The `q` points of the line, ordered by parameter.
    pub fn points(&self, field: &Field) -> Vec<Point3> {
        field.elements().map(|t| self.point_at(field, t)).collect()
    }

    pub fn contains(&self, field: &Field, pt: &Point3) -> bool {
        let piv = self.dir.iter().position(|c| !c.is_zero()).expect("canonical direction");
        // dir[piv] = 1 and base[piv] = 0, so the parameter is the pivot coordinate.
        self.point_at(field, pt.0[piv]) == *pt
    }

    /// Whether the line meets the plane `z = 0` in exactly one point.
    pub fn is_transverse_to_xy(&self) -> bool {
        !self.dir[2].is_zero()
    }

    /// `bx,by,bz;dx,dy,dz`.
    pub fn format(&self, field: &Field) -> String {
        format!("{};{}", self.base.format(field), format_triple(field, self.dir))
    }
}

/// All `q^2 (q^2 + q + 1)` lines.
pub fn all_lines(field: &Field) -> impl Iterator<Item = Line3> + '_ {
    normalized_triples(field).flat_map(move |dir| {
        let piv = dir.iter().position(|c| !c.is_zero()).expect("normalized");
        let free: Vec<usize> = (0..3).filter(|&i| i != piv).collect();
        field.elements().flat_map(move |a| {
            let free = free.clone();
            field.elements().map(move |b| {
                let mut base = [FieldElem::ZERO; 3];
                base[free[0]] = a;
                base[free[1]] = b;
                Line3 { base: Point3(base), dir }
            })
        })
    })
}

pub fn num_lines(q: u64) -> u64 {
    q * q * (q * q + q + 1)
}

/// The plane `normal . (x, y, z) = offset`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneAff {
    normal: [FieldElem; 3],
    offset: FieldElem,
}

impl PlaneAff {
    pub fn new(field: &Field, normal: [FieldElem; 3], offset: FieldElem) -> Result<Self> {
        let (_, inv, normal) = normalize(field, normal).ok_or_else(|| Error::InvalidArgument("zero normal".into()))?;
        Ok(PlaneAff { normal, offset: field.mul(offset, inv) })
    }

    pub fn normal(&self) -> [FieldElem; 3] {
        self.normal
    }

    pub fn offset(&self) -> FieldElem {
        self.offset
    }

    pub fn contains(&self, field: &Field, pt: &Point3) -> bool {
        dot(field, self.normal, pt.0) == self.offset
    }

    pub fn contains_line(&self, field: &Field, line: &Line3) -> bool {
        dot(field, self.normal, line.dir).is_zero() && self.contains(field, &line.base)
    }

    /// `a,b,c;d` for `a x + b y + c z = d`.
    pub fn format(&self, field: &Field) -> String {
        format!("{};{}", format_triple(field, self.normal), field.format_elem(self.offset))
    }
}

/// All `q (q^2 + q + 1)` planes.
pub fn all_planes(field: &Field) -> impl Iterator<Item = PlaneAff> + '_ {
    normalized_triples(field).flat_map(move |normal| field.elements().map(move |offset| PlaneAff { normal, offset }))
}

/// The `q + 1` planes containing a line.
pub fn planes_through(field: &Field, line: &Line3) -> Vec<PlaneAff> {
    normalized_triples(field)
        .filter(|&n| dot(field, n, line.dir).is_zero())
        .map(|normal| PlaneAff { normal, offset: dot(field, normal, line.base.0) })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCount {
    pub count: usize,
    /// Smallest plane (in canonical order) attaining `count`; `None` when no line is given.
    pub witness: Option<PlaneAff>,
}

/// The largest number of the given lines lying in one plane.
pub fn max_lines_per_plane(field: &Field, lines: &[Line3]) -> PlaneCount {
    let distinct: BTreeSet<&Line3> = lines.iter().collect();
    let mut counts: HashMap<PlaneAff, usize> = HashMap::new();
    for line in distinct {
        for plane in planes_through(field, line) {
            *counts.entry(plane).or_default() += 1;
        }
    }
    let best = counts.into_iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
    match best {
        Some((plane, count)) => PlaneCount { count, witness: Some(plane) },
        None => PlaneCount { count: 0, witness: None },
    }
}

pub fn line_in_plane(field: &Field, line: &Line3, plane: &PlaneAff) -> bool {
    plane.contains_line(field, line)
}

/// All directions pairwise distinct.
pub fn kakeya_check(lines: &[Line3]) -> bool {
    let mut seen = HashSet::new();
    lines.iter().all(|l| seen.insert(l.direction()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WolffVerdict {
    pub holds: bool,
    pub max: usize,
    pub bound: usize,
    /// A plane holding more than `bound` lines, when the check fails.
    pub violating_plane: Option<PlaneAff>,
}

/// At most `bound` of the lines in any plane.
pub fn wolff_check(field: &Field, lines: &[Line3], bound: usize) -> WolffVerdict {
    let pc = max_lines_per_plane(field, lines);
    let holds = pc.count <= bound;
    WolffVerdict { holds, max: pc.count, bound, violating_plane: if holds { None } else { pc.witness } }
}

pub fn union_points(field: &Field, lines: &[Line3]) -> BTreeSet<Point3> {
    lines.iter().flat_map(|l| l.points(field)).collect()
}

/// Number of pairs `(p, l)` with `p` in `points`, `l` in `lines` and `p` on `l`.
pub fn incidence_count(field: &Field, points: &HashSet<Point3>, lines: &[Line3]) -> usize {
    lines.iter().map(|l| l.points(field).iter().filter(|p| points.contains(p)).count()).sum()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IncidenceStats {
    pub points: usize,
    pub lines: usize,
    pub incidences: usize,
    pub max_lines_per_plane: usize,
    pub directions: usize,
    pub union: usize,
}

impl IncidenceStats {
    pub fn compute(field: &Field, points: &[Point3], lines: &[Line3]) -> Self {
        let set: HashSet<Point3> = points.iter().copied().collect();
        let directions: HashSet<DirectionPt> = lines.iter().map(|l| l.direction()).collect();
        IncidenceStats {
            points: set.len(),
            lines: lines.len(),
            incidences: incidence_count(field, &set, lines),
            max_lines_per_plane: max_lines_per_plane(field, lines).count,
            directions: directions.len(),
            union: union_points(field, lines).len(),
        }
    }
}
