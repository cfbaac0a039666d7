//! Double description: conversion between inequality and generator
//! representations of polyhedra.
//!
//! The workhorse is [`cone_generators`], the incremental double description
//! method for a cone `{y : a y <= 0}`. Rows are inserted in input order;
//! adjacency of rays is decided by the rank of their common tight rows, which
//! is exact for extreme rays. Polyhedra are handled through the usual
//! homogenization `(x, t)` with `t >= 0`.

use num_traits::{Signed, Zero};

use crate::linalg::{rank, row_space_basis, solve_linear, RatMat, RatVec};
use crate::polyhedron::HPolyhedron;
use crate::rational::Rat;

/// Generators of a polyhedron `conv(points) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorForm {
    pub dim: usize,
    /// Representatives of the minimal nonempty faces. When the lineality
    /// space is trivial these are exactly the vertices.
    pub points: Vec<RatVec>,
    pub rays: Vec<RatVec>,
    pub lineality: Vec<RatVec>,
    /// Set when the source system is infeasible.
    pub empty: bool,
}

impl GeneratorForm {
    /// Extreme points; empty whenever the polyhedron contains a line.
    pub fn vertices(&self) -> &[RatVec] {
        if self.lineality.is_empty() {
            &self.points
        } else {
            &[]
        }
    }

    /// Rays together with both signs of every lineality vector, i.e. a set
    /// of conic generators of the recession cone.
    pub fn conic_generators(&self) -> Vec<RatVec> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.neg());
        }
        out
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Affine dimension, `None` when empty.
    pub fn affine_dimension(&self) -> Option<usize> {
        if self.empty {
            return None;
        }
        let p0 = &self.points[0];
        let mut dirs: Vec<RatVec> = self.points[1..].iter().map(|p| p.sub(p0)).collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lineality.iter().cloned());
        Some(if dirs.is_empty() { 0 } else { rank(&dirs) })
    }
}

/// Orthogonal projection onto the complement of `span(basis)`.
fn project_out(v: &RatVec, basis: &[RatVec]) -> RatVec {
    if basis.is_empty() {
        return v.clone();
    }
    let k = basis.len();
    let gram = RatMat::new(
        k,
        basis
            .iter()
            .map(|b| basis.iter().map(|c| b.dot(c)).collect())
            .collect(),
    )
    .expect("square gram matrix");
    let rhs: RatVec = basis.iter().map(|b| b.dot(v)).collect();
    let coef = solve_linear(&gram, &rhs)
        .expect("dimensions agree")
        .solution
        .expect("basis is independent");
    basis
        .iter()
        .zip(coef.iter())
        .fold(v.clone(), |acc, (b, c)| acc.sub(&b.scale(c)))
}

/// Lineality basis and extreme rays of `{y in R^d : a y <= 0 for a in rows}`.
///
/// The lineality basis is in reduced echelon form; rays are primitive
/// integer vectors orthogonal to the lineality space, sorted
/// lexicographically.
pub fn cone_generators(rows: &[RatVec], d: usize) -> (Vec<RatVec>, Vec<RatVec>) {
    let mut lin: Vec<RatVec> = (0..d).map(|i| RatVec::unit(d, i)).collect();
    let mut rays: Vec<RatVec> = Vec::new();
    let mut processed: Vec<&RatVec> = Vec::new();

    for a in rows {
        assert_eq!(a.dim(), d, "cone row dimension");
        if a.is_zero() {
            continue;
        }
        if let Some(k) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let l = lin.remove(k);
            let al = a.dot(&l);
            let reduce = |m: &RatVec| m.sub(&l.scale(&(a.dot(m) / &al))).primitive();
            lin = lin.iter().map(reduce).collect();
            rays = rays.iter().map(reduce).collect();
            rays.push(if al.is_negative() { l.primitive() } else { l.neg().primitive() });
        } else {
            let values: Vec<Rat> = rays.iter().map(|r| a.dot(r)).collect();
            let target = d as i64 - lin.len() as i64 - 2;
            let mut next: Vec<RatVec> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_positive() {
                    next.push(r.clone());
                }
            }
            for (i, p) in rays.iter().enumerate() {
                if !values[i].is_positive() {
                    continue;
                }
                for (j, q) in rays.iter().enumerate() {
                    if !values[j].is_negative() {
                        continue;
                    }
                    let common: Vec<RatVec> = processed
                        .iter()
                        .filter(|row| row.dot(p).is_zero() && row.dot(q).is_zero())
                        .map(|row| (*row).clone())
                        .collect();
                    if rank(&common) as i64 != target {
                        continue;
                    }
                    let combo = q.scale(&values[i]).sub(&p.scale(&values[j]));
                    next.push(combo.primitive());
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(a);
    }

    let lineality = row_space_basis(&lin, d);
    let mut rays: Vec<RatVec> = rays
        .iter()
        .map(|r| project_out(r, &lineality).primitive())
        .filter(|r| !r.is_zero())
        .collect();
    rays.sort();
    rays.dedup();
    (lineality, rays)
}

/// Generator form of `{x : A x <= b}`.
pub fn double_description(p: &HPolyhedron) -> GeneratorForm {
    let n = p.dim();
    let mut rows = Vec::with_capacity(p.nrows() + 1);
    let mut t_row = RatVec::zeros(n + 1).into_inner();
    t_row[n] = -Rat::from_integer(1.into());
    rows.push(RatVec::new(t_row));
    for (a, b) in p.rows() {
        let mut r = a.entries().to_vec();
        r.push(-b.clone());
        rows.push(RatVec::new(r));
    }
    let (lin, gens) = cone_generators(&rows, n + 1);

    let lineality: Vec<RatVec> = lin
        .iter()
        .map(|l| l.iter().take(n).cloned().collect::<RatVec>())
        .collect();
    let lineality = row_space_basis(&lineality, n);
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for g in gens {
        let t = g[n].clone();
        let x: RatVec = g.iter().take(n).cloned().collect();
        if t.is_zero() {
            rays.push(project_out(&x, &lineality).primitive());
        } else {
            points.push(project_out(&x.scale(&t.recip()), &lineality));
        }
    }
    points.sort();
    points.dedup();
    rays.retain(|r| !r.is_zero());
    rays.sort();
    rays.dedup();
    let empty = points.is_empty();
    if empty {
        return GeneratorForm {
            dim: n,
            points,
            rays: Vec::new(),
            lineality: Vec::new(),
            empty,
        };
    }
    GeneratorForm {
        dim: n,
        points,
        rays,
        lineality,
        empty,
    }
}

/// Inequality description of the set spanned by a generator form.
///
/// Computed as the double description of the cone of valid inequalities
/// `(c, e)` with `c p <= e`, `c r <= 0` and `c l = 0`. Implicit equations
/// appear as pairs of opposite inequalities.
pub fn inequalities_of(g: &GeneratorForm) -> HPolyhedron {
    let n = g.dim;
    if g.empty {
        return HPolyhedron::new(
            RatMat::new(n, vec![RatVec::zeros(n)]).expect("row dimension"),
            RatVec::new(vec![-Rat::from_integer(1.into())]),
        )
        .expect("consistent");
    }
    let lift = |v: &RatVec, last: Rat| {
        let mut r = v.entries().to_vec();
        r.push(last);
        RatVec::new(r)
    };
    let one = Rat::from_integer(1.into());
    let mut rows = Vec::new();
    for p in &g.points {
        rows.push(lift(p, -one.clone()));
    }
    for r in &g.rays {
        rows.push(lift(r, Rat::zero()));
    }
    for l in &g.lineality {
        rows.push(lift(l, Rat::zero()));
        rows.push(lift(&l.neg(), Rat::zero()));
    }
    let (lin, rays) = cone_generators(&rows, n + 1);
    let mut out: Vec<(RatVec, Rat)> = Vec::new();
    let split = |v: &RatVec| -> (RatVec, Rat) {
        (v.iter().take(n).cloned().collect(), v[n].clone())
    };
    for r in &rays {
        let (c, e) = split(r);
        if !c.is_zero() {
            out.push((c, e));
        }
    }
    for l in &lin {
        let (c, e) = split(l);
        if !c.is_zero() {
            out.push((c.neg(), -e.clone()));
            out.push((c, e));
        }
    }
    out.sort();
    out.dedup();
    let (a, b): (Vec<RatVec>, Vec<Rat>) = out.into_iter().unzip();
    HPolyhedron::new(RatMat::new(n, a).expect("row dimension"), RatVec::new(b))
        .expect("consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::Membership;
    use crate::rational::rat;

    fn hp(rows: &[&[i64]], b: &[i64]) -> HPolyhedron {
        HPolyhedron::new(
            RatMat::from_ints(rows[0].len(), rows).unwrap(),
            RatVec::from_ints(b),
        )
        .unwrap()
    }

    #[test]
    fn halfplane() {
        let g = double_description(&hp(&[&[-1, 0]], &[0]));
        assert_eq!(g.lineality, vec![RatVec::from_ints(&[0, 1])]);
        assert_eq!(g.rays, vec![RatVec::from_ints(&[1, 0])]);
        assert!(g.vertices().is_empty());
        assert_eq!(g.points, vec![RatVec::from_ints(&[0, 0])]);
        assert!(!g.empty);
    }

    #[test]
    fn unit_box() {
        let g = double_description(&hp(
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[1, 0, 1, 0],
        ));
        let expect: Vec<RatVec> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|p| RatVec::from_ints(p))
            .collect();
        assert_eq!(g.vertices(), expect.as_slice());
        assert!(g.is_bounded());
    }

    #[test]
    fn example_wedge() {
        // 4(x1 - 1/4) + 4(x2 - 1/2) <= 1 and 4(x1 - 1/4) - 4(x2 - 1/2) <= 1
        let g = double_description(&hp(&[&[4, 4], &[4, -4]], &[4, 0]));
        assert_eq!(g.vertices(), &[RatVec::new(vec![rat(1, 2), rat(1, 2)])]);
        assert_eq!(
            g.rays,
            vec![RatVec::from_ints(&[-1, -1]), RatVec::from_ints(&[-1, 1])]
        );
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn infeasible_is_flagged() {
        let g = double_description(&hp(&[&[1, 0], &[-1, 0]], &[0, -1]));
        assert!(g.empty);
        assert!(g.points.is_empty() && g.rays.is_empty());
    }

    #[test]
    fn whole_space() {
        let p = HPolyhedron::universe(2);
        let g = double_description(&p);
        assert_eq!(g.lineality.len(), 2);
        assert_eq!(g.affine_dimension(), Some(2));
    }

    #[test]
    fn cube_has_eight_vertices() {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut b = Vec::new();
        for i in 0..3 {
            let mut up = vec![0; 3];
            up[i] = 1;
            let mut lo = vec![0; 3];
            lo[i] = -1;
            rows.push(up);
            rows.push(lo);
            b.push(1);
            b.push(1);
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let g = double_description(&hp(&refs, &b));
        assert_eq!(g.vertices().len(), 8);
        assert_eq!(g.affine_dimension(), Some(3));
    }

    #[test]
    fn octahedron_round_trip() {
        // |x| + |y| + |z| <= 1 has 8 facets and 6 vertices; checks degenerate
        // adjacency.
        let mut rows = Vec::new();
        for s in 0..8 {
            let sign = |bit: i64| if s >> bit & 1 == 1 { -1 } else { 1 };
            rows.push(vec![sign(0), sign(1), sign(2)]);
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let p = hp(&refs, &[1; 8]);
        let g = double_description(&p);
        assert_eq!(g.vertices().len(), 6);
        let back = inequalities_of(&g);
        assert_eq!(back.nrows(), 8);
        for v in g.vertices() {
            assert_ne!(back.membership(v).unwrap(), Membership::Outside);
        }
    }

    #[test]
    fn inequalities_of_segment_has_equations() {
        let g = GeneratorForm {
            dim: 2,
            points: vec![RatVec::from_ints(&[0, 0]), RatVec::from_ints(&[2, 2])],
            rays: vec![],
            lineality: vec![],
            empty: false,
        };
        let h = inequalities_of(&g);
        assert_eq!(h.nrows(), 4);
        assert_eq!(
            h.membership(&RatVec::from_ints(&[1, 1])).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            h.membership(&RatVec::from_ints(&[1, 0])).unwrap(),
            Membership::Outside
        );
    }
}
