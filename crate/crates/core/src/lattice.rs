//! Integer points: enumeration inside rational polyhedra, the set
//! `S = Q ∩ Z^n`, and planar convex hulls.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dd::GeneratorForm;
use crate::error::{Error, Result};
use crate::linalg::{rank, RatVec};
use crate::polyhedron::HPolyhedron;
use crate::rational::{int, Rat};

pub type LatticePoint = Vec<i64>;

/// Integer bounds `lower <= x <= upper` that finitize every search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SearchBox {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

/// Half-width of the fallback box used when no bounded region is available.
pub const FALLBACK_HALF_WIDTH: i64 = 10;
/// Margin added around a bounded region when deriving a default box.
pub const DEFAULT_MARGIN: i64 = 2;

impl SearchBox {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::InvalidBox(format!(
                "lower bound {} exceeds upper bound {} in coordinate {}",
                lower[i], upper[i], i
            )));
        }
        Ok(SearchBox { lower, upper })
    }

    /// `[-h, h]^n`.
    pub fn symmetric(n: usize, h: i64) -> Self {
        SearchBox {
            lower: vec![-h; n],
            upper: vec![h; n],
        }
    }

    /// Default box for searches tied to `p`: the bounding box of its
    /// vertices widened by [`DEFAULT_MARGIN`] when `p` is bounded and
    /// nonempty, otherwise `[-10, 10]^n` together with a warning.
    pub fn default_for(p: &HPolyhedron) -> (Self, Option<String>) {
        let n = p.dim();
        let g = p.generators();
        if g.empty || !g.is_bounded() {
            return (
                Self::symmetric(n, FALLBACK_HALF_WIDTH),
                Some(format!(
                    "no bounded region available; using [-{h}, {h}]^{n}",
                    h = FALLBACK_HALF_WIDTH
                )),
            );
        }
        let mut lower = vec![i64::MAX; n];
        let mut upper = vec![i64::MIN; n];
        for v in &g.points {
            for i in 0..n {
                let lo = v[i].floor().to_integer().to_i64().unwrap_or(i64::MIN / 4);
                let hi = v[i].ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4);
                lower[i] = lower[i].min(lo);
                upper[i] = upper[i].max(hi);
            }
        }
        for i in 0..n {
            lower[i] -= DEFAULT_MARGIN;
            upper[i] += DEFAULT_MARGIN;
        }
        (SearchBox { lower, upper }, None)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim() && (0..x.len()).all(|i| self.lower[i] <= x[i] && x[i] <= self.upper[i])
    }

    pub fn to_polyhedron(&self) -> HPolyhedron {
        HPolyhedron::cuboid(
            &RatVec::from_ints(&self.lower),
            &RatVec::from_ints(&self.upper),
        )
        .expect("box bounds agree in dimension")
    }

    /// Whether every point of `p` lies within the box (false when `p` is
    /// unbounded).
    pub fn covers(&self, p: &HPolyhedron) -> bool {
        let g = p.generators();
        if g.empty {
            return true;
        }
        if !g.is_bounded() {
            return false;
        }
        let b = self.to_polyhedron();
        g.points.iter().all(|v| b.contains(v).unwrap_or(false))
    }
}

/// `S`: the integer points of the rational polyhedron `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDescription {
    q: HPolyhedron,
}

impl SDescription {
    pub fn new(q: HPolyhedron) -> Self {
        SDescription { q }
    }

    /// `S = Z^n`.
    pub fn all_integers(n: usize) -> Self {
        SDescription {
            q: HPolyhedron::universe(n),
        }
    }

    pub fn q(&self) -> &HPolyhedron {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        s_contains(self, x)
    }

    pub fn points_in(&self, bx: &SearchBox) -> Result<Vec<LatticePoint>> {
        enumerate_integer_points(&self.q, Some(bx))
    }

    pub fn recession_generators(&self) -> GeneratorForm {
        recession_generators_of_s(self)
    }

    /// Looks for `n + 1` affinely independent points of `S` in the box.
    pub fn is_full_dimensional_in(&self, bx: &SearchBox) -> Result<bool> {
        let pts = self.points_in(bx)?;
        let Some(first) = pts.first() else {
            return Ok(false);
        };
        let base = RatVec::from_ints(first);
        let mut dirs: Vec<RatVec> = Vec::new();
        for p in &pts[1..] {
            let d = RatVec::from_ints(p).sub(&base);
            dirs.push(d);
            if rank(&dirs) < dirs.len() {
                dirs.pop();
            }
            if dirs.len() == self.dim() {
                return Ok(true);
            }
        }
        Ok(dirs.len() == self.dim())
    }
}

pub fn s_contains(s: &SDescription, x: &[i64]) -> Result<bool> {
    s.q.contains(&RatVec::from_ints(x))
}

/// Generators of `rec(Q) = {r : A_Q r <= 0}`.
pub fn recession_generators_of_s(s: &SDescription) -> GeneratorForm {
    s.q.recession_cone().generators()
}

/// Eliminate coordinate `j` by Fourier-Motzkin.
fn eliminate(rows: &[(RatVec, Rat)], j: usize) -> Option<Vec<(RatVec, Rat)>> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (a, b) in rows {
        match a[j].cmp(&Rat::zero()) {
            Ordering::Greater => pos.push((a, b)),
            Ordering::Less => neg.push((a, b)),
            Ordering::Equal => out.push((a.clone(), b.clone())),
        }
    }
    for (ap, bp) in &pos {
        for (aq, bq) in &neg {
            let cp = ap[j].clone();
            let cq = -aq[j].clone();
            let a = ap.scale(&cq).add(&aq.scale(&cp));
            let b = (*bp * &cq) + (*bq * &cp);
            out.push((a, b));
        }
    }
    normalize_rows(out)
}

/// Drops trivial rows, detects `0 <= negative`, scales and deduplicates.
fn normalize_rows(rows: Vec<(RatVec, Rat)>) -> Option<Vec<(RatVec, Rat)>> {
    let mut out = Vec::with_capacity(rows.len());
    for (a, b) in rows {
        if a.is_zero() {
            if b.is_negative() {
                return None;
            }
            continue;
        }
        let mut full = a.entries().to_vec();
        full.push(b);
        let prim = RatVec::new(full).primitive();
        let n = prim.dim() - 1;
        let a: RatVec = prim.iter().take(n).cloned().collect();
        out.push((a, prim[n].clone()));
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// All integer points of `p` (within `bx` when given), sorted
/// lexicographically. Coordinates are scanned axis by axis between exact
/// bounds obtained from Fourier-Motzkin projections.
pub fn enumerate_integer_points(
    p: &HPolyhedron,
    bx: Option<&SearchBox>,
) -> Result<Vec<LatticePoint>> {
    let n = p.dim();
    let region = match bx {
        Some(b) => {
            if b.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.dim(),
                });
            }
            p.intersect(&b.to_polyhedron())?
        }
        None => {
            if !p.is_bounded() {
                return Err(Error::UnboundedWithoutBox);
            }
            p.clone()
        }
    };
    let rows: Vec<(RatVec, Rat)> = region.rows().map(|(a, b)| (a.clone(), b.clone())).collect();
    let Some(top) = normalize_rows(rows) else {
        return Ok(Vec::new());
    };
    // systems[k] constrains only x_0..x_{k-1}
    let mut systems: Vec<Vec<(RatVec, Rat)>> = vec![Vec::new(); n + 1];
    systems[n] = top;
    for k in (0..n).rev() {
        match eliminate(&systems[k + 1], k) {
            Some(s) => systems[k] = s,
            None => return Ok(Vec::new()),
        }
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    let mut prefix: Vec<i64> = Vec::with_capacity(n);
    scan(&systems, &mut prefix, n, &mut out)?;
    Ok(out)
}

fn scan(
    systems: &[Vec<(RatVec, Rat)>],
    prefix: &mut Vec<i64>,
    n: usize,
    out: &mut Vec<LatticePoint>,
) -> Result<()> {
    let k = prefix.len();
    if k == n {
        out.push(prefix.clone());
        return Ok(());
    }
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for (a, b) in &systems[k + 1] {
        let mut rhs = b.clone();
        for (i, &x) in prefix.iter().enumerate() {
            rhs -= &a[i] * int(x);
        }
        let c = &a[k];
        if c.is_zero() {
            if rhs.is_negative() {
                return Ok(());
            }
            continue;
        }
        let bound = rhs / c;
        if c.is_positive() {
            let u = bound.floor().to_integer();
            hi = Some(hi.map_or(u.clone(), |h| h.min(u)));
        } else {
            let l = bound.ceil().to_integer();
            lo = Some(lo.map_or(l.clone(), |h| h.max(l)));
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::UnboundedWithoutBox);
    };
    let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
        return Err(Error::Invalid("integer bound out of range".into()));
    };
    for x in lo..=hi {
        prefix.push(x);
        scan(systems, prefix, n, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Planar convex hull as an inequality system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull2d {
    pub polyhedron: HPolyhedron,
    /// Hull vertices in counter-clockwise order starting from the
    /// lexicographically smallest.
    pub vertices: Vec<RatVec>,
    /// 0 for a point, 1 for a segment, 2 otherwise.
    pub dimension: usize,
}

fn cross(o: &RatVec, a: &RatVec, b: &RatVec) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counter-clockwise hull vertices (monotone chain), no collinear points.
pub fn hull_vertices_2d(points: &[RatVec]) -> Vec<RatVec> {
    let mut pts: Vec<RatVec> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<RatVec> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatVec> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn hull_2d(points: &[RatVec]) -> Result<Hull2d> {
    if points.is_empty() {
        return Err(Error::Invalid("convex hull of an empty point set".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let verts = hull_vertices_2d(points);
    let row = |normal: RatVec, through: &RatVec| {
        let normal = normal.primitive();
        let rhs = normal.dot(through);
        (normal, rhs)
    };
    let rows: Vec<(RatVec, Rat)> = match verts.len() {
        1 => {
            let p = &verts[0];
            vec![
                row(RatVec::from_ints(&[1, 0]), p),
                row(RatVec::from_ints(&[-1, 0]), p),
                row(RatVec::from_ints(&[0, 1]), p),
                row(RatVec::from_ints(&[0, -1]), p),
            ]
        }
        2 => {
            let (p, q) = (&verts[0], &verts[1]);
            let d = q.sub(p);
            let normal = RatVec::new(vec![d[1].clone(), -d[0].clone()]);
            vec![
                row(normal.clone(), p),
                row(normal.neg(), p),
                row(d.clone(), q),
                row(d.neg(), p),
            ]
        }
        _ => (0..verts.len())
            .map(|i| {
                let p = &verts[i];
                let q = &verts[(i + 1) % verts.len()];
                let d = q.sub(p);
                row(RatVec::new(vec![d[1].clone(), -d[0].clone()]), p)
            })
            .collect(),
    };
    let dimension = verts.len().min(3) - 1;
    Ok(Hull2d {
        polyhedron: HPolyhedron::from_rows(2, rows)?,
        vertices: verts,
        dimension,
    })
}
