use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::RatVec;
use crate::polyhedron::HPolyhedron;
use crate::rational::Rat;

/// A polyhedron anchored at an interior point `f`, written
/// `{x : a_i (x - f) <= 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFreeBody {
    f: RatVec,
    rows: Vec<RatVec>,
}

impl SFreeBody {
    /// Identical rows are merged, keeping the first occurrence.
    pub fn new(f: RatVec, rows: Vec<RatVec>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyRowList);
        }
        let n = f.dim();
        if let Some(r) = rows.iter().find(|r| r.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.dim(),
            });
        }
        let mut uniq: Vec<RatVec> = Vec::with_capacity(rows.len());
        for r in rows {
            if !uniq.contains(&r) {
                uniq.push(r);
            }
        }
        Ok(SFreeBody { f, rows: uniq })
    }

    /// Canonical form of `{x : A x <= b}` around `f`; every row must be
    /// strictly satisfied at `f`.
    pub fn from_polyhedron(f: RatVec, p: &HPolyhedron) -> Result<Self> {
        if p.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found: f.dim(),
            });
        }
        let mut rows = Vec::with_capacity(p.nrows());
        for (a, b) in p.rows() {
            let slack = b - a.dot(&f);
            if !slack.is_positive() {
                return Err(Error::AnchorNotInterior);
            }
            rows.push(a.scale(&slack.recip()));
        }
        Self::new(f, rows)
    }

    pub fn f(&self) -> &RatVec {
        &self.f
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// `a_i x <= 1 + a_i f`.
    pub fn to_polyhedron(&self) -> HPolyhedron {
        let rows = self
            .rows
            .iter()
            .map(|a| (a.clone(), Rat::one() + a.dot(&self.f)))
            .collect();
        HPolyhedron::from_rows(self.dim(), rows).expect("rows share the anchor dimension")
    }

    /// `max_i a_i (x - f)`.
    pub fn gauge_at(&self, x: &RatVec) -> Rat {
        let v = x.sub(&self.f);
        self.rows
            .iter()
            .map(|a| a.dot(&v))
            .max()
            .expect("at least one row")
    }

    pub fn with_rows(&self, rows: Vec<RatVec>) -> Result<Self> {
        Self::new(self.f.clone(), rows)
    }
}

/// An anchor-free half-space `normal · x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: RatVec,
    pub rhs: Rat,
}

impl HalfSpace {
    pub fn new(normal: RatVec, rhs: Rat) -> Self {
        HalfSpace { normal, rhs }
    }

    pub fn to_polyhedron(&self) -> Result<HPolyhedron> {
        if self.normal.is_zero() {
            return Err(Error::DegenerateRow { row: 0 });
        }
        HPolyhedron::from_rows(
            self.normal.dim(),
            vec![(self.normal.clone(), self.rhs.clone())],
        )
    }
}
