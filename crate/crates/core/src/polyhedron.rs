//! Inequality-described polyhedra `{x : A x <= b}`.

use num_traits::{Signed, Zero};

use crate::dd::{double_description, GeneratorForm};
use crate::error::{Error, Result};
use crate::linalg::{RatMat, RatVec};
use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// `{x in R^n : A x <= b}`. Rows are kept exactly as given; redundant rows
/// are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    a: RatMat,
    b: RatVec,
}

impl HPolyhedron {
    pub fn new(a: RatMat, b: RatVec) -> Result<Self> {
        if a.nrows() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: b.dim(),
            });
        }
        Ok(HPolyhedron { a, b })
    }

    pub fn from_rows(n: usize, rows: Vec<(RatVec, Rat)>) -> Result<Self> {
        let (a, b): (Vec<RatVec>, Vec<Rat>) = rows.into_iter().unzip();
        Self::new(RatMat::new(n, a)?, RatVec::new(b))
    }

    /// All of `R^n` (no rows).
    pub fn universe(n: usize) -> Self {
        HPolyhedron {
            a: RatMat::empty(n),
            b: RatVec::new(Vec::new()),
        }
    }

    /// Axis-aligned box `lower <= x <= upper`.
    pub fn cuboid(lower: &RatVec, upper: &RatVec) -> Result<Self> {
        let n = lower.dim();
        if upper.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: upper.dim(),
            });
        }
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            rows.push((RatVec::unit(n, i), upper[i].clone()));
            rows.push((RatVec::unit(n, i).neg(), -lower[i].clone()));
        }
        Self::from_rows(n, rows)
    }

    pub fn dim(&self) -> usize {
        self.a.ncols()
    }

    pub fn nrows(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &RatMat {
        &self.a
    }

    pub fn b(&self) -> &RatVec {
        &self.b
    }

    pub fn row(&self, i: usize) -> (&RatVec, &Rat) {
        (self.a.row(i), &self.b[i])
    }

    pub fn rows(&self) -> impl Iterator<Item = (&RatVec, &Rat)> + '_ {
        self.a.rows().iter().zip(self.b.iter())
    }

    fn check_dim(&self, x: &RatVec) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Per-row slack `b_i - a_i x`.
    pub fn slacks(&self, x: &RatVec) -> Result<Vec<Rat>> {
        self.check_dim(x)?;
        Ok(self.rows().map(|(a, b)| b - a.dot(x)).collect())
    }

    pub fn membership(&self, x: &RatVec) -> Result<Membership> {
        let slacks = self.slacks(x)?;
        if slacks.iter().any(Signed::is_negative) {
            Ok(Membership::Outside)
        } else if slacks.iter().any(Zero::is_zero) {
            Ok(Membership::Boundary)
        } else {
            Ok(Membership::Interior)
        }
    }

    pub fn contains(&self, x: &RatVec) -> Result<bool> {
        Ok(self.membership(x)? != Membership::Outside)
    }

    /// Intersection: rows of `self` followed by rows of `other`.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let rows = self
            .rows()
            .chain(other.rows())
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        Self::from_rows(self.dim(), rows)
    }

    pub fn with_row(&self, a: RatVec, b: Rat) -> Result<HPolyhedron> {
        let mut rows: Vec<(RatVec, Rat)> =
            self.rows().map(|(a, b)| (a.clone(), b.clone())).collect();
        rows.push((a, b));
        Self::from_rows(self.dim(), rows)
    }

    pub fn without_row(&self, i: usize) -> HPolyhedron {
        let rows = self
            .rows()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (a, b))| (a.clone(), b.clone()))
            .collect();
        Self::from_rows(self.dim(), rows).expect("same dimension")
    }

    /// The face where row `i` holds with equality.
    pub fn face(&self, i: usize) -> Result<HPolyhedron> {
        if i >= self.nrows() {
            return Err(Error::RowOutOfRange {
                row: i,
                rows: self.nrows(),
            });
        }
        let (a, b) = self.row(i);
        self.with_row(a.neg(), -b.clone())
    }

    /// The recession cone `{r : A r <= 0}`.
    pub fn recession_cone(&self) -> HPolyhedron {
        HPolyhedron {
            a: self.a.clone(),
            b: RatVec::zeros(self.nrows()),
        }
    }

    pub fn generators(&self) -> GeneratorForm {
        double_description(self)
    }

    pub fn is_empty(&self) -> bool {
        self.generators().empty
    }

    /// True iff the recession cone is `{0}`. The empty polyhedron counts as
    /// bounded.
    pub fn is_bounded(&self) -> bool {
        let g = self.generators();
        g.empty || g.is_bounded()
    }

    pub fn affine_dimension(&self) -> Option<usize> {
        self.generators().affine_dimension()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension() == Some(self.dim())
    }

    /// Whether row `i` defines a facet, i.e. its face has dimension one less
    /// than the polyhedron.
    pub fn is_facet(&self, i: usize) -> Result<bool> {
        let face = self.face(i)?;
        let (Some(df), Some(dp)) = (face.affine_dimension(), self.affine_dimension()) else {
            return Ok(false);
        };
        Ok(df + 1 == dp)
    }

    /// Indices of rows that are tight on the whole face of row `i`.
    pub fn implied_equal_on_face(&self, i: usize) -> Result<Vec<usize>> {
        let g = self.face(i)?.generators();
        Ok(self
            .rows()
            .enumerate()
            .filter(|(_, (a, b))| {
                g.points.iter().all(|p| &a.dot(p) == *b)
                    && g.rays.iter().all(|r| a.dot(r).is_zero())
                    && g.lineality.iter().all(|l| a.dot(l).is_zero())
            })
            .map(|(j, _)| j)
            .collect())
    }

    /// Relative-interior test on the facet defined by row `i`: `x` must be
    /// tight on that row and strictly feasible for every row not implied
    /// equal on the facet.
    pub fn facet_rel_interior_test(&self, i: usize, x: &RatVec) -> Result<bool> {
        self.check_dim(x)?;
        if !self.is_facet(i)? {
            return Err(Error::NotAFacet { row: i });
        }
        let equal = self.implied_equal_on_face(i)?;
        let slacks = self.slacks(x)?;
        Ok(slacks.iter().enumerate().all(|(j, s)| {
            if equal.contains(&j) {
                s.is_zero()
            } else {
                s.is_positive()
            }
        }))
    }

    /// Rows whose removal does not change a full-dimensional polyhedron.
    pub fn redundant_rows(&self) -> Vec<usize> {
        (0..self.nrows())
            .filter(|&i| !self.is_facet(i).unwrap_or(false))
            .collect()
    }
}
