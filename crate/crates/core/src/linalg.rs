//! Dense exact vectors and matrices plus the elimination routines built on them.

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, fmt_rat, int, Rat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rat> {
        self.0
    }

    fn check(&self, other: &RatVec) {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        self.check(other);
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        self.check(other);
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        self.check(other);
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    /// `lambda * self + (1 - lambda) * other`
    pub fn lerp(&self, other: &RatVec, lambda: &Rat) -> RatVec {
        let mu = Rat::one() - lambda;
        self.scale(lambda).add(&other.scale(&mu))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.denom().is_one())
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    /// Positive multiple with coprime integer entries. The zero vector is
    /// returned unchanged.
    pub fn primitive(&self) -> RatVec {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(&self.0);
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        RatVec(ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect())
    }

    /// Integer entries, if every entry is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                if x.denom().is_one() {
                    i64::try_from(x.numer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl Deref for RatVec {
    type Target = [Rat];
    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(v: Vec<Rat>) -> Self {
        RatVec(v)
    }
}

impl FromIterator<Rat> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RatVec(iter.into_iter().collect())
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rat(x))?;
        }
        write!(f, ")")
    }
}

/// Row-major matrix with an explicit column count, so that a matrix with
/// zero rows still knows its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    rows: Vec<RatVec>,
    ncols: usize,
}

impl RatMat {
    pub fn new(ncols: usize, rows: Vec<RatVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.dim(),
            });
        }
        Ok(RatMat { rows, ncols })
    }

    pub fn empty(ncols: usize) -> Self {
        RatMat {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        RatMat {
            rows: (0..n).map(|i| RatVec::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn from_ints(ncols: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(ncols, rows.iter().map(|r| RatVec::from_ints(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RatVec {
        &self.rows[i]
    }

    pub fn mul_vec(&self, v: &RatVec) -> Result<RatVec> {
        if v.dim() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.dim(),
            });
        }
        Ok(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    pub fn transpose(&self) -> RatMat {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        RatMat {
            rows,
            ncols: self.rows.len(),
        }
    }
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolve {
    /// A solution with free variables set to zero, or `None` when the
    /// system is inconsistent.
    pub solution: Option<RatVec>,
    pub rank: usize,
}

/// Reduced row echelon form of `[M | v]` restricted to the first `ncols`
/// pivot columns. Returns the reduced rows and pivot columns.
fn rref(mut rows: Vec<Vec<Rat>>, ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let t = &rows[r][j] * &k;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Exact solution of `M x = v` by Gauss-Jordan elimination.
pub fn solve_linear(m: &RatMat, v: &RatVec) -> Result<LinearSolve> {
    if v.dim() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: v.dim(),
        });
    }
    let n = m.ncols();
    let aug: Vec<Vec<Rat>> = m
        .rows()
        .iter()
        .zip(v.iter())
        .map(|(row, b)| {
            let mut r = row.entries().to_vec();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug, n);
    let rank = pivots.len();
    let inconsistent = red[rank..].iter().any(|r| !r[n].is_zero());
    if inconsistent {
        return Ok(LinearSolve {
            solution: None,
            rank,
        });
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = red[i][n].clone();
    }
    Ok(LinearSolve {
        solution: Some(RatVec(x)),
        rank,
    })
}

pub fn rank(vectors: &[RatVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let n = first.dim();
    let rows = vectors.iter().map(|v| v.entries().to_vec()).collect();
    rref(rows, n).1.len()
}

/// Canonical basis of the row space: reduced echelon rows scaled to
/// primitive integer vectors.
pub fn row_space_basis(vectors: &[RatVec], n: usize) -> Vec<RatVec> {
    let rows = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let (red, pivots) = rref(rows, n);
    red.into_iter()
        .take(pivots.len())
        .map(|r| RatVec(r).primitive())
        .collect()
}

/// Basis of `{x : v x = 0 for all v in vectors}` in dimension `n`.
pub fn nullspace(vectors: &[RatVec], n: usize) -> Vec<RatVec> {
    let rows = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let (red, pivots) = rref(rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![Rat::zero(); n];
            x[fc] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -red[i][fc].clone();
            }
            RatVec(x).primitive()
        })
        .collect()
}

/// Affine dimension of a point set; `None` for the empty set.
pub fn affine_dimension(points: &[RatVec]) -> Option<usize> {
    let (p0, rest) = points.split_first()?;
    let diffs: Vec<RatVec> = rest.iter().map(|p| p.sub(p0)).collect();
    Some(rank(&diffs))
}

/// Convex weights expressing `y` as a combination of `points`, if `y` lies
/// in their convex hull. Searches affinely independent subsets of size at
/// most `n + 1` (Caratheodory), so the answer is exact and complete.
pub fn convex_weights(points: &[RatVec], y: &RatVec) -> Option<Vec<Rat>> {
    let n = y.dim();
    let k = points.len();
    let max_size = (n + 1).min(k);
    for size in 1..=max_size {
        for subset in Subsets::new(k, size) {
            let cols: Vec<RatVec> = subset
                .iter()
                .map(|&j| {
                    let mut c = points[j].entries().to_vec();
                    c.push(Rat::one());
                    RatVec(c)
                })
                .collect();
            if rank(&cols) < size {
                continue;
            }
            let m = RatMat {
                rows: cols,
                ncols: n + 1,
            }
            .transpose();
            let mut rhs = y.entries().to_vec();
            rhs.push(Rat::one());
            let sol = solve_linear(&m, &RatVec(rhs)).expect("dimensions agree");
            if let Some(w) = sol.solution {
                if w.iter().all(|x| !x.is_negative()) {
                    let mut weights = vec![Rat::zero(); k];
                    for (&j, wj) in subset.iter().zip(w.iter()) {
                        weights[j] = wj.clone();
                    }
                    return Some(weights);
                }
            }
        }
    }
    None
}

/// Lexicographic enumeration of `size`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, size: usize) -> Self {
        let current = (size <= n).then(|| (0..size).collect());
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let out = cur.clone();
        let k = cur.len();
        let mut next = cur;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Vectors with integer entries, used for lattice points.
pub fn int_vec(p: &[i64]) -> RatVec {
    RatVec::from_ints(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(xs: &[(i64, i64)]) -> RatVec {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn solve_identity() {
        let m = RatMat::identity(2);
        let s = solve_linear(&m, &v(&[(1, 4), (1, 2)])).unwrap();
        assert_eq!(s.solution, Some(v(&[(1, 4), (1, 2)])));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn solve_symmetric() {
        let m = RatMat::from_ints(2, &[&[1, 1], &[1, -1]]).unwrap();
        let s = solve_linear(&m, &RatVec::from_ints(&[1, 0])).unwrap();
        assert_eq!(s.solution, Some(v(&[(1, 2), (1, 2)])));
    }

    #[test]
    fn solve_inconsistent() {
        let m = RatMat::from_ints(2, &[&[1, 1], &[2, 2]]).unwrap();
        let s = solve_linear(&m, &RatVec::from_ints(&[1, 3])).unwrap();
        assert_eq!(s.solution, None);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = RatMat::identity(2);
        assert!(matches!(
            solve_linear(&m, &RatVec::from_ints(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(RatMat::from_ints(2, &[&[1, 2, 3]]).is_err());
    }

    #[test]
    fn nullspace_and_rank() {
        let rows = vec![RatVec::from_ints(&[1, 1, 0])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for z in &ns {
            assert!(rows[0].dot(z).is_zero());
        }
        assert_eq!(rank(&ns), 2);
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(v(&[(4, 3), (0, 1)]).primitive(), RatVec::from_ints(&[1, 0]));
        assert_eq!(
            v(&[(-2, 1), (4, 6)]).primitive(),
            RatVec::from_ints(&[-3, 1])
        );
    }

    #[test]
    fn convex_combination_found() {
        let pts = vec![RatVec::from_ints(&[4, 8]), RatVec::from_ints(&[4, -8])];
        let w = convex_weights(&pts, &RatVec::from_ints(&[4, 4])).unwrap();
        assert_eq!(w, vec![rat(3, 4), rat(1, 4)]);
        assert!(convex_weights(&pts, &RatVec::from_ints(&[4, 9])).is_none());
    }

    #[test]
    fn subsets_enumerate_lexicographically() {
        let all: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Subsets::new(2, 3).count(), 0);
        assert_eq!(Subsets::new(3, 0).count(), 1);
    }

    #[test]
    fn affine_dim() {
        assert_eq!(affine_dimension(&[]), None);
        let pts = [
            RatVec::from_ints(&[0, 0]),
            RatVec::from_ints(&[1, 1]),
            RatVec::from_ints(&[2, 2]),
        ];
        assert_eq!(affine_dimension(&pts), Some(1));
    }

    #[test]
    fn int_conversion() {
        assert_eq!(int_vec(&[3, -2]).to_i64(), Some(vec![3, -2]));
        assert_eq!(v(&[(1, 2)]).to_i64(), None);
    }
}
