//! Brute-force validity check of a cut `Σ π_j s_j >= 1` on the set
//! `{(x, s) : x = f + R s, x ∈ S, s >= 0}`, restricted to the integer points
//! of a search box.
//!
//! For a fixed `x` the feasible `s` form the polyhedron `{s >= 0 : R s = x - f}`.
//! Its minimum is attained at a basic solution (support on linearly
//! independent columns) unless a recession direction has negative cost.
//! Recession directions are generated by the circuits of `R` with a
//! one-signed kernel vector.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, SDescription, SearchBox};
use crate::linalg::{nullspace, rank, solve_linear, RatMat, RatVec, Subsets};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    /// Smallest value of `π s` over reachable points; `None` when no point
    /// of `S` in the box is reachable.
    pub minimum_value: Option<Rat>,
    /// Point and nonnegative `s` attaining the minimum, smallest `x` first.
    pub attained_at: Option<(LatticePoint, RatVec)>,
    pub unbounded_below: bool,
    /// A reachable point and a direction `z >= 0` with `R z = 0`, `π z < 0`.
    pub unbounded_witness: Option<(LatticePoint, RatVec)>,
    pub points_checked: usize,
    pub reachable_points: usize,
    pub unreachable_points: usize,
    pub box_used: SearchBox,
}

impl ValidityReport {
    pub fn valid(&self) -> bool {
        !self.unbounded_below
            && self
                .minimum_value
                .as_ref()
                .is_none_or(|v| *v >= Rat::from_integer(1.into()))
    }
}

/// Basic feasible solutions of `{s >= 0 : R s = v}`.
fn basic_solutions(rays: &[RatVec], v: &RatVec) -> Vec<RatVec> {
    let n = v.dim();
    let m = rays.len();
    let mut out: Vec<RatVec> = Vec::new();
    if v.is_zero() {
        out.push(RatVec::zeros(m));
    }
    for size in 1..=n.min(m) {
        for subset in Subsets::new(m, size) {
            let cols: Vec<RatVec> = subset.iter().map(|&j| rays[j].clone()).collect();
            if rank(&cols) < size {
                continue;
            }
            let mat = RatMat::new(n, cols).expect("ray dimension").transpose();
            let Some(sol) = solve_linear(&mat, v).expect("dimensions agree").solution else {
                continue;
            };
            if sol.iter().any(Signed::is_negative) {
                continue;
            }
            let mut s = vec![Rat::zero(); m];
            for (&j, x) in subset.iter().zip(sol.iter()) {
                s[j] = x.clone();
            }
            let s = RatVec::new(s);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Extreme rays of `{z >= 0 : R z = 0}`: one-signed kernel vectors of
/// minimal dependent column sets.
pub fn recession_rays(rays: &[RatVec]) -> Vec<RatVec> {
    let Some(first) = rays.first() else {
        return Vec::new();
    };
    let n = first.dim();
    let m = rays.len();
    let mut out = Vec::new();
    for size in 1..=(n + 1).min(m) {
        for subset in Subsets::new(m, size) {
            let cols: Vec<RatVec> = subset.iter().map(|&j| rays[j].clone()).collect();
            if rank(&cols) != size - 1 {
                continue;
            }
            // rows of the n x size matrix with these columns
            let rows: Vec<RatVec> = (0..n)
                .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                .collect();
            let kernel = nullspace(&rows, size);
            let [z] = kernel.as_slice() else {
                continue;
            };
            let z = if z.iter().all(Signed::is_positive) {
                z.clone()
            } else if z.iter().all(Signed::is_negative) {
                z.neg()
            } else {
                continue;
            };
            let mut full = vec![Rat::zero(); m];
            for (&j, x) in subset.iter().zip(z.iter()) {
                full[j] = x.clone();
            }
            out.push(RatVec::new(full));
        }
    }
    out
}

/// Check `Σ π_j s_j >= 1` for every point of `S` in the box.
pub fn verify_validity(
    coefficients: &[Rat],
    f: &RatVec,
    rays: &[RatVec],
    s: &SDescription,
    bx: &SearchBox,
) -> Result<ValidityReport> {
    let n = f.dim();
    if rays.is_empty() {
        return Err(Error::NoRays);
    }
    if coefficients.len() != rays.len() {
        return Err(Error::DimensionMismatch {
            expected: rays.len(),
            found: coefficients.len(),
        });
    }
    for found in rays.iter().map(RatVec::dim).chain([s.dim(), bx.dim()]) {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    let pi = RatVec::new(coefficients.to_vec());
    let directions = recession_rays(rays);
    let negative = directions.iter().find(|z| pi.dot(z).is_negative()).cloned();

    let points = s.points_in(bx)?;
    let mut report = ValidityReport {
        minimum_value: None,
        attained_at: None,
        unbounded_below: false,
        unbounded_witness: None,
        points_checked: points.len(),
        reachable_points: 0,
        unreachable_points: 0,
        box_used: bx.clone(),
    };
    for x in &points {
        let v = RatVec::from_ints(x).sub(f);
        let basics = basic_solutions(rays, &v);
        if basics.is_empty() {
            report.unreachable_points += 1;
            continue;
        }
        report.reachable_points += 1;
        if let (Some(z), None) = (&negative, &report.unbounded_witness) {
            report.unbounded_below = true;
            report.unbounded_witness = Some((x.clone(), z.clone()));
        }
        // points come in lexicographic order, so only strict improvements move
        // the attaining point; among equal values at one x keep the smallest s
        let mut best_here: Option<(Rat, RatVec)> = None;
        for sv in basics {
            let val = pi.dot(&sv);
            let better = match &best_here {
                None => true,
                Some((bv, bs)) => val < *bv || (val == *bv && sv < *bs),
            };
            if better {
                best_here = Some((val, sv));
            }
        }
        let (val, sv) = best_here.expect("nonempty");
        let improves = report.minimum_value.as_ref().is_none_or(|m| val < *m);
        if improves {
            report.minimum_value = Some(val);
            report.attained_at = Some((x.clone(), sv));
        }
    }
    Ok(report)
}
