//! Gauges `r ↦ max_j d_j r`: evaluation, the body `{x : ψ(x - f) <= 1}`,
//! polars, dominance and minimality.

use num_traits::Signed;

use crate::dd::{cone_generators, inequalities_of, GeneratorForm};
use crate::error::{Error, Result};
use crate::lattice::{SDescription, SearchBox};
use crate::linalg::{convex_weights, RatVec};
use crate::polyhedron::HPolyhedron;
use crate::rational::Rat;
use crate::sfree::{is_maximal_s_free, is_s_free, tilt_to_maximal, MaximalityReport, SFreeBody};

/// A finite maximum of linear forms anchored at `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeFunction {
    f: RatVec,
    rows: Vec<RatVec>,
}

impl GaugeFunction {
    pub fn new(f: RatVec, rows: Vec<RatVec>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyRowList);
        }
        if let Some(r) = rows.iter().find(|r| r.dim() != f.dim()) {
            return Err(Error::DimensionMismatch {
                expected: f.dim(),
                found: r.dim(),
            });
        }
        Ok(GaugeFunction { f, rows })
    }

    /// `ψ_B` of an anchored body.
    pub fn of_body(b: &SFreeBody) -> Self {
        GaugeFunction {
            f: b.f().clone(),
            rows: b.rows().to_vec(),
        }
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

    pub fn eval(&self, r: &RatVec) -> Result<Rat> {
        gauge_eval(self, r)
    }

    /// Whether `ψ(r) >= 0` for every `r`: true unless some `r` makes every
    /// row negative.
    pub fn is_nonnegative(&self) -> bool {
        self.negative_witness().is_none()
    }

    /// A direction with `ψ(r) < 0`, found as the sum of the generators of
    /// `{r : d_j r <= 0}` when that cone is full-dimensional.
    pub fn negative_witness(&self) -> Option<RatVec> {
        let (lin, rays) = self.recession_generators();
        let full = GeneratorForm {
            dim: self.dim(),
            points: vec![RatVec::zeros(self.dim())],
            rays: rays.clone(),
            lineality: lin,
            empty: false,
        }
        .affine_dimension()
            == Some(self.dim());
        if !full {
            return None;
        }
        let w = rays
            .iter()
            .fold(RatVec::zeros(self.dim()), |acc, r| acc.add(r));
        let value = self.eval(&w).ok()?;
        value.is_negative().then_some(w)
    }

    /// Lineality basis and rays of `rec(B_ψ) = {r : ψ(r) <= 0}`.
    pub fn recession_generators(&self) -> (Vec<RatVec>, Vec<RatVec>) {
        cone_generators(&self.rows, self.dim())
    }
}

pub fn gauge_eval(psi: &GaugeFunction, r: &RatVec) -> Result<Rat> {
    if r.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            found: r.dim(),
        });
    }
    Ok(psi
        .rows
        .iter()
        .map(|d| d.dot(r))
        .max()
        .expect("at least one row"))
}

/// `B_ψ = {x : ψ(x - f) <= 1}`.
pub fn body_of(psi: &GaugeFunction) -> Result<SFreeBody> {
    SFreeBody::new(psi.f.clone(), psi.rows.clone())
}

/// The polar `K* = conv({0} ∪ {a_i})` of `K = {r : a_i r <= 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarBody {
    dim: usize,
    generators: Vec<RatVec>,
}

impl PolarBody {
    pub fn generators(&self) -> &[RatVec] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Inequality description of `K*`.
    pub fn inequalities(&self) -> HPolyhedron {
        let mut points = vec![RatVec::zeros(self.dim)];
        points.extend(self.generators.iter().cloned());
        inequalities_of(&GeneratorForm {
            dim: self.dim,
            points,
            rays: Vec::new(),
            lineality: Vec::new(),
            empty: false,
        })
    }

    /// `K**` computed from the inequality description of `K*`: each row
    /// `c y <= e` contributes the point `c / e` when `e > 0` and the ray `c`
    /// when `e = 0`.
    pub fn double_polar(&self) -> HPolyhedron {
        let h = self.inequalities();
        let mut points = vec![RatVec::zeros(self.dim)];
        let mut rays = Vec::new();
        for (c, e) in h.rows() {
            if e.is_positive() {
                points.push(c.scale(&e.recip()));
            } else {
                rays.push(c.clone());
            }
        }
        inequalities_of(&GeneratorForm {
            dim: self.dim,
            points,
            rays,
            lineality: Vec::new(),
            empty: false,
        })
    }
}

pub fn polar(k_rows: &[RatVec]) -> Result<PolarBody> {
    let Some(first) = k_rows.first() else {
        return Err(Error::EmptyRowList);
    };
    let n = first.dim();
    for (i, r) in k_rows.iter().enumerate() {
        if r.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.dim(),
            });
        }
        if r.is_zero() {
            return Err(Error::DegenerateRow { row: i });
        }
    }
    Ok(PolarBody {
        dim: n,
        generators: k_rows.to_vec(),
    })
}

/// `ρ_K(r) = max_i a_i r` for `K = {r : a_i r <= 1}`.
pub fn rho(k_rows: &[RatVec], r: &RatVec) -> Result<Rat> {
    let p = polar(k_rows)?;
    let g = GaugeFunction::new(RatVec::zeros(p.dim()), p.generators)?;
    gauge_eval(&g, r)
}

/// Whether `ψ' <= ψ` pointwise, decided by exact membership of every row of
/// `ψ'` in the convex hull of the rows of `ψ`. Returns the convex weights
/// as a certificate.
pub fn dominance_weights(
    psi_prime: &GaugeFunction,
    psi: &GaugeFunction,
) -> Result<Option<Vec<Vec<Rat>>>> {
    if psi_prime.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            found: psi_prime.dim(),
        });
    }
    if psi_prime.f != psi.f {
        return Err(Error::AnchorMismatch);
    }
    let mut all = Vec::with_capacity(psi_prime.rows.len());
    for row in &psi_prime.rows {
        match convex_weights(&psi.rows, row) {
            Some(w) => all.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(all))
}

pub fn dominates(psi_prime: &GaugeFunction, psi: &GaugeFunction) -> Result<bool> {
    Ok(dominance_weights(psi_prime, psi)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCheck {
    pub minimal: bool,
    /// Dominating gauge of a maximal body, when `ψ` is not minimal.
    pub witness: Option<GaugeFunction>,
    pub report: MaximalityReport,
}

/// `ψ` is minimal exactly when `B_ψ` is a maximal S-free set; otherwise the
/// tilted body provides a dominating gauge.
pub fn is_minimal(psi: &GaugeFunction, s: &SDescription, bx: &SearchBox) -> Result<MinimalityCheck> {
    if psi.f.is_integral() {
        return Err(Error::IntegralAnchor);
    }
    if !s.q().contains(&psi.f)? {
        return Err(Error::AnchorOutsideQ);
    }
    let body = body_of(psi)?;
    if let Some(w) = is_s_free(&body, s, bx)?.witness {
        return Err(Error::NotSFree { witness: w });
    }
    let report = is_maximal_s_free(&body, s, bx)?;
    if report.verdict.is_maximal() {
        return Ok(MinimalityCheck {
            minimal: true,
            witness: None,
            report,
        });
    }
    let tilted = tilt_to_maximal(&body, s, bx)?;
    Ok(MinimalityCheck {
        minimal: false,
        witness: Some(GaugeFunction::of_body(&tilted.body)),
        report: tilted.report,
    })
}
