//! Cut coefficients from a maximal S-free body around a tableau row
//! `x = f + Σ r_j s_j`.

use crate::error::{Error, Result};
use crate::gauge::GaugeFunction;
use crate::lattice::{SDescription, SearchBox};
use crate::linalg::RatVec;
use crate::rational::Rat;
use crate::sfree::{is_s_free, tilt_to_maximal, MaximalityReport, SFreeBody, TiltStep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauInstance {
    f: RatVec,
    rays: Vec<RatVec>,
    s: SDescription,
}

impl TableauInstance {
    pub fn new(f: RatVec, rays: Vec<RatVec>, s: SDescription) -> Result<Self> {
        if f.dim() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                found: f.dim(),
            });
        }
        if rays.is_empty() {
            return Err(Error::NoRays);
        }
        if let Some(r) = rays.iter().find(|r| r.dim() != f.dim()) {
            return Err(Error::DimensionMismatch {
                expected: f.dim(),
                found: r.dim(),
            });
        }
        if f.is_integral() {
            return Err(Error::IntegralAnchor);
        }
        if !s.q().contains(&f)? {
            return Err(Error::AnchorOutsideQ);
        }
        Ok(TableauInstance { f, rays, s })
    }

    pub fn f(&self) -> &RatVec {
        &self.f
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.rays
    }

    pub fn s(&self) -> &SDescription {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }
}

/// The split `⌊f_i⌋ <= x_i <= ⌈f_i⌉` on the first fractional coordinate,
/// upper row first.
pub fn default_initial_body(inst: &TableauInstance) -> SFreeBody {
    let f = inst.f();
    let n = f.dim();
    let i = (0..n)
        .find(|&i| !f[i].is_integer())
        .expect("anchor is not integral");
    let up = f[i].ceil() - &f[i];
    let down = &f[i] - f[i].floor();
    let rows = vec![
        RatVec::unit(n, i).scale(&up.recip()),
        RatVec::unit(n, i).neg().scale(&down.recip()),
    ];
    SFreeBody::new(f.clone(), rows).expect("two rows of the anchor dimension")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    /// `ψ_B(r_j)` for every ray, in order.
    pub coefficients: Vec<Rat>,
    pub body: SFreeBody,
    pub maximality: MaximalityReport,
    pub trace: Vec<TiltStep>,
}

/// Enlarge `initial` (default: the split on the first fractional
/// coordinate) to a maximal S-free body and evaluate its gauge on the rays.
pub fn generate_cut(
    inst: &TableauInstance,
    initial: Option<&SFreeBody>,
    bx: &SearchBox,
) -> Result<CutResult> {
    let start = match initial {
        Some(b) => {
            if b.f() != inst.f() {
                return Err(Error::AnchorMismatch);
            }
            b.clone()
        }
        None => default_initial_body(inst),
    };
    if let Some(w) = is_s_free(&start, inst.s(), bx)?.witness {
        return Err(Error::NotSFree { witness: w });
    }
    let outcome = tilt_to_maximal(&start, inst.s(), bx)?;
    let psi = GaugeFunction::of_body(&outcome.body);
    let coefficients = inst
        .rays()
        .iter()
        .map(|r| psi.eval(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(CutResult {
        coefficients,
        body: outcome.body,
        maximality: outcome.report,
        trace: outcome.steps,
    })
}
