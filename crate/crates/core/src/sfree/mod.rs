//! S-free bodies: freeness and maximality checks, lineality extension, the
//! shell/tightening construction and facet tilting.
//!
//! Every decision that needs "all of S" is taken over the integer points of
//! an explicit [`SearchBox`]; reports carry the box they were certified on.

mod body;
mod shell;
mod tilt;

pub use body::{HalfSpace, SFreeBody};
pub use shell::{shell, tighten_lattice, CompanionSet, TightenStep};
pub use tilt::{tilt_to_maximal, TiltOutcome, TiltStep};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, SDescription, SearchBox};
use crate::linalg::RatVec;
use crate::polyhedron::HPolyhedron;
use crate::rational::Rat;

/// Result of an S-freeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFreeCheck {
    pub s_free: bool,
    /// A point of `S` in the interior, when one exists in the box.
    pub witness: Option<LatticePoint>,
    pub box_used: SearchBox,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "point")]
pub enum RowCertificate {
    /// A point of `S` in the relative interior of the facet.
    Certified(LatticePoint),
    /// Facet-defining row without a certificate in the box.
    Uncertified,
    /// Row does not define a facet.
    Redundant,
}

impl RowCertificate {
    pub fn point(&self) -> Option<&LatticePoint> {
        match self {
            RowCertificate::Certified(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "maximal-case-i")]
    MaximalCaseI,
    #[serde(rename = "maximal-case-ii")]
    MaximalCaseII,
    #[serde(rename = "not-maximal")]
    NotMaximal,
    #[serde(rename = "undecided-box")]
    UndecidedBox,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::MaximalCaseI => "maximal-case-i",
            Verdict::MaximalCaseII => "maximal-case-ii",
            Verdict::NotMaximal => "not-maximal",
            Verdict::UndecidedBox => "undecided-box",
        })
    }
}

impl Verdict {
    pub fn is_maximal(self) -> bool {
        matches!(self, Verdict::MaximalCaseI | Verdict::MaximalCaseII)
    }
}

/// Outcome of the maximality checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub verdict: Verdict,
    pub facet_certificates: Vec<RowCertificate>,
    pub violating_point: Option<LatticePoint>,
    pub box_used: SearchBox,
    /// Whether `B ∩ Q` is full-dimensional. `Q` stands in for `conv(S)`
    /// in the interior condition.
    pub full_dimensional_with_q: bool,
    pub notes: Vec<String>,
}

pub(crate) fn sq_dist(p: &[i64], anchor: &RatVec) -> Rat {
    RatVec::from_ints(p).sub(anchor).norm_sq()
}

/// Deterministic choice among candidate points: closest to the anchor in
/// squared Euclidean distance, ties (or no anchor) broken lexicographically.
pub(crate) fn pick_point<'a>(
    pts: impl IntoIterator<Item = &'a LatticePoint>,
    anchor: Option<&RatVec>,
) -> Option<LatticePoint> {
    let mut best: Option<(Rat, &LatticePoint)> = None;
    for p in pts {
        let d = anchor.map_or_else(Rat::zero, |f| sq_dist(p, f));
        let better = match &best {
            None => true,
            Some((bd, bp)) => d < *bd || (d == *bd && p < *bp),
        };
        if better {
            best = Some((d, p));
        }
    }
    best.map(|(_, p)| p.clone())
}

fn check_dims(p: &HPolyhedron, s: &SDescription, bx: &SearchBox) -> Result<()> {
    for found in [s.dim(), bx.dim()] {
        if found != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found,
            });
        }
    }
    Ok(())
}

/// Points of `S` in the box lying in the interior of `p`.
pub(crate) fn interior_s_points(
    p: &HPolyhedron,
    s_points: &[LatticePoint],
) -> Vec<LatticePoint> {
    s_points
        .iter()
        .filter(|x| {
            p.slacks(&RatVec::from_ints(x))
                .map(|sl| sl.iter().all(Signed::is_positive))
                .unwrap_or(false)
        })
        .cloned()
        .collect()
}

fn s_free_polyhedron(
    p: &HPolyhedron,
    s: &SDescription,
    bx: &SearchBox,
    anchor: Option<&RatVec>,
) -> Result<SFreeCheck> {
    check_dims(p, s, bx)?;
    let pts = crate::lattice::enumerate_integer_points(&p.intersect(s.q())?, Some(bx))?;
    let inside = interior_s_points(p, &pts);
    let witness = pick_point(&inside, anchor);
    Ok(SFreeCheck {
        s_free: witness.is_none(),
        witness,
        box_used: bx.clone(),
    })
}

/// Whether `B` has no point of `S` in its interior (within the box).
pub fn is_s_free(b: &SFreeBody, s: &SDescription, bx: &SearchBox) -> Result<SFreeCheck> {
    s_free_polyhedron(&b.to_polyhedron(), s, bx, Some(b.f()))
}

/// Certificates for every row of `p`, drawn from `candidates`.
pub(crate) fn certificates_from(
    p: &HPolyhedron,
    candidates: &[LatticePoint],
    anchor: Option<&RatVec>,
) -> Result<Vec<RowCertificate>> {
    let mut out = Vec::with_capacity(p.nrows());
    for i in 0..p.nrows() {
        if !p.is_facet(i)? {
            out.push(RowCertificate::Redundant);
            continue;
        }
        let equal = p.implied_equal_on_face(i)?;
        let hits: Vec<LatticePoint> = candidates
            .iter()
            .filter(|x| {
                let sl = p.slacks(&RatVec::from_ints(x)).expect("dimension checked");
                sl.iter().enumerate().all(|(j, v)| {
                    if equal.contains(&j) {
                        v.is_zero()
                    } else {
                        v.is_positive()
                    }
                })
            })
            .cloned()
            .collect();
        out.push(match pick_point(&hits, anchor) {
            Some(x) => RowCertificate::Certified(x),
            None => RowCertificate::Uncertified,
        });
    }
    Ok(out)
}

/// For each row of `B`, a point of `S` in the relative interior of its facet
/// (closest to `f`, ties lexicographic), if one exists in the box.
pub fn facet_certificates(
    b: &SFreeBody,
    s: &SDescription,
    bx: &SearchBox,
) -> Result<Vec<RowCertificate>> {
    let p = b.to_polyhedron();
    check_dims(&p, s, bx)?;
    let pts = s.points_in(bx)?;
    certificates_from(&p, &pts, Some(b.f()))
}

/// `αx = β` has no integer solution.
fn hyperplane_misses_lattice(a: &RatVec, b: &Rat) -> bool {
    let mut full = a.entries().to_vec();
    full.push(b.clone());
    let prim = RatVec::new(full).primitive();
    let n = prim.dim() - 1;
    let coeffs: RatVec = prim.iter().take(n).cloned().collect();
    if coeffs.is_zero() {
        return !prim[n].is_zero();
    }
    // after clearing denominators jointly, divide the normal by its gcd
    let g = coeffs
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, c| {
            num_integer::Integer::gcd(&acc, c.numer())
        });
    let rhs = &prim[n] / Rat::from_integer(g);
    !rhs.is_integer()
}

/// An uncertified facet is definitely without certificate when its
/// hyperplane carries no integer point or its section with `Q` lies inside
/// the box.
fn uncertified_is_definitive(
    p: &HPolyhedron,
    row: usize,
    s: &SDescription,
    bx: &SearchBox,
) -> Result<bool> {
    let (a, b) = p.row(row);
    if hyperplane_misses_lattice(a, b) {
        return Ok(true);
    }
    let section = p.face(row)?.intersect(s.q())?;
    Ok(bx.covers(&section))
}

fn maximality_of(
    p: &HPolyhedron,
    s: &SDescription,
    bx: &SearchBox,
    anchor: Option<&RatVec>,
) -> Result<MaximalityReport> {
    check_dims(p, s, bx)?;
    let mut notes = Vec::new();
    let free = s_free_polyhedron(p, s, bx, anchor)?;
    let pq = p.intersect(s.q())?;
    let full = pq.is_full_dimensional();
    let s_points = s.points_in(bx)?;
    let certs = certificates_from(p, &s_points, anchor)?;
    let mut report = MaximalityReport {
        verdict: Verdict::UndecidedBox,
        facet_certificates: certs,
        violating_point: None,
        box_used: bx.clone(),
        full_dimensional_with_q: full,
        notes: Vec::new(),
    };
    if let Some(w) = free.witness {
        report.verdict = Verdict::NotMaximal;
        report.violating_point = Some(w);
        notes.push("a point of S lies in the interior".into());
        report.notes = notes;
        return Ok(report);
    }

    if full {
        notes.push("interior condition tested on B ∩ Q in place of B ∩ conv(S)".into());
        let uncertified: Vec<usize> = report
            .facet_certificates
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == RowCertificate::Uncertified)
            .map(|(i, _)| i)
            .collect();
        report.verdict = if uncertified.is_empty() {
            Verdict::MaximalCaseI
        } else {
            let mut definitive = true;
            for &i in &uncertified {
                if !uncertified_is_definitive(p, i, s, bx)? {
                    definitive = false;
                    notes.push(format!(
                        "facet {i} has no certificate in the box but extends beyond it"
                    ));
                }
            }
            if definitive {
                Verdict::NotMaximal
            } else {
                Verdict::UndecidedBox
            }
        };
        report.notes = notes;
        return Ok(report);
    }

    notes.push("B ∩ Q is not full-dimensional".into());
    let facets: Vec<usize> = (0..p.nrows())
        .filter(|&i| report.facet_certificates[i] != RowCertificate::Redundant)
        .collect();
    report.verdict = if facets.len() != 1 {
        Verdict::NotMaximal
    } else {
        let i = facets[0];
        let (a, b) = p.row(i);
        let g = s.q().generators();
        let q_on_far_side = g.points.iter().all(|v| &a.dot(v) >= b)
            && g.rays.iter().all(|r| !a.dot(r).is_negative())
            && g.lineality.iter().all(|l| a.dot(l).is_zero());
        let touching: Vec<LatticePoint> = s_points
            .iter()
            .filter(|x| &a.dot(&RatVec::from_ints(x)) == b)
            .cloned()
            .collect();
        if !q_on_far_side {
            Verdict::NotMaximal
        } else if let Some(x) = pick_point(&touching, anchor) {
            report.facet_certificates[i] = RowCertificate::Certified(x);
            Verdict::MaximalCaseII
        } else if uncertified_is_definitive(p, i, s, bx)? {
            Verdict::NotMaximal
        } else {
            Verdict::UndecidedBox
        }
    };
    report.notes = notes;
    Ok(report)
}

/// Maximality of an anchored body.
pub fn is_maximal_s_free(
    b: &SFreeBody,
    s: &SDescription,
    bx: &SearchBox,
) -> Result<MaximalityReport> {
    maximality_of(&b.to_polyhedron(), s, bx, Some(b.f()))
}

/// Maximality of an anchor-free half-space `αx <= β`; this is the input
/// form for the half-space case.
pub fn is_maximal_halfspace(
    h: &HalfSpace,
    s: &SDescription,
    bx: &SearchBox,
) -> Result<MaximalityReport> {
    maximality_of(&h.to_polyhedron()?, s, bx, None)
}

/// Maximality of an arbitrary inequality system, anchored or not.
pub fn is_maximal_polyhedron(
    p: &HPolyhedron,
    s: &SDescription,
    bx: &SearchBox,
    anchor: Option<&RatVec>,
) -> Result<MaximalityReport> {
    maximality_of(p, s, bx, anchor)
}

/// `B + <r>` for a common recession direction `r` of `B` and `Q`.
///
/// Rows with `a_i r < 0` disappear under the projection along `r`; rows
/// with `a_i r = 0` remain. The result is re-certified S-free in the box.
pub fn lineality_extend(
    b: &SFreeBody,
    r: &RatVec,
    s: &SDescription,
    bx: &SearchBox,
) -> Result<SFreeBody> {
    let n = b.dim();
    if r.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r.dim(),
        });
    }
    let in_rec_b = b.rows().iter().all(|a| !a.dot(r).is_positive());
    let in_rec_q = s.q().rows().all(|(a, _)| !a.dot(r).is_positive());
    if !in_rec_b || !in_rec_q {
        return Err(Error::NotARecessionDirection);
    }
    if !b.to_polyhedron().intersect(s.q())?.is_full_dimensional() {
        return Err(Error::Invalid(
            "B ∩ Q must be full-dimensional to extend lineality".into(),
        ));
    }
    let kept: Vec<RatVec> = b
        .rows()
        .iter()
        .filter(|a| a.dot(r).is_zero())
        .cloned()
        .collect();
    if kept.is_empty() {
        let pts = s.points_in(bx)?;
        return Err(match pick_point(&pts, Some(b.f())) {
            Some(w) => Error::NotSFree { witness: w },
            None => Error::EmptyRowList,
        });
    }
    let out = SFreeBody::new(b.f().clone(), kept)?;
    let check = is_s_free(&out, s, bx)?;
    match check.witness {
        Some(w) => Err(Error::NotSFree { witness: w }),
        None => Ok(out),
    }
}
