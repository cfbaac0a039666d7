//! Facet tilting: enlarge an S-free body to a maximal one whose rows are
//! convex combinations of the original rows.
//!
//! A facet `d1` without a point of `S` in its relative interior is replaced
//! by `λ d1 + (1 - λ) d2` for a partner row `d2`. The threshold `λ*` is the
//! smallest value keeping `P(λ) ∩ Q` bounded along the recession generators
//! of `Q` that only `d1` cuts off:
//!
//! ```text
//! λ* = max_j  -d2 r_j / ((d1 - d2) r_j)   over r_j with d1 r_j > 0, d_i r_j <= 0 (i != 1)
//! ```
//!
//! Every point `x` of `S` that is strictly inside all other rows lies beyond
//! `d1` and becomes tight on the tilted row at
//! `λ(x) = (1 - d2 v) / ((d1 - d2) v)` with `v = x - f`. Taking the largest
//! `λ(x) > λ*` keeps the body S-free and puts `x` in the relative interior
//! of the new facet.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, SDescription, SearchBox};
use crate::linalg::RatVec;
use crate::rational::Rat;

use super::{
    certificates_from, interior_s_points, is_maximal_s_free, is_s_free, MaximalityReport,
    RowCertificate, SFreeBody,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "action")]
#[allow(clippy::large_enum_variant)]
pub enum TiltStep {
    /// Row `row` (index in the row list at that moment) replaced by a
    /// convex combination with row `partner`.
    Tilted {
        row: usize,
        #[serde(serialize_with = "crate::io::ser_vec")]
        d1: RatVec,
        partner: usize,
        #[serde(serialize_with = "crate::io::ser_vec")]
        d2: RatVec,
        #[serde(serialize_with = "crate::io::ser_rat")]
        lambda_star: Rat,
        point: LatticePoint,
        #[serde(serialize_with = "crate::io::ser_rat")]
        lambda_bar: Rat,
        #[serde(serialize_with = "crate::io::ser_vec")]
        new_row: RatVec,
    },
    /// No point of `S` lies beyond the facet while strictly inside the
    /// others, so the row is removed.
    Dropped {
        row: usize,
        #[serde(serialize_with = "crate::io::ser_vec")]
        d1: RatVec,
    },
    /// Row no longer defines a facet.
    Redundant {
        row: usize,
        #[serde(serialize_with = "crate::io::ser_vec")]
        d1: RatVec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltOutcome {
    pub body: SFreeBody,
    pub steps: Vec<TiltStep>,
    pub report: MaximalityReport,
    /// False when some facet could not be tilted within the box; `body` is
    /// then the partial result.
    pub complete: bool,
}

fn lambda_at(d1: &RatVec, d2: &RatVec, v: &RatVec) -> Rat {
    (Rat::one() - d2.dot(v)) / d1.sub(d2).dot(v)
}

/// Tilt the facets of `c` until each carries a point of `S` in its relative
/// interior.
///
/// Redundant rows are removed first. Uncertified facets are handled in
/// index order and partners are tried in index order; the first partner
/// producing a certified facet is taken. When no point of `S` lies beyond a
/// facet the facet is dropped.
pub fn tilt_to_maximal(c: &SFreeBody, s: &SDescription, bx: &SearchBox) -> Result<TiltOutcome> {
    let f = c.f().clone();
    if f.is_integral() {
        return Err(Error::IntegralAnchor);
    }
    let check = is_s_free(c, s, bx)?;
    if let Some(w) = check.witness {
        return Err(Error::NotSFree { witness: w });
    }
    let s_points = s.points_in(bx)?;
    if s_points.is_empty() {
        return Err(Error::EmptyS);
    }
    let rec = c.to_polyhedron().intersect(s.q())?.recession_cone().generators();
    let inside_lineality = rec
        .conic_generators()
        .iter()
        .all(|g| c.rows().iter().all(|d| d.dot(g).is_zero()));
    if !inside_lineality {
        return Err(Error::UnresolvedRecession);
    }
    let rec_q = s.recession_generators().conic_generators();

    let mut rows: Vec<RatVec> = c.rows().to_vec();
    let mut steps = Vec::new();
    let mut complete = true;
    let budget = rows.len();

    for _ in 0..=budget {
        let body = SFreeBody::new(f.clone(), rows.clone())?;
        let p = body.to_polyhedron();
        let certs = certificates_from(&p, &s_points, Some(&f))?;
        if let Some(i) = certs.iter().position(|c| *c == RowCertificate::Redundant) {
            steps.push(TiltStep::Redundant {
                row: i,
                d1: rows.remove(i),
            });
            continue;
        }
        let Some(k) = certs.iter().position(|c| *c == RowCertificate::Uncertified) else {
            break;
        };
        let d1 = rows[k].clone();
        let others = |v: &RatVec| {
            rows.iter()
                .enumerate()
                .all(|(i, d)| i == k || d.dot(v) < Rat::one())
        };
        let beyond: Vec<(LatticePoint, RatVec)> = s_points
            .iter()
            .map(|x| (x.clone(), RatVec::from_ints(x).sub(&f)))
            .filter(|(_, v)| d1.dot(v) > Rat::one() && others(v))
            .collect();
        if beyond.is_empty() {
            steps.push(TiltStep::Dropped { row: k, d1 });
            rows.remove(k);
            continue;
        }

        let qualifying: Vec<&RatVec> = rec_q
            .iter()
            .filter(|g| {
                d1.dot(g).is_positive()
                    && rows
                        .iter()
                        .enumerate()
                        .all(|(i, d)| i == k || !d.dot(g).is_positive())
            })
            .collect();

        let mut accepted = false;
        for partner in (0..rows.len()).filter(|&j| j != k) {
            let d2 = rows[partner].clone();
            let diff = d1.sub(&d2);
            let lambda_star = qualifying
                .iter()
                .map(|g| -d2.dot(g) / diff.dot(g))
                .max()
                .unwrap_or_else(Rat::zero);
            let best = beyond
                .iter()
                .map(|(x, v)| (lambda_at(&d1, &d2, v), x))
                .filter(|(l, _)| *l > lambda_star)
                .max_by(|(l1, x1), (l2, x2)| l1.cmp(l2).then_with(|| x2.cmp(x1)));
            let Some((lambda_bar, point)) = best else {
                continue;
            };
            let new_row = d1.lerp(&d2, &lambda_bar);
            let mut trial = rows.clone();
            trial[k] = new_row.clone();
            let trial_body = SFreeBody::new(f.clone(), trial.clone())?;
            let tp = trial_body.to_polyhedron();
            if !interior_s_points(&tp, &s_points).is_empty() {
                continue;
            }
            let certified = tp
                .facet_rel_interior_test(k, &RatVec::from_ints(point))
                .unwrap_or(false);
            if !certified {
                continue;
            }
            steps.push(TiltStep::Tilted {
                row: k,
                d1: d1.clone(),
                partner,
                d2,
                lambda_star,
                point: point.clone(),
                lambda_bar,
                new_row,
            });
            rows = trial;
            accepted = true;
            break;
        }
        if !accepted {
            complete = false;
            break;
        }
    }

    let body = SFreeBody::new(f, rows)?;
    let mut report = is_maximal_s_free(&body, s, bx)?;
    if !complete {
        report.notes.push("a facet could not be tilted within the box".into());
        if report.verdict.is_maximal() {
            complete = true;
        } else {
            report.verdict = super::Verdict::UndecidedBox;
        }
    }
    Ok(TiltOutcome {
        body,
        steps,
        report,
        complete,
    })
}
