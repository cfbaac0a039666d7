//! The half-unit shell around `Q` and the companion lattice-free set.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_integer_points, LatticePoint, SDescription, SearchBox};
use crate::linalg::RatVec;
use crate::polyhedron::HPolyhedron;
use crate::rational::{denominator_lcm, rat, Rat};

use super::{is_s_free, SFreeBody};

/// `A x <= b + 1/2` with each row of `Q` first scaled to integer
/// coefficients (denominators cleared, no gcd division).
pub fn shell(s: &SDescription) -> HPolyhedron {
    let half = rat(1, 2);
    let rows = s
        .q()
        .rows()
        .map(|(a, b)| {
            let l = Rat::from_integer(denominator_lcm(a.iter().chain(std::iter::once(b))));
            (a.scale(&l), b * &l + &half)
        })
        .collect();
    HPolyhedron::from_rows(s.dim(), rows).expect("same dimension as Q")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "action")]
pub enum TightenStep {
    /// Shell row that does not define a facet of `B ∩ shell`.
    Redundant { shell_row: usize },
    /// Removing the row creates no interior integer point.
    Dropped { shell_row: usize },
    /// Right-hand side moved onto the nearest integer point beyond it.
    Pushed {
        shell_row: usize,
        #[serde(serialize_with = "crate::io::ser_rat")]
        from: Rat,
        #[serde(serialize_with = "crate::io::ser_rat")]
        to: Rat,
        point: LatticePoint,
    },
}

/// `K = B ∩ P_t`: the body rows followed by the surviving shell rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionSet {
    pub polyhedron: HPolyhedron,
    pub body_rows: usize,
    /// Original shell row index of each trailing row of `polyhedron`.
    pub shell_rows: Vec<usize>,
    pub steps: Vec<TightenStep>,
    pub box_used: SearchBox,
}

struct ShellRow {
    index: usize,
    a: RatVec,
    b: Rat,
}

fn assemble(body: &HPolyhedron, shell: &[ShellRow]) -> HPolyhedron {
    let mut rows: Vec<(RatVec, Rat)> = body.rows().map(|(a, b)| (a.clone(), b.clone())).collect();
    rows.extend(shell.iter().map(|r| (r.a.clone(), r.b.clone())));
    HPolyhedron::from_rows(body.dim(), rows).expect("same dimension")
}

/// Integer points of the box strictly inside `p`.
fn interior_integer_points(p: &HPolyhedron, bx: &SearchBox) -> Result<Vec<LatticePoint>> {
    Ok(enumerate_integer_points(p, Some(bx))?
        .into_iter()
        .filter(|x| {
            p.slacks(&RatVec::from_ints(x))
                .map(|s| s.iter().all(Signed::is_positive))
                .unwrap_or(false)
        })
        .collect())
}

/// Some integer point in the relative interior of the facet of row `i`.
fn facet_has_integer_point(p: &HPolyhedron, i: usize, bx: &SearchBox) -> Result<bool> {
    let equal = p.implied_equal_on_face(i)?;
    let face = p.face(i)?;
    Ok(enumerate_integer_points(&face, Some(bx))?.iter().any(|x| {
        let sl = p.slacks(&RatVec::from_ints(x)).expect("dimension");
        sl.iter().enumerate().all(|(j, v)| {
            if equal.contains(&j) {
                v.is_zero()
            } else {
                v.is_positive()
            }
        })
    }))
}

/// Lattice-free companion of an S-free body: start from `B ∩ shell(S)`,
/// keep only shell rows that define facets, then repeatedly take a shell
/// facet without an integer point in its relative interior and either drop
/// it (when that creates no interior integer point) or move it out to the
/// interior integer point of the relaxed set at minimum slack.
pub fn tighten_lattice(
    b: &SFreeBody,
    s: &SDescription,
    bx: &SearchBox,
) -> Result<CompanionSet> {
    let check = is_s_free(b, s, bx)?;
    if let Some(w) = check.witness {
        return Err(Error::NotSFree { witness: w });
    }
    let body = b.to_polyhedron();
    let k0 = body.nrows();
    let p_shell = shell(s);
    let mut steps = Vec::new();
    let mut current: Vec<ShellRow> = p_shell
        .rows()
        .enumerate()
        .map(|(index, (a, b))| ShellRow {
            index,
            a: a.clone(),
            b: b.clone(),
        })
        .collect();

    let start = assemble(&body, &current);
    let mut kept = Vec::new();
    for (j, row) in current.into_iter().enumerate() {
        if start.is_facet(k0 + j)? {
            kept.push(row);
        } else {
            steps.push(TightenStep::Redundant {
                shell_row: row.index,
            });
        }
    }
    current = kept;

    let limit = p_shell.nrows() + 1;
    let mut certified: Vec<usize> = Vec::new();
    for _ in 0..=limit {
        let k = assemble(&body, &current);
        let mut target = None;
        for (j, row) in current.iter().enumerate() {
            if certified.contains(&row.index) {
                continue;
            }
            if !k.is_facet(k0 + j)? {
                target = Some((j, false));
                break;
            }
            if facet_has_integer_point(&k, k0 + j, bx)? {
                certified.push(row.index);
                continue;
            }
            target = Some((j, true));
            break;
        }
        let Some((j, is_facet)) = target else {
            return Ok(CompanionSet {
                polyhedron: k,
                body_rows: k0,
                shell_rows: current.iter().map(|r| r.index).collect(),
                steps,
                box_used: bx.clone(),
            });
        };
        let row = current.remove(j);
        if !is_facet {
            steps.push(TightenStep::Redundant {
                shell_row: row.index,
            });
            continue;
        }
        let relaxed = assemble(&body, &current);
        let inside = interior_integer_points(&relaxed, bx)?;
        let nearest = inside
            .iter()
            .map(|x| (row.a.dot(&RatVec::from_ints(x)), x))
            .min_by(|(u, x), (v, y)| u.cmp(v).then_with(|| x.cmp(y)));
        match nearest {
            None => steps.push(TightenStep::Dropped {
                shell_row: row.index,
            }),
            Some((value, x)) => {
                steps.push(TightenStep::Pushed {
                    shell_row: row.index,
                    from: row.b.clone(),
                    to: value.clone(),
                    point: x.clone(),
                });
                certified.push(row.index);
                current.insert(
                    j,
                    ShellRow {
                        index: row.index,
                        a: row.a,
                        b: value,
                    },
                );
            }
        }
    }
    Err(Error::Invalid(
        "shell tightening did not settle within the row budget".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn q(rows: Vec<(Vec<i64>, Rat)>) -> SDescription {
        let n = rows[0].0.len();
        SDescription::new(
            HPolyhedron::from_rows(n, rows.into_iter().map(|(a, b)| (RatVec::from_ints(&a), b)).collect())
                .unwrap(),
        )
    }

    #[test]
    fn shell_of_halfplane() {
        let p = shell(&q(vec![(vec![-1, 0], int(0))]));
        assert_eq!(p.row(0), (&RatVec::from_ints(&[-1, 0]), &rat(1, 2)));
    }

    #[test]
    fn shell_of_box() {
        let bx = HPolyhedron::cuboid(&RatVec::from_ints(&[0, 0]), &RatVec::from_ints(&[2, 2])).unwrap();
        let p = shell(&SDescription::new(bx));
        let expect = HPolyhedron::cuboid(
            &RatVec::new(vec![rat(-1, 2), rat(-1, 2)]),
            &RatVec::new(vec![rat(5, 2), rat(5, 2)]),
        )
        .unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn shell_keeps_integer_scaling() {
        let p = shell(&q(vec![(vec![2, 2], int(3))]));
        assert_eq!(p.row(0), (&RatVec::from_ints(&[2, 2]), &rat(7, 2)));
        // fractional rows are scaled to integers first
        let s = SDescription::new(
            HPolyhedron::from_rows(2, vec![(RatVec::new(vec![rat(1, 2), rat(1, 2)]), rat(3, 2))]).unwrap(),
        );
        assert_eq!(shell(&s).row(0), (&RatVec::from_ints(&[1, 1]), &rat(7, 2)));
    }
}
