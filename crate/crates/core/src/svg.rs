//! Planar pictures: `conv(S)` and bodies clipped to the search box, lattice
//! points and the anchor, as a fixed 800 x 800 SVG.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::{hull_vertices_2d, SDescription, SearchBox};
use crate::linalg::RatVec;
use crate::polyhedron::HPolyhedron;
use crate::rational::{rat, to_fixed, Rat};

pub const CANVAS: i64 = 800;
const STROKES: [&str; 4] = ["#1f4e9c", "#b03a2e", "#1e8449", "#7d3c98"];

pub struct Scene<'a> {
    pub s: &'a SDescription,
    pub bodies: Vec<HPolyhedron>,
    pub search_box: &'a SearchBox,
    pub anchor: Option<&'a RatVec>,
}

struct Frame {
    lo: [Rat; 2],
    scale: [Rat; 2],
}

impl Frame {
    fn new(bx: &SearchBox) -> Self {
        let span = |i: usize| (bx.upper()[i] - bx.lower()[i]).max(1);
        Frame {
            lo: [Rat::from_integer(bx.lower()[0].into()), Rat::from_integer(bx.lower()[1].into())],
            scale: [rat(CANVAS, span(0)), rat(CANVAS, span(1))],
        }
    }

    /// Exact canvas coordinates, y axis pointing up.
    fn map_exact(&self, p: &RatVec) -> (Rat, Rat) {
        let x = (&p[0] - &self.lo[0]) * &self.scale[0];
        let y = Rat::from_integer(CANVAS.into()) - (&p[1] - &self.lo[1]) * &self.scale[1];
        (x, y)
    }

    fn map(&self, p: &RatVec) -> (String, String) {
        let (x, y) = self.map_exact(p);
        (to_fixed(&x, 6), to_fixed(&y, 6))
    }

    fn points_attr(&self, verts: &[RatVec]) -> String {
        verts
            .iter()
            .map(|v| {
                let (x, y) = self.map(v);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn clipped_vertices(p: &HPolyhedron, bx: &SearchBox) -> Result<Vec<RatVec>> {
    let g = p.intersect(&bx.to_polyhedron())?.generators();
    if g.empty {
        return Ok(Vec::new());
    }
    Ok(hull_vertices_2d(&g.points))
}

fn shape(out: &mut String, frame: &Frame, verts: &[RatVec], style: &str) {
    match verts.len() {
        0 => {}
        1 => {
            let (x, y) = frame.map(&verts[0]);
            let _ = writeln!(out, r#"  <circle cx="{x}" cy="{y}" r="2" {style}/>"#);
        }
        2 => {
            let _ = writeln!(
                out,
                r#"  <polyline points="{}" {style}/>"#,
                frame.points_attr(verts)
            );
        }
        _ => {
            let _ = writeln!(
                out,
                r#"  <polygon points="{}" {style}/>"#,
                frame.points_attr(verts)
            );
        }
    }
}

pub fn plot_svg(scene: &Scene<'_>) -> Result<String> {
    let bx = scene.search_box;
    if scene.s.dim() != 2 || bx.dim() != 2 {
        return Err(Error::Invalid(format!(
            "plotting needs dimension 2, got {}",
            scene.s.dim()
        )));
    }
    if let Some(p) = scene.bodies.iter().find(|p| p.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let frame = Frame::new(bx);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(out, r##"  <rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>"##);

    let s_points = scene.s.points_in(bx)?;
    let s_rat: Vec<RatVec> = s_points.iter().map(|p| RatVec::from_ints(p)).collect();
    let hull = hull_vertices_2d(&s_rat);
    shape(
        &mut out,
        &frame,
        &hull,
        r##"fill="#d9d9d9" stroke="#bdbdbd" stroke-width="1""##,
    );

    for (i, body) in scene.bodies.iter().enumerate() {
        let verts = clipped_vertices(body, bx)?;
        let style = format!(
            r##"fill="#404040" fill-opacity="0.35" stroke="{}" stroke-width="2""##,
            STROKES[i % STROKES.len()]
        );
        shape(&mut out, &frame, &verts, &style);
    }

    for x in bx.lower()[0]..=bx.upper()[0] {
        for y in bx.lower()[1]..=bx.upper()[1] {
            let p = [x, y];
            let (cx, cy) = frame.map(&RatVec::from_ints(&p));
            let style = if s_points.binary_search(&p.to_vec()).is_ok() {
                r##"fill="#000000""##
            } else {
                r##"fill="#ffffff" stroke="#000000" stroke-width="1""##
            };
            let _ = writeln!(out, r#"  <circle cx="{cx}" cy="{cy}" r="3" {style}/>"#);
        }
    }

    if let Some(f) = scene.anchor {
        let (cx, cy) = frame.map_exact(f);
        let arm = Rat::from_integer(6.into());
        let c = [cx, cy];
        let fx = |r: Rat| to_fixed(&r, 6);
        let _ = writeln!(
            out,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d35400" stroke-width="2"/>"##,
            fx(&c[0] - &arm),
            fx(&c[1] - &arm),
            fx(&c[0] + &arm),
            fx(&c[1] + &arm)
        );
        let _ = writeln!(
            out,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d35400" stroke-width="2"/>"##,
            fx(&c[0] - &arm),
            fx(&c[1] + &arm),
            fx(&c[0] + &arm),
            fx(&c[1] - &arm)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn example_picture() {
        let q = HPolyhedron::from_rows(2, vec![(RatVec::from_ints(&[-1, 0]), int(0))]).unwrap();
        let s = SDescription::new(q);
        let bx = SearchBox::symmetric(2, 2);
        let f = RatVec::new(vec![rat(1, 4), rat(1, 2)]);
        let body = HPolyhedron::from_rows(
            2,
            vec![(RatVec::from_ints(&[4, 4]), int(4)), (RatVec::from_ints(&[4, -4]), int(0))],
        )
        .unwrap();
        let svg = plot_svg(&Scene {
            s: &s,
            bodies: vec![body],
            search_box: &bx,
            anchor: Some(&f),
        })
        .unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        // 25 lattice dots, 15 of them in S
        assert_eq!(svg.matches("<circle").count(), 25);
        assert_eq!(svg.matches(r##"r="3" fill="#000000""##).count(), 15);
        // conv(S) ∩ box: x in [0, 2]
        assert!(svg.contains("400,800"));
        // anchor at (450, 300) on the canvas
        assert!(svg.contains(r#"x1="444" y1="294""#));
        let same = plot_svg(&Scene {
            s: &s,
            bodies: vec![],
            search_box: &bx,
            anchor: None,
        })
        .unwrap();
        assert_eq!(same.matches("<line").count(), 0);
    }

    #[test]
    fn rejects_other_dimensions() {
        let s = SDescription::all_integers(3);
        let bx = SearchBox::symmetric(3, 1);
        assert!(plot_svg(&Scene {
            s: &s,
            bodies: vec![],
            search_box: &bx,
            anchor: None
        })
        .is_err());
    }
}
