//! Fixed inputs for the benchmarks.

use sfree_core::rational::rat;
use sfree_core::{HPolyhedron, RatVec, SDescription, SFreeBody, SearchBox};

/// `S = {x : x1 >= 0} ∩ Z^2`.
pub fn halfplane() -> SDescription {
    SDescription::new(
        HPolyhedron::from_rows(2, vec![(RatVec::from_ints(&[-1, 0]), rat(0, 1))]).unwrap(),
    )
}

pub fn anchor() -> RatVec {
    RatVec::new(vec![rat(1, 4), rat(1, 2)])
}

/// The wedge with rows (4, 8) and (4, -8) around `(1/4, 1/2)`.
pub fn wedge() -> SFreeBody {
    SFreeBody::new(
        anchor(),
        vec![RatVec::from_ints(&[4, 8]), RatVec::from_ints(&[4, -8])],
    )
    .unwrap()
}

pub fn rays() -> Vec<RatVec> {
    vec![
        RatVec::new(vec![rat(-1, 4), rat(1, 2)]),
        RatVec::new(vec![rat(-1, 4), rat(-1, 2)]),
        RatVec::new(vec![rat(1, 3), rat(1, 5)]),
    ]
}

/// Cross-polytope `|x1| + |x2| + |x3| <= r`.
pub fn octahedron(r: i64) -> HPolyhedron {
    let mut rows = Vec::new();
    for s in 0..8 {
        let a: Vec<i64> = (0..3).map(|i| if s >> i & 1 == 1 { -1 } else { 1 }).collect();
        rows.push((RatVec::from_ints(&a), rat(r, 1)));
    }
    HPolyhedron::from_rows(3, rows).unwrap()
}

pub fn square_box(h: i64) -> SearchBox {
    SearchBox::symmetric(2, h)
}
