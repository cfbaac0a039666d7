use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sfree_core::gauge::GaugeFunction;
use sfree_core::io::{BodyFile, InstanceFile};
use sfree_core::rational::{int, rat};
use sfree_core::verifier::verify_validity;
use sfree_core::{
    enumerate_integer_points, HPolyhedron, Rat, RatVec, SDescription, SFreeBody, SearchBox,
};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn rat_vec(n: usize) -> impl Strategy<Value = RatVec> {
    proptest::collection::vec(small_rat(), n).prop_map(RatVec::new)
}

fn int_row() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (proptest::collection::vec(-3i64..=3, 2), -3i64..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Enumeration agrees with a plain scan of the box.
    #[test]
    fn enumeration_matches_scan(rows in proptest::collection::vec(int_row(), 1..4)) {
        let p = HPolyhedron::from_rows(
            2,
            rows.iter().map(|(a, b)| (RatVec::from_ints(a), int(*b))).collect(),
        ).unwrap();
        let bx = SearchBox::symmetric(2, 4);
        let got = enumerate_integer_points(&p, Some(&bx)).unwrap();
        let mut want = Vec::new();
        for x in -4..=4i64 {
            for y in -4..=4i64 {
                if p.contains(&RatVec::from_ints(&[x, y])).unwrap() {
                    want.push(vec![x, y]);
                }
            }
        }
        prop_assert_eq!(got, want);
    }

    /// No feasible `s` on a rational grid beats the reported minimum, and the
    /// reported attaining `s` is feasible.
    #[test]
    fn verifier_minimum_is_not_beaten_on_a_grid(
        rays in proptest::collection::vec(rat_vec(2), 2..=4),
        coeffs in proptest::collection::vec(0i64..=4, 4),
    ) {
        prop_assume!(rays.iter().all(|r| !r.is_zero()));
        let f = RatVec::new(vec![rat(1, 2), rat(1, 3)]);
        let s = SDescription::all_integers(2);
        let bx = SearchBox::symmetric(2, 1);
        let pi: Vec<Rat> = coeffs.iter().take(rays.len()).map(|c| int(*c)).collect();
        let report = verify_validity(&pi, &f, &rays, &s, &bx).unwrap();
        prop_assume!(!report.unbounded_below);
        let Some((x, sv)) = report.attained_at.clone() else {
            return Ok(());
        };
        let v = RatVec::from_ints(&x).sub(&f);
        let combo = rays.iter().zip(sv.iter()).fold(RatVec::zeros(2), |acc, (r, c)| acc.add(&r.scale(c)));
        prop_assert_eq!(combo, v.clone());
        prop_assert!(sv.iter().all(|c| !c.is_negative()));

        // grid over the first m - 2 coordinates, the last two solved exactly
        let m = rays.len();
        let (r1, r2) = (&rays[m - 2], &rays[m - 1]);
        let det = &r1[0] * &r2[1] - &r1[1] * &r2[0];
        prop_assume!(!det.is_zero());
        let steps: Vec<Rat> = (0..=12).map(|k| rat(k, 4)).collect();
        let free = m - 2;
        let mut idx = vec![0usize; free];
        let min = report.minimum_value.clone().unwrap();
        loop {
            let t: Vec<Rat> = idx.iter().map(|&i| steps[i].clone()).collect();
            let mut rest = v.clone();
            for (j, tj) in t.iter().enumerate() {
                rest = rest.sub(&rays[j].scale(tj));
            }
            let a = (&rest[0] * &r2[1] - &rest[1] * &r2[0]) / &det;
            let b = (&r1[0] * &rest[1] - &r1[1] * &rest[0]) / &det;
            if !a.is_negative() && !b.is_negative() {
                let mut full = t.clone();
                full.push(a);
                full.push(b);
                let value: Rat = full.iter().zip(&pi).map(|(s, c)| s * c).sum();
                prop_assert!(value >= min, "grid point {:?} has value {} < {}", full, value, min);
            }
            let mut k = 0;
            while k < free {
                idx[k] += 1;
                if idx[k] < steps.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }

    /// Gauges of random bodies are sublinear.
    #[test]
    fn gauges_are_sublinear(
        rows in proptest::collection::vec(rat_vec(2), 1..5),
        r in rat_vec(2),
        r2 in rat_vec(2),
        l in 1i64..=9,
    ) {
        let g = GaugeFunction::new(RatVec::new(vec![rat(1, 2), rat(1, 2)]), rows).unwrap();
        let lambda = rat(l, 3);
        prop_assert_eq!(g.eval(&r.scale(&lambda)).unwrap(), &lambda * g.eval(&r).unwrap());
        prop_assert!(g.eval(&r.add(&r2)).unwrap() <= g.eval(&r).unwrap() + g.eval(&r2).unwrap());
    }

    /// Canonical files round-trip byte for byte.
    #[test]
    fn formats_round_trip(f in rat_vec(2), rows in proptest::collection::vec(rat_vec(2), 1..4)) {
        let body = BodyFile::Anchored(SFreeBody::new(f.clone(), rows.clone()).unwrap());
        let text = body.emit();
        prop_assert_eq!(BodyFile::parse(&text).unwrap().emit(), text);

        let q = HPolyhedron::from_rows(2, rows.iter().map(|a| (a.clone(), int(1))).collect()).unwrap();
        let inst = InstanceFile {
            n: 2,
            s: SDescription::new(q),
            f,
            rays: rows,
            search_box: Some(SearchBox::symmetric(2, 3)),
        };
        let text = inst.emit();
        let parsed = InstanceFile::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &inst);
        prop_assert_eq!(parsed.emit(), text);
    }
}

#[test]
fn dominating_gauge_stays_valid() {
    // ψ_B <= ψ pointwise; validity of ψ_B in the box implies validity of ψ.
    let q = HPolyhedron::from_rows(2, vec![(RatVec::from_ints(&[-1, 0]), int(0))]).unwrap();
    let s = SDescription::new(q);
    let f = RatVec::new(vec![rat(1, 4), rat(1, 2)]);
    let rays = vec![
        RatVec::new(vec![rat(-1, 4), rat(1, 2)]),
        RatVec::new(vec![rat(-1, 4), rat(-1, 2)]),
        RatVec::new(vec![rat(-1, 2), rat(1, 3)]),
    ];
    let bx = SearchBox::symmetric(2, 5);
    for rows in [[[4, 4], [4, -4]], [[4, 8], [4, -8]]] {
        let g = GaugeFunction::new(f.clone(), rows.iter().map(|r| RatVec::from_ints(r)).collect()).unwrap();
        let pi: Vec<Rat> = rays.iter().map(|r| g.eval(r).unwrap()).collect();
        let report = verify_validity(&pi, &f, &rays, &s, &bx).unwrap();
        assert!(report.valid(), "{rows:?}: {:?}", report.minimum_value);
    }
}
