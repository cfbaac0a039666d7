//! JSON shapes shared by several subcommands.

use serde_json::{json, Value};

use sfree_core::io::{box_json, vec_strs};
use sfree_core::rational::fmt_rat;
use sfree_core::sfree::{MaximalityReport, SFreeBody};
use sfree_core::verifier::ValidityReport;
use sfree_core::SearchBox;

pub fn search_box(b: &SearchBox) -> Value {
    box_json(b)
}

pub fn body(b: &SFreeBody) -> Value {
    json!({
        "f": vec_strs(b.f()),
        "rows": b.rows().iter().map(vec_strs).collect::<Vec<_>>(),
    })
}

pub fn maximality(r: &MaximalityReport) -> Value {
    json!({
        "box": search_box(&r.box_used),
        "verdict": r.verdict,
        "facet_certificates": r.facet_certificates,
        "violating_point": r.violating_point,
        "full_dimensional_with_q": r.full_dimensional_with_q,
        "notes": r.notes,
    })
}

pub fn validity(r: &ValidityReport) -> Value {
    let pair = |p: &Option<(Vec<i64>, sfree_core::RatVec)>| {
        p.as_ref()
            .map(|(x, s)| json!({ "x": x, "s": vec_strs(s) }))
            .unwrap_or(Value::Null)
    };
    json!({
        "box": search_box(&r.box_used),
        "valid": r.valid(),
        "minimum_value": r.minimum_value.as_ref().map(fmt_rat),
        "attained_at": pair(&r.attained_at),
        "unbounded_below": r.unbounded_below,
        "unbounded_witness": pair(&r.unbounded_witness),
        "points_checked": r.points_checked,
        "reachable_points": r.reachable_points,
        "unreachable_points": r.unreachable_points,
    })
}
