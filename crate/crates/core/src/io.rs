//! Text formats: instance files, body files and the JSON helpers shared by
//! reports. Rationals are always strings (`"p/q"` or `"p"`), matrices are
//! row-major nested arrays, and keys are emitted in sorted order so that
//! canonical files round-trip byte for byte.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{SDescription, SearchBox};
use crate::linalg::{RatMat, RatVec};
use crate::polyhedron::HPolyhedron;
use crate::rational::{fmt_rat, parse_rat, Rat};
use crate::sfree::{HalfSpace, SFreeBody};

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

pub fn ser_vec<S: Serializer>(v: &RatVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rat))
}

pub fn rat_str(r: &Rat) -> String {
    fmt_rat(r)
}

pub fn vec_strs(v: &RatVec) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_scalar(s: &str, path: &str) -> Result<Rat> {
    parse_rat(s).map_err(|e| match e {
        Error::Parse { message, .. } => parse_err(path, message),
        other => other,
    })
}

fn parse_vec(v: &[String], path: &str, n: usize) -> Result<RatVec> {
    if v.len() != n {
        return Err(parse_err(
            path,
            format!("expected {n} entries, found {}", v.len()),
        ));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_scalar(s, &format!("{path}[{i}]")))
        .collect()
}

fn parse_rows(rows: &[Vec<String>], path: &str, n: usize) -> Result<Vec<RatVec>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| parse_vec(r, &format!("{path}[{i}]"), n))
        .collect()
}

fn json_err(e: serde_json::Error) -> Error {
    parse_err(
        &format!("line {} column {}", e.line(), e.column()),
        e.to_string(),
    )
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQ {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    b: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBox {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

// Field order is the sorted key order used on emission.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(rename = "S")]
    s: RawQ,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    bx: Option<RawBox>,
    f: Vec<String>,
    n: usize,
    #[serde(default)]
    rays: Vec<Vec<String>>,
}

/// Parsed instance document: `S` as `Q = {x : A x <= b}`, the point `f`,
/// the rays and an optional search box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub n: usize,
    pub s: SDescription,
    pub f: RatVec,
    pub rays: Vec<RatVec>,
    pub search_box: Option<SearchBox>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text).map_err(json_err)?;
        let n = raw.n;
        let a = parse_rows(&raw.s.a, "S.A", n)?;
        if raw.s.b.len() != a.len() {
            return Err(parse_err(
                "S.b",
                format!("expected {} entries, found {}", a.len(), raw.s.b.len()),
            ));
        }
        let b = parse_vec(&raw.s.b, "S.b", a.len())?;
        let q = HPolyhedron::new(RatMat::new(n, a)?, b)?;
        let f = parse_vec(&raw.f, "f", n)?;
        let rays = parse_rows(&raw.rays, "rays", n)?;
        let search_box = match raw.bx {
            None => None,
            Some(b) => {
                if b.lower.len() != n || b.upper.len() != n {
                    return Err(parse_err("box", format!("bounds must have {n} entries")));
                }
                Some(SearchBox::new(b.lower, b.upper).map_err(|e| parse_err("box", e.to_string()))?)
            }
        };
        Ok(InstanceFile {
            n,
            s: SDescription::new(q),
            f,
            rays,
            search_box,
        })
    }

    pub fn emit(&self) -> String {
        let raw = RawInstance {
            s: RawQ {
                a: self.s.q().a().rows().iter().map(vec_strs).collect(),
                b: vec_strs(self.s.q().b()),
            },
            bx: self.search_box.as_ref().map(|b| RawBox {
                lower: b.lower().to_vec(),
                upper: b.upper().to_vec(),
            }),
            f: vec_strs(&self.f),
            n: self.n,
            rays: self.rays.iter().map(vec_strs).collect(),
        };
        to_canonical_json(&raw)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBody {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    a: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<Vec<String>>>,
}

/// Body document: either anchored rows `{x : a_i (x - f) <= 1}` given by
/// `f` and `rows`, or an anchor-free half-space given by a one-row `A`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BodyFile {
    Anchored(SFreeBody),
    HalfSpace(HalfSpace),
}

impl BodyFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawBody = serde_json::from_str(text).map_err(json_err)?;
        match raw {
            RawBody {
                a: None,
                b: None,
                f: Some(f),
                rows: Some(rows),
            } => {
                let n = f.len();
                let f = parse_vec(&f, "f", n)?;
                let rows = parse_rows(&rows, "rows", n)?;
                Ok(BodyFile::Anchored(
                    SFreeBody::new(f, rows).map_err(|e| parse_err("rows", e.to_string()))?,
                ))
            }
            RawBody {
                a: Some(a),
                b: Some(b),
                f: None,
                rows: None,
            } => {
                if a.len() != 1 || b.len() != 1 {
                    return Err(parse_err("A", "an anchor-free body must be a single half-space"));
                }
                let n = a[0].len();
                let normal = parse_vec(&a[0], "A[0]", n)?;
                let rhs = parse_scalar(&b[0], "b[0]")?;
                Ok(BodyFile::HalfSpace(HalfSpace::new(normal, rhs)))
            }
            _ => Err(parse_err(
                "body",
                "expected either the keys f and rows, or the keys A and b",
            )),
        }
    }

    pub fn emit(&self) -> String {
        let raw = match self {
            BodyFile::Anchored(body) => RawBody {
                a: None,
                b: None,
                f: Some(vec_strs(body.f())),
                rows: Some(body.rows().iter().map(vec_strs).collect()),
            },
            BodyFile::HalfSpace(h) => RawBody {
                a: Some(vec![vec_strs(&h.normal)]),
                b: Some(vec![rat_str(&h.rhs)]),
                f: None,
                rows: None,
            },
        };
        to_canonical_json(&raw)
    }

    pub fn dim(&self) -> usize {
        match self {
            BodyFile::Anchored(b) => b.dim(),
            BodyFile::HalfSpace(h) => h.normal.dim(),
        }
    }

    pub fn to_polyhedron(&self) -> Result<HPolyhedron> {
        match self {
            BodyFile::Anchored(b) => Ok(b.to_polyhedron()),
            BodyFile::HalfSpace(h) => h.to_polyhedron(),
        }
    }
}

/// `{"A": [...], "b": [...]}` for an inequality system.
pub fn polyhedron_json(p: &HPolyhedron) -> serde_json::Value {
    serde_json::json!({
        "A": p.a().rows().iter().map(vec_strs).collect::<Vec<_>>(),
        "b": vec_strs(p.b()),
    })
}

pub fn box_json(b: &SearchBox) -> serde_json::Value {
    serde_json::json!({ "lower": b.lower(), "upper": b.upper() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const EX1: &str = r#"{
  "S": {
    "A": [
      [
        "-1",
        "0"
      ]
    ],
    "b": [
      "0"
    ]
  },
  "box": {
    "lower": [
      -5,
      -5
    ],
    "upper": [
      5,
      5
    ]
  },
  "f": [
    "1/4",
    "1/2"
  ],
  "n": 2,
  "rays": [
    [
      "-1/4",
      "1/2"
    ],
    [
      "-1/4",
      "-1/2"
    ]
  ]
}
"#;

    #[test]
    fn instance_round_trip_is_byte_identical() {
        let inst = InstanceFile::parse(EX1).unwrap();
        assert_eq!(inst.f, RatVec::new(vec![rat(1, 4), rat(1, 2)]));
        assert_eq!(inst.rays.len(), 2);
        assert_eq!(inst.emit(), EX1);
    }

    #[test]
    fn non_canonical_input_is_normalized() {
        let text = r#"{"n": 2, "f": ["2/8", "1/2"], "S": {"A": [["-1", "0"]], "b": ["0"]}}"#;
        let inst = InstanceFile::parse(text).unwrap();
        let canon = inst.emit();
        assert!(canon.contains("\"1/4\""));
        assert_eq!(InstanceFile::parse(&canon).unwrap().emit(), canon);
    }

    #[test]
    fn errors_carry_positions() {
        let err = InstanceFile::parse(r#"{"n": 2, "f": ["1/4", "x"], "S": {"A": [], "b": []}}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "f[1]"), "{err}");
        let err = InstanceFile::parse("{\n  \"n\": 2,\n  oops\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path.starts_with("line 3")), "{err}");
        let err = InstanceFile::parse(r#"{"n": 2, "f": ["1/4"], "S": {"A": [], "b": []}}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "f"));
    }

    #[test]
    fn body_files() {
        let text = "{\n  \"f\": [\n    \"1/4\",\n    \"1/2\"\n  ],\n  \"rows\": [\n    [\n      \"4\",\n      \"8\"\n    ],\n    [\n      \"4\",\n      \"-8\"\n    ]\n  ]\n}\n";
        let body = BodyFile::parse(text).unwrap();
        assert_eq!(body.emit(), text);
        let half = BodyFile::parse(r#"{"A": [["1", "0"]], "b": ["0"]}"#).unwrap();
        assert!(matches!(half, BodyFile::HalfSpace(_)));
        assert_eq!(BodyFile::parse(&half.emit()).unwrap(), half);
        assert!(BodyFile::parse(r#"{"f": ["1/4"]}"#).is_err());
        assert!(BodyFile::parse(r#"{"f": ["1/4"], "rows": []}"#).is_err());
    }
}
