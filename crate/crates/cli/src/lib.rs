//! `sfree` command-line surface. Every subcommand prints one JSON report on
//! standard output; `--out` additionally writes the primary artifact (body
//! file, coefficient list, generator list, companion set or SVG) to a file.
//!
//! Exit status: 0 on success, 1 on a negative verdict (not S-free, not
//! maximal, invalid cut), 2 on input errors.

mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sfree_core::cutgen::{generate_cut, TableauInstance};
use sfree_core::gauge::{polar, GaugeFunction};
use sfree_core::io::{polyhedron_json, to_canonical_json, vec_strs, BodyFile, InstanceFile};
use sfree_core::sfree::{
    is_maximal_halfspace, is_maximal_s_free, tighten_lattice, tilt_to_maximal,
    SFreeBody, Verdict,
};
use sfree_core::svg::{plot_svg, Scene};
use sfree_core::verifier::verify_validity;
use sfree_core::{Error, HPolyhedron, SearchBox};

#[derive(Parser, Debug)]
#[command(name = "sfree", version, about = "Maximal S-free polyhedra and their cuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Instance file: S, f, rays and an optional box.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Search box as "x1lo x1hi x2lo x2hi ...".
    #[arg(long = "box", value_name = "BOUNDS", allow_hyphen_values = true)]
    bounds: Option<String>,
    /// Write the primary artifact to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include the step-by-step trace in the report.
    #[arg(long)]
    trace: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S-freeness and maximality of a body.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        body: PathBuf,
    },
    /// Tilt facets until the body is maximal S-free.
    Maximalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        body: PathBuf,
    },
    /// Cut coefficients of a maximal body (default start: a split).
    Cut {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        body: Option<PathBuf>,
    },
    /// Brute-force validity of the cut induced by a body.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        body: PathBuf,
    },
    /// Polar of the body translated to its anchor.
    Polar {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        body: PathBuf,
    },
    /// Lattice-free companion set of an S-free body.
    Tighten {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        body: PathBuf,
    },
    /// SVG picture of S, the bodies and the anchor (n = 2).
    Plot {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        body: Vec<PathBuf>,
    },
}

/// Input problems, reported with exit status 2.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult<T> = std::result::Result<T, InputError>;

struct Outcome {
    report: Option<Value>,
    negative: bool,
    artifact: Option<String>,
}

fn read(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_instance(path: Option<&Path>) -> CmdResult<InstanceFile> {
    let path = path.ok_or_else(|| InputError("--instance is required".into()))?;
    InstanceFile::parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_body(path: &Path) -> CmdResult<BodyFile> {
    BodyFile::parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn anchored(body: BodyFile, path: &Path) -> CmdResult<SFreeBody> {
    match body {
        BodyFile::Anchored(b) => Ok(b),
        BodyFile::HalfSpace(_) => Err(InputError(format!(
            "{}: this command needs a body with f and rows",
            path.display()
        ))),
    }
}

fn parse_box(text: &str, n: usize) -> CmdResult<SearchBox> {
    let mut values = Vec::new();
    for (i, tok) in text.split_whitespace().enumerate() {
        let v: i64 = tok.parse().map_err(|_| {
            InputError(format!("--box: entry {i} ({tok:?}) is not an integer"))
        })?;
        values.push(v);
    }
    if values.len() != 2 * n {
        return Err(InputError(format!(
            "--box: expected {} integers for dimension {n}, found {}",
            2 * n,
            values.len()
        )));
    }
    let lower = values.iter().step_by(2).copied().collect();
    let upper = values.iter().skip(1).step_by(2).copied().collect();
    SearchBox::new(lower, upper).map_err(|e| InputError(format!("--box: {e}")))
}

/// `--box`, else the instance box, else a box derived from `region`.
fn resolve_box(
    common: &Common,
    inst: &InstanceFile,
    region: &HPolyhedron,
    warnings: &mut Vec<String>,
) -> CmdResult<SearchBox> {
    if let Some(text) = &common.bounds {
        return parse_box(text, inst.n);
    }
    if let Some(b) = &inst.search_box {
        return Ok(b.clone());
    }
    let (b, warning) = SearchBox::default_for(region);
    warnings.extend(warning);
    Ok(b)
}

fn check_dim(found: usize, expected: usize, what: &str) -> CmdResult<()> {
    if found != expected {
        return Err(InputError(format!(
            "{what} has dimension {found}, instance has dimension {expected}"
        )));
    }
    Ok(())
}

fn check(common: &Common, body_path: &Path) -> CmdResult<Outcome> {
    let inst = load_instance(common.instance.as_deref())?;
    let body = load_body(body_path)?;
    check_dim(body.dim(), inst.n, "body")?;
    let region = body.to_polyhedron()?.intersect(inst.s.q())?;
    let mut warnings = Vec::new();
    let bx = resolve_box(common, &inst, &region, &mut warnings)?;
    let rep = match &body {
        BodyFile::Anchored(b) => is_maximal_s_free(b, &inst.s, &bx)?,
        BodyFile::HalfSpace(h) => is_maximal_halfspace(h, &inst.s, &bx)?,
    };
    let s_free = rep.violating_point.is_none();
    let mut out = report::maximality(&rep);
    out["command"] = json!("check");
    out["s_free"] = json!(s_free);
    out["witness"] = json!(rep.violating_point);
    out["warnings"] = json!(warnings);
    Ok(Outcome {
        report: Some(out),
        negative: !s_free || rep.verdict == Verdict::NotMaximal,
        artifact: None,
    })
}

fn not_s_free(command: &str, witness: Vec<i64>, bx: &SearchBox) -> Outcome {
    Outcome {
        report: Some(json!({
            "command": command,
            "box": report::search_box(bx),
            "s_free": false,
            "witness": witness,
        })),
        negative: true,
        artifact: None,
    }
}

fn maximalize(common: &Common, body_path: &Path) -> CmdResult<Outcome> {
    let inst = load_instance(common.instance.as_deref())?;
    let body = anchored(load_body(body_path)?, body_path)?;
    check_dim(body.dim(), inst.n, "body")?;
    let region = body.to_polyhedron().intersect(inst.s.q())?;
    let mut warnings = Vec::new();
    let bx = resolve_box(common, &inst, &region, &mut warnings)?;
    let outcome = match tilt_to_maximal(&body, &inst.s, &bx) {
        Err(Error::NotSFree { witness }) => return Ok(not_s_free("maximalize", witness, &bx)),
        other => other?,
    };
    let mut out = report::maximality(&outcome.report);
    out["command"] = json!("maximalize");
    out["body"] = report::body(&outcome.body);
    out["complete"] = json!(outcome.complete);
    out["warnings"] = json!(warnings);
    if common.trace {
        out["trace"] = serde_json::to_value(&outcome.steps).expect("serializable trace");
    }
    Ok(Outcome {
        report: Some(out),
        negative: outcome.report.verdict == Verdict::NotMaximal,
        artifact: Some(BodyFile::Anchored(outcome.body).emit()),
    })
}

fn cut(common: &Common, body_path: Option<&Path>) -> CmdResult<Outcome> {
    let inst = load_instance(common.instance.as_deref())?;
    let tableau = TableauInstance::new(inst.f.clone(), inst.rays.clone(), inst.s.clone())?;
    let initial = match body_path {
        Some(p) => {
            let b = anchored(load_body(p)?, p)?;
            check_dim(b.dim(), inst.n, "body")?;
            Some(b)
        }
        None => None,
    };
    let start = initial
        .clone()
        .unwrap_or_else(|| sfree_core::cutgen::default_initial_body(&tableau));
    let region = start.to_polyhedron().intersect(inst.s.q())?;
    let mut warnings = Vec::new();
    let bx = resolve_box(common, &inst, &region, &mut warnings)?;
    let result = match generate_cut(&tableau, initial.as_ref(), &bx) {
        Err(Error::NotSFree { witness }) => return Ok(not_s_free("cut", witness, &bx)),
        other => other?,
    };
    let coefficients: Vec<String> = result.coefficients.iter().map(sfree_core::rational::fmt_rat).collect();
    let mut out = report::maximality(&result.maximality);
    out["command"] = json!("cut");
    out["coefficients"] = json!(coefficients);
    out["body"] = report::body(&result.body);
    out["warnings"] = json!(warnings);
    if common.trace {
        out["trace"] = serde_json::to_value(&result.trace).expect("serializable trace");
    }
    Ok(Outcome {
        report: Some(out),
        negative: false,
        artifact: Some(to_canonical_json(&json!({ "coefficients": coefficients }))),
    })
}

fn verify(common: &Common, body_path: &Path) -> CmdResult<Outcome> {
    let inst = load_instance(common.instance.as_deref())?;
    let body = anchored(load_body(body_path)?, body_path)?;
    check_dim(body.dim(), inst.n, "body")?;
    if body.f() != &inst.f {
        return Err(Error::AnchorMismatch.into());
    }
    let mut warnings = Vec::new();
    let bx = resolve_box(common, &inst, inst.s.q(), &mut warnings)?;
    let psi = GaugeFunction::of_body(&body);
    let coefficients = inst
        .rays
        .iter()
        .map(|r| psi.eval(r))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = verify_validity(&coefficients, &inst.f, &inst.rays, &inst.s, &bx)?;
    let mut out = report::validity(&rep);
    out["command"] = json!("verify");
    out["coefficients"] = json!(coefficients.iter().map(sfree_core::rational::fmt_rat).collect::<Vec<_>>());
    out["warnings"] = json!(warnings);
    Ok(Outcome {
        report: Some(out),
        negative: !rep.valid(),
        artifact: None,
    })
}

fn polar_cmd(body_path: &Path) -> CmdResult<Outcome> {
    let body = anchored(load_body(body_path)?, body_path)?;
    let k = polar(body.rows())?;
    let mut points = vec![vec_strs(&sfree_core::RatVec::zeros(k.dim()))];
    points.extend(k.generators().iter().map(vec_strs));
    let out = json!({
        "command": "polar",
        "generators": points,
        "inequalities": polyhedron_json(&k.inequalities()),
    });
    Ok(Outcome {
        artifact: Some(to_canonical_json(&json!({ "generators": points }))),
        report: Some(out),
        negative: false,
    })
}

fn tighten(common: &Common, body_path: &Path) -> CmdResult<Outcome> {
    let inst = load_instance(common.instance.as_deref())?;
    let body = anchored(load_body(body_path)?, body_path)?;
    check_dim(body.dim(), inst.n, "body")?;
    let region = body.to_polyhedron().intersect(inst.s.q())?;
    let mut warnings = Vec::new();
    let bx = resolve_box(common, &inst, &region, &mut warnings)?;
    let k = match tighten_lattice(&body, &inst.s, &bx) {
        Err(Error::NotSFree { witness }) => return Ok(not_s_free("tighten", witness, &bx)),
        other => other?,
    };
    let set = polyhedron_json(&k.polyhedron);
    let mut out = json!({
        "command": "tighten",
        "box": report::search_box(&k.box_used),
        "companion": set,
        "body_rows": k.body_rows,
        "shell_rows": k.shell_rows,
        "warnings": warnings,
    });
    if common.trace {
        out["trace"] = serde_json::to_value(&k.steps).expect("serializable trace");
    }
    Ok(Outcome {
        report: Some(out),
        negative: false,
        artifact: Some(to_canonical_json(&set)),
    })
}

fn plot(common: &Common, body_paths: &[PathBuf]) -> CmdResult<Outcome> {
    let inst = load_instance(common.instance.as_deref())?;
    let mut bodies = Vec::new();
    for p in body_paths {
        let b = load_body(p)?;
        check_dim(b.dim(), inst.n, "body")?;
        bodies.push(b.to_polyhedron()?);
    }
    let region = match bodies.first() {
        Some(b) => b.intersect(inst.s.q())?,
        None => inst.s.q().clone(),
    };
    let mut warnings = Vec::new();
    let bx = resolve_box(common, &inst, &region, &mut warnings)?;
    let svg = plot_svg(&Scene {
        s: &inst.s,
        bodies,
        search_box: &bx,
        anchor: Some(&inst.f),
    })?;
    let report = common.out.as_ref().map(|path| {
        json!({
            "command": "plot",
            "box": report::search_box(&bx),
            "out": path.display().to_string(),
            "warnings": warnings,
        })
    });
    Ok(Outcome {
        report,
        negative: false,
        artifact: Some(svg),
    })
}

fn dispatch(cli: &Cli) -> CmdResult<(Outcome, Option<&Path>)> {
    let (outcome, common) = match &cli.command {
        Command::Check { common, body } => (check(common, body)?, common),
        Command::Maximalize { common, body } => (maximalize(common, body)?, common),
        Command::Cut { common, body } => (cut(common, body.as_deref())?, common),
        Command::Verify { common, body } => (verify(common, body)?, common),
        Command::Polar { common, body } => (polar_cmd(body)?, common),
        Command::Tighten { common, body } => (tighten(common, body)?, common),
        Command::Plot { common, body } => (plot(common, body)?, common),
    };
    Ok((outcome, common.out.as_deref()))
}

/// Parse `args` (including the program name), run the command and return
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (outcome, out_path) = match dispatch(&cli) {
        Ok(x) => x,
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    match (out_path, &outcome.artifact) {
        (Some(path), Some(text)) => {
            if let Err(e) = std::fs::write(path, text) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 2;
            }
        }
        (None, Some(text)) if outcome.report.is_none() => {
            let _ = stdout.write_all(text.as_bytes());
        }
        _ => {}
    }
    if let Some(rep) = &outcome.report {
        let _ = stdout.write_all(to_canonical_json(rep).as_bytes());
    }
    if outcome.negative {
        1
    } else {
        0
    }
}
