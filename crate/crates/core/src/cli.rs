//! Command-line front end. Each subcommand writes exactly one document to the
//! given writer.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::conic::{classify_outcome, find_transition, reflection_check};
use crate::contour::{contour_field, default_bbox, intersect_contours, BBox, FieldKind};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::output::{self, num};
use crate::pauli::{PauliPoly, Preset};
use crate::poly::{ExactComplex, Rational, UniPoly};
use crate::pt::{Locus, PtAnalyzer, PtPoint};

#[derive(Debug, Parser)]
#[command(
    name = "pauli-pt",
    version,
    about = "PT-symmetry analysis of 2x2 matrix polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Named preset (P1, P2, P3, Pt1, Pt2, Pt3, Q10)
    #[arg(long, conflicts_with = "components")]
    pub preset: Option<String>,
    /// Component coefficient lists, e.g. "1;0,1;0,0,1;0,0,0,1"
    #[arg(long)]
    pub components: Option<String>,
    /// Point tolerance for PT classification
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in presets
    PresetList {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print g, det, trace and the real fields
    Fields {
        #[command(flatten)]
        input: Input,
    },
    /// Points where s = 0 and h = k
    Locus {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
    },
    /// Zeros of the determinant
    Zeros {
        #[command(flatten)]
        input: Input,
    },
    /// Classify a single point
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
        point: Vec<f64>,
    },
    /// Classify the conic through the locus at level k
    Conic {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
    },
    /// Locate a conic-type transition inside a bracket
    Transition {
        #[command(flatten)]
        input: Input,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        bracket: Vec<f64>,
    },
    /// Check the (x, y) <-> (y, x) correspondence between levels k and -k
    Reflect {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
    },
    /// Trace s = 0 and h = k as polylines
    Contour {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, num_args = 4, value_names = ["XMIN", "XMAX", "YMIN", "YMAX"], allow_hyphen_values = true)]
        bbox: Option<Vec<f64>>,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
    },
}

/// Failure of a CLI invocation, carrying the process exit status.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_numerical() => 3,
            CliError::Lib(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parse one number exactly: integer, fraction `a/b`, or decimal with an
/// optional exponent.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad number `{s}`"));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if t.contains('/') {
        let r = Rational::from_str(t).map_err(|_| bad())?;
        return Ok(r);
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Rational::from_integer(all);
    if scale >= 0 {
        r *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

/// One coefficient: `re`, `re+imi`, `re-imi` or `imi`.
pub fn parse_coefficient(s: &str) -> Result<ExactComplex> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(t)?, Rational::zero()));
    };
    // Split before the sign of the imaginary part, skipping exponent signs.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (parse_rational(&body[..j])?, &body[j..]),
        None => (Rational::zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other)?,
    };
    Ok(Complex::new(re, im))
}

/// Build a matrix polynomial from `c0;c1;c2;c3`, each a comma-separated list
/// of coefficients, lowest degree first.
pub fn parse_components(spec: &str) -> Result<PauliPoly> {
    let parts: Vec<&str> = spec.split(';').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "expected 4 components separated by `;`, found {}",
            parts.len()
        )));
    }
    let mut comps = Vec::with_capacity(4);
    for part in parts {
        let coeffs = part
            .split(',')
            .map(parse_coefficient)
            .collect::<Result<Vec<_>>>()?;
        comps.push(UniPoly::from_coeffs(coeffs));
    }
    let [c0, c1, c2, c3]: [UniPoly; 4] = comps.try_into().expect("four components");
    PauliPoly::from_components(c0, c1, c2, c3)
}

impl Input {
    pub fn poly(&self) -> Result<PauliPoly> {
        match (&self.preset, &self.components) {
            (Some(name), None) => crate::pauli::preset(name),
            (None, Some(spec)) => parse_components(spec),
            _ => Err(Error::InvalidArgument(
                "exactly one of --preset or --components is required".into(),
            )),
        }
    }

    fn analyzer(&self) -> Result<PtAnalyzer> {
        let p = self.poly()?;
        match self.tol {
            Some(t) if !(t.is_finite() && t >= 0.0) => Err(Error::InvalidArgument(format!(
                "tolerance must be nonnegative, got {t}"
            ))),
            Some(t) => Ok(PtAnalyzer::with_tol(&p, t)),
            None => Ok(PtAnalyzer::new(&p)),
        }
    }
}

fn require_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be finite")))
    }
}

fn meta(command: &str, p: &PauliPoly, extra: Value) -> Value {
    let [c0, c1, c2, c3] = p.components();
    let mut m = json!({
        "command": command,
        "polynomial": p.label(),
        "components": [c0.to_string(), c1.to_string(), c2.to_string(), c3.to_string()],
    });
    if let Value::Object(extra) = extra {
        m.as_object_mut().expect("object").extend(extra);
    }
    m
}

fn no_svg(command: &str) -> Error {
    Error::InvalidArgument(format!("`{command}` has no svg output; use json or csv"))
}

fn points_doc(command: &str, meta: Value, points: &[PtPoint], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let pts: Vec<Value> = points.iter().map(output::point_json).collect();
            Ok(output::to_json_string(&output::document(
                meta,
                "points",
                Value::Array(pts),
            )))
        }
        Format::Csv => output::points_csv(points),
        Format::Svg => Err(no_svg(command)),
    }
}

fn result_doc(
    command: &str,
    meta: Value,
    result: Value,
    csv: Vec<(&str, String)>,
    format: Format,
) -> Result<String> {
    match format {
        Format::Json => Ok(output::to_json_string(&output::document(
            meta, "result", result,
        ))),
        Format::Csv => {
            let (header, row): (Vec<&str>, Vec<String>) = csv.into_iter().unzip();
            output::csv_table(&header, [row])
        }
        Format::Svg => Err(no_svg(command)),
    }
}

fn locus_name(locus: &Locus) -> &'static str {
    match locus {
        Locus::Finite(_) => "Finite",
        Locus::WholePlane => "WholePlane",
        Locus::Empty => "Empty",
    }
}

/// Run a parsed command, producing the full output document.
pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::PresetList { format } => {
            let polys: Vec<PauliPoly> = Preset::ALL.iter().map(|p| p.build()).collect();
            match format {
                Format::Json => {
                    let list: Vec<Value> = polys
                        .iter()
                        .map(|p| {
                            let [c0, c1, c2, c3] = p.components();
                            json!({
                                "name": p.label(),
                                "components": [c0.to_string(), c1.to_string(), c2.to_string(), c3.to_string()],
                                "g": p.g_poly().to_string(),
                                "det": p.det_poly().to_string(),
                                "trace": p.trace_poly().to_string(),
                            })
                        })
                        .collect();
                    let doc = output::document(
                        json!({ "command": "preset-list" }),
                        "result",
                        Value::Array(list),
                    );
                    Ok(output::to_json_string(&doc))
                }
                Format::Csv => output::csv_table(
                    &["name", "c0", "c1", "c2", "c3", "g", "det", "trace"],
                    polys.iter().map(|p| {
                        let mut row = vec![p.label()];
                        row.extend(p.components().iter().map(|c| c.to_string()));
                        row.push(p.g_poly().to_string());
                        row.push(p.det_poly().to_string());
                        row.push(p.trace_poly().to_string());
                        row
                    }),
                ),
                Format::Svg => Err(no_svg("preset-list")),
            }
        }
        Command::Fields { input } => {
            let a = input.analyzer()?;
            let f = a.fields();
            let p = a.poly();
            let entries = [
                ("g", p.g_poly().to_string()),
                ("det", p.det_poly().to_string()),
                ("trace", p.trace_poly().to_string()),
                ("s", f.s.to_string()),
                ("h", f.h.to_string()),
                ("h0_re", f.h0_re.to_string()),
                ("h0_im", f.h0_im.to_string()),
                ("det_re", f.det_re.to_string()),
                ("det_im", f.det_im.to_string()),
            ];
            match input.format {
                Format::Json => {
                    let result: serde_json::Map<String, Value> = entries
                        .iter()
                        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                        .collect();
                    let doc = output::document(
                        meta("fields", p, json!({})),
                        "result",
                        Value::Object(result),
                    );
                    Ok(output::to_json_string(&doc))
                }
                Format::Csv => output::csv_table(
                    &["field", "expression"],
                    entries.iter().map(|(k, v)| vec![k.to_string(), v.clone()]),
                ),
                Format::Svg => Err(no_svg("fields")),
            }
        }
        Command::Locus { input, k } => {
            require_finite("k", *k)?;
            let a = input.analyzer()?;
            let locus = a.locus(*k)?;
            let points = locus.finite().map_or(&[][..], |l| &l.points[..]);
            let mut extra =
                json!({ "k": num(*k), "locus": locus_name(&locus), "tol": num(a.tol()) });
            if let Some(l) = locus.finite() {
                extra["total_multiplicity"] = json!(l.total_multiplicity());
                extra["distinct"] = json!(l.distinct_count());
                extra["source"] = json!(l.source);
            }
            points_doc(
                "locus",
                meta("locus", a.poly(), extra),
                points,
                input.format,
            )
        }
        Command::Zeros { input } => {
            let a = input.analyzer()?;
            let points = a.zeros()?;
            let extra = json!({ "det": a.poly().det_poly().to_string(), "tol": num(a.tol()) });
            points_doc(
                "zeros",
                meta("zeros", a.poly(), extra),
                &points,
                input.format,
            )
        }
        Command::Classify { input, point } => {
            let (x, y) = (point[0], point[1]);
            require_finite("point", x)?;
            require_finite("point", y)?;
            let a = input.analyzer()?;
            let pt = a.classify(x, y);
            let extra = json!({ "tol": num(a.tol()) });
            points_doc(
                "classify",
                meta("classify", a.poly(), extra),
                &[pt],
                input.format,
            )
        }
        Command::Conic { input, k } => {
            require_finite("k", *k)?;
            let a = input.analyzer()?;
            let locus = a.locus(*k)?;
            let class = classify_outcome(&locus)?;
            let distinct = locus.finite().map_or(0, |l| l.distinct_count());
            let mut result = output::class_json(&class);
            result["distinct_points"] = json!(distinct);
            let csv = vec![
                ("k", output::fmt_num(*k)),
                ("kind", class.kind.tag().as_str().to_string()),
                ("params", output::conic_params(&class.kind)),
                ("max_residual", output::fmt_num(class.max_residual)),
                ("distinct_points", distinct.to_string()),
            ];
            let m = meta(
                "conic",
                a.poly(),
                json!({ "k": num(*k), "locus": locus_name(&locus) }),
            );
            result_doc("conic", m, result, csv, input.format)
        }
        Command::Transition { input, bracket } => {
            let (lo, hi) = (bracket[0], bracket[1]);
            require_finite("bracket", lo)?;
            require_finite("bracket", hi)?;
            let p = input.poly()?;
            let t = find_transition(&p, lo, hi)?;
            let csv = vec![
                ("k_star", output::fmt_num(t.k_star)),
                ("lo", output::fmt_num(t.bracket.0)),
                ("hi", output::fmt_num(t.bracket.1)),
                ("kind_below", t.kind_below.as_str().to_string()),
                ("kind_above", t.kind_above.as_str().to_string()),
                ("iterations", t.iterations.to_string()),
            ];
            let m = meta("transition", &p, json!({ "bracket": [num(lo), num(hi)] }));
            result_doc(
                "transition",
                m,
                output::transition_json(&t),
                csv,
                input.format,
            )
        }
        Command::Reflect { input, k } => {
            require_finite("k", *k)?;
            let p = input.poly()?;
            let r = reflection_check(&p, *k)?;
            let csv = vec![
                ("k", output::fmt_num(*k)),
                ("holds", r.holds.to_string()),
                ("max_deviation", output::fmt_num(r.max_deviation)),
            ];
            let m = meta("reflect", &p, json!({ "k": num(*k) }));
            result_doc("reflect", m, output::reflection_json(&r), csv, input.format)
        }
        Command::Contour {
            input,
            k,
            bbox,
            resolution,
        } => {
            require_finite("k", *k)?;
            let a = input.analyzer()?;
            let bbox = match bbox {
                Some(b) => BBox::new(b[0], b[1], b[2], b[3]),
                None => default_bbox(a.poly(), *k),
            };
            let exec = Execution::default();
            let s = contour_field(a.fields(), FieldKind::S, 0.0, bbox, *resolution, exec)?;
            let h = contour_field(a.fields(), FieldKind::H, *k, bbox, *resolution, exec)?;
            let mut crossings = intersect_contours(&s, &h);
            crossings.sort_by(|p, q| {
                p.1.atan2(p.0)
                    .total_cmp(&q.1.atan2(q.0))
                    .then(p.0.hypot(p.1).total_cmp(&q.0.hypot(q.1)))
            });
            match input.format {
                Format::Json => {
                    let m = meta(
                        "contour",
                        a.poly(),
                        json!({ "k": num(*k), "bbox": output::bbox_json(&bbox), "resolution": resolution }),
                    );
                    let mut doc = output::document(
                        m,
                        "polylines",
                        json!([output::contour_json(&s), output::contour_json(&h)]),
                    );
                    doc["intersections"] = Value::Array(
                        crossings
                            .iter()
                            .map(|&(x, y)| json!([num(x), num(y)]))
                            .collect(),
                    );
                    Ok(output::to_json_string(&doc))
                }
                Format::Csv => output::contours_csv(&[s, h]),
                Format::Svg => Ok(output::contours_svg(&[s, h], &bbox)),
            }
        }
    }
}

/// Parse `args` (including the program name) and run the command, writing
/// its document to `out`.
pub fn run<I, T>(args: I, out: &mut impl Write) -> std::result::Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)
        .map_err(|e| CliError::Lib(Error::InvalidArgument(e.to_string())))?;
    let doc = execute(&cli)?;
    out.write_all(doc.as_bytes())?;
    Ok(())
}
