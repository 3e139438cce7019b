//! Serialization of analysis results as JSON, CSV and SVG.
//!
//! All floats go through [`round_sig`] so output is stable across platforms
//! and byte-identical between runs.

use serde_json::{json, Map, Value};

use crate::conic::{ConicKind, LocusClass, ReflectionReport, TransitionResult};
use crate::contour::{BBox, ContourSet, FieldKind};
use crate::error::{Error, Result};
use crate::pt::{Axis, PtPoint};

pub const SIG_DIGITS: usize = 9;

/// Round to [`SIG_DIGITS`] significant digits; `-0` becomes `0`.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    let r: f64 = format!("{:.*e}", SIG_DIGITS - 1, v).parse().unwrap_or(v);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn fmt_num(v: f64) -> String {
    let r = round_sig(v);
    if r == 0.0 {
        "0".to_string()
    } else if !r.is_finite() || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(round_sig(v)).map_or(Value::Null, Value::Number)
}

pub fn to_json_string(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn document(meta: Value, key: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("meta".into(), meta);
    m.insert(key.into(), body);
    Value::Object(m)
}

pub fn point_json(p: &PtPoint) -> Value {
    json!({
        "x": num(p.x),
        "y": num(p.y),
        "multiplicity": p.multiplicity,
        "tag": p.tag.as_str(),
        "s": num(p.s_val),
        "h": num(p.h_val),
        "h0": [num(p.h0_re), num(p.h0_im)],
        "hermitian": p.hermitian,
        "e_minus": [num(p.eigenvalues.e_minus.re), num(p.eigenvalues.e_minus.im)],
        "e_plus": [num(p.eigenvalues.e_plus.re), num(p.eigenvalues.e_plus.im)],
    })
}

pub const POINT_HEADER: [&str; 11] = [
    "x",
    "y",
    "multiplicity",
    "tag",
    "s",
    "h",
    "hermitian",
    "e_minus_re",
    "e_minus_im",
    "e_plus_re",
    "e_plus_im",
];

fn point_record(p: &PtPoint) -> Vec<String> {
    vec![
        fmt_num(p.x),
        fmt_num(p.y),
        p.multiplicity.to_string(),
        p.tag.as_str().to_string(),
        fmt_num(p.s_val),
        fmt_num(p.h_val),
        p.hermitian.to_string(),
        fmt_num(p.eigenvalues.e_minus.re),
        fmt_num(p.eigenvalues.e_minus.im),
        fmt_num(p.eigenvalues.e_plus.re),
        fmt_num(p.eigenvalues.e_plus.im),
    ]
}

/// Write a header row followed by records.
pub fn csv_table<S: AsRef<str>>(
    header: &[S],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(header.iter().map(|h| h.as_ref()))
        .map_err(to_err)?;
    for row in rows {
        w.write_record(&row).map_err(to_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn points_csv(points: &[PtPoint]) -> Result<String> {
    csv_table(&POINT_HEADER, points.iter().map(point_record))
}

pub fn conic_json(kind: &ConicKind) -> Value {
    let tag = kind.tag().as_str();
    let params = match *kind {
        ConicKind::Circle { r } => json!({ "r": num(r) }),
        ConicKind::EllipseAxisAligned { a, b }
        | ConicKind::HyperbolaXOpening { a, b }
        | ConicKind::HyperbolaYOpening { a, b } => json!({ "a": num(a), "b": num(b) }),
        ConicKind::TwoLinesThroughOrigin { slope } => json!({ "slope": num(slope) }),
        ConicKind::AxisLine { axis } => json!({ "axis": axis_name(axis) }),
        ConicKind::SinglePoint | ConicKind::Empty | ConicKind::Unclassified => json!({}),
    };
    json!({ "kind": tag, "params": params })
}

pub fn axis_name(axis: Axis) -> &'static str {
    match axis {
        Axis::X => "X",
        Axis::Y => "Y",
    }
}

pub fn class_json(class: &LocusClass) -> Value {
    let mut v = conic_json(&class.kind);
    v["max_residual"] = num(class.max_residual);
    v
}

/// Conic parameters flattened to `name=value` pairs for CSV output.
pub fn conic_params(kind: &ConicKind) -> String {
    match *kind {
        ConicKind::Circle { r } => format!("r={}", fmt_num(r)),
        ConicKind::EllipseAxisAligned { a, b }
        | ConicKind::HyperbolaXOpening { a, b }
        | ConicKind::HyperbolaYOpening { a, b } => format!("a={} b={}", fmt_num(a), fmt_num(b)),
        ConicKind::TwoLinesThroughOrigin { slope } => format!("slope={}", fmt_num(slope)),
        ConicKind::AxisLine { axis } => format!("axis={}", axis_name(axis)),
        _ => String::new(),
    }
}

pub fn transition_json(t: &TransitionResult) -> Value {
    json!({
        "k_star": num(t.k_star),
        "bracket": [num(t.bracket.0), num(t.bracket.1)],
        "kind_below": t.kind_below.as_str(),
        "kind_above": t.kind_above.as_str(),
        "iterations": t.iterations,
    })
}

pub fn reflection_json(r: &ReflectionReport) -> Value {
    json!({ "holds": r.holds, "max_deviation": num(r.max_deviation) })
}

pub fn bbox_json(b: &BBox) -> Value {
    json!([num(b.xmin), num(b.xmax), num(b.ymin), num(b.ymax)])
}

pub fn contour_json(set: &ContourSet) -> Value {
    let lines: Vec<Value> = set
        .polylines
        .iter()
        .map(|l| Value::Array(l.iter().map(|&(x, y)| json!([num(x), num(y)])).collect()))
        .collect();
    json!({
        "field": set.field.map_or("custom", FieldKind::as_str),
        "level": num(set.level),
        "lines": lines,
    })
}

pub fn contours_csv(sets: &[ContourSet]) -> Result<String> {
    let mut rows = Vec::new();
    for set in sets {
        let field = set.field.map_or("custom", FieldKind::as_str);
        for (li, line) in set.polylines.iter().enumerate() {
            for (vi, &(x, y)) in line.iter().enumerate() {
                rows.push(vec![
                    field.to_string(),
                    fmt_num(set.level),
                    li.to_string(),
                    vi.to_string(),
                    fmt_num(x),
                    fmt_num(y),
                ]);
            }
        }
    }
    csv_table(&["field", "level", "polyline", "vertex", "x", "y"], rows)
}

/// Polylines as SVG. The y axis is flipped so the picture reads with `y`
/// pointing up; the view box spans exactly the bounding box.
pub fn contours_svg(sets: &[ContourSet], bbox: &BBox) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt_num(bbox.xmin),
        fmt_num(-bbox.ymax),
        fmt_num(bbox.width()),
        fmt_num(bbox.height())
    ));
    s.push_str(
        "<style>.s-curve{fill:none;stroke:#1f77b4;vector-effect:non-scaling-stroke}\
.h-curve{fill:none;stroke:#d62728;vector-effect:non-scaling-stroke}</style>\n",
    );
    for set in sets {
        let class = if set.field == Some(FieldKind::S) {
            "s-curve"
        } else {
            "h-curve"
        };
        for line in &set.polylines {
            let pts: Vec<String> = line
                .iter()
                .map(|&(x, y)| format!("{},{}", fmt_num(x), fmt_num(-y)))
                .collect();
            s.push_str(&format!(
                "<polyline class=\"{class}\" points=\"{}\"/>\n",
                pts.join(" ")
            ));
        }
    }
    s.push_str("</svg>\n");
    s
}
