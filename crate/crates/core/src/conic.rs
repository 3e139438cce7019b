//! Conic classification of finite level loci, conic-type transition levels,
//! and the large-level reflection check.
//!
//! Loci of polynomials with real, even `g` are closed under `y → −y` and
//! `z → −z`, so a locus with one off-axis orbit `(±x1, ±y1)` and one axis pair
//! determines a unique axis-aligned conic. Only axis-aligned conics are
//! fitted.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliPoly;
use crate::pt::{Axis, Locus, LocusResult, PtAnalyzer};

/// Residual bound for points on a classified conic.
pub const CONIC_TOL: f64 = 1e-6;
/// Final bracket width of a transition search.
pub const TRANSITION_TOL: f64 = 1e-6;
/// Relative deviation allowed by the reflection check.
pub const REFLECT_TOL: f64 = 1e-6;
/// Relative tolerance for "same radius" and "same coordinate" comparisons.
const SAME_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConicKind {
    Circle { r: f64 },
    EllipseAxisAligned { a: f64, b: f64 },
    HyperbolaXOpening { a: f64, b: f64 },
    HyperbolaYOpening { a: f64, b: f64 },
    TwoLinesThroughOrigin { slope: f64 },
    AxisLine { axis: Axis },
    SinglePoint,
    Empty,
    Unclassified,
}

/// Kind without parameters, for comparing classifications across levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KindTag {
    Circle,
    Ellipse,
    HyperbolaX,
    HyperbolaY,
    TwoLines,
    AxisLineX,
    AxisLineY,
    SinglePoint,
    Empty,
    Unclassified,
}

impl ConicKind {
    pub fn tag(&self) -> KindTag {
        match self {
            ConicKind::Circle { .. } => KindTag::Circle,
            ConicKind::EllipseAxisAligned { .. } => KindTag::Ellipse,
            ConicKind::HyperbolaXOpening { .. } => KindTag::HyperbolaX,
            ConicKind::HyperbolaYOpening { .. } => KindTag::HyperbolaY,
            ConicKind::TwoLinesThroughOrigin { .. } => KindTag::TwoLines,
            ConicKind::AxisLine { axis: Axis::X } => KindTag::AxisLineX,
            ConicKind::AxisLine { axis: Axis::Y } => KindTag::AxisLineY,
            ConicKind::SinglePoint => KindTag::SinglePoint,
            ConicKind::Empty => KindTag::Empty,
            ConicKind::Unclassified => KindTag::Unclassified,
        }
    }

    /// Implicit-equation residual at `(x, y)`; zero on the curve.
    fn residual(&self, x: f64, y: f64) -> f64 {
        let (x2, y2) = (x * x, y * y);
        match *self {
            ConicKind::Circle { r } => ((x2 + y2) / (r * r) - 1.0).abs(),
            ConicKind::EllipseAxisAligned { a, b } => (x2 / (a * a) + y2 / (b * b) - 1.0).abs(),
            ConicKind::HyperbolaXOpening { a, b } => (x2 / (a * a) - y2 / (b * b) - 1.0).abs(),
            ConicKind::HyperbolaYOpening { a, b } => (y2 / (b * b) - x2 / (a * a) - 1.0).abs(),
            ConicKind::TwoLinesThroughOrigin { slope } => {
                let m2 = slope * slope;
                (y2 - m2 * x2).abs() / ((1.0 + m2) * (x2 + y2).max(1.0))
            }
            ConicKind::AxisLine { axis: Axis::X } => y.abs(),
            ConicKind::AxisLine { axis: Axis::Y } => x.abs(),
            ConicKind::SinglePoint | ConicKind::Empty | ConicKind::Unclassified => 0.0,
        }
    }
}

impl KindTag {
    pub fn as_str(self) -> &'static str {
        match self {
            KindTag::Circle => "Circle",
            KindTag::Ellipse => "EllipseAxisAligned",
            KindTag::HyperbolaX => "HyperbolaXOpening",
            KindTag::HyperbolaY => "HyperbolaYOpening",
            KindTag::TwoLines => "TwoLinesThroughOrigin",
            KindTag::AxisLineX => "AxisLineX",
            KindTag::AxisLineY => "AxisLineY",
            KindTag::SinglePoint => "SinglePoint",
            KindTag::Empty => "Empty",
            KindTag::Unclassified => "Unclassified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusClass {
    pub kind: ConicKind,
    pub max_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionResult {
    pub k_star: f64,
    pub bracket: (f64, f64),
    pub kind_below: KindTag,
    pub kind_above: KindTag,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionReport {
    pub holds: bool,
    /// Worst matched distance divided by `k^(1/deg g)`.
    pub max_deviation: f64,
}

fn same(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= SAME_TOL * scale
}

/// The points of a locus sorted into symmetry classes.
struct Layout {
    scale: f64,
    origin: bool,
    x_axis: Vec<f64>,
    y_axis: Vec<f64>,
    off: Vec<(f64, f64)>,
}

impl Layout {
    fn of(points: &[(f64, f64)]) -> Self {
        let scale = points.iter().map(|&(x, y)| x.hypot(y)).fold(1.0, f64::max);
        let mut out = Layout {
            scale,
            origin: false,
            x_axis: Vec::new(),
            y_axis: Vec::new(),
            off: Vec::new(),
        };
        for &(x, y) in points {
            match (x == 0.0, y == 0.0) {
                (true, true) => out.origin = true,
                (false, true) => out.x_axis.push(x.abs()),
                (true, false) => out.y_axis.push(y.abs()),
                (false, false) => out.off.push((x.abs(), y.abs())),
            }
        }
        out
    }

    /// Common value of a list of magnitudes, if they agree.
    fn common(&self, vals: &[f64]) -> Option<f64> {
        let first = *vals.first()?;
        vals.iter()
            .all(|&v| same(v, first, self.scale))
            .then_some(first)
    }

    fn off_representative(&self) -> Option<(f64, f64)> {
        let &(x1, y1) = self.off.first()?;
        self.off
            .iter()
            .all(|&(x, y)| same(x, x1, self.scale) && same(y, y1, self.scale))
            .then_some((x1, y1))
    }
}

fn distinct_points(locus: &LocusResult) -> Vec<(f64, f64)> {
    locus.points.iter().map(|p| (p.x, p.y)).collect()
}

/// `|axis representative| − |off-axis representative|` along the same
/// coordinate, when the locus is one off-axis orbit plus one axis pair.
/// Positive means ellipse, negative means hyperbola.
pub fn psi(locus: &LocusResult) -> Option<f64> {
    let layout = Layout::of(&distinct_points(locus));
    if layout.origin {
        return None;
    }
    let (x1, y1) = layout.off_representative()?;
    match (layout.x_axis.is_empty(), layout.y_axis.is_empty()) {
        (false, true) => Some(layout.common(&layout.x_axis)? - x1),
        (true, false) => Some(layout.common(&layout.y_axis)? - y1),
        _ => None,
    }
}

fn conic_through(layout: &Layout) -> ConicKind {
    let n_axis = layout.x_axis.len() + layout.y_axis.len();
    let Some((x1, y1)) = layout.off_representative() else {
        // Only axis points (and no origin): an ellipse through both pairs.
        if !layout.off.is_empty()
            || layout.origin
            || layout.x_axis.is_empty()
            || layout.y_axis.is_empty()
        {
            return ConicKind::Unclassified;
        }
        return match (layout.common(&layout.x_axis), layout.common(&layout.y_axis)) {
            (Some(a), Some(b)) => ConicKind::EllipseAxisAligned { a, b },
            _ => ConicKind::Unclassified,
        };
    };
    if layout.origin {
        return if n_axis == 0 {
            ConicKind::TwoLinesThroughOrigin { slope: y1 / x1 }
        } else {
            ConicKind::Unclassified
        };
    }
    match (layout.x_axis.is_empty(), layout.y_axis.is_empty()) {
        (false, true) => {
            let Some(a) = layout.common(&layout.x_axis) else {
                return ConicKind::Unclassified;
            };
            if same(a, x1, layout.scale) {
                ConicKind::Unclassified
            } else if a > x1 {
                let b = (y1 * y1 * a * a / (a * a - x1 * x1)).sqrt();
                ConicKind::EllipseAxisAligned { a, b }
            } else {
                let b = (y1 * y1 * a * a / (x1 * x1 - a * a)).sqrt();
                ConicKind::HyperbolaXOpening { a, b }
            }
        }
        (true, false) => {
            let Some(b) = layout.common(&layout.y_axis) else {
                return ConicKind::Unclassified;
            };
            if same(b, y1, layout.scale) {
                ConicKind::Unclassified
            } else if b > y1 {
                let a = (x1 * x1 * b * b / (b * b - y1 * y1)).sqrt();
                ConicKind::EllipseAxisAligned { a, b }
            } else {
                let a = (x1 * x1 * b * b / (y1 * y1 - b * b)).sqrt();
                ConicKind::HyperbolaYOpening { a, b }
            }
        }
        _ => ConicKind::Unclassified,
    }
}

/// Classify the distinct points of a finite locus.
pub fn classify_locus(locus: &LocusResult) -> Result<LocusClass> {
    let points = distinct_points(locus);
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let layout = Layout::of(&points);
    let radii: Vec<f64> = points.iter().map(|&(x, y)| x.hypot(y)).collect();

    let kind = if points.len() == 1 {
        ConicKind::SinglePoint
    } else if points.iter().all(|&(_, y)| y == 0.0) {
        ConicKind::AxisLine { axis: Axis::X }
    } else if points.iter().all(|&(x, _)| x == 0.0) {
        ConicKind::AxisLine { axis: Axis::Y }
    } else if !layout.origin && layout.common(&radii).is_some() {
        ConicKind::Circle { r: radii[0] }
    } else {
        conic_through(&layout)
    };

    let max_residual = if kind == ConicKind::Unclassified {
        // Spread of radii about their mean: how far the set is from one circle.
        let mean = radii.iter().sum::<f64>() / radii.len() as f64;
        radii
            .iter()
            .map(|r| (r - mean).abs() / mean.max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    } else {
        points
            .iter()
            .map(|&(x, y)| kind.residual(x, y))
            .fold(0.0, f64::max)
    };
    Ok(LocusClass { kind, max_residual })
}

/// Classification of a locus outcome, mapping the degenerate markers.
pub fn classify_outcome(locus: &Locus) -> Result<LocusClass> {
    match locus {
        Locus::Finite(l) => classify_locus(l),
        Locus::Empty => Ok(LocusClass {
            kind: ConicKind::Empty,
            max_residual: 0.0,
        }),
        Locus::WholePlane => Ok(LocusClass {
            kind: ConicKind::Unclassified,
            max_residual: 0.0,
        }),
    }
}

/// Which side of a transition a level falls on.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    Psi(bool),
    Kind(KindTag),
}

fn finite_locus(analyzer: &PtAnalyzer, k: f64) -> Result<LocusResult> {
    match analyzer.locus(k)? {
        Locus::Finite(l) => Ok(l),
        _ => Err(Error::InvalidArgument(format!(
            "level {k} does not give a finite locus"
        ))),
    }
}

/// Bisect `[k_lo, k_hi]` for the level where the conic type of the locus
/// changes. Uses the sign of [`psi`] when it is defined at both ends and the
/// classification kind otherwise (for example circle against axis line).
pub fn find_transition(p: &PauliPoly, k_lo: f64, k_hi: f64) -> Result<TransitionResult> {
    let (mut lo, mut hi) = if k_lo <= k_hi {
        (k_lo, k_hi)
    } else {
        (k_hi, k_lo)
    };
    let analyzer = PtAnalyzer::new(p);
    let lo_locus = finite_locus(&analyzer, lo)?;
    let hi_locus = finite_locus(&analyzer, hi)?;
    let use_psi = psi(&lo_locus).is_some() && psi(&hi_locus).is_some();

    let side_of = |l: &LocusResult| -> Result<Side> {
        if use_psi {
            if let Some(v) = psi(l) {
                return Ok(Side::Psi(v > 0.0));
            }
        }
        Ok(Side::Kind(classify_locus(l)?.kind.tag()))
    };
    let lo_side = side_of(&lo_locus)?;
    if lo_side == side_of(&hi_locus)? {
        return Err(Error::NoBracket { lo, hi });
    }

    let mut iterations = 0;
    while hi - lo > TRANSITION_TOL && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if side_of(&finite_locus(&analyzer, mid)?)? == lo_side {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(TransitionResult {
        k_star: 0.5 * (lo + hi),
        bracket: (lo, hi),
        kind_below: classify_locus(&finite_locus(&analyzer, lo)?)?.kind.tag(),
        kind_above: classify_locus(&finite_locus(&analyzer, hi)?)?.kind.tag(),
        iterations,
    })
}

fn expanded_points(locus: &Locus) -> Vec<Complex64> {
    match locus {
        Locus::Finite(l) => l
            .points
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.z(), p.multiplicity))
            .collect(),
        _ => Vec::new(),
    }
}

/// Check whether `(x, y) → (y, x)` maps the locus at `+k` onto the locus at
/// `−k`, matching points greedily by distance.
pub fn reflection_check(p: &PauliPoly, k: f64) -> Result<ReflectionReport> {
    if k.is_nan() || k <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "reflection check needs k > 0, got {k}"
        )));
    }
    let analyzer = PtAnalyzer::new(p);
    let plus = analyzer.locus(k)?;
    let minus = analyzer.locus(-k)?;
    if plus.finite().is_none() || minus.finite().is_none() {
        let holds = plus == Locus::Empty && minus == Locus::Empty;
        return Ok(ReflectionReport {
            holds,
            max_deviation: if holds { 0.0 } else { f64::INFINITY },
        });
    }

    let reflected: Vec<Complex64> = expanded_points(&plus)
        .into_iter()
        .map(|z| Complex64::new(z.im, z.re))
        .collect();
    let mut targets = expanded_points(&minus);
    if reflected.len() != targets.len() {
        return Ok(ReflectionReport {
            holds: false,
            max_deviation: f64::INFINITY,
        });
    }
    let scale = k
        .powf(1.0 / p.g_poly().degree() as f64)
        .max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for z in reflected {
        let (idx, dist) = targets
            .iter()
            .enumerate()
            .map(|(i, t)| (i, (t - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("equal counts");
        targets.swap_remove(idx);
        worst = worst.max(dist / scale);
    }
    Ok(ReflectionReport {
        holds: worst <= REFLECT_TOL,
        max_deviation: worst,
    })
}
