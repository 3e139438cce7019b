//! PT-symmetry classification of points, level loci and zeros.
//!
//! A 2×2 matrix is PT-symmetric exactly when its characteristic polynomial
//! is real: `Im c0 = 0` and `h_R · h_I = 0`. Along `s = 0` the eigenvalues are
//! `c0 ± √h`, real when `h ≥ 0` (unbroken) and a conjugate pair otherwise
//! (broken).
//!
//! The level locus `{s = 0, h = k}` is the root set of `g(z) − k`, so it is
//! computed with the univariate root finder rather than by intersecting
//! curves in the plane.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::Fields;
use crate::pauli::{principal_sqrt, EigenPair, PauliPoly};
use crate::poly::{exact_real, rational_from_f64, roots, RootSet, UniPoly, CLUSTER_EPS};

fn real_pair(h0: f64, h: f64) -> EigenPair {
    let root = principal_sqrt(Complex64::new(h, 0.0));
    let c0 = Complex64::new(h0, 0.0);
    EigenPair {
        e_minus: c0 - root,
        e_plus: c0 + root,
    }
}

/// Absolute tolerance for the `s = 0` and `Im c0 = 0` tests, scaled at each
/// point by the magnitude of the terms being summed.
pub const POINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PtTag {
    NotPTSymmetric,
    UnbrokenPT,
    BrokenPT,
}

impl PtTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PtTag::NotPTSymmetric => "NotPTSymmetric",
            PtTag::UnbrokenPT => "UnbrokenPT",
            PtTag::BrokenPT => "BrokenPT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtPoint {
    pub x: f64,
    pub y: f64,
    pub s_val: f64,
    pub h_val: f64,
    pub h0_re: f64,
    pub h0_im: f64,
    pub tag: PtTag,
    pub hermitian: bool,
    pub eigenvalues: EigenPair,
    pub multiplicity: usize,
}

impl PtPoint {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryNote {
    /// `g` has real coefficients: closed under `(x, y) → (x, −y)`.
    ConjugateOnly,
    /// `g` is also even: additionally closed under `(x, y) → (−x, −y)`.
    ConjugateAndParity,
    /// Complex coefficients; no symmetry is guaranteed.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocusResult {
    pub k: f64,
    pub points: Vec<PtPoint>,
    pub source: String,
    pub symmetry: SymmetryNote,
}

impl LocusResult {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn distinct_count(&self) -> usize {
        self.points.len()
    }
}

/// Outcome of a level-set computation. A constant `g` makes `s` and `h`
/// constant, so the level set is either the whole plane or empty.
#[derive(Debug, Clone, PartialEq)]
pub enum Locus {
    Finite(LocusResult),
    WholePlane,
    Empty,
}

impl Locus {
    pub fn finite(&self) -> Option<&LocusResult> {
        match self {
            Locus::Finite(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// A matrix polynomial with its fields expanded once, for repeated
/// classification.
#[derive(Debug, Clone)]
pub struct PtAnalyzer {
    poly: PauliPoly,
    fields: Fields,
    tol: f64,
}

impl PtAnalyzer {
    pub fn new(poly: &PauliPoly) -> Self {
        Self::with_tol(poly, POINT_TOL)
    }

    pub fn with_tol(poly: &PauliPoly, tol: f64) -> Self {
        PtAnalyzer {
            poly: poly.clone(),
            fields: Fields::of(poly),
            tol,
        }
    }

    pub fn poly(&self) -> &PauliPoly {
        &self.poly
    }

    pub fn fields(&self) -> &Fields {
        &self.fields
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn classify(&self, x: f64, y: f64) -> PtPoint {
        self.classify_with_multiplicity(x, y, 1)
    }

    fn classify_with_multiplicity(&self, x: f64, y: f64, multiplicity: usize) -> PtPoint {
        let f = &self.fields;
        let tol = self.tol;
        let s_val = f.s.eval(x, y);
        let h_val = f.h.eval(x, y);
        let h0_re = f.h0_re.eval(x, y);
        let h0_im = f.h0_im.eval(x, y);

        let s_tol = tol * f.s.abs_eval(x, y).max(1.0);
        let h_tol = tol * f.h.abs_eval(x, y).max(1.0);
        let h0_tol = tol * f.h0_im.abs_eval(x, y).max(1.0);
        let tag = if h0_im.abs() > h0_tol || s_val.abs() > s_tol {
            PtTag::NotPTSymmetric
        } else if h_val >= -h_tol {
            PtTag::UnbrokenPT
        } else {
            PtTag::BrokenPT
        };

        let z = Complex64::new(x, y);
        let m = self.poly.matrix_at(z);
        let magnitude = m.iter().flatten().map(|e| e.norm()).fold(1.0, f64::max);
        PtPoint {
            x,
            y,
            s_val,
            h_val,
            h0_re,
            h0_im,
            tag,
            hermitian: self.poly.is_hermitian_at(z, tol * magnitude),
            eigenvalues: match tag {
                // The characteristic polynomial is real here; use the real
                // invariants so round-off cannot flip the square-root branch.
                PtTag::UnbrokenPT => real_pair(h0_re, h_val.max(0.0)),
                PtTag::BrokenPT => real_pair(h0_re, h_val),
                PtTag::NotPTSymmetric => self.poly.eigenvalues_at(z),
            },
            multiplicity,
        }
    }

    fn classify_roots(&self, set: &RootSet) -> Vec<PtPoint> {
        let mut points: Vec<PtPoint> = set
            .roots
            .iter()
            .map(|r| {
                let (x, y) = snap(r.location);
                self.classify_with_multiplicity(x, y, r.multiplicity)
            })
            .collect();
        canonical_sort(&mut points);
        points
    }

    pub fn locus(&self, k: f64) -> Result<Locus> {
        let g = self.poly.g_poly();
        if g.is_constant() {
            let level = UniPoly::constant(exact_real(rational_from_f64(k)));
            return Ok(if *g == level || (g.is_zero() && k == 0.0) {
                Locus::WholePlane
            } else {
                Locus::Empty
            });
        }
        let set = roots(&g.sub_level(k))?;
        Ok(Locus::Finite(LocusResult {
            k,
            points: self.classify_roots(&set),
            source: self.poly.label(),
            symmetry: symmetry_of(g),
        }))
    }

    pub fn zeros(&self) -> Result<Vec<PtPoint>> {
        let det = self.poly.det_poly();
        if det.is_constant() {
            return Err(Error::ConstantDeterminant);
        }
        Ok(self.classify_roots(&roots(det)?))
    }

    pub fn axis_scan(
        &self,
        axis: Axis,
        lo: f64,
        hi: f64,
        n: usize,
        exec: Execution,
    ) -> Result<Vec<PtPoint>> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "axis scan needs at least 2 samples, got {n}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidArgument("scan range must be finite".into()));
        }
        let step = (hi - lo) / (n - 1) as f64;
        Ok(exec.map_range(n, |i| {
            let t = if i == n - 1 { hi } else { lo + step * i as f64 };
            match axis {
                Axis::X => self.classify(t, 0.0),
                Axis::Y => self.classify(0.0, t),
            }
        }))
    }

    /// Loci at many levels; the output is in the order of `levels`.
    pub fn locus_sweep(&self, levels: &[f64], exec: Execution) -> Vec<Result<Locus>> {
        exec.map_slice(levels, |&k| self.locus(k))
    }
}

fn symmetry_of(g: &UniPoly) -> SymmetryNote {
    match (g.has_real_coeffs(), g.is_even()) {
        (true, true) => SymmetryNote::ConjugateAndParity,
        (true, false) => SymmetryNote::ConjugateOnly,
        _ => SymmetryNote::None,
    }
}

/// Coordinates within `CLUSTER_EPS` (relative) of an axis are set to zero.
fn snap(z: Complex64) -> (f64, f64) {
    let eps = CLUSTER_EPS * z.norm().max(1.0);
    let fix = |v: f64| if v.abs() < eps { 0.0 } else { v };
    (fix(z.re), fix(z.im))
}

/// Sort by polar angle, then radius; ties by multiplicity descending.
pub fn canonical_sort(points: &mut [PtPoint]) {
    points.sort_by(|a, b| canonical_cmp((a.x, a.y, a.multiplicity), (b.x, b.y, b.multiplicity)));
}

pub(crate) fn canonical_cmp(a: (f64, f64, usize), b: (f64, f64, usize)) -> Ordering {
    let key = |(x, y, _): (f64, f64, usize)| (y.atan2(x), x.hypot(y));
    let (ta, ra) = key(a);
    let (tb, rb) = key(b);
    ta.total_cmp(&tb)
        .then(ra.total_cmp(&rb))
        .then(b.2.cmp(&a.2))
}

pub fn classify_point(p: &PauliPoly, x: f64, y: f64, tol: f64) -> PtPoint {
    PtAnalyzer::with_tol(p, tol).classify(x, y)
}

pub fn pt_locus_at_level(p: &PauliPoly, k: f64) -> Result<Locus> {
    PtAnalyzer::new(p).locus(k)
}

pub fn zeros(p: &PauliPoly) -> Result<Vec<PtPoint>> {
    PtAnalyzer::new(p).zeros()
}

pub fn axis_scan(p: &PauliPoly, axis: Axis, lo: f64, hi: f64, n: usize) -> Result<Vec<PtPoint>> {
    PtAnalyzer::new(p).axis_scan(axis, lo, hi, n, Execution::default())
}
