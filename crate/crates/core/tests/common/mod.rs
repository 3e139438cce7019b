#![allow(dead_code)]

use pauli_pt::field::{BiPoly, Fields};
use pauli_pt::pauli::PauliPoly;
use pauli_pt::poly::rational_from_f64;
use std::collections::BTreeMap;

/// Brute-force level set: every grid cell where both `s` and `h − k` change
/// sign seeds a 2D Newton iteration on `(s, h − k)`; converged points closer
/// than `1e-7` are merged. Independent of the univariate reduction.
pub struct Oracle {
    s: BiPoly,
    h: BiPoly,
    sx: BiPoly,
    sy: BiPoly,
    hx: BiPoly,
    hy: BiPoly,
    radius: f64,
}

impl Oracle {
    pub fn new(p: &PauliPoly) -> Self {
        let f = Fields::of(p);
        let (sx, sy) = f.s.partials();
        let (hx, hy) = f.h.partials();
        // Root bound for g − k with |k| ≤ 2, from the float coefficients.
        let c = p.g_poly().approx_coeffs();
        let lead = c.last().expect("non-constant g").norm();
        let mut tail: Vec<f64> = c[..c.len() - 1].iter().map(|a| a.norm()).collect();
        tail[0] += 2.0;
        let radius = 1.0 + tail.iter().fold(0.0_f64, |m, a| m.max(a / lead));
        Oracle {
            s: f.s,
            h: f.h,
            sx,
            sy,
            hx,
            hy,
            radius: radius * 1.01,
        }
    }

    /// `h − k` with the level subtracted exactly, so evaluation near a
    /// multiple root is not swamped by cancellation of the constant term.
    fn shifted_h(&self, k: f64) -> BiPoly {
        let level = BiPoly::from_terms(BTreeMap::from([((0, 0), rational_from_f64(k))]));
        &self.h - &level
    }

    fn newton(&self, hk: &BiPoly, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
        for _ in 0..2000 {
            let f1 = self.s.eval(x, y);
            let f2 = hk.eval(x, y);
            let (a, b) = (self.sx.eval(x, y), self.sy.eval(x, y));
            let (c, d) = (self.hx.eval(x, y), self.hy.eval(x, y));
            let det = a * d - b * c;
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let dx = (d * f1 - b * f2) / det;
            let dy = (a * f2 - c * f1) / det;
            x -= dx;
            y -= dy;
            if !(x.is_finite() && y.is_finite()) || x.hypot(y) > 2.0 * self.radius {
                return None;
            }
            if dx.hypot(dy) <= 1e-15 * x.hypot(y).max(1.0) {
                break;
            }
        }
        let scale_s = self.s.abs_eval(x, y).max(1.0);
        let scale_h = self.h.abs_eval(x, y).max(1.0);
        let ok = self.s.eval(x, y).abs() <= 1e-9 * scale_s && hk.eval(x, y).abs() <= 1e-9 * scale_h;
        ok.then_some((x, y))
    }

    pub fn level_set(&self, k: f64, n: usize) -> Vec<(f64, f64)> {
        let hk = self.shifted_h(k);
        let r = self.radius;
        let step = 2.0 * r / n as f64;
        let node = |i: usize| -r + step * i as f64;
        let mut sv = vec![0.0; (n + 1) * (n + 1)];
        let mut hv = vec![0.0; (n + 1) * (n + 1)];
        for j in 0..=n {
            for i in 0..=n {
                sv[j * (n + 1) + i] = self.s.eval(node(i), node(j));
                hv[j * (n + 1) + i] = hk.eval(node(i), node(j));
            }
        }
        let changes = |v: &[f64], i: usize, j: usize| {
            let c = [
                v[j * (n + 1) + i],
                v[j * (n + 1) + i + 1],
                v[(j + 1) * (n + 1) + i],
                v[(j + 1) * (n + 1) + i + 1],
            ];
            let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            lo <= 0.0 && hi >= 0.0
        };
        let mut found: Vec<(f64, f64)> = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if !(changes(&sv, i, j) && changes(&hv, i, j)) {
                    continue;
                }
                let Some(p) = self.newton(&hk, node(i) + 0.5 * step, node(j) + 0.5 * step) else {
                    continue;
                };
                if !found.iter().any(|q| (p.0 - q.0).hypot(p.1 - q.1) <= 1e-7) {
                    found.push(p);
                }
            }
        }
        found
    }
}

/// Symmetric Hausdorff distance between finite point sets.
pub fn hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let one_way = |a: &[(f64, f64)], b: &[(f64, f64)]| {
        a.iter()
            .map(|p| {
                b.iter()
                    .map(|q| (p.0 - q.0).hypot(p.1 - q.1))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
}
