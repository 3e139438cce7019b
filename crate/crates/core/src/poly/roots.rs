//! Complete complex root finding.
//!
//! Multiplicities come from an exact square-free decomposition; each
//! square-free factor is then solved with Aberth–Ehrlich simultaneous
//! iteration on a rescaled copy whose roots have modulus of order one.

use num_complex::Complex64;
use num_traits::Zero;

use super::{square_free_decomposition, UniPoly};
use crate::error::{Error, Result};

/// Relative residual bound every returned root must satisfy.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Roots closer than this (relative to `max(1, |z|)`) are merged.
pub const CLUSTER_EPS: f64 = 1e-8;
/// Iteration budget for the simultaneous iteration.
pub const MAX_SWEEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub location: Complex64,
    pub multiplicity: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub total_multiplicity: usize,
}

impl RootSet {
    /// Every root repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.location, r.multiplicity))
            .collect()
    }
}

/// Radius `1 + max_{j<n} |a_j| / |a_n|` enclosing every root.
pub fn cauchy_bound(p: &UniPoly) -> Result<f64> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let c = p.approx_coeffs();
    let lead = c[c.len() - 1].norm();
    let max_lower = c[..c.len() - 1]
        .iter()
        .map(|a| a.norm())
        .fold(0.0, f64::max);
    Ok(1.0 + max_lower / lead)
}

/// All roots of `p` with multiplicities.
pub fn roots(p: &UniPoly) -> Result<RootSet> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut found: Vec<(Complex64, usize)> = Vec::with_capacity(p.degree());
    for (factor, mult) in square_free_decomposition(p) {
        for z in simple_roots(factor.approx_coeffs()) {
            found.push((z, mult));
        }
    }

    let merged = merge_clusters(found);
    let scale = p.max_coeff_abs();
    let n = p.degree() as i32;
    let mut roots = Vec::with_capacity(merged.len());
    let mut worst = 0.0f64;
    for (z, m) in merged {
        let residual = p.eval(z).norm() / (scale * z.norm().max(1.0).powi(n));
        worst = worst.max(residual);
        roots.push(Root {
            location: z,
            multiplicity: m,
            residual,
        });
    }
    if worst.is_nan() || worst > RESIDUAL_TOL {
        return Err(Error::NonConvergence { residual: worst });
    }
    let total_multiplicity = roots.iter().map(|r| r.multiplicity).sum();
    Ok(RootSet {
        roots,
        total_multiplicity,
    })
}

fn merge_clusters(found: Vec<(Complex64, usize)>) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::with_capacity(found.len());
    for (z, m) in found {
        let hit = clusters
            .iter_mut()
            .find(|(c, _)| (*c - z).norm() < CLUSTER_EPS * z.norm().max(1.0));
        match hit {
            Some((c, cm)) => {
                let total = *cm + m;
                *c = (*c * *cm as f64 + z * m as f64) / total as f64;
                *cm = total;
            }
            None => clusters.push((z, m)),
        }
    }
    clusters
}

fn horner_with_derivative(c: &[Complex64], w: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * w + p;
        p = p * w + a;
    }
    (p, dp)
}

/// Distinct roots of a square-free polynomial given by float coefficients.
fn simple_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|&a| a / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }

    // Scale so the rescaled roots have modulus of order one.
    let rho = (0..n)
        .filter(|&j| monic[j].norm() > 0.0)
        .map(|j| monic[j].norm().powf(1.0 / (n - j) as f64))
        .fold(0.0, f64::max);
    let rho = if rho > 0.0 && rho.is_finite() {
        rho
    } else {
        1.0
    };
    let scaled: Vec<Complex64> = (0..=n)
        .map(|j| monic[j] / rho.powi((n - j) as i32))
        .collect();

    let mut w: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_SWEEPS {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner_with_derivative(&scaled, w[k]);
            if p.is_zero() {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (w[k] - w[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Derivative vanished or two estimates collided; nudge off.
                w[k] += Complex64::new(1e-3, 1e-3);
                continue;
            }
            w[k] -= step;
            if step.norm() <= 1e-15 * w[k].norm().max(1e-12) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }

    // Two Newton steps tidy the last bits.
    for wk in w.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner_with_derivative(&scaled, *wk);
            if dp.is_zero() || p.is_zero() {
                break;
            }
            let step = p / dp;
            if step.re.is_finite() && step.im.is_finite() {
                *wk -= step;
            }
        }
    }
    w.into_iter().map(|wk| wk * rho).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn find(set: &RootSet, z: Complex64, tol: f64) -> Option<Root> {
        set.roots.iter().copied().find(|r| near(r.location, z, tol))
    }

    #[test]
    fn z_squared_plus_one() {
        let set = roots(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(set.total_multiplicity, 2);
        assert_eq!(find(&set, Complex64::i(), 1e-14).unwrap().multiplicity, 1);
        assert_eq!(find(&set, -Complex64::i(), 1e-14).unwrap().multiplicity, 1);
    }

    #[test]
    fn p2_determinant_roots() {
        let set = roots(&UniPoly::from_ints(&[1, 0, -1, 0, -1])).unwrap();
        assert_eq!(set.roots.len(), 4);
        for z in [
            Complex64::new(0.786151, 0.0),
            Complex64::new(-0.786151, 0.0),
            Complex64::new(0.0, 1.27202),
            Complex64::new(0.0, -1.27202),
        ] {
            assert_eq!(find(&set, z, 1e-5).unwrap().multiplicity, 1);
        }
    }

    #[test]
    fn high_multiplicity_at_origin() {
        let mut c = vec![0i64; 21];
        c[16] = 1;
        c[18] = 1;
        c[20] = 1;
        let set = roots(&UniPoly::from_ints(&c)).unwrap();
        assert_eq!(set.total_multiplicity, 20);
        assert_eq!(set.roots.len(), 5);
        assert_eq!(
            find(&set, Complex64::zero(), 1e-14).unwrap().multiplicity,
            16
        );
        let third = std::f64::consts::PI / 3.0;
        for angle in [third, -third, 2.0 * third, -2.0 * third] {
            let r = find(&set, Complex64::from_polar(1.0, angle), 1e-12).unwrap();
            assert_eq!(r.multiplicity, 1);
        }
    }

    #[test]
    fn constant_is_rejected() {
        assert_eq!(
            roots(&UniPoly::from_ints(&[3])),
            Err(Error::ConstantPolynomial)
        );
        assert_eq!(roots(&UniPoly::zero()), Err(Error::ConstantPolynomial));
        assert_eq!(
            cauchy_bound(&UniPoly::one()),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn cauchy_bound_examples() {
        assert_eq!(cauchy_bound(&UniPoly::from_ints(&[-1, 0, 1])).unwrap(), 2.0);
        assert_eq!(
            cauchy_bound(&UniPoly::from_ints(&[1, 0, -1, 0, -1, 0, -1])).unwrap(),
            2.0
        );
        let big = UniPoly::z_pow(6).sub_level(1e17);
        assert_eq!(cauchy_bound(&big).unwrap(), 1.0 + 1e17);
    }

    #[test]
    fn large_level_is_well_conditioned() {
        let g = UniPoly::from_ints(&[0, 0, 1, 0, 1, 0, 1]);
        let set = roots(&g.sub_level(1e17)).unwrap();
        assert_eq!(set.total_multiplicity, 6);
        let x2 = find(&set, Complex64::new(681.292, 0.0), 1e-3).unwrap();
        assert_eq!(x2.multiplicity, 1);
        assert!(find(&set, Complex64::new(340.646, 590.016), 1e-3).is_some());
    }

    #[test]
    fn double_root_from_exact_level() {
        // z^2 + z^4 + 1/4 = (z^2 + 1/2)^2
        let set = roots(&UniPoly::from_ints(&[0, 0, 1, 0, 1]).sub_level(-0.25)).unwrap();
        assert_eq!(set.roots.len(), 2);
        let y = std::f64::consts::FRAC_1_SQRT_2;
        for z in [Complex64::new(0.0, y), Complex64::new(0.0, -y)] {
            assert_eq!(find(&set, z, 1e-12).unwrap().multiplicity, 2);
        }
    }
}
