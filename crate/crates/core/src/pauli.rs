//! 2×2 matrix polynomials in the Pauli basis.
//!
//! `P(z) = c0(z)·σ0 + c1(z)·σ1 + c2(z)·σ2 + c3(z)·σ3`, stored by component.
//! The analytic invariant `g = c1² + c2² + c3²` carries everything the PT
//! analysis needs: `det P = c0² − g`, and the real and halved imaginary parts
//! of `g(x + iy)` are the fields `h` and `s`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{exact_int, UniPoly};

pub type Matrix2 = [[Complex64; 2]; 2];

/// The named polynomials studied in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    P1,
    P2,
    P3,
    Pt1,
    Pt2,
    Pt3,
    Q10,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::P1,
        Preset::P2,
        Preset::P3,
        Preset::Pt1,
        Preset::Pt2,
        Preset::Pt3,
        Preset::Q10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::P1 => "P1",
            Preset::P2 => "P2",
            Preset::P3 => "P3",
            Preset::Pt1 => "Pt1",
            Preset::Pt2 => "Pt2",
            Preset::Pt3 => "Pt3",
            Preset::Q10 => "Q10",
        }
    }

    /// Exponents of `z` in (c0, c1, c2, c3); `None` is a zero component.
    fn exponents(self) -> [Option<usize>; 4] {
        match self {
            Preset::P1 => [Some(0), Some(1), None, None],
            Preset::P2 => [Some(0), Some(1), Some(2), None],
            Preset::P3 => [Some(0), Some(1), Some(2), Some(3)],
            Preset::Pt1 => [Some(1), Some(0), None, None],
            Preset::Pt2 => [Some(1), Some(2), Some(0), None],
            Preset::Pt3 => [Some(1), Some(2), Some(3), Some(0)],
            Preset::Q10 => [None, Some(8), Some(9), Some(10)],
        }
    }

    pub fn build(self) -> PauliPoly {
        let [c0, c1, c2, c3] = self
            .exponents()
            .map(|e| e.map_or_else(UniPoly::zero, UniPoly::z_pow));
        let mut p = PauliPoly::from_components(c0, c1, c2, c3).expect("presets are nonzero");
        p.name = Some(self.name().to_string());
        p
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Look a preset up by name.
pub fn preset(name: &str) -> Result<PauliPoly> {
    name.parse::<Preset>().map(Preset::build)
}

#[derive(Debug, Clone)]
pub struct PauliPoly {
    components: [UniPoly; 4],
    name: Option<String>,
    g: UniPoly,
    det: UniPoly,
    trace: UniPoly,
}

impl PauliPoly {
    pub fn from_components(c0: UniPoly, c1: UniPoly, c2: UniPoly, c3: UniPoly) -> Result<Self> {
        if [&c0, &c1, &c2, &c3].iter().all(|c| c.is_zero()) {
            return Err(Error::AllZero);
        }
        let g = &(&(&c1 * &c1) + &(&c2 * &c2)) + &(&c3 * &c3);
        let det = &(&c0 * &c0) - &g;
        let trace = c0.scale(&exact_int(2));
        Ok(PauliPoly {
            components: [c0, c1, c2, c3],
            name: None,
            g,
            det,
            trace,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "custom".to_string())
    }

    pub fn components(&self) -> &[UniPoly; 4] {
        &self.components
    }

    /// Identity component `c0`.
    pub fn c0(&self) -> &UniPoly {
        &self.components[0]
    }

    /// `c1² + c2² + c3²`
    pub fn g_poly(&self) -> &UniPoly {
        &self.g
    }

    pub fn det_poly(&self) -> &UniPoly {
        &self.det
    }

    pub fn trace_poly(&self) -> &UniPoly {
        &self.trace
    }

    /// Component values `(c0, c1, c2, c3)` at `z`.
    pub fn components_at(&self, z: Complex64) -> [Complex64; 4] {
        [0, 1, 2, 3].map(|k| self.components[k].eval(z))
    }

    pub fn matrix_at(&self, z: Complex64) -> Matrix2 {
        let [c0, c1, c2, c3] = self.components_at(z);
        let i = Complex64::i();
        [[c0 + c3, c1 - i * c2], [c1 + i * c2, c0 - c3]]
    }

    pub fn eigenvalues_at(&self, z: Complex64) -> EigenPair {
        let c0 = self.components[0].eval(z);
        let root = principal_sqrt(self.g.eval(z));
        EigenPair {
            e_minus: c0 - root,
            e_plus: c0 + root,
        }
    }

    pub fn is_hermitian_at(&self, z: Complex64, tol: f64) -> bool {
        let m = self.matrix_at(z);
        (0..2).all(|r| (0..2).all(|c| (m[r][c] - m[c][r].conj()).norm() <= tol))
    }

    pub fn is_normal_at(&self, z: Complex64, tol: f64) -> bool {
        let m = self.matrix_at(z);
        let mh = adjoint(&m);
        let a = matmul(&m, &mh);
        let b = matmul(&mh, &m);
        (0..2).all(|r| (0..2).all(|c| (a[r][c] - b[r][c]).norm() <= tol))
    }
}

/// Eigenvalues `c0 ∓ √g` with the principal square root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub e_minus: Complex64,
    pub e_plus: Complex64,
}

/// Principal square root; negative reals map to `+i·√|v|` regardless of the
/// sign of a zero imaginary part.
pub fn principal_sqrt(v: Complex64) -> Complex64 {
    if v.im == 0.0 {
        if v.re >= 0.0 {
            Complex64::new(v.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-v.re).sqrt())
        }
    } else {
        v.sqrt()
    }
}

pub fn det2(m: &Matrix2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn adjoint(m: &Matrix2) -> Matrix2 {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}
