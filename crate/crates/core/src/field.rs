//! Exact bivariate polynomials in `(x, y)` and the split `z = x + iy` of a
//! univariate polynomial into its real and imaginary parts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::pauli::PauliPoly;
use crate::poly::{exact_real, rational_to_f64, write_terms, Rational, UniPoly};

/// Sparse `Σ a_ij x^i y^j` with exact rational coefficients.
#[derive(Clone)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
    approx: Vec<(usize, usize, f64)>,
    deg_x: usize,
    deg_y: usize,
}

impl BiPoly {
    pub fn from_terms(mut terms: BTreeMap<(u32, u32), Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let approx: Vec<(usize, usize, f64)> = terms
            .iter()
            .map(|(&(i, j), c)| (i as usize, j as usize, rational_to_f64(c)))
            .collect();
        let deg_x = approx.iter().map(|t| t.0).max().unwrap_or(0);
        let deg_y = approx.iter().map(|t| t.1).max().unwrap_or(0);
        BiPoly {
            terms,
            approx,
            deg_x,
            deg_y,
        }
    }

    /// Integer terms `(coefficient, i, j)` for `coefficient · x^i y^j`;
    /// repeated monomials accumulate.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut map = BTreeMap::new();
        for &(c, i, j) in terms {
            *map.entry((i, j)).or_insert_with(Rational::zero) +=
                Rational::from_integer(BigInt::from(c));
        }
        Self::from_terms(map)
    }

    pub fn zero() -> Self {
        Self::from_terms(BTreeMap::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_int_terms(&[(c, 0, 0)])
    }

    pub fn x() -> Self {
        Self::from_int_terms(&[(1, 1, 0)])
    }

    pub fn y() -> Self {
        Self::from_int_terms(&[(1, 0, 1)])
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1), |acc, _| &acc * self)
    }

    fn powers(v: f64, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = 1.0;
        for _ in 0..=n {
            out.push(acc);
            acc *= v;
        }
        out
    }

    /// Float value at `(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let xp = Self::powers(x, self.deg_x);
        let yp = Self::powers(y, self.deg_y);
        self.approx.iter().map(|&(i, j, c)| c * xp[i] * yp[j]).sum()
    }

    /// `Σ |a_ij| |x|^i |y|^j`, the natural scale of rounding error in
    /// [`BiPoly::eval`] at the same point.
    pub fn abs_eval(&self, x: f64, y: f64) -> f64 {
        let xp = Self::powers(x.abs(), self.deg_x);
        let yp = Self::powers(y.abs(), self.deg_y);
        self.approx
            .iter()
            .map(|&(i, j, c)| c.abs() * xp[i] * yp[j])
            .sum()
    }

    /// Exact `(∂/∂x, ∂/∂y)`.
    pub fn partials(&self) -> (BiPoly, BiPoly) {
        let mut dx = BTreeMap::new();
        let mut dy = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                dx.insert((i - 1, j), c * Rational::from_integer(BigInt::from(i)));
            }
            if j > 0 {
                dy.insert((i, j - 1), c * Rational::from_integer(BigInt::from(j)));
            }
        }
        (BiPoly::from_terms(dx), BiPoly::from_terms(dy))
    }

    /// `f(x, -y)`
    pub fn reflect_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((i, j), if j % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        )
    }

    /// `f(-x, -y)`
    pub fn negate_args(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((i, j), if (i + j) % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        )
    }
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly {}

fn combine(a: &BiPoly, b: &BiPoly, sign: i8) -> BiPoly {
    let mut out = a.terms.clone();
    for (k, v) in &b.terms {
        let e = out.entry(*k).or_insert_with(Rational::zero);
        if sign < 0 {
            *e -= v;
        } else {
            *e += v;
        }
    }
    BiPoly::from_terms(out)
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        combine(self, rhs, 1)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        combine(self, rhs, -1)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                *out.entry((i + k, j + l)).or_insert_with(Rational::zero) += a * b;
            }
        }
        BiPoly::from_terms(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&k, v)| (k, -v)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest total degree first, x-heavy terms first within a degree.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0)));
        let coeffs: Vec<_> = keys
            .iter()
            .map(|k| exact_real(self.terms[k].clone()))
            .collect();
        write_terms(
            f,
            keys.iter().zip(&coeffs).map(|(&(i, j), c)| {
                let mut mono = String::new();
                match i {
                    0 => {}
                    1 => mono.push('x'),
                    _ => mono.push_str(&format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push('y'),
                    _ => mono.push_str(&format!("y^{j}")),
                }
                (c, mono)
            }),
        )
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for k in 1..=n {
        let next = &row[k as usize - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// Exact `(Re p(x+iy), Im p(x+iy))`.
pub fn expand_re_im(p: &UniPoly) -> (BiPoly, BiPoly) {
    let mut re: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    let mut im: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (j, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = j as u32;
        // (x + iy)^j = Σ_m C(j,m) x^(j-m) i^m y^m
        for (m, binom) in binomial_row(j).into_iter().enumerate() {
            let m = m as u32;
            let b = Rational::from_integer(binom);
            // i^m = (re_unit, im_unit)
            let (ur, ui): (i64, i64) = match m % 4 {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            let key = (j - m, m);
            // (a.re + i a.im)(ur + i ui) b
            let re_part = (&a.re * Rational::from_integer(ur.into())
                - &a.im * Rational::from_integer(ui.into()))
                * &b;
            let im_part = (&a.re * Rational::from_integer(ui.into())
                + &a.im * Rational::from_integer(ur.into()))
                * &b;
            *re.entry(key).or_insert_with(Rational::zero) += re_part;
            *im.entry(key).or_insert_with(Rational::zero) += im_part;
        }
    }
    (BiPoly::from_terms(re), BiPoly::from_terms(im))
}

/// `s(x, y) = Im g(x+iy) / 2`
pub fn s_field(p: &PauliPoly) -> BiPoly {
    let (_, im) = expand_re_im(p.g_poly());
    im.scale(&Rational::new(1.into(), 2.into()))
}

/// `h(x, y) = Re g(x+iy)`
pub fn h_field(p: &PauliPoly) -> BiPoly {
    expand_re_im(p.g_poly()).0
}

/// Real and imaginary parts of the identity component `c0`.
pub fn trace_fields(p: &PauliPoly) -> (BiPoly, BiPoly) {
    expand_re_im(p.c0())
}

/// All bivariate fields of a matrix polynomial, expanded once.
#[derive(Debug, Clone)]
pub struct Fields {
    pub s: BiPoly,
    pub h: BiPoly,
    pub h0_re: BiPoly,
    pub h0_im: BiPoly,
    pub det_re: BiPoly,
    pub det_im: BiPoly,
}

impl Fields {
    pub fn of(p: &PauliPoly) -> Self {
        let (h, g_im) = expand_re_im(p.g_poly());
        let s = g_im.scale(&Rational::new(1.into(), 2.into()));
        let (h0_re, h0_im) = trace_fields(p);
        let (det_re, det_im) = expand_re_im(p.det_poly());
        Fields {
            s,
            h,
            h0_re,
            h0_im,
            det_re,
            det_im,
        }
    }
}
