//! Exact univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are `Complex<BigRational>`, so addition, multiplication,
//! differentiation and division are exact. A float copy of the coefficients
//! is kept alongside for evaluation and root finding.

mod roots;
mod squarefree;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use roots::{cauchy_bound, roots, Root, RootSet, CLUSTER_EPS, MAX_SWEEPS, RESIDUAL_TOL};
pub use squarefree::{gcd, square_free_decomposition};

pub type Rational = BigRational;
pub type ExactComplex = Complex<BigRational>;

/// Exact rational equal to the binary value of `v`.
///
/// Panics on NaN or infinities.
pub fn rational_from_f64(v: f64) -> Rational {
    BigRational::from_float(v).unwrap_or_else(|| panic!("non-finite value {v}"))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn exact_to_c64(c: &ExactComplex) -> Complex64 {
    Complex64::new(rational_to_f64(&c.re), rational_to_f64(&c.im))
}

pub fn exact_int(v: i64) -> ExactComplex {
    Complex::new(BigRational::from_integer(BigInt::from(v)), Rational::zero())
}

pub fn exact_real(r: Rational) -> ExactComplex {
    Complex::new(r, Rational::zero())
}

/// A polynomial `Σ a_j z^j`. The zero polynomial has an empty coefficient
/// list; otherwise the last coefficient is nonzero.
#[derive(Clone)]
pub struct UniPoly {
    coeffs: Vec<ExactComplex>,
    approx: Vec<Complex64>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<ExactComplex>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let approx = coeffs.iter().map(exact_to_c64).collect();
        UniPoly { coeffs, approx }
    }

    /// Real integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| exact_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::from_coeffs(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(exact_int(1))
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · z^j`
    pub fn monomial(c: ExactComplex, j: usize) -> Self {
        let mut coeffs = vec![ExactComplex::zero(); j + 1];
        coeffs[j] = c;
        Self::from_coeffs(coeffs)
    }

    /// `z^j`
    pub fn z_pow(j: usize) -> Self {
        Self::monomial(exact_int(1), j)
    }

    pub fn coeffs(&self) -> &[ExactComplex] {
        &self.coeffs
    }

    pub fn approx_coeffs(&self) -> &[Complex64] {
        &self.approx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check [`UniPoly::is_zero`]).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&ExactComplex> {
        self.coeffs.last()
    }

    pub fn coeff(&self, j: usize) -> ExactComplex {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(ExactComplex::zero)
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.im.is_zero())
    }

    /// True when only even powers of `z` appear.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Horner evaluation on the float coefficients.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.approx
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * exact_int(j as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self - k` for a float level `k`, taken as its exact binary value.
    pub fn sub_level(&self, k: f64) -> Self {
        self - &Self::constant(exact_real(rational_from_f64(k)))
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            Some(lead) => {
                let inv = ExactComplex::one() / lead;
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Exact Euclidean division. Returns `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let lead = divisor.leading()?;
        let dn = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Some((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![ExactComplex::zero(); rem.len() - dn];
        for q_idx in (0..quot.len()).rev() {
            let top = &rem[q_idx + dn];
            if top.is_zero() {
                continue;
            }
            let factor = top / lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &factor * d;
                rem[q_idx + j] = &rem[q_idx + j] - t;
            }
            quot[q_idx] = factor;
        }
        Some((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Largest coefficient modulus (float).
    pub fn max_coeff_abs(&self) -> f64 {
        self.approx.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

fn add_coeffs(a: &[ExactComplex], b: &[ExactComplex], negate_b: bool) -> Vec<ExactComplex> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|j| {
            let x = a.get(j).cloned().unwrap_or_else(ExactComplex::zero);
            match b.get(j) {
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![ExactComplex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + a * b;
                }
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Writes an exact complex rational as `a`, `bi` or `(a+bi)`.
pub(crate) fn fmt_exact(c: &ExactComplex) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) if c.im.is_one() => "i".to_string(),
        (true, false) if (-&c.im).is_one() => "-i".to_string(),
        (true, false) => format!("{}i", c.im),
        (false, false) => {
            let sign = if c.im.is_negative() { '-' } else { '+' };
            format!("({}{}{}i)", c.re, sign, c.im.abs())
        }
    }
}

/// Shared term printer for univariate and bivariate polynomials:
/// `terms` yields (coefficient, monomial string) pairs in display order.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a ExactComplex, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let is_real = c.im.is_zero();
        let negative = is_real && c.re.is_negative();
        let magnitude = if is_real {
            fmt_exact(&exact_real(c.re.abs()))
        } else {
            fmt_exact(c)
        };
        let unit = is_real && c.re.abs().is_one();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        match (mono.is_empty(), unit) {
            (true, _) => write!(f, "{magnitude}")?,
            (false, true) => write!(f, "{mono}")?,
            (false, false) => write!(f, "{magnitude}{mono}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs.iter().enumerate().map(|(j, c)| {
                let mono = match j {
                    0 => String::new(),
                    1 => "z".to_string(),
                    _ => format!("z^{j}"),
                };
                (c, mono)
            }),
        )
    }
}
