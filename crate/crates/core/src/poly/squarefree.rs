use super::UniPoly;

/// Monic greatest common divisor by the exact Euclidean algorithm.
///
/// `gcd(0, 0)` is the zero polynomial.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = a.make_monic();
    let mut y = b.make_monic();
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("divisor is nonzero");
        x = y;
        y = r.make_monic();
    }
    x
}

/// Yun's square-free decomposition.
///
/// Returns pairs `(f_i, i)` with each `f_i` monic, square-free and non-constant,
/// pairwise coprime, such that `p = lead(p) · Π f_i^i`.
pub fn square_free_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    if p.is_constant() {
        return Vec::new();
    }
    let p = p.make_monic();
    let dp = p.derivative();
    let a0 = gcd(&p, &dp);
    let mut b = exact_quotient(&p, &a0);
    let c = exact_quotient(&dp, &a0);
    let mut d = &c - &b.derivative();

    let mut out = Vec::new();
    let mut mult = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        let next_b = exact_quotient(&b, &a);
        let c = exact_quotient(&d, &a);
        d = &c - &next_b.derivative();
        if !a.is_constant() {
            out.push((a, mult));
        }
        b = next_b;
        mult += 1;
    }
    out
}

fn exact_quotient(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (q, r) = a.div_rem(b).expect("divisor is nonzero");
    debug_assert!(r.is_zero(), "inexact division in square-free decomposition");
    q
}
