//! Multivariate polynomial GCD by recursive content / primitive-part reduction.
//!
//! The polynomial is viewed as univariate in its smallest variable with
//! coefficients in the remaining ones; contents are computed recursively and
//! the primitive parts are reduced with a primitive pseudo-remainder sequence.
//! Coefficients live in a field, so the result is normalized to be monic.

use super::poly::{Monomial, Poly};
use crate::numfield::QuadScalar;

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    // Cheap exits for the common case of one operand dividing the other.
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.total_degree() >= small.total_degree() && large.div_exact(small).is_some() {
        return small.monic();
    }

    let var = match (a.first_var(), b.first_var()) {
        (Some(u), Some(v)) => u.min(v),
        _ => return Poly::one(),
    };
    if !a.mentions(var) {
        return gcd(a, &content(b, var));
    }
    if !b.mentions(var) {
        return gcd(&content(a, var), b);
    }

    let ca = content(a, var);
    let cb = content(b, var);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    if images_coprime(&pa, &pb, var) {
        return c;
    }
    let g = primitive_prs(pa, pb, var);
    c.mul(&g).monic()
}

/// Fast certificate that two polynomials primitive in `var` are coprime.
///
/// Specializing every other variable to an integer where both leading
/// coefficients survive maps the gcd onto a divisor of the univariate images'
/// gcd of the same degree in `var`, so a constant image gcd proves the
/// primitive gcd is 1. A `false` answer is inconclusive.
fn images_coprime(a: &Poly, b: &Poly, var: usize) -> bool {
    let width = a.width().max(b.width());
    let (la, lb) = (a.lead_in(var), b.lead_in(var));
    for attempt in 0..3i64 {
        let point: Vec<QuadScalar> = (0..width)
            .map(|v| QuadScalar::from_int(SAMPLE_POINTS[(v + 3 * attempt as usize) % SAMPLE_POINTS.len()]))
            .collect();
        if specialize(&la, var, &point).is_zero() || specialize(&lb, var, &point).is_zero() {
            continue;
        }
        let ua = specialize(a, var, &point);
        let ub = specialize(b, var, &point);
        return univariate_gcd(ua, ub).degree_in(var) == 0;
    }
    false
}

const SAMPLE_POINTS: [i64; 11] = [2, -3, 5, 7, -11, 13, 17, -19, 23, 29, -31];

/// Substitutes `point[v]` for every variable except `var`.
fn specialize(p: &Poly, var: usize, point: &[QuadScalar]) -> Poly {
    Poly::from_terms(p.terms().map(|(m, c)| {
        let mut coeff = c.clone();
        for (v, &e) in m.exponents().iter().enumerate() {
            if v != var && e > 0 {
                coeff = &coeff * &point[v].pow(e);
            }
        }
        (Monomial::var(var, m.exp(var)), coeff)
    }))
}

/// Euclid's algorithm for polynomials in the single variable `var`.
fn univariate_gcd(mut a: Poly, mut b: Poly) -> Poly {
    let var = a.first_var().or(b.first_var()).unwrap_or(0);
    while !b.is_zero() {
        let r = univariate_rem(&a, &b, var);
        a = b;
        b = r.monic();
    }
    a.monic()
}

fn univariate_rem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = b.degree_in(var);
    let inv = b.leading_coeff().checked_inv().expect("nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let shift = r.degree_in(var) - db;
        let q = &r.leading_coeff() * &inv;
        r = r.sub(&b.mul_monomial(&Monomial::var(var, shift), &q));
    }
    r
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &Poly, var: usize) -> Poly {
    let mut coeffs = p.coeffs_in(var).into_iter().filter(|c| !c.is_zero());
    let Some(first) = coeffs.next() else {
        return Poly::zero();
    };
    let mut g = first.monic();
    for c in coeffs {
        if g.is_one() {
            break;
        }
        g = gcd(&g, &c);
    }
    g
}

/// Primitive part of `p` with respect to `var`.
pub fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content(p, var);
    if c.is_zero() {
        return Poly::zero();
    }
    p.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` in `var`.
fn pseudo_rem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = b.degree_in(var);
    let lb = b.lead_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.lead_in(var);
        let shift = Poly::var(var).pow(dr - db);
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, var: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.degree_in(var) == 0 {
            // b is a nonzero polynomial free of `var` and primitive in it.
            return Poly::one();
        }
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            return b.monic();
        }
        a = b;
        b = primitive_part(&r, var);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn z() -> Poly {
        Poly::var(2)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(n.into())
    }

    #[test]
    fn univariate() {
        let a = x().pow(2).sub(&c(1));
        let b = x().sub(&c(1)).pow(2);
        assert_eq!(gcd(&a, &b), x().sub(&c(1)));
        assert_eq!(gcd(&x().pow(2).add(&c(1)), &x()), Poly::one());
    }

    #[test]
    fn multivariate_common_factor() {
        let f = x().add(&y()).pow(2).add(&c(1));
        let g1 = x().mul(&y()).sub(&z());
        let g2 = z().pow(2).add(&x());
        let a = f.mul(&g1);
        let b = f.mul(&f).mul(&g2);
        assert_eq!(gcd(&a, &b), f.monic());
        assert_eq!(gcd(&g1, &g2), Poly::one());
    }

    #[test]
    fn content_in_later_variables() {
        // y*(x + 1) and y^2*(x - 1) share y
        let a = y().mul(&x().add(&c(1)));
        let b = y().pow(2).mul(&x().sub(&c(1)));
        assert_eq!(gcd(&a, &b), y());
    }

    #[test]
    fn quadratic_coefficients() {
        let s5 = Poly::constant(QuadScalar::sqrt_of(5));
        let f = x().sub(&s5);
        let a = f.mul(&y().add(&c(2)));
        let b = f.mul(&x().add(&s5));
        assert_eq!(gcd(&a, &b), f);
    }
}
