use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gcd::gcd;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::numfield::QuadScalar;

/// A rational function `numerator / denominator` over [`QuadScalar`].
///
/// Always kept canonical: numerator and denominator coprime, denominator monic
/// in lexicographic order, and zero stored as `0/1`. Structural equality is
/// therefore equality of rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: QuadScalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(QuadScalar::from_int(n))
    }

    pub fn var(index: usize) -> Self {
        Self::from_poly(Poly::var(index))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds and canonicalizes `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Ok(Self::normalized(num, den))
    }

    // Makes the denominator monic; assumes coprime input.
    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            return Self { num, den };
        }
        let inv = lc.checked_inv().expect("nonzero denominator");
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The value of a constant function.
    pub fn as_constant(&self) -> Option<QuadScalar> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn width(&self) -> usize {
        self.num.width().max(self.den.width())
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.num.mentions(var) || self.den.mentions(var)
    }

    pub fn radicand(&self) -> u64 {
        self.num.radicand().max(self.den.radicand())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_radicands(other)?;
        Ok(self.add_signed(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_radicands(other)?;
        Ok(self.add_signed(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_radicands(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_radicands(other)?;
        let inv = other.checked_inv()?;
        Ok(self.mul_impl(&inv))
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn check_radicands(&self, other: &Self) -> Result<()> {
        match (self.radicand(), other.radicand()) {
            (0, _) | (_, 0) => Ok(()),
            (a, b) if a == b => Ok(()),
            (a, b) => Err(Error::IncompatibleRadicands { left: a, right: b }),
        }
    }

    // a/b ± c/d with g = gcd(b, d): the result's only possible common factor
    // with its denominator divides g.
    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        let other_num = if negate {
            other.num.neg()
        } else {
            other.num.clone()
        };
        if self.den == other.den {
            let num = self.num.add(&other_num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            return Self::normalized(self.num.mul(&other.den).add(&other_num), other.den.clone());
        }
        if other.den.is_one() {
            return Self::normalized(self.num.add(&other_num.mul(&self.den)), self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other_num.mul(&b1));
        let den = self.den.mul(&d1);
        if g.is_one() {
            return Self::normalized(num, den);
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            Self::normalized(num, den)
        } else {
            Self::normalized(
                num.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }

    // (a/b)(c/d) = (a/d')(c/b') after cancelling the cross gcds.
    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let (a, d) = cancel(&self.num, &other.den);
        let (c, b) = cancel(&other.num, &self.den);
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &QuadScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Partial derivative with respect to the variable at `var`.
    pub fn derivative(&self, var: usize) -> Self {
        if !self.mentions(var) {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(var));
        }
        // (a/b)' = (a' (b/g) - a (b'/g)) / (b (b/g)),  g = gcd(b, b')
        let db = self.den.derivative(var);
        let g = gcd(&self.den, &db);
        let bg = self.den.div_exact(&g).expect("gcd divides");
        let dbg = db.div_exact(&g).expect("gcd divides");
        let num = self.num.derivative(var).mul(&bg).sub(&self.num.mul(&dbg));
        Self::new(num, self.den.mul(&bg)).expect("nonzero denominator")
    }

    /// Simultaneous substitution of variables by rational functions.
    pub fn substitute(&self, bindings: &BTreeMap<usize, RatFunc>) -> Result<Self> {
        let num = substitute_poly(&self.num, bindings)?;
        let den = substitute_poly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(Error::Pole);
        }
        num.checked_div(&den)
    }

    /// Floating-point value at `point` (indexed like the variables), with
    /// `radical_value` standing in for `√d`. Returns `None` when the
    /// denominator magnitude drops below `1e-8`, signalling the caller to resample.
    pub fn eval_f64(&self, point: &[f64], radical_value: f64) -> Option<f64> {
        let den = self.den.eval_f64(point, radical_value);
        if !den.is_finite() || den.abs() < 1e-8 {
            return None;
        }
        Some(self.num.eval_f64(point, radical_value) / den)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RatFuncDisplay<'a> {
        RatFuncDisplay { f: self, names }
    }
}

fn cancel(num: &Poly, den: &Poly) -> (Poly, Poly) {
    if den.is_one() || num.is_constant() {
        return (num.clone(), den.clone());
    }
    let g = gcd(num, den);
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (
            num.div_exact(&g).expect("gcd divides"),
            den.div_exact(&g).expect("gcd divides"),
        )
    }
}

fn substitute_poly(p: &Poly, bindings: &BTreeMap<usize, RatFunc>) -> Result<RatFunc> {
    // power cache per variable
    let mut powers: BTreeMap<(usize, u32), RatFunc> = BTreeMap::new();
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut kept = Vec::with_capacity(m.exponents().len());
        let mut factor = RatFunc::constant(c.clone());
        for (v, &e) in m.exponents().iter().enumerate() {
            match bindings.get(&v) {
                Some(target) if e > 0 => {
                    let pw = powers
                        .entry((v, e))
                        .or_insert_with(|| target.pow(e))
                        .clone();
                    factor = factor.checked_mul(&pw)?;
                    kept.push(0);
                }
                _ => kept.push(e),
            }
        }
        let rest = RatFunc::from_poly(Poly::monomial(Monomial::new(kept), QuadScalar::one()));
        acc = acc.checked_add(&factor.checked_mul(&rest)?)?;
    }
    Ok(acc)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<QuadScalar> for RatFunc {
    fn from(c: QuadScalar) -> Self {
        Self::constant(c)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

pub struct RatFuncDisplay<'a> {
    f: &'a RatFunc,
    names: &'a [String],
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display(self.names);
        if self.f.den.is_one() {
            return write!(out, "{num}");
        }
        let den = self.f.den.display(self.names);
        if self.f.num.len() == 1 && !self.f.num.leading_coeff().is_rational() {
            // a lone irrational coefficient is already parenthesized
            write!(out, "{num}/({den})")
        } else {
            write!(out, "({num})/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RatFunc {
        RatFunc::var(0)
    }
    fn y() -> RatFunc {
        RatFunc::var(1)
    }
    fn c(n: i64) -> RatFunc {
        RatFunc::int(n)
    }

    #[test]
    fn common_denominator_collapse() {
        let d = &x() + &c(1);
        let f = &(&x() / &d) + &(&c(1) / &d);
        assert!(f.is_one());
    }

    #[test]
    fn gcd_cancellation() {
        let f = &(&x().pow(2) - &c(1)) / &(&x() - &c(1));
        assert_eq!(f, &x() + &c(1));
        assert!(f.is_polynomial());
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &x().pow(2) - &y().pow(2));
    }

    #[test]
    fn denominator_is_monic() {
        let f = &c(3) / &(&x().scale(&QuadScalar::from_int(2)) + &c(4));
        assert_eq!(f.denom(), &(&x() + &c(2)).numer().clone());
        assert_eq!(f.numer(), &Poly::constant(QuadScalar::from_ratio(3, 2)));
    }

    #[test]
    fn quotient_rule() {
        let t = &x() + &y();
        let f = &c(1) / &(&c(1) + &t.pow(2));
        let expected = &(&c(-2) * &t) / &(&c(1) + &t.pow(2)).pow(2);
        assert_eq!(f.derivative(0), expected);
        let g = &x().pow(2) * &y();
        assert_eq!(g.derivative(0), &c(2) * &(&x() * &y()));
    }

    #[test]
    fn substitution() {
        let mut b = BTreeMap::new();
        b.insert(1, &x() + &c(1));
        assert_eq!(y().pow(2).substitute(&b).unwrap(), (&x() + &c(1)).pow(2));
        let mut zero = BTreeMap::new();
        zero.insert(1, RatFunc::zero());
        assert!((&y() / &x()).substitute(&zero).unwrap().is_zero());
        assert_eq!((&c(1) / &y()).substitute(&zero), Err(Error::Pole));
    }

    #[test]
    fn zero_tests() {
        let t = &x() + &y();
        let z = &(&(&t.pow(2) - &x().pow(2)) - &(&c(2) * &(&x() * &y()))) - &y().pow(2);
        assert!(z.is_zero());
        assert!(!(&x() - &y()).is_zero());
    }

    #[test]
    fn numeric_evaluation() {
        assert_eq!(RatFunc::zero().eval_f64(&[0.3, 0.1], 0.0), Some(0.0));
        let f = &c(1) / &x();
        assert_eq!(f.eval_f64(&[0.0], 0.0), None);
        assert_eq!(f.eval_f64(&[0.5], 0.0), Some(2.0));
    }
}
