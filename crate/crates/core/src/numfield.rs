//! Exact arithmetic in the quadratic field ℚ(√d).
//!
//! A [`QuadScalar`] is `a + b·√d` with `a, b` arbitrary-precision rationals and
//! `d` a squarefree integer greater than one. Pure rationals carry radicand 0
//! so that they combine freely with any radical; two values with different
//! nonzero radicands cannot be combined and the checked operations report
//! [`Error::IncompatibleRadicands`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact element `rational + radical·√radicand` of ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    rational: BigRational,
    radical: BigRational,
    // 0 iff `radical` is zero; otherwise squarefree and > 1.
    radicand: u64,
}

/// Splits `n` as `k² · d` with `d` squarefree.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut d = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    d *= rest;
    (k, d)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadScalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(value: BigRational) -> Self {
        Self {
            rational: value,
            radical: BigRational::zero(),
            radicand: 0,
        }
    }

    /// Builds `rational + radical·√n`, reducing `√n` to `k√d` with `d` squarefree.
    pub fn new(rational: BigRational, radical: BigRational, n: u64) -> Self {
        let (k, d) = squarefree_split(n);
        let radical = radical * BigRational::from_integer(BigInt::from(k));
        if d <= 1 {
            let collapsed = if d == 1 { radical } else { BigRational::zero() };
            return Self::from_rational(rational + collapsed);
        }
        Self::canonical(rational, radical, d)
    }

    /// `√n` as an exact field element.
    pub fn sqrt_of(n: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n)
    }

    fn canonical(rational: BigRational, radical: BigRational, radicand: u64) -> Self {
        if radical.is_zero() {
            Self::from_rational(rational)
        } else {
            Self {
                rational,
                radical,
                radicand,
            }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    /// The squarefree radicand, or 0 for a pure rational.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.radical.is_zero() && self.rational.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    /// `a - b√d`.
    pub fn conjugate(&self) -> Self {
        Self::canonical(self.rational.clone(), -self.radical.clone(), self.radicand)
    }

    /// The field norm `a² - d·b²`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - &self.radical * &self.radical * rat(self.radicand as i64)
    }

    fn joint_radicand(&self, other: &Self) -> Result<u64> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::IncompatibleRadicands { left: a, right: b }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        Ok(Self::canonical(
            &self.rational + &other.rational,
            &self.radical + &other.radical,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        Ok(Self::canonical(
            &self.rational - &other.rational,
            &self.radical - &other.radical,
            d,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        if self.radical.is_zero() {
            return Ok(Self::canonical(
                &self.rational * &other.rational,
                &self.rational * &other.radical,
                d,
            ));
        }
        if other.radical.is_zero() {
            return Ok(Self::canonical(
                &self.rational * &other.rational,
                &self.radical * &other.rational,
                d,
            ));
        }
        let a = &self.rational * &other.rational
            + &self.radical * &other.radical * rat(d as i64);
        let b = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(Self::canonical(a, b, d))
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.radical.is_zero() {
            return Ok(Self::from_rational(self.rational.recip()));
        }
        let n = self.norm();
        Ok(Self::canonical(
            &self.rational / &n,
            -(&self.radical / &n),
            self.radicand,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value using `radical_value` as the numeric stand-in for `√d`.
    pub fn to_f64_with(&self, radical_value: f64) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.radical.is_zero() {
            return a;
        }
        a + self.radical.to_f64().unwrap_or(f64::NAN) * radical_value
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_with((self.radicand as f64).sqrt())
    }

    /// Sign of the real number this element denotes.
    pub fn signum(&self) -> i8 {
        // a + b√d > 0 decided exactly by comparing a² with d·b² when signs differ.
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.radical);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        let lhs = &self.rational * &self.rational;
        let rhs = &self.radical * &self.radical * rat(self.radicand as i64);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

// The operator forms panic on incompatible radicands or division by zero;
// use the `checked_*` methods where either can occur.
forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar::canonical(-self.rational.clone(), -self.radical.clone(), self.radicand)
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for QuadScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

pub(crate) fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `a + b*sqrt(d)` with rationals written `p/q`.
impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            return fmt_rational(&self.rational, f);
        }
        let neg = self.radical.is_negative();
        let mag = self.radical.abs();
        if !self.rational.is_zero() {
            fmt_rational(&self.rational, f)?;
            f.write_str(if neg { " - " } else { " + " })?;
        } else if neg {
            f.write_str("-")?;
        }
        if !mag.is_one() {
            fmt_rational(&mag, f)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Syntax {
        column: 1,
        message: format!("malformed rational `{s}`"),
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn parse_radical_term(s: &str) -> Result<Option<(BigRational, u64)>> {
    let s = s.trim();
    let Some(idx) = s.find("sqrt(") else {
        return Ok(None);
    };
    let inner = s[idx + 5..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Syntax {
            column: idx + 1,
            message: "unterminated sqrt(".into(),
        })?;
    let n: u64 = inner.trim().parse().map_err(|_| Error::Syntax {
        column: idx + 6,
        message: format!("radicand `{inner}` is not a nonnegative integer"),
    })?;
    let coeff = s[..idx].trim().trim_end_matches('*').trim();
    let c = match coeff {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rational(c)?,
    };
    Ok(Some((c, n)))
}

impl FromStr for QuadScalar {
    type Err = Error;

    /// Parses the rendering produced by `Display`: `p/q`, `b*sqrt(d)` or
    /// `a + b*sqrt(d)` / `a - b*sqrt(d)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        // Split at the binary +/- that precedes the radical term, if any.
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .find(|&i| s[i..].contains("sqrt(") && !s[..i].contains("sqrt("));
        match split {
            Some(i) => {
                let a = parse_rational(&s[..i])?;
                let sign = if s[i..].starts_with('-') { -1 } else { 1 };
                let (b, n) = parse_radical_term(&s[i + 1..])?.ok_or_else(|| Error::Syntax {
                    column: i + 2,
                    message: "expected a sqrt term".into(),
                })?;
                Ok(Self::new(a, b * rat(sign), n))
            }
            None => match parse_radical_term(s)? {
                Some((b, n)) => Ok(Self::new(BigRational::zero(), b, n)),
                None => Ok(Self::from_rational(parse_rational(s)?)),
            },
        }
    }
}

/// The parameters `(α, β)` of a metallic structure and the constants derived from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetallicParams {
    alpha: u64,
    beta: u64,
    discriminant: u64,
    sigma: QuadScalar,
    sqrt_d: QuadScalar,
}

impl MetallicParams {
    /// Computes `D = α² + 4β`, `√D` in squarefree form, and the metallic mean
    /// `σ = (α + √D)/2`.
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        if alpha < 1 || beta < 1 {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be positive integers, got ({alpha}, {beta})"
            )));
        }
        let (alpha, beta) = (alpha as u64, beta as u64);
        let discriminant = alpha
            .checked_mul(alpha)
            .and_then(|a2| beta.checked_mul(4).and_then(|b4| a2.checked_add(b4)))
            .ok_or_else(|| Error::InvalidParams("alpha^2 + 4 beta overflows".into()))?;
        let sqrt_d = QuadScalar::sqrt_of(discriminant);
        let sigma = &(&QuadScalar::from_int(alpha as i64) + &sqrt_d) * &QuadScalar::from_ratio(1, 2);
        Ok(Self {
            alpha,
            beta,
            discriminant,
            sigma,
            sqrt_d,
        })
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn alpha_scalar(&self) -> QuadScalar {
        QuadScalar::from_int(self.alpha as i64)
    }

    pub fn beta_scalar(&self) -> QuadScalar {
        QuadScalar::from_int(self.beta as i64)
    }

    /// `D = α² + 4β`.
    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    pub fn discriminant_scalar(&self) -> QuadScalar {
        QuadScalar::from_int(self.discriminant as i64)
    }

    pub fn sigma(&self) -> &QuadScalar {
        &self.sigma
    }

    /// The other root `α - σ = (α - √D)/2`.
    pub fn conjugate_sigma(&self) -> QuadScalar {
        &self.alpha_scalar() - &self.sigma
    }

    pub fn sqrt_d(&self) -> &QuadScalar {
        &self.sqrt_d
    }

    /// Squarefree radicand of the field the parameters live in (0 when `D` is a square).
    pub fn radicand(&self) -> u64 {
        self.sqrt_d.radicand()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadScalar {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = q("1 + sqrt(5)");
        let b = q("1 - sqrt(5)");
        assert_eq!(&a * &b, QuadScalar::from_int(-4));
    }

    #[test]
    fn golden_sigma_squared() {
        let p = MetallicParams::new(1, 1).unwrap();
        let s2 = p.sigma() * p.sigma();
        assert_eq!(s2, p.sigma() + &QuadScalar::one());
        assert_eq!(s2, q("3/2 + 1/2*sqrt(5)"));
    }

    #[test]
    fn rationalized_inverse() {
        let x = q("1 + sqrt(2)");
        let inv = QuadScalar::one().checked_div(&x).unwrap();
        assert_eq!(inv, q("-1 + sqrt(2)"));
        assert!((&inv * &x).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            QuadScalar::one().checked_div(&QuadScalar::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let err = q("sqrt(2)").checked_add(&q("sqrt(3)")).unwrap_err();
        assert_eq!(err, Error::IncompatibleRadicands { left: 2, right: 3 });
        // a pure rational mixes with anything
        assert!(q("1/3").checked_mul(&q("sqrt(3)")).is_ok());
    }

    #[test]
    fn radicand_normalization() {
        assert_eq!(QuadScalar::sqrt_of(9), QuadScalar::from_int(3));
        assert_eq!(QuadScalar::sqrt_of(8), q("2*sqrt(2)"));
        assert_eq!(QuadScalar::sqrt_of(1), QuadScalar::one());
        assert_eq!(QuadScalar::sqrt_of(0), QuadScalar::zero());
        assert_eq!(squarefree_split(72), (6, 2));
        assert_eq!(squarefree_split(13), (1, 13));
    }

    #[test]
    fn metallic_means() {
        let cases = [
            (1, 1, "1/2 + 1/2*sqrt(5)"),
            (2, 1, "1 + sqrt(2)"),
            (1, 2, "2"),
            (3, 1, "3/2 + 1/2*sqrt(13)"),
            (4, 1, "2 + sqrt(5)"),
            (1, 3, "1/2 + 1/2*sqrt(13)"),
        ];
        for (a, b, expected) in cases {
            let p = MetallicParams::new(a, b).unwrap();
            assert_eq!(p.sigma(), &q(expected), "({a},{b})");
            let residual = &(&(p.sigma() * p.sigma()) - &(&p.alpha_scalar() * p.sigma()))
                - &p.beta_scalar();
            assert!(residual.is_zero());
            assert_eq!(
                p.sqrt_d() * p.sqrt_d(),
                p.discriminant_scalar(),
                "sqrtD^2 = D"
            );
        }
        let copper = MetallicParams::new(1, 2).unwrap();
        assert_eq!(copper.discriminant(), 9);
        assert!(copper.sigma().is_rational());
        assert_eq!(copper.radicand(), 0);
    }

    #[test]
    fn conjugate_root() {
        for (a, b) in [(1, 1), (2, 1), (3, 1), (1, 2), (5, 7)] {
            let p = MetallicParams::new(a, b).unwrap();
            let other = p.conjugate_sigma();
            let expected = &(&p.alpha_scalar() - p.sqrt_d()) * &QuadScalar::from_ratio(1, 2);
            assert_eq!(other, expected);
            assert_eq!(&other * p.sigma(), -p.beta_scalar());
        }
    }

    #[test]
    fn invalid_params() {
        assert!(MetallicParams::new(0, 1).is_err());
        assert!(MetallicParams::new(1, -2).is_err());
    }

    #[test]
    fn display_and_parse() {
        for s in ["0", "-7/3", "sqrt(5)", "-sqrt(5)", "3/4*sqrt(2)", "1 - 2*sqrt(7)", "-1/2 + sqrt(13)"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert!("1 + 2*sqrt(x)".parse::<QuadScalar>().is_err());
        assert!("1/0".parse::<QuadScalar>().is_err());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(q("1 - sqrt(2)").signum(), -1);
        assert_eq!(q("-1 + sqrt(2)").signum(), 1);
        assert_eq!(q("3 - 2*sqrt(2)").signum(), 1);
        assert_eq!(q("0").signum(), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = QuadScalar> {
            (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, da, b, db)| {
                QuadScalar::new(
                    BigRational::new(a.into(), da.into()),
                    BigRational::new(b.into(), db.into()),
                    5,
                )
            })
        }

        proptest! {
            #[test]
            fn inverse_is_two_sided(x in scalar()) {
                prop_assume!(!x.is_zero());
                let inv = x.checked_inv().unwrap();
                prop_assert!((&x * &inv).is_one());
            }

            #[test]
            fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
            }

            #[test]
            fn display_roundtrip(a in scalar()) {
                prop_assert_eq!(a.to_string().parse::<QuadScalar>().unwrap(), a);
            }

            #[test]
            fn params_satisfy_quadratic(alpha in 1i64..40, beta in 1i64..40) {
                let p = MetallicParams::new(alpha, beta).unwrap();
                let r = &(&(p.sigma() * p.sigma()) - &(&p.alpha_scalar() * p.sigma())) - &p.beta_scalar();
                prop_assert!(r.is_zero());
                prop_assert_eq!(p.sqrt_d() * p.sqrt_d(), p.discriminant_scalar());
            }
        }
    }
}
