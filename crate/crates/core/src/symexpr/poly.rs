//! Sparse multivariate polynomials over [`QuadScalar`] in lexicographic order.

use std::collections::BTreeMap;
use std::fmt;

use crate::numfield::QuadScalar;

/// Exponent vector with trailing zeros stripped.
///
/// Stripping makes the derived `Ord` coincide with lexicographic order on the
/// zero-padded vectors, and lets a polynomial over `x¹..xⁿ` be read unchanged
/// as a polynomial over any extended variable list `x¹..xⁿ, y¹..`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Self(exps)
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Self::new(v)
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut v = long.clone();
        for (e, s) in v.iter_mut().zip(short) {
            *e += s;
        }
        Self(v)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (e, o) in v.iter_mut().zip(&other.0) {
            *e = e.checked_sub(*o)?;
        }
        Some(Self::new(v))
    }

    fn with_exp(&self, var: usize, exp: u32) -> Self {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = exp;
        Self::new(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, QuadScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(QuadScalar::one())
    }

    pub fn constant(c: QuadScalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: QuadScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(index: usize) -> Self {
        Self::monomial(Monomial::var(index, 1), QuadScalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, QuadScalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &QuadScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The constant term (or the whole value of a constant polynomial).
    pub fn constant_term(&self) -> QuadScalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(QuadScalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &QuadScalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> QuadScalar {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(QuadScalar::zero)
    }

    /// Number of variable slots touched by any term.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Smallest variable index occurring in the polynomial.
    pub fn first_var(&self) -> Option<usize> {
        (0..self.width()).find(|&v| self.mentions(v))
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: QuadScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut acc, rest) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), -c);
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut acc = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                acc.add_term(m1.mul(m2), c1 * c2);
            }
        }
        acc
    }

    pub fn scale(&self, c: &QuadScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &QuadScalar) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.checked_inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if divisor.is_constant() {
            let inv = divisor.constant_term().checked_inv().ok()?;
            return Some(self.scale(&inv));
        }
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.checked_inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            out[k].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Leading coefficient with respect to `var`.
    pub fn lead_in(&self, var: usize) -> Poly {
        let d = self.degree_in(var);
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(var) == d)
                .map(|(m, c)| (m.with_exp(var, 0), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                acc.add_term(m.with_exp(var, e - 1), c * &QuadScalar::from_int(e as i64));
            }
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64], radical_value: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64_with(radical_value);
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        v *= point.get(i).copied().unwrap_or(0.0).powi(e as i32);
                    }
                }
                v
            })
            .sum()
    }

    /// Radicand shared by the coefficients, 0 if all are rational.
    pub fn radicand(&self) -> u64 {
        self.terms.values().map(QuadScalar::radicand).max().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            // Irrational coefficients are parenthesized and always follow " + ".
            let negative = c.is_rational() && c.signum() < 0;
            let c = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let write_coeff = |f: &mut fmt::Formatter<'_>| {
                if c.is_rational() {
                    write!(f, "{c}")
                } else {
                    write!(f, "({c})")
                }
            };
            if m.is_one() {
                write_coeff(f)?;
                continue;
            }
            let mut first = true;
            if !c.is_one() {
                write_coeff(f)?;
                first = false;
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                let name = self
                    .names
                    .get(v)
                    .map(String::as_str)
                    .unwrap_or("?");
                if e == 1 {
                    f.write_str(name)?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
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

    #[test]
    fn monomial_order_is_lex() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![1, 5]);
        assert!(a > b);
        assert_eq!(Monomial::new(vec![1, 0]), Monomial::new(vec![1]));
        assert!(Monomial::new(vec![0, 1]) > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&x()), None);
        assert_eq!(a.pow(3).div_exact(&a.pow(2)), Some(a.clone()));
    }

    #[test]
    fn coefficient_views() {
        // (x^2 y + 3 x + y^2)
        let p = x().pow(2).mul(&y()).add(&x().scale(&3.into())).add(&y().pow(2));
        let c = p.coeffs_in(0);
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], y().pow(2));
        assert_eq!(c[1], Poly::constant(3.into()));
        assert_eq!(c[2], y());
        assert_eq!(p.lead_in(1), Poly::one());
        assert_eq!(p.derivative(0), x().mul(&y()).scale(&2.into()).add(&Poly::constant(3.into())));
    }

    #[test]
    fn display() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = x().pow(2).sub(&y().scale(&QuadScalar::from_ratio(3, 2))).add(&Poly::constant((-1).into()));
        assert_eq!(p.display(&names).to_string(), "x^2 - 3/2*y - 1");
    }
}
