//! Rational functions in named chart coordinates.
//!
//! Component functions of every field are [`RatFunc`]s: quotients of sparse
//! multivariate polynomials over ℚ(√d), kept in a canonical form so that
//! `f == g` decides equality of rational functions and [`RatFunc::is_zero`]
//! is the exact verdict behind every identity check in the crate.
//!
//! Variables are positional. A [`Chart`] names the positions; the tangent
//! bundle chart appends the fiber coordinates after the base ones, so a
//! function of the base coordinates is, unchanged, a function on the bundle.

mod gcd;
mod parse;
mod poly;
mod ratfunc;

use std::collections::BTreeMap;
use std::fmt;

pub use parse::parse_expr;
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

/// A single global coordinate chart: an ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if RESERVED.contains(&n.as_str()) {
                return Err(Error::InvalidChart(format!("`{n}` is a reserved name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        Ok(Self { names })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<RatFunc> {
        self.index_of(name)
            .map(RatFunc::var)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Whether `f` mentions only this chart's coordinates.
    pub fn admits(&self, f: &RatFunc) -> bool {
        f.width() <= self.dim()
    }

    pub fn fmt_expr(&self, f: &RatFunc) -> String {
        f.display(&self.names).to_string()
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}

pub(crate) const RESERVED: [&str; 5] = ["alpha", "beta", "sigma", "sqrtD", "sqrt"];

/// `∂f/∂var` for a named coordinate of `chart`.
pub fn differentiate(f: &RatFunc, chart: &Chart, var: &str) -> Result<RatFunc> {
    let i = chart
        .index_of(var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    Ok(f.derivative(i))
}

/// Simultaneous substitution of named coordinates.
pub fn substitute(f: &RatFunc, chart: &Chart, bindings: &[(&str, RatFunc)]) -> Result<RatFunc> {
    let mut map = BTreeMap::new();
    for (name, target) in bindings {
        let i = chart
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        map.insert(i, target.clone());
    }
    f.substitute(&map)
}

/// Numeric value of `f` at a named point. `None` means the point is too
/// close to a pole and should be resampled.
pub fn eval_numeric(
    f: &RatFunc,
    chart: &Chart,
    point: &BTreeMap<String, f64>,
    radical_value: f64,
) -> Result<Option<f64>> {
    let mut coords = vec![0.0; chart.dim()];
    for (name, &v) in point {
        let i = chart
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        coords[i] = v;
    }
    Ok(f.eval_f64(&coords, radical_value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::MetallicParams;

    #[test]
    fn chart_validation() {
        assert!(Chart::new(["x", "y"]).is_ok());
        assert!(Chart::new(["x", "x"]).is_err());
        assert!(Chart::new(["sigma"]).is_err());
        assert!(Chart::new(["2x"]).is_err());
        assert!(Chart::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn named_operations() {
        let c = Chart::new(["x", "y"]).unwrap();
        let p = MetallicParams::new(1, 1).unwrap();
        let f = parse_expr("x^2*y", &c, &p).unwrap();
        assert_eq!(
            differentiate(&f, &c, "x").unwrap(),
            parse_expr("2*x*y", &c, &p).unwrap()
        );
        assert!(differentiate(&f, &c, "z").is_err());
        let g = substitute(&f, &c, &[("y", parse_expr("x+1", &c, &p).unwrap())]).unwrap();
        assert_eq!(g, parse_expr("x^3 + x^2", &c, &p).unwrap());
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), 2.0);
        pt.insert("y".to_string(), 0.5);
        assert_eq!(eval_numeric(&f, &c, &pt, 5f64.sqrt()).unwrap(), Some(2.0));
        let s = parse_expr("sigma", &c, &p).unwrap();
        let v = eval_numeric(&s, &c, &pt, 5f64.sqrt()).unwrap().unwrap();
        assert!((v - 1.618_033_988_7).abs() < 1e-10);
    }
}
