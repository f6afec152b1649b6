//! Vector fields, (1,1)- and (1,2)-tensor fields, affine connections, Lie
//! brackets and Lie derivatives, all in components on a single chart.
//!
//! Index convention: a (1,1)-tensor entry `[h][i]` is `T^h_i` with `h` the
//! output (row) index, so `(T X)^h = T^h_i X^i`. A (1,2)-tensor entry
//! `[h][i][j]` is `N^h_{ij}` and `N(X, Y)^h = N^h_{ij} X^i Y^j`. Connection
//! coefficients `[h][l][i]` are `Γ^h_{li}`, with no symmetry assumed.

use crate::error::{Error, Result};
use crate::numfield::QuadScalar;
use crate::symexpr::{Chart, RatFunc};

pub(crate) fn same_chart(a: &Chart, b: &Chart) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch {
            expected: a.to_string(),
            found: b.to_string(),
        })
    }
}

fn check_components(chart: &Chart, comps: &[RatFunc], expected: usize) -> Result<()> {
    if comps.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: comps.len(),
        });
    }
    if let Some(f) = comps.iter().find(|f| !chart.admits(f)) {
        return Err(Error::InvalidChart(format!(
            "component mentions a variable outside ({chart}): width {}",
            f.width()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<RatFunc>,
}

impl VectorField {
    pub fn new(chart: Chart, comps: Vec<RatFunc>) -> Result<Self> {
        check_components(&chart, &comps, chart.dim())?;
        Ok(Self { chart, comps })
    }

    pub fn zero(chart: &Chart) -> Self {
        Self {
            chart: chart.clone(),
            comps: vec![RatFunc::zero(); chart.dim()],
        }
    }

    /// The coordinate field `∂/∂x^i`.
    pub fn basis(chart: &Chart, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = RatFunc::one();
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn component(&self, h: usize) -> &RatFunc {
        &self.comps[h]
    }

    pub fn into_components(self) -> Vec<RatFunc> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        self.map(|c| c * f)
    }

    pub fn scale_const(&self, c: &QuadScalar) -> Self {
        self.map(|v| v.scale(c))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Self {
        Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Directional derivative `X(f) = X^a ∂_a f`.
    pub fn derive(&self, f: &RatFunc) -> RatFunc {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .fold(RatFunc::zero(), |acc, (a, x)| &acc + &(x * &f.derivative(a)))
    }

    pub fn render(&self) -> Vec<String> {
        self.comps.iter().map(|c| self.chart.fmt_expr(c)).collect()
    }
}

/// A (1,1)-tensor field stored row-major: entry `[h][i]` is `T^h_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor11Field {
    chart: Chart,
    comps: Vec<RatFunc>,
}

impl Tensor11Field {
    pub fn new(chart: Chart, comps: Vec<RatFunc>) -> Result<Self> {
        let n = chart.dim();
        check_components(&chart, &comps, n * n)?;
        Ok(Self { chart, comps })
    }

    pub fn from_rows(chart: Chart, rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let n = chart.dim();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Self::new(chart, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(chart: &Chart, f: impl Fn(usize, usize) -> RatFunc) -> Self {
        let n = chart.dim();
        Self {
            chart: chart.clone(),
            comps: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::from_fn(chart, |_, _| RatFunc::zero())
    }

    pub fn identity(chart: &Chart) -> Self {
        Self::from_fn(chart, |h, i| if h == i { RatFunc::one() } else { RatFunc::zero() })
    }

    /// `c · I`.
    pub fn scalar(chart: &Chart, c: &QuadScalar) -> Self {
        Self::identity(chart).scale_const(c)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn get(&self, h: usize, i: usize) -> &RatFunc {
        &self.comps[h * self.dim() + i]
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    /// The image of `∂/∂x^i`.
    pub fn column(&self, i: usize) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: (0..self.dim()).map(|h| self.get(h, i).clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    /// First nonzero entry as `(h, i, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &RatFunc)> {
        let n = self.dim();
        self.comps
            .iter()
            .enumerate()
            .find(|(_, f)| !f.is_zero())
            .map(|(k, f)| (k / n, k % n, f))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        self.map(|c| c * f)
    }

    pub fn scale_const(&self, c: &QuadScalar) -> Self {
        self.map(|v| v.scale(c))
    }

    /// `a·I + b·self`.
    pub fn affine(&self, a: &QuadScalar, b: &QuadScalar) -> Self {
        let n = self.dim();
        Self {
            chart: self.chart.clone(),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let s = v.scale(b);
                    if k / n == k % n {
                        &s + &RatFunc::constant(a.clone())
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        compose_t11(self, other)
    }

    pub fn apply(&self, x: &VectorField) -> Result<VectorField> {
        apply_t11(self, x)
    }

    pub fn square(&self) -> Self {
        compose_t11(self, self).expect("same chart")
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.chart, |h, i| self.get(i, h).clone())
    }

    /// Exact inverse by Gauss–Jordan elimination over the rational functions.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim();
        let mut a: Vec<Vec<RatFunc>> = (0..n)
            .map(|h| (0..n).map(|i| self.get(h, i).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<RatFunc>> = (0..n)
            .map(|h| (0..n).map(|i| if h == i { RatFunc::one() } else { RatFunc::zero() }).collect())
            .collect();
        for col in 0..n {
            // Prefer constant pivots to keep the entries small.
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| (!a[r][col].is_constant(), a[r][col].numer().len()))
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].checked_inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p;
                inv[col][j] = &inv[col][j] * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = &factor * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                    let t = &factor * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
        Self::from_rows(self.chart.clone(), inv)
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        let n = self.dim();
        (0..n)
            .map(|h| (0..n).map(|i| self.chart.fmt_expr(self.get(h, i))).collect())
            .collect()
    }
}

/// A (1,2)-tensor field: entry `[h][i][j]` is `N^h_{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor12Field {
    chart: Chart,
    comps: Vec<RatFunc>,
}

impl Tensor12Field {
    pub fn new(chart: Chart, comps: Vec<RatFunc>) -> Result<Self> {
        let n = chart.dim();
        check_components(&chart, &comps, n * n * n)?;
        Ok(Self { chart, comps })
    }

    pub fn from_fn(chart: &Chart, f: impl Fn(usize, usize, usize) -> RatFunc) -> Self {
        let n = chart.dim();
        Self {
            chart: chart.clone(),
            comps: (0..n * n * n)
                .map(|k| f(k / (n * n), (k / n) % n, k % n))
                .collect(),
        }
    }

    /// Assembles the tensor from its values on coordinate basis pairs:
    /// `values(i, j)` must be `N(∂_i, ∂_j)`.
    pub fn from_basis_values(chart: &Chart, values: impl Fn(usize, usize) -> VectorField) -> Self {
        let n = chart.dim();
        let cols: Vec<VectorField> = (0..n * n).map(|k| values(k / n, k % n)).collect();
        Self::from_fn(chart, |h, i, j| cols[i * n + j].comps[h].clone())
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::from_fn(chart, |_, _, _| RatFunc::zero())
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn get(&self, h: usize, i: usize, j: usize) -> &RatFunc {
        let n = self.dim();
        &self.comps[(h * n + i) * n + j]
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, &RatFunc)> {
        let n = self.dim();
        self.comps
            .iter()
            .enumerate()
            .find(|(_, f)| !f.is_zero())
            .map(|(k, f)| (k / (n * n), (k / n) % n, k % n, f))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale_const(&self, c: &QuadScalar) -> Self {
        self.map(|v| v.scale(c))
    }

    /// `N(X, Y)^h = N^h_{ij} X^i Y^j`.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        same_chart(&self.chart, &x.chart)?;
        same_chart(&self.chart, &y.chart)?;
        let n = self.dim();
        let comps = (0..n)
            .map(|h| {
                let mut acc = RatFunc::zero();
                for i in 0..n {
                    if x.comps[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let c = self.get(h, i, j);
                        if c.is_zero() || y.comps[j].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&(c * &x.comps[i]) * &y.comps[j]);
                    }
                }
                acc
            })
            .collect();
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    /// `(T ∘ N)^h_{ij} = T^h_a N^a_{ij}`.
    pub fn compose_left(&self, t: &Tensor11Field) -> Result<Self> {
        same_chart(&self.chart, &t.chart)?;
        let n = self.dim();
        Ok(Self::from_fn(&self.chart, |h, i, j| {
            (0..n).fold(RatFunc::zero(), |acc, a| {
                &acc + &(t.get(h, a) * self.get(a, i, j))
            })
        }))
    }
}

/// Affine connection coefficients: entry `[h][l][i]` is `Γ^h_{li}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    chart: Chart,
    comps: Vec<RatFunc>,
}

impl Connection {
    pub fn new(chart: Chart, comps: Vec<RatFunc>) -> Result<Self> {
        let n = chart.dim();
        check_components(&chart, &comps, n * n * n)?;
        Ok(Self { chart, comps })
    }

    pub fn from_fn(chart: &Chart, f: impl Fn(usize, usize, usize) -> RatFunc) -> Self {
        let n = chart.dim();
        Self {
            chart: chart.clone(),
            comps: (0..n * n * n)
                .map(|k| f(k / (n * n), (k / n) % n, k % n))
                .collect(),
        }
    }

    pub fn flat(chart: &Chart) -> Self {
        Self::from_fn(chart, |_, _, _| RatFunc::zero())
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// `Γ^h_{li}`.
    pub fn get(&self, h: usize, l: usize, i: usize) -> &RatFunc {
        let n = self.dim();
        &self.comps[(h * n + l) * n + i]
    }

    pub fn is_flat(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }
}

/// `(T X)^h = T^h_i X^i`.
pub fn apply_t11(t: &Tensor11Field, x: &VectorField) -> Result<VectorField> {
    same_chart(&t.chart, &x.chart)?;
    let n = t.dim();
    let comps = (0..n)
        .map(|h| {
            (0..n)
                .filter(|&i| !x.comps[i].is_zero())
                .fold(RatFunc::zero(), |acc, i| &acc + &(t.get(h, i) * &x.comps[i]))
        })
        .collect();
    Ok(VectorField {
        chart: t.chart.clone(),
        comps,
    })
}

/// `(S ∘ T)^h_i = S^h_a T^a_i`.
pub fn compose_t11(s: &Tensor11Field, t: &Tensor11Field) -> Result<Tensor11Field> {
    same_chart(&s.chart, &t.chart)?;
    let n = s.dim();
    Ok(Tensor11Field::from_fn(&s.chart, |h, i| {
        (0..n).fold(RatFunc::zero(), |acc, a| {
            let (l, r) = (s.get(h, a), t.get(a, i));
            if l.is_zero() || r.is_zero() {
                acc
            } else {
                &acc + &(l * r)
            }
        })
    }))
}

/// `[X, Y]^h = X^a ∂_a Y^h - Y^a ∂_a X^h`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(&x.chart, &y.chart)?;
    let comps = (0..x.dim())
        .map(|h| &x.derive(&y.comps[h]) - &y.derive(&x.comps[h]))
        .collect();
    Ok(VectorField {
        chart: x.chart.clone(),
        comps,
    })
}

/// `L_V X = [V, X]`.
pub fn lie_derivative_vf(v: &VectorField, x: &VectorField) -> Result<VectorField> {
    lie_bracket(v, x)
}

// ∂_a V^h, indexed [h][a]
fn jacobian(v: &VectorField) -> Vec<Vec<RatFunc>> {
    let n = v.dim();
    (0..n)
        .map(|h| (0..n).map(|a| v.comps[h].derivative(a)).collect())
        .collect()
}

/// `(L_V T)^h_i = V^a ∂_a T^h_i - T^a_i ∂_a V^h + T^h_a ∂_i V^a`.
#[allow(clippy::needless_range_loop)]
pub fn lie_derivative_t11(v: &VectorField, t: &Tensor11Field) -> Result<Tensor11Field> {
    same_chart(&v.chart, &t.chart)?;
    let n = t.dim();
    let dv = jacobian(v);
    Ok(Tensor11Field::from_fn(&t.chart, |h, i| {
        let mut acc = v.derive(t.get(h, i));
        for a in 0..n {
            if !dv[h][a].is_zero() {
                acc = &acc - &(t.get(a, i) * &dv[h][a]);
            }
            if !dv[a][i].is_zero() {
                acc = &acc + &(t.get(h, a) * &dv[a][i]);
            }
        }
        acc
    }))
}

/// `(L_V N)^h_{ij} = V^a ∂_a N^h_{ij} - N^a_{ij} ∂_a V^h + N^h_{aj} ∂_i V^a + N^h_{ia} ∂_j V^a`.
#[allow(clippy::needless_range_loop)]
pub fn lie_derivative_t12(v: &VectorField, t: &Tensor12Field) -> Result<Tensor12Field> {
    same_chart(&v.chart, &t.chart)?;
    let n = t.dim();
    let dv = jacobian(v);
    Ok(Tensor12Field::from_fn(&t.chart, |h, i, j| {
        let mut acc = v.derive(t.get(h, i, j));
        for a in 0..n {
            if !dv[h][a].is_zero() {
                acc = &acc - &(t.get(a, i, j) * &dv[h][a]);
            }
            if !dv[a][i].is_zero() {
                acc = &acc + &(t.get(h, a, j) * &dv[a][i]);
            }
            if !dv[a][j].is_zero() {
                acc = &acc + &(t.get(h, i, a) * &dv[a][j]);
            }
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::MetallicParams;
    use crate::symexpr::parse_expr;
    use crate::testing::Gen;

    fn chart2() -> Chart {
        Chart::new(["x", "y"]).unwrap()
    }

    fn e(c: &Chart, s: &str) -> RatFunc {
        parse_expr(s, c, &MetallicParams::new(1, 1).unwrap()).unwrap()
    }

    fn vf(c: &Chart, comps: &[&str]) -> VectorField {
        VectorField::new(c.clone(), comps.iter().map(|s| e(c, s)).collect()).unwrap()
    }

    fn t11(c: &Chart, rows: &[&[&str]]) -> Tensor11Field {
        Tensor11Field::from_rows(
            c.clone(),
            rows.iter().map(|r| r.iter().map(|s| e(c, s)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn application() {
        let c = chart2();
        let x = vf(&c, &["x*y", "1/(1+x^2)"]);
        assert_eq!(apply_t11(&Tensor11Field::identity(&c), &x).unwrap(), x);
        let d = t11(&c, &[&["sigma", "0"], &["0", "alpha - sigma"]]);
        assert_eq!(
            apply_t11(&d, &VectorField::basis(&c, 0)).unwrap(),
            vf(&c, &["sigma", "0"])
        );
    }

    #[test]
    fn compositions_of_classic_structures() {
        let c = chart2();
        let p = t11(&c, &[&["1", "0"], &["0", "-1"]]);
        assert_eq!(p.square(), Tensor11Field::identity(&c));
        let t = t11(&c, &[&["0", "1"], &["0", "0"]]);
        assert!(t.square().is_zero());
        let j = t11(&c, &[&["0", "-1"], &["1", "0"]]);
        assert_eq!(j.square(), Tensor11Field::scalar(&c, &QuadScalar::from_int(-1)));
    }

    #[test]
    fn chart_mismatch() {
        let a = chart2();
        let b = Chart::new(["u", "v"]).unwrap();
        let err = apply_t11(&Tensor11Field::identity(&a), &VectorField::basis(&b, 0));
        assert!(matches!(err, Err(Error::ChartMismatch { .. })));
        assert!(lie_bracket(&VectorField::basis(&a, 0), &VectorField::basis(&b, 0)).is_err());
    }

    #[test]
    fn brackets() {
        let c = chart2();
        let dx = VectorField::basis(&c, 0);
        let xdy = vf(&c, &["0", "x"]);
        assert_eq!(lie_bracket(&dx, &xdy).unwrap(), VectorField::basis(&c, 1));
        let v = vf(&c, &["x", "0"]);
        assert_eq!(lie_derivative_vf(&v, &dx).unwrap(), vf(&c, &["-1", "0"]));
        let mut g = Gen::new(11);
        for _ in 0..10 {
            let x = g.poly_field(&c, 2);
            assert!(lie_bracket(&x, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn jacobi_identity() {
        let c = chart2();
        let mut g = Gen::new(3);
        for _ in 0..10 {
            let (x, y, z) = (g.poly_field(&c, 2), g.poly_field(&c, 2), g.poly_field(&c, 2));
            let t1 = lie_bracket(&x, &lie_bracket(&y, &z).unwrap()).unwrap();
            let t2 = lie_bracket(&y, &lie_bracket(&z, &x).unwrap()).unwrap();
            let t3 = lie_bracket(&z, &lie_bracket(&x, &y).unwrap()).unwrap();
            assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
        }
    }

    #[test]
    fn lie_derivative_of_constant_tensor_along_linear_field() {
        let c = chart2();
        let t = t11(&c, &[&["1", "2"], &["3", "4"]]);
        // V = A x with A = [[0,1],[5,-2]]
        let v = vf(&c, &["y", "5*x - 2*y"]);
        let a = t11(&c, &[&["0", "1"], &["5", "-2"]]);
        let expected = t.compose(&a).unwrap().sub(&a.compose(&t).unwrap()).unwrap();
        assert_eq!(lie_derivative_t11(&v, &t).unwrap(), expected);
        let id = vf(&c, &["x", "y"]);
        assert!(lie_derivative_t11(&id, &t).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_t11_characterization() {
        let c = chart2();
        let mut g = Gen::new(5);
        for _ in 0..8 {
            let v = g.poly_field(&c, 2);
            let t = g.poly_t11(&c, 1);
            let x = g.rational_field(&c);
            let lhs = lie_derivative_t11(&v, &t).unwrap().apply(&x).unwrap();
            let rhs = lie_derivative_vf(&v, &t.apply(&x).unwrap())
                .unwrap()
                .sub(&t.apply(&lie_derivative_vf(&v, &x).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lie_derivative_t12_characterization() {
        let c = chart2();
        let mut g = Gen::new(9);
        for _ in 0..6 {
            let v = g.poly_field(&c, 2);
            let n = g.poly_t12(&c, 1);
            let (x, y) = (g.poly_field(&c, 1), g.rational_field(&c));
            let lhs = lie_derivative_t12(&v, &n).unwrap().eval(&x, &y).unwrap();
            let rhs = lie_derivative_vf(&v, &n.eval(&x, &y).unwrap())
                .unwrap()
                .sub(&n.eval(&lie_derivative_vf(&v, &x).unwrap(), &y).unwrap())
                .unwrap()
                .sub(&n.eval(&x, &lie_derivative_vf(&v, &y).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        let n = g.poly_t12(&c, 0);
        assert!(lie_derivative_t12(&vf(&c, &["2", "-1"]), &n).unwrap().is_zero());
        let n = g.poly_t12(&c, 2);
        assert!(lie_derivative_t12(&VectorField::zero(&c), &n).unwrap().is_zero());
    }

    #[test]
    fn module_laws() {
        let c = chart2();
        let mut g = Gen::new(21);
        for _ in 0..10 {
            let (s, t) = (g.poly_t11(&c, 1), g.poly_t11(&c, 2));
            let (v, x) = (g.poly_field(&c, 2), g.rational_field(&c));
            assert_eq!(
                s.compose(&t).unwrap().apply(&x).unwrap(),
                s.apply(&t.apply(&x).unwrap()).unwrap()
            );
            // Leibniz
            let lhs = lie_derivative_vf(&v, &t.apply(&x).unwrap()).unwrap();
            let rhs = lie_derivative_t11(&v, &t)
                .unwrap()
                .apply(&x)
                .unwrap()
                .add(&t.apply(&lie_derivative_vf(&v, &x).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            // bilinearity over constants
            let k = QuadScalar::from_ratio(-3, 2);
            let y = g.poly_field(&c, 2);
            assert_eq!(
                lie_bracket(&x.scale_const(&k).add(&y).unwrap(), &v).unwrap(),
                lie_bracket(&x, &v)
                    .unwrap()
                    .scale_const(&k)
                    .add(&lie_bracket(&y, &v).unwrap())
                    .unwrap()
            );
            assert_eq!(
                lie_bracket(&x, &v).unwrap(),
                lie_bracket(&v, &x).unwrap().scale_const(&QuadScalar::from_int(-1))
            );
        }
    }

    #[test]
    fn basis_evaluation_reads_entries() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let mut g = Gen::new(2);
        let n = g.poly_t12(&c, 1);
        for i in 0..3 {
            for j in 0..3 {
                let v = n.eval(&VectorField::basis(&c, i), &VectorField::basis(&c, j)).unwrap();
                for h in 0..3 {
                    assert_eq!(v.component(h), n.get(h, i, j));
                }
            }
        }
    }

    #[test]
    fn exact_inverse() {
        let c = chart2();
        let b = t11(&c, &[&["1", "x+y"], &["-(x+y)", "1"]]);
        let inv = b.inverse().unwrap();
        assert_eq!(b.compose(&inv).unwrap(), Tensor11Field::identity(&c));
        assert_eq!(
            inv.get(0, 1),
            &e(&c, "-(x+y)/(1+(x+y)^2)")
        );
        assert_eq!(t11(&c, &[&["x", "y"], &["2*x", "2*y"]]).inverse(), Err(Error::Singular));
    }
}
