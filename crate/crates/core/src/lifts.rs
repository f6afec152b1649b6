//! The tangent bundle chart `(x^h, y^h)` and the vertical, complete and
//! horizontal lifts of vector fields and (1,1)-tensors, together with the
//! structure `J̃` built from the horizontal/vertical splitting of a connection.
//!
//! Fields on the total chart list the `n` base components first, then the `n`
//! fiber components. Base expressions embed unchanged because the fiber
//! variables are appended after the base ones.

use crate::error::Result;
use crate::geometry::{same_chart, Connection, Tensor11Field, VectorField};
use crate::metallic::metallic_recipe;
use crate::numfield::{MetallicParams, QuadScalar};
use crate::symexpr::{Chart, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentBundleChart {
    base: Chart,
    total: Chart,
}

impl TangentBundleChart {
    /// Fiber coordinates are named `v_<base name>`, with extra `v` prefixes
    /// if that collides with an existing name.
    pub fn new(base: &Chart) -> Self {
        let mut names: Vec<String> = base.names().to_vec();
        for name in base.names() {
            let mut candidate = format!("v_{name}");
            while names.contains(&candidate) {
                candidate.insert(0, 'v');
            }
            names.push(candidate);
        }
        let total = Chart::new(names).expect("derived names are valid identifiers");
        Self {
            base: base.clone(),
            total,
        }
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn total(&self) -> &Chart {
        &self.total
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// The fiber coordinate `y^a`.
    pub fn fiber_var(&self, a: usize) -> RatFunc {
        RatFunc::var(self.base_dim() + a)
    }

    /// `y^a ∂_a f` for a base function `f`.
    pub fn fiber_derivative(&self, f: &RatFunc) -> RatFunc {
        (0..self.base_dim())
            .map(|a| &self.fiber_var(a) * &f.derivative(a))
            .fold(RatFunc::zero(), |acc, t| &acc + &t)
    }

    fn field(&self, upper: Vec<RatFunc>, lower: Vec<RatFunc>) -> VectorField {
        let mut comps = upper;
        comps.extend(lower);
        VectorField::new(self.total.clone(), comps).expect("2n components on the total chart")
    }

    /// Assembles a `2n × 2n` tensor from its four `n × n` blocks.
    pub fn blocks(
        &self,
        block: impl Fn(usize, usize, usize, usize) -> RatFunc,
    ) -> Tensor11Field {
        let n = self.base_dim();
        Tensor11Field::from_fn(&self.total, |h, i| block(h / n, i / n, h % n, i % n))
    }

    /// Splits a total-chart field into its base and fiber halves.
    pub fn split(&self, x: &VectorField) -> Result<(Vec<RatFunc>, Vec<RatFunc>)> {
        same_chart(&self.total, x.chart())?;
        let n = self.base_dim();
        let comps = x.components();
        Ok((comps[..n].to_vec(), comps[n..].to_vec()))
    }

    fn check_base(&self, chart: &Chart) -> Result<()> {
        same_chart(&self.base, chart)
    }
}

/// `X^V = (0, X^h)`.
pub fn vertical_lift_vf(tm: &TangentBundleChart, x: &VectorField) -> Result<VectorField> {
    tm.check_base(x.chart())?;
    Ok(tm.field(vec![RatFunc::zero(); tm.base_dim()], x.components().to_vec()))
}

/// `X^C = (X^h, y^a ∂_a X^h)`.
pub fn complete_lift_vf(tm: &TangentBundleChart, x: &VectorField) -> Result<VectorField> {
    tm.check_base(x.chart())?;
    let lower = x.components().iter().map(|c| tm.fiber_derivative(c)).collect();
    Ok(tm.field(x.components().to_vec(), lower))
}

/// `T^C = [[T, 0], [y^a ∂_a T, T]]`.
pub fn complete_lift_t11(tm: &TangentBundleChart, t: &Tensor11Field) -> Result<Tensor11Field> {
    tm.check_base(t.chart())?;
    Ok(tm.blocks(|bh, bi, h, i| match (bh, bi) {
        (0, 1) => RatFunc::zero(),
        (1, 0) => tm.fiber_derivative(t.get(h, i)),
        _ => t.get(h, i).clone(),
    }))
}

/// `(∇_l T)^h_i = ∂_l T^h_i + Γ^h_{la} T^a_i - Γ^a_{li} T^h_a`.
pub fn covariant_derivative_t11(
    t: &Tensor11Field,
    conn: &Connection,
    l: usize,
    h: usize,
    i: usize,
) -> RatFunc {
    let n = t.dim();
    let mut acc = t.get(h, i).derivative(l);
    for a in 0..n {
        let g = conn.get(h, l, a);
        if !g.is_zero() {
            acc = &acc + &(g * t.get(a, i));
        }
        let g = conn.get(a, l, i);
        if !g.is_zero() {
            acc = &acc - &(g * t.get(h, a));
        }
    }
    acc
}

/// `∇_γ T`: zero except for the lower-left block `y^l (∇_l T)^h_i`.
pub fn nabla_gamma_t11(
    tm: &TangentBundleChart,
    t: &Tensor11Field,
    conn: &Connection,
) -> Result<Tensor11Field> {
    tm.check_base(t.chart())?;
    tm.check_base(conn.chart())?;
    let n = tm.base_dim();
    Ok(tm.blocks(|bh, bi, h, i| {
        if (bh, bi) != (1, 0) {
            return RatFunc::zero();
        }
        (0..n).fold(RatFunc::zero(), |acc, l| {
            &acc + &(&tm.fiber_var(l) * &covariant_derivative_t11(t, conn, l, h, i))
        })
    }))
}

/// `∇_γ X = (0, y^l (∂_l X^h + Γ^h_{la} X^a))`.
pub fn nabla_gamma_vf(
    tm: &TangentBundleChart,
    x: &VectorField,
    conn: &Connection,
) -> Result<VectorField> {
    tm.check_base(x.chart())?;
    tm.check_base(conn.chart())?;
    let n = tm.base_dim();
    let lower = (0..n)
        .map(|h| {
            (0..n).fold(RatFunc::zero(), |acc, l| {
                let mut cov = x.component(h).derivative(l);
                for a in 0..n {
                    cov = &cov + &(conn.get(h, l, a) * x.component(a));
                }
                &acc + &(&tm.fiber_var(l) * &cov)
            })
        })
        .collect();
    Ok(tm.field(vec![RatFunc::zero(); n], lower))
}

/// `X^H = (X^h, -Γ^h_{la} y^l X^a)`.
pub fn horizontal_lift_vf(
    tm: &TangentBundleChart,
    x: &VectorField,
    conn: &Connection,
) -> Result<VectorField> {
    tm.check_base(x.chart())?;
    tm.check_base(conn.chart())?;
    let n = tm.base_dim();
    let lower = (0..n)
        .map(|h| {
            let mut acc = RatFunc::zero();
            for l in 0..n {
                for a in 0..n {
                    let g = conn.get(h, l, a);
                    if !g.is_zero() && !x.component(a).is_zero() {
                        acc = &acc - &(&(g * &tm.fiber_var(l)) * x.component(a));
                    }
                }
            }
            acc
        })
        .collect();
    Ok(tm.field(x.components().to_vec(), lower))
}

/// `T^H = T^C - ∇_γ T`.
pub fn horizontal_lift_t11(
    tm: &TangentBundleChart,
    t: &Tensor11Field,
    conn: &Connection,
) -> Result<Tensor11Field> {
    complete_lift_t11(tm, t)?.sub(&nabla_gamma_t11(tm, t, conn)?)
}

/// The adapted frame `(∂_i^H, ∂_i^V)` as columns: `[[I, 0], [G, I]]` with
/// `G^h_i = -Γ^h_{li} y^l`.
pub fn adapted_frame(tm: &TangentBundleChart, conn: &Connection) -> Result<Tensor11Field> {
    tm.check_base(conn.chart())?;
    let n = tm.base_dim();
    let cols: Vec<VectorField> = (0..n)
        .map(|i| horizontal_lift_vf(tm, &VectorField::basis(&tm.base, i), conn))
        .chain((0..n).map(|i| vertical_lift_vf(tm, &VectorField::basis(&tm.base, i))))
        .collect::<Result<_>>()?;
    Ok(Tensor11Field::from_fn(&tm.total, |h, i| cols[i].component(h).clone()))
}

/// The coordinate tensor acting on the adapted frame by the block matrix
/// `[[a I, c I], [b I, d I]]`: `X^H ↦ a X^H + b X^V`, `X^V ↦ c X^H + d X^V`.
pub fn frame_tensor(
    tm: &TangentBundleChart,
    conn: &Connection,
    [a, b, c, d]: [&QuadScalar; 4],
) -> Result<Tensor11Field> {
    let frame = adapted_frame(tm, conn)?;
    let inverse = frame.inverse()?;
    let coeffs = tm.blocks(|bh, bi, h, i| {
        if h != i {
            return RatFunc::zero();
        }
        let k = match (bh, bi) {
            (0, 0) => a,
            (1, 0) => b,
            (0, 1) => c,
            _ => d,
        };
        RatFunc::constant(k.clone())
    });
    frame.compose(&coeffs)?.compose(&inverse)
}

/// `P̃` with `P̃ X^H = X^V` and `P̃ X^V = X^H`.
pub fn swap_structure(tm: &TangentBundleChart, conn: &Connection) -> Result<Tensor11Field> {
    let (zero, one) = (QuadScalar::zero(), QuadScalar::one());
    frame_tensor(tm, conn, [&zero, &one, &one, &zero])
}

/// `J̃ = ½(αI + √D P̃)`, so `J̃X^H = ½(αX^H + √D X^V)` and
/// `J̃X^V = ½(αX^V + √D X^H)`.
pub fn jtilde_structure(
    tm: &TangentBundleChart,
    conn: &Connection,
    params: &MetallicParams,
) -> Result<Tensor11Field> {
    Ok(metallic_recipe(&swap_structure(tm, conn)?, params))
}

/// The variant without `α` on the first term:
/// `X^H ↦ ½(X^H + √D X^V)`, `X^V ↦ ½(X^V + √D X^H)`.
pub fn jtilde_printed(
    tm: &TangentBundleChart,
    conn: &Connection,
    params: &MetallicParams,
) -> Result<Tensor11Field> {
    let half = QuadScalar::from_ratio(1, 2);
    let diag = half.clone();
    let off = params.sqrt_d() * &half;
    frame_tensor(tm, conn, [&diag, &off, &off, &diag])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lie_bracket;
    use crate::metallic::{metallic_from_product, metallic_residual};
    use crate::testing::Gen;

    fn chart(names: &[&str]) -> Chart {
        Chart::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn fiber_names() {
        let tm = TangentBundleChart::new(&chart(&["x", "v_x"]));
        assert_eq!(tm.total().names(), ["x", "v_x", "vv_x", "v_v_x"]);
        let tm = TangentBundleChart::new(&chart(&["x", "y"]));
        assert_eq!(tm.total().to_string(), "x, y, v_x, v_y");
    }

    #[test]
    fn one_dimensional_lifts() {
        let c = chart(&["x"]);
        let tm = TangentBundleChart::new(&c);
        let dx = VectorField::basis(&c, 0);
        let xdx = dx.scale(&RatFunc::var(0));
        assert_eq!(vertical_lift_vf(&tm, &dx).unwrap().render(), ["0", "1"]);
        assert_eq!(vertical_lift_vf(&tm, &xdx).unwrap().render(), ["0", "x"]);
        assert_eq!(complete_lift_vf(&tm, &xdx).unwrap().render(), ["x", "v_x"]);
        assert_eq!(complete_lift_vf(&tm, &dx).unwrap().render(), ["1", "0"]);
    }

    #[test]
    fn lifts_reject_foreign_charts() {
        let tm = TangentBundleChart::new(&chart(&["x"]));
        let other = VectorField::basis(&chart(&["u"]), 0);
        assert!(vertical_lift_vf(&tm, &other).is_err());
        assert!(complete_lift_vf(&tm, &other).is_err());
    }

    #[test]
    fn complete_lift_laws() {
        let c = chart(&["x", "y"]);
        let tm = TangentBundleChart::new(&c);
        let mut g = Gen::new(5);
        for _ in 0..6 {
            let (x, y) = (g.poly_field(&c, 2), g.poly_field(&c, 2));
            let (t, s) = (g.poly_t11(&c, 2), g.poly_t11(&c, 1));
            let (xc, yc) = (complete_lift_vf(&tm, &x).unwrap(), complete_lift_vf(&tm, &y).unwrap());
            let bracket = complete_lift_vf(&tm, &lie_bracket(&x, &y).unwrap()).unwrap();
            assert_eq!(lie_bracket(&xc, &yc).unwrap(), bracket);
            let sum = complete_lift_vf(&tm, &x.add(&y).unwrap()).unwrap();
            assert_eq!(sum, xc.add(&yc).unwrap());
            let vsum = vertical_lift_vf(&tm, &x.add(&y).unwrap()).unwrap();
            let vs = vertical_lift_vf(&tm, &x).unwrap().add(&vertical_lift_vf(&tm, &y).unwrap()).unwrap();
            assert_eq!(vsum, vs);

            let tc = complete_lift_t11(&tm, &t).unwrap();
            let sc = complete_lift_t11(&tm, &s).unwrap();
            let tx = t.apply(&x).unwrap();
            assert_eq!(tc.apply(&xc).unwrap(), complete_lift_vf(&tm, &tx).unwrap());
            assert_eq!(
                tc.apply(&vertical_lift_vf(&tm, &x).unwrap()).unwrap(),
                vertical_lift_vf(&tm, &tx).unwrap()
            );
            let ts = complete_lift_t11(&tm, &t.compose(&s).unwrap()).unwrap();
            assert_eq!(ts, tc.compose(&sc).unwrap());
        }
        let constant = g.poly_t11(&c, 0);
        let lifted = complete_lift_t11(&tm, &constant).unwrap();
        assert_eq!(lifted, tm.blocks(|bh, bi, h, i| if bh == bi { constant.get(h, i).clone() } else { RatFunc::zero() }));
    }

    #[test]
    fn nabla_gamma_cases() {
        let c = chart(&["x", "y"]);
        let tm = TangentBundleChart::new(&c);
        let mut g = Gen::new(9);
        let flat = Connection::flat(&c);
        assert!(nabla_gamma_t11(&tm, &g.poly_t11(&c, 0), &flat).unwrap().is_zero());
        let t = g.poly_t11(&c, 2);
        let ng = nabla_gamma_t11(&tm, &t, &flat).unwrap();
        let tc = complete_lift_t11(&tm, &t).unwrap();
        let n = 2;
        for h in 0..n {
            for i in 0..n {
                assert_eq!(ng.get(n + h, i), tc.get(n + h, i));
            }
        }
        for _ in 0..4 {
            let conn = g.connection(&c, 1);
            assert!(nabla_gamma_t11(&tm, &Tensor11Field::identity(&c), &conn).unwrap().is_zero());
            assert_eq!(
                horizontal_lift_t11(&tm, &Tensor11Field::identity(&c), &conn).unwrap(),
                Tensor11Field::identity(tm.total())
            );
        }
    }

    #[test]
    fn horizontal_lift_laws() {
        let c = chart(&["x", "y"]);
        let tm = TangentBundleChart::new(&c);
        let mut g = Gen::new(21);
        let flat = Connection::flat(&c);
        let x = g.poly_field(&c, 2);
        let xh = horizontal_lift_vf(&tm, &x, &flat).unwrap();
        assert!(xh.components()[2..].iter().all(RatFunc::is_zero));
        assert!(horizontal_lift_vf(&tm, &VectorField::zero(&c), &g.connection(&c, 1)).unwrap().is_zero());
        let params = MetallicParams::new(2, 1).unwrap();
        for _ in 0..4 {
            let conn = g.connection(&c, 1);
            let x = g.poly_field(&c, 2);
            let t = g.poly_t11(&c, 1);
            let xh = horizontal_lift_vf(&tm, &x, &conn).unwrap();
            let xc = complete_lift_vf(&tm, &x).unwrap();
            assert_eq!(xh.add(&nabla_gamma_vf(&tm, &x, &conn).unwrap()).unwrap(), xc);
            let th = horizontal_lift_t11(&tm, &t, &conn).unwrap();
            let tx = t.apply(&x).unwrap();
            assert_eq!(th.apply(&xh).unwrap(), horizontal_lift_vf(&tm, &tx, &conn).unwrap());
            assert_eq!(
                th.apply(&vertical_lift_vf(&tm, &x).unwrap()).unwrap(),
                vertical_lift_vf(&tm, &tx).unwrap()
            );
            assert_eq!(horizontal_lift_t11(&tm, &t.square(), &conn).unwrap(), th.square());

            let psi = metallic_from_product(&g.involution(&c, 1), &params).unwrap();
            let psih = horizontal_lift_t11(&tm, psi.tensor(), &conn).unwrap();
            assert!(metallic_residual(&psih, &params).is_zero());
        }
    }

    #[test]
    fn jtilde_is_metallic() {
        let c = chart(&["x", "y"]);
        let tm = TangentBundleChart::new(&c);
        let mut g = Gen::new(2);
        for (a, b) in [(1, 1), (2, 1), (1, 2)] {
            let params = MetallicParams::new(a, b).unwrap();
            let conn = g.connection(&c, 1);
            let j = jtilde_structure(&tm, &conn, &params).unwrap();
            assert!(metallic_residual(&j, &params).is_zero());
            let x = g.poly_field(&c, 1);
            let (xh, xv) = (
                horizontal_lift_vf(&tm, &x, &conn).unwrap(),
                vertical_lift_vf(&tm, &x).unwrap(),
            );
            let half = QuadScalar::from_ratio(1, 2);
            let expected = xh
                .scale_const(&(&params.alpha_scalar() * &half))
                .add(&xv.scale_const(&(params.sqrt_d() * &half)))
                .unwrap();
            assert_eq!(j.apply(&xh).unwrap(), expected);
            let printed = jtilde_printed(&tm, &conn, &params).unwrap();
            assert_eq!(printed == j, a == 1);
            assert_eq!(metallic_residual(&printed, &params).is_zero(), a == 1);
        }
    }

    #[test]
    fn swap_structure_closed_form() {
        let c = chart(&["x", "y"]);
        let tm = TangentBundleChart::new(&c);
        let conn = Gen::new(4).connection(&c, 1);
        let p = swap_structure(&tm, &conn).unwrap();
        assert_eq!(p.square(), Tensor11Field::identity(tm.total()));
        // [[-G, I], [I - G², G]]
        let gm = Tensor11Field::from_fn(&c, |h, i| {
            (0..2).fold(RatFunc::zero(), |acc, l| &acc - &(conn.get(h, l, i) * &tm.fiber_var(l)))
        });
        let g2 = gm.square();
        let expected = tm.blocks(|bh, bi, h, i| {
            let id = if h == i { RatFunc::one() } else { RatFunc::zero() };
            match (bh, bi) {
                (0, 0) => -gm.get(h, i),
                (0, 1) => id,
                (1, 0) => &id - g2.get(h, i),
                _ => gm.get(h, i).clone(),
            }
        });
        assert_eq!(p, expected);
    }
}
