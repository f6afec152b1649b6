//! Nijenhuis tensors, the relation between `N_P` and `N_Ψ`, integrability of
//! the eigendistributions of a metallic structure on `M` and on `TM`, and the
//! two-dimensional example built from a pair of rational line fields.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{lie_bracket, same_chart, Tensor11Field, Tensor12Field, VectorField};
use crate::lifts::{complete_lift_t11, complete_lift_vf, TangentBundleChart};
use crate::metallic::{
    check_square, metallic_from_product, metallic_recipe, projectors_from_metallic,
    MetallicStructure,
};
use crate::numfield::{MetallicParams, QuadScalar};
use crate::symexpr::{Chart, RatFunc};

/// `N_T(X, Y) = [TX, TY] - T[TX, Y] - T[X, TY] + T²[X, Y]` for arbitrary fields.
pub fn nijenhuis_eval(t: &Tensor11Field, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    let (tx, ty) = (t.apply(x)?, t.apply(y)?);
    lie_bracket(&tx, &ty)?
        .sub(&t.apply(&lie_bracket(&tx, y)?)?)?
        .sub(&t.apply(&lie_bracket(x, &ty)?)?)?
        .add(&t.square().apply(&lie_bracket(x, y)?)?)
}

/// The variant whose last term is `T²[TX, TY]`.
pub fn nijenhuis_printed_eval(
    t: &Tensor11Field,
    x: &VectorField,
    y: &VectorField,
) -> Result<VectorField> {
    let (tx, ty) = (t.apply(x)?, t.apply(y)?);
    let txty = lie_bracket(&tx, &ty)?;
    txty.sub(&t.apply(&lie_bracket(&tx, y)?)?)?
        .sub(&t.apply(&lie_bracket(x, &ty)?)?)?
        .add(&t.square().apply(&txty)?)
}

fn from_pairs(
    chart: &Chart,
    pair: impl Fn(usize, usize) -> VectorField + Sync,
    antisymmetric: bool,
) -> Tensor12Field {
    let n = chart.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !antisymmetric || i < j)
        .collect();
    let values: Vec<VectorField> = pairs.par_iter().map(|&(i, j)| pair(i, j)).collect();
    let lookup = |i: usize, j: usize| -> VectorField {
        if antisymmetric && i == j {
            return VectorField::zero(chart);
        }
        let (a, b, sign) = if !antisymmetric || i < j { (i, j, 1) } else { (j, i, -1) };
        let k = pairs.iter().position(|&p| p == (a, b)).expect("pair computed");
        if sign < 0 {
            values[k].scale_const(&QuadScalar::from_int(-1))
        } else {
            values[k].clone()
        }
    };
    Tensor12Field::from_basis_values(chart, lookup)
}

/// The Nijenhuis tensor of `T`, assembled from its values on coordinate pairs.
pub fn nijenhuis_t11(t: &Tensor11Field) -> Tensor12Field {
    let chart = t.chart();
    from_pairs(
        chart,
        |i, j| {
            let (ei, ej) = (VectorField::basis(chart, i), VectorField::basis(chart, j));
            nijenhuis_eval(t, &ei, &ej).expect("same chart")
        },
        true,
    )
}

/// `N_P - (4/D) N_Ψ` for `Ψ = ½(αI + √D P)`.
pub fn np_relation_residual(p: &Tensor11Field, params: &MetallicParams) -> Result<Tensor12Field> {
    check_square(p, 1, "almost product")?;
    let psi = metallic_recipe(p, params);
    let factor = QuadScalar::from_ratio(4, params.discriminant() as i64);
    nijenhuis_t11(p).sub(&nijenhuis_t11(&psi).scale_const(&factor))
}

pub fn np_relation_check(p: &Tensor11Field, params: &MetallicParams) -> Result<bool> {
    Ok(np_relation_residual(p, params)?.is_zero())
}

/// A distribution given as the image of a projector, with optional spanning
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    chart: Chart,
    generators: Vec<VectorField>,
    projector: Tensor11Field,
}

impl Distribution {
    pub fn new(projector: Tensor11Field, generators: Vec<VectorField>) -> Result<Self> {
        let residual = projector.square().sub(&projector)?;
        if let Some((row, col, r)) = residual.first_nonzero() {
            return Err(Error::DefiningRelation {
                kind: "idempotent",
                row,
                col,
                residual: projector.chart().fmt_expr(r),
            });
        }
        for (index, g) in generators.iter().enumerate() {
            if projector.apply(g)? != *g {
                return Err(Error::GeneratorNotInImage { index });
            }
        }
        Ok(Self {
            chart: projector.chart().clone(),
            generators,
            projector,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.generators
    }

    pub fn projector(&self) -> &Tensor11Field {
        &self.projector
    }

    /// The distribution spanned by the complete lifts, with projector `p^C`.
    pub fn complete_lift(&self, tm: &TangentBundleChart) -> Result<Self> {
        let projector = complete_lift_t11(tm, &self.projector)?;
        let generators = self
            .generators
            .iter()
            .map(|g| complete_lift_vf(tm, g))
            .collect::<Result<_>>()?;
        Self::new(projector, generators)
    }
}

fn check_complementary(own: &Tensor11Field, complement: &Tensor11Field) -> Result<()> {
    same_chart(own.chart(), complement.chart())?;
    let residual = own
        .add(complement)?
        .sub(&Tensor11Field::identity(own.chart()))?;
    match residual.first_nonzero() {
        None => Ok(()),
        Some((row, col, r)) => Err(Error::NotComplementary {
            row,
            col,
            residual: own.chart().fmt_expr(r),
        }),
    }
}

/// Entry `[h][i][j]` is the `h`-component of `q[p e_i, p e_j]` for the own
/// projector `p` and the complement `q`.
pub fn integrability_residual(
    own: &Tensor11Field,
    complement: &Tensor11Field,
) -> Result<Tensor12Field> {
    check_complementary(own, complement)?;
    Ok(from_pairs(
        own.chart(),
        |i, j| {
            let br = lie_bracket(&own.column(i), &own.column(j)).expect("same chart");
            complement.apply(&br).expect("same chart")
        },
        true,
    ))
}

/// Involutivity of the image of `d`'s projector, tested through the
/// complementary projector.
pub fn distribution_integrable(d: &Distribution, complement: &Tensor11Field) -> Result<bool> {
    Ok(integrability_residual(&d.projector, complement)?.is_zero())
}

/// `q N_T(p e_i, p e_j)`.
pub fn projector_nijenhuis_residual(
    t: &Tensor11Field,
    own: &Tensor11Field,
    complement: &Tensor11Field,
) -> Result<Tensor12Field> {
    check_complementary(own, complement)?;
    same_chart(t.chart(), own.chart())?;
    let chart = t.chart();
    Ok(from_pairs(
        chart,
        |i, j| {
            let v = nijenhuis_eval(t, &own.column(i), &own.column(j)).expect("same chart");
            complement.apply(&v).expect("same chart")
        },
        true,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `r N_Ψ(sX, sY) = 0`: integrability of the `s`-distribution.
    ROnS,
    /// `s N_Ψ(rX, rY) = 0`: integrability of the `r`-distribution.
    SOnR,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub base: bool,
    pub lifted: bool,
}

fn criterion_residual(m: &MetallicStructure, which: Criterion) -> Result<Tensor12Field> {
    let pr = projectors_from_metallic(m);
    let (own, complement) = match which {
        Criterion::ROnS => (&pr.s, &pr.r),
        Criterion::SOnR => (&pr.r, &pr.s),
    };
    projector_nijenhuis_residual(m.tensor(), own, complement)
}

/// Residuals of the chosen criterion for `Ψ` on `M` and for `Ψ^C` on `TM`.
pub fn projector_nijenhuis_residuals(
    m: &MetallicStructure,
    which: Criterion,
) -> Result<(Tensor12Field, Tensor12Field)> {
    let tm = TangentBundleChart::new(m.tensor().chart());
    let lifted = MetallicStructure::new(m.params().clone(), complete_lift_t11(&tm, m.tensor())?)?;
    let (base, lifted) = rayon::join(
        || criterion_residual(m, which),
        || criterion_residual(&lifted, which),
    );
    Ok((base?, lifted?))
}

pub fn projector_nijenhuis_criterion(
    m: &MetallicStructure,
    which: Criterion,
) -> Result<CriterionReport> {
    let (base, lifted) = projector_nijenhuis_residuals(m, which)?;
    Ok(CriterionReport {
        criterion: which,
        base: base.is_zero(),
        lifted: lifted.is_zero(),
    })
}

/// The almost product structure with `+1`-eigenvectors the columns of `plus`
/// and `-1`-eigenvectors the columns of `minus`, by exact change of basis.
pub fn product_from_eigenvectors(
    chart: &Chart,
    plus: &[VectorField],
    minus: &[VectorField],
) -> Result<Tensor11Field> {
    let n = chart.dim();
    if plus.len() + minus.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: plus.len() + minus.len(),
        });
    }
    let cols: Vec<&VectorField> = plus.iter().chain(minus).collect();
    for c in &cols {
        same_chart(chart, c.chart())?;
    }
    let b = Tensor11Field::from_fn(chart, |h, i| cols[i].component(h).clone());
    let d = Tensor11Field::from_fn(chart, |h, i| match (h == i, i < plus.len()) {
        (false, _) => RatFunc::zero(),
        (true, true) => RatFunc::one(),
        (true, false) => RatFunc::int(-1),
    });
    b.compose(&d)?.compose(&b.inverse()?)
}

/// The plane `(x, y)` used by the two-dimensional example.
pub fn orthogonal_lines_chart() -> Chart {
    Chart::new(["x", "y"]).expect("valid names")
}

/// `R = span{∂x - (x+y)∂y}` and `S = span{(x+y)∂x + ∂y}`.
pub fn orthogonal_lines_generators() -> (VectorField, VectorField) {
    let c = orthogonal_lines_chart();
    let t = &RatFunc::var(0) + &RatFunc::var(1);
    let r = VectorField::new(c.clone(), vec![RatFunc::one(), -&t]).expect("2 components");
    let s = VectorField::new(c, vec![t, RatFunc::one()]).expect("2 components");
    (r, s)
}

/// The metallic structure with `σ`-eigendistribution `R` and
/// `(α-σ)`-eigendistribution `S` of the two-dimensional example.
pub fn orthogonal_lines_structure(params: &MetallicParams) -> MetallicStructure {
    let (r, s) = orthogonal_lines_generators();
    let p = product_from_eigenvectors(&orthogonal_lines_chart(), &[r], &[s]).expect("invertible frame");
    metallic_from_product(&p, params).expect("involution by construction")
}

/// `(R, S)` as distributions carrying the projectors of `orthogonal_lines_structure`.
pub fn orthogonal_lines_distributions(params: &MetallicParams) -> (Distribution, Distribution) {
    let m = orthogonal_lines_structure(params);
    let pr = projectors_from_metallic(&m);
    let (r, s) = orthogonal_lines_generators();
    (
        Distribution::new(pr.r, vec![r]).expect("generator is an eigenvector"),
        Distribution::new(pr.s, vec![s]).expect("generator is an eigenvector"),
    )
}

/// The components as printed in the literature, with the off-diagonal
/// numerators read as `√D(x+y) + σ`: rows of `Ψ^h_i`.
pub fn orthogonal_lines_printed(params: &MetallicParams) -> Tensor11Field {
    let c = orthogonal_lines_chart();
    let t = &RatFunc::var(0) + &RatFunc::var(1);
    let t2 = t.pow(2);
    let den = &t2 + &RatFunc::one();
    let sigma = RatFunc::constant(params.sigma().clone());
    let conj = RatFunc::constant(params.conjugate_sigma());
    let sqrt_d = RatFunc::constant(params.sqrt_d().clone());
    let off = &(&(&sqrt_d * &t) + &sigma) / &den;
    let d11 = &(&(&conj * &t2) + &sigma) / &den;
    let d22 = &(&(&sigma * &t2) + &conj) / &den;
    Tensor11Field::from_rows(c, vec![vec![d11, off.clone()], vec![-&off, d22]]).expect("2x2")
}

/// A plane field on `(x, y, z)` that is not involutive: `R = span{∂z}` with
/// eigenvalue `+1` and `S = span{∂x, ∂y + x∂z}` with eigenvalue `-1`.
pub fn non_integrable_witness(params: &MetallicParams) -> MetallicStructure {
    let c = Chart::new(["x", "y", "z"]).expect("valid names");
    let field = |comps: [RatFunc; 3]| VectorField::new(c.clone(), comps.to_vec()).expect("3");
    let (zero, one, x) = (RatFunc::zero(), RatFunc::one(), RatFunc::var(0));
    let r = field([zero.clone(), zero.clone(), one.clone()]);
    let s1 = field([one.clone(), zero.clone(), zero.clone()]);
    let s2 = field([zero, one, x]);
    let p = product_from_eigenvectors(&c, &[r], &[s1, s2]).expect("invertible frame");
    metallic_from_product(&p, params).expect("involution by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;
    use crate::testing::Gen;

    fn gold() -> MetallicParams {
        MetallicParams::new(1, 1).unwrap()
    }

    #[test]
    fn constant_and_identity_vanish() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let mut g = Gen::new(1);
        assert!(nijenhuis_t11(&g.poly_t11(&c, 0)).is_zero());
        assert!(nijenhuis_t11(&Tensor11Field::identity(&c)).is_zero());
    }

    #[test]
    fn nijenhuis_basis_assembly_matches_direct_evaluation() {
        let c = Chart::new(["x", "y"]).unwrap();
        let mut g = Gen::new(2);
        for _ in 0..4 {
            let t = g.poly_t11(&c, 2);
            let n = nijenhuis_t11(&t);
            let (x, y) = (g.poly_field(&c, 1), g.poly_field(&c, 1));
            assert_eq!(n.eval(&x, &y).unwrap(), nijenhuis_eval(&t, &x, &y).unwrap());
            let yx = n.eval(&y, &x).unwrap().scale_const(&QuadScalar::from_int(-1));
            assert_eq!(n.eval(&x, &y).unwrap(), yx);
        }
    }

    #[test]
    fn affine_invariance() {
        let c = Chart::new(["x", "y"]).unwrap();
        let mut g = Gen::new(3);
        let p = gold();
        for _ in 0..4 {
            let t = g.poly_t11(&c, 2);
            let (a, b) = (p.sigma().clone(), &QuadScalar::from_int(g.small_int()) + p.sqrt_d());
            let lhs = nijenhuis_t11(&t.affine(&a, &b));
            assert_eq!(lhs, nijenhuis_t11(&t).scale_const(&(&b * &b)));
        }
    }

    #[test]
    fn np_relation_holds_for_random_involutions() {
        let c = Chart::new(["x", "y"]).unwrap();
        let mut g = Gen::new(4);
        for (a, b) in [(1, 1), (2, 1), (1, 2)] {
            let params = MetallicParams::new(a, b).unwrap();
            let p = g.involution(&c, 1);
            assert!(np_relation_check(&p, &params).unwrap());
        }
        assert!(np_relation_check(&g.poly_t11(&c, 1), &gold()).is_err());
    }

    #[test]
    fn example_components() {
        let params = gold();
        let m = orthogonal_lines_structure(&params);
        let c = orthogonal_lines_chart();
        let e = |s: &str| parse_expr(s, &c, &params).unwrap();
        assert_eq!(m.tensor().get(0, 0), &e("((alpha-sigma)*(x+y)^2+sigma)/((x+y)^2+1)"));
        assert_eq!(m.tensor().get(1, 1), &e("(sigma*(x+y)^2+(alpha-sigma))/((x+y)^2+1)"));
        assert_eq!(m.tensor().get(0, 1), &e("-sqrtD*(x+y)/((x+y)^2+1)"));
        assert_eq!(m.tensor().get(1, 0), &e("-sqrtD*(x+y)/((x+y)^2+1)"));
        let printed = orthogonal_lines_printed(&params);
        assert_eq!(printed.get(0, 0), m.tensor().get(0, 0));
        assert_eq!(printed.get(1, 1), m.tensor().get(1, 1));
        assert_ne!(printed.get(0, 1), m.tensor().get(0, 1));
        assert!(nijenhuis_t11(m.tensor()).is_zero());
    }

    #[test]
    fn example_distributions_integrable() {
        let params = gold();
        let (r, s) = orthogonal_lines_distributions(&params);
        assert!(distribution_integrable(&s, r.projector()).unwrap());
        assert!(distribution_integrable(&r, s.projector()).unwrap());
        assert!(distribution_integrable(&r, r.projector()).is_err());
    }

    #[test]
    fn witness_fails_criteria() {
        let params = gold();
        let m = non_integrable_witness(&params);
        let rep = projector_nijenhuis_criterion(&m, Criterion::ROnS).unwrap();
        assert!(!rep.base && !rep.lifted);
        let rep = projector_nijenhuis_criterion(&m, Criterion::SOnR).unwrap();
        assert!(rep.base && rep.lifted);
        let pr = projectors_from_metallic(&m);
        assert!(!integrability_residual(&pr.s, &pr.r).unwrap().is_zero());
        assert!(integrability_residual(&pr.r, &pr.s).unwrap().is_zero());
    }

    #[test]
    fn printed_last_term_breaks_relation() {
        // [[1, x], [0, -1]] squares to I
        let c = Chart::new(["x", "y"]).unwrap();
        let params = gold();
        let p = Tensor11Field::from_rows(
            c.clone(),
            vec![
                vec![RatFunc::one(), RatFunc::var(0)],
                vec![RatFunc::zero(), RatFunc::int(-1)],
            ],
        )
        .unwrap();
        let psi = metallic_recipe(&p, &params);
        let (ex, ey) = (VectorField::basis(&c, 0), VectorField::basis(&c, 1));
        let np = nijenhuis_printed_eval(&p, &ex, &ey).unwrap();
        let npsi = nijenhuis_printed_eval(&psi, &ex, &ey).unwrap();
        let factor = QuadScalar::from_ratio(4, params.discriminant() as i64);
        assert_ne!(np, npsi.scale_const(&factor));
        assert!(np_relation_check(&p, &params).unwrap());
    }
}
