//! The cross-section `x ↦ (x, V(x))` of `TM`, its `B`- and `C`-lifts, and the
//! behaviour of `Ψ^C` and `N_{Ψ^C}` along it.
//!
//! Restriction to the section is the substitution `y^h := V^h(x)`. Restricted
//! fields keep their `2n` components on the total chart; the components only
//! mention base coordinates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    lie_derivative_t11, lie_derivative_t12, same_chart, Tensor11Field, Tensor12Field, VectorField,
};
use crate::integrability::nijenhuis_t11;
use crate::lifts::{complete_lift_t11, vertical_lift_vf, TangentBundleChart};
use crate::metallic::MetallicStructure;
use crate::symexpr::RatFunc;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSection {
    v: VectorField,
    tm: TangentBundleChart,
}

impl CrossSection {
    pub fn new(v: VectorField) -> Self {
        let tm = TangentBundleChart::new(v.chart());
        Self { v, tm }
    }

    pub fn field(&self) -> &VectorField {
        &self.v
    }

    pub fn bundle(&self) -> &TangentBundleChart {
        &self.tm
    }

    fn bindings(&self) -> BTreeMap<usize, RatFunc> {
        let n = self.tm.base_dim();
        (0..n).map(|a| (n + a, self.v.component(a).clone())).collect()
    }

    /// `f(x, V(x))`.
    pub fn restrict(&self, f: &RatFunc) -> Result<RatFunc> {
        f.substitute(&self.bindings())
    }

    pub fn restrict_vf(&self, x: &VectorField) -> Result<VectorField> {
        same_chart(self.tm.total(), x.chart())?;
        let b = self.bindings();
        let comps = x
            .components()
            .iter()
            .map(|c| c.substitute(&b))
            .collect::<Result<_>>()?;
        VectorField::new(x.chart().clone(), comps)
    }

    pub fn restrict_t11(&self, t: &Tensor11Field) -> Result<Tensor11Field> {
        same_chart(self.tm.total(), t.chart())?;
        let b = self.bindings();
        let comps = t
            .components()
            .iter()
            .map(|c| c.substitute(&b))
            .collect::<Result<_>>()?;
        Tensor11Field::new(t.chart().clone(), comps)
    }
}

/// `BX = (X^h, X^i ∂_i V^h)`, tangent to the section.
pub fn b_lift(cs: &CrossSection, x: &VectorField) -> Result<VectorField> {
    same_chart(cs.tm.base(), x.chart())?;
    let mut comps = x.components().to_vec();
    comps.extend(cs.v.components().iter().map(|vh| x.derive(vh)));
    VectorField::new(cs.tm.total().clone(), comps)
}

/// `CX = (0, X^h)`, tangent to the fibres.
pub fn c_lift(cs: &CrossSection, x: &VectorField) -> Result<VectorField> {
    vertical_lift_vf(&cs.tm, x)
}

/// `f(x, V(x))` for a function on the total chart.
pub fn restrict_to_section(f: &RatFunc, cs: &CrossSection) -> Result<RatFunc> {
    cs.restrict(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    /// `L_V Ψ = 0`.
    pub invariant: bool,
    /// `Ψ^C(BX) = B(ΨX) + C((L_V Ψ)X)` along the section for every basis field.
    pub decomposition_holds: bool,
    #[serde(skip)]
    pub lie_derivative: Tensor11Field,
    #[serde(skip)]
    pub decomposition_residuals: Vec<VectorField>,
}

/// Both sides of `Ψ^C(B e_i) = B(Ψ e_i) + C((L_V Ψ) e_i)` restricted to the
/// section, for each `i`, together with `L_V Ψ`.
pub fn invariance_sides(
    t: &Tensor11Field,
    cs: &CrossSection,
) -> Result<(Tensor11Field, Vec<(VectorField, VectorField)>)> {
    same_chart(cs.tm.base(), t.chart())?;
    let lv = lie_derivative_t11(&cs.v, t)?;
    let tc = complete_lift_t11(&cs.tm, t)?;
    let sides = (0..t.dim())
        .map(|i| {
            let e = VectorField::basis(t.chart(), i);
            let lhs = cs.restrict_vf(&tc.apply(&b_lift(cs, &e)?)?)?;
            let rhs = b_lift(cs, &t.column(i))?.add(&c_lift(cs, &lv.column(i))?)?;
            Ok((lhs, cs.restrict_vf(&rhs)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((lv, sides))
}

/// Restricted `Ψ^C(B e_i) - B(Ψ e_i) - C((L_V Ψ) e_i)` for each `i`.
pub fn invariance_residuals(t: &Tensor11Field, cs: &CrossSection) -> Result<(Tensor11Field, Vec<VectorField>)> {
    let (lv, sides) = invariance_sides(t, cs)?;
    let residuals = sides
        .iter()
        .map(|(l, r)| l.sub(r))
        .collect::<Result<Vec<_>>>()?;
    Ok((lv, residuals))
}

pub fn invariance_check(m: &MetallicStructure, cs: &CrossSection) -> Result<InvarianceReport> {
    let (lv, residuals) = invariance_residuals(m.tensor(), cs)?;
    Ok(InvarianceReport {
        invariant: lv.is_zero(),
        decomposition_holds: residuals.iter().all(VectorField::is_zero),
        lie_derivative: lv,
        decomposition_residuals: residuals,
    })
}

/// The structure on the section sending `BX` to `Ψ^C(BX)`, written in the
/// frame `B e_i`; requires `L_V Ψ = 0`.
pub fn induced_structure(m: &MetallicStructure, cs: &CrossSection) -> Result<MetallicStructure> {
    let t = m.tensor();
    same_chart(cs.tm.base(), t.chart())?;
    let chart = t.chart();
    let lv = lie_derivative_t11(&cs.v, t)?;
    if let Some((row, col, r)) = lv.first_nonzero() {
        return Err(Error::NotInvariant {
            row,
            col,
            residual: chart.fmt_expr(r),
        });
    }
    let n = t.dim();
    let tc = complete_lift_t11(&cs.tm, t)?;
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let image = cs.restrict_vf(&tc.apply(&b_lift(cs, &VectorField::basis(chart, i))?)?)?;
        let upper = VectorField::new(chart.clone(), image.components()[..n].to_vec())?;
        let tangent = b_lift(cs, &upper)?;
        if let Some(row) = (0..2 * n).find(|&h| image.component(h) != tangent.component(h)) {
            let diff = image.component(row) - tangent.component(row);
            return Err(Error::NotInvariant {
                row,
                col: i,
                residual: cs.tm.total().fmt_expr(&diff),
            });
        }
        cols.push(upper);
    }
    let induced = Tensor11Field::from_fn(chart, |h, i| cols[i].component(h).clone());
    MetallicStructure::new(m.params().clone(), induced)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionNijenhuisReport {
    /// `N_{Ψ^C}(BX, BY) = B(N_Ψ(X,Y)) + C((L_V N_Ψ)(X,Y))` along the section.
    pub decomposition_holds: bool,
    /// `L_V N_Ψ = 0`.
    pub tangent: bool,
    pub base_nijenhuis_zero: bool,
    /// `N_{Ψ^C}(B e_i, B e_j)` vanishes along the section for all pairs.
    pub section_nijenhuis_zero: bool,
    /// When `L_V Ψ = 0`: whether "section Nijenhuis vanishes iff `N_Ψ = 0`".
    pub equivalence: Option<bool>,
    #[serde(skip)]
    pub decomposition_residuals: Vec<VectorField>,
}

/// Both sides of `N_{Ψ^C}(B e_i, B e_j) = B(N_Ψ(e_i, e_j)) + C((L_V N_Ψ)(e_i, e_j))`
/// restricted to the section, for `i < j`.
pub fn section_nijenhuis_sides(
    t: &Tensor11Field,
    cs: &CrossSection,
) -> Result<Vec<(VectorField, VectorField)>> {
    same_chart(cs.tm.base(), t.chart())?;
    let chart = t.chart();
    let n = t.dim();
    let nb = nijenhuis_t11(t);
    let lvn: Tensor12Field = lie_derivative_t12(&cs.v, &nb)?;
    let nc = nijenhuis_t11(&complete_lift_t11(&cs.tm, t)?);
    let b: Vec<VectorField> = (0..n)
        .map(|i| b_lift(cs, &VectorField::basis(chart, i)))
        .collect::<Result<_>>()?;
    let mut sides = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = cs.restrict_vf(&nc.eval(&b[i], &b[j])?)?;
            let (ei, ej) = (VectorField::basis(chart, i), VectorField::basis(chart, j));
            let rhs = b_lift(cs, &nb.eval(&ei, &ej)?)?.add(&c_lift(cs, &lvn.eval(&ei, &ej)?)?)?;
            sides.push((lhs, cs.restrict_vf(&rhs)?));
        }
    }
    Ok(sides)
}

pub fn section_nijenhuis_check(
    m: &MetallicStructure,
    cs: &CrossSection,
) -> Result<SectionNijenhuisReport> {
    let t = m.tensor();
    let sides = section_nijenhuis_sides(t, cs)?;
    let nb = nijenhuis_t11(t);
    let tangent = lie_derivative_t12(&cs.v, &nb)?.is_zero();
    let section_zero = sides.iter().all(|(l, _)| l.is_zero());
    let residuals = sides
        .iter()
        .map(|(l, r)| l.sub(r))
        .collect::<Result<Vec<_>>>()?;
    let invariant = lie_derivative_t11(&cs.v, t)?.is_zero();
    let base_zero = nb.is_zero();
    Ok(SectionNijenhuisReport {
        decomposition_holds: residuals.iter().all(VectorField::is_zero),
        tangent,
        base_nijenhuis_zero: base_zero,
        section_nijenhuis_zero: section_zero,
        equivalence: invariant.then_some(section_zero == base_zero),
        decomposition_residuals: residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{lie_bracket, lie_derivative_vf};
    use crate::integrability::orthogonal_lines_structure;
    use crate::lifts::complete_lift_vf;
    use crate::metallic::{metallic_from_product, metallic_residual};
    use crate::numfield::MetallicParams;
    use crate::symexpr::{parse_expr, Chart};
    use crate::testing::Gen;

    fn plane() -> Chart {
        Chart::new(["x", "y"]).unwrap()
    }

    fn linear(c: &Chart, a: &Tensor11Field) -> VectorField {
        let pos = VectorField::new(c.clone(), (0..c.dim()).map(RatFunc::var).collect()).unwrap();
        a.apply(&pos).unwrap()
    }

    #[test]
    fn lifts_for_simple_sections() {
        let c = plane();
        let mut g = Gen::new(1);
        let x = g.poly_field(&c, 2);
        let zero = CrossSection::new(VectorField::zero(&c));
        let bx = b_lift(&zero, &x).unwrap();
        assert!(bx.components()[2..].iter().all(RatFunc::is_zero));
        let a = g.poly_t11(&c, 0);
        let cs = CrossSection::new(linear(&c, &a));
        let bx = b_lift(&cs, &x).unwrap();
        assert_eq!(&bx.components()[2..], a.apply(&x).unwrap().components());
        let cx = c_lift(&cs, &x).unwrap();
        assert!(cx.components()[..2].iter().all(RatFunc::is_zero));
    }

    #[test]
    fn restriction() {
        let c = Chart::new(["x"]).unwrap();
        let p = MetallicParams::new(1, 1).unwrap();
        let cs = CrossSection::new(VectorField::new(c.clone(), vec![parse_expr("x^2", &c, &p).unwrap()]).unwrap());
        assert_eq!(cs.restrict(&RatFunc::var(1)).unwrap(), RatFunc::var(0).pow(2));
        let pole = CrossSection::new(VectorField::zero(&c));
        assert!(matches!(pole.restrict(&RatFunc::var(1).checked_inv().unwrap()), Err(Error::Pole)));
    }

    #[test]
    fn bracket_and_decomposition_laws() {
        let c = plane();
        let mut g = Gen::new(2);
        for _ in 0..5 {
            let cs = CrossSection::new(g.poly_field(&c, 2));
            let (x, y) = (g.poly_field(&c, 2), g.poly_field(&c, 1));
            let (bx, by) = (b_lift(&cs, &x).unwrap(), b_lift(&cs, &y).unwrap());
            assert_eq!(lie_bracket(&bx, &by).unwrap(), b_lift(&cs, &lie_bracket(&x, &y).unwrap()).unwrap());
            let (cx, cy) = (c_lift(&cs, &x).unwrap(), c_lift(&cs, &y).unwrap());
            assert!(lie_bracket(&cx, &cy).unwrap().is_zero());
            let xc = cs.restrict_vf(&complete_lift_vf(cs.bundle(), &x).unwrap()).unwrap();
            let lvx = lie_derivative_vf(cs.field(), &x).unwrap();
            let rhs = bx.add(&c_lift(&cs, &lvx).unwrap()).unwrap();
            assert_eq!(xc, cs.restrict_vf(&rhs).unwrap());
            let (_, res) = invariance_residuals(&g.poly_t11(&c, 1), &cs).unwrap();
            assert!(res.iter().all(VectorField::is_zero));
        }
    }

    #[test]
    fn invariance_and_induced_structure() {
        let c = plane();
        let p = MetallicParams::new(1, 1).unwrap();
        let prod = Tensor11Field::from_rows(
            c.clone(),
            vec![vec![RatFunc::one(), RatFunc::zero()], vec![RatFunc::zero(), RatFunc::int(-1)]],
        )
        .unwrap();
        let m = metallic_from_product(&prod, &p).unwrap();
        let id = CrossSection::new(linear(&c, &Tensor11Field::identity(&c)));
        let rep = invariance_check(&m, &id).unwrap();
        assert!(rep.invariant && rep.decomposition_holds);
        assert_eq!(induced_structure(&m, &id).unwrap(), m);

        let own = CrossSection::new(linear(&c, m.tensor()));
        assert_eq!(induced_structure(&m, &own).unwrap(), m);
        let zero = CrossSection::new(VectorField::zero(&c));
        assert_eq!(induced_structure(&m, &zero).unwrap(), m);

        let a = Tensor11Field::from_rows(
            c.clone(),
            vec![vec![RatFunc::zero(), RatFunc::one()], vec![RatFunc::zero(), RatFunc::zero()]],
        )
        .unwrap();
        let skew = CrossSection::new(linear(&c, &a));
        let rep = invariance_check(&m, &skew).unwrap();
        assert!(!rep.invariant && rep.decomposition_holds);
        let comm = m.tensor().compose(&a).unwrap().sub(&a.compose(m.tensor()).unwrap()).unwrap();
        assert_eq!(rep.lie_derivative, comm);
        assert!(matches!(induced_structure(&m, &skew), Err(Error::NotInvariant { .. })));
    }

    #[test]
    fn induced_structure_for_position_dependent_psi() {
        // V = x∂x + y∂y is invariant for Ψ with degree-0 homogeneous entries
        let c = plane();
        let p = MetallicParams::new(2, 1).unwrap();
        let m = orthogonal_lines_structure(&p);
        let euler = linear(&c, &Tensor11Field::identity(&c));
        let rep = invariance_check(&m, &CrossSection::new(euler)).unwrap();
        assert!(!rep.invariant);
        let constant = CrossSection::new(
            VectorField::new(c.clone(), vec![RatFunc::one(), RatFunc::int(-1)]).unwrap(),
        );
        let induced = induced_structure(&m, &constant).unwrap();
        assert!(metallic_residual(induced.tensor(), &p).is_zero());
        assert_eq!(induced, m);
    }

    #[test]
    fn section_nijenhuis() {
        let c = plane();
        let p = MetallicParams::new(1, 1).unwrap();
        let m = orthogonal_lines_structure(&p);
        let cs = CrossSection::new(
            VectorField::new(c.clone(), vec![RatFunc::one(), RatFunc::zero()]).unwrap(),
        );
        let rep = section_nijenhuis_check(&m, &cs).unwrap();
        assert!(rep.decomposition_holds && rep.tangent && rep.base_nijenhuis_zero);
        assert!(rep.section_nijenhuis_zero);

        let mut g = Gen::new(3);
        let cs = CrossSection::new(g.poly_field(&c, 2));
        let psi = MetallicStructure::new(p.clone(), Tensor11Field::scalar(&c, p.sigma())).unwrap();
        let rep = section_nijenhuis_check(&psi, &cs).unwrap();
        assert!(rep.decomposition_holds && rep.section_nijenhuis_zero);
    }
}
