//! The check vocabulary. Each check turns into a list of [`Claim`]s with an
//! expected outcome; checks named `errata_*` pass when a published variant of
//! a formula is confirmed to differ from the derived one.

use crate::cross_section::{b_lift, c_lift, induced_structure, invariance_sides, section_nijenhuis_sides, CrossSection};
use crate::error::{Error, Result};
use crate::geometry::{lie_bracket, lie_derivative_vf, Connection, Tensor11Field, Tensor12Field, VectorField};
use crate::integrability::{
    orthogonal_lines_chart, orthogonal_lines_printed, orthogonal_lines_structure, nijenhuis_eval, nijenhuis_printed_eval,
    Distribution,
};
use crate::lifts::{
    complete_lift_t11, complete_lift_vf, horizontal_lift_t11, horizontal_lift_vf, jtilde_printed,
    jtilde_structure, nabla_gamma_vf, swap_structure, vertical_lift_vf, TangentBundleChart,
};
use crate::metallic::{
    metallic_from_product, metallic_recipe, minimal_polynomial_check, product_from_metallic,
    projectors_from_metallic, MetallicStructure, StructureKind as PolyKind,
};
use crate::numfield::{MetallicParams, QuadScalar};
use crate::symexpr::{Chart, RatFunc};
use crate::verify::{Claim, Expect};

use super::{CheckSpec, Eigen, Parser, Scenario, StructureDecl, StructureKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arg {
    Structure,
    Field,
    Distribution,
    Which,
    Expr,
}

pub struct CheckInfo {
    pub name: &'static str,
    /// Argument signature: `S` structure, `V` field, `D` distribution,
    /// `W` one of `r_on_s`/`s_on_r`, `E` an expression.
    pub usage: &'static str,
    pub about: &'static str,
    args: &'static [Arg],
}

use Arg::*;

macro_rules! check {
    ($name:literal, $usage:literal, [$($a:ident),*], $about:literal) => {
        CheckInfo { name: $name, usage: $usage, about: $about, args: &[$($a),*] }
    };
}

pub const CHECKS: &[CheckInfo] = &[
    check!("sigma_value", "E", [Expr], "sigma equals the given value and solves x^2 - alpha x - beta = 0"),
    check!("metallic_from_product", "P", [Structure], "an almost product structure induces a metallic structure"),
    check!("metallic", "S", [Structure], "the structure satisfies psi^2 = alpha psi + beta I"),
    check!("product_roundtrip", "P", [Structure], "P -> psi -> P is the identity"),
    check!("projector_algebra", "S", [Structure], "r, s are complementary projectors onto the eigendistributions"),
    check!("projector_expansions", "S", [Structure], "sigma r and (alpha - sigma) s expanded in psi and I"),
    check!("minimal_polynomial", "T", [Structure], "monic quadratic annihilating (alpha I + sqrtD T)/2 and its lift"),
    check!("complete_lift_metallic", "S", [Structure], "the complete lift of a metallic structure is metallic"),
    check!("lifted_projector_algebra", "S", [Structure], "projector algebra for the complete lifts r^C, s^C"),
    check!("composite", "P F", [Structure, Structure], "sqrtD psi_J = 2 psi_P psi_F - alpha psi_P - alpha psi_F + alpha sigma I for J = P F"),
    check!("nijenhuis_zero", "S", [Structure], "the Nijenhuis tensor vanishes"),
    check!("nijenhuis_nonzero", "S", [Structure], "the Nijenhuis tensor does not vanish"),
    check!("np_relation", "P", [Structure], "N_P = (4/D) N_psi on M and for the complete lifts on TM"),
    check!("nijenhuis_lift", "S", [Structure], "N_{psi^C}(X^C, Y^C) = (N_psi(X, Y))^C"),
    check!("distributions_integrable", "", [], "every declared distribution is involutive, on M and lifted to TM"),
    check!("distribution_integrable", "D", [Distribution], "the distribution is involutive, on M and lifted to TM"),
    check!("distribution_not_integrable", "D", [Distribution], "the distribution is not involutive, on M nor lifted to TM"),
    check!("projector_criteria", "S", [Structure], "r N(sX, sY) = 0 and s N(rX, rY) = 0 on M and TM"),
    check!("projector_criterion_fails", "S W", [Structure, Which], "the chosen projector criterion fails on M and TM"),
    check!("horizontal_lift", "S", [Structure], "the horizontal lift of a metallic structure is metallic"),
    check!("jtilde", "", [], "the structure built from the horizontal/vertical splitting is metallic"),
    check!("section_decomposition", "S V", [Structure, Field], "B/C-lift brackets and decompositions along the cross-section"),
    check!("section_invariant", "S V", [Structure, Field], "L_V psi = 0"),
    check!("section_not_invariant", "S V", [Structure, Field], "L_V psi != 0"),
    check!("induced_structure", "S V", [Structure, Field], "the structure induced on an invariant cross-section is metallic"),
    check!("section_nijenhuis", "S V", [Structure, Field], "Nijenhuis decomposition along the cross-section and its vanishing"),
    check!("errata_projector_signs", "S", [Structure], "published sign variants of the sigma r and (alpha - sigma) s expansions"),
    check!("errata_complex_constant", "J", [Structure], "published constant alpha^2/4 + beta for the complex variant"),
    check!("errata_jtilde", "", [], "published variant of the structure without alpha on the first term"),
    check!("errata_nijenhuis", "P", [Structure], "published Nijenhuis variant with last term T^2[TX, TY]"),
    check!("errata_orthogonal_lines", "", [], "published components of the orthogonal-lines structure"),
    check!("errata_complete_lift_sign", "P", [Structure], "published inverse (2 psi^C + alpha)/sqrtD"),
];

pub(super) fn info(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

pub(super) fn parse_check(p: &Parser<'_>, line: &str, line_no: usize) -> Result<CheckSpec> {
    let indent = line.len() - line.trim_start().len();
    let trimmed = line.trim();
    let name = trimmed.split_whitespace().next().expect("nonempty");
    let Some(info) = info(name) else {
        return Err(p.err(line_no, indent + 1, format!("unknown check `{name}`")));
    };
    let rest_offset = indent + name.len();
    let rest = &line[rest_offset..];
    let mut args = Vec::new();
    let mut expr = None;
    if info.args == [Expr] {
        expr = Some(p.expr(rest, line_no, rest_offset)?);
    } else {
        let words: Vec<&str> = rest.split_whitespace().collect();
        if words.len() != info.args.len() {
            return Err(p.err(
                line_no,
                indent + 1,
                format!("`{name}` takes {} argument(s): {name} {}", info.args.len(), info.usage),
            ));
        }
        for (w, kind) in words.iter().zip(info.args) {
            let column = rest_offset + rest.find(w).unwrap_or(0) + 1;
            let found = match kind {
                Structure => p.structures.iter().any(|s| s.name == *w),
                Field => p.fields.iter().any(|(n, _)| n == w),
                Distribution => p.distributions.iter().any(|d| d.name == *w),
                Which => matches!(*w, "r_on_s" | "s_on_r"),
                Expr => unreachable!(),
            };
            if !found {
                let what = match kind {
                    Structure => "structure",
                    Field => "field",
                    Distribution => "distribution",
                    _ => "criterion (r_on_s or s_on_r)",
                };
                return Err(p.err(line_no, column, format!("unknown {what} `{w}`")));
            }
            args.push(w.to_string());
        }
    }
    Ok(CheckSpec {
        text: trimmed.to_string(),
        name: name.to_string(),
        args,
        expr,
        line: line_no,
    })
}

struct Ctx<'a> {
    s: &'a Scenario,
    p: &'a MetallicParams,
    chart: &'a Chart,
    tm: TangentBundleChart,
}

fn zero(label: impl Into<String>, lhs: &Tensor11Field, rhs: &Tensor11Field) -> Claim {
    Claim::t11(label, lhs, rhs, Expect::Zero)
}

impl<'a> Ctx<'a> {
    fn alpha(&self) -> QuadScalar {
        self.p.alpha_scalar()
    }

    fn half(&self) -> QuadScalar {
        QuadScalar::from_ratio(1, 2)
    }

    fn inv_sqrt_d(&self) -> QuadScalar {
        self.p.sqrt_d().checked_inv().expect("positive discriminant")
    }

    fn decl(&self, name: &str) -> &'a StructureDecl {
        self.s.structure(name).expect("resolved at load")
    }

    fn field(&self, name: &str) -> &'a VectorField {
        self.s.field(name).expect("resolved at load")
    }

    /// `Ψ` as declared, or `½(αI + √D T)` for the other kinds; not validated.
    fn psi_raw(&self, d: &StructureDecl) -> Tensor11Field {
        match d.kind {
            StructureKind::Metallic => d.tensor.clone(),
            _ => metallic_recipe(&d.tensor, self.p),
        }
    }

    fn metallic(&self, d: &StructureDecl) -> Result<MetallicStructure> {
        match d.kind {
            StructureKind::Product => metallic_from_product(&d.tensor, self.p),
            _ => MetallicStructure::new(self.p.clone(), self.psi_raw(d)),
        }
    }

    fn product(&self, d: &StructureDecl) -> Result<Tensor11Field> {
        match d.kind {
            StructureKind::Product => {
                metallic_from_product(&d.tensor, self.p)?;
                Ok(d.tensor.clone())
            }
            _ => Ok(product_from_metallic(&self.metallic(d)?)),
        }
    }

    fn conn(&self) -> Connection {
        self.s.connection.clone().unwrap_or_else(|| Connection::flat(self.chart))
    }

    /// `T² = αT + βI` as a claim.
    fn metallic_claim(&self, label: &str, t: &Tensor11Field) -> Claim {
        zero(label, &t.square(), &t.affine(&self.p.beta_scalar(), &self.alpha()))
    }

    fn basis(&self) -> Vec<VectorField> {
        (0..self.chart.dim()).map(|i| VectorField::basis(self.chart, i)).collect()
    }

    /// Basis fields followed by the declared fields.
    fn test_fields(&self) -> Vec<VectorField> {
        let mut v = self.basis();
        v.extend(self.s.fields.iter().map(|(_, f)| f.clone()));
        v
    }

    fn distribution(&self, name: &str) -> Result<(Distribution, Tensor11Field)> {
        let d = self.s.distribution(name).expect("resolved at load");
        let m = self.metallic(self.decl(&d.structure))?;
        let pr = projectors_from_metallic(&m);
        let (own, complement) = match d.eigen {
            Eigen::R => (pr.r, pr.s),
            Eigen::S => (pr.s, pr.r),
        };
        Ok((Distribution::new(own, d.generators.clone())?, complement))
    }
}

/// `[TX, TY] + T²[X, Y]` and `T[TX, Y] + T[X, TY]` on coordinate pairs, so
/// that `N_T` is their difference.
fn nijenhuis_parts(t: &Tensor11Field) -> (Tensor12Field, Tensor12Field) {
    let chart = t.chart();
    let cols: Vec<VectorField> = (0..chart.dim()).map(|i| t.column(i)).collect();
    let basis: Vec<VectorField> = (0..chart.dim()).map(|i| VectorField::basis(chart, i)).collect();
    let pos = Tensor12Field::from_basis_values(chart, |i, j| lie_bracket(&cols[i], &cols[j]).expect("chart"));
    let neg = Tensor12Field::from_basis_values(chart, |i, j| {
        let a = t.apply(&lie_bracket(&cols[i], &basis[j]).expect("chart")).expect("chart");
        let b = t.apply(&lie_bracket(&basis[i], &cols[j]).expect("chart")).expect("chart");
        a.add(&b).expect("chart")
    });
    (pos, neg)
}

/// `N_T(p e_i, p e_j)` and `p N_T(p e_i, p e_j)`; they agree iff the
/// complementary projector kills the Nijenhuis values.
fn criterion_sides(t: &Tensor11Field, own: &Tensor11Field) -> (Vec<VectorField>, Vec<VectorField>) {
    let n = t.dim();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = nijenhuis_eval(t, &own.column(i), &own.column(j)).expect("chart");
            rhs.push(own.apply(&v).expect("chart"));
            lhs.push(v);
        }
    }
    (lhs, rhs)
}

/// `[p e_i, p e_j]` and `p[p e_i, p e_j]`.
fn involutivity_sides(own: &Tensor11Field) -> (Vec<VectorField>, Vec<VectorField>) {
    let n = own.dim();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let br = lie_bracket(&own.column(i), &own.column(j)).expect("chart");
            rhs.push(own.apply(&br).expect("chart"));
            lhs.push(br);
        }
    }
    (lhs, rhs)
}

fn poly_text(c1: &QuadScalar, c0: &QuadScalar) -> String {
    format!("X^2 + ({c1}) X + ({c0})")
}

pub(super) fn run_check(s: &Scenario, req: &CheckSpec) -> Result<Vec<Claim>> {
    let cx = Ctx {
        s,
        p: &s.params,
        chart: &s.chart,
        tm: TangentBundleChart::new(&s.chart),
    };
    let p = cx.p;
    let tm = &cx.tm;
    let arg = |k: usize| req.args[k].as_str();
    let mut claims = Vec::new();
    match req.name.as_str() {
        "sigma_value" => {
            let sigma = RatFunc::constant(p.sigma().clone());
            let value = req.expr.clone().expect("parsed");
            claims.push(Claim::scalar("sigma = value", cx.chart, sigma.clone(), value, Expect::Zero));
            let rhs = &(&sigma * &RatFunc::constant(cx.alpha())) + &RatFunc::constant(p.beta_scalar());
            claims.push(Claim::scalar("sigma^2 = alpha sigma + beta", cx.chart, sigma.pow(2), rhs, Expect::Zero));
        }
        "metallic_from_product" => {
            let m = metallic_from_product(&cx.decl(arg(0)).tensor, p)?;
            claims.push(cx.metallic_claim("psi^2 = alpha psi + beta I", m.tensor()));
        }
        "metallic" => {
            claims.push(cx.metallic_claim("psi^2 = alpha psi + beta I", &cx.psi_raw(cx.decl(arg(0)))));
        }
        "product_roundtrip" => {
            let prod = cx.product(cx.decl(arg(0)))?;
            let m = metallic_from_product(&prod, p)?;
            let back = product_from_metallic(&m);
            claims.push(zero("P -> psi -> P", &back, &prod));
            claims.push(zero("psi -> P -> psi", metallic_from_product(&back, p)?.tensor(), m.tensor()));
        }
        "projector_algebra" => {
            let m = cx.metallic(cx.decl(arg(0)))?;
            let pr = projectors_from_metallic(&m);
            let (psi, id, z) = (m.tensor(), Tensor11Field::identity(cx.chart), Tensor11Field::zero(cx.chart));
            let c = |t: &Tensor11Field, u: &Tensor11Field| t.compose(u).expect("chart");
            claims.push(zero("r + s = I", &pr.r.add(&pr.s)?, &id));
            claims.push(zero("r s = 0", &c(&pr.r, &pr.s), &z));
            claims.push(zero("s r = 0", &c(&pr.s, &pr.r), &z));
            claims.push(zero("r^2 = r", &pr.r.square(), &pr.r));
            claims.push(zero("s^2 = s", &pr.s.square(), &pr.s));
            let sr = pr.r.scale_const(p.sigma());
            let ss = pr.s.scale_const(&p.conjugate_sigma());
            claims.push(zero("psi r = sigma r", &c(psi, &pr.r), &sr));
            claims.push(zero("r psi = sigma r", &c(&pr.r, psi), &sr));
            claims.push(zero("psi s = (alpha - sigma) s", &c(psi, &pr.s), &ss));
            claims.push(zero("s psi = (alpha - sigma) s", &c(&pr.s, psi), &ss));
        }
        "projector_expansions" | "errata_projector_signs" => {
            let m = cx.metallic(cx.decl(arg(0)))?;
            let pr = projectors_from_metallic(&m);
            let inv = cx.inv_sqrt_d();
            let b = &p.beta_scalar() * &inv;
            let sr = pr.r.scale_const(p.sigma());
            let ss = pr.s.scale_const(&p.conjugate_sigma());
            let psi = m.tensor();
            claims.push(zero(
                "sigma r = (sigma/sqrtD) psi + (beta/sqrtD) I",
                &sr,
                &psi.affine(&b, &(p.sigma() * &inv)),
            ));
            claims.push(zero(
                "(alpha - sigma) s = ((sigma - alpha)/sqrtD) psi - (beta/sqrtD) I",
                &ss,
                &psi.affine(&-&b, &(&(p.sigma() - &cx.alpha()) * &inv)),
            ));
            if req.name == "errata_projector_signs" {
                claims.push(Claim::t11(
                    "published: sigma r = (sigma/sqrtD) psi - (beta/sqrtD) I",
                    &sr,
                    &psi.affine(&-&b, &(p.sigma() * &inv)),
                    Expect::Nonzero,
                ));
                claims.push(Claim::t11(
                    "published: (alpha - sigma) s = ((sigma + alpha)/sqrtD) psi + (beta/sqrtD) I",
                    &ss,
                    &psi.affine(&b, &(&(p.sigma() + &cx.alpha()) * &inv)),
                    Expect::Nonzero,
                ));
            }
        }
        "minimal_polynomial" | "errata_complex_constant" => {
            let d = cx.decl(arg(0));
            let kind = match d.kind {
                StructureKind::Product => PolyKind::Product,
                StructureKind::Tangent => PolyKind::Tangent,
                StructureKind::Complex => PolyKind::Complex,
                StructureKind::Metallic => {
                    return Err(Error::InvalidParams(format!(
                        "`{}` needs a product, tangent or complex structure",
                        req.name
                    )))
                }
            };
            if req.name == "errata_complex_constant" && kind != PolyKind::Complex {
                return Err(Error::InvalidParams("errata_complex_constant needs a complex structure".into()));
            }
            let lifted = complete_lift_t11(tm, &d.tensor)?;
            for (where_, t) in [("M", &d.tensor), ("TM", &lifted)] {
                let rep = minimal_polynomial_check(t, kind, p)?;
                let psi = metallic_recipe(t, p);
                let (c1, c0) = rep.coefficients.clone();
                let (k1, k0) = kind.claimed_coefficients(p);
                let claim = |label: String, c1: &QuadScalar, c0: &QuadScalar, expect| {
                    Claim::t11(label, &psi.square(), &psi.affine(&-c0, &-c1), expect)
                };
                let computed = format!("{where_}: computed {} annihilates", poly_text(&c1, &c0));
                claims.push(claim(computed, &c1, &c0, Expect::Zero));
                // the published complex constant is wrong; it is only examined by the errata check
                match (kind, req.name.as_str()) {
                    (PolyKind::Complex, "minimal_polynomial") => {}
                    _ => {
                        let published = format!("{where_}: published {} annihilates", poly_text(&k1, &k0));
                        let expect = if kind == PolyKind::Complex { Expect::Nonzero } else { Expect::Zero };
                        claims.push(claim(published, &k1, &k0, expect));
                    }
                }
            }
        }
        "complete_lift_metallic" => {
            let d = cx.decl(arg(0));
            let m = cx.metallic(d)?;
            let psic = complete_lift_t11(tm, m.tensor())?;
            claims.push(cx.metallic_claim("(psi^C)^2 = alpha psi^C + beta I", &psic));
            claims.push(zero("(psi^2)^C = (psi^C)^2", &complete_lift_t11(tm, &m.tensor().square())?, &psic.square()));
            let pc = complete_lift_t11(tm, &cx.product(d)?)?;
            let h = cx.half();
            claims.push(zero(
                "psi^C = (alpha + sqrtD P^C)/2",
                &psic,
                &pc.affine(&(&cx.alpha() * &h), &(p.sqrt_d() * &h)),
            ));
            let inv = cx.inv_sqrt_d();
            claims.push(zero(
                "P^C = (2 psi^C - alpha)/sqrtD",
                &pc,
                &psic.affine(&-(&cx.alpha() * &inv), &(&QuadScalar::from_int(2) * &inv)),
            ));
        }
        "errata_complete_lift_sign" => {
            let d = cx.decl(arg(0));
            let m = cx.metallic(d)?;
            let psic = complete_lift_t11(tm, m.tensor())?;
            let pc = complete_lift_t11(tm, &cx.product(d)?)?;
            let inv = cx.inv_sqrt_d();
            let two = &QuadScalar::from_int(2) * &inv;
            let a = &cx.alpha() * &inv;
            claims.push(zero("P^C = (2 psi^C - alpha)/sqrtD", &pc, &psic.affine(&-&a, &two)));
            claims.push(Claim::t11("published: P^C = (2 psi^C + alpha)/sqrtD", &pc, &psic.affine(&a, &two), Expect::Nonzero));
        }
        "lifted_projector_algebra" => {
            let m = cx.metallic(cx.decl(arg(0)))?;
            let pr = projectors_from_metallic(&m);
            let (rc, sc, psic) = (
                complete_lift_t11(tm, &pr.r)?,
                complete_lift_t11(tm, &pr.s)?,
                complete_lift_t11(tm, m.tensor())?,
            );
            let total = tm.total();
            claims.push(zero("r^C + s^C = I", &rc.add(&sc)?, &Tensor11Field::identity(total)));
            claims.push(zero("r^C s^C = 0", &rc.compose(&sc)?, &Tensor11Field::zero(total)));
            claims.push(zero("(r^C)^2 = r^C", &rc.square(), &rc));
            claims.push(zero("(s^C)^2 = s^C", &sc.square(), &sc));
            claims.push(zero("psi^C r^C = sigma r^C", &psic.compose(&rc)?, &rc.scale_const(p.sigma())));
            claims.push(zero(
                "psi^C s^C = (alpha - sigma) s^C",
                &psic.compose(&sc)?,
                &sc.scale_const(&p.conjugate_sigma()),
            ));
        }
        "composite" => {
            let (pt, ft) = (&cx.decl(arg(0)).tensor, &cx.decl(arg(1)).tensor);
            let (pc, fc) = (complete_lift_t11(tm, pt)?, complete_lift_t11(tm, ft)?);
            claims.push(zero("(P F)^C = P^C F^C", &complete_lift_t11(tm, &pt.compose(ft)?)?, &pc.compose(&fc)?));
            for (where_, a, b) in [("M", pt, ft), ("TM", &pc, &fc)] {
                let j = a.compose(b)?;
                let (pp, pf, pj) = (metallic_recipe(a, p), metallic_recipe(b, p), metallic_recipe(&j, p));
                let alpha = cx.alpha();
                let rhs = pp
                    .compose(&pf)?
                    .scale_const(&QuadScalar::from_int(2))
                    .sub(&pp.scale_const(&alpha))?
                    .sub(&pf.scale_const(&alpha))?
                    .add(&Tensor11Field::scalar(a.chart(), &(&alpha * p.sigma())))?;
                claims.push(zero(format!("{where_}: sqrtD psi_J = 2 psi_P psi_F - alpha psi_P - alpha psi_F + alpha sigma I"), &pj.scale_const(p.sqrt_d()), &rhs));
            }
        }
        "nijenhuis_zero" | "nijenhuis_nonzero" => {
            let (pos, neg) = nijenhuis_parts(&cx.psi_raw(cx.decl(arg(0))));
            let expect = if req.name == "nijenhuis_zero" { Expect::Zero } else { Expect::Nonzero };
            claims.push(Claim::t12("N_psi = 0", &pos, &neg, expect));
        }
        "np_relation" => {
            let prod = cx.product(cx.decl(arg(0)))?;
            let pc = complete_lift_t11(tm, &prod)?;
            let factor = QuadScalar::from_ratio(4, p.discriminant() as i64);
            for (where_, t) in [("M", &prod), ("TM", &pc)] {
                let np = crate::integrability::nijenhuis_t11(t);
                let npsi = crate::integrability::nijenhuis_t11(&metallic_recipe(t, p));
                claims.push(Claim::t12(format!("{where_}: N_P = (4/D) N_psi"), &np, &npsi.scale_const(&factor), Expect::Zero));
            }
        }
        "nijenhuis_lift" => {
            let t = cx.psi_raw(cx.decl(arg(0)));
            let tc = complete_lift_t11(tm, &t)?;
            let fields = cx.test_fields();
            let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
            for (k, x) in fields.iter().enumerate() {
                for y in &fields[k + 1..] {
                    lhs.push(nijenhuis_eval(&tc, &complete_lift_vf(tm, x)?, &complete_lift_vf(tm, y)?)?);
                    rhs.push(complete_lift_vf(tm, &nijenhuis_eval(&t, x, y)?)?);
                }
            }
            claims.push(Claim::vfs("N_{psi^C}(X^C, Y^C) = (N_psi(X, Y))^C", &lhs, &rhs, Expect::Zero));
            if crate::integrability::nijenhuis_t11(&t).is_zero() {
                let (pos, neg) = nijenhuis_parts(&tc);
                claims.push(Claim::t12("N_psi = 0 implies N_{psi^C} = 0", &pos, &neg, Expect::Zero));
            }
        }
        "distributions_integrable" | "distribution_integrable" | "distribution_not_integrable" => {
            let names: Vec<String> = if req.name == "distributions_integrable" {
                s.distributions.iter().map(|d| d.name.clone()).collect()
            } else {
                vec![arg(0).to_string()]
            };
            let expect = if req.name == "distribution_not_integrable" { Expect::Nonzero } else { Expect::Zero };
            for name in names {
                let (dist, _) = cx.distribution(&name)?;
                let lifted = dist.complete_lift(tm)?;
                for (where_, d) in [("M", &dist), ("TM", &lifted)] {
                    let (l, r) = involutivity_sides(d.projector());
                    claims.push(Claim::vfs(format!("{where_}: {name} closed under brackets"), &l, &r, expect));
                    let gens: Vec<VectorField> = d.generators().to_vec();
                    let (mut gl, mut gr) = (Vec::new(), Vec::new());
                    for (k, x) in gens.iter().enumerate() {
                        for y in &gens[k + 1..] {
                            let br = lie_bracket(x, y)?;
                            gr.push(d.projector().apply(&br)?);
                            gl.push(br);
                        }
                    }
                    if !gl.is_empty() {
                        claims.push(Claim::vfs(format!("{where_}: brackets of {name} generators stay in {name}"), &gl, &gr, expect));
                    }
                }
            }
        }
        "projector_criteria" | "projector_criterion_fails" => {
            let m = cx.metallic(cx.decl(arg(0)))?;
            let pr = projectors_from_metallic(&m);
            let which: Vec<&str> = if req.name == "projector_criteria" {
                vec!["r_on_s", "s_on_r"]
            } else {
                vec![arg(1)]
            };
            let expect = if req.name == "projector_criteria" { Expect::Zero } else { Expect::Nonzero };
            let psic = complete_lift_t11(tm, m.tensor())?;
            for w in which {
                let own = if w == "r_on_s" { &pr.s } else { &pr.r };
                let ownc = complete_lift_t11(tm, own)?;
                let (q, o) = if w == "r_on_s" { ("r", "s") } else { ("s", "r") };
                let (l, r) = criterion_sides(m.tensor(), own);
                claims.push(Claim::vfs(format!("M: {q} N_psi({o}X, {o}Y) = 0"), &l, &r, expect));
                let (l, r) = criterion_sides(&psic, &ownc);
                claims.push(Claim::vfs(format!("TM: {q}^C N_{{psi^C}}({o}^C X, {o}^C Y) = 0"), &l, &r, expect));
            }
        }
        "horizontal_lift" => {
            let m = cx.metallic(cx.decl(arg(0)))?;
            let conn = cx.conn();
            let psih = horizontal_lift_t11(tm, m.tensor(), &conn)?;
            claims.push(cx.metallic_claim("(psi^H)^2 = alpha psi^H + beta I", &psih));
            claims.push(zero("(psi^2)^H = (psi^H)^2", &horizontal_lift_t11(tm, &m.tensor().square(), &conn)?, &psih.square()));
            let fields = cx.test_fields();
            let (mut l1, mut r1) = (Vec::new(), Vec::new());
            let (mut l2, mut r2) = (Vec::new(), Vec::new());
            let (mut l3, mut r3) = (Vec::new(), Vec::new());
            for x in &fields {
                let xh = horizontal_lift_vf(tm, x, &conn)?;
                let tx = m.tensor().apply(x)?;
                l1.push(psih.apply(&xh)?);
                r1.push(horizontal_lift_vf(tm, &tx, &conn)?);
                l2.push(psih.apply(&vertical_lift_vf(tm, x)?)?);
                r2.push(vertical_lift_vf(tm, &tx)?);
                l3.push(xh.add(&nabla_gamma_vf(tm, x, &conn)?)?);
                r3.push(complete_lift_vf(tm, x)?);
            }
            claims.push(Claim::vfs("psi^H X^H = (psi X)^H", &l1, &r1, Expect::Zero));
            claims.push(Claim::vfs("psi^H X^V = (psi X)^V", &l2, &r2, Expect::Zero));
            claims.push(Claim::vfs("X^H + nabla_gamma X = X^C", &l3, &r3, Expect::Zero));
        }
        "jtilde" | "errata_jtilde" => {
            let conn = cx.conn();
            let j = jtilde_structure(tm, &conn, p)?;
            claims.push(cx.metallic_claim("J~^2 = alpha J~ + beta I", &j));
            if req.name == "jtilde" {
                let ps = swap_structure(tm, &conn)?;
                claims.push(zero("P~^2 = I", &ps.square(), &Tensor11Field::identity(tm.total())));
                let h = cx.half();
                let (a, b) = (&cx.alpha() * &h, p.sqrt_d() * &h);
                let (mut l1, mut r1, mut l2, mut r2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
                for x in cx.test_fields() {
                    let (xh, xv) = (horizontal_lift_vf(tm, &x, &conn)?, vertical_lift_vf(tm, &x)?);
                    l1.push(j.apply(&xh)?);
                    r1.push(xh.scale_const(&a).add(&xv.scale_const(&b))?);
                    l2.push(j.apply(&xv)?);
                    r2.push(xv.scale_const(&a).add(&xh.scale_const(&b))?);
                }
                claims.push(Claim::vfs("J~ X^H = (alpha X^H + sqrtD X^V)/2", &l1, &r1, Expect::Zero));
                claims.push(Claim::vfs("J~ X^V = (alpha X^V + sqrtD X^H)/2", &l2, &r2, Expect::Zero));
            } else {
                let printed = jtilde_printed(tm, &conn, p)?;
                let coincide = p.alpha() == 1;
                let expect = if coincide { Expect::Zero } else { Expect::Nonzero };
                claims.push(Claim::t11("published form equals the derived form", &printed, &j, expect));
                let mut c = cx.metallic_claim("published form satisfies the metallic equation", &printed);
                c.expect = expect;
                claims.push(c);
            }
        }
        "errata_nijenhuis" => {
            let prod = cx.product(cx.decl(arg(0)))?;
            let psi = metallic_recipe(&prod, p);
            let factor = QuadScalar::from_ratio(4, p.discriminant() as i64);
            let basis = cx.basis();
            let (mut l, mut r, mut pl, mut prr) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for (k, x) in basis.iter().enumerate() {
                for y in &basis[k + 1..] {
                    l.push(nijenhuis_eval(&prod, x, y)?);
                    r.push(nijenhuis_eval(&psi, x, y)?.scale_const(&factor));
                    pl.push(nijenhuis_printed_eval(&prod, x, y)?);
                    prr.push(nijenhuis_printed_eval(&psi, x, y)?.scale_const(&factor));
                }
            }
            claims.push(Claim::vfs("last term T^2[X, Y]: N_P = (4/D) N_psi", &l, &r, Expect::Zero));
            claims.push(Claim::vfs("published last term T^2[TX, TY]: N_P = (4/D) N_psi", &pl, &prr, Expect::Nonzero));
        }
        "errata_orthogonal_lines" => {
            if *cx.chart != orthogonal_lines_chart() {
                return Err(Error::InvalidChart("errata_orthogonal_lines needs `chart: x, y`".into()));
            }
            let m = orthogonal_lines_structure(p);
            let printed = orthogonal_lines_printed(p);
            let d = m.tensor();
            let c = cx.chart;
            claims.push(Claim::scalar("published psi^1_1", c, printed.get(0, 0).clone(), d.get(0, 0).clone(), Expect::Zero));
            claims.push(Claim::scalar("published psi^2_2", c, printed.get(1, 1).clone(), d.get(1, 1).clone(), Expect::Zero));
            claims.push(Claim::scalar("published psi^2_1", c, printed.get(1, 0).clone(), d.get(1, 0).clone(), Expect::Nonzero));
            claims.push(Claim::scalar("published psi^1_2", c, printed.get(0, 1).clone(), d.get(0, 1).clone(), Expect::Nonzero));
            let mut pc = cx.metallic_claim("published components satisfy the metallic equation", &printed);
            pc.expect = Expect::Nonzero;
            claims.push(pc);
            claims.push(cx.metallic_claim("derived components satisfy the metallic equation", d));
        }
        "section_decomposition" => {
            let t = cx.psi_raw(cx.decl(arg(0)));
            let cs = CrossSection::new(cx.field(arg(1)).clone());
            let fields = cx.test_fields();
            let (mut bl, mut br, mut cl, mut cr, mut xl, mut xr) = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for (k, x) in fields.iter().enumerate() {
                for y in &fields[k + 1..] {
                    bl.push(lie_bracket(&b_lift(&cs, x)?, &b_lift(&cs, y)?)?);
                    br.push(b_lift(&cs, &lie_bracket(x, y)?)?);
                    cl.push(lie_bracket(&c_lift(&cs, x)?, &c_lift(&cs, y)?)?);
                    cr.push(VectorField::zero(tm.total()));
                }
                xl.push(cs.restrict_vf(&complete_lift_vf(tm, x)?)?);
                let rhs = b_lift(&cs, x)?.add(&c_lift(&cs, &lie_derivative_vf(cs.field(), x)?)?)?;
                xr.push(cs.restrict_vf(&rhs)?);
            }
            claims.push(Claim::vfs("[BX, BY] = B[X, Y]", &bl, &br, Expect::Zero));
            claims.push(Claim::vfs("[CX, CY] = 0", &cl, &cr, Expect::Zero));
            claims.push(Claim::vfs("X^C = BX + C(L_V X) along the section", &xl, &xr, Expect::Zero));
            let (_, sides) = invariance_sides(&t, &cs)?;
            let (l, r): (Vec<_>, Vec<_>) = sides.into_iter().unzip();
            claims.push(Claim::vfs("psi^C(BX) = B(psi X) + C((L_V psi) X) along the section", &l, &r, Expect::Zero));
        }
        "section_invariant" | "section_not_invariant" => {
            let t = cx.psi_raw(cx.decl(arg(0)));
            let v = cx.field(arg(1));
            // L_V T = V(T) + T ∂V - ∂V T with (∂V)^h_a = ∂_a V^h
            let dv = Tensor11Field::from_fn(cx.chart, |h, a| v.component(h).derivative(a));
            let lhs = t.map(|f| v.derive(f)).add(&t.compose(&dv)?)?;
            let rhs = dv.compose(&t)?;
            let expect = if req.name == "section_invariant" { Expect::Zero } else { Expect::Nonzero };
            claims.push(Claim::t11("L_V psi = 0", &lhs, &rhs, expect));
        }
        "induced_structure" => {
            let m = cx.metallic(cx.decl(arg(0)))?;
            let cs = CrossSection::new(cx.field(arg(1)).clone());
            let induced = induced_structure(&m, &cs)?;
            claims.push(cx.metallic_claim("induced structure is metallic", induced.tensor()));
            let psic = complete_lift_t11(tm, m.tensor())?;
            let (mut l, mut r) = (Vec::new(), Vec::new());
            for x in cx.basis() {
                l.push(cs.restrict_vf(&psic.apply(&b_lift(&cs, &x)?)?)?);
                r.push(b_lift(&cs, &induced.tensor().apply(&x)?)?);
            }
            claims.push(Claim::vfs("psi^C(BX) = B(psi# X) along the section", &l, &r, Expect::Zero));
        }
        "section_nijenhuis" => {
            let t = cx.psi_raw(cx.decl(arg(0)));
            let cs = CrossSection::new(cx.field(arg(1)).clone());
            let sides = section_nijenhuis_sides(&t, &cs)?;
            let (l, r): (Vec<_>, Vec<_>) = sides.into_iter().unzip();
            claims.push(Claim::vfs(
                "N_{psi^C}(BX, BY) = B(N_psi(X, Y)) + C((L_V N_psi)(X, Y)) along the section",
                &l,
                &r,
                Expect::Zero,
            ));
            let invariant = crate::geometry::lie_derivative_t11(cs.field(), &t)?.is_zero();
            if invariant {
                let base_zero = crate::integrability::nijenhuis_t11(&t).is_zero();
                let zeros: Vec<VectorField> = l.iter().map(|_| VectorField::zero(tm.total())).collect();
                let (label, expect) = if base_zero {
                    ("N_psi = 0, so N_{psi^C} vanishes on the section", Expect::Zero)
                } else {
                    ("N_psi != 0, so N_{psi^C} does not vanish on the section", Expect::Nonzero)
                };
                claims.push(Claim::vfs(label, &l, &zeros, expect));
            }
        }
        other => unreachable!("unknown check `{other}` passed parsing"),
    }
    Ok(claims)
}
