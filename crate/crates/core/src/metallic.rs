//! Metallic structures `Ψ² = αΨ + βI` and the calculus around them: the
//! correspondence with almost product structures, the eigenprojectors `r, s`,
//! minimal polynomials of the tangent and complex variants, and the composite
//! relation for `J = P ∘ F`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Tensor11Field;
use crate::numfield::{MetallicParams, QuadScalar};

/// A (1,1)-tensor field satisfying `Ψ² - αΨ - βI = 0`, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetallicStructure {
    params: MetallicParams,
    tensor: Tensor11Field,
}

impl MetallicStructure {
    pub fn new(params: MetallicParams, tensor: Tensor11Field) -> Result<Self> {
        let residual = metallic_residual(&tensor, &params);
        if let Some((row, col, r)) = residual.first_nonzero() {
            return Err(Error::NotMetallic {
                row,
                col,
                residual: tensor.chart().fmt_expr(r),
            });
        }
        Ok(Self { params, tensor })
    }

    pub fn params(&self) -> &MetallicParams {
        &self.params
    }

    pub fn tensor(&self) -> &Tensor11Field {
        &self.tensor
    }

    pub fn into_tensor(self) -> Tensor11Field {
        self.tensor
    }
}

/// `T² - αT - βI`.
pub fn metallic_residual(t: &Tensor11Field, params: &MetallicParams) -> Tensor11Field {
    let lin = t.affine(&params.beta_scalar(), &params.alpha_scalar());
    t.square().sub(&lin).expect("same chart")
}

/// `½(α·I + √D·T)`, the metallic recipe applied to any (1,1)-tensor.
pub fn metallic_recipe(t: &Tensor11Field, params: &MetallicParams) -> Tensor11Field {
    let half = QuadScalar::from_ratio(1, 2);
    t.affine(&(&params.alpha_scalar() * &half), &(params.sqrt_d() * &half))
}

/// Checks `T² = c·I` and reports the first violating entry.
pub(crate) fn check_square(
    t: &Tensor11Field,
    c: i64,
    kind: &'static str,
) -> Result<()> {
    let residual = t
        .square()
        .sub(&Tensor11Field::scalar(t.chart(), &QuadScalar::from_int(c)))
        .expect("same chart");
    match residual.first_nonzero() {
        None => Ok(()),
        Some((row, col, r)) if kind == "almost product" => Err(Error::NotAlmostProduct {
            row,
            col,
            residual: t.chart().fmt_expr(r),
        }),
        Some((row, col, r)) => Err(Error::DefiningRelation {
            kind,
            row,
            col,
            residual: t.chart().fmt_expr(r),
        }),
    }
}

/// `Ψ = ½(αI + √D P)` for an almost product structure `P`.
pub fn metallic_from_product(p: &Tensor11Field, params: &MetallicParams) -> Result<MetallicStructure> {
    check_square(p, 1, "almost product")?;
    MetallicStructure::new(params.clone(), metallic_recipe(p, params))
}

/// `P = (2Ψ - αI)/√D`.
pub fn product_from_metallic(m: &MetallicStructure) -> Tensor11Field {
    let inv = m
        .params
        .sqrt_d()
        .checked_inv()
        .expect("alpha^2 + 4 beta is positive");
    let shift = -&(&m.params.alpha_scalar() * &inv);
    m.tensor
        .affine(&shift, &(&QuadScalar::from_int(2) * &inv))
}

/// Complementary projectors onto the `σ`- and `(α-σ)`-eigendistributions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorPair {
    pub r: Tensor11Field,
    pub s: Tensor11Field,
}

impl ProjectorPair {
    /// Residuals of `r + s = I`, `rs = 0`, `sr = 0`, `r² = r`, `s² = s`.
    pub fn algebra_residuals(&self) -> Vec<(&'static str, Tensor11Field)> {
        let id = Tensor11Field::identity(self.r.chart());
        let rs = self.r.compose(&self.s).expect("same chart");
        let sr = self.s.compose(&self.r).expect("same chart");
        vec![
            ("r + s - I", self.r.add(&self.s).and_then(|t| t.sub(&id)).expect("same chart")),
            ("r s", rs),
            ("s r", sr),
            ("r^2 - r", self.r.square().sub(&self.r).expect("same chart")),
            ("s^2 - s", self.s.square().sub(&self.s).expect("same chart")),
        ]
    }
}

/// `r = Ψ/√D - ((α-σ)/√D) I`, `s = -Ψ/√D + (σ/√D) I`.
pub fn projectors_from_metallic(m: &MetallicStructure) -> ProjectorPair {
    let p = &m.params;
    let inv = p.sqrt_d().checked_inv().expect("positive discriminant");
    let r = m.tensor.affine(&-(&p.conjugate_sigma() * &inv), &inv);
    let s = m.tensor.affine(&(p.sigma() * &inv), &-&inv);
    ProjectorPair { r, s }
}

/// Residuals of the eigen-relations `Ψr = rΨ = σr` and `Ψs = sΨ = (α-σ)s`.
pub fn eigen_residuals(m: &MetallicStructure, pr: &ProjectorPair) -> Vec<(&'static str, Tensor11Field)> {
    let psi = &m.tensor;
    let p = &m.params;
    let sr = pr.r.scale_const(p.sigma());
    let ss = pr.s.scale_const(&p.conjugate_sigma());
    let sub = |a: Tensor11Field, b: &Tensor11Field| a.sub(b).expect("same chart");
    vec![
        ("psi r - sigma r", sub(psi.compose(&pr.r).expect("chart"), &sr)),
        ("r psi - sigma r", sub(pr.r.compose(psi).expect("chart"), &sr)),
        ("psi s - (alpha - sigma) s", sub(psi.compose(&pr.s).expect("chart"), &ss)),
        ("s psi - (alpha - sigma) s", sub(pr.s.compose(psi).expect("chart"), &ss)),
    ]
}

/// The expansions of `σr` and `(α-σ)s` in terms of `Ψ` and `I`, in the form
/// derived from the projector definitions and in the form with the signs
/// printed in the source literature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    /// `σr = (σ/√D)Ψ + (β/√D)I`
    pub derived_r_holds: bool,
    /// `(α-σ)s = ((σ-α)/√D)Ψ - (β/√D)I`
    pub derived_s_holds: bool,
    /// `σr = (σ/√D)Ψ - (β/√D)I`
    pub printed_r_holds: bool,
    /// `(α-σ)s = ((σ+α)/√D)Ψ + (β/√D)I`
    pub printed_s_holds: bool,
}

pub fn projector_expansions(m: &MetallicStructure) -> ExpansionReport {
    let p = &m.params;
    let pr = projectors_from_metallic(m);
    let inv = p.sqrt_d().checked_inv().expect("positive discriminant");
    let beta = &p.beta_scalar() * &inv;
    let sigma_r = pr.r.scale_const(p.sigma());
    let conj_s = pr.s.scale_const(&p.conjugate_sigma());
    let holds = |lhs: &Tensor11Field, b: QuadScalar, a: QuadScalar| {
        lhs.sub(&m.tensor.affine(&b, &a)).expect("chart").is_zero()
    };
    let alpha = p.alpha_scalar();
    ExpansionReport {
        derived_r_holds: holds(&sigma_r, beta.clone(), p.sigma() * &inv),
        derived_s_holds: holds(&conj_s, -&beta, &(p.sigma() - &alpha) * &inv),
        printed_r_holds: holds(&sigma_r, -&beta, p.sigma() * &inv),
        printed_s_holds: holds(&conj_s, beta.clone(), &(p.sigma() + &alpha) * &inv),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    /// `T² = I`
    Product,
    /// `T² = 0`
    Tangent,
    /// `T² = -I`
    Complex,
}

impl StructureKind {
    fn square_constant(self) -> i64 {
        match self {
            Self::Product => 1,
            Self::Tangent => 0,
            Self::Complex => -1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Product => "almost product",
            Self::Tangent => "almost tangent",
            Self::Complex => "almost complex",
        }
    }

    /// `(c₁, c₀)` of the polynomial `X² + c₁X + c₀` stated in the literature for
    /// `½(αI + √D T)`.
    pub fn claimed_coefficients(self, params: &MetallicParams) -> (QuadScalar, QuadScalar) {
        let a = params.alpha_scalar();
        let a2_4 = &(&a * &a) * &QuadScalar::from_ratio(1, 4);
        let c0 = match self {
            Self::Product => -params.beta_scalar(),
            Self::Tangent => a2_4,
            Self::Complex => &a2_4 + &params.beta_scalar(),
        };
        (-a, c0)
    }
}

/// The monic quadratic annihilating `½(αI + √D T)`, computed from the tensor,
/// next to the one stated in the literature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialReport {
    pub kind: StructureKind,
    /// `c₁` in `X² + c₁X + c₀`
    pub c1: String,
    pub c0: String,
    pub claimed_c1: String,
    pub claimed_c0: String,
    /// Whether the computed polynomial annihilates the structure exactly.
    pub annihilates: bool,
    pub matches_claim: bool,
    #[serde(skip)]
    pub coefficients: (QuadScalar, QuadScalar),
}

/// Forms `Ψ = ½(αI + √D T)` and solves `Ψ² + c₁Ψ + c₀I = 0` for constants
/// `c₁, c₀` from the entries of `Ψ` and `Ψ²`.
pub fn minimal_polynomial_check(
    t: &Tensor11Field,
    kind: StructureKind,
    params: &MetallicParams,
) -> Result<PolynomialReport> {
    check_square(t, kind.square_constant(), kind.name())?;
    let psi = metallic_recipe(t, params);
    let sq = psi.square();
    let n = psi.dim();
    // Ψ² = aΨ + bI with a = -c₁, b = -c₀.
    let (a, b) = if let Some((h, i)) = (0..n * n)
        .map(|k| (k / n, k % n))
        .find(|&(h, i)| h != i && !psi.get(h, i).is_zero())
    {
        let a = sq.get(h, i) / psi.get(h, i);
        let b = sq.get(h, h) - &(&a * psi.get(h, h));
        (a, b)
    } else if let Some(k) = (1..n).find(|&k| psi.get(k, k) != psi.get(0, 0)) {
        // diagonal with two distinct entries: solve the 2x2 system
        let (d0, dk) = (psi.get(0, 0), psi.get(k, k));
        let a = &(sq.get(0, 0) - sq.get(k, k)) / &(d0 - dk);
        let b = sq.get(0, 0) - &(&a * d0);
        (a, b)
    } else {
        // Ψ = λI: any (X - λ)(X - μ) annihilates; pair λ with its
        // conjugate root μ = α - λ.
        let lambda = psi.get(0, 0).clone();
        let mu = &crate::symexpr::RatFunc::constant(params.alpha_scalar()) - &lambda;
        (&lambda + &mu, -&(&lambda * &mu))
    };
    let residual = sq
        .sub(&psi.affine(&QuadScalar::zero(), &QuadScalar::one()).scale(&a))
        .and_then(|r| r.sub(&Tensor11Field::identity(psi.chart()).scale(&b)))
        .expect("same chart");
    let constants = a.as_constant().zip(b.as_constant());
    let annihilates = residual.is_zero() && constants.is_some();
    let (a, b) = constants.unwrap_or_else(|| (QuadScalar::zero(), QuadScalar::zero()));
    let (c1, c0) = (-a, -b);
    let (claimed_c1, claimed_c0) = kind.claimed_coefficients(params);
    Ok(PolynomialReport {
        kind,
        c1: c1.to_string(),
        c0: c0.to_string(),
        claimed_c1: claimed_c1.to_string(),
        claimed_c0: claimed_c0.to_string(),
        annihilates,
        matches_claim: annihilates && c1 == claimed_c1 && c0 == claimed_c0,
        coefficients: (c1, c0),
    })
}

/// Residual of `√D·Ψ_J - (2Ψ_PΨ_F - αΨ_P - αΨ_F + ασI)` with `J = P ∘ F` and
/// each `Ψ_T = ½(αI + √D T)`.
pub fn composite_relation_residual(
    p: &Tensor11Field,
    f: &Tensor11Field,
    params: &MetallicParams,
) -> Result<Tensor11Field> {
    let j = p.compose(f)?;
    let (psi_p, psi_f, psi_j) = (
        metallic_recipe(p, params),
        metallic_recipe(f, params),
        metallic_recipe(&j, params),
    );
    let alpha = params.alpha_scalar();
    let lhs = psi_j.scale_const(params.sqrt_d());
    let rhs = psi_p
        .compose(&psi_f)?
        .scale_const(&QuadScalar::from_int(2))
        .sub(&psi_p.scale_const(&alpha))?
        .sub(&psi_f.scale_const(&alpha))?
        .add(&Tensor11Field::scalar(p.chart(), &(&alpha * params.sigma())))?;
    lhs.sub(&rhs)
}

pub fn composite_relation_check(
    p: &Tensor11Field,
    f: &Tensor11Field,
    params: &MetallicParams,
) -> Result<bool> {
    Ok(composite_relation_residual(p, f, params)?.is_zero())
}
