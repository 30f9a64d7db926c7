//! Catalogue of quantum identities and the per-sample residual runner.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::{max_nan, ClassicalRData, LIMIT_LARGE, LIMIT_SMALL};
use crate::error::{Error, Result};
use crate::models::{re, ModelId, RModel};
use crate::param::ParamPoint;
use crate::quantum::{a_from_rz, classical_limit_slope, gamma_pair, legs, rz_pair, scalar_fit, tilde_family};
use crate::tensor::{CMatrix, Pair, Residual, C64};
use crate::triple::relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckId {
    UnitAd,
    BcTranspose,
    QybeA,
    QybeD,
    Acc,
    Dbb,
    QybeB,
    QybeC,
    AbcdFactor,
    GammaLocal,
    GammaTilde,
    LimitsSmall,
    LimitsLarge,
    ClassicalLimit,
    RzRelations,
    ScalarFactor,
    DaSwap,
    HatUnitarity,
}

impl CheckId {
    pub const ALL: [CheckId; 18] = [
        CheckId::UnitAd,
        CheckId::BcTranspose,
        CheckId::QybeA,
        CheckId::QybeD,
        CheckId::Acc,
        CheckId::Dbb,
        CheckId::QybeB,
        CheckId::QybeC,
        CheckId::AbcdFactor,
        CheckId::GammaLocal,
        CheckId::GammaTilde,
        CheckId::LimitsSmall,
        CheckId::LimitsLarge,
        CheckId::ClassicalLimit,
        CheckId::RzRelations,
        CheckId::ScalarFactor,
        CheckId::DaSwap,
        CheckId::HatUnitarity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::UnitAd => "UNIT_AD",
            CheckId::BcTranspose => "BC_TRANSPOSE",
            CheckId::QybeA => "QYBE_A",
            CheckId::QybeD => "QYBE_D",
            CheckId::Acc => "ACC",
            CheckId::Dbb => "DBB",
            CheckId::QybeB => "QYBE_B",
            CheckId::QybeC => "QYBE_C",
            CheckId::AbcdFactor => "ABCD_FACTOR",
            CheckId::GammaLocal => "GAMMA_LOCAL",
            CheckId::GammaTilde => "GAMMA_TILDE",
            CheckId::LimitsSmall => "LIMITS_SMALL",
            CheckId::LimitsLarge => "LIMITS_LARGE",
            CheckId::ClassicalLimit => "CLASSICAL_LIMIT",
            CheckId::RzRelations => "RZ_RELATIONS",
            CheckId::ScalarFactor => "SCALAR_FACTOR",
            CheckId::DaSwap => "DA_SWAP",
            CheckId::HatUnitarity => "HAT_UNITARITY",
        }
    }

    /// One-line statement of the identity behind the id.
    pub fn describe(self) -> &'static str {
        match self {
            CheckId::UnitAd => "A12(l) A21(1/l) and D12(l) D21(1/l) proportional to 1",
            CheckId::BcTranspose => "C12 = B21",
            CheckId::QybeA => "A12(l/m) A13(l) A23(m) = A23(m) A13(l) A12(l/m)",
            CheckId::QybeD => "D12(l/m) D13(l) D23(m) = D23(m) D13(l) D12(l/m)",
            CheckId::Acc => "A12(l) C13 C23 = C23 C13 A12(l)",
            CheckId::Dbb => "D12(l) B13 B23 = B23 B13 D12(l)",
            CheckId::QybeB => "B12 B13 B23 = B23 B13 B12",
            CheckId::QybeC => "C12 C13 C23 = C23 C13 C12",
            CheckId::AbcdFactor => "A(l) B = C D(l)",
            CheckId::GammaLocal => "g2 B g1 A(l) = D(l) g1 C g2",
            CheckId::GammaTilde => "At gt1 Bt gt2 = gt2 Ct gt1 Dt",
            CheckId::LimitsSmall => "A(0) = B^-1, D(0) = C^-1",
            CheckId::LimitsLarge => "A(inf) = C, D(inf) = B",
            CheckId::ClassicalLimit => "(F(e^ih) - 1)/(ih) -> a, b, c, d",
            CheckId::RzRelations => "A = Z21 R Z12^-1, R unitarity, RRR, ZZZ, RZZ, ZZR",
            CheckId::ScalarFactor => "A12(l) A21(1/l) equals the predicted scalar or K",
            CheckId::DaSwap => "D12(l) = A21(l)",
            CheckId::HatUnitarity => "Ah12(l) Ah21(1/l) = 1 and Dh12(l) Dh21(1/l) = 1",
        }
    }

    pub fn kind(self) -> ToleranceKind {
        match self {
            CheckId::LimitsSmall | CheckId::LimitsLarge => ToleranceKind::Limit,
            CheckId::ClassicalLimit => ToleranceKind::Classical,
            _ => ToleranceKind::Exact,
        }
    }

    /// Whether the identity is a stated property of the model.
    pub fn applies_to(self, model: &dyn RModel) -> bool {
        match self {
            CheckId::DaSwap => model.d_is_a21(),
            CheckId::HatUnitarity => matches!(model.id(), ModelId::Csg | ModelId::Su3So3),
            _ => true,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToleranceKind {
    Exact,
    Limit,
    Classical,
}

/// Tolerance ladder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub exact: f64,
    pub limit: f64,
    pub classical: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { exact: 1e-10, limit: 1e-4, classical: 1e-5 }
    }
}

impl Tolerances {
    pub fn for_kind(&self, kind: ToleranceKind) -> f64 {
        match kind {
            ToleranceKind::Exact => self.exact,
            ToleranceKind::Limit => self.limit,
            ToleranceKind::Classical => self.classical,
        }
    }
}

/// Complex number serialized as `{"re", "im"}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResidual {
    pub p: Complex,
    pub lambda: Complex,
    pub mu: Complex,
    /// Relative residual; `null` when the sample errored.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub model: String,
    pub check: String,
    pub max_relative: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Scalar detected at the first sample, for checks that detect one.
    pub detected_scalar: Option<Complex>,
    pub samples: Vec<SampleResidual>,
}

impl CheckReport {
    /// Assembles a report; `passed` requires every sample to succeed.
    pub fn from_samples(
        model: &str,
        check: &str,
        tolerance: f64,
        detected_scalar: Option<C64>,
        samples: Vec<(ParamPoint, Option<f64>)>,
    ) -> Self {
        let errored = samples.iter().any(|(_, r)| r.is_none());
        let max_relative = samples.iter().filter_map(|(_, r)| *r).fold(0.0, max_nan);
        let samples = samples
            .into_iter()
            .map(|(pt, residual)| SampleResidual {
                p: pt.p.into(),
                lambda: pt.lambda.into(),
                mu: pt.mu.into(),
                residual,
            })
            .collect();
        Self {
            model: model.to_string(),
            check: check.to_string(),
            max_relative,
            tolerance,
            passed: !errored && max_relative < tolerance,
            detected_scalar: detected_scalar.map(Into::into),
            samples,
        }
    }
}

/// Outcome of one check at one sample.
#[derive(Clone, Copy, Debug)]
pub struct SampleOutcome {
    pub residual: Residual,
    pub scalar: Option<C64>,
}

impl From<Residual> for SampleOutcome {
    fn from(residual: Residual) -> Self {
        Self { residual, scalar: None }
    }
}

/// `X₁₂(λ) X₂₁(λ⁻¹)`.
fn unitarity_product(model: &dyn RModel, x: &CMatrix, x_inv_arg: &CMatrix) -> CMatrix {
    x * model.algebra().flip21(x_inv_arg)
}

/// Proportionality residual of `X₁₂(λ)X₂₁(λ⁻¹)` for both families.
fn unit_residual(model: &dyn RModel, pair_l: (CMatrix, CMatrix), pair_inv: (CMatrix, CMatrix)) -> SampleOutcome {
    let (ca, ra) = scalar_fit(&unitarity_product(model, &pair_l.0, &pair_inv.0));
    let (_, rd) = scalar_fit(&unitarity_product(model, &pair_l.1, &pair_inv.1));
    SampleOutcome { residual: ra.worst(rd), scalar: Some(ca) }
}

fn qybe(model: &dyn RModel, f: impl Fn(C64) -> Result<CMatrix>, pt: &ParamPoint) -> Result<Residual> {
    let alg = model.algebra();
    let (x12, x13, x23) = (f(pt.ratio())?, f(pt.lambda)?, f(pt.mu)?);
    Ok(relation(
        alg,
        &[(&x12, Pair::P12), (&x13, Pair::P13), (&x23, Pair::P23)],
        &[(&x23, Pair::P23), (&x13, Pair::P13), (&x12, Pair::P12)],
    ))
}

fn constant_qybe(model: &dyn RModel, x: &CMatrix) -> Residual {
    relation(
        model.algebra(),
        &[(x, Pair::P12), (x, Pair::P13), (x, Pair::P23)],
        &[(x, Pair::P23), (x, Pair::P13), (x, Pair::P12)],
    )
}

fn mixed(model: &dyn RModel, x: &CMatrix, y: &CMatrix) -> Residual {
    relation(
        model.algebra(),
        &[(x, Pair::P12), (y, Pair::P13), (y, Pair::P23)],
        &[(y, Pair::P23), (y, Pair::P13), (x, Pair::P12)],
    )
}

/// Evaluates one identity at one sample.
pub fn evaluate(model: &dyn RModel, check: CheckId, pt: &ParamPoint) -> Result<SampleOutcome> {
    let alg = model.algebra();
    let (p, l) = (pt.p, pt.lambda);
    let one = re(1.0);
    let a = |x: C64| model.a_q(p, x);
    let d = |x: C64| model.d_q(p, x);
    Ok(match check {
        CheckId::UnitAd => {
            let family = |x: C64| -> Result<(CMatrix, CMatrix)> {
                match (model.k_matrix(p, x), model.hatted(p, x)) {
                    // K is not scalar, so the rescaled family carries the statement
                    (Some(_), Some(h)) => h,
                    _ => Ok((a(x)?, d(x)?)),
                }
            };
            unit_residual(model, family(l)?, family(one / l)?)
        }
        CheckId::BcTranspose => Residual::between(&model.c_q(p), &alg.flip21(&model.b_q(p))).into(),
        CheckId::QybeA => qybe(model, a, pt)?.into(),
        CheckId::QybeD => qybe(model, d, pt)?.into(),
        CheckId::Acc => mixed(model, &a(l)?, &model.c_q(p)).into(),
        CheckId::Dbb => mixed(model, &d(l)?, &model.b_q(p)).into(),
        CheckId::QybeB => constant_qybe(model, &model.b_q(p)).into(),
        CheckId::QybeC => constant_qybe(model, &model.c_q(p)).into(),
        CheckId::AbcdFactor => Residual::between(&(a(l)? * model.b_q(p)), &(model.c_q(p) * d(l)?)).into(),
        CheckId::GammaLocal => {
            let (g, _) = gamma_pair(model, p);
            let (g1, g2) = legs(&g);
            let lhs = &g2 * &model.b_q(p) * &g1 * a(l)?;
            let rhs = d(l)? * &g1 * model.c_q(p) * &g2;
            Residual::between(&lhs, &rhs).into()
        }
        CheckId::GammaTilde => {
            let (_, gt) = gamma_pair(model, p);
            let (t1, t2) = legs(&gt);
            let [at, bt, ct, dt] = tilde_family(model, p, l)?;
            Residual::between(&(at * &t1 * bt * &t2), &(&t2 * ct * &t1 * dt)).into()
        }
        CheckId::LimitsSmall => {
            let x = l * LIMIT_SMALL;
            Residual::between(&a(x)?, &model.b_q(p).inverse()?)
                .worst(Residual::between(&d(x)?, &model.c_q(p).inverse()?))
                .into()
        }
        CheckId::LimitsLarge => {
            let x = l * LIMIT_LARGE;
            Residual::between(&a(x)?, &model.c_q(p)).worst(Residual::between(&d(x)?, &model.b_q(p))).into()
        }
        CheckId::ClassicalLimit => {
            let cl = ClassicalRData::build(model);
            classical_limit_slope(|q| model.a_q(q, l), &cl.a(l))?
                .worst(classical_limit_slope(|q| model.d_q(q, l), &cl.d(l))?)
                .worst(classical_limit_slope(|q| Ok(model.b_q(q)), &cl.b)?)
                .worst(classical_limit_slope(|q| Ok(model.c_q(q)), &cl.c)?)
                .into()
        }
        CheckId::RzRelations => rz_residual(model, pt)?.into(),
        CheckId::ScalarFactor => scalar_factor(model, pt)?,
        CheckId::DaSwap => Residual::between(&d(l)?, &alg.flip21(&a(l)?)).into(),
        CheckId::HatUnitarity => {
            let hat = |x: C64| {
                model.hatted(p, x).ok_or_else(|| Error::WrongModel {
                    expected: "csg or su3so3".into(),
                    got: model.id().to_string(),
                })?
            };
            let (ah, dh) = hat(l)?;
            let (ah_inv, dh_inv) = hat(one / l)?;
            let id = alg.identity2();
            let ra = Residual::between(&unitarity_product(model, &ah, &ah_inv), &id);
            let rd = Residual::between(&unitarity_product(model, &dh, &dh_inv), &id);
            SampleOutcome { residual: ra.worst(rd), scalar: Some(one) }
        }
    })
}

fn rz_residual(model: &dyn RModel, pt: &ParamPoint) -> Result<Residual> {
    let alg = model.algebra();
    let (p, l, m) = (pt.p, pt.lambda, pt.mu);
    let (r_l, z) = rz_pair(model, p, l)?;
    let (r_inv, _) = rz_pair(model, p, re(1.0) / l)?;
    let (r_lm, _) = rz_pair(model, p, pt.ratio())?;
    let (r_m, _) = rz_pair(model, p, m)?;
    // R = D̂ for CSG factorizes the rescaled Â
    let a_direct = match model.hatted(p, l) {
        Some(h) if model.id() == ModelId::Csg => h?.0,
        _ => model.a_q(p, l)?,
    };
    let factorized = Residual::between(&a_from_rz(model, &r_l, &z)?, &a_direct);
    let (_, unitarity) = scalar_fit(&unitarity_product(model, &r_l, &r_inv));
    let rrr = relation(
        alg,
        &[(&r_lm, Pair::P12), (&r_l, Pair::P13), (&r_m, Pair::P23)],
        &[(&r_m, Pair::P23), (&r_l, Pair::P13), (&r_lm, Pair::P12)],
    );
    let zzz = constant_qybe(model, &z);
    let rzz = mixed(model, &r_l, &z);
    let zzr = relation(
        alg,
        &[(&z, Pair::P12), (&z, Pair::P13), (&r_l, Pair::P23)],
        &[(&r_l, Pair::P23), (&z, Pair::P13), (&z, Pair::P12)],
    );
    Ok(factorized.worst(unitarity).worst(rrr).worst(zzz).worst(rzz).worst(zzr))
}

fn scalar_factor(model: &dyn RModel, pt: &ParamPoint) -> Result<SampleOutcome> {
    let (p, l) = (pt.p, pt.lambda);
    let one = re(1.0);
    let prod_a = unitarity_product(model, &model.a_q(p, l)?, &model.a_q(p, one / l)?);
    let prod_d = unitarity_product(model, &model.d_q(p, l)?, &model.d_q(p, one / l)?);
    let n = prod_a.rows();
    let (prediction, scalar) = if let Some(k) = model.k_matrix(p, l) {
        (k?, None)
    } else if let Some(s) = model.unitarity_scalar(p, l) {
        (CMatrix::identity(n).scale(s), Some(s))
    } else if model.id() == ModelId::Su3So3 {
        // 𝒜 = f Â with Â unitary
        let s = crate::models::su3so3::Su3So3::rescaling(p, l) * crate::models::su3so3::Su3So3::rescaling(p, one / l);
        (CMatrix::identity(n).scale(s), Some(s))
    } else {
        return Err(Error::WrongModel { expected: "model with a stated scalar".into(), got: model.id().to_string() });
    };
    let residual = Residual::between(&prod_a, &prediction).worst(Residual::between(&prod_d, &prediction));
    Ok(SampleOutcome { residual, scalar })
}

/// Runs one check over the samples; `None` when the identity is not a property of the model.
pub fn run_check(model: &dyn RModel, check: CheckId, samples: &[ParamPoint], tol: &Tolerances) -> Option<CheckReport> {
    if !check.applies_to(model) {
        return None;
    }
    let mut detected = None;
    let mut rows = Vec::with_capacity(samples.len());
    for (i, pt) in samples.iter().enumerate() {
        let outcome = evaluate(model, check, pt).ok();
        if i == 0 {
            detected = outcome.and_then(|o| o.scalar);
        }
        rows.push((*pt, outcome.map(|o| o.residual.relative)));
    }
    Some(CheckReport::from_samples(model.id().name(), check.name(), tol.for_kind(check.kind()), detected, rows))
}
