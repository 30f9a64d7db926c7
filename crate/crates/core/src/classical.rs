//! Classical r-matrices `r(λ)`, `s`, `α`, `a(λ)`, `b`, `c`, `d(λ)` and their
//! defining identities.

use serde::Serialize;

use crate::models::{re, RModel};
use crate::param::ParamPoint;
use crate::tensor::{CMatrix, Residual, C64};
use crate::triple;

/// Classical data of one model, built from the Casimir components.
#[derive(Clone, Debug)]
pub struct ClassicalRData {
    pub order: usize,
    /// `C⁽ᵏ,ⁿ⁻ᵏ⁾` for `k = 0..n`.
    pub components: Vec<CMatrix>,
    pub s: CMatrix,
    pub alpha: CMatrix,
    pub b: CMatrix,
    pub c: CMatrix,
}

impl ClassicalRData {
    pub fn build(model: &dyn RModel) -> Self {
        let alg = model.algebra();
        let components = alg.casimir_components();
        let s = components[0].clone();
        let alpha = model.alpha();
        Self { order: alg.order, b: -(&s) - &alpha, c: -(&s) + &alpha, s, alpha, components }
    }

    /// `r(λ) = (1+λⁿ)/(1−λⁿ) C⁽⁰⁰⁾ + Σ_{k≥1} 2λᵏ/(1−λⁿ) C⁽ᵏ,ⁿ⁻ᵏ⁾`.
    pub fn r(&self, lambda: C64) -> CMatrix {
        let one = re(1.0);
        let ln = lambda.powi(self.order as i32);
        let den = one - ln;
        let mut out = &self.components[0] * ((one + ln) / den);
        for (k, comp) in self.components.iter().enumerate().skip(1) {
            out += comp * (re(2.0) * lambda.powi(k as i32) / den);
        }
        out
    }

    pub fn a(&self, lambda: C64) -> CMatrix {
        self.r(lambda) + &self.alpha
    }

    pub fn d(&self, lambda: C64) -> CMatrix {
        self.r(lambda) - &self.alpha
    }
}

/// Identity families of the classical suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassicalCheck {
    /// `a₁₂(λ) = −a₂₁(λ⁻¹)`, `d₁₂(λ) = −d₂₁(λ⁻¹)`, `b₁₂ = c₂₁`, `α₁₂ = −α₂₁`.
    Antisymmetry,
    /// The four Jacobi conditions on `a`, `d`, `(a,c)`, `(d,b)`.
    Jacobi,
    /// `b` and `c` solve the CYBE.
    Cybe,
    /// `a(λ) + b = c + d(λ)`.
    Integrability,
    /// `a → −b`, `d → −c` as `λ → 0`; `r → s`.
    LimitSmall,
    /// `a → c`, `d → b` as `λ → ∞`; `r → −s`.
    LimitLarge,
    /// Printed closed forms of `C⁽⁰⁰⁾`, `b`, `c`, `a(λ)`, `d(λ)`.
    PrintedForms,
}

impl ClassicalCheck {
    pub const ALL: [ClassicalCheck; 7] = [
        ClassicalCheck::Antisymmetry,
        ClassicalCheck::Jacobi,
        ClassicalCheck::Cybe,
        ClassicalCheck::Integrability,
        ClassicalCheck::LimitSmall,
        ClassicalCheck::LimitLarge,
        ClassicalCheck::PrintedForms,
    ];

    pub fn is_limit(self) -> bool {
        matches!(self, ClassicalCheck::LimitSmall | ClassicalCheck::LimitLarge)
    }
}

/// Small and large spectral parameters used for the limit checks.
pub const LIMIT_SMALL: f64 = 1e-6;
pub const LIMIT_LARGE: f64 = 1e6;

/// Worst residual of one classical identity family at one sample.
pub fn evaluate(model: &dyn RModel, data: &ClassicalRData, check: ClassicalCheck, pt: &ParamPoint) -> Residual {
    let alg = model.algebra();
    let (l, m) = (pt.lambda, pt.mu);
    let one = re(1.0);
    let neg_flip = |x: &CMatrix| -alg.flip21(x);
    match check {
        ClassicalCheck::Antisymmetry => Residual::between(&data.a(l), &neg_flip(&data.a(one / l)))
            .worst(Residual::between(&data.d(l), &neg_flip(&data.d(one / l))))
            .worst(Residual::between(&data.b, &alg.flip21(&data.c)))
            .worst(Residual::between(&data.alpha, &neg_flip(&data.alpha))),
        ClassicalCheck::Jacobi => {
            let (a_lm, a_l, a_m) = (data.a(l / m), data.a(l), data.a(m));
            let (d_lm, d_l, d_m) = (data.d(l / m), data.d(l), data.d(m));
            triple::cybe(alg, &a_lm, &a_l, &a_m)
                .worst(triple::cybe(alg, &d_lm, &d_l, &d_m))
                .worst(triple::cybe(alg, &a_l, &data.c, &data.c))
                .worst(triple::cybe(alg, &d_l, &data.b, &data.b))
        }
        ClassicalCheck::Cybe => {
            triple::cybe(alg, &data.b, &data.b, &data.b).worst(triple::cybe(alg, &data.c, &data.c, &data.c))
        }
        ClassicalCheck::Integrability => Residual::between(&(data.a(l) + &data.b), &(data.d(l) + &data.c)),
        ClassicalCheck::LimitSmall => {
            let x = l * LIMIT_SMALL;
            Residual::between(&data.a(x), &-&data.b)
                .worst(Residual::between(&data.d(x), &-&data.c))
                .worst(Residual::between(&data.r(x), &data.s))
        }
        ClassicalCheck::LimitLarge => {
            let x = l * LIMIT_LARGE;
            Residual::between(&data.a(x), &data.c)
                .worst(Residual::between(&data.d(x), &data.b))
                .worst(Residual::between(&data.r(x), &-&data.s))
        }
        ClassicalCheck::PrintedForms => Residual::between(&data.s, &model.c00_printed())
            .worst(Residual::between(&data.b, &model.b_printed()))
            .worst(Residual::between(&data.c, &model.c_printed()))
            .worst(Residual::between(&data.a(l), &model.a_printed(l)))
            .worst(Residual::between(&data.d(l), &model.d_printed(l))),
    }
}

/// Outcome of one classical identity family over a sample set.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub check: ClassicalCheck,
    pub max_relative: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Runs every classical identity family over the samples.
pub fn check_classical(
    model: &dyn RModel,
    samples: &[ParamPoint],
    tol_exact: f64,
    tol_limit: f64,
) -> Vec<ClassicalReport> {
    let data = ClassicalRData::build(model);
    ClassicalCheck::ALL
        .iter()
        .map(|&check| {
            let tolerance = if check.is_limit() { tol_limit } else { tol_exact };
            let max_relative = samples.iter().map(|pt| evaluate(model, &data, check, pt).relative).fold(0.0, max_nan);
            ClassicalReport { check, max_relative, tolerance, passed: max_relative < tolerance }
        })
        .collect()
}

/// Maximum that propagates NaN, so a non-finite residual can never pass.
pub(crate) fn max_nan(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
