//! Derived quantum objects: `γ`, `γ̃`, tilde matrices, the `R`/`Z`
//! factorization and classical-limit slopes.

use crate::error::{Error, Result};
use crate::models::{re, ModelId, RModel};
use crate::tensor::{kron, CMatrix, Leg, Residual, C64};

/// `(γ, γ̃)` as diagonal matrices.
pub fn gamma_pair(model: &dyn RModel, p: C64) -> (CMatrix, CMatrix) {
    (CMatrix::from_diag(&model.gamma(p)), CMatrix::from_diag(&model.gamma_tilde(p)))
}

/// `X ⊗ 1` and `1 ⊗ X` for a diagonal one-leg matrix.
pub fn legs(x: &CMatrix) -> (CMatrix, CMatrix) {
    let id = CMatrix::identity(x.rows());
    (kron(x, &id), kron(&id, x))
}

/// Condition bound above which tilde inverses are treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

fn checked_inverse(x: &CMatrix) -> Result<CMatrix> {
    let (inv, cond) = x.inverse_with_condition()?;
    if cond > MAX_CONDITION {
        return Err(Error::Singular(cond));
    }
    Ok(inv)
}

/// `Ã = (A^{t₁t₂})⁻¹`, `B̃ = [(B^{t₁})⁻¹]^{t₂}`, `C̃ = [(C^{t₂})⁻¹]^{t₁}`, `D̃ = (D^{t₁t₂})⁻¹`.
pub fn tilde_family(model: &dyn RModel, p: C64, lambda: C64) -> Result<[CMatrix; 4]> {
    let alg = model.algebra();
    let t = |x: &CMatrix, leg| alg.ptrans(x, leg);
    let full = |x: &CMatrix| t(&t(x, Leg::First), Leg::Second);
    let a = model.a_q(p, lambda)?;
    let d = model.d_q(p, lambda)?;
    Ok([
        checked_inverse(&full(&a))?,
        t(&checked_inverse(&t(&model.b_q(p), Leg::First))?, Leg::Second),
        t(&checked_inverse(&t(&model.c_q(p), Leg::Second))?, Leg::First),
        checked_inverse(&full(&d))?,
    ])
}

/// The pair `(R, Z)` with `Z = ℬ` and `R = 𝒟`, using the rescaled `D̂` for CSG.
pub fn rz_pair(model: &dyn RModel, p: C64, lambda: C64) -> Result<(CMatrix, CMatrix)> {
    let r = if model.id() == ModelId::Csg {
        model.hatted(p, lambda).expect("CSG defines a rescaled family")?.1
    } else {
        model.d_q(p, lambda)?
    };
    Ok((r, model.b_q(p)))
}

/// `𝒜 = Z₂₁ R Z₁₂⁻¹`.
pub fn a_from_rz(model: &dyn RModel, r: &CMatrix, z: &CMatrix) -> Result<CMatrix> {
    let alg = model.algebra();
    Ok(alg.flip21(z) * r * z.inverse()?)
}

/// Step sizes for the Richardson-extrapolated classical-limit slope.
pub const HBAR_STEPS: (f64, f64) = (1e-4, 5e-5);

/// `p = e^{iħ/12}`, so that `q = e^{iħ}`.
pub fn physical_p(hbar: f64) -> C64 {
    C64::from_polar(1.0, hbar / 12.0)
}

/// Richardson-extrapolated `(F(e^{iħ}) − 1)/(iħ)` compared with `target`.
pub fn classical_limit_slope(f: impl Fn(C64) -> Result<CMatrix>, target: &CMatrix) -> Result<Residual> {
    let (h1, h2) = HBAR_STEPS;
    let slope = |h: f64| -> Result<CMatrix> {
        let fx = f(physical_p(h))?;
        let id = CMatrix::identity(fx.rows());
        Ok((fx - id) * (re(1.0) / C64::new(0.0, h)))
    };
    let extrapolated = slope(h2)? * 2.0 - slope(h1)?;
    Ok(Residual::between(&extrapolated, target))
}

/// `‖K(e^{iħ},λ) − 1‖ / ‖K(e^{iħ/2},λ) − 1‖`; close to 4 when `K = 1 + O(ħ²)`.
pub fn k_defect_ratio(model: &dyn RModel, lambda: C64, hbar: f64) -> Result<f64> {
    let defect = |h: f64| -> Result<f64> {
        let k = model
            .k_matrix(physical_p(h), lambda)
            .ok_or_else(|| Error::WrongModel { expected: "csg".into(), got: model.id().to_string() })??;
        Ok((k - CMatrix::identity(model.dim() * model.dim())).norm())
    };
    Ok(defect(hbar)? / defect(hbar / 2.0)?)
}

/// Least-squares scalar `tr(X)/n` and the relative distance of `X` from it.
pub fn detect_scalar(x: &CMatrix, tol: f64) -> Result<C64> {
    let (c, res) = scalar_fit(x);
    if res.relative < tol {
        Ok(c)
    } else {
        Err(Error::NotProportional(res.relative))
    }
}

pub fn scalar_fit(x: &CMatrix) -> (C64, Residual) {
    let n = x.rows();
    let c = x.trace() / n as f64;
    (c, Residual::between(x, &CMatrix::identity(n).scale(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_detection() {
        let x = CMatrix::identity(4).scale_re(3.7);
        assert!((detect_scalar(&x, 1e-12).unwrap() - re(3.7)).norm() < 1e-14);
        assert!(matches!(detect_scalar(&CMatrix::unit(2, 0, 1), 1e-6), Err(Error::NotProportional(_))));
    }

    #[test]
    fn constant_family_has_zero_slope() {
        let r = classical_limit_slope(|_| Ok(CMatrix::identity(3)), &CMatrix::zeros(3, 3)).unwrap();
        assert_eq!(r.absolute, 0.0);
    }
}
