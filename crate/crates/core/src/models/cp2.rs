//! `CP²` model: `sl(3)` fundamental with the inner involution `x ↦ g x g`,
//! `g = diag(1, 1, −1)`.

use super::{e, min_abs, re, Algebra, Automorphism, ModelId, RModel};
use crate::error::{Error, Result};
use crate::param::{q_exp_diag, qpow, ParamPoint};
use crate::tensor::{kron, CMatrix, ParityVector, C64};

pub struct Cp2 {
    alg: Algebra,
    cartan: CMatrix,
    e1f1: CMatrix,
    f1e1: CMatrix,
    c00: CMatrix,
    c11: CMatrix,
    alpha: CMatrix,
}

impl Default for Cp2 {
    fn default() -> Self {
        Self::new()
    }
}

/// The `sl(3)` basis shared with the `SU(3)/SO(3)` model.
pub(crate) struct Sl3 {
    pub h1: CMatrix,
    pub h2: CMatrix,
    pub e1: CMatrix,
    pub f1: CMatrix,
    pub e2: CMatrix,
    pub f2: CMatrix,
    pub e3: CMatrix,
    pub f3: CMatrix,
}

impl Sl3 {
    pub fn new() -> Self {
        let e1 = e(3, 1, 2);
        let f1 = e(3, 2, 1);
        let e2 = e(3, 2, 3);
        let f2 = e(3, 3, 2);
        Self {
            h1: e(3, 1, 1) - e(3, 2, 2),
            h2: e(3, 2, 2) - e(3, 3, 3),
            e3: e1.commutator(&e2),
            f3: f2.commutator(&f1),
            e1,
            f1,
            e2,
            f2,
        }
    }

    /// Tensor Casimir of `sl(3)` with the printed coefficients.
    pub fn casimir(&self) -> CMatrix {
        let sym = |x: &CMatrix, y: &CMatrix| kron(x, y) + kron(y, x);
        sym(&self.h1, &self.h2) * (1.0 / 6.0)
            + (kron(&self.h1, &self.h1) + kron(&self.h2, &self.h2)) * (1.0 / 3.0)
            + (sym(&self.e1, &self.f1) + sym(&self.e2, &self.f2) + sym(&self.e3, &self.f3)) * 0.5
    }

    pub fn named(&self) -> Vec<(String, CMatrix)> {
        [
            ("H1", &self.h1),
            ("H2", &self.h2),
            ("E1", &self.e1),
            ("F1", &self.f1),
            ("E2", &self.e2),
            ("F2", &self.f2),
            ("E3", &self.e3),
            ("F3", &self.f3),
        ]
        .into_iter()
        .map(|(n, m)| (n.to_string(), m.clone()))
        .collect()
    }
}

impl Cp2 {
    pub fn new() -> Self {
        let s = Sl3::new();
        let h2p = &s.h2 + &(&s.h1 * 0.5);
        let g = CMatrix::from_real_diag(&[1.0, 1.0, -1.0]);
        let mut generators = s.named();
        generators.push(("H2'".to_string(), h2p.clone()));
        let alg = Algebra {
            id: ModelId::Cp2,
            dim: 3,
            order: 2,
            parity: ParityVector::even(3),
            graded: false,
            generators,
            f0_basis: vec![s.h1.clone(), h2p.clone(), s.e1.clone(), s.f1.clone()],
            weight: CMatrix::identity(3),
            sigma: Automorphism::Inner { g: g.clone(), g_inv: g },
            casimir: s.casimir(),
        };
        let sym = |x: &CMatrix, y: &CMatrix| kron(x, y) + kron(y, x);
        let c00 = kron(&h2p, &h2p) * (1.0 / 3.0) + kron(&s.h1, &s.h1) * 0.25 + sym(&s.e1, &s.f1) * 0.5;
        let c11 = (sym(&s.e2, &s.f2) + sym(&s.e3, &s.f3)) * 0.5;
        Self {
            cartan: -(kron(&h2p, &h2p) * (1.0 / 3.0)) - kron(&s.h1, &s.h1) * 0.25,
            e1f1: kron(&s.e1, &s.f1),
            f1e1: kron(&s.f1, &s.e1),
            alpha: (kron(&s.e1, &s.f1) - kron(&s.f1, &s.e1)) * 0.5,
            c00,
            c11,
            alg,
        }
    }

    pub fn c11_printed(&self) -> &CMatrix {
        &self.c11
    }

    fn ad_q(&self, first_inv: CMatrix, second: CMatrix, p: C64, lambda: C64) -> CMatrix {
        let q3 = qpow(p, 4);
        let l2 = lambda * lambda;
        let den = q3 - l2;
        first_inv * (q3 / den) - second * (l2 / den)
            + &self.c11 * (re(2.0) * qpow(p, -4) * (qpow(p, 12) - re(1.0)) * lambda / den)
    }

    /// `Â(λ,μ) = g₁(λ)g₂(μ) 𝒜(λ/μ) g₁(λ)⁻¹ g₂(μ)⁻¹` with `g(λ) = diag(1,1,λ)`.
    pub fn untwist(&self, pt: &ParamPoint) -> Result<CMatrix> {
        untwisted(self, pt)
    }
}

/// Undoes the inner twist of the CP² `𝒜`; fails for any other model.
pub fn untwisted(model: &dyn RModel, pt: &ParamPoint) -> Result<CMatrix> {
    if model.id() != ModelId::Cp2 {
        return Err(Error::WrongModel { expected: "cp2".into(), got: model.id().to_string() });
    }
    let g = |l: C64| CMatrix::from_diag(&[re(1.0), re(1.0), l]);
    let conj = kron(&g(pt.lambda), &g(pt.mu));
    let conj_inv = kron(&g(re(1.0) / pt.lambda), &g(re(1.0) / pt.mu));
    Ok(conj * model.a_q(pt.p, pt.ratio())? * conj_inv)
}

/// Classical `a`, `d` of the printed form shared by `CP²` and `SU(3)/SO(3)`.
pub(crate) fn ad_classical(b: &CMatrix, c: &CMatrix, c11: &CMatrix, lambda: C64) -> CMatrix {
    let one = re(1.0);
    let l2 = lambda * lambda;
    let den = one - l2;
    -(b * (one / den)) - c * (l2 / den) + c11 * (re(2.0) * lambda / den)
}

impl RModel for Cp2 {
    fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn alpha(&self) -> CMatrix {
        self.alpha.clone()
    }

    fn c00_printed(&self) -> CMatrix {
        self.c00.clone()
    }

    fn b_printed(&self) -> CMatrix {
        &self.cartan - &self.e1f1
    }

    fn c_printed(&self) -> CMatrix {
        &self.cartan - &self.f1e1
    }

    fn a_printed(&self, lambda: C64) -> CMatrix {
        ad_classical(&self.b_printed(), &self.c_printed(), &self.c11, lambda)
    }

    fn d_printed(&self, lambda: C64) -> CMatrix {
        ad_classical(&self.c_printed(), &self.b_printed(), &self.c11, lambda)
    }

    fn b_q(&self, p: C64) -> CMatrix {
        q_exp_diag(&self.cartan, 1.0, p) + &self.e1f1 * (qpow(p, -4) * (re(1.0) - qpow(p, 12)))
    }

    fn c_q(&self, p: C64) -> CMatrix {
        q_exp_diag(&self.cartan, 1.0, p) + &self.f1e1 * (qpow(p, -4) * (re(1.0) - qpow(p, 12)))
    }

    fn a_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        Ok(self.ad_q(self.b_q(p).inverse()?, self.c_q(p), p, lambda))
    }

    fn d_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        Ok(self.ad_q(self.c_q(p).inverse()?, self.b_q(p), p, lambda))
    }

    fn unitarity_scalar(&self, p: C64, lambda: C64) -> Option<C64> {
        let q = qpow(p, 12);
        let l2 = lambda * lambda;
        Some((q - l2) * (re(1.0) / q - l2) / ((qpow(p, 4) - l2) * (qpow(p, -4) - l2)))
    }

    fn gamma(&self, _p: C64) -> Vec<C64> {
        vec![re(1.0); 3]
    }

    fn gamma_tilde(&self, p: C64) -> Vec<C64> {
        vec![qpow(p, 12), re(1.0), re(1.0)]
    }

    fn d_is_a21(&self) -> bool {
        true
    }

    fn pole_distance(&self, p: C64, lambda: C64) -> f64 {
        let one = re(1.0);
        let l2 = lambda * lambda;
        min_abs(&[one - l2, qpow(p, 4) - l2, qpow(p, -4) - l2])
    }
}
