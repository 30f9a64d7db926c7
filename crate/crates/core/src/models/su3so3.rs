//! `SU(3)/SO(3)` model: `sl(3)` fundamental with the outer involution
//! `σ(x) = −η xᵗ η⁻¹`.

use super::cp2::{ad_classical, Sl3};
use super::{e, min_abs, re, Algebra, Automorphism, ModelId, RModel};
use crate::error::Result;
use crate::param::{q_exp_diag, qpow};
use crate::tensor::{kron, CMatrix, ParityVector, C64};

pub struct Su3So3 {
    alg: Algebra,
    h0h0: CMatrix,
    e0f0: CMatrix,
    f0e0: CMatrix,
    e0sq_f0sq: CMatrix,
    f0sq_e0sq: CMatrix,
    c00: CMatrix,
    c11: CMatrix,
    alpha: CMatrix,
}

impl Default for Su3So3 {
    fn default() -> Self {
        Self::new()
    }
}

fn eta_with_corner(corner: C64) -> CMatrix {
    let mut m = CMatrix::zeros(3, 3);
    m[(0, 2)] = corner;
    m[(1, 1)] = re(-1.0);
    m[(2, 0)] = re(1.0);
    m
}

impl Su3So3 {
    pub fn new() -> Self {
        let s = Sl3::new();
        let h0 = &s.h1 + &s.h2;
        let e0 = &s.e1 + &s.e2;
        let f0 = &s.f1 + &s.f2;
        let h1 = &s.h1 - &s.h2;
        let e1 = &s.e1 - &s.e2;
        let f1 = &s.f1 - &s.f2;
        let eta = eta_with_corner(re(1.0));
        let eta_inv = eta.inverse().expect("η is invertible");
        let mut generators = s.named();
        for (n, m) in [("h0", &h0), ("e0", &e0), ("f0", &f0), ("h1", &h1), ("e1", &e1), ("f1", &f1)] {
            generators.push((n.to_string(), m.clone()));
        }
        let alg = Algebra {
            id: ModelId::Su3So3,
            dim: 3,
            order: 2,
            parity: ParityVector::even(3),
            graded: false,
            generators,
            f0_basis: vec![h0.clone(), e0.clone(), f0.clone()],
            weight: CMatrix::identity(3),
            sigma: Automorphism::NegTranspose { eta, eta_inv },
            casimir: s.casimir(),
        };
        let sym = |x: &CMatrix, y: &CMatrix| kron(x, y) + kron(y, x);
        let c00 = (kron(&h0, &h0) + sym(&e0, &f0)) * 0.25;
        let c11 = kron(&h1, &h1) * (1.0 / 12.0) + sym(&e1, &f1) * 0.25 + sym(&s.e3, &s.f3) * 0.5;
        Self {
            h0h0: kron(&h0, &h0),
            e0f0: kron(&e0, &f0),
            f0e0: kron(&f0, &e0),
            e0sq_f0sq: kron(&(&e0 * &e0), &(&f0 * &f0)),
            f0sq_e0sq: kron(&(&f0 * &f0), &(&e0 * &e0)),
            alpha: (kron(&e0, &f0) - kron(&f0, &e0)) * 0.25,
            c00,
            c11,
            alg,
        }
    }

    pub fn c11_printed(&self) -> &CMatrix {
        &self.c11
    }

    /// `σ_q(x) = −η_q xᵗ η_q⁻¹` with `q^{1/4}` in the corner of `η_q`.
    pub fn sigma_q(&self, p: C64, x: &CMatrix) -> CMatrix {
        let eta = eta_with_corner(qpow(p, 3));
        let eta_inv = eta.inverse().expect("η_q is invertible");
        -(&eta * x.transpose() * eta_inv)
    }

    /// `Σ E_ij ⊗ σ_q(E_ji)` (`first = true`) or `Σ σ_q(E_ij) ⊗ E_ji`.
    fn sigma_sum(&self, p: C64, first: bool) -> CMatrix {
        let mut out = CMatrix::zeros(9, 9);
        for i in 1..=3 {
            for j in 1..=3 {
                out += if first {
                    kron(&e(3, i, j), &self.sigma_q(p, &e(3, j, i)))
                } else {
                    kron(&self.sigma_q(p, &e(3, i, j)), &e(3, j, i))
                };
            }
        }
        out
    }

    fn bc_q(&self, p: C64, x: &CMatrix, xsq: &CMatrix) -> CMatrix {
        let q4 = qpow(p, 3);
        let one = re(1.0);
        let inner = CMatrix::identity(9) - x * (q4 - one / q4) + xsq * ((one - one / q4) * (q4 - one / q4));
        q_exp_diag(&self.h0h0, -0.25, p) * inner
    }

    fn hat(&self, first_inv: CMatrix, second: CMatrix, sum: CMatrix, p: C64, lambda: C64) -> CMatrix {
        let (q4, q2, q34) = (qpow(p, 3), qpow(p, 6), qpow(p, 9));
        let one = re(1.0);
        first_inv * (q4 / (q2 - lambda))
            - second * (q4 * lambda / (q2 - lambda))
            - sum * (lambda * (q2 - one) * (one + q34) / ((q2 - lambda) * (lambda + q34)))
    }

    /// Rescaling `f(q,λ)` with `𝒜 = f Â`, `𝒟 = f D̂`.
    pub fn rescaling(p: C64, lambda: C64) -> C64 {
        (qpow(p, 6) - lambda) * (qpow(p, 9) + lambda) / (qpow(p, 3) * (qpow(p, 2) - lambda) * (qpow(p, 7) + lambda))
    }

    pub fn a_hat(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        Ok(self.hat(self.b_q(p).inverse()?, self.c_q(p), self.sigma_sum(p, true), p, lambda))
    }

    pub fn d_hat(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        Ok(self.hat(self.c_q(p).inverse()?, self.b_q(p), self.sigma_sum(p, false), p, lambda))
    }
}

impl RModel for Su3So3 {
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
        -(&self.h0h0 * 0.25) - &self.e0f0 * 0.5
    }

    fn c_printed(&self) -> CMatrix {
        -(&self.h0h0 * 0.25) - &self.f0e0 * 0.5
    }

    fn a_printed(&self, lambda: C64) -> CMatrix {
        ad_classical(&self.b_printed(), &self.c_printed(), &self.c11, lambda)
    }

    fn d_printed(&self, lambda: C64) -> CMatrix {
        ad_classical(&self.c_printed(), &self.b_printed(), &self.c11, lambda)
    }

    fn b_q(&self, p: C64) -> CMatrix {
        self.bc_q(p, &self.e0f0, &self.e0sq_f0sq)
    }

    fn c_q(&self, p: C64) -> CMatrix {
        self.bc_q(p, &self.f0e0, &self.f0sq_e0sq)
    }

    fn a_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        Ok(self.a_hat(p, lambda)? * Self::rescaling(p, lambda))
    }

    fn d_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        Ok(self.d_hat(p, lambda)? * Self::rescaling(p, lambda))
    }

    fn hatted(&self, p: C64, lambda: C64) -> Option<Result<(CMatrix, CMatrix)>> {
        Some(self.a_hat(p, lambda).and_then(|a| Ok((a, self.d_hat(p, lambda)?))))
    }

    fn gamma(&self, _p: C64) -> Vec<C64> {
        vec![re(1.0); 3]
    }

    fn gamma_tilde(&self, p: C64) -> Vec<C64> {
        vec![qpow(p, 3), re(1.0), qpow(p, -3)]
    }

    fn d_is_a21(&self) -> bool {
        true
    }

    fn pole_distance(&self, p: C64, lambda: C64) -> f64 {
        let one = re(1.0);
        min_abs(&[
            one - lambda * lambda,
            qpow(p, 6) - lambda,
            qpow(p, 9) + lambda,
            qpow(p, 2) - lambda,
            qpow(p, 7) + lambda,
        ])
    }
}
