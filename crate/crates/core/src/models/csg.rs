//! Complex sine-Gordon: `su(2) ⊕ su(2)` in the block-diagonal 4-dimensional
//! representation, with `σ` exchanging the two summands.

use super::{min_abs, re, Algebra, Automorphism, ModelId, RModel};
use crate::error::{Error, Result};
use crate::param::{q_exp_diag, qpow};
use crate::tensor::{kron, CMatrix, ParityVector, C64};

/// Principal square roots closer than this to the negative real axis are rejected.
const BRANCH_MARGIN: f64 = 1e-3;

pub struct Csg {
    alg: Algebra,
    h0h0: CMatrix,
    e0f0: CMatrix,
    f0e0: CMatrix,
    c00: CMatrix,
    c11: CMatrix,
    alpha: CMatrix,
    /// `1₁⊗1₁ + 1₂⊗1₂`, `1₁⊗1₂`, `1₂⊗1₁`.
    blocks: [CMatrix; 3],
}

fn block(x: &CMatrix, second: bool) -> CMatrix {
    let off = if second { 2 } else { 0 };
    CMatrix::from_fn(4, 4, |r, c| {
        if (r >= off && r < off + 2) && (c >= off && c < off + 2) {
            x[(r - off, c - off)]
        } else {
            re(0.0)
        }
    })
}

impl Default for Csg {
    fn default() -> Self {
        Self::new()
    }
}

impl Csg {
    pub fn new() -> Self {
        let h = CMatrix::from_real_diag(&[1.0, -1.0]);
        let ee = CMatrix::unit(2, 0, 1);
        let ff = CMatrix::unit(2, 1, 0);
        let (h1b, e1b, f1b) = (block(&h, false), block(&ee, false), block(&ff, false));
        let (h2b, e2b, f2b) = (block(&h, true), block(&ee, true), block(&ff, true));
        let h0 = &h1b + &h2b;
        let e0 = &e1b + &e2b;
        let f0 = &f1b + &f2b;
        let h1 = &h1b - &h2b;
        let e1 = &e1b - &e2b;
        let f1 = &f1b - &f2b;
        let one1 = block(&CMatrix::identity(2), false);
        let one2 = block(&CMatrix::identity(2), true);

        let casimir = kron(&h1b, &h1b) * 0.5
            + kron(&e1b, &f1b)
            + kron(&f1b, &e1b)
            + kron(&h2b, &h2b) * 0.5
            + kron(&e2b, &f2b)
            + kron(&f2b, &e2b);
        let c00 = kron(&h0, &h0) * 0.25 + kron(&e0, &f0) * 0.5 + kron(&f0, &e0) * 0.5;
        let c11 = kron(&h1, &h1) * 0.25 + kron(&e1, &f1) * 0.5 + kron(&f1, &e1) * 0.5;
        let alpha = (kron(&e0, &f0) - kron(&f0, &e0)) * 0.5;

        let generators = vec![
            ("H1".to_string(), h1b),
            ("E1".to_string(), e1b),
            ("F1".to_string(), f1b),
            ("H2".to_string(), h2b),
            ("E2".to_string(), e2b),
            ("F2".to_string(), f2b),
            ("h0".to_string(), h0.clone()),
            ("e0".to_string(), e0.clone()),
            ("f0".to_string(), f0.clone()),
            ("h1".to_string(), h1),
            ("e1".to_string(), e1),
            ("f1".to_string(), f1),
            ("1_1".to_string(), one1.clone()),
            ("1_2".to_string(), one2.clone()),
        ];
        let alg = Algebra {
            id: ModelId::Csg,
            dim: 4,
            order: 2,
            parity: ParityVector::even(4),
            graded: false,
            generators,
            f0_basis: vec![h0.clone(), e0.clone(), f0.clone()],
            weight: CMatrix::identity(4),
            sigma: Automorphism::BlockFlip,
            casimir,
        };
        Self {
            h0h0: kron(&h0, &h0),
            e0f0: kron(&e0, &f0),
            f0e0: kron(&f0, &e0),
            c00,
            c11,
            alpha,
            blocks: [kron(&one1, &one1) + kron(&one2, &one2), kron(&one1, &one2), kron(&one2, &one1)],
            alg,
        }
    }

    pub fn c11_printed(&self) -> &CMatrix {
        &self.c11
    }

    /// Classical diagonal `δ(λ)`.
    pub fn delta_classical(&self, lambda: C64) -> CMatrix {
        let one = re(1.0);
        &self.blocks[0] * (one / (one - lambda)) + (&self.blocks[1] + &self.blocks[2]) * (one / (one + lambda))
    }

    /// `δ(q,λ)`.
    pub fn delta(&self, p: C64, lambda: C64) -> CMatrix {
        let one = re(1.0);
        let sq = qpow(p, 6);
        let q = qpow(p, 12);
        &self.blocks[0] * (sq / (sq - lambda))
            + &self.blocks[1] * (q / (q + lambda))
            + &self.blocks[2] * (one / (one + lambda))
    }

    fn delta_denominators(p: C64, lambda: C64) -> [C64; 3] {
        [qpow(p, 6) - lambda, qpow(p, 12) + lambda, re(1.0) + lambda]
    }

    /// `K(q,λ) = δ(λ) δ(qλ) δ(q^{-1/2}λ)⁻¹ δ(q^{3/2}λ)⁻¹`, diagonal.
    pub fn k_diag(&self, p: C64, lambda: C64) -> Vec<C64> {
        let d = |l: C64| self.delta(p, l).diagonal();
        let (a, b, c, e) = (d(lambda), d(qpow(p, 12) * lambda), d(qpow(p, -6) * lambda), d(qpow(p, 18) * lambda));
        (0..16).map(|i| a[i] * b[i] / (c[i] * e[i])).collect()
    }

    /// Entrywise principal `K^{-1/2}`.
    pub fn k_inv_sqrt(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        let mut out = Vec::with_capacity(16);
        for k in self.k_diag(p, lambda) {
            let arg = k.arg();
            if std::f64::consts::PI - arg.abs() < BRANCH_MARGIN {
                return Err(Error::BranchCut(arg));
            }
            out.push(re(1.0) / k.sqrt());
        }
        Ok(CMatrix::from_diag(&out))
    }
}

impl RModel for Csg {
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
        -(&self.h0h0 * 0.25) - &self.e0f0
    }

    fn c_printed(&self) -> CMatrix {
        -(&self.h0h0 * 0.25) - &self.f0e0
    }

    fn a_printed(&self, lambda: C64) -> CMatrix {
        let dl = self.delta_classical(lambda);
        -(&dl * &self.b_printed()) + (self.alg.identity2() - &dl) * self.c_printed()
    }

    fn d_printed(&self, lambda: C64) -> CMatrix {
        let dl = self.delta_classical(lambda);
        -(&dl * &self.c_printed()) + (self.alg.identity2() - &dl) * self.b_printed()
    }

    fn b_q(&self, p: C64) -> CMatrix {
        q_exp_diag(&self.h0h0, -0.25, p) + &self.e0f0 * (qpow(p, -3) * (re(1.0) - qpow(p, 12)))
    }

    fn c_q(&self, p: C64) -> CMatrix {
        q_exp_diag(&self.h0h0, -0.25, p) + &self.f0e0 * (qpow(p, -3) * (re(1.0) - qpow(p, 12)))
    }

    fn a_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        let dl = self.delta(p, lambda);
        let b_inv = self.b_q(p).inverse()?;
        Ok(&dl * &b_inv + (self.alg.identity2() - &dl) * self.c_q(p))
    }

    fn d_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        let dl = self.delta(p, lambda);
        let c_inv = self.c_q(p).inverse()?;
        Ok(&dl * &c_inv + (self.alg.identity2() - &dl) * self.b_q(p))
    }

    fn hatted(&self, p: C64, lambda: C64) -> Option<Result<(CMatrix, CMatrix)>> {
        Some((|| {
            let s = self.k_inv_sqrt(p, lambda)?;
            Ok((&s * &self.a_q(p, lambda)?, &s * &self.d_q(p, lambda)?))
        })())
    }

    fn k_matrix(&self, p: C64, lambda: C64) -> Option<Result<CMatrix>> {
        Some(Ok(CMatrix::from_diag(&self.k_diag(p, lambda))))
    }

    fn gamma(&self, _p: C64) -> Vec<C64> {
        vec![re(1.0); 4]
    }

    fn gamma_tilde(&self, p: C64) -> Vec<C64> {
        let q = qpow(p, 12);
        vec![q, re(1.0), q, re(1.0)]
    }

    fn pole_distance(&self, p: C64, lambda: C64) -> f64 {
        let one = re(1.0);
        let mut zs = vec![one - lambda, one + lambda];
        for l in [lambda, qpow(p, 12) * lambda, qpow(p, -6) * lambda, qpow(p, 18) * lambda] {
            zs.extend(Self::delta_denominators(p, l));
        }
        min_abs(&zs)
    }
}
