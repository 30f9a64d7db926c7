//! `gl(4|4)` with the order-four automorphism `σ(x) = −K x^{st} K⁻¹`,
//! `K = 1₄ ⊗ iσ₂`. All tensor products, flips and leg transposes are graded.

use super::{e, min_abs, re, Algebra, Automorphism, ModelId, RModel};
use crate::error::Result;
use crate::param::{q_exp_diag, qpow};
use crate::tensor::{kron, CMatrix, ParityVector, C64};

/// `(ε_n)` entering the deformed Casimir components and `γ̃`.
pub const EPSILON: [i32; 4] = [0, 4, 1, 3];

pub struct Gl44 {
    alg: Algebra,
    h: Vec<CMatrix>,
    e: Vec<CMatrix>,
    f: Vec<CMatrix>,
    components: Vec<CMatrix>,
    alpha: CMatrix,
    /// `H = −½ Σ h_i ⊗ W h_i`.
    cartan: CMatrix,
    /// `H̄ = ½ Σ h_i ⊗ h_i`.
    cartan_bar: CMatrix,
}

impl Default for Gl44 {
    fn default() -> Self {
        Self::new()
    }
}

/// `[x, y]` deformed with `φ`: `φ⁻¹ x y − φ y x`.
fn qcomm(x: &CMatrix, y: &CMatrix, phi: C64) -> CMatrix {
    (x * y) * (re(1.0) / phi) - (y * x) * phi
}

impl Gl44 {
    pub fn new() -> Self {
        let d = 8;
        let parity = ParityVector::superspace(4, 4);
        let weight = CMatrix::from_real_diag(&[1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]);
        let k = kron(&CMatrix::identity(4), &CMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]));
        let k_inv = k.inverse().expect("K is invertible");
        let s2 = std::f64::consts::FRAC_1_SQRT_2;
        let h =
            vec![e(d, 1, 1) - e(d, 2, 2), e(d, 3, 3) - e(d, 4, 4), e(d, 5, 5) - e(d, 6, 6), e(d, 7, 7) - e(d, 8, 8)];
        let ee = vec![
            e(d, 3, 4),
            (e(d, 4, 2) - e(d, 1, 3)) * s2,
            (e(d, 1, 4) + e(d, 3, 2)) * s2,
            e(d, 1, 2),
            e(d, 8, 7),
            (e(d, 7, 5) - e(d, 6, 8)) * s2,
            (e(d, 6, 7) + e(d, 8, 5)) * s2,
            e(d, 6, 5),
        ];
        let ff: Vec<CMatrix> = ee.iter().map(CMatrix::transpose).collect();

        let mut generators = Vec::new();
        for (i, m) in h.iter().enumerate() {
            generators.push((format!("h{}", i + 1), m.clone()));
        }
        for (i, (x, y)) in ee.iter().zip(&ff).enumerate() {
            generators.push((format!("e{}", i + 1), x.clone()));
            generators.push((format!("f{}", i + 1), y.clone()));
        }
        let mut f0_basis = h.clone();
        f0_basis.extend(ee.iter().cloned());
        f0_basis.extend(ff.iter().cloned());

        let mut alg = Algebra {
            id: ModelId::Gl44,
            dim: d,
            order: 4,
            parity: parity.clone(),
            graded: true,
            generators,
            f0_basis,
            weight: weight.clone(),
            sigma: Automorphism::NegSupertranspose { k, k_inv, parity },
            casimir: CMatrix::zeros(d * d, d * d),
        };
        let mut cas = CMatrix::zeros(d * d, d * d);
        for i in 1..=d {
            for j in 1..=d {
                cas += alg.tk(&e(d, i, j), &(&weight * &e(d, j, i)));
            }
        }
        alg.casimir = cas;
        let components = alg.casimir_components();

        let mut alpha = CMatrix::zeros(d * d, d * d);
        for (x, y) in ee.iter().zip(&ff) {
            alpha += alg.tk(x, &(&weight * y)) - alg.tk(y, &(&weight * x));
        }
        let mut cartan = CMatrix::zeros(d * d, d * d);
        let mut cartan_bar = CMatrix::zeros(d * d, d * d);
        for x in &h {
            cartan += alg.tk(x, &(&weight * x)) * -0.5;
            cartan_bar += alg.tk(x, x) * 0.5;
        }
        Self { alg, h, e: ee, f: ff, components, alpha, cartan, cartan_bar }
    }

    fn w(&self, x: &CMatrix) -> CMatrix {
        &self.alg.weight * x
    }

    fn cartan_weighted(&self) -> CMatrix {
        let mut s = CMatrix::zeros(64, 64);
        for x in &self.h {
            s += self.alg.tk(x, &self.w(x));
        }
        s
    }

    /// Casimir components `C⁽⁰⁰⁾, C⁽¹³⁾, C⁽²²⁾, C⁽³¹⁾` from the projections.
    pub fn components(&self) -> &[CMatrix] {
        &self.components
    }

    pub fn cartan(&self) -> &CMatrix {
        &self.cartan
    }

    /// `q`-deformed component `C⁽¹³⁾_q`.
    pub fn c13_q(&self, p: C64) -> CMatrix {
        let i = C64::new(0.0, 1.0);
        let mut out = CMatrix::zeros(64, 64);
        for m in 1..=4 {
            for n in 1..=4 {
                let x = e(8, m, n + 4);
                let y = e(8, n + 4, m);
                let lhs = &x - &self.alg.sigma(&x).scale(i);
                let rhs = &y + &self.alg.sigma(&y).scale(i);
                let c = (EPSILON[n - 1] - EPSILON[m - 1]) as f64;
                out += q_exp_diag(&self.cartan_bar, c, p) * self.alg.tk(&lhs, &rhs);
            }
        }
        out * -0.5
    }

    /// `C⁽³¹⁾_{q,12} = C⁽¹³⁾_{q⁻¹,21}`.
    pub fn c31_q(&self, p: C64) -> CMatrix {
        self.alg.flip21(&self.c13_q(re(1.0) / p))
    }

    fn factor(&self, coeff: C64, x: &CMatrix, y: &CMatrix) -> CMatrix {
        CMatrix::identity(64) + self.alg.tk(x, y) * coeff
    }

    fn a_d_tail(&self, p: C64, lambda: C64, c13: CMatrix, c31: CMatrix) -> CMatrix {
        let one = re(1.0);
        let l2 = lambda * lambda;
        let den = one - l2 * l2;
        let qh = qpow(p, 6);
        ((&self.components[0] + &self.components[2]) * (re(2.0) * l2 / den)
            + c13 * (re(2.0) * lambda / den)
            + c31 * (re(2.0) * l2 * lambda / den))
            * (qh - one / qh)
    }
}

impl RModel for Gl44 {
    fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn alpha(&self) -> CMatrix {
        self.alpha.clone()
    }

    fn c00_printed(&self) -> CMatrix {
        let mut s = self.cartan_weighted() * 0.5;
        for (x, y) in self.e.iter().zip(&self.f) {
            s += self.alg.tk(x, &self.w(y)) + self.alg.tk(y, &self.w(x));
        }
        s
    }

    fn b_printed(&self) -> CMatrix {
        let mut s = self.cartan_weighted() * -0.5;
        for (x, y) in self.e.iter().zip(&self.f) {
            s += self.alg.tk(x, &self.w(y)) * -2.0;
        }
        s
    }

    fn c_printed(&self) -> CMatrix {
        let mut s = self.cartan_weighted() * -0.5;
        for (x, y) in self.e.iter().zip(&self.f) {
            s += self.alg.tk(y, &self.w(x)) * -2.0;
        }
        s
    }

    fn a_printed(&self, lambda: C64) -> CMatrix {
        let (b, c) = (self.b_printed(), self.c_printed());
        ad_gl44(&b, &c, &self.components, lambda)
    }

    fn d_printed(&self, lambda: C64) -> CMatrix {
        let (b, c) = (self.b_printed(), self.c_printed());
        ad_gl44(&c, &b, &self.components, lambda)
    }

    fn b_q(&self, p: C64) -> CMatrix {
        let one = re(1.0);
        let (q, qh) = (qpow(p, 12), qpow(p, 6));
        let (e, f) = (&self.e, &self.f);
        let e12 = qcomm(&e[0], &e[1], qh);
        let f12 = qcomm(&f[0], &f[1], qh);
        let e56 = qcomm(&e[4], &e[5], one / qh);
        let f56 = qcomm(&f[4], &f[5], one / qh);
        let factors = [
            self.factor(one / q - q, &e[0], &f[0]),
            self.factor(re(-2.0) * (one / qh - qh), &e12, &f12),
            self.factor(one / q - q, &qcomm(&e12, &e[1], qh), &qcomm(&f12, &f[1], qh)),
            self.factor(re(2.0) * (one / qh - qh), &e[1], &f[1]),
            self.factor(q - one / q, &e[4], &f[4]),
            self.factor(re(-2.0) * (qh - one / qh), &e56, &f56),
            self.factor(q - one / q, &qcomm(&e56, &e[5], one / qh), &qcomm(&f56, &f[5], one / qh)),
            self.factor(re(2.0) * (qh - one / qh), &e[5], &f[5]),
        ];
        factors.iter().fold(q_exp_diag(&self.cartan, 1.0, p), |acc, x| acc * x)
    }

    fn c_q(&self, p: C64) -> CMatrix {
        self.alg.flip21(&self.b_q(p))
    }

    fn a_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        let one = re(1.0);
        let l2 = lambda * lambda;
        let tail = self.a_d_tail(p, lambda, self.c13_q(p), self.c31_q(p));
        Ok(self.b_q(p).inverse()? * (one / (one + l2)) + self.c_q(p) * (l2 / (one + l2)) + tail)
    }

    fn d_q(&self, p: C64, lambda: C64) -> Result<CMatrix> {
        let one = re(1.0);
        let l2 = lambda * lambda;
        let shift = q_exp_diag(&self.cartan, -10.0, p);
        let pinv = one / p;
        let tail = self.a_d_tail(p, lambda, &shift * self.c13_q(pinv), &shift * self.c31_q(pinv));
        Ok(self.c_q(p).inverse()? * (one / (one + l2)) + self.b_q(p) * (l2 / (one + l2)) + tail)
    }

    fn unitarity_scalar(&self, p: C64, lambda: C64) -> Option<C64> {
        let q = qpow(p, 12);
        let l2 = lambda * lambda;
        let one = re(1.0);
        Some((q - l2) * (one / q - l2) / ((one - l2) * (one - l2)))
    }

    fn gamma(&self, p: C64) -> Vec<C64> {
        let q5 = qpow(p, 60);
        let mut g = vec![re(1.0); 4];
        g.extend([q5; 4]);
        g
    }

    fn gamma_tilde(&self, p: C64) -> Vec<C64> {
        EPSILON.iter().chain(EPSILON.iter()).map(|&eps| qpow(p, -12 * eps)).collect()
    }

    fn pole_distance(&self, _p: C64, lambda: C64) -> f64 {
        let one = re(1.0);
        let l2 = lambda * lambda;
        min_abs(&[one - l2, one + l2])
    }
}

fn ad_gl44(first: &CMatrix, second: &CMatrix, comps: &[CMatrix], lambda: C64) -> CMatrix {
    let one = re(1.0);
    let l2 = lambda * lambda;
    let den = one - l2 * l2;
    -(first * (one / (one + l2)))
        + second * (l2 / (one + l2))
        + (&comps[0] + &comps[2]) * (re(2.0) * l2 / den)
        + &comps[1] * (re(2.0) * lambda / den)
        + &comps[3] * (re(2.0) * l2 * lambda / den)
}
