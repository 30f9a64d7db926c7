//! Oracles shared by the integration tests, written out from explicit matrix units.

#![allow(dead_code)]

use braided_rmatrix::models::ModelId;
use braided_rmatrix::tensor::{kron, CMatrix, C64};

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Matrix unit with 1-based indices.
pub fn unit(d: usize, i: usize, j: usize) -> CMatrix {
    CMatrix::unit(d, i - 1, j - 1)
}

pub fn diag(v: &[f64]) -> CMatrix {
    CMatrix::from_real_diag(v)
}

/// Golden `b`, `c` written out from explicit matrix units.
pub fn golden_bc(id: ModelId) -> (CMatrix, CMatrix) {
    match id {
        ModelId::Csg => {
            let h0 = diag(&[1.0, -1.0, 1.0, -1.0]);
            let e0 = unit(4, 1, 2) + unit(4, 3, 4);
            let f0 = unit(4, 2, 1) + unit(4, 4, 3);
            let hh = kron(&h0, &h0) * -0.25;
            (&hh - &kron(&e0, &f0), &hh - &kron(&f0, &e0))
        }
        ModelId::Cp2 => {
            let h2p = diag(&[0.5, 0.5, -1.0]);
            let h1 = diag(&[1.0, -1.0, 0.0]);
            let (e1, f1) = (unit(3, 1, 2), unit(3, 2, 1));
            let cartan = kron(&h2p, &h2p) * (-1.0 / 3.0) - kron(&h1, &h1) * 0.25;
            (&cartan - &kron(&e1, &f1), &cartan - &kron(&f1, &e1))
        }
        ModelId::Su3So3 => {
            let h0 = diag(&[1.0, 0.0, -1.0]);
            let e0 = unit(3, 1, 2) + unit(3, 2, 3);
            let f0 = unit(3, 2, 1) + unit(3, 3, 2);
            let hh = kron(&h0, &h0) * -0.25;
            (&hh - &(kron(&e0, &f0) * 0.5), &hh - &(kron(&f0, &e0) * 0.5))
        }
        ModelId::Gl44 => {
            let w = diag(&[1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]);
            let s = 0.5f64.sqrt();
            let u = |i, j| unit(8, i, j);
            let h = [u(1, 1) - u(2, 2), u(3, 3) - u(4, 4), u(5, 5) - u(6, 6), u(7, 7) - u(8, 8)];
            let e = [
                u(3, 4),
                (u(4, 2) - u(1, 3)) * s,
                (u(1, 4) + u(3, 2)) * s,
                u(1, 2),
                u(8, 7),
                (u(7, 5) - u(6, 8)) * s,
                (u(6, 7) + u(8, 5)) * s,
                u(6, 5),
            ];
            // every factor is even, so the graded product is the plain one
            let mut cartan = CMatrix::zeros(64, 64);
            for x in &h {
                cartan += kron(x, &(&w * x)) * -0.5;
            }
            let (mut b, mut cc) = (cartan.clone(), cartan);
            for x in &e {
                let f = x.transpose();
                b += kron(x, &(&w * &f)) * -2.0;
                cc += kron(&f, &(&w * x)) * -2.0;
            }
            (b, cc)
        }
    }
}

/// Diagonal of `γ̃` as powers of `p` (`q = p¹²`).
pub fn golden_gamma_tilde(id: ModelId, p: C64) -> Vec<C64> {
    let q = p.powi(12);
    let qi = q.inv();
    match id {
        ModelId::Csg => vec![q, c(1.0), q, c(1.0)],
        ModelId::Cp2 => vec![q, c(1.0), c(1.0)],
        ModelId::Su3So3 => vec![p.powi(3), c(1.0), p.powi(-3)],
        ModelId::Gl44 => vec![c(1.0), qi.powi(4), qi, qi.powi(3), c(1.0), qi.powi(4), qi, qi.powi(3)],
    }
}
