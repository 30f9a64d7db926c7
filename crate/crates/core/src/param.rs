//! Parameter points. The deformation parameter is `q = p¹²`, so every
//! fractional power of `q` used by the models is an integer power of `p`.

use serde::{Deserialize, Serialize};

use crate::tensor::{CMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub p: C64,
    pub lambda: C64,
    pub mu: C64,
}

impl ParamPoint {
    pub fn new(p: C64, lambda: C64, mu: C64) -> Self {
        Self { p, lambda, mu }
    }

    /// The classical point `q = 1`.
    pub fn classical(lambda: C64, mu: C64) -> Self {
        Self::new(C64::new(1.0, 0.0), lambda, mu)
    }

    pub fn q(&self) -> C64 {
        qpow(self.p, 12)
    }

    /// `q^{k/12}`.
    pub fn q12(&self, k: i32) -> C64 {
        qpow(self.p, k)
    }

    pub fn ratio(&self) -> C64 {
        self.lambda / self.mu
    }
}

/// `p^k`, i.e. `q^{k/12}`.
pub fn qpow(p: C64, k: i32) -> C64 {
    p.powi(k)
}

/// `q^{c·H}` for a diagonal `H` whose exponents `12·c·H_ii` are integers.
pub fn q_exp_diag(h: &CMatrix, c: f64, p: C64) -> CMatrix {
    let diag: Vec<C64> = h
        .diagonal()
        .into_iter()
        .map(|z| {
            let e = 12.0 * c * z.re;
            let k = e.round();
            assert!((e - k).abs() < 1e-9 && z.im.abs() < 1e-12, "Cartan exponent {e} is not an integer power of p");
            qpow(p, k as i32)
        })
        .collect();
    CMatrix::from_diag(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractional_powers_are_integer_powers_of_p() {
        let pt = ParamPoint::new(C64::from_polar(1.1, 0.3), C64::new(1.0, 0.0), C64::new(1.0, 0.0));
        let q = pt.q();
        assert!((pt.q12(6) * pt.q12(6) - q).norm() < 1e-12);
        assert!((pt.q12(3).powi(4) - q).norm() < 1e-12);
        assert!((pt.q12(7).powi(12) - q.powi(7)).norm() < 1e-9);
    }

    #[test]
    fn cartan_exponential_is_diagonal() {
        let h = CMatrix::from_real_diag(&[1.0, -1.0, 0.5]);
        let p = C64::from_polar(1.0, 0.2);
        let e = q_exp_diag(&h, 1.0 / 3.0, p);
        assert!((e[(0, 0)] - p.powi(4)).norm() < 1e-14);
        assert!((e[(2, 2)] - p.powi(2)).norm() < 1e-14);
    }
}
