//! The four models: fundamental representations, finite-order automorphisms,
//! grading projectors, Casimir components and the classical and quantum
//! R-matrix families built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{
    embed_pair_graded, flip, graded_kron, kron, partial_transpose, supertranspose, swap_legs_graded, CMatrix, Leg,
    Pair, ParityVector, C64,
};

pub mod cp2;
pub mod csg;
pub mod gl44;
pub mod su3so3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Csg,
    Cp2,
    Su3So3,
    Gl44,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [ModelId::Csg, ModelId::Cp2, ModelId::Su3So3, ModelId::Gl44];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Csg => "csg",
            ModelId::Cp2 => "cp2",
            ModelId::Su3So3 => "su3so3",
            ModelId::Gl44 => "gl44",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csg" => Ok(ModelId::Csg),
            "cp2" => Ok(ModelId::Cp2),
            "su3so3" => Ok(ModelId::Su3So3),
            "gl44" => Ok(ModelId::Gl44),
            other => Err(Error::Config(format!("unknown model {other:?}"))),
        }
    }
}

/// Finite-order automorphism `σ` of the fundamental representation.
#[derive(Clone, Debug)]
pub enum Automorphism {
    /// Exchange of the two diagonal `2×2` blocks.
    BlockFlip,
    /// `x ↦ g x g⁻¹`.
    Inner { g: CMatrix, g_inv: CMatrix },
    /// `x ↦ −η xᵗ η⁻¹`.
    NegTranspose { eta: CMatrix, eta_inv: CMatrix },
    /// `x ↦ −K x^{st} K⁻¹`.
    NegSupertranspose { k: CMatrix, k_inv: CMatrix, parity: ParityVector },
}

impl Automorphism {
    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        match self {
            Automorphism::BlockFlip => {
                let h = x.rows() / 2;
                CMatrix::from_fn(x.rows(), x.cols(), |r, c| x[((r + h) % (2 * h), (c + h) % (2 * h))])
            }
            Automorphism::Inner { g, g_inv } => g * x * g_inv,
            Automorphism::NegTranspose { eta, eta_inv } => -(eta * x.transpose() * eta_inv),
            Automorphism::NegSupertranspose { k, k_inv, parity } => {
                let st = supertranspose(x, parity).expect("automorphism applied to wrong size");
                -(k * st * k_inv)
            }
        }
    }
}

/// Fundamental representation data shared by the classical and quantum layers.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub id: ModelId,
    pub dim: usize,
    pub order: usize,
    pub parity: ParityVector,
    /// Whether tensor products, flips and leg transposes carry Koszul signs.
    pub graded: bool,
    pub generators: Vec<(String, CMatrix)>,
    /// Basis of the fixed subalgebra `f⁽⁰⁾`.
    pub f0_basis: Vec<CMatrix>,
    pub weight: CMatrix,
    pub sigma: Automorphism,
    pub casimir: CMatrix,
}

impl Algebra {
    pub fn generator(&self, name: &str) -> Option<&CMatrix> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Tensor product of two `d×d` matrices in the model's convention.
    pub fn tk(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        if self.graded {
            graded_kron(x, y, &self.parity).expect("tensor factor of wrong size")
        } else {
            kron(x, y)
        }
    }

    fn leg_parity(&self) -> ParityVector {
        if self.graded {
            self.parity.clone()
        } else {
            ParityVector::even(self.dim)
        }
    }

    /// `X₂₁`.
    pub fn flip21(&self, x: &CMatrix) -> CMatrix {
        swap_legs_graded(x, &self.leg_parity()).expect("flip of wrong size")
    }

    pub fn flip_operator(&self) -> CMatrix {
        flip(&self.leg_parity())
    }

    pub fn embed(&self, x: &CMatrix, pair: Pair) -> CMatrix {
        embed_pair_graded(x, pair, &self.leg_parity()).expect("embedding of wrong size")
    }

    /// Leg transpose; supertranspose for graded models.
    pub fn ptrans(&self, x: &CMatrix, leg: Leg) -> CMatrix {
        let par = self.graded.then_some(&self.parity);
        partial_transpose(x, leg, par).expect("transpose of wrong size")
    }

    pub fn identity2(&self) -> CMatrix {
        CMatrix::identity(self.dim * self.dim)
    }

    pub fn sigma(&self, x: &CMatrix) -> CMatrix {
        self.sigma.apply(x)
    }

    pub fn sigma_pow(&self, x: &CMatrix, k: usize) -> CMatrix {
        (0..k).fold(x.clone(), |acc, _| self.sigma(&acc))
    }

    /// Eigenprojection onto the `ωᵏ` eigenspace of `σ`, `ω = e^{2πi/n}`.
    pub fn project(&self, x: &CMatrix, k: usize) -> CMatrix {
        let n = self.order;
        let mut out = CMatrix::zeros(x.rows(), x.cols());
        let mut s = x.clone();
        for m in 0..n {
            let phase = root_of_unity(n, (n * n - k * m % n) % n);
            out += &s.scale(phase);
            s = self.sigma(&s);
        }
        out.scale_re(1.0 / n as f64)
    }

    /// Even/odd split of a matrix according to the block grading.
    pub fn parity_parts(&self, x: &CMatrix) -> (CMatrix, CMatrix) {
        let even = CMatrix::from_fn(self.dim, self.dim, |i, j| {
            if self.parity.bit(i) == self.parity.bit(j) {
                x[(i, j)]
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let odd = x - &even;
        (even, odd)
    }

    /// Graded commutator, extended bilinearly over homogeneous parts.
    pub fn bracket(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        if !self.graded {
            return x.commutator(y);
        }
        let (x0, x1) = self.parity_parts(x);
        let (y0, y1) = self.parity_parts(y);
        let anti = |a: &CMatrix, b: &CMatrix| a * b + b * a;
        x0.commutator(&y0) + x0.commutator(&y1) + x1.commutator(&y0) + anti(&x1, &y1)
    }

    /// `C⁽ᵏ,ⁿ⁻ᵏ⁾ = (p⁽ᵏ⁾ ⊗ id) C`.
    pub fn casimir_component(&self, k: usize) -> CMatrix {
        self.project_leg1(&self.casimir, k)
    }

    /// All components, indexed by `k`.
    pub fn casimir_components(&self) -> Vec<CMatrix> {
        (0..self.order).map(|k| self.casimir_component(k)).collect()
    }

    /// Applies `p⁽ᵏ⁾` to the first leg of a two-leg matrix.
    pub fn project_leg1(&self, x: &CMatrix, k: usize) -> CMatrix {
        self.map_leg1(x, |m| self.project(m, k))
    }

    /// Applies `p⁽ᵏ⁾` to the second leg.
    pub fn project_leg2(&self, x: &CMatrix, k: usize) -> CMatrix {
        self.flip21(&self.project_leg1(&self.flip21(x), k))
    }

    /// Decomposes `X = Σ E_ij ⊗ Y_ij` and rebuilds `Σ f(E_ij) ⊗ Y_ij`.
    fn map_leg1(&self, x: &CMatrix, f: impl Fn(&CMatrix) -> CMatrix) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let flip_sign = |a: usize| {
                    let e = self.parity.bit(a) as u32 * (self.parity.bit(i) as u32 + self.parity.bit(j) as u32);
                    if self.graded && e % 2 == 1 {
                        -1.0
                    } else {
                        1.0
                    }
                };
                let block = CMatrix::from_fn(d, d, |a, b| x[(i * d + a, j * d + b)] * flip_sign(a));
                if block.norm() == 0.0 {
                    continue;
                }
                out += self.tk(&f(&CMatrix::unit(d, i, j)), &block);
            }
        }
        out
    }
}

fn root_of_unity(n: usize, k: usize) -> C64 {
    // exact values for the orders used here
    match (n, k % n) {
        (_, 0) => C64::new(1.0, 0.0),
        (2, 1) => C64::new(-1.0, 0.0),
        (4, 1) => C64::new(0.0, 1.0),
        (4, 2) => C64::new(-1.0, 0.0),
        (4, 3) => C64::new(0.0, -1.0),
        (n, k) => C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64),
    }
}

/// Classical and quantum R-matrix families of one model.
pub trait RModel: Send + Sync {
    fn algebra(&self) -> &Algebra;

    fn id(&self) -> ModelId {
        self.algebra().id
    }

    fn dim(&self) -> usize {
        self.algebra().dim
    }

    /// Skew-symmetric solution `α` of the modified CYBE on `f⁽⁰⁾`.
    fn alpha(&self) -> CMatrix;

    /// Printed closed form of `C⁽⁰⁰⁾`.
    fn c00_printed(&self) -> CMatrix;

    /// Printed closed forms of `b` and `c`.
    fn b_printed(&self) -> CMatrix;
    fn c_printed(&self) -> CMatrix;

    /// Printed closed forms of `a(λ)` and `d(λ)`.
    fn a_printed(&self, lambda: C64) -> CMatrix;
    fn d_printed(&self, lambda: C64) -> CMatrix;

    fn b_q(&self, p: C64) -> CMatrix;
    fn c_q(&self, p: C64) -> CMatrix;
    fn a_q(&self, p: C64, lambda: C64) -> Result<CMatrix>;
    fn d_q(&self, p: C64, lambda: C64) -> Result<CMatrix>;

    /// Rescaled unitary family `(Â, D̂)` where the model defines one.
    fn hatted(&self, _p: C64, _lambda: C64) -> Option<Result<(CMatrix, CMatrix)>> {
        None
    }

    /// Diagonal matrix `K(q,λ)` with `𝒜₁₂(λ)𝒜₂₁(λ⁻¹) = K`, where the model has one.
    fn k_matrix(&self, _p: C64, _lambda: C64) -> Option<Result<CMatrix>> {
        None
    }

    /// Printed scalar of `𝒜₁₂(λ)𝒜₂₁(λ⁻¹)`, when the model states one.
    fn unitarity_scalar(&self, _p: C64, _lambda: C64) -> Option<C64> {
        None
    }

    fn gamma(&self, p: C64) -> Vec<C64>;
    fn gamma_tilde(&self, p: C64) -> Vec<C64>;

    /// Whether `𝒟₁₂ = 𝒜₂₁` is a stated property of the model.
    fn d_is_a21(&self) -> bool {
        false
    }

    /// Smallest denominator magnitude entering `𝒜(λ)`, `𝒟(λ)`, `a(λ)`, `d(λ)` at this point.
    fn pole_distance(&self, p: C64, lambda: C64) -> f64;
}

/// Pole margin shared by the sampler and the evaluators.
pub const POLE_MARGIN: f64 = 1e-3;

pub fn build(id: ModelId) -> Box<dyn RModel> {
    match id {
        ModelId::Csg => Box::new(csg::Csg::new()),
        ModelId::Cp2 => Box::new(cp2::Cp2::new()),
        ModelId::Su3So3 => Box::new(su3so3::Su3So3::new()),
        ModelId::Gl44 => Box::new(gl44::Gl44::new()),
    }
}

/// Minimum of `|z|` over the given denominators.
pub(crate) fn min_abs(zs: &[C64]) -> f64 {
    zs.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
}

pub(crate) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `E_{ij}` with one-based indices, as printed.
pub(crate) fn e(d: usize, i: usize, j: usize) -> CMatrix {
    CMatrix::unit(d, i - 1, j - 1)
}
